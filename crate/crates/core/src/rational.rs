//! Exact rational scalars and rational interval enclosures.
//!
//! All cone arithmetic runs on [`Rational`] (arbitrary-precision, always in
//! lowest terms, positive denominator). Quantities that can be irrational,
//! such as p-norm evaluations, are reported as [`RatInterval`] enclosures with
//! rational endpoints, so every comparison made on them is still exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. `num_rational` keeps the invariants we rely on:
/// the fraction is reduced after every operation and the denominator is
/// positive.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected on purpose: the
/// exact pipeline never sees floats.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational".to_string());
    }
    t.parse::<Rational>()
        .map_err(|e| format!("invalid rational '{t}': {e}"))
}

/// Closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    /// Degenerate interval holding a single exact value.
    pub fn point(value: Rational) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    /// Every point of the interval is `< bound`.
    pub fn definitely_lt(&self, bound: &Rational) -> bool {
        self.hi < *bound
    }

    /// Every point of the interval is `<= bound`.
    pub fn definitely_le(&self, bound: &Rational) -> bool {
        self.hi <= *bound
    }

    /// The interval intersects `[lo, hi]`; the safe way to assert that the
    /// enclosed true value may satisfy the two-sided bound.
    pub fn intersects(&self, lo: &Rational, hi: &Rational) -> bool {
        &self.hi >= lo && &self.lo <= hi
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }
}

impl std::fmt::Display for RatInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// `x^k` for a nonnegative integer exponent.
pub fn pow_u32(x: &Rational, k: u32) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    let numer = num_traits::pow(x.numer().clone(), k as usize);
    let denom = num_traits::pow(x.denom().clone(), k as usize);
    Rational::new(numer, denom)
}

/// Exact `k`-th root of `x >= 0` when it is rational. A reduced fraction has
/// a rational root iff numerator and denominator are both perfect powers.
pub fn exact_nth_root(x: &Rational, k: u32) -> Option<Rational> {
    assert!(!x.is_negative(), "root of a negative rational");
    assert!(k >= 1);
    if k == 1 || x.is_zero() || x.is_one() {
        return Some(x.clone());
    }
    let rn = x.numer().nth_root(k);
    let rd = x.denom().nth_root(k);
    if num_traits::pow(rn.clone(), k as usize) == *x.numer()
        && num_traits::pow(rd.clone(), k as usize) == *x.denom()
    {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

/// Interval of width `<= eps` around `x^(1/k)`, `x >= 0`; exact (zero width)
/// whenever the root is rational. Bisection: each step keeps
/// `lo^k <= x <= hi^k`.
pub fn nth_root_interval(x: &Rational, k: u32, eps: &Rational) -> RatInterval {
    assert!(eps.is_positive(), "precision must be positive");
    if let Some(root) = exact_nth_root(x, k) {
        return RatInterval::point(root);
    }
    let one = Rational::one();
    let (mut lo, mut hi) = if *x > one {
        (one, x.clone())
    } else {
        (x.clone(), one)
    };
    while &hi - &lo > *eps {
        let mid = (&lo + &hi) / int(2);
        if pow_u32(&mid, k) <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RatInterval::new(lo, hi)
}

/// Interval of width `<= eps` around `x^p` for `x >= 0` and rational
/// exponent `p = u/v >= 0` whose numerator and denominator fit in `u32`.
pub fn pow_interval(x: &Rational, p: &Rational, eps: &Rational) -> RatInterval {
    assert!(!x.is_negative() && !p.is_negative());
    let u = u32::try_from(p.numer().clone()).expect("exponent numerator too large");
    let v = u32::try_from(p.denom().clone()).expect("exponent denominator too large");
    if u == 0 {
        return RatInterval::point(Rational::one());
    }
    if x.is_zero() {
        return RatInterval::point(Rational::zero());
    }
    nth_root_interval(&pow_u32(x, u), v, eps)
}

/// Monotone image of an interval under `t -> t^p`, `p >= 0`, endpoints `>= 0`.
pub fn pow_interval_of_interval(iv: &RatInterval, p: &Rational, eps: &Rational) -> RatInterval {
    let lo = pow_interval(&iv.lo, p, eps);
    let hi = pow_interval(&iv.hi, p, eps);
    RatInterval::new(lo.lo, hi.hi)
}
