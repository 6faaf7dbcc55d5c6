//! Concrete measure cones and sampling substrate.
//!
//! - [`classical_cone`]: the nonnegative orthant with the all-ones charge, a
//!   vector lattice where minimal decompositions are the componentwise
//!   positive/negative parts and are unique.
//! - [`square_base_cone`]: the cone over the square with vertices
//!   `(±1, ±1, 1)` and charge `(0, 0, 1)`; the standard example of a cone
//!   with a whole family of minimal decompositions.
//! - [`random_cone`]: seeded random cones in an affine slice, valid by
//!   construction; the fuzz substrate for the property suites.
//! - [`spectral`]: the positive-semidefinite matrix cone with trace charge,
//!   the one tolerance-based (floating-point) instance.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::PolyhedralCone;
use crate::error::{Error, Result};
use crate::linalg::RVector;
use crate::rational::{int, Rational};

pub mod spectral;

pub use spectral::{jacobi_eigen, SpectralParts, SquareMatrix, SymmetricMatrixCone};

/// The orthant `ℝⁿ₊` with standard-basis generators and all-ones charge.
pub fn classical_cone(n: usize) -> PolyhedralCone {
    let generators = (0..n)
        .map(|i| {
            let mut v = RVector::zero(n);
            v[i] = int(1);
            v
        })
        .collect();
    PolyhedralCone::new(n, generators, RVector::new(vec![int(1); n]))
        .expect("orthant construction is well-formed")
}

/// The cone over the square base `{(x, y, 1) : |x| ≤ 1, |y| ≤ 1}`:
/// generators `(±1, ±1, 1)`, charge `(0, 0, 1)`.
pub fn square_base_cone() -> PolyhedralCone {
    PolyhedralCone::new(
        3,
        vec![
            RVector::from_ints(&[1, 1, 1]),
            RVector::from_ints(&[1, -1, 1]),
            RVector::from_ints(&[-1, 1, 1]),
            RVector::from_ints(&[-1, -1, 1]),
        ],
        RVector::from_ints(&[0, 0, 1]),
    )
    .expect("square base construction is well-formed")
}

/// The support of a vector in the classical cone: the indicator of its
/// nonzero coordinates, an extreme effect.
pub fn classical_support(z: &RVector) -> RVector {
    RVector::new(
        z.iter()
            .map(|c| if c.is_zero() { int(0) } else { int(1) })
            .collect(),
    )
}

fn random_rational(rng: &mut ChaCha8Rng, max_abs: i64, max_den: i64) -> Rational {
    let numer = rng.random_range(-max_abs..=max_abs);
    let denom = rng.random_range(1..=max_den);
    Rational::new(numer.into(), denom.into())
}

/// A seeded random cone: `k ≥ n` rational generators with last coordinate 1
/// (an affine slice), charge = last-coordinate functional. Strict positivity
/// holds by construction, so the result always passes validation.
pub fn random_cone(n: usize, k: usize, seed: u64) -> Result<PolyhedralCone> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if k < n {
        return Err(Error::InvalidArgument(format!(
            "need at least {n} generators to span dimension {n}, got {k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut charge = RVector::zero(n);
    charge[n - 1] = int(1);

    let sample = |rng: &mut ChaCha8Rng| -> Vec<RVector> {
        (0..k)
            .map(|_| {
                let mut v = RVector::zero(n);
                for i in 0..n - 1 {
                    v[i] = random_rational(rng, 3, 2);
                }
                v[n - 1] = int(1);
                v
            })
            .collect()
    };

    for _ in 0..64 {
        let generators = sample(&mut rng);
        let cone = PolyhedralCone::new(n, generators, charge.clone())?;
        if cone.validate().is_valid() {
            return Ok(cone);
        }
    }
    // Deterministic fallback: a triangular skeleton spans for sure, random
    // rays fill the remaining slots.
    let mut generators = Vec::with_capacity(k);
    for i in 0..n - 1 {
        let mut v = RVector::zero(n);
        v[i] = int(1);
        v[n - 1] = int(1);
        generators.push(v);
    }
    let mut apex = RVector::zero(n);
    apex[n - 1] = int(1);
    generators.push(apex);
    while generators.len() < k {
        let mut v = RVector::zero(n);
        for i in 0..n - 1 {
            v[i] = random_rational(&mut rng, 3, 2);
        }
        v[n - 1] = int(1);
        generators.push(v);
    }
    let cone = PolyhedralCone::new(n, generators, charge)?;
    debug_assert!(cone.validate().is_valid());
    Ok(cone)
}

/// Seeded general-position vectors: signed rational combinations of the
/// generators. Deterministic per seed.
pub fn sample_vectors(cone: &PolyhedralCone, count: usize, seed: u64) -> Vec<RVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut z = RVector::zero(cone.dim());
            for g in cone.generators() {
                let c = random_rational(&mut rng, 2, 2);
                if !c.is_zero() {
                    z = z.add(&g.scale(&c));
                }
            }
            z
        })
        .collect()
}

/// Seeded nonzero cone members: nonnegative rational combinations of the
/// generators, sparse on purpose so boundary elements appear.
pub fn sample_members(cone: &PolyhedralCone, count: usize, seed: u64) -> Vec<RVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut z = RVector::zero(cone.dim());
            let mut nonzero = false;
            for g in cone.generators() {
                if rng.random_range(0..3) == 0 {
                    continue; // drop a third of the generators
                }
                let c = Rational::new(
                    rng.random_range(0..=2).into(),
                    rng.random_range(1..=2).into(),
                );
                if !c.is_zero() {
                    z = z.add(&g.scale(&c));
                    nonzero = true;
                }
            }
            if !nonzero {
                let i = rng.random_range(0..cone.generators().len());
                z = cone.generators()[i].clone();
            }
            z
        })
        .collect()
}

/// Sample set for map audits: the generators first (they provide orthogonal
/// pairs on many cones), then seeded members and general-position vectors.
pub fn audit_samples(cone: &PolyhedralCone, count: usize, seed: u64) -> Vec<RVector> {
    let mut out: Vec<RVector> = cone.generators().to_vec();
    out.extend(sample_members(cone, count / 2, seed.wrapping_add(1)));
    out.extend(sample_vectors(cone, count - count / 2, seed));
    out
}

/// Normalizes a nonzero cone member onto the base `{e = 1}`.
pub fn to_base(cone: &PolyhedralCone, x: &RVector) -> Result<RVector> {
    let charge = cone.charge_of(x);
    if !charge.is_positive() {
        return Err(Error::ZeroVector);
    }
    Ok(x.scale(&charge.recip()))
}
