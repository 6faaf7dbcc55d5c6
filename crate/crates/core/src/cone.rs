//! Polyhedral measure cones: charge splits, cone-contour norms, minimal
//! decompositions, orthogonality, effects, and support families.
//!
//! A cone is given by finitely many generating rays `r₁..r_k` spanning ℝⁿ
//! together with a charge functional `e` that is strictly positive on every
//! generator. Strict positivity on generators extends to the whole cone
//! (`e(Σλᵢrᵢ) = Σλᵢe(rᵢ)`), which also makes the cone proper, so the triple
//! carries a base: `K = {x ∈ V⁺ : e(x) = 1}`.
//!
//! Everything here reduces to exact LPs over generator coefficients:
//!
//! - membership: `z ∈ V⁺` iff `Rλ = z` has a nonnegative solution;
//! - the charge split: `e₊(z) = min{e(x) : x ∈ V⁺, x − z ∈ V⁺}` and its
//!   mirror `e₋`, with `e₊(z) − e₋(z) = e(z)`;
//! - minimal decompositions: the joint program
//!   `min e(p) + e(q)  s.t.  p − q = z, p,q ∈ V⁺`, whose optimal value is the
//!   base norm `‖z‖₁ = e₊(z) + e₋(z)`;
//! - disjointness witnesses: effects `a ∈ [o, e]` with `a(x) = e(x)` and
//!   `a(y) = 0`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{RMatrix, RVector};
use crate::lp::{self, Cmp, LinearProgram, LpBuilder, LpResult, VarSign};
use crate::rational::{RatInterval, Rational};

/// A finite-dimensional measure cone `(ℝⁿ, cone(r₁..r_k), e)` in generator
/// representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralCone {
    dim: usize,
    generators: Vec<RVector>,
    charge: RVector,
}

/// Outcome of [`PolyhedralCone::validate`]. Collects failures instead of
/// erroring so bad cones can be reported in full.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub dimension: usize,
    pub generator_count: usize,
    /// Rank of the generator family; must equal `dimension` for the cone to
    /// be generating (`V = V⁺ − V⁺`).
    pub rank: usize,
    /// Indices of generators with `e(rᵢ) ≤ 0` (strict positivity failures).
    pub nonpositive_charge: Vec<usize>,
    /// Indices of zero generators.
    pub zero_generators: Vec<usize>,
}

impl ValidationReport {
    pub fn spans(&self) -> bool {
        self.rank == self.dimension
    }

    /// All invariants hold: generators span, none is zero, and the charge is
    /// strictly positive on each. Strict positivity on generators makes `e`
    /// strictly positive on the whole cone, which in turn makes the cone
    /// proper, so no separate properness probe is needed.
    pub fn is_valid(&self) -> bool {
        self.spans() && self.nonpositive_charge.is_empty() && self.zero_generators.is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.spans() {
            out.push(format!(
                "generators span a subspace of rank {} < dimension {}",
                self.rank, self.dimension
            ));
        }
        for &i in &self.zero_generators {
            out.push(format!("generator {i} is the zero vector"));
        }
        for &i in &self.nonpositive_charge {
            out.push(format!("charge is not strictly positive on generator {i}"));
        }
        out
    }
}

/// The pair `(e₊(z), e₋(z))`: infimal charges of cone majorants/minorants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeSplit {
    pub plus: Rational,
    pub minus: Rational,
}

impl ChargeSplit {
    /// `e₊(z) + e₋(z)`, the base norm of the vector the split was taken from.
    pub fn one_norm(&self) -> Rational {
        &self.plus + &self.minus
    }
}

/// A candidate decomposition `z = plus − minus` with both parts in the cone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decomposition {
    pub plus: RVector,
    pub minus: RVector,
}

impl Decomposition {
    pub fn new(plus: RVector, minus: RVector) -> Self {
        Self { plus, minus }
    }

    pub fn difference(&self) -> RVector {
        self.plus.sub(&self.minus)
    }

    /// `plus + minus`, the carrier vector of the decomposition.
    pub fn carrier(&self) -> RVector {
        self.plus.add(&self.minus)
    }
}

/// Vertices of the optimal face of the joint decomposition program.
#[derive(Debug, Clone)]
pub struct DecompositionSet {
    pub decompositions: Vec<Decomposition>,
    /// The shared cost `e(plus) + e(minus)` of every member, equal to `‖z‖₁`.
    pub value: Rational,
    /// The optimal face is positive-dimensional: at least two distinct
    /// minimal decompositions exist (and with them a whole segment).
    pub non_unique: bool,
    /// The vertex walk hit its budget; the list may be incomplete.
    pub truncated: bool,
}

/// A dual vector constrained to the order interval `[o, e]`, checked
/// generator-wise: `0 ≤ a(rᵢ) ≤ e(rᵢ)` for every generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Effect {
    functional: RVector,
}

impl Effect {
    pub fn functional(&self) -> &RVector {
        &self.functional
    }

    pub fn value(&self, z: &RVector) -> Rational {
        self.functional.dot(z)
    }
}

/// A cone-contour norm `z ↦ 𝒫(e₊(z), e₋(z))`.
///
/// `One` is the base norm `a + b`, `Max` is `max(a, b)`, and `P(p)` is
/// `(aᵖ + bᵖ)^(1/p)` for rational `p ≥ 1`. All three are symmetric, extend to
/// norms on ℝ², and are strictly monotone along the diagonal, which is what
/// makes them mark the cone contour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum McNorm {
    One,
    Max,
    P(Rational),
}

impl McNorm {
    /// Default enclosure width for p-norm evaluations: 10⁻¹².
    pub fn default_precision() -> Rational {
        crate::rational::rat(1, 1_000_000_000_000)
    }

    /// A p-norm combiner; `p` must be ≥ 1 with numerator and denominator
    /// small enough to use as integer exponents.
    pub fn p(p: Rational) -> Result<Self> {
        if p < Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "p-norm exponent must be >= 1, got {p}"
            )));
        }
        if u32::try_from(p.numer().clone()).is_err() || u32::try_from(p.denom().clone()).is_err() {
            return Err(Error::InvalidArgument(
                "p-norm exponent components must fit in 32 bits".into(),
            ));
        }
        Ok(McNorm::P(p))
    }

    /// Encloses `𝒫(a, b)` for `a, b ≥ 0` in an interval of width at most
    /// `precision`. Exact (zero width) for `One` and `Max`. For `P` with an
    /// integer exponent the result is exact whenever the value is rational;
    /// fractional exponents may return a tight nonzero-width interval even
    /// at rational values (the intermediate powers are already irrational).
    pub fn eval_interval(&self, a: &Rational, b: &Rational, precision: &Rational) -> RatInterval {
        debug_assert!(!a.is_negative() && !b.is_negative());
        match self {
            McNorm::One => RatInterval::point(a + b),
            McNorm::Max => RatInterval::point(a.max(b).clone()),
            McNorm::P(p) => {
                if p.is_one() {
                    return RatInterval::point(a + b);
                }
                if a.is_zero() {
                    return RatInterval::point(b.clone());
                }
                if b.is_zero() {
                    return RatInterval::point(a.clone());
                }
                let inv = p.recip();
                let mut eps = precision / crate::rational::int(8);
                loop {
                    let pa = crate::rational::pow_interval(a, p, &eps);
                    let pb = crate::rational::pow_interval(b, p, &eps);
                    let sum = pa.add(&pb);
                    let out = crate::rational::pow_interval_of_interval(&sum, &inv, &eps);
                    if out.width() <= *precision {
                        return out;
                    }
                    eps /= crate::rational::int(16);
                }
            }
        }
    }
}

impl PolyhedralCone {
    /// Builds the triple. Only structural consistency is enforced here; use
    /// [`validate`](Self::validate) to check the measure-cone axioms.
    pub fn new(dim: usize, generators: Vec<RVector>, charge: RVector) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one generator is required".into(),
            ));
        }
        for g in &generators {
            g.check_dim(dim)?;
        }
        charge.check_dim(dim)?;
        Ok(Self {
            dim,
            generators,
            charge,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[RVector] {
        &self.generators
    }

    pub fn charge(&self) -> &RVector {
        &self.charge
    }

    /// `e(z)` under the standard pairing.
    pub fn charge_of(&self, z: &RVector) -> Rational {
        self.charge.dot(z)
    }

    /// Checks the defining invariants and reports every failure.
    pub fn validate(&self) -> ValidationReport {
        let rank = RMatrix::from_rows(self.generators.clone()).rank();
        let mut nonpositive = Vec::new();
        let mut zeros = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_zero() {
                zeros.push(i);
            }
            if !self.charge_of(g).is_positive() {
                nonpositive.push(i);
            }
        }
        ValidationReport {
            dimension: self.dim,
            generator_count: self.generators.len(),
            rank,
            nonpositive_charge: nonpositive,
            zero_generators: zeros,
        }
    }

    fn generator_matrix(&self) -> RMatrix {
        RMatrix::from_columns(&self.generators)
    }

    fn generator_charges(&self) -> Vec<Rational> {
        self.generators.iter().map(|g| self.charge_of(g)).collect()
    }

    /// Exact membership: `z ∈ V⁺` iff `Rλ = z` admits `λ ≥ 0`.
    pub fn contains(&self, z: &RVector) -> Result<bool> {
        z.check_dim(self.dim)?;
        let k = self.generators.len();
        let lp = LinearProgram::new(self.generator_matrix(), z.clone(), RVector::zero(k))?;
        Ok(matches!(lp::solve(&lp), LpResult::Optimal(_)))
    }

    /// The shared constraint system of the split programs:
    /// `[R | −R] (λ, μ)ᵀ = z` with `λ, μ ≥ 0`, i.e. `Rλ − Rμ = z`.
    fn split_system(&self) -> RMatrix {
        let k = self.generators.len();
        let mut a = RMatrix::zeros(self.dim, 2 * k);
        for (j, g) in self.generators.iter().enumerate() {
            for i in 0..self.dim {
                a.set(i, j, g[i].clone());
                a.set(i, k + j, -g[i].clone());
            }
        }
        a
    }

    fn split_objective(&self, on_plus: bool, on_minus: bool) -> RVector {
        let charges = self.generator_charges();
        let k = charges.len();
        let mut c = RVector::zero(2 * k);
        for (j, ch) in charges.iter().enumerate() {
            if on_plus {
                c[j] = ch.clone();
            }
            if on_minus {
                c[k + j] = ch.clone();
            }
        }
        c
    }

    fn solve_split(&self, z: &RVector, on_plus: bool, on_minus: bool) -> Result<lp::LpSolution> {
        let a = self.split_system();
        let lp = LinearProgram::new(a, z.clone(), self.split_objective(on_plus, on_minus))?;
        match lp::solve(&lp) {
            LpResult::Optimal(sol) => Ok(sol),
            // A generating cone decomposes every vector, and the charges are
            // positive on the generators, so the only way out is a bad cone.
            _ => Err(Error::InvalidCone(
                "charge-split program is not solvable; the cone is not a valid measure cone".into(),
            )),
        }
    }

    /// `(e₊(z), e₋(z))`, each as one exact LP over generator coefficients.
    /// The identity `e₊(z) − e₋(z) = e(z)` holds for every return value.
    pub fn charge_split(&self, z: &RVector) -> Result<ChargeSplit> {
        z.check_dim(self.dim)?;
        let plus = self.solve_split(z, true, false)?.value;
        let minus = self.solve_split(z, false, true)?.value;
        debug_assert_eq!(&plus - &minus, self.charge_of(z));
        Ok(ChargeSplit { plus, minus })
    }

    /// The base norm `‖z‖₁ = e₊(z) + e₋(z)`.
    pub fn one_norm(&self, z: &RVector) -> Result<Rational> {
        Ok(self.charge_split(z)?.one_norm())
    }

    /// `𝒫(e₊(z), e₋(z))` as an interval of width ≤ `precision`.
    pub fn mc_norm(&self, z: &RVector, norm: &McNorm, precision: &Rational) -> Result<RatInterval> {
        if !precision.is_positive() {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        let split = self.charge_split(z)?;
        Ok(norm.eval_interval(&split.plus, &split.minus, precision))
    }

    fn joint_program(&self, z: &RVector) -> Result<LinearProgram> {
        LinearProgram::new(
            self.split_system(),
            z.clone(),
            self.split_objective(true, true),
        )
    }

    fn coefficients_to_decomposition(&self, coeffs: &RVector) -> Decomposition {
        let k = self.generators.len();
        let mut plus = RVector::zero(self.dim);
        let mut minus = RVector::zero(self.dim);
        for (j, g) in self.generators.iter().enumerate() {
            if !coeffs[j].is_zero() {
                plus = plus.add(&g.scale(&coeffs[j]));
            }
            if !coeffs[k + j].is_zero() {
                minus = minus.add(&g.scale(&coeffs[k + j]));
            }
        }
        Decomposition::new(plus, minus)
    }

    /// One minimal decomposition `z = z₊ − z₋`, from the joint program
    /// `min e(p) + e(q)` over `p − q = z`, `p, q ∈ V⁺`. The optimal value is
    /// exactly `‖z‖₁`.
    pub fn minimal_decomposition(&self, z: &RVector) -> Result<Decomposition> {
        z.check_dim(self.dim)?;
        let lp = self.joint_program(z)?;
        match lp::solve(&lp) {
            LpResult::Optimal(sol) => Ok(self.coefficients_to_decomposition(&sol.point)),
            _ => Err(Error::InvalidCone(
                "joint decomposition program is not solvable".into(),
            )),
        }
    }

    /// All vertex minimal decompositions (up to `max_count`), from the
    /// vertices of the optimal face of the joint program. Returns exactly one
    /// entry iff the vertex-optimal decomposition is unique.
    pub fn all_minimal_decompositions(
        &self,
        z: &RVector,
        max_count: usize,
    ) -> Result<DecompositionSet> {
        z.check_dim(self.dim)?;
        if max_count == 0 {
            return Err(Error::InvalidArgument("max_count must be positive".into()));
        }
        let lp = self.joint_program(z)?;
        let sol = match lp::solve(&lp) {
            LpResult::Optimal(sol) => sol,
            _ => {
                return Err(Error::InvalidCone(
                    "joint decomposition program is not solvable".into(),
                ))
            }
        };
        // Distinct coefficient vertices can map to the same decomposition,
        // so walk more vertices than requested before deduplicating.
        let budget = max_count.saturating_mul(8).max(64);
        let vertices = lp::enumerate_optimal_vertices(&lp, &sol, budget)?;
        let truncated = vertices.len() >= budget;
        let mut decomps: Vec<Decomposition> = Vec::new();
        for v in &vertices {
            let d = self.coefficients_to_decomposition(v);
            if !decomps.contains(&d) {
                decomps.push(d);
            }
        }
        let non_unique = decomps.len() >= 2;
        decomps.truncate(max_count);
        Ok(DecompositionSet {
            decompositions: decomps,
            value: sol.value,
            non_unique,
            truncated,
        })
    }

    /// True iff the candidate attains the charge split of `z`:
    /// `e(plus) = e₊(z)` and `e(minus) = e₋(z)`.
    pub fn is_minimal(&self, candidate: &Decomposition, z: &RVector) -> Result<bool> {
        z.check_dim(self.dim)?;
        candidate.plus.check_dim(self.dim)?;
        candidate.minus.check_dim(self.dim)?;
        if &candidate.difference() != z {
            return Err(Error::DecompositionMismatch);
        }
        if !self.contains(&candidate.plus)? || !self.contains(&candidate.minus)? {
            return Err(Error::NotInCone);
        }
        let split = self.charge_split(z)?;
        Ok(self.charge_of(&candidate.plus) == split.plus
            && self.charge_of(&candidate.minus) == split.minus)
    }

    /// Norm-orthogonality of two nonzero cone elements: after normalizing to
    /// the base (`x₀ = x/‖x‖₁`), the pair is orthogonal iff
    /// `‖x₀ − y₀‖₁ = 2`, the largest value the triangle inequality allows.
    pub fn are_orthogonal(&self, x: &RVector, y: &RVector) -> Result<bool> {
        x.check_dim(self.dim)?;
        y.check_dim(self.dim)?;
        if x.is_zero() || y.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !self.contains(x)? || !self.contains(y)? {
            return Err(Error::NotInCone);
        }
        let x0 = x.scale(&self.one_norm(x)?.recip());
        let y0 = y.scale(&self.one_norm(y)?.recip());
        Ok(self.one_norm(&x0.sub(&y0))? == crate::rational::int(2))
    }

    /// Searches the effect interval for a witness of disjointness: an effect
    /// `a` with `a(x) = e(x)` and `a(y) = 0`. Returns `None` when the LP is
    /// infeasible, which happens exactly when the pair is not orthogonal.
    pub fn disjointness_witness(&self, x: &RVector, y: &RVector) -> Result<Option<Effect>> {
        x.check_dim(self.dim)?;
        y.check_dim(self.dim)?;
        if !self.contains(x)? || !self.contains(y)? {
            return Err(Error::NotInCone);
        }
        let mut builder = LpBuilder::new();
        let a = builder.add_vars(self.dim, VarSign::Free);
        for g in &self.generators {
            let terms: Vec<(usize, Rational)> = a
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, g[i].clone()))
                .collect();
            builder.add_constraint(terms.clone(), Cmp::Ge, Rational::zero());
            builder.add_constraint(terms, Cmp::Le, self.charge_of(g));
        }
        let on = |vec: &RVector| -> Vec<(usize, Rational)> {
            a.iter()
                .enumerate()
                .map(|(i, &v)| (v, vec[i].clone()))
                .collect()
        };
        builder.add_constraint(on(x), Cmp::Eq, self.charge_of(x));
        builder.add_constraint(on(y), Cmp::Eq, Rational::zero());
        let (lp, recovery) = builder.build();
        match lp::solve(&lp) {
            LpResult::Optimal(sol) => {
                let functional = recovery.extract(&sol.point);
                let effect = self
                    .effect(functional)
                    .expect("witness solution satisfies the effect bounds");
                Ok(Some(effect))
            }
            LpResult::Infeasible { .. } => Ok(None),
            LpResult::Unbounded => unreachable!("feasibility program has zero objective"),
        }
    }

    /// Validates membership in the effect interval `[o, e]`.
    pub fn effect(&self, functional: RVector) -> Result<Effect> {
        functional.check_dim(self.dim)?;
        for (i, g) in self.generators.iter().enumerate() {
            let v = functional.dot(g);
            if v.is_negative() {
                return Err(Error::NotAnEffect(format!(
                    "value {v} on generator {i} is negative"
                )));
            }
            let e = self.charge_of(g);
            if v > e {
                return Err(Error::NotAnEffect(format!(
                    "value {v} on generator {i} exceeds the charge {e}"
                )));
            }
        }
        Ok(Effect { functional })
    }

    /// The zero effect `o`.
    pub fn zero_effect(&self) -> Effect {
        Effect {
            functional: RVector::zero(self.dim),
        }
    }

    /// The unit effect, i.e. the charge itself.
    pub fn unit_effect(&self) -> Effect {
        Effect {
            functional: self.charge.clone(),
        }
    }

    /// `a ↦ a′ = e − a`; an involution on the effect interval.
    pub fn effect_complement(&self, a: &Effect) -> Effect {
        let functional = self.charge.sub(&a.functional);
        debug_assert!(self.effect(functional.clone()).is_ok());
        Effect { functional }
    }

    /// Weak orthogonality of effects: `a + b` stays in `[o, e]`, i.e.
    /// `a(rᵢ) + b(rᵢ) ≤ e(rᵢ)` on every generator.
    pub fn effects_weakly_orthogonal(&self, a: &Effect, b: &Effect) -> bool {
        self.generators
            .iter()
            .all(|g| a.value(g) + b.value(g) <= self.charge_of(g))
    }

    /// The effect order restricted to generators: `a ≤ b` iff `(b − a)` is
    /// nonnegative on every generator.
    pub fn effect_leq(&self, a: &Effect, b: &Effect) -> bool {
        self.generators.iter().all(|g| a.value(g) <= b.value(g))
    }

    /// The effect pair meets only at `o`: no nonzero effect lies below both.
    /// Decided by maximizing the total generator mass of a common lower
    /// bound; the meet is trivial iff that maximum is zero.
    pub fn effects_meet_trivially(&self, a: &Effect, b: &Effect) -> bool {
        let mut builder = LpBuilder::new();
        let c = builder.add_vars(self.dim, VarSign::Free);
        let mut total: Vec<Rational> = vec![Rational::zero(); self.dim];
        for g in &self.generators {
            let terms: Vec<(usize, Rational)> = c
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, g[i].clone()))
                .collect();
            builder.add_constraint(terms.clone(), Cmp::Ge, Rational::zero());
            let cap = a.value(g).min(b.value(g));
            builder.add_constraint(terms, Cmp::Le, cap);
            for (slot, gi) in total.iter_mut().zip(g.iter()) {
                *slot = &*slot + gi;
            }
        }
        // maximize Σᵢ c(rᵢ) = minimize −(Σᵢ rᵢ)·c
        builder.set_objective(
            c.iter()
                .enumerate()
                .map(|(i, &v)| (v, -total[i].clone()))
                .collect(),
        );
        let (lp, _) = builder.build();
        match lp::solve(&lp) {
            LpResult::Optimal(sol) => sol.value.is_zero(),
            _ => unreachable!("meet program is feasible (c = o) and bounded by the caps"),
        }
    }

    /// Extreme-ish effects carrying `w` with full mass `target`: vertices and
    /// coordinate-minimal solutions of
    /// `{a ∈ [o, e] : a(w) = target}`. Used to refute support minimality.
    fn carrier_effects(&self, w: &RVector, target: &Rational) -> Result<Vec<Effect>> {
        let mut out: Vec<Effect> = Vec::new();
        let push = |e: Effect, out: &mut Vec<Effect>| {
            if !out.contains(&e) {
                out.push(e);
            }
        };
        let objectives: Vec<Vec<Rational>> = {
            let mut objs = Vec::new();
            // total generator mass, then each generator individually
            let mut total = vec![Rational::zero(); self.dim];
            for g in &self.generators {
                for (slot, gi) in total.iter_mut().zip(g.iter()) {
                    *slot = &*slot + gi;
                }
            }
            objs.push(total);
            for g in &self.generators {
                objs.push(g.coords().to_vec());
            }
            objs
        };
        for (which, obj) in objectives.iter().enumerate() {
            let mut builder = LpBuilder::new();
            let a = builder.add_vars(self.dim, VarSign::Free);
            for g in &self.generators {
                let terms: Vec<(usize, Rational)> = a
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, g[i].clone()))
                    .collect();
                builder.add_constraint(terms.clone(), Cmp::Ge, Rational::zero());
                builder.add_constraint(terms, Cmp::Le, self.charge_of(g));
            }
            builder.add_constraint(
                a.iter()
                    .enumerate()
                    .map(|(i, &v)| (v, w[i].clone()))
                    .collect(),
                Cmp::Eq,
                target.clone(),
            );
            builder.set_objective(
                a.iter()
                    .enumerate()
                    .map(|(i, &v)| (v, obj[i].clone()))
                    .collect(),
            );
            let (lp, recovery) = builder.build();
            match lp::solve(&lp) {
                LpResult::Optimal(sol) => {
                    let eff = self
                        .effect(recovery.extract(&sol.point))
                        .expect("carrier solution satisfies the effect bounds");
                    push(eff, &mut out);
                    if which == 0 {
                        // a few more vertices of the minimal-mass face
                        for v in lp::enumerate_optimal_vertices(&lp, &sol, 4)? {
                            let eff = self
                                .effect(recovery.extract(&v))
                                .expect("face vertex satisfies the effect bounds");
                            push(eff, &mut out);
                        }
                    }
                }
                LpResult::Infeasible { .. } => {
                    return Err(Error::InvalidArgument(
                        "no effect carries the requested mass".into(),
                    ))
                }
                LpResult::Unbounded => unreachable!("effect box is bounded"),
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// support families
// ---------------------------------------------------------------------------

/// Tally for one support-family condition.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl AxiomCheck {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            violations: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verification report for a candidate support family `z ↦ s_z`.
///
/// `minimality` is a refuter, not a decision procedure: failures are exact,
/// while success is relative to the finite set of carrier effects the LP
/// enumeration produced (see [`SupportFamilyReport::MINIMALITY_CAVEAT`]).
#[derive(Debug, Clone)]
pub struct SupportFamilyReport {
    /// Every support lands in the effect interval.
    pub membership: AxiomCheck,
    /// `s_z(z₊ + z₋) = ‖z‖₁`.
    pub carrier_value: AxiomCheck,
    /// `s_z ≤ a` for every enumerated effect `a` carrying `z₊ + z₋` fully.
    pub minimality: AxiomCheck,
    /// `s_{x₁−x₂} ≤ s_{x₁+x₂}` for cone members.
    pub difference_bound: AxiomCheck,
    /// Weakly orthogonal supports meet only at `o`.
    pub disjoint_meet: AxiomCheck,
    /// `z = 0 ⇔ s_z = o`.
    pub zero_support: AxiomCheck,
    /// `x₁ ≤ x₂ ⇒ s_{x₁} ≤ s_{x₂}` on constructed ordered pairs.
    pub order_monotone: AxiomCheck,
    /// `s_{x₁} ≤ s_{x₂} ⇔ s_{x₂} = s_{x₁+x₂}`.
    pub sum_absorption: AxiomCheck,
    /// Disjointness witness exists ⇔ supports weakly orthogonal; and then
    /// `s_{x₁+x₂} ≤ s_{x₁} + s_{x₂}`.
    pub disjointness_link: AxiomCheck,
}

impl SupportFamilyReport {
    pub const MINIMALITY_CAVEAT: &'static str =
        "minimality is certified only against the enumerated carrier effects; \
         failures are exact, success is relative to that finite family";

    pub fn checks(&self) -> [&AxiomCheck; 9] {
        [
            &self.membership,
            &self.carrier_value,
            &self.minimality,
            &self.difference_bound,
            &self.disjoint_meet,
            &self.zero_support,
            &self.order_monotone,
            &self.sum_absorption,
            &self.disjointness_link,
        ]
    }

    pub fn all_passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed())
    }
}

impl PolyhedralCone {
    /// Runs the support-family conditions for a candidate map `z ↦ s_z`
    /// against the given probes. Pair conditions run on every unordered pair
    /// of probes that lies in the cone; `probes` must be nonempty.
    pub fn verify_support_family(
        &self,
        support: &dyn Fn(&RVector) -> RVector,
        probes: &[RVector],
    ) -> Result<SupportFamilyReport> {
        if probes.is_empty() {
            return Err(Error::InvalidArgument("probes must be nonempty".into()));
        }
        for p in probes {
            p.check_dim(self.dim)?;
        }
        let mut report = SupportFamilyReport {
            membership: AxiomCheck::new("membership"),
            carrier_value: AxiomCheck::new("carrier value"),
            minimality: AxiomCheck::new("minimality"),
            difference_bound: AxiomCheck::new("difference bound"),
            disjoint_meet: AxiomCheck::new("disjoint meet"),
            zero_support: AxiomCheck::new("zero support"),
            order_monotone: AxiomCheck::new("order monotone"),
            sum_absorption: AxiomCheck::new("sum absorption"),
            disjointness_link: AxiomCheck::new("disjointness link"),
        };

        // s_z as a checked effect; failures land in `membership`.
        let get = |z: &RVector, report: &mut SupportFamilyReport| -> Option<Effect> {
            let raw = support(z);
            match self.effect(raw) {
                Ok(e) => {
                    report.membership.record(true, String::new);
                    Some(e)
                }
                Err(err) => {
                    report
                        .membership
                        .record(false, || format!("support of {z} is not an effect: {err}"));
                    None
                }
            }
        };

        // the zero vector is always probed
        let zero = RVector::zero(self.dim);
        if let Some(s0) = get(&zero, &mut report) {
            report.zero_support.record(s0.functional().is_zero(), || {
                "support of the zero vector is not the zero effect".to_string()
            });
        }

        for z in probes {
            let Some(sz) = get(z, &mut report) else {
                continue;
            };
            if !z.is_zero() {
                report.zero_support.record(!sz.functional().is_zero(), || {
                    format!("nonzero probe {z} has zero support")
                });
            }
            let decomposition = self.minimal_decomposition(z)?;
            let carrier = decomposition.carrier();
            let norm = self.charge_of(&carrier);
            report.carrier_value.record(sz.value(&carrier) == norm, || {
                format!(
                    "support of {z} gives mass {} to its carrier, expected {norm}",
                    sz.value(&carrier)
                )
            });
            match self.carrier_effects(&carrier, &norm) {
                Ok(candidates) => {
                    for a in candidates {
                        report.minimality.record(self.effect_leq(&sz, &a), || {
                            format!(
                                "support of {z} is not below the carrying effect {}",
                                a.functional()
                            )
                        });
                    }
                }
                Err(err) => report
                    .minimality
                    .record(false, || format!("carrier search failed for {z}: {err}")),
            }
        }

        let mut members: Vec<&RVector> = Vec::new();
        for p in probes {
            if self.contains(p)? {
                members.push(p);
            }
        }
        for (idx, &x1) in members.iter().enumerate() {
            for &x2 in members.iter().skip(idx) {
                let sum = x1.add(x2);
                let diff = x1.sub(x2);
                let (Some(s1), Some(s2), Some(s_sum), Some(s_diff)) = (
                    get(x1, &mut report),
                    get(x2, &mut report),
                    get(&sum, &mut report),
                    get(&diff, &mut report),
                ) else {
                    continue;
                };

                report
                    .difference_bound
                    .record(self.effect_leq(&s_diff, &s_sum), || {
                        format!("support of {x1} − {x2} is not below the support of the sum")
                    });

                if self.effects_weakly_orthogonal(&s1, &s2) {
                    report
                        .disjoint_meet
                        .record(self.effects_meet_trivially(&s1, &s2), || {
                            format!(
                                "weakly orthogonal supports of {x1}, {x2} share a nonzero \
                                 lower bound"
                            )
                        });
                }

                // x1 ≤ x1 + x2 always holds for cone members.
                report
                    .order_monotone
                    .record(self.effect_leq(&s1, &s_sum), || {
                        format!("support of {x1} is not below the support of {x1} + {x2}")
                    });

                let leq = self.effect_leq(&s1, &s2);
                let absorbed = s2 == s_sum;
                report.sum_absorption.record(leq == absorbed, || {
                    format!(
                        "absorption mismatch for ({x1}, {x2}): s₁ ≤ s₂ is {leq}, \
                         s₂ = s_sum is {absorbed}"
                    )
                });

                let witness = self.disjointness_witness(x1, x2)?.is_some();
                let weakly = self.effects_weakly_orthogonal(&s1, &s2);
                report.disjointness_link.record(witness == weakly, || {
                    format!(
                        "disjointness of ({x1}, {x2}) is {witness} but weak orthogonality \
                         of supports is {weakly}"
                    )
                });
                if weakly {
                    let bound = s1.functional().add(s2.functional());
                    let ok = self
                        .generators
                        .iter()
                        .all(|g| s_sum.value(g) <= bound.dot(g));
                    report.disjointness_link.record(ok, || {
                        format!("support of {x1} + {x2} exceeds the sum of the part supports")
                    });
                }
            }
        }
        Ok(report)
    }
}
