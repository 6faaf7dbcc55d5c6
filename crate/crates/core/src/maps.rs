//! Direction and mixing distances, and audited cone endomorphisms.
//!
//! The direction distance of a pair of rays is the family of base-norm
//! distances `(α, β) ↦ ‖αx₀ − βy₀‖₁` of the normalized representatives; its
//! pointwise ordering compares how "mixed" two pairs of states are. Maps that
//! respect the cone structure (linear, positive, charge-preserving) are
//! contractions for every cone-contour norm, and the isometric ones are
//! exactly those preserving orthogonality. Positivity and charge preservation
//! are decided exactly (finitely many membership LPs and one vector
//! identity); contraction, isometry, and orthogonality preservation are
//! audited on caller-supplied samples.

use num_traits::{One, Signed};

use crate::cone::PolyhedralCone;
use crate::error::{Error, Result};
use crate::linalg::{RMatrix, RVector};
use crate::rational::{int, Rational};

/// A candidate endomorphism in matrix form. No property is assumed; run
/// [`audit_map`] to find out what it actually is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    matrix: RMatrix,
}

impl LinearMap {
    pub fn new(matrix: RMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::InvalidArgument(format!(
                "map matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: RMatrix::identity(n),
        }
    }

    /// Coordinate permutation: sends basis vector `j` to basis vector
    /// `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut m = RMatrix::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, int(1));
        }
        Ok(Self { matrix: m })
    }

    /// The rank-one map `z ↦ e(z)·w` collapsing the base onto the point `w`.
    /// Positive and charge-preserving whenever `w` lies on the base.
    pub fn collapse_to(cone: &PolyhedralCone, w: &RVector) -> Result<Self> {
        w.check_dim(cone.dim())?;
        if !cone.contains(w)? {
            return Err(Error::NotInCone);
        }
        if cone.charge_of(w) != int(1) {
            return Err(Error::InvalidArgument(
                "collapse target must lie on the base (charge 1)".into(),
            ));
        }
        let mut m = RMatrix::zeros(cone.dim(), cone.dim());
        for i in 0..cone.dim() {
            for j in 0..cone.dim() {
                m.set(i, j, &w[i] * &cone.charge()[j]);
            }
        }
        Ok(Self { matrix: m })
    }

    /// Convex combination `t·a + (1−t)·b`; endomorphisms are closed under it.
    pub fn convex_combination(a: &LinearMap, b: &LinearMap, t: &Rational) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                actual: b.dim(),
            });
        }
        if t.is_negative() || t > &Rational::one() {
            return Err(Error::InvalidArgument("weight must be in [0, 1]".into()));
        }
        let n = a.dim();
        let mut m = RMatrix::zeros(n, n);
        let s = Rational::one() - t;
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, t * a.matrix.get(i, j) + &s * b.matrix.get(i, j));
            }
        }
        Ok(Self { matrix: m })
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, z: &RVector) -> RVector {
        self.matrix.mul_vec(z)
    }
}

/// The evaluable direction distance of a ray pair: `(α, β) ↦ ‖αx₀ − βy₀‖₁`
/// with `x₀ = x/‖x‖₁`, together with a default evaluation grid on the
/// simplex segment `α + β = 1`.
#[derive(Debug, Clone)]
pub struct DirectionDistance<'c> {
    cone: &'c PolyhedralCone,
    x0: RVector,
    y0: RVector,
    grid: Vec<(Rational, Rational)>,
}

/// Grid `{(i/m, 1 − i/m) : 0 ≤ i ≤ m}` on the simplex segment. Homogeneity
/// of the distance reduces the positive quadrant to this segment.
pub fn simplex_grid(resolution: usize) -> Vec<(Rational, Rational)> {
    let m = resolution.max(1) as i64;
    (0..=m)
        .map(|i| {
            let alpha = Rational::new(i.into(), m.into());
            let beta = Rational::one() - &alpha;
            (alpha, beta)
        })
        .collect()
}

impl<'c> DirectionDistance<'c> {
    const DEFAULT_GRID: usize = 8;

    pub fn new(cone: &'c PolyhedralCone, x: &RVector, y: &RVector) -> Result<Self> {
        Self::with_grid(cone, x, y, simplex_grid(Self::DEFAULT_GRID))
    }

    pub fn with_grid(
        cone: &'c PolyhedralCone,
        x: &RVector,
        y: &RVector,
        grid: Vec<(Rational, Rational)>,
    ) -> Result<Self> {
        x.check_dim(cone.dim())?;
        y.check_dim(cone.dim())?;
        if x.is_zero() || y.is_zero() {
            return Err(Error::ZeroVector);
        }
        let nx = cone.one_norm(x)?;
        let ny = cone.one_norm(y)?;
        Ok(Self {
            cone,
            x0: x.scale(&nx.recip()),
            y0: y.scale(&ny.recip()),
            grid,
        })
    }

    pub fn grid(&self) -> &[(Rational, Rational)] {
        &self.grid
    }

    /// `‖αx₀ − βy₀‖₁`, exact.
    pub fn eval(&self, alpha: &Rational, beta: &Rational) -> Result<Rational> {
        if alpha.is_negative() || beta.is_negative() {
            return Err(Error::InvalidArgument(
                "direction distance arguments must be nonnegative".into(),
            ));
        }
        self.cone
            .one_norm(&self.x0.scale(alpha).sub(&self.y0.scale(beta)))
    }

    /// Evaluations over the stored grid.
    pub fn table(&self) -> Result<Vec<(Rational, Rational, Rational)>> {
        self.grid
            .iter()
            .map(|(a, b)| Ok((a.clone(), b.clone(), self.eval(a, b)?)))
            .collect()
    }
}

/// Verdict of a grid comparison of two direction distances.
///
/// Refutations are exact: a strict grid inequality is a rational
/// counterexample. Confirmations are resolution-limited, except `Equal`,
/// which is only reported when equality is certified between grid points as
/// well: both curves linear on every cell, pinned down by midpoint probes.
/// The distances are convex along the segment, so midpoint equality implies
/// linearity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixingOrder {
    /// `≥` at every grid point, `>` at some.
    Dominates,
    /// `≤` at every grid point, `<` at some.
    DominatedBy,
    /// Equal everywhere on the segment, certified exactly.
    Equal,
    /// Strict crossings found; both witnesses returned.
    Incomparable(Box<CrossingCertificate>),
    /// Equal at every grid point but not certified in between.
    UndecidedAtResolution,
}

/// Exact witnesses of a strict crossing between two direction distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingCertificate {
    /// Grid point where the first distance is strictly larger.
    pub above: (Rational, Rational),
    /// Grid point where the first distance is strictly smaller.
    pub below: (Rational, Rational),
}

/// Compares `‖αx₀ − βy₀‖₁` against `‖αx′₀ − βy′₀‖₁` on the simplex grid of
/// the given resolution. All four vectors must be nonzero cone members.
pub fn compare_mixing_distance(
    cone: &PolyhedralCone,
    x: &RVector,
    y: &RVector,
    x_prime: &RVector,
    y_prime: &RVector,
    resolution: usize,
) -> Result<MixingOrder> {
    for v in [x, y, x_prime, y_prime] {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !cone.contains(v)? {
            return Err(Error::NotInCone);
        }
    }
    let grid = simplex_grid(resolution);
    let dd = DirectionDistance::with_grid(cone, x, y, grid.clone())?;
    let dd_prime = DirectionDistance::with_grid(cone, x_prime, y_prime, grid.clone())?;

    let mut above: Option<(Rational, Rational)> = None;
    let mut below: Option<(Rational, Rational)> = None;
    let mut values: Vec<(Rational, Rational)> = Vec::with_capacity(grid.len());
    for (alpha, beta) in &grid {
        let f = dd.eval(alpha, beta)?;
        let g = dd_prime.eval(alpha, beta)?;
        if f > g && above.is_none() {
            above = Some((alpha.clone(), beta.clone()));
        }
        if f < g && below.is_none() {
            below = Some((alpha.clone(), beta.clone()));
        }
        values.push((f, g));
    }
    match (above, below) {
        (Some(above), Some(below)) => {
            Ok(MixingOrder::Incomparable(Box::new(CrossingCertificate {
                above,
                below,
            })))
        }
        (Some(_), None) => Ok(MixingOrder::Dominates),
        (None, Some(_)) => Ok(MixingOrder::DominatedBy),
        (None, None) => {
            // Grid-equal. Identical normalized pairs are equal outright;
            // otherwise certify per-cell linearity of both curves.
            if dd.x0 == dd_prime.x0 && dd.y0 == dd_prime.y0 {
                return Ok(MixingOrder::Equal);
            }
            let half = crate::rational::rat(1, 2);
            for i in 0..grid.len() - 1 {
                let (a0, b0) = &grid[i];
                let (a1, b1) = &grid[i + 1];
                let mid_a = (a0 + a1) * &half;
                let mid_b = (b0 + b1) * &half;
                let chord = (&values[i].0 + &values[i + 1].0) * &half;
                if dd.eval(&mid_a, &mid_b)? != chord {
                    return Ok(MixingOrder::UndecidedAtResolution);
                }
                let chord_prime = (&values[i].1 + &values[i + 1].1) * &half;
                if dd_prime.eval(&mid_a, &mid_b)? != chord_prime {
                    return Ok(MixingOrder::UndecidedAtResolution);
                }
            }
            Ok(MixingOrder::Equal)
        }
    }
}

/// One sample-based audit field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampledCheck {
    pub holds: bool,
    pub checked: usize,
}

/// Result of [`audit_map`]. `positive` and `charge_preserving` are exact;
/// the other three hold "on samples" and carry their sample counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapAudit {
    /// `Φrᵢ ∈ V⁺` for every generator (exact).
    pub positive: bool,
    /// `e ∘ Φ = e` as vectors (exact).
    pub charge_preserving: bool,
    /// `‖Φz‖₁ ≤ ‖z‖₁` on the samples.
    pub contraction: SampledCheck,
    /// `‖Φz‖₁ = ‖z‖₁` on the samples.
    pub isometry: SampledCheck,
    /// Orthogonal sample pairs from the cone stay orthogonal under the map.
    pub orthogonality_preserving: SampledCheck,
}

impl MapAudit {
    /// Positive and charge-preserving: a structure-respecting map.
    pub fn is_endomorphism(&self) -> bool {
        self.positive && self.charge_preserving
    }
}

/// At most this many orthogonal sample pairs are checked per audit.
const MAX_ORTHOGONALITY_PAIRS: usize = 24;

/// Audits a candidate map against a cone: positivity and charge preservation
/// exactly, contraction/isometry on the given samples, and orthogonality
/// preservation on the orthogonal cone pairs found among the samples.
pub fn audit_map(cone: &PolyhedralCone, map: &LinearMap, samples: &[RVector]) -> Result<MapAudit> {
    if map.dim() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            actual: map.dim(),
        });
    }
    let mut positive = true;
    for g in cone.generators() {
        if !cone.contains(&map.apply(g))? {
            positive = false;
            break;
        }
    }
    let charge_preserving = &map.matrix.transpose_mul_vec(cone.charge()) == cone.charge();

    let mut contraction = SampledCheck {
        holds: true,
        checked: 0,
    };
    let mut isometry = SampledCheck {
        holds: true,
        checked: 0,
    };
    for z in samples {
        z.check_dim(cone.dim())?;
        let before = cone.one_norm(z)?;
        let after = cone.one_norm(&map.apply(z))?;
        contraction.checked += 1;
        isometry.checked += 1;
        if after > before {
            contraction.holds = false;
        }
        if after != before {
            isometry.holds = false;
        }
    }

    let mut orthogonality = SampledCheck {
        holds: true,
        checked: 0,
    };
    'outer: for (i, a) in samples.iter().enumerate() {
        for b in samples.iter().skip(i + 1) {
            if orthogonality.checked >= MAX_ORTHOGONALITY_PAIRS {
                break 'outer;
            }
            if a.is_zero() || b.is_zero() || !cone.contains(a)? || !cone.contains(b)? {
                continue;
            }
            if !cone.are_orthogonal(a, b)? {
                continue;
            }
            orthogonality.checked += 1;
            let fa = map.apply(a);
            let fb = map.apply(b);
            let images_orthogonal = !fa.is_zero()
                && !fb.is_zero()
                && cone.contains(&fa)?
                && cone.contains(&fb)?
                && cone.are_orthogonal(&fa, &fb)?;
            if !images_orthogonal {
                orthogonality.holds = false;
            }
        }
    }

    Ok(MapAudit {
        positive,
        charge_preserving,
        contraction,
        isometry,
        orthogonality_preserving: orthogonality,
    })
}

/// Builds the map `z ↦ a_x(z)·x′ + a_y(z)·y′` from a disjointness witness
/// `a_x` of the orthogonal base pair `(x, y)`, with `a_y = e − a_x`. The
/// result maps `x` to `x′` and `y` to `y′` exactly and is always positive
/// and charge-preserving.
pub fn construct_transition_map(
    cone: &PolyhedralCone,
    x: &RVector,
    y: &RVector,
    x_prime: &RVector,
    y_prime: &RVector,
) -> Result<LinearMap> {
    for v in [x, y, x_prime, y_prime] {
        v.check_dim(cone.dim())?;
        if !cone.contains(v)? {
            return Err(Error::NotInCone);
        }
        if cone.charge_of(v) != int(1) {
            return Err(Error::InvalidArgument(
                "transition map endpoints must lie on the base (charge 1)".into(),
            ));
        }
    }
    let witness = cone
        .disjointness_witness(x, y)?
        .ok_or(Error::NotOrthogonal)?;
    let a_x = witness.functional().clone();
    let a_y = cone.charge().sub(&a_x);

    let n = cone.dim();
    let mut m = RMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, &x_prime[i] * &a_x[j] + &y_prime[i] * &a_y[j]);
        }
    }
    let map = LinearMap::new(m)?;
    assert_eq!(map.apply(x), *x_prime, "transition map must send x to x'");
    assert_eq!(map.apply(y), *y_prime, "transition map must send y to y'");
    Ok(map)
}
