//! Brute-force oracles for the exact LP layer and the cone quantities built
//! on it. Everything here is deliberately independent of the simplex path:
//! its own Gaussian elimination, its own constraint assembly, and exhaustive
//! enumeration of candidate supports instead of pivoting.

#![allow(dead_code)]

use mcone_core::rational::Rational;
use mcone_core::{PolyhedralCone, RMatrix, RVector};
use num_traits::{Signed, Zero};

/// Solves `A x = b` for an (m × c) system with independent columns by
/// Gaussian elimination on the augmented matrix. Returns `None` when the
/// system is inconsistent or the columns are dependent.
pub fn solve_dense(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m).find(|&r| !aug[r][col].is_zero()) else {
            return None; // dependent columns
        };
        aug.swap(row, p);
        let pivot = aug[row][col].clone();
        for v in aug[row][col..].iter_mut() {
            *v = &*v / &pivot;
        }
        let pivot_row = aug[row].clone();
        for (r, other) in aug.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (slot, pv) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                let delta = &f * pv;
                *slot = &*slot - &delta;
            }
        }
        pivot_rows.push(row);
        row += 1;
        if row == m {
            break;
        }
    }
    if pivot_rows.len() < cols {
        return None;
    }
    // leftover rows must be all-zero including the rhs
    if aug[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| aug[c][cols].clone()).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// The exact optimum of a bounded standard-form program, by exhausting all
/// basic feasible solutions: every candidate support is a set of independent
/// columns of size at most `m`.
pub struct OracleOptimum {
    pub value: Rational,
    /// All optimal basic feasible points, deduplicated.
    pub points: Vec<RVector>,
}

/// `min cᵀx  s.t.  Ax = b, x ≥ 0` by exhaustive support enumeration.
/// Returns `None` when no basic feasible solution exists (infeasibility, for
/// programs that are bounded when feasible).
pub fn brute_force_lp(a: &RMatrix, b: &RVector, c: &RVector) -> Option<OracleOptimum> {
    let m = a.rows();
    let n = a.cols();
    let mut best: Option<OracleOptimum> = None;

    for size in 0..=m.min(n) {
        for subset in combinations(n, size) {
            let sub: Vec<Vec<Rational>> = (0..m)
                .map(|r| subset.iter().map(|&j| a.get(r, j).clone()).collect())
                .collect();
            let Some(xs) = solve_dense(&sub, b.coords()) else {
                continue;
            };
            if xs.iter().any(Rational::is_negative) {
                continue;
            }
            let mut full = RVector::zero(n);
            for (slot, &j) in subset.iter().enumerate() {
                full[j] = xs[slot].clone();
            }
            let value = c.dot(&full);
            match &mut best {
                None => {
                    best = Some(OracleOptimum {
                        value,
                        points: vec![full],
                    })
                }
                Some(opt) => {
                    if value < opt.value {
                        opt.value = value;
                        opt.points = vec![full];
                    } else if value == opt.value && !opt.points.contains(&full) {
                        opt.points.push(full);
                    }
                }
            }
        }
    }
    best
}

fn split_columns(cone: &PolyhedralCone) -> RMatrix {
    let gens = cone.generators();
    let n = cone.dim();
    let k = gens.len();
    let mut a = RMatrix::zeros(n, 2 * k);
    for (j, g) in gens.iter().enumerate() {
        for i in 0..n {
            a.set(i, j, g[i].clone());
            a.set(i, k + j, -g[i].clone());
        }
    }
    a
}

fn split_objective(cone: &PolyhedralCone, on_plus: bool, on_minus: bool) -> RVector {
    let k = cone.generators().len();
    let mut c = RVector::zero(2 * k);
    for (j, g) in cone.generators().iter().enumerate() {
        let charge = cone.charge_of(g);
        if on_plus {
            c[j] = charge.clone();
        }
        if on_minus {
            c[k + j] = charge;
        }
    }
    c
}

/// Membership by brute force: does `Rλ = z` admit `λ ≥ 0`?
pub fn oracle_contains(cone: &PolyhedralCone, z: &RVector) -> bool {
    let a = RMatrix::from_columns(cone.generators());
    let zero = RVector::zero(cone.generators().len());
    brute_force_lp(&a, z, &zero).is_some()
}

/// `(e₊(z), e₋(z))` by brute force over the split system.
pub fn oracle_charge_split(cone: &PolyhedralCone, z: &RVector) -> (Rational, Rational) {
    let a = split_columns(cone);
    let plus = brute_force_lp(&a, z, &split_objective(cone, true, false))
        .expect("split system is feasible on generating cones")
        .value;
    let minus = brute_force_lp(&a, z, &split_objective(cone, false, true))
        .expect("split system is feasible on generating cones")
        .value;
    (plus, minus)
}

pub fn oracle_one_norm(cone: &PolyhedralCone, z: &RVector) -> Rational {
    let (p, m) = oracle_charge_split(cone, z);
    p + m
}

/// All optimal decompositions of the joint program, as `(plus, minus)`
/// pairs, by brute force.
pub fn oracle_joint_decompositions(
    cone: &PolyhedralCone,
    z: &RVector,
) -> (Rational, Vec<(RVector, RVector)>) {
    let a = split_columns(cone);
    let opt = brute_force_lp(&a, z, &split_objective(cone, true, true))
        .expect("joint system is feasible on generating cones");
    let k = cone.generators().len();
    let mut pairs: Vec<(RVector, RVector)> = Vec::new();
    for coeffs in &opt.points {
        let mut plus = RVector::zero(cone.dim());
        let mut minus = RVector::zero(cone.dim());
        for (j, g) in cone.generators().iter().enumerate() {
            if !coeffs[j].is_zero() {
                plus = plus.add(&g.scale(&coeffs[j]));
            }
            if !coeffs[k + j].is_zero() {
                minus = minus.add(&g.scale(&coeffs[k + j]));
            }
        }
        let pair = (plus, minus);
        if !pairs.contains(&pair) {
            pairs.push(pair);
        }
    }
    (opt.value, pairs)
}

/// Witness existence by vertex enumeration in the dual: the witness
/// polytope `{a : 0 ≤ a(rᵢ) ≤ e(rᵢ), a(x) = e(x), a(y) = 0}` is bounded, so
/// it is nonempty iff some active-set system of `n` constraints (the two
/// equalities plus `n − 2` tight bounds) has a solution satisfying all
/// constraints.
pub fn oracle_witness_exists(cone: &PolyhedralCone, x: &RVector, y: &RVector) -> bool {
    let n = cone.dim();
    // a = e witnesses any x against y = 0, and a = o any y against x = 0
    if x.is_zero() || y.is_zero() {
        return true;
    }
    // inequality rows: (normal, rhs) meaning normal·a = rhs when active
    let mut bounds: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for g in cone.generators() {
        bounds.push((g.coords().to_vec(), Rational::zero()));
        bounds.push((g.coords().to_vec(), cone.charge_of(g)));
    }
    let equalities: Vec<(Vec<Rational>, Rational)> = vec![
        (x.coords().to_vec(), cone.charge_of(x)),
        (y.coords().to_vec(), Rational::zero()),
    ];
    if n < 2 {
        return false;
    }
    let satisfied = |a: &[Rational]| -> bool {
        let av = RVector::new(a.to_vec());
        for g in cone.generators() {
            let v = av.dot(g);
            if v.is_negative() || v > cone.charge_of(g) {
                return false;
            }
        }
        av.dot(x) == cone.charge_of(x) && av.dot(y).is_zero()
    };
    for subset in combinations(bounds.len(), n - 2) {
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut rhs: Vec<Rational> = Vec::with_capacity(n);
        for (normal, value) in &equalities {
            rows.push(normal.clone());
            rhs.push(value.clone());
        }
        for &i in &subset {
            rows.push(bounds[i].0.clone());
            rhs.push(bounds[i].1.clone());
        }
        if let Some(a) = solve_dense(&rows, &rhs) {
            if satisfied(&a) {
                return true;
            }
        }
    }
    false
}

/// Orthogonal pairs of base points harvested from the normalized
/// generators; exhaustive over generator pairs, truncated at `limit`.
pub fn orthogonal_base_pairs(cone: &PolyhedralCone, limit: usize) -> Vec<(RVector, RVector)> {
    let mut out = Vec::new();
    let base_points: Vec<RVector> = cone
        .generators()
        .iter()
        .map(|g| g.scale(&cone.charge_of(g).recip()))
        .collect();
    'outer: for (i, x) in base_points.iter().enumerate() {
        for y in base_points.iter().skip(i + 1) {
            if x == y {
                continue;
            }
            if cone.are_orthogonal(x, y).unwrap() {
                out.push((x.clone(), y.clone()));
                if out.len() >= limit {
                    break 'outer;
                }
            }
        }
    }
    out
}

/// A small family of positive charge-preserving maps on the cone: the
/// identity, collapses onto base points, and their convex combinations.
pub fn endomorphism_zoo(cone: &PolyhedralCone, seed: u64) -> Vec<mcone_core::LinearMap> {
    use mcone_core::instances::{sample_members, to_base};
    use mcone_core::LinearMap;

    let mut out = vec![LinearMap::identity(cone.dim())];
    let members = sample_members(cone, 2, seed);
    let w0 = to_base(cone, &members[0]).unwrap();
    let w1 = to_base(cone, &members[1]).unwrap();
    let collapse0 = LinearMap::collapse_to(cone, &w0).unwrap();
    let collapse1 = LinearMap::collapse_to(cone, &w1).unwrap();
    out.push(
        LinearMap::convex_combination(&LinearMap::identity(cone.dim()), &collapse1, &rat_third())
            .unwrap(),
    );
    out.push(LinearMap::convex_combination(&collapse0, &collapse1, &rat_half()).unwrap());
    out.push(collapse0);
    out
}

fn rat_third() -> Rational {
    Rational::new(1.into(), 3.into())
}

fn rat_half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Componentwise positive/negative parts, the lattice decomposition.
pub fn componentwise_parts(z: &RVector) -> (RVector, RVector) {
    let plus = RVector::new(
        z.iter()
            .map(|c| {
                if c.is_positive() {
                    c.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect(),
    );
    let minus = RVector::new(
        z.iter()
            .map(|c| {
                if c.is_negative() {
                    -c.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect(),
    );
    (plus, minus)
}
