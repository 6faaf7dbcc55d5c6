//! Exact rational linear programming.
//!
//! A deliberately small primal simplex over ℚ: standard form
//! `min cᵀx  s.t.  Ax = b, x ≥ 0`, two phases, Bland's smallest-index rule
//! for both the entering column and ratio-test ties. Bland's rule makes the
//! pivot sequence finite without any perturbation, and every tableau entry is
//! a reduced fraction after every pivot, so identical inputs always produce
//! identical solutions.
//!
//! Besides `solve`, the kernel can walk the optimal face: pivoting among
//! zero-reduced-cost columns enumerates the vertices attaining the optimum,
//! which is how non-uniqueness of minimal decompositions is detected and
//! reported upstream.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{RMatrix, RVector};
use crate::rational::Rational;

/// `min objectiveᵀx  s.t.  constraints·x = rhs, x ≥ 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    constraints: RMatrix,
    rhs: RVector,
    objective: RVector,
}

impl LinearProgram {
    pub fn new(constraints: RMatrix, rhs: RVector, objective: RVector) -> Result<Self> {
        if constraints.rows() != rhs.dim() {
            return Err(Error::MalformedProgram(format!(
                "constraint rows {} != rhs length {}",
                constraints.rows(),
                rhs.dim()
            )));
        }
        if constraints.cols() != objective.dim() {
            return Err(Error::MalformedProgram(format!(
                "constraint columns {} != objective length {}",
                constraints.cols(),
                objective.dim()
            )));
        }
        Ok(Self {
            constraints,
            rhs,
            objective,
        })
    }

    pub fn constraints(&self) -> &RMatrix {
        &self.constraints
    }

    pub fn rhs(&self) -> &RVector {
        &self.rhs
    }

    pub fn objective(&self) -> &RVector {
        &self.objective
    }

    pub fn num_vars(&self) -> usize {
        self.constraints.cols()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.rows()
    }
}

/// Exact optimal solution of a [`LinearProgram`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    /// A vertex of the feasible polyhedron attaining the minimum.
    pub point: RVector,
    /// `objectiveᵀ point`, exact.
    pub value: Rational,
    /// Sorted indices of the basic columns at the final tableau.
    pub basis: Vec<usize>,
    /// Dual vector `y` with `yᵀ rhs = value` and `objective − Aᵀy ≥ 0`.
    pub dual: RVector,
}

/// Outcome of a solve. Infeasibility always carries a Farkas certificate:
/// a row combination `y` with `yᵀA ≤ 0` componentwise and `yᵀb > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal(LpSolution),
    Infeasible { farkas: RVector },
    Unbounded,
}

impl LpResult {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpResult::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn expect_optimal(&self) -> &LpSolution {
        self.optimal().expect("expected an optimal LP solution")
    }
}

// ---------------------------------------------------------------------------
// simplex tableau
// ---------------------------------------------------------------------------

/// Row layout: `n` structural columns, `m0` artificial/tracker columns, rhs.
/// The tracker columns start as the identity, so at any time they hold the
/// row operations applied so far; duals and Farkas rays read off from them.
#[derive(Debug, Clone)]
struct Tableau {
    n: usize,
    m0: usize,
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.n + self.m0
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.rhs_col() + 1;
        let pivot = self.rows[row][col].clone();
        debug_assert!(!pivot.is_zero());
        for c in 0..width {
            self.rows[row][c] = &self.rows[row][c] / &pivot;
        }
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let factor = self.rows[r][col].clone();
            for c in 0..width {
                let delta = &factor * &self.rows[row][c];
                self.rows[r][c] = &self.rows[r][c] - &delta;
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs for every column under the given cost vector
    /// (length `n + m0`): `r_j = c_j − Σ_k c_{basis k} T[k][j]`.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let width = self.rhs_col();
        let mut r: Vec<Rational> = cost.to_vec();
        for (k, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[k]];
            if cb.is_zero() {
                continue;
            }
            for (j, slot) in r.iter_mut().enumerate().take(width) {
                *slot = &*slot - &(cb * &row[j]);
            }
        }
        r
    }

    /// Bland's rule: entering column = smallest structural index with a
    /// negative reduced cost; leaving row = minimum ratio, ties broken by the
    /// smallest basic column index. Artificial columns never re-enter.
    fn run_bland(&mut self, cost: &[Rational]) -> Step {
        loop {
            let reduced = self.reduced_costs(cost);
            let entering = (0..self.n).find(|&j| reduced[j].is_negative());
            let Some(col) = entering else {
                return Step::Optimal;
            };
            let rhs = self.rhs_col();
            let mut best: Option<(Rational, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((r, i_best)) => {
                        ratio < *r || (ratio == *r && self.basis[i] < self.basis[*i_best])
                    }
                };
                if better {
                    best = Some((ratio, i));
                }
            }
            let Some((_, row)) = best else {
                return Step::Unbounded;
            };
            self.pivot(row, col);
        }
    }

    /// Structural part of the current basic solution.
    fn point(&self) -> RVector {
        let rhs = self.rhs_col();
        let mut x = RVector::zero(self.n);
        for (k, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = self.rows[k][rhs].clone();
            }
        }
        x
    }

    /// `y_i = Σ_k cost_{basis k} · T[k][tracker i]` over the tracker block.
    fn row_combination(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.m0];
        for (k, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[k]];
            if cb.is_zero() {
                continue;
            }
            for (i, slot) in y.iter_mut().enumerate() {
                *slot = &*slot + &(cb * &row[self.n + i]);
            }
        }
        y
    }
}

struct Solved {
    tableau: Tableau,
    flips: Vec<bool>,
}

enum Internal {
    Optimal(Solved),
    Infeasible { farkas: RVector },
    Unbounded,
}

fn solve_internal(lp: &LinearProgram) -> Internal {
    let m0 = lp.num_constraints();
    let n = lp.num_vars();

    // Rows are flipped so the right-hand side is nonnegative; duals and
    // Farkas rays are mapped back through `flips` at extraction time.
    let mut flips = vec![false; m0];
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m0);
    for (i, flip_slot) in flips.iter_mut().enumerate() {
        let flip = lp.rhs[i].is_negative();
        *flip_slot = flip;
        let mut row: Vec<Rational> = Vec::with_capacity(n + m0 + 1);
        for j in 0..n {
            let a = lp.constraints.get(i, j).clone();
            row.push(if flip { -a } else { a });
        }
        for k in 0..m0 {
            row.push(if k == i {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        let b = lp.rhs[i].clone();
        row.push(if flip { -b } else { b });
        rows.push(row);
    }

    let mut tableau = Tableau {
        n,
        m0,
        rows,
        basis: (n..n + m0).collect(),
    };

    // Phase 1: minimize the sum of artificials.
    let mut phase1_cost = vec![Rational::zero(); n + m0];
    for c in phase1_cost.iter_mut().skip(n) {
        *c = Rational::one();
    }
    match tableau.run_bland(&phase1_cost) {
        Step::Optimal => {}
        Step::Unbounded => unreachable!("phase-1 objective is bounded below by zero"),
    }

    let rhs = tableau.rhs_col();
    let infeasibility: Rational = tableau
        .rows
        .iter()
        .enumerate()
        .filter(|(k, _)| tableau.basis[*k] >= n)
        .map(|(_, row)| row[rhs].clone())
        .fold(Rational::zero(), |acc, v| acc + v);
    if infeasibility.is_positive() {
        let y = tableau.row_combination(&phase1_cost);
        let farkas = RVector::new(
            y.into_iter()
                .zip(&flips)
                .map(|(v, &f)| if f { -v } else { v })
                .collect(),
        );
        return Internal::Infeasible { farkas };
    }

    // Drive remaining artificials out of the basis; rows where no structural
    // pivot exists are redundant and dropped. Tracker columns keep full
    // width, so duals for dropped rows simply read as zero contributions.
    let mut row_idx = 0;
    while row_idx < tableau.rows.len() {
        if tableau.basis[row_idx] >= n {
            let pivot_col = (0..n).find(|&j| !tableau.rows[row_idx][j].is_zero());
            match pivot_col {
                Some(j) => tableau.pivot(row_idx, j),
                None => {
                    tableau.rows.remove(row_idx);
                    tableau.basis.remove(row_idx);
                    continue;
                }
            }
        }
        row_idx += 1;
    }

    // Phase 2 with the real objective.
    let mut phase2_cost = vec![Rational::zero(); n + m0];
    phase2_cost[..n].clone_from_slice(lp.objective.coords());
    match tableau.run_bland(&phase2_cost) {
        Step::Optimal => Internal::Optimal(Solved { tableau, flips }),
        Step::Unbounded => Internal::Unbounded,
    }
}

fn extract_solution(lp: &LinearProgram, solved: &Solved) -> LpSolution {
    let tableau = &solved.tableau;
    let point = tableau.point();
    let value = lp.objective.dot(&point);
    let mut basis: Vec<usize> = tableau.basis.clone();
    basis.sort_unstable();

    let mut cost = vec![Rational::zero(); tableau.n + tableau.m0];
    cost[..tableau.n].clone_from_slice(lp.objective.coords());
    let dual = RVector::new(
        tableau
            .row_combination(&cost)
            .into_iter()
            .zip(&solved.flips)
            .map(|(v, &f)| if f { -v } else { v })
            .collect(),
    );

    LpSolution {
        point,
        value,
        basis,
        dual,
    }
}

/// Solves the program exactly. Termination is guaranteed by Bland's rule;
/// identical inputs produce identical outputs.
pub fn solve(lp: &LinearProgram) -> LpResult {
    match solve_internal(lp) {
        Internal::Optimal(solved) => LpResult::Optimal(extract_solution(lp, &solved)),
        Internal::Infeasible { farkas } => LpResult::Infeasible { farkas },
        Internal::Unbounded => LpResult::Unbounded,
    }
}

/// Upper bound on the number of optimal bases visited while walking a face.
const FACE_BASIS_BUDGET: usize = 4096;

/// Enumerates distinct vertices of the optimal face
/// `{x feasible : objectiveᵀx = solution.value}`, up to `max_count` of them.
///
/// Walks the graph of optimal bases: from each visited basis, pivot on any
/// nonbasic column with zero reduced cost (all ratio-test ties are explored,
/// so degenerate vertices do not hide neighbors). Returns exactly one vertex
/// iff the optimum is vertex-unique, provided the basis budget is not
/// exhausted first.
pub fn enumerate_optimal_vertices(
    lp: &LinearProgram,
    solution: &LpSolution,
    max_count: usize,
) -> Result<Vec<RVector>> {
    if max_count == 0 {
        return Err(Error::InvalidArgument("max_count must be positive".into()));
    }
    let Internal::Optimal(solved) = solve_internal(lp) else {
        return Err(Error::NotOptimal);
    };
    let start = solved.tableau;
    debug_assert_eq!(lp.objective.dot(&start.point()), solution.value);

    let mut cost = vec![Rational::zero(); start.n + start.m0];
    cost[..start.n].clone_from_slice(lp.objective.coords());

    let mut visited: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut seen_points: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut out: Vec<RVector> = Vec::new();
    let mut queue: VecDeque<Tableau> = VecDeque::new();

    let sorted = |basis: &[usize]| {
        let mut b = basis.to_vec();
        b.sort_unstable();
        b
    };

    visited.insert(sorted(&start.basis));
    queue.push_back(start);

    while let Some(tab) = queue.pop_front() {
        let point = tab.point();
        if seen_points.insert(point.coords().to_vec()) {
            verify_face_vertex(lp, &point, &solution.value);
            out.push(point);
            if out.len() >= max_count {
                break;
            }
        }
        if visited.len() >= FACE_BASIS_BUDGET {
            break;
        }
        let reduced = tab.reduced_costs(&cost);
        let rhs = tab.rhs_col();
        for col in 0..tab.n {
            if tab.basis.contains(&col) || !reduced[col].is_zero() {
                continue;
            }
            let mut best_ratio: Option<Rational> = None;
            for row in &tab.rows {
                if row[col].is_positive() {
                    let ratio = &row[rhs] / &row[col];
                    if best_ratio.as_ref().is_none_or(|b| ratio < *b) {
                        best_ratio = Some(ratio);
                    }
                }
            }
            let Some(best) = best_ratio else {
                continue; // optimal ray, no vertex in this direction
            };
            for i in 0..tab.rows.len() {
                if !tab.rows[i][col].is_positive() {
                    continue;
                }
                if &tab.rows[i][rhs] / &tab.rows[i][col] != best {
                    continue;
                }
                let mut candidate = tab.basis.clone();
                candidate[i] = col;
                let key = sorted(&candidate);
                if visited.contains(&key) {
                    continue;
                }
                visited.insert(key);
                let mut next = tab.clone();
                next.pivot(i, col);
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

fn verify_face_vertex(lp: &LinearProgram, point: &RVector, value: &Rational) {
    assert!(
        point.iter().all(|x| !x.is_negative()),
        "face vertex has a negative coordinate"
    );
    assert_eq!(
        &lp.constraints.mul_vec(point),
        lp.rhs(),
        "face vertex violates the constraints"
    );
    assert_eq!(
        &lp.objective.dot(point),
        value,
        "face vertex is not optimal"
    );
}

// ---------------------------------------------------------------------------
// general-form builder
// ---------------------------------------------------------------------------

/// Sign restriction of a builder variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarSign {
    NonNegative,
    Free,
}

/// Constraint sense accepted by the builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

type WeightedTerms = Vec<(usize, Rational)>;

/// Assembles a standard-form program from free/nonnegative variables and
/// mixed-sense constraints: free variables split into nonnegative pairs,
/// inequalities get slack or surplus columns.
#[derive(Debug, Default)]
pub struct LpBuilder {
    vars: Vec<VarSign>,
    constraints: Vec<(WeightedTerms, Cmp, Rational)>,
    objective: WeightedTerms,
}

/// Maps a standard-form solution point back to the builder's variables.
#[derive(Debug, Clone)]
pub struct VarRecovery {
    columns: Vec<(usize, Option<usize>)>,
}

impl VarRecovery {
    pub fn extract(&self, point: &RVector) -> RVector {
        RVector::new(
            self.columns
                .iter()
                .map(|(plus, minus)| match minus {
                    Some(m) => &point[*plus] - &point[*m],
                    None => point[*plus].clone(),
                })
                .collect(),
        )
    }
}

impl LpBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, sign: VarSign) -> usize {
        self.vars.push(sign);
        self.vars.len() - 1
    }

    pub fn add_vars(&mut self, count: usize, sign: VarSign) -> Vec<usize> {
        (0..count).map(|_| self.add_var(sign)).collect()
    }

    pub fn add_constraint(&mut self, terms: WeightedTerms, cmp: Cmp, rhs: Rational) {
        self.constraints.push((terms, cmp, rhs));
    }

    pub fn set_objective(&mut self, terms: WeightedTerms) {
        self.objective = terms;
    }

    pub fn build(self) -> (LinearProgram, VarRecovery) {
        let mut columns: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.vars.len());
        let mut ncols = 0usize;
        for sign in &self.vars {
            match sign {
                VarSign::NonNegative => {
                    columns.push((ncols, None));
                    ncols += 1;
                }
                VarSign::Free => {
                    columns.push((ncols, Some(ncols + 1)));
                    ncols += 2;
                }
            }
        }
        let n_slacks = self
            .constraints
            .iter()
            .filter(|(_, cmp, _)| *cmp != Cmp::Eq)
            .count();
        let total = ncols + n_slacks;

        let m = self.constraints.len();
        let mut a = RMatrix::zeros(m, total);
        let mut b = RVector::zero(m);
        let mut slack = ncols;
        for (i, (terms, cmp, rhs)) in self.constraints.into_iter().enumerate() {
            for (var, coef) in terms {
                let (plus, minus) = columns[var];
                let cur = a.get(i, plus).clone();
                a.set(i, plus, cur + &coef);
                if let Some(mcol) = minus {
                    let cur = a.get(i, mcol).clone();
                    a.set(i, mcol, cur - &coef);
                }
            }
            match cmp {
                Cmp::Eq => {}
                Cmp::Le => {
                    a.set(i, slack, Rational::one());
                    slack += 1;
                }
                Cmp::Ge => {
                    a.set(i, slack, -Rational::one());
                    slack += 1;
                }
            }
            b[i] = rhs;
        }

        let mut c = RVector::zero(total);
        for (var, coef) in self.objective {
            let (plus, minus) = columns[var];
            c[plus] = &c[plus] + &coef;
            if let Some(mcol) = minus {
                c[mcol] = &c[mcol] - &coef;
            }
        }

        let lp = LinearProgram::new(a, b, c).expect("builder emits consistent dimensions");
        (lp, VarRecovery { columns })
    }
}
