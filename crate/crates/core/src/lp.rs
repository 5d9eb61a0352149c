//! Self-contained dense linear programming.
//!
//! A two-phase simplex over non-negative variables with per-row `≤` / `≥`
//! senses. Problems in this crate have at most a few dozen rows and columns,
//! so the solver re-solves the basis system from the original data at every
//! pivot instead of maintaining an updated tableau; that trades speed for
//! numerical transparency. The entering rule is largest-coefficient with an
//! automatic switch to Bland's rule after `10·(n+m)` pivots, which rules out
//! cycling.

use crate::error::Error;
use crate::linalg::{dot, solve_dense, Matrix};
use crate::Result;

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Constraint row direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Ge,
}

/// `c·x ⇒ max/min` subject to `A x {≤,≥} r`, `x ≥ 0`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub sense: Sense,
    pub constraint_matrix: Matrix,
    pub rhs: Vec<f64>,
    pub row_sense: Vec<RowSense>,
}

impl LpProblem {
    pub fn new(
        objective: Vec<f64>,
        sense: Sense,
        constraint_matrix: Matrix,
        rhs: Vec<f64>,
        row_sense: Vec<RowSense>,
    ) -> Result<Self> {
        let n = objective.len();
        let m = rhs.len();
        if constraint_matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                what: "constraint columns",
                expected: n,
                got: constraint_matrix.cols(),
            });
        }
        if constraint_matrix.rows() != m {
            return Err(Error::DimensionMismatch {
                what: "constraint rows",
                expected: m,
                got: constraint_matrix.rows(),
            });
        }
        if row_sense.len() != m {
            return Err(Error::DimensionMismatch {
                what: "row senses",
                expected: m,
                got: row_sense.len(),
            });
        }
        if objective.iter().chain(rhs.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "LP data",
                value: f64::NAN,
            });
        }
        Ok(Self {
            objective,
            sense,
            constraint_matrix,
            rhs,
            row_sense,
        })
    }

    /// Convenience constructor for the common `max c·x, A x ≤ r` shape.
    pub fn maximize_leq(objective: Vec<f64>, a: Matrix, rhs: Vec<f64>) -> Result<Self> {
        let senses = vec![RowSense::Le; rhs.len()];
        Self::new(objective, Sense::Maximize, a, rhs, senses)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }
}

/// Outcome classification of an LP solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solve result. `point` and `objective_value` are meaningful only for
/// [`LpStatus::Optimal`]; `basis` lists the column indices (structural
/// `0..n`, then one slack/surplus per row) that identify the vertex.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub point: Vec<f64>,
    pub objective_value: f64,
    pub basis: Vec<usize>,
    pub pivots: usize,
}

impl LpSolution {
    fn non_optimal(status: LpStatus, pivots: usize) -> Self {
        Self {
            status,
            point: Vec::new(),
            objective_value: f64::NAN,
            basis: Vec::new(),
            pivots,
        }
    }
}

const REDUCED_COST_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-11;

fn feas_tol(rhs: f64) -> f64 {
    1e-8 * (1.0 + rhs.abs())
}

/// Working data: rows normalized to non-negative rhs, slack columns appended,
/// artificials appended for rows that need them.
struct Standardized {
    /// m × (n + m) matrix: structural then slack/surplus columns.
    cols: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    n: usize,
    m: usize,
    /// artificial column per row (only rows starting without a basic slack).
    artificial_rows: Vec<usize>,
}

fn standardize(p: &LpProblem) -> Standardized {
    let n = p.num_vars();
    let m = p.num_rows();
    let mut rows: Vec<Vec<f64>> = (0..m).map(|i| p.constraint_matrix.row(i).to_vec()).collect();
    let mut rhs = p.rhs.clone();
    let mut senses = p.row_sense.clone();
    for i in 0..m {
        if rhs[i] < 0.0 {
            for v in rows[i].iter_mut() {
                *v = -*v;
            }
            rhs[i] = -rhs[i];
            senses[i] = match senses[i] {
                RowSense::Le => RowSense::Ge,
                RowSense::Ge => RowSense::Le,
            };
        }
    }
    let total = n + m;
    let mut cols: Vec<Vec<f64>> = vec![vec![0.0; m]; total];
    for (j, col) in cols.iter_mut().enumerate().take(n) {
        for i in 0..m {
            col[i] = rows[i][j];
        }
    }
    let mut artificial_rows = Vec::new();
    for i in 0..m {
        match senses[i] {
            RowSense::Le => cols[n + i][i] = 1.0,
            RowSense::Ge => {
                cols[n + i][i] = -1.0;
                artificial_rows.push(i);
            }
        }
    }
    Standardized {
        cols,
        rhs,
        n,
        m,
        artificial_rows,
    }
}

struct SimplexState<'a> {
    std: &'a Standardized,
    /// all columns including artificials (artificials appended at the end)
    ncols: usize,
    art_start: usize,
    basis: Vec<usize>,
    pivots: usize,
    bland_threshold: usize,
}

impl<'a> SimplexState<'a> {
    fn column(&self, j: usize) -> Vec<f64> {
        if j < self.art_start {
            self.std.cols[j].clone()
        } else {
            let row = self.std.artificial_rows[j - self.art_start];
            let mut c = vec![0.0; self.std.m];
            c[row] = 1.0;
            c
        }
    }

    fn basis_matrix(&self) -> Matrix {
        let m = self.std.m;
        let mut b = Matrix::zeros(m, m);
        for (k, &j) in self.basis.iter().enumerate() {
            let col = self.column(j);
            for i in 0..m {
                b.set(i, k, col[i]);
            }
        }
        b
    }

    fn basic_values(&self) -> Result<Vec<f64>> {
        solve_dense(&self.basis_matrix(), &self.std.rhs).ok_or_else(|| Error::SingularBasis {
            basis: self.basis.clone(),
        })
    }

    /// Runs simplex iterations for the cost vector `costs` (minimization).
    /// Returns `None` on optimality, `Some(Unbounded)` when a ray is found.
    fn minimize(&mut self, costs: &[f64], allow_artificial_entering: bool) -> Result<Option<LpStatus>> {
        let m = self.std.m;
        let hard_cap = 1000 * (self.std.n + m + 10);
        loop {
            if self.pivots > hard_cap {
                return Err(Error::OracleFailure {
                    reason: format!("simplex exceeded {hard_cap} pivots"),
                });
            }
            let bmat = self.basis_matrix();
            let xb = solve_dense(&bmat, &self.std.rhs).ok_or_else(|| Error::SingularBasis {
                basis: self.basis.clone(),
            })?;
            // duals: Bᵀ y = c_B
            let cb: Vec<f64> = self.basis.iter().map(|&j| costs[j]).collect();
            let y = solve_dense(&bmat.transpose(), &cb).ok_or_else(|| Error::SingularBasis {
                basis: self.basis.clone(),
            })?;

            let bland = self.pivots >= self.bland_threshold;
            let mut entering: Option<(usize, f64)> = None;
            for j in 0..self.ncols {
                if self.basis.contains(&j) {
                    continue;
                }
                if !allow_artificial_entering && j >= self.art_start {
                    continue;
                }
                let reduced = costs[j] - dot(&y, &self.column(j));
                if reduced < -REDUCED_COST_TOL {
                    if bland {
                        entering = Some((j, reduced));
                        break;
                    }
                    match entering {
                        Some((_, best)) if reduced >= best => {}
                        _ => entering = Some((j, reduced)),
                    }
                }
            }
            let Some((enter, _)) = entering else {
                return Ok(None); // optimal for this phase
            };

            let w = solve_dense(&bmat, &self.column(enter)).ok_or_else(|| {
                Error::SingularBasis {
                    basis: self.basis.clone(),
                }
            })?;

            // Basic artificials must never grow: if the entering direction
            // moves one, pivot it out immediately (degenerate step).
            let mut leave: Option<usize> = None;
            for (i, &bj) in self.basis.iter().enumerate() {
                if bj >= self.art_start && w[i].abs() > PIVOT_TOL && xb[i].abs() <= feas_tol(self.std.rhs[i]) {
                    leave = Some(i);
                    break;
                }
            }
            if leave.is_none() {
                let mut best_ratio = f64::INFINITY;
                for i in 0..m {
                    if w[i] > PIVOT_TOL {
                        let ratio = (xb[i].max(0.0)) / w[i];
                        let better = ratio < best_ratio - 1e-12
                            || (ratio < best_ratio + 1e-12
                                && leave.map_or(true, |cur| {
                                    if bland {
                                        self.basis[i] < self.basis[cur]
                                    } else {
                                        i < cur
                                    }
                                }));
                        if better {
                            best_ratio = ratio;
                            leave = Some(i);
                        }
                    }
                }
            }
            let Some(leave) = leave else {
                return Ok(Some(LpStatus::Unbounded));
            };
            if w[leave].abs() < PIVOT_TOL {
                return Err(Error::SingularBasis {
                    basis: self.basis.clone(),
                });
            }
            self.basis[leave] = enter;
            self.pivots += 1;
        }
    }

    /// After phase 1, pivot remaining basic artificials out where possible.
    fn drive_out_artificials(&mut self) -> Result<()> {
        let m = self.std.m;
        for row in 0..m {
            if self.basis[row] < self.art_start {
                continue;
            }
            let bmat = self.basis_matrix();
            // e_row extraction vector
            let mut e = vec![0.0; m];
            e[row] = 1.0;
            let v = solve_dense(&bmat.transpose(), &e).ok_or_else(|| Error::SingularBasis {
                basis: self.basis.clone(),
            })?;
            let mut replacement = None;
            for j in 0..self.art_start {
                if self.basis.contains(&j) {
                    continue;
                }
                if dot(&v, &self.column(j)).abs() > 1e-9 {
                    replacement = Some(j);
                    break;
                }
            }
            if let Some(j) = replacement {
                self.basis[row] = j;
                self.pivots += 1;
            }
            // if no replacement exists the row is redundant; the artificial
            // stays basic at level zero and is barred from re-entering
        }
        Ok(())
    }
}

/// Two-phase simplex solve.
pub fn solve_lp(p: &LpProblem) -> Result<LpSolution> {
    // validate via the constructor checks
    let p = LpProblem::new(
        p.objective.clone(),
        p.sense,
        p.constraint_matrix.clone(),
        p.rhs.clone(),
        p.row_sense.clone(),
    )?;
    let std = standardize(&p);
    let (n, m) = (std.n, std.m);
    let n_art = std.artificial_rows.len();
    let art_start = n + m;

    let mut state = SimplexState {
        std: &std,
        ncols: art_start + n_art,
        art_start,
        basis: Vec::with_capacity(m),
        pivots: 0,
        bland_threshold: 10 * (n + m),
    };
    // initial basis: slack for rows without artificial, artificial otherwise
    let mut art_idx = 0;
    for i in 0..m {
        if std.artificial_rows.contains(&i) {
            state.basis.push(art_start + art_idx);
            art_idx += 1;
        } else {
            state.basis.push(n + i);
        }
    }

    if n_art > 0 {
        let mut phase1_costs = vec![0.0; state.ncols];
        for c in phase1_costs.iter_mut().skip(art_start) {
            *c = 1.0;
        }
        match state.minimize(&phase1_costs, true)? {
            None => {}
            Some(_) => {
                // phase-1 objective is bounded below by zero; a ray here
                // means numerical trouble
                return Err(Error::OracleFailure {
                    reason: "phase 1 reported an unbounded ray".into(),
                });
            }
        }
        let xb = state.basic_values()?;
        let infeasibility: f64 = state
            .basis
            .iter()
            .zip(&xb)
            .filter(|(&j, _)| j >= art_start)
            .map(|(_, &v)| v.max(0.0))
            .sum();
        let threshold: f64 = std.rhs.iter().map(|&r| feas_tol(r)).sum();
        if infeasibility > threshold {
            return Ok(LpSolution::non_optimal(LpStatus::Infeasible, state.pivots));
        }
        state.drive_out_artificials()?;
    }

    // phase 2 on the true objective (internally minimizing)
    let flip = match p.sense {
        Sense::Maximize => -1.0,
        Sense::Minimize => 1.0,
    };
    let mut costs = vec![0.0; state.ncols];
    for j in 0..n {
        costs[j] = flip * p.objective[j];
    }
    if let Some(status) = state.minimize(&costs, false)? {
        return Ok(LpSolution::non_optimal(status, state.pivots));
    }

    let xb = state.basic_values()?;
    let mut point = vec![0.0; n];
    for (k, &j) in state.basis.iter().enumerate() {
        if j < n {
            point[j] = xb[k].max(0.0);
        }
    }
    let objective_value = dot(&p.objective, &point);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        point,
        objective_value,
        basis: state.basis.clone(),
        pivots: state.pivots,
    })
}

/// Exhaustive basic-solution enumeration; a test oracle for tiny LPs.
///
/// Every choice of `n` active constraints among rows, non-negativity bounds
/// and an artificial enclosing box is solved as a linear system and filtered
/// for feasibility. Unboundedness is detected by growing the box: if the
/// best objective keeps improving, no finite optimum exists.
pub fn vertex_enumeration_oracle(p: &LpProblem) -> Result<LpSolution> {
    let n = p.num_vars();
    let m = p.num_rows();
    if n + m > 12 {
        return Err(Error::SizeLimit {
            what: "vertex enumeration",
            limit: 12,
            got: n + m,
        });
    }
    let scale = p
        .rhs
        .iter()
        .chain(p.objective.iter())
        .fold(1.0_f64, |acc, &v| acc.max(v.abs()));
    let box_a = 1e6 * scale;
    let best_a = enumerate_with_box(p, box_a)?;
    let best_b = enumerate_with_box(p, box_a * 16.0)?;
    match (best_a, best_b) {
        (None, _) => Ok(LpSolution::non_optimal(LpStatus::Infeasible, 0)),
        (Some((obj_a, point_a)), Some((obj_b, _))) => {
            let diff = (obj_b - obj_a).abs();
            if diff > 1e-6 * (1.0 + obj_a.abs()) {
                return Ok(LpSolution::non_optimal(LpStatus::Unbounded, 0));
            }
            Ok(LpSolution {
                status: LpStatus::Optimal,
                point: point_a,
                objective_value: obj_a,
                basis: Vec::new(),
                pivots: 0,
            })
        }
        (Some(_), None) => Err(Error::OracleFailure {
            reason: "box growth lost feasibility".into(),
        }),
    }
}

fn enumerate_with_box(p: &LpProblem, box_bound: f64) -> Result<Option<(f64, Vec<f64>)>> {
    let n = p.num_vars();
    let m = p.num_rows();
    // constraint list: (normal, rhs) treated as equality when active
    let mut normals: Vec<Vec<f64>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    for i in 0..m {
        normals.push(p.constraint_matrix.row(i).to_vec());
        rhs.push(p.rhs[i]);
    }
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        normals.push(e.clone()); // x_j = 0 when active
        rhs.push(0.0);
        normals.push(e); // x_j = box when active
        rhs.push(box_bound);
    }
    let total = normals.len();
    let maximize = matches!(p.sense, Sense::Maximize);
    let mut best: Option<(f64, Vec<f64>)> = None;

    let mut combo: Vec<usize> = (0..n).collect();
    loop {
        if let Some(mat) = Matrix::from_rows(
            &combo.iter().map(|&k| normals[k].clone()).collect::<Vec<_>>(),
        )
        .ok()
        {
            let b: Vec<f64> = combo.iter().map(|&k| rhs[k]).collect();
            if let Some(x) = solve_dense(&mat, &b) {
                if is_feasible(p, &x, box_bound) {
                    let obj = dot(&p.objective, &x);
                    let better = match &best {
                        None => true,
                        Some((cur, cur_x)) => {
                            let gap = if maximize { obj - cur } else { cur - obj };
                            gap > 1e-12 * (1.0 + cur.abs())
                                || (gap.abs() <= 1e-12 * (1.0 + cur.abs())
                                    && lex_less(&x, cur_x))
                        }
                    };
                    if better {
                        best = Some((obj, x));
                    }
                }
            }
        }
        // next combination of size n out of total
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(best);
            }
            i -= 1;
            if combo[i] != i + total - n {
                combo[i] += 1;
                for k in (i + 1)..n {
                    combo[k] = combo[k - 1] + 1;
                }
                break;
            }
        }
    }
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > 1e-12 {
            return x < y;
        }
    }
    false
}

fn is_feasible(p: &LpProblem, x: &[f64], box_bound: f64) -> bool {
    if x.iter().any(|&v| v < -1e-9 || v > box_bound * (1.0 + 1e-9)) {
        return false;
    }
    for i in 0..p.num_rows() {
        let lhs = dot(p.constraint_matrix.row(i), x);
        let tol = feas_tol(p.rhs[i]);
        match p.row_sense[i] {
            RowSense::Le if lhs > p.rhs[i] + tol => return false,
            RowSense::Ge if lhs < p.rhs[i] - tol => return false,
            _ => {}
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[Vec<f64>]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn null_objective_is_optimal_zero() {
        let p = LpProblem::maximize_leq(vec![0.0], mat(&[vec![1.0]]), vec![1.0]).unwrap();
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective_value, 0.0);
    }

    #[test]
    fn simple_two_var_max() {
        // max x + 2y st x + y <= 4, x <= 3
        let p = LpProblem::maximize_leq(
            vec![1.0, 2.0],
            mat(&[vec![1.0, 1.0], vec![1.0, 0.0]]),
            vec![4.0, 3.0],
        )
        .unwrap();
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 8.0).abs() < 1e-9);
        assert!((s.point[1] - 4.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_detected() {
        // x >= 1 with x <= 0.5
        let p = LpProblem::new(
            vec![1.0],
            Sense::Maximize,
            mat(&[vec![1.0], vec![1.0]]),
            vec![1.0, 0.5],
            vec![RowSense::Ge, RowSense::Le],
        )
        .unwrap();
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        // max x with only x >= 1
        let p = LpProblem::new(
            vec![1.0],
            Sense::Maximize,
            mat(&[vec![1.0]]),
            vec![1.0],
            vec![RowSense::Ge],
        )
        .unwrap();
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn minimization_with_ge_rows() {
        // min 2x + 3y st x + y >= 2, x >= 0.5
        let p = LpProblem::new(
            vec![2.0, 3.0],
            Sense::Minimize,
            mat(&[vec![1.0, 1.0], vec![1.0, 0.0]]),
            vec![2.0, 0.5],
            vec![RowSense::Ge, RowSense::Ge],
        )
        .unwrap();
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 4.0).abs() < 1e-9, "{}", s.objective_value);
        assert!((s.point[0] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_normalized() {
        // max -x st -x <= -1  (i.e. x >= 1), x <= 3
        let p = LpProblem::new(
            vec![-1.0],
            Sense::Maximize,
            mat(&[vec![-1.0], vec![1.0]]),
            vec![-1.0, 3.0],
            vec![RowSense::Le, RowSense::Le],
        )
        .unwrap();
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.point[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn oracle_rejects_oversized_problems() {
        let p = LpProblem::maximize_leq(
            vec![0.0; 13],
            Matrix::zeros(0, 13),
            vec![],
        )
        .unwrap();
        assert!(matches!(
            vertex_enumeration_oracle(&p),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn oracle_matches_simplex_on_fixed_instance() {
        let p = LpProblem::maximize_leq(
            vec![3.0, 5.0],
            mat(&[vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]]),
            vec![4.0, 12.0, 18.0],
        )
        .unwrap();
        let a = solve_lp(&p).unwrap();
        let b = vertex_enumeration_oracle(&p).unwrap();
        assert_eq!(a.status, LpStatus::Optimal);
        assert_eq!(b.status, LpStatus::Optimal);
        assert!((a.objective_value - b.objective_value).abs() < 1e-8);
        assert!((a.objective_value - 36.0).abs() < 1e-9);
    }

    #[test]
    fn oracle_detects_infeasible_and_unbounded() {
        // −x ≥ 1 has no solution with x ≥ 0
        let inf = LpProblem::new(
            vec![1.0],
            Sense::Maximize,
            mat(&[vec![-1.0]]),
            vec![1.0],
            vec![RowSense::Ge],
        )
        .unwrap();
        assert_eq!(
            vertex_enumeration_oracle(&inf).unwrap().status,
            LpStatus::Infeasible
        );
        let unb = LpProblem::new(
            vec![1.0],
            Sense::Maximize,
            mat(&[vec![1.0]]),
            vec![1.0],
            vec![RowSense::Ge],
        )
        .unwrap();
        assert_eq!(
            vertex_enumeration_oracle(&unb).unwrap().status,
            LpStatus::Unbounded
        );
    }

    #[test]
    fn degenerate_problem_terminates() {
        // classic degeneracy: duplicated binding constraints
        let p = LpProblem::maximize_leq(
            vec![1.0, 1.0],
            mat(&[
                vec![1.0, 1.0],
                vec![1.0, 1.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
            ]),
            vec![1.0, 1.0, 1.0, 1.0],
        )
        .unwrap();
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 1.0).abs() < 1e-9);
        assert!(s.pivots <= 10 * (2 + 4) + 2 * (2 + 4));
    }
}
