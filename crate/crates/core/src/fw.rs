//! Multi-start Frank-Wolfe maximization over `{x | A x ≤ r, x ≥ 0}`.
//!
//! The objective is non-concave, so a single conditional-gradient run only
//! reaches a stationary point of one basin. The driver therefore launches a
//! deterministic family of starts (the origin, every single-variable
//! resource-exhausting point, then seeded random boundary points), runs the
//! Frank-Wolfe loop in each, and keeps the best result under a fixed
//! tie-break. Starts are independent, so they run in parallel; the merge is
//! sequential in start order and hence reproducible.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Error;
use crate::linalg::{dot, Matrix};
use crate::lp::{LpProblem, LpStatus, RowSense, Sense};
use crate::Result;

/// Options shared by the multi-start solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Number of starts (origin and axis points first, random fill after).
    pub starts: usize,
    /// Seed for the random boundary starts.
    pub seed: u64,
    /// Relative Frank-Wolfe gap tolerance: stop when `gap ≤ gap_tol·(1+|F|)`.
    pub gap_tol: f64,
    /// Iteration cap per start.
    pub max_iterations: usize,
    /// Uniform scan points of the segment line search.
    pub line_scan: usize,
    /// Golden-section interval tolerance of the line search.
    pub line_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            starts: 32,
            seed: 0,
            gap_tol: 1e-6,
            max_iterations: 5000,
            line_scan: 64,
            line_tol: 1e-10,
        }
    }
}

/// Result of one polytope maximization.
#[derive(Debug, Clone)]
pub(crate) struct FwOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    /// Frank-Wolfe gap `ḡ(x)·(s − x)` at the returned point.
    pub gap: f64,
    pub starts_used: usize,
}

/// Largest single-variable value allowed by the rows: `min_i r_i / a_ij`
/// over rows with `a_ij > 0`, or `None` when no row bounds the column.
pub(crate) fn column_bound(a: &Matrix, r: &[f64], j: usize) -> Option<f64> {
    let mut bound: Option<f64> = None;
    for i in 0..a.rows() {
        let coeff = a.get(i, j);
        if coeff > 0.0 {
            let b = (r[i] / coeff).max(0.0);
            bound = Some(bound.map_or(b, |cur: f64| cur.min(b)));
        }
    }
    bound
}

/// Largest feasible scaling of a direction: `x = t·d` stays inside the
/// polytope for `t = min r_i / (A d)_i` over rows with a positive dot.
fn scale_to_boundary(a: &Matrix, r: &[f64], dir: &[f64]) -> Vec<f64> {
    let ad = a.mul_vec(dir).expect("direction has model dimension");
    let mut t = f64::INFINITY;
    for (i, &adi) in ad.iter().enumerate() {
        if adi > 0.0 {
            t = t.min(r[i] / adi);
        }
    }
    if !t.is_finite() {
        t = 0.0;
    }
    dir.iter().map(|&d| (t * d).max(0.0)).collect()
}

/// Deterministic start family: origin, caller hints (e.g. the planned
/// quantities) scaled to the boundary, every single-variable
/// resource-exhausting point, then seeded random boundary points. Hints
/// matter: a sharply planned product has a numerically dead gradient near
/// zero, so only a start that already carries every coordinate inside its
/// informative band can reach the joint optimum.
fn start_points(a: &Matrix, r: &[f64], hints: &[Vec<f64>], opts: &SolverOptions) -> Vec<Vec<f64>> {
    let n = a.cols();
    let mut points = Vec::with_capacity(opts.starts);
    points.push(vec![0.0; n]);
    for hint in hints {
        if points.len() >= opts.starts {
            break;
        }
        if hint.len() == n && hint.iter().all(|v| v.is_finite() && *v >= 0.0) {
            points.push(scale_to_boundary(a, r, hint));
        }
    }
    for j in 0..n {
        if points.len() >= opts.starts {
            break;
        }
        if let Some(b) = column_bound(a, r, j) {
            let mut x = vec![0.0; n];
            x[j] = b;
            points.push(x);
        }
    }
    let mut k = 0u64;
    while points.len() < opts.starts {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        k += 1;
        let dir: Vec<f64> = (0..n).map(|_| 0.02 + 0.98 * rng.gen::<f64>()).collect();
        points.push(scale_to_boundary(a, r, &dir));
    }
    points
}

/// Scan the segment uniformly, then refine around the best sample with a
/// golden-section search. Returns `(γ, f(γ))` for the best point seen.
fn line_search_max(
    f: &mut impl FnMut(f64) -> Result<f64>,
    scan: usize,
    tol: f64,
) -> Result<(f64, f64)> {
    let scan = scan.max(2);
    let mut best_i = 0;
    let mut best_g = 0.0;
    let mut best_f = f(0.0)?;
    for i in 1..scan {
        let gamma = i as f64 / (scan - 1) as f64;
        let v = f(gamma)?;
        if v > best_f {
            best_f = v;
            best_g = gamma;
            best_i = i;
        }
    }
    let step = 1.0 / (scan - 1) as f64;
    let mut lo = if best_i == 0 { 0.0 } else { (best_i - 1) as f64 * step };
    let mut hi = ((best_i + 1) as f64 * step).min(1.0);

    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
        if f1 > best_f {
            best_f = f1;
            best_g = x1;
        }
        if f2 > best_f {
            best_f = f2;
            best_g = x2;
        }
    }
    Ok((best_g, best_f))
}

struct StartOutcome {
    x: Vec<f64>,
    value: f64,
    gap: f64,
}

/// One Frank-Wolfe run over the polytope described by `(rows, rhs, senses)`,
/// capped at `max_iter` oracle calls. The gap returned refers to that same
/// polytope; the second return value is the number of iterations spent.
fn fw_single<F, G>(
    f: &F,
    grad: &G,
    a: &Matrix,
    rhs: &[f64],
    senses: &[RowSense],
    x0: Vec<f64>,
    max_iter: usize,
    opts: &SolverOptions,
) -> Result<(StartOutcome, usize)>
where
    F: Fn(&[f64]) -> Result<f64>,
    G: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let mut x = x0;
    let mut fx = f(&x)?;
    let mut gap = f64::INFINITY;
    let mut spent = 0;
    for iteration in 0..max_iter {
        spent = iteration + 1;
        let g = grad(&x)?;
        let oracle = LpProblem::new(
            g.clone(),
            Sense::Maximize,
            a.clone(),
            rhs.to_vec(),
            senses.to_vec(),
        )?;
        let sol = crate::lp::solve_lp(&oracle)?;
        if sol.status != LpStatus::Optimal {
            return Err(Error::OracleFailure {
                reason: format!("linearized subproblem returned {:?}", sol.status),
            });
        }
        let s = sol.point;
        gap = dot(&g, &s) - dot(&g, &x);
        if gap <= opts.gap_tol * (1.0 + fx.abs()) {
            break;
        }
        let direction: Vec<f64> = s.iter().zip(&x).map(|(si, xi)| si - xi).collect();
        let mut eval = |gamma: f64| {
            let point: Vec<f64> = x
                .iter()
                .zip(&direction)
                .map(|(xi, di)| (xi + gamma * di).max(0.0))
                .collect();
            f(&point)
        };
        let (gamma, f_new) = line_search_max(&mut eval, opts.line_scan, opts.line_tol)?;
        if f_new <= fx + 1e-14 * (1.0 + fx.abs()) {
            break; // no ascent along the conditional-gradient direction
        }
        for (xi, di) in x.iter_mut().zip(&direction) {
            *xi = (*xi + gamma * di).max(0.0);
        }
        fx = f_new;
    }
    Ok((StartOutcome { x, value: fx, gap }, spent))
}

/// Refine a stalled iterate by restricting the polytope to a guessed active
/// face and rerunning Frank-Wolfe there. On low-dimensional faces the
/// conditional gradient converges in a handful of iterations, which removes
/// the zigzagging that slows plain Frank-Wolfe near non-vertex optima.
///
/// `bound_frac` controls how aggressively small coordinates are pinned to
/// zero: iterates can approach the zero face only at `O(1/t)`, so a stalled
/// coordinate a few percent from zero is usually headed there. The pinned
/// start is re-checked for feasibility and the result is accepted only when
/// it does not lose value. The returned gap is re-measured against the full
/// polytope.
fn polish_on_face<F, G>(
    f: &F,
    grad: &G,
    a: &Matrix,
    r: &[f64],
    current: &StartOutcome,
    bound_frac: f64,
    face_budget: usize,
    opts: &SolverOptions,
) -> Result<(Option<StartOutcome>, usize)>
where
    F: Fn(&[f64]) -> Result<f64>,
    G: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let m = a.rows();
    let n = a.cols();
    let ax = a.mul_vec(&current.x)?;
    let mut rows: Vec<Vec<f64>> = (0..m).map(|i| a.row(i).to_vec()).collect();
    let mut rhs = r.to_vec();
    let mut senses = vec![RowSense::Le; m];
    let mut restricted = false;
    for i in 0..m {
        if r[i] - ax[i] <= 1e-6 * (1.0 + r[i].abs()) {
            rows.push(a.row(i).to_vec());
            rhs.push(r[i]);
            senses.push(RowSense::Ge);
            restricted = true;
        }
    }
    let mut start = current.x.clone();
    for j in 0..n {
        let scale = column_bound(a, r, j).unwrap_or(1.0).max(1.0);
        if current.x[j] <= bound_frac * scale {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            rows.push(e);
            rhs.push(0.0);
            senses.push(RowSense::Le);
            start[j] = 0.0;
            restricted = true;
        }
    }
    if !restricted {
        return Ok((None, 0));
    }
    // pinning coordinates to zero must not break row feasibility (it cannot
    // for non-negative matrices, but the caller may pass general ones)
    let ax_start = a.mul_vec(&start)?;
    if ax_start
        .iter()
        .zip(r)
        .any(|(axi, ri)| *axi > ri + 1e-8 * (1.0 + ri.abs()))
    {
        return Ok((None, 0));
    }
    let face = Matrix::from_rows(&rows)?;
    let (refined, used) = fw_single(f, grad, &face, &rhs, &senses, start, face_budget, opts)?;
    if refined.value < current.value - 1e-12 * (1.0 + current.value.abs()) {
        return Ok((None, used));
    }
    // gap against the full polytope
    let g = grad(&refined.x)?;
    let oracle = LpProblem::maximize_leq(g.clone(), a.clone(), r.to_vec())?;
    let sol = crate::lp::solve_lp(&oracle)?;
    if sol.status != LpStatus::Optimal {
        return Ok((None, used + 1));
    }
    let full_gap = dot(&g, &sol.point) - dot(&g, &refined.x);
    Ok((
        Some(StartOutcome {
            x: refined.x,
            value: refined.value,
            gap: full_gap,
        }),
        used + 1,
    ))
}

/// One start: a bounded main-loop segment, then face-polish rounds with
/// progressively bolder zero-pinning, then (if budget remains and nothing
/// converged) another main segment. Plain conditional gradient zigzags at
/// `O(1/t)` near non-vertex optima, so the polish does the finishing; the
/// main segments only need to move the iterate between basins.
fn run_start<F, G>(
    f: &F,
    grad: &G,
    a: &Matrix,
    r: &[f64],
    x0: Vec<f64>,
    opts: &SolverOptions,
) -> Result<StartOutcome>
where
    F: Fn(&[f64]) -> Result<f64>,
    G: Fn(&[f64]) -> Result<Vec<f64>>,
{
    const SEGMENT: usize = 512;
    const PIN_FRACTIONS: [f64; 3] = [1e-9, 1e-3, 3e-2];
    let senses = vec![RowSense::Le; a.rows()];
    let converged =
        |o: &StartOutcome| o.gap <= opts.gap_tol * (1.0 + o.value.abs());
    let accept = |cur: &StartOutcome, cand: &StartOutcome| {
        cand.value > cur.value + 1e-12 * (1.0 + cur.value.abs())
            || (cand.value >= cur.value - 1e-12 * (1.0 + cur.value.abs()) && cand.gap < cur.gap)
    };

    let mut budget = opts.max_iterations;
    let spend = budget.min(SEGMENT);
    let (mut out, used) = fw_single(f, grad, a, r, &senses, x0, spend, opts)?;
    budget = budget.saturating_sub(used);

    while !converged(&out) {
        let mut round_progress = false;
        for frac in PIN_FRACTIONS {
            if converged(&out) || budget == 0 {
                break;
            }
            let face_budget = budget.min(200);
            let (candidate, used) =
                polish_on_face(f, grad, a, r, &out, frac, face_budget, opts)?;
            budget = budget.saturating_sub(used);
            if let Some(candidate) = candidate {
                if accept(&out, &candidate) {
                    out = candidate;
                    round_progress = true;
                }
            }
        }
        if converged(&out) || budget == 0 {
            break;
        }
        let spend = budget.min(SEGMENT);
        let (resumed, used) = fw_single(f, grad, a, r, &senses, out.x.clone(), spend, opts)?;
        budget = budget.saturating_sub(used.max(1));
        if accept(&out, &resumed) {
            out = resumed;
            round_progress = true;
        }
        if !round_progress {
            break;
        }
    }
    Ok(out)
}

/// Deterministic multi-start maximization; see the module docs. `hints`
/// are caller-supplied directions worth scaling to the boundary as starts.
pub(crate) fn maximize_over_polytope<F, G>(
    f: &F,
    grad: &G,
    a: &Matrix,
    r: &[f64],
    hints: &[Vec<f64>],
    opts: &SolverOptions,
) -> Result<FwOutcome>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
    G: Fn(&[f64]) -> Result<Vec<f64>> + Sync,
{
    if r.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            what: "resource vector",
            expected: a.rows(),
            got: r.len(),
        });
    }
    let starts = start_points(a, r, hints, opts);
    let outcomes: Vec<Result<StartOutcome>> = starts
        .into_par_iter()
        .map(|x0| run_start(f, grad, a, r, x0, opts))
        .collect();

    let starts_used = outcomes.len();
    let mut best: Option<StartOutcome> = None;
    let mut first_error: Option<Error> = None;
    for outcome in outcomes {
        match outcome {
            Ok(candidate) => {
                let replace = match &best {
                    None => true,
                    Some(cur) => {
                        let tie = 1e-9 * (1.0 + cur.value.abs());
                        candidate.value > cur.value + tie
                            || ((candidate.value - cur.value).abs() <= tie
                                && lex_less(&candidate.x, &cur.x))
                    }
                };
                if replace {
                    best = Some(candidate);
                }
            }
            Err(e) => {
                if first_error.is_none() {
                    first_error = Some(e);
                }
            }
        }
    }
    match best {
        Some(b) => Ok(FwOutcome {
            x: b.x,
            value: b.value,
            gap: b.gap,
            starts_used,
        }),
        None => Err(Error::AllStartsFailed {
            starts: starts_used,
            reason: first_error
                .map(|e| e.to_string())
                .unwrap_or_else(|| "no starts were generated".into()),
        }),
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_bound_picks_tightest_row() {
        let a = Matrix::from_rows(&[vec![2.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let r = vec![10.0, 8.0];
        assert_eq!(column_bound(&a, &r, 0), Some(5.0));
        assert_eq!(column_bound(&a, &r, 1), Some(8.0));
    }

    #[test]
    fn column_bound_none_without_positive_entry() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0]]).unwrap();
        assert_eq!(column_bound(&a, &[5.0], 0), None);
    }

    #[test]
    fn start_points_are_feasible_and_deterministic() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 1.0]]).unwrap();
        let r = vec![6.0, 9.0];
        let opts = SolverOptions {
            starts: 10,
            seed: 7,
            ..SolverOptions::default()
        };
        let pts1 = start_points(&a, &r, &[], &opts);
        let pts2 = start_points(&a, &r, &[], &opts);
        assert_eq!(pts1, pts2);
        assert_eq!(pts1.len(), 10);
        for p in &pts1 {
            let ax = a.mul_vec(p).unwrap();
            for (i, &v) in ax.iter().enumerate() {
                assert!(v <= r[i] * (1.0 + 1e-9) + 1e-9);
            }
            assert!(p.iter().all(|&v| v >= 0.0));
        }
    }

    #[test]
    fn concave_quadratic_reaches_interior_optimum() {
        // maximize -(x-1)² - (y-2)² + 10 over x+y ≤ 10; optimum (1, 2)
        let f = |x: &[f64]| Ok(10.0 - (x[0] - 1.0).powi(2) - (x[1] - 2.0).powi(2));
        let grad = |x: &[f64]| Ok(vec![-2.0 * (x[0] - 1.0), -2.0 * (x[1] - 2.0)]);
        let a = Matrix::from_rows(&[vec![1.0, 1.0]]).unwrap();
        let opts = SolverOptions {
            starts: 4,
            ..SolverOptions::default()
        };
        let out = maximize_over_polytope(&f, &grad, &a, &[10.0], &[], &opts).unwrap();
        assert!((out.x[0] - 1.0).abs() < 1e-3, "{:?}", out.x);
        assert!((out.x[1] - 2.0).abs() < 1e-3);
        assert!((out.value - 10.0).abs() < 1e-6);
    }
}
