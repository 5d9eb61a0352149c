//! Generalized piecewise-linear planning.
//!
//! Each variable carries a saturating ramp value: worth nothing up to `a`,
//! rising linearly to the full `mass` at `b`, and flat beyond. The model
//! generalizes a linear program (whose value is a ramp with `a = 0` and an
//! implicit `b` at the resource bound) and approximates a Gaussian value
//! model through moment matching.
//!
//! The exact solver enumerates the 3ⁿ segment assignments (below / ramp /
//! above per variable), solves the LP restricted to each box, and keeps the
//! best feasible region; ties resolve to the lexicographically smallest
//! plan. Beyond `n = 10` the enumeration is refused and a multi-start
//! Frank-Wolfe heuristic over the subgradient field is available instead.

use crate::error::Error;
use crate::fw::{self, SolverOptions};
use crate::gp::PrimalSolution;
use crate::linalg::Matrix;
use crate::lp::{solve_lp, LpProblem, LpStatus, RowSense, Sense};
use crate::Result;

/// Saturating-ramp value of one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformComponent {
    variable_index: usize,
    a: f64,
    b: f64,
    mass: f64,
}

impl UniformComponent {
    /// Validates `b > a ≥ 0` and `mass ≥ 0`.
    pub fn new(variable_index: usize, a: f64, b: f64, mass: f64) -> Result<Self> {
        for (what, v) in [("a", a), ("b", b), ("mass", mass)] {
            if !v.is_finite() {
                return Err(Error::NonFinite { what, value: v });
            }
        }
        if a < 0.0 {
            return Err(Error::NegativeQuantity {
                what: "interval lower bound",
                value: a,
            });
        }
        if b <= a {
            return Err(Error::InvalidParameter {
                what: "interval",
                reason: format!("upper bound must exceed lower bound, got [{a}, {b}]"),
            });
        }
        if mass < 0.0 {
            return Err(Error::InvalidParameter {
                what: "mass",
                reason: format!("total value must be non-negative, got {mass}"),
            });
        }
        Ok(Self {
            variable_index,
            a,
            b,
            mass,
        })
    }

    pub fn variable_index(&self) -> usize {
        self.variable_index
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Ramp slope `mass / (b − a)`.
    pub fn slope(&self) -> f64 {
        self.mass / (self.b - self.a)
    }

    /// Saturating ramp: 0 below `a`, linear on `[a, b]`, `mass` above `b`.
    pub fn ramp(&self, x: f64) -> f64 {
        if x <= self.a {
            0.0
        } else if x >= self.b {
            self.mass
        } else {
            self.mass * (x - self.a) / (self.b - self.a)
        }
    }

    /// Right-derivative of the ramp: the slope on `[a, b)`, zero elsewhere.
    pub fn subgradient(&self, x: f64) -> f64 {
        if x >= self.a && x < self.b {
            self.slope()
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Segment {
    Below,
    Ramp,
    Above,
}

/// `U(x) ⇒ max` subject to `A x ≤ r`, `x ≥ 0` with ramp values per variable.
#[derive(Debug, Clone)]
pub struct GplpProblem {
    components: Vec<UniformComponent>,
    constraint_matrix: Matrix,
    resources: Vec<f64>,
}

impl GplpProblem {
    /// Requires exactly one component per variable of the constraint matrix.
    pub fn new(
        components: Vec<UniformComponent>,
        constraint_matrix: Matrix,
        resources: Vec<f64>,
    ) -> Result<Self> {
        let n = constraint_matrix.cols();
        if resources.len() != constraint_matrix.rows() {
            return Err(Error::DimensionMismatch {
                what: "resource vector",
                expected: constraint_matrix.rows(),
                got: resources.len(),
            });
        }
        let mut coverage = vec![0usize; n];
        for c in &components {
            let idx = c.variable_index();
            if idx >= n {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    dimension: n,
                });
            }
            coverage[idx] += 1;
        }
        if let Some(idx) = coverage.iter().position(|&c| c != 1) {
            return Err(Error::InvalidParameter {
                what: "ramp coverage",
                reason: format!(
                    "variable {idx} has {} ramp components (must be exactly one)",
                    coverage[idx]
                ),
            });
        }
        let mut components = components;
        components.sort_by_key(|c| c.variable_index());
        Ok(Self {
            components,
            constraint_matrix,
            resources,
        })
    }

    pub fn dimension(&self) -> usize {
        self.constraint_matrix.cols()
    }

    pub fn components(&self) -> &[UniformComponent] {
        &self.components
    }

    pub fn constraint_matrix(&self) -> &Matrix {
        &self.constraint_matrix
    }

    pub fn resources(&self) -> &[f64] {
        &self.resources
    }

    /// Total value plateau Σ mass.
    pub fn mass_total(&self) -> f64 {
        self.components.iter().map(|c| c.mass()).sum()
    }

    /// Piecewise-linear plan value Σ ramp(x_j).
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                what: "plan vector",
                expected: self.dimension(),
                got: x.len(),
            });
        }
        for &xi in x {
            if !xi.is_finite() {
                return Err(Error::NonFinite {
                    what: "plan coordinate",
                    value: xi,
                });
            }
            if xi < 0.0 {
                return Err(Error::NegativeQuantity {
                    what: "plan coordinate",
                    value: xi,
                });
            }
        }
        Ok(self
            .components
            .iter()
            .map(|c| c.ramp(x[c.variable_index()]))
            .sum())
    }

    /// Right-derivative field of the plan value.
    pub fn subgradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                what: "plan vector",
                expected: self.dimension(),
                got: x.len(),
            });
        }
        let mut g = vec![0.0; self.dimension()];
        for c in &self.components {
            g[c.variable_index()] = c.subgradient(x[c.variable_index()]);
        }
        Ok(g)
    }

    /// Exact enumeration for `n ≤ 10`, multi-start heuristic beyond.
    pub fn solve(&self) -> Result<PrimalSolution> {
        if self.dimension() <= 10 {
            self.solve_exact()
        } else {
            self.solve_multistart(&SolverOptions::default())
        }
    }

    /// Exact solve by 3ⁿ segment-region enumeration.
    pub fn solve_exact(&self) -> Result<PrimalSolution> {
        let n = self.dimension();
        if n > 10 {
            return Err(Error::SizeLimit {
                what: "segment enumeration",
                limit: 10,
                got: n,
            });
        }
        let regions = 3usize.pow(n as u32);
        let mut best: Option<(f64, Vec<f64>)> = None;
        let mut any_feasible = false;
        for code in 0..regions {
            let segments = decode_region(code, n);
            let Some((value, _)) = self.solve_region(&segments, false)? else {
                continue;
            };
            any_feasible = true;
            let improves = match &best {
                None => true,
                Some((cur, _)) => value > cur + 1e-9 * (1.0 + cur.abs()),
            };
            let ties = matches!(&best, Some((cur, _)) if (value - cur).abs() <= 1e-9 * (1.0 + cur.abs()));
            if improves || ties {
                // resolve the plan deterministically before comparing
                if let Some((_, plan)) = self.solve_region(&segments, true)? {
                    let replace = match &best {
                        None => true,
                        Some((cur, cur_plan)) => {
                            value > cur + 1e-9 * (1.0 + cur.abs())
                                || ((value - cur).abs() <= 1e-9 * (1.0 + cur.abs())
                                    && lex_less(&plan, cur_plan))
                        }
                    };
                    if replace {
                        best = Some((value, plan));
                    }
                }
            }
        }
        let Some((_, plan)) = best else {
            debug_assert!(!any_feasible);
            return Err(Error::Infeasible);
        };
        let plan: Vec<f64> = plan.iter().map(|&v| v.max(0.0)).collect();
        let value = self.value(&plan)?;
        let gradient_prices = self.subgradient(&plan)?;
        let used = self.constraint_matrix.mul_vec(&plan)?;
        let slack = self
            .resources
            .iter()
            .zip(&used)
            .map(|(r, u)| r - u)
            .collect();
        Ok(PrimalSolution {
            plan,
            value,
            gradient_prices,
            slack,
            starts_used: 0,
            stationarity_gap: 0.0,
        })
    }

    /// Multi-start Frank-Wolfe over the subgradient field. A heuristic: flat
    /// segments hide ascent directions from the oracle, so the result can be
    /// dominated by [`Self::solve_exact`].
    pub fn solve_multistart(&self, opts: &SolverOptions) -> Result<PrimalSolution> {
        let f = |x: &[f64]| self.value(x);
        let grad = |x: &[f64]| self.subgradient(x);
        // ramp midpoints and saturation points make useful aiming directions
        let mut mid = vec![0.0; self.dimension()];
        let mut sat = vec![0.0; self.dimension()];
        for c in &self.components {
            mid[c.variable_index()] = 0.5 * (c.a() + c.b());
            sat[c.variable_index()] = c.b();
        }
        let hints = [mid, sat];
        let out = fw::maximize_over_polytope(
            &f,
            &grad,
            &self.constraint_matrix,
            &self.resources,
            &hints,
            opts,
        )?;
        let gradient_prices = self.subgradient(&out.x)?;
        let used = self.constraint_matrix.mul_vec(&out.x)?;
        let slack = self
            .resources
            .iter()
            .zip(&used)
            .map(|(r, u)| r - u)
            .collect();
        Ok(PrimalSolution {
            plan: out.x,
            value: out.value,
            gradient_prices,
            slack,
            starts_used: out.starts_used,
            stationarity_gap: out.gap,
        })
    }

    /// Solve the LP restricted to one segment region.
    ///
    /// Returns `None` when the region is infeasible. With `refine` set, the
    /// optimal plan is additionally minimized coordinate-by-coordinate
    /// (lexicographically) among the region's optima.
    fn solve_region(&self, segments: &[Segment], refine: bool) -> Result<Option<(f64, Vec<f64>)>> {
        let n = self.dimension();
        let m = self.constraint_matrix.rows();
        let mut rows: Vec<Vec<f64>> = (0..m).map(|i| self.constraint_matrix.row(i).to_vec()).collect();
        let mut rhs = self.resources.clone();
        let mut senses = vec![RowSense::Le; m];
        let push_row = |rows: &mut Vec<Vec<f64>>,
                            rhs: &mut Vec<f64>,
                            senses: &mut Vec<RowSense>,
                            j: usize,
                            bound: f64,
                            sense: RowSense| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            rows.push(e);
            rhs.push(bound);
            senses.push(sense);
        };

        let mut objective = vec![0.0; n];
        let mut constant = 0.0;
        for (j, c) in self.components.iter().enumerate() {
            match segments[j] {
                Segment::Below => {
                    push_row(&mut rows, &mut rhs, &mut senses, j, c.a(), RowSense::Le);
                }
                Segment::Ramp => {
                    push_row(&mut rows, &mut rhs, &mut senses, j, c.a(), RowSense::Ge);
                    push_row(&mut rows, &mut rhs, &mut senses, j, c.b(), RowSense::Le);
                    objective[j] = c.slope();
                    constant -= c.slope() * c.a();
                }
                Segment::Above => {
                    push_row(&mut rows, &mut rhs, &mut senses, j, c.b(), RowSense::Ge);
                    constant += c.mass();
                }
            }
        }
        let lp = LpProblem::new(
            objective.clone(),
            Sense::Maximize,
            Matrix::from_rows(&rows)?,
            rhs.clone(),
            senses.clone(),
        )?;
        let sol = solve_lp(&lp)?;
        match sol.status {
            LpStatus::Infeasible => return Ok(None),
            LpStatus::Unbounded => {
                // objective is constant on unbounded directions, so the
                // simplex cannot report a ray here
                return Err(Error::OracleFailure {
                    reason: "segment region reported an unbounded ray".into(),
                });
            }
            LpStatus::Optimal => {}
        }
        let value = sol.objective_value + constant;
        if !refine {
            return Ok(Some((value, sol.point)));
        }

        // pin the linear part of the objective, then minimize coordinates in
        // index order to obtain the lexicographically smallest optimal plan
        let v_lin = sol.objective_value;
        let eps_v = 1e-12 * (1.0 + v_lin.abs());
        if objective.iter().any(|&c| c != 0.0) {
            rows.push(objective.clone());
            rhs.push(v_lin - eps_v);
            senses.push(RowSense::Ge);
            rows.push(objective.clone());
            rhs.push(v_lin + eps_v);
            senses.push(RowSense::Le);
        }
        let raw_plan = sol.point;
        let mut plan = raw_plan.clone();
        for j in 0..n {
            let mut cost = vec![0.0; n];
            cost[j] = 1.0;
            let lp = LpProblem::new(
                cost,
                Sense::Minimize,
                Matrix::from_rows(&rows)?,
                rhs.clone(),
                senses.clone(),
            )?;
            let sol = solve_lp(&lp)?;
            if sol.status != LpStatus::Optimal {
                break; // keep the unrefined plan for this and later coordinates
            }
            plan = sol.point.clone();
            let vj = sol.point[j];
            let eps_x = 1e-12 * (1.0 + vj.abs());
            push_row(&mut rows, &mut rhs, &mut senses, j, vj + eps_x, RowSense::Le);
            push_row(
                &mut rows,
                &mut rhs,
                &mut senses,
                j,
                (vj - eps_x).max(0.0),
                RowSense::Ge,
            );
        }
        // the pinning epsilons must not trade value for tidiness
        let clamp = |p: &[f64]| p.iter().map(|v| v.max(0.0)).collect::<Vec<f64>>();
        let refined = clamp(&plan);
        let raw = clamp(&raw_plan);
        if self.value(&refined)? + 1e-12 * (1.0 + value.abs()) < self.value(&raw)? {
            return Ok(Some((value, raw)));
        }
        Ok(Some((value, refined)))
    }
}

fn decode_region(code: usize, n: usize) -> Vec<Segment> {
    let mut c = code;
    (0..n)
        .map(|_| {
            let seg = match c % 3 {
                0 => Segment::Below,
                1 => Segment::Ramp,
                _ => Segment::Above,
            };
            c /= 3;
            seg
        })
        .collect()
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > 1e-9 {
            return x < y;
        }
    }
    false
}
