//! Gaussian value-distribution models.
//!
//! A single product with planned quantity `m`, delivery tolerance `sigma`
//! and exact-fulfillment value `lambda` is valued by
//!
//! ```text
//! F(x) = 2λ · (Φ((x − m)/σ) − Φ(−m/σ)),        x ≥ 0,
//! ```
//!
//! the integral of the price density `f(x) = 2λ/(σ√2π) · exp(−½((x−m)/σ)²)`
//! over `[0, x]`. A complete set of `k` products is valued jointly through
//! the rectangle probability of a k-variate normal distribution, so the set
//! is worth nothing while any member is missing. Values are money, plans are
//! product units; neither is normalized.

use crate::error::Error;
use crate::linalg::{cholesky, Matrix};
use crate::math::{normal_pdf, phi};
use crate::Result;

const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// Internal quadrature tolerance for the rectangle probability of a
/// correlated pair; two orders tighter than the 1e-8 guarantee because the
/// adaptive error estimate is heuristic.
const PAIR_QUAD_TOL: f64 = 1e-10;

fn check_plan_entry(x: f64, what: &'static str) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::NonFinite { what, value: x });
    }
    if x < 0.0 {
        return Err(Error::NegativeQuantity { what, value: x });
    }
    Ok(())
}

/// One independently valued product.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianComponent {
    variable_index: usize,
    m: f64,
    sigma: f64,
    lambda: f64,
}

impl GaussianComponent {
    /// Validates `m > 0`, `sigma > 0`, `lambda >= 0` and finiteness.
    ///
    /// `lambda = 0` is admitted for degenerate flat-value components that
    /// arise when approximating a linear model with zero prices.
    pub fn new(variable_index: usize, m: f64, sigma: f64, lambda: f64) -> Result<Self> {
        for (what, v) in [("m", m), ("sigma", sigma), ("lambda", lambda)] {
            if !v.is_finite() {
                return Err(Error::NonFinite { what, value: v });
            }
        }
        if m <= 0.0 {
            return Err(Error::InvalidParameter {
                what: "m",
                reason: format!("planned quantity must be positive, got {m}"),
            });
        }
        if sigma <= 0.0 {
            return Err(Error::InvalidParameter {
                what: "sigma",
                reason: format!("tolerance must be positive, got {sigma}"),
            });
        }
        if lambda < 0.0 {
            return Err(Error::InvalidParameter {
                what: "lambda",
                reason: format!("value must be non-negative, got {lambda}"),
            });
        }
        Ok(Self {
            variable_index,
            m,
            sigma,
            lambda,
        })
    }

    pub fn variable_index(&self) -> usize {
        self.variable_index
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Price density at quantity `x`: `2λ/(σ√2π) · exp(−½((x−m)/σ)²)`.
    ///
    /// Maximal at `x = m`, strictly positive everywhere.
    pub fn price(&self, x: f64) -> Result<f64> {
        check_plan_entry(x, "price argument")?;
        Ok(self.price_unchecked(x))
    }

    #[inline]
    pub(crate) fn price_unchecked(&self, x: f64) -> f64 {
        let z = (x - self.m) / self.sigma;
        2.0 * self.lambda / (self.sigma * SQRT_2PI) * (-0.5 * z * z).exp()
    }

    /// Cumulative value of delivering `x` units: `2λ(Φ((x−m)/σ) − Φ(−m/σ))`.
    ///
    /// Zero at `x = 0`, non-decreasing, strictly below `2λ` for finite `x`.
    pub fn value(&self, x: f64) -> Result<f64> {
        check_plan_entry(x, "value argument")?;
        Ok(self.value_unchecked(x))
    }

    #[inline]
    pub(crate) fn value_unchecked(&self, x: f64) -> f64 {
        let low = phi(-self.m / self.sigma);
        2.0 * self.lambda * (phi((x - self.m) / self.sigma) - low)
    }
}

/// Sum of component values over a plan vector.
pub fn independent_value(x: &[f64], comps: &[GaussianComponent]) -> Result<f64> {
    let mut total = 0.0;
    for c in comps {
        let idx = c.variable_index();
        let xi = *x.get(idx).ok_or(Error::IndexOutOfRange {
            index: idx,
            dimension: x.len(),
        })?;
        total += c.value(xi)?;
    }
    Ok(total)
}

/// A complete set of `k ≥ 2` products valued jointly.
#[derive(Debug, Clone, PartialEq)]
pub struct SetComponent {
    variable_indices: Vec<usize>,
    mean: Vec<f64>,
    covariance: Matrix,
    lambda: f64,
    sigmas: Vec<f64>,
    is_diagonal: bool,
}

impl SetComponent {
    /// Validates shape, positive means, symmetry and positive-definiteness
    /// (the latter by a Cholesky factorization succeeding).
    pub fn new(
        variable_indices: Vec<usize>,
        mean: Vec<f64>,
        covariance: Matrix,
        lambda: f64,
    ) -> Result<Self> {
        let k = variable_indices.len();
        if k < 2 {
            return Err(Error::InvalidParameter {
                what: "set members",
                reason: format!("a complete set needs at least 2 members, got {k}"),
            });
        }
        let mut seen = variable_indices.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != k {
            return Err(Error::InvalidParameter {
                what: "set members",
                reason: "duplicate variable index inside a set".into(),
            });
        }
        if mean.len() != k {
            return Err(Error::DimensionMismatch {
                what: "set mean",
                expected: k,
                got: mean.len(),
            });
        }
        if covariance.rows() != k || covariance.cols() != k {
            return Err(Error::DimensionMismatch {
                what: "set covariance",
                expected: k,
                got: covariance.rows().max(covariance.cols()),
            });
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidParameter {
                what: "lambda",
                reason: format!("set value must be finite and non-negative, got {lambda}"),
            });
        }
        for (j, &mj) in mean.iter().enumerate() {
            if !mj.is_finite() || mj <= 0.0 {
                return Err(Error::InvalidParameter {
                    what: "set mean",
                    reason: format!("entry {j} must be positive, got {mj}"),
                });
            }
        }
        let sym_tol = 1e-12
            * (0..k)
                .map(|i| covariance.get(i, i).abs())
                .fold(1.0_f64, f64::max);
        if !covariance.is_symmetric(sym_tol) {
            return Err(Error::InvalidParameter {
                what: "set covariance",
                reason: "matrix is not symmetric".into(),
            });
        }
        for j in 0..k {
            if covariance.get(j, j) <= 0.0 {
                return Err(Error::InvalidParameter {
                    what: "set covariance",
                    reason: format!("diagonal entry {j} must be positive"),
                });
            }
        }
        cholesky(&covariance)?;
        let sigmas = (0..k).map(|j| covariance.get(j, j).sqrt()).collect();
        let is_diagonal = (0..k).all(|i| {
            (0..k).all(|j| i == j || covariance.get(i, j) == 0.0)
        });
        Ok(Self {
            variable_indices,
            mean,
            covariance,
            lambda,
            sigmas,
            is_diagonal,
        })
    }

    pub fn members(&self) -> usize {
        self.variable_indices.len()
    }

    pub fn variable_indices(&self) -> &[usize] {
        &self.variable_indices
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn covariance(&self) -> &Matrix {
        &self.covariance
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Per-member standard deviations (square roots of the covariance diagonal).
    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_diagonal
    }

    fn gather<'x>(&self, x: &'x [f64]) -> Result<Vec<f64>> {
        self.variable_indices
            .iter()
            .map(|&idx| {
                let xi = *x.get(idx).ok_or(Error::IndexOutOfRange {
                    index: idx,
                    dimension: x.len(),
                })?;
                check_plan_entry(xi, "set plan coordinate")?;
                Ok(xi)
            })
            .collect()
    }

    /// Interval mass Φ((x−m)/σ) − Φ(−m/σ) for member `j` at coordinate `xj`.
    #[inline]
    fn member_interval(&self, j: usize, xj: f64) -> f64 {
        let (m, s) = (self.mean[j], self.sigmas[j]);
        phi((xj - m) / s) - phi(-m / s)
    }

    /// Set value `2λ · P(0 ≤ Z ≤ x componentwise)`, `Z ~ N(mean, Σ)`.
    ///
    /// Diagonal covariances factorize exactly into a product of
    /// one-dimensional interval masses; a correlated pair is integrated
    /// numerically; larger correlated sets are rejected.
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        let coords = self.gather(x)?;
        if self.is_diagonal {
            let p: f64 = coords
                .iter()
                .enumerate()
                .map(|(j, &xj)| self.member_interval(j, xj))
                .product();
            return Ok(2.0 * self.lambda * p);
        }
        if self.members() != 2 {
            return Err(Error::UnsupportedCorrelation {
                size: self.members(),
            });
        }
        let p = self.pair_rectangle(coords[0], coords[1]);
        Ok(2.0 * self.lambda * p)
    }

    /// Gradient contributions of the set, scattered into `grad`.
    pub(crate) fn accumulate_gradient(&self, x: &[f64], grad: &mut [f64]) -> Result<()> {
        let coords = self.gather(x)?;
        if self.is_diagonal {
            let intervals: Vec<f64> = coords
                .iter()
                .enumerate()
                .map(|(j, &xj)| self.member_interval(j, xj))
                .collect();
            for (j, &idx) in self.variable_indices.iter().enumerate() {
                let others: f64 = intervals
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != j)
                    .map(|(_, v)| v)
                    .product();
                let density = normal_pdf((coords[j] - self.mean[j]) / self.sigmas[j])
                    / self.sigmas[j];
                grad[idx] += 2.0 * self.lambda * density * others;
            }
            return Ok(());
        }
        if self.members() != 2 {
            return Err(Error::UnsupportedCorrelation {
                size: self.members(),
            });
        }
        // ∂P/∂x_j is the bivariate density integrated along the opposite
        // edge of the rectangle, which is a 1-D normal interval mass of the
        // conditional distribution.
        for j in 0..2 {
            let o = 1 - j;
            let idx = self.variable_indices[j];
            let density =
                normal_pdf((coords[j] - self.mean[j]) / self.sigmas[j]) / self.sigmas[j];
            let edge = self.conditional_interval(j, coords[j], coords[o], o);
            grad[idx] += 2.0 * self.lambda * density * edge;
        }
        Ok(())
    }

    fn correlation(&self) -> f64 {
        self.covariance.get(0, 1) / (self.sigmas[0] * self.sigmas[1])
    }

    /// Mass of `[0, x_other]` under the distribution of member `other`
    /// conditioned on member `fixed` taking the value `x_fixed`.
    fn conditional_interval(&self, fixed: usize, x_fixed: f64, x_other: f64, other: usize) -> f64 {
        let rho = self.correlation();
        let mu = self.mean[other]
            + rho * self.sigmas[other] / self.sigmas[fixed] * (x_fixed - self.mean[fixed]);
        let sd = self.sigmas[other] * (1.0 - rho * rho).sqrt();
        phi((x_other - mu) / sd) - phi(-mu / sd)
    }

    /// `P(0 ≤ Z ≤ (x0, x1))` for the correlated pair: the outer coordinate is
    /// integrated adaptively, the inner one is the conditional closed form.
    fn pair_rectangle(&self, x0: f64, x1: f64) -> f64 {
        if x0 == 0.0 || x1 == 0.0 {
            return 0.0;
        }
        let integrand = |u: f64| {
            let density = normal_pdf((u - self.mean[0]) / self.sigmas[0]) / self.sigmas[0];
            density * self.conditional_interval(0, u, x1, 1)
        };
        // Integrating more than ~10σ past the mean adds nothing at the
        // 1e-8 tolerance.
        let hi = x0.min(self.mean[0] + 10.0 * self.sigmas[0]);
        let lo = (self.mean[0] - 10.0 * self.sigmas[0]).max(0.0);
        if hi <= lo {
            // the whole rectangle sits in a negligible tail
            return adaptive_simpson(&integrand, 0.0, x0.min(self.mean[0]), PAIR_QUAD_TOL);
        }
        adaptive_simpson(&integrand, lo, hi, PAIR_QUAD_TOL)
    }
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1)
    }
    if a >= b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Mixed model: independent components plus complete sets on a shared
/// plan-variable space.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueModel {
    dimension: usize,
    independents: Vec<GaussianComponent>,
    sets: Vec<SetComponent>,
}

impl ValueModel {
    /// Every variable index in `[0, dimension)` must be covered exactly once,
    /// either by an independent component or by one member slot of one set.
    pub fn new(
        dimension: usize,
        independents: Vec<GaussianComponent>,
        sets: Vec<SetComponent>,
    ) -> Result<Self> {
        let mut coverage = vec![0usize; dimension];
        let mut mark = |idx: usize| -> Result<()> {
            if idx >= dimension {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    dimension,
                });
            }
            coverage[idx] += 1;
            Ok(())
        };
        for c in &independents {
            mark(c.variable_index())?;
        }
        for s in &sets {
            for &idx in s.variable_indices() {
                mark(idx)?;
            }
        }
        if let Some(idx) = coverage.iter().position(|&c| c != 1) {
            return Err(Error::InvalidParameter {
                what: "model coverage",
                reason: format!(
                    "variable {idx} is covered {} times (must be exactly once)",
                    coverage[idx]
                ),
            });
        }
        Ok(Self {
            dimension,
            independents,
            sets,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn independents(&self) -> &[GaussianComponent] {
        &self.independents
    }

    pub fn sets(&self) -> &[SetComponent] {
        &self.sets
    }

    /// Total exact-fulfillment value Σλ over all components and sets.
    pub fn lambda_total(&self) -> f64 {
        self.independents.iter().map(|c| c.lambda()).sum::<f64>()
            + self.sets.iter().map(|s| s.lambda()).sum::<f64>()
    }

    fn check_plan(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                what: "plan vector",
                expected: self.dimension,
                got: x.len(),
            });
        }
        for &xi in x {
            check_plan_entry(xi, "plan coordinate")?;
        }
        Ok(())
    }

    /// Joint value of the plan: Σ set values + Σ independent values.
    pub fn total_value(&self, x: &[f64]) -> Result<f64> {
        self.check_plan(x)?;
        let mut total = independent_value(x, &self.independents)?;
        for s in &self.sets {
            total += s.value(x)?;
        }
        Ok(total)
    }

    /// Analytic gradient of [`Self::total_value`]: the vector of marginal
    /// (gradient) prices at the plan point.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_plan(x)?;
        let mut grad = vec![0.0; self.dimension];
        for c in &self.independents {
            grad[c.variable_index()] += c.price_unchecked(x[c.variable_index()]);
        }
        for s in &self.sets {
            s.accumulate_gradient(x, &mut grad)?;
        }
        Ok(grad)
    }

    /// Gradient cost `ḡ(x)·x`: the plan valued at its own marginal prices.
    pub fn gradient_cost(&self, x: &[f64]) -> Result<f64> {
        let g = self.gradient(x)?;
        Ok(crate::linalg::dot(&g, x))
    }
}
