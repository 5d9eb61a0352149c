//! Moment-matched conversion between planning-model families.
//!
//! A uniform value distribution on `[a, b]` and a Gaussian one with
//! parameters `(m, σ)` are paired by equating mean and standard deviation:
//!
//! ```text
//! a = m − σ√3,   b = m + σ√3      ⇔      m = (a+b)/2,   σ = (b−a)/(2√3)
//! ```
//!
//! with the total value mass `2λ` carried across unchanged. On top of that
//! pairing, a classical linear program maps to a Gaussian model (each
//! variable gets a ramp over the tightest enclosing box, then the ramp is
//! matched), and an independent Gaussian model maps to a generalized
//! piecewise-linear one.

use crate::error::Error;
use crate::gp::GpProblem;
use crate::gplp::{GplpProblem, UniformComponent};
use crate::lp::{LpProblem, RowSense, Sense};
use crate::value::{GaussianComponent, ValueModel};
use crate::Result;

const SQRT_3: f64 = 1.732_050_807_568_877_3;

/// Which row ratio bounds the enclosing box of a variable.
///
/// `MinRatio` takes the tightest bound `min_i r_i/a_ij` (every row alone
/// already forces it), `MaxRatio` the loosest positive-row bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoxRule {
    #[default]
    MinRatio,
    MaxRatio,
}

/// Moment-matched uniform component of a Gaussian one.
///
/// When `m − σ√3` would be negative the interval is clamped to start at
/// zero; the mass is preserved, so the ramp gets proportionally steeper and
/// the moment match becomes approximate.
pub fn uniform_from_gaussian(c: &GaussianComponent) -> UniformComponent {
    let a = (c.m() - c.sigma() * SQRT_3).max(0.0);
    let b = c.m() + c.sigma() * SQRT_3;
    UniformComponent::new(c.variable_index(), a, b, 2.0 * c.lambda())
        .expect("matched interval is valid by construction")
}

/// Moment-matched Gaussian component of a uniform one (exact inverse of
/// [`uniform_from_gaussian`] whenever no clamping occurred).
pub fn gaussian_from_uniform(u: &UniformComponent) -> Result<GaussianComponent> {
    let m = 0.5 * (u.a() + u.b());
    let sigma = (u.b() - u.a()) / (2.0 * SQRT_3);
    GaussianComponent::new(u.variable_index(), m, sigma, 0.5 * u.mass())
}

/// Gaussian approximation of a linear program in the `max c·x, Ax ≤ r` form.
///
/// Per variable, the box bound is the chosen row ratio, the plan is the box
/// midpoint `b/2`, the tolerance matches a uniform spread over `[0, b]`, and
/// the exact-fulfillment value `λ = c·b/2` makes the Gaussian value plateau
/// `2λ` agree with the linear value `c·b` at the box edge.
pub fn lp_to_gaussian(p: &LpProblem, rule: BoxRule) -> Result<GpProblem> {
    if p.sense != Sense::Maximize {
        return Err(Error::InvalidParameter {
            what: "LP sense",
            reason: "only maximization problems can be matched".into(),
        });
    }
    if p.row_sense.iter().any(|s| *s != RowSense::Le) {
        return Err(Error::InvalidParameter {
            what: "LP rows",
            reason: "only all-≤ rows can be matched".into(),
        });
    }
    let n = p.num_vars();
    let mut components = Vec::with_capacity(n);
    for j in 0..n {
        let mut bound: Option<f64> = None;
        for i in 0..p.num_rows() {
            let coeff = p.constraint_matrix.get(i, j);
            if coeff > 0.0 {
                let ratio = p.rhs[i] / coeff;
                bound = Some(match (bound, rule) {
                    (None, _) => ratio,
                    (Some(cur), BoxRule::MinRatio) => cur.min(ratio),
                    (Some(cur), BoxRule::MaxRatio) => cur.max(ratio),
                });
            }
        }
        let b = bound.ok_or(Error::UnboundedBox { column: j })?;
        let m = 0.5 * b;
        let sigma = b / (2.0 * SQRT_3);
        let lambda = 0.5 * p.objective[j] * b;
        components.push(GaussianComponent::new(j, m, sigma, lambda)?);
    }
    let model = ValueModel::new(n, components, vec![])?;
    GpProblem::new(model, p.constraint_matrix.clone(), p.rhs.clone())
}

/// Piecewise-linear approximation of an independent Gaussian model.
///
/// Complete sets have no componentwise ramp representation and are
/// rejected.
pub fn gaussian_to_gplp(p: &GpProblem) -> Result<GplpProblem> {
    if !p.model().sets().is_empty() {
        return Err(Error::SetsNotApproximable);
    }
    let components: Vec<UniformComponent> = p
        .model()
        .independents()
        .iter()
        .map(uniform_from_gaussian)
        .collect();
    GplpProblem::new(
        components,
        p.constraint_matrix().clone(),
        p.resources().to_vec(),
    )
}

/// Gaussian model recovered from a piecewise-linear one.
pub fn gplp_to_gaussian(p: &GplpProblem) -> Result<GpProblem> {
    let components: Vec<GaussianComponent> = p
        .components()
        .iter()
        .map(gaussian_from_uniform)
        .collect::<Result<_>>()?;
    let model = ValueModel::new(p.dimension(), components, vec![])?;
    GpProblem::new(
        model,
        p.constraint_matrix().clone(),
        p.resources().to_vec(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn moment_match_is_exact() {
        let c = GaussianComponent::new(0, 80.0, 20.0, 0.5).unwrap();
        let u = uniform_from_gaussian(&c);
        assert!((u.a() - 45.358_983_848_622_46).abs() < 1e-12);
        assert!((u.b() - 114.641_016_151_377_54).abs() < 1e-12);
        assert_eq!(u.mass(), 1.0);
        // means and standard deviations agree
        assert!((0.5 * (u.a() + u.b()) - c.m()).abs() < 1e-12);
        assert!(((u.b() - u.a()) / (2.0 * SQRT_3) - c.sigma()).abs() < 1e-12);
    }

    #[test]
    fn round_trip_recovers_parameters() {
        let c = GaussianComponent::new(3, 40.0, 13.0, 10_000.0).unwrap();
        let back = gaussian_from_uniform(&uniform_from_gaussian(&c)).unwrap();
        assert!((back.m() - 40.0).abs() < 1e-12);
        assert!((back.sigma() - 13.0).abs() < 1e-12);
        assert!((back.lambda() - 10_000.0).abs() < 1e-9);
        assert_eq!(back.variable_index(), 3);
    }

    #[test]
    fn tight_tolerance_collapses_interval() {
        let c = GaussianComponent::new(0, 10.0, 1e-9, 5.0).unwrap();
        let u = uniform_from_gaussian(&c);
        assert!((u.a() - 10.0).abs() < 1e-8);
        assert!((u.b() - 10.0).abs() < 1e-8);
        assert!(u.b() > u.a());
    }

    #[test]
    fn clamped_interval_preserves_mass() {
        let c = GaussianComponent::new(0, 1.0, 2.0, 5.0).unwrap(); // m − σ√3 < 0
        let u = uniform_from_gaussian(&c);
        assert_eq!(u.a(), 0.0);
        assert_eq!(u.mass(), 10.0);
    }

    #[test]
    fn unit_sigma_construction() {
        let u = UniformComponent::new(0, 0.0, 2.0 * SQRT_3, 2.0).unwrap();
        let c = gaussian_from_uniform(&u).unwrap();
        assert!((c.sigma() - 1.0).abs() < 1e-12);
        assert!((c.m() - SQRT_3).abs() < 1e-12);
    }

    #[test]
    fn lp_single_variable_box() {
        let p = LpProblem::maximize_leq(
            vec![1.0],
            Matrix::from_rows(&[vec![1.0]]).unwrap(),
            vec![10.0],
        )
        .unwrap();
        let gp = lp_to_gaussian(&p, BoxRule::MinRatio).unwrap();
        let c = &gp.model().independents()[0];
        assert!((c.m() - 5.0).abs() < 1e-12);
        assert!((c.sigma() - 2.886_751_345_948_129).abs() < 1e-12);
        assert!((c.lambda() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn box_rule_min_vs_max() {
        let p = LpProblem::maximize_leq(
            vec![1.0],
            Matrix::from_rows(&[vec![1.0], vec![2.0]]).unwrap(),
            vec![10.0, 10.0],
        )
        .unwrap();
        let tight = lp_to_gaussian(&p, BoxRule::MinRatio).unwrap();
        assert!((tight.model().independents()[0].m() - 2.5).abs() < 1e-12);
        let loose = lp_to_gaussian(&p, BoxRule::MaxRatio).unwrap();
        assert!((loose.model().independents()[0].m() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn zero_prices_give_zero_lambdas() {
        let p = LpProblem::maximize_leq(
            vec![0.0, 0.0],
            Matrix::from_rows(&[vec![1.0, 1.0]]).unwrap(),
            vec![4.0],
        )
        .unwrap();
        let gp = lp_to_gaussian(&p, BoxRule::MinRatio).unwrap();
        assert!(gp.model().independents().iter().all(|c| c.lambda() == 0.0));
    }

    #[test]
    fn unbounded_column_rejected() {
        let p = LpProblem::maximize_leq(
            vec![1.0, 1.0],
            Matrix::from_rows(&[vec![1.0, 0.0]]).unwrap(),
            vec![4.0],
        )
        .unwrap();
        assert!(matches!(
            lp_to_gaussian(&p, BoxRule::MinRatio),
            Err(Error::UnboundedBox { column: 1 })
        ));
    }

    #[test]
    fn sets_block_the_ramp_bridge() {
        let mut cov = Matrix::zeros(2, 2);
        cov.set(0, 0, 4.0);
        cov.set(1, 1, 9.0);
        let s = crate::value::SetComponent::new(vec![0, 1], vec![5.0, 6.0], cov, 100.0).unwrap();
        let model = ValueModel::new(2, vec![], vec![s]).unwrap();
        let a = Matrix::from_rows(&[vec![1.0, 1.0]]).unwrap();
        let gp = GpProblem::new(model, a, vec![20.0]).unwrap();
        assert!(matches!(
            gaussian_to_gplp(&gp),
            Err(Error::SetsNotApproximable)
        ));
    }

    #[test]
    fn gplp_round_trip_through_gaussian() {
        let comps = vec![
            UniformComponent::new(0, 2.0, 8.0, 12.0).unwrap(),
            UniformComponent::new(1, 1.0, 3.0, 4.0).unwrap(),
        ];
        let a = Matrix::from_rows(&[vec![1.0, 2.0]]).unwrap();
        let p = GplpProblem::new(comps.clone(), a, vec![9.0]).unwrap();
        let back = gaussian_to_gplp(&gplp_to_gaussian(&p).unwrap()).unwrap();
        for (orig, rt) in comps.iter().zip(back.components()) {
            assert!((orig.a() - rt.a()).abs() < 1e-12);
            assert!((orig.b() - rt.b()).abs() < 1e-12);
            assert!((orig.mass() - rt.mass()).abs() < 1e-12);
        }
    }
}
