//! Model-family bridges: moment matching, linear↔Gaussian↔piecewise-linear
//! conversions, the exact piecewise-linear solver against a grid oracle, and
//! the cross-family approximation quality bounds.

mod common;

use common::*;
use gaussplan::convert::{
    gaussian_from_uniform, gaussian_to_gplp, gplp_to_gaussian, lp_to_gaussian,
    uniform_from_gaussian, BoxRule,
};
use gaussplan::fw::SolverOptions;
use gaussplan::gp::GpProblem;
use gaussplan::gplp::{GplpProblem, UniformComponent};
use gaussplan::linalg::Matrix;
use gaussplan::lp::LpProblem;
use gaussplan::value::{GaussianComponent, ValueModel};
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn moment_match_published_interval() {
    let c = GaussianComponent::new(0, 80.0, 20.0, 100.0).unwrap();
    let u = uniform_from_gaussian(&c);
    // frozen closed form: 45.35898384862246 and 114.64101615137754
    assert!((u.a() - 45.36).abs() <= 0.05);
    assert!((u.b() - 114.64).abs() <= 0.05);
    // the published rounded figures
    assert!((u.a() - 45.4).abs() <= 0.1);
    assert!((u.b() - 114.6).abs() <= 0.1);
}

#[test]
fn gplp_intervals_of_the_four_product_independents() {
    // frozen closed forms: 30 ∓ 10√3 → (12.68, 47.32); 40 ∓ 13√3 → (17.48, 62.52)
    let c1 = GaussianComponent::new(0, 30.0, 10.0, 5_000.0).unwrap();
    let u1 = uniform_from_gaussian(&c1);
    assert!((u1.a() - 12.679_491_924_311_229).abs() < 1e-12);
    assert!((u1.b() - 47.320_508_075_688_77).abs() < 1e-12);
    assert_eq!(u1.mass(), 10_000.0);
    let c2 = GaussianComponent::new(1, 40.0, 13.0, 10_000.0).unwrap();
    let u2 = uniform_from_gaussian(&c2);
    assert!((u2.a() - 17.483_339_501_604_597).abs() < 1e-12);
    assert!((u2.b() - 62.516_660_498_395_4).abs() < 1e-12);
}

#[test]
fn mass_preservation_across_the_bridge() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for _ in 0..20 {
        let (gp, _) = random_independent_problem(&mut rng, 4);
        let gplp = gaussian_to_gplp(&gp).unwrap();
        let lambda_total = gp.model().lambda_total();
        assert!(
            (gplp.mass_total() - 2.0 * lambda_total).abs() <= 1e-12 * (1.0 + 2.0 * lambda_total)
        );
        // the plateau is attained beyond every b_j
        let far: Vec<f64> = gplp.components().iter().map(|c| c.b() + 1.0).collect();
        let v = gplp.value(&far).unwrap();
        assert!((v - gplp.mass_total()).abs() <= 1e-12 * (1.0 + v));
    }
}

#[test]
fn distribution_functions_stay_close_after_matching() {
    // unit-mass comparison of the Gaussian value curve and its matched ramp
    // over [0, 160]; the dense-grid deviation lands near 0.057
    let c = GaussianComponent::new(0, 80.0, 20.0, 0.5).unwrap();
    let u = uniform_from_gaussian(&c);
    assert_eq!(u.mass(), 1.0);
    let mut max_dev: f64 = 0.0;
    let samples = 3_200;
    for i in 0..=samples {
        let x = 160.0 * i as f64 / samples as f64;
        let f = c.value(x).unwrap();
        let ramp = u.ramp(x);
        max_dev = max_dev.max((f - ramp).abs());
    }
    assert!(max_dev <= 0.07, "max deviation {max_dev}");
    assert!(max_dev >= 0.04, "comparison degenerated: {max_dev}");
}

#[test]
fn lp_box_value_approximation_quality() {
    // single variable c = 1, x ≤ 10: the Gaussian value at the box edge
    // comes within 10% of the linear value c·b
    let p = LpProblem::maximize_leq(
        vec![1.0],
        Matrix::from_rows(&[vec![1.0]]).unwrap(),
        vec![10.0],
    )
    .unwrap();
    let gp = lp_to_gaussian(&p, BoxRule::MinRatio).unwrap();
    let c = &gp.model().independents()[0];
    let f_edge = c.value(10.0).unwrap();
    let oracle = component_value_oracle(10.0, c.m(), c.sigma(), c.lambda());
    assert!((f_edge - oracle).abs() <= 1e-6 * oracle);
    // frozen from the oracle: 9.167354833364495
    assert!((f_edge - 9.167_354_833_364_495).abs() < 1e-9);
    assert!((f_edge - 10.0).abs() <= 0.1 * 10.0);
}

#[test]
fn gplp_round_trip_numeric_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    for _ in 0..50 {
        let (gp, _) = random_independent_problem(&mut rng, 4);
        let gplp = gaussian_to_gplp(&gp).unwrap();
        let back = gplp_to_gaussian(&gplp).unwrap();
        for (orig, rt) in gp
            .model()
            .independents()
            .iter()
            .zip(back.model().independents())
        {
            assert!((orig.m() - rt.m()).abs() <= 1e-12 * orig.m());
            assert!((orig.sigma() - rt.sigma()).abs() <= 1e-12 * orig.sigma());
            assert!((orig.lambda() - rt.lambda()).abs() <= 1e-12 * orig.lambda());
        }
    }
}

/// Independent Gaussian planning instance whose resource stock makes the
/// planned quantities reachable; returns the problem and its box caps.
fn random_independent_problem(rng: &mut ChaCha8Rng, max_dim: usize) -> (GpProblem, Vec<f64>) {
    let n = rng.gen_range(1..=max_dim);
    let mut comps = Vec::with_capacity(n);
    for j in 0..n {
        let m = rng.gen_range(20.0..100.0);
        let sigma = m / rng.gen_range(3.0..6.0);
        let lambda = rng.gen_range(100.0..10_000.0);
        comps.push(GaussianComponent::new(j, m, sigma, lambda).unwrap());
    }
    let model = ValueModel::new(n, comps, vec![]).unwrap();
    let rows_count = rng.gen_range(1..=3);
    let mut rows = Vec::with_capacity(rows_count);
    let mut rhs = Vec::with_capacity(rows_count);
    let anchor: Vec<f64> = model
        .independents()
        .iter()
        .map(|c| c.m() * rng.gen_range(1.0..1.4))
        .collect();
    for _ in 0..rows_count {
        let row: Vec<f64> = (0..n)
            .map(|_| if rng.gen_bool(0.8) { rng.gen_range(0.2..5.0) } else { 0.0 })
            .collect();
        let cap: f64 = row.iter().zip(&anchor).map(|(a, x)| a * x).sum();
        rows.push(row);
        rhs.push(cap);
    }
    for j in 0..n {
        if (0..rows_count).all(|i| rows[i][j] == 0.0) {
            rows[0][j] = rng.gen_range(0.2..5.0);
            rhs[0] += rows[0][j] * anchor[j];
        }
    }
    let a = Matrix::from_rows(&rows).unwrap();
    let caps = (0..n)
        .map(|j| {
            (0..rows_count)
                .filter(|&i| a.get(i, j) > 0.0)
                .map(|i| rhs[i] / a.get(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    (GpProblem::new(model, a, rhs).unwrap(), caps)
}

/// Dense feasible-grid maximization of the ramp value; the grid count per
/// dimension shrinks with n to stay a few million points.
fn grid_oracle(p: &GplpProblem) -> (f64, f64) {
    let n = p.dimension();
    let steps = match n {
        1 => 2_000usize,
        2 => 500,
        _ => 126,
    };
    // searching beyond the saturation point b never helps when A ≥ 0
    let caps: Vec<f64> = p
        .components()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let col_cap = (0..p.constraint_matrix().rows())
                .filter(|&i| p.constraint_matrix().get(i, j) > 0.0)
                .map(|i| p.resources()[i] / p.constraint_matrix().get(i, j))
                .fold(f64::INFINITY, f64::min);
            col_cap.min(c.b())
        })
        .collect();
    let mut best = f64::NEG_INFINITY;
    let mut idx = vec![0usize; n];
    let mut resolution = 0.0;
    for (j, c) in p.components().iter().enumerate() {
        resolution += c.slope() * caps[j] / steps as f64;
    }
    'outer: loop {
        let x: Vec<f64> = idx
            .iter()
            .enumerate()
            .map(|(j, &i)| caps[j] * i as f64 / steps as f64)
            .collect();
        let ax = p.constraint_matrix().mul_vec(&x).unwrap();
        if ax
            .iter()
            .zip(p.resources())
            .all(|(axi, ri)| *axi <= ri + 1e-9 * (1.0 + ri.abs()))
        {
            let v = p.value(&x).unwrap();
            if v > best {
                best = v;
            }
        }
        for j in 0..n {
            idx[j] += 1;
            if idx[j] <= steps {
                continue 'outer;
            }
            idx[j] = 0;
        }
        break;
    }
    (best, resolution)
}

#[test]
fn exact_gplp_matches_grid_oracle_on_50_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for trial in 0..50 {
        let (gp, _) = random_independent_problem(&mut rng, 3);
        let gplp = gaussian_to_gplp(&gp).unwrap();
        let exact = gplp.solve_exact().unwrap();
        let (grid_best, resolution) = grid_oracle(&gplp);
        assert!(
            exact.value >= grid_best - 1e-9 * (1.0 + grid_best.abs()),
            "trial {trial}: exact {} under grid {}",
            exact.value,
            grid_best
        );
        assert!(
            exact.value <= grid_best + resolution + 1e-9,
            "trial {trial}: exact {} exceeds grid {} + resolution {}",
            exact.value,
            grid_best,
            resolution
        );
    }
}

#[test]
fn exact_gplp_dominates_the_heuristic() {
    let mut rng = ChaCha8Rng::seed_from_u64(74);
    for trial in 0..25 {
        let (gp, _) = random_independent_problem(&mut rng, 3);
        let gplp = gaussian_to_gplp(&gp).unwrap();
        let exact = gplp.solve_exact().unwrap();
        let heur = gplp
            .solve_multistart(&SolverOptions {
                starts: 8,
                seed: trial,
                ..Default::default()
            })
            .unwrap();
        assert!(
            exact.value >= heur.value - 1e-9 * (1.0 + heur.value.abs()),
            "trial {trial}: exact {} vs heuristic {}",
            exact.value,
            heur.value
        );
    }
}

#[test]
fn cross_family_optima_stay_within_fifteen_percent() {
    // moment matching keeps the two value landscapes pointwise close, so
    // the optima of the Gaussian model and its ramp approximation cannot
    // drift far apart on instances whose plans are reachable
    let mut rng = ChaCha8Rng::seed_from_u64(75);
    for trial in 0..12 {
        let (gp, _) = random_independent_problem(&mut rng, 4);
        let gplp = gaussian_to_gplp(&gp).unwrap();
        let f_star = gp
            .solve_primal(&SolverOptions {
                starts: 8,
                seed: trial,
                ..Default::default()
            })
            .unwrap()
            .value;
        let u_star = gplp.solve().unwrap().value;
        let scale = f_star.max(u_star).max(1e-9);
        assert!(
            (f_star - u_star).abs() <= 0.15 * scale,
            "trial {trial}: F* {} vs U* {}",
            f_star,
            u_star
        );
    }
}

#[test]
fn conversion_of_the_four_product_fixture_is_blocked_by_the_set() {
    let gp = GpProblem::new(sec4_model(), sec4_matrix(), sec4_resources()).unwrap();
    assert!(matches!(
        gaussian_to_gplp(&gp),
        Err(gaussplan::Error::SetsNotApproximable)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn uniform_gaussian_inverse_pair(
        a in 0.0..50.0f64,
        width in 0.5..60.0f64,
        mass in 0.1..1e5f64,
    ) {
        let u = UniformComponent::new(0, a, a + width, mass).unwrap();
        let c = gaussian_from_uniform(&u).unwrap();
        let back = uniform_from_gaussian(&c);
        prop_assert!((back.a() - u.a()).abs() <= 1e-12 * (1.0 + u.a()));
        prop_assert!((back.b() - u.b()).abs() <= 1e-12 * (1.0 + u.b()));
        prop_assert!((back.mass() - u.mass()).abs() <= 1e-12 * (1.0 + u.mass()));
    }

    #[test]
    fn moment_match_preserves_mean_and_spread(
        m in 2.0..100.0f64,
        ratio in 1.8..8.0f64,
        lambda in 0.1..1e5f64,
    ) {
        let sigma = m / ratio; // keeps m − σ√3 ≥ 0
        let c = GaussianComponent::new(0, m, sigma, lambda).unwrap();
        let u = uniform_from_gaussian(&c);
        prop_assert!((0.5 * (u.a() + u.b()) - m).abs() <= 1e-12 * m);
        prop_assert!(((u.b() - u.a()) / (2.0 * 3.0f64.sqrt()) - sigma).abs() <= 1e-12 * sigma);
        prop_assert!((u.mass() - 2.0 * lambda).abs() <= 1e-12 * lambda);
    }

    #[test]
    fn ramp_is_monotone_and_saturating(
        a in 0.0..20.0f64,
        width in 0.1..30.0f64,
        mass in 0.1..100.0f64,
        x in 0.0..100.0f64,
        dx in 0.0..10.0f64,
    ) {
        let u = UniformComponent::new(0, a, a + width, mass).unwrap();
        prop_assert!(u.ramp(x) <= u.ramp(x + dx));
        prop_assert!(u.ramp(x) >= 0.0);
        prop_assert!(u.ramp(x) <= mass);
        prop_assert!((u.ramp(a + width + dx) - mass).abs() <= 1e-12 * mass);
    }
}
