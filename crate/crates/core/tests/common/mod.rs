//! Shared test oracles, independent of the library's evaluation paths.
//!
//! Values produced here come from composite Gauss-Legendre quadrature of the
//! raw normal densities, exhaustive searches, and finite differences — never
//! from the closed forms under test.

#![allow(dead_code)]

use gaussplan::linalg::Matrix;
use gaussplan::value::{GaussianComponent, SetComponent, ValueModel};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

pub fn std_normal_pdf(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite 24-node Gauss-Legendre integration with `panels` subintervals.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (nodes, weights) = gauss_legendre(24);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (t, w) in nodes.iter().zip(&weights) {
            total += w * f(mid + 0.5 * h * t);
        }
    }
    total * 0.5 * h
}

/// Standard normal distribution function by quadrature of the density.
pub fn cdf_oracle(z: f64) -> f64 {
    let zc = z.clamp(-40.0, 40.0);
    let panels = (zc.abs().ceil() as usize + 1).max(2) * 2;
    if zc >= 0.0 {
        0.5 + integrate(&std_normal_pdf, 0.0, zc, panels)
    } else {
        0.5 - integrate(&std_normal_pdf, zc, 0.0, panels)
    }
}

/// Value of one Gaussian component by quadrature of its price density.
pub fn component_value_oracle(x: f64, m: f64, sigma: f64, lambda: f64) -> f64 {
    let density = move |t: f64| {
        let z = (t - m) / sigma;
        2.0 * lambda / sigma * std_normal_pdf(z)
    };
    // integrate only where the density matters
    let lo = 0.0_f64.max(m - 12.0 * sigma).min(x);
    let head = if lo > 0.0 {
        // the left tail below lo contributes, integrate it too
        integrate(&density, 0.0, lo, 4)
    } else {
        0.0
    };
    let hi = x.min(m + 12.0 * sigma);
    let panels = (((hi - lo) / sigma).ceil() as usize).clamp(4, 400);
    head + integrate(&density, lo, hi, panels)
}

/// Rectangle probability of a bivariate normal by 2-D product quadrature of
/// the raw joint density (no conditional decomposition).
pub fn pair_rectangle_oracle(x: [f64; 2], mean: [f64; 2], cov: [[f64; 2]; 2]) -> f64 {
    let s0 = cov[0][0].sqrt();
    let s1 = cov[1][1].sqrt();
    let rho = cov[0][1] / (s0 * s1);
    let det = 1.0 - rho * rho;
    let joint = move |u: f64, v: f64| {
        let zu = (u - mean[0]) / s0;
        let zv = (v - mean[1]) / s1;
        let q = (zu * zu - 2.0 * rho * zu * zv + zv * zv) / det;
        (-0.5 * q).exp() / (2.0 * std::f64::consts::PI * s0 * s1 * det.sqrt())
    };
    let lo0 = 0.0_f64.max(mean[0] - 10.0 * s0).min(x[0]);
    let hi0 = x[0].min(mean[0] + 10.0 * s0);
    let lo1 = 0.0_f64.max(mean[1] - 10.0 * s1).min(x[1]);
    let hi1 = x[1].min(mean[1] + 10.0 * s1);
    if hi0 <= lo0 || hi1 <= lo1 {
        // a vanishing-tail rectangle; integrate what is left coarsely
        let inner = move |u: f64| integrate(&|v| joint(u, v), 0.0, x[1], 24);
        return integrate(&inner, 0.0, x[0], 24);
    }
    let panels1 = (((hi1 - lo1) / s1).ceil() as usize).clamp(6, 120);
    let inner = move |u: f64| integrate(&|v| joint(u, v), lo1, hi1, panels1);
    let panels0 = (((hi0 - lo0) / s0).ceil() as usize).clamp(6, 120);
    integrate(&inner, lo0, hi0, panels0)
}

/// Central finite differences of a scalar function of a plan vector.
pub fn finite_difference_gradient(
    f: &dyn Fn(&[f64]) -> f64,
    x: &[f64],
) -> Vec<f64> {
    let mut grad = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        let h = 1e-5 * x[j].abs().max(1.0);
        let mut hi = x.to_vec();
        hi[j] += h;
        let mut lo = x.to_vec();
        lo[j] = (lo[j] - h).max(0.0);
        let denom = hi[j] - lo[j];
        grad.push((f(&hi) - f(&lo)) / denom);
    }
    grad
}

/// Golden-section maximization of a unimodal-enough scalar function after a
/// uniform bracketing scan.
pub fn golden_section_max(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let scan = 256;
    let mut best_x = lo;
    let mut best_f = f(lo);
    for i in 1..=scan {
        let x = lo + (hi - lo) * i as f64 / scan as f64;
        let v = f(x);
        if v > best_f {
            best_f = v;
            best_x = x;
        }
    }
    let step = (hi - lo) / scan as f64;
    let (mut a, mut b) = ((best_x - step).max(lo), (best_x + step).min(hi));
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > 1e-12 * (1.0 + b.abs()) {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        if f1 > best_f {
            best_f = f1;
            best_x = x1;
        }
        if f2 > best_f {
            best_f = f2;
            best_x = x2;
        }
    }
    (best_x, best_f)
}

/// The four-product mixed fixture: two independent components and one
/// complete pair, three resources.
pub fn sec4_model() -> ValueModel {
    let c1 = GaussianComponent::new(0, 30.0, 10.0, 5_000.0).unwrap();
    let c2 = GaussianComponent::new(1, 40.0, 13.0, 10_000.0).unwrap();
    let mut cov = Matrix::zeros(2, 2);
    cov.set(0, 0, 300.0 * 300.0);
    cov.set(1, 1, 30.0 * 30.0);
    let set = SetComponent::new(vec![2, 3], vec![900.0, 100.0], cov, 200_000.0).unwrap();
    ValueModel::new(4, vec![c1, c2], vec![set]).unwrap()
}

pub fn sec4_matrix() -> Matrix {
    Matrix::from_rows(&[
        vec![0.0, 40.0, 50.0, 30.0],
        vec![30.0, 0.0, 10.0, 0.0],
        vec![70.0, 40.0, 0.0, 20.0],
    ])
    .unwrap()
}

pub fn sec4_resources() -> Vec<f64> {
    vec![49_500.0, 9_900.0, 5_700.0]
}

pub const SEC4_PLAN: [f64; 4] = [33.104, 0.0, 890.688, 165.52];
pub const SEC4_DUAL: [f64; 3] = [7.94, 12.67, 0.0];

/// Random mixed model with diagonal sets, scaled so gradients stay well
/// above finite-difference noise.
pub fn random_model(rng: &mut ChaCha8Rng, max_dim: usize) -> ValueModel {
    let n = rng.gen_range(1..=max_dim);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut independents = Vec::new();
    let mut sets = Vec::new();
    let mut cursor = 0;
    while cursor < n {
        let remaining = n - cursor;
        let take_set = remaining >= 2 && rng.gen_bool(0.4);
        if take_set {
            let k = rng.gen_range(2..=remaining.min(3));
            let indices: Vec<usize> = order[cursor..cursor + k].to_vec();
            let mean: Vec<f64> = (0..k).map(|_| rng.gen_range(8.0..30.0)).collect();
            let mut cov = Matrix::zeros(k, k);
            for (j, &mj) in mean.iter().enumerate() {
                let sigma = rng.gen_range(mj / 8.0..mj / 3.0);
                cov.set(j, j, sigma * sigma);
            }
            let lambda = rng.gen_range(200.0..2_000.0);
            sets.push(SetComponent::new(indices, mean, cov, lambda).unwrap());
            cursor += k;
        } else {
            let m = rng.gen_range(8.0..30.0);
            let sigma = rng.gen_range(m / 8.0..m / 3.0);
            let lambda = rng.gen_range(200.0..2_000.0);
            independents.push(GaussianComponent::new(order[cursor], m, sigma, lambda).unwrap());
            cursor += 1;
        }
    }
    ValueModel::new(n, independents, sets).unwrap()
}

/// A point with every coordinate inside the informative band of its
/// component (within two tolerances of the planned quantity).
pub fn informative_point(rng: &mut ChaCha8Rng, model: &ValueModel) -> Vec<f64> {
    let mut x = vec![0.0; model.dimension()];
    for c in model.independents() {
        let span = 2.0 * c.sigma();
        x[c.variable_index()] = (c.m() + rng.gen_range(-span..span)).max(0.5);
    }
    for s in model.sets() {
        for (j, &idx) in s.variable_indices().iter().enumerate() {
            let span = 2.0 * s.sigmas()[j];
            x[idx] = (s.mean()[j] + rng.gen_range(-span..span)).max(0.5);
        }
    }
    x
}
