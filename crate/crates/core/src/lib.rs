//! Planning models with a Gaussian optimality criterion.
//!
//! The value of delivering quantity `x` of a product is modelled as an
//! unnormalized Gaussian distribution function: zero at `x = 0`, steepest
//! around the planned quantity `m`, and saturating below `2λ` for large `x`.
//! Groups of products can be valued jointly as a complete set through a
//! multivariate Gaussian rectangle probability, so under-delivery of one
//! member devalues the whole set.
//!
//! The crate provides:
//!
//! * [`value`] — value models, analytic prices (densities) and gradients;
//! * [`lp`] — a self-contained dense two-phase simplex solver;
//! * [`gp`] — the non-convex planning solver (multi-start Frank-Wolfe over
//!   the resource polytope), dual resource prices, Kuhn-Tucker verification
//!   and the monetary balance ledger;
//! * [`gplp`] — the generalized piecewise-linear planning model (saturating
//!   ramp values) and its exact small-scale solver;
//! * [`convert`] — moment-matched bridges between linear, Gaussian and
//!   piecewise-linear planning models.

pub mod convert;
pub mod error;
pub mod fw;
pub mod gp;
pub mod gplp;
pub mod linalg;
pub mod lp;
pub mod math;
pub mod value;

pub use convert::{
    gaussian_from_uniform, gaussian_to_gplp, gplp_to_gaussian, lp_to_gaussian,
    uniform_from_gaussian, BoxRule,
};
pub use error::Error;
pub use fw::SolverOptions;
pub use gp::{BalanceLedger, GpProblem, KktReport, KktTolerances, PrimalSolution};
pub use gplp::{GplpProblem, UniformComponent};
pub use linalg::Matrix;
pub use lp::{LpProblem, LpSolution, LpStatus, RowSense, Sense};
pub use math::{normal_cdf, normal_pdf};
pub use value::{GaussianComponent, SetComponent, ValueModel};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
