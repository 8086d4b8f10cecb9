//! Maximum likelihood estimation, bootstrap uncertainty and asymptotic
//! checks for the Mallows-Binomial model of joint rankings and ratings.

pub mod asymptotics;
pub mod bootstrap;
pub mod cli;
pub mod error;
pub mod estimation;
pub mod io;
pub mod model;
pub mod rng;
pub mod sampling;

pub use error::{Error, Result};
pub use estimation::{fit, fit_best_first, fit_exhaustive, FitOptions, FitResult, Method};
pub use model::{
    kappa, kendall_distance, log_likelihood, mallows_mean_var, order_of, psi, Bounds, Dataset,
    ParamBounds, Params, Ranking, RatingsRow, SufficientStats,
};
pub use sampling::{sample_dataset, SimConfig};
