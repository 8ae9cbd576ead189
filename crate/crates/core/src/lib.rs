//! Linear prediction of long-memory processes.
//!
//! Truncated Wiener–Kolmogorov and Yule–Walker AR(k) predictors, their exact
//! mean-squared errors, asymptotic constants and Monte-Carlo cross-checks.

pub mod asymptotics;
pub mod cli;
pub mod config;
pub mod error;
pub mod exec;
pub mod fit;
pub mod grid;
pub mod mse;
pub mod predict;
pub mod process;
pub mod series;
pub mod sim;
pub mod special;
pub mod svg;
pub mod table;

pub use error::{Error, Result};
pub use exec::Execution;
pub use fit::{closed_form_ar_fit, projection_weights, yule_walker, FittedAr};
pub use mse::{
    error_decomposition, infinite_past_mse, mse_of_weights, spectral_contrast_mse, MseReport,
};
pub use predict::{
    forecast, infinite_past_h_step_coeffs, truncated_wk_weights, Method, PredictorWeights,
};
pub use process::{acvf, ar_coeffs, ma_coeffs, verify_decay, CoefSeq, ProcessModel};
