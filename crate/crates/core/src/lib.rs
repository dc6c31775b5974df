//! Structure-aware similarity for sampled signals.
//!
//! The centrepiece is the Signal Dice Similarity Coefficient ([`sdsc`]): a
//! bounded `[0, 1]` score of sign-matched amplitude overlap, together with
//! its loss form, a hybrid SDSC + MSE objective, analytic gradients and the
//! classic distance baselines (MSE, MAE, DTW, Soft-DTW) it is compared with.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below are what most callers want.

pub mod error;
pub mod fixtures;
pub mod gradients;
pub mod io;
pub mod metrics;
mod scalar;
pub mod signal;
pub mod stats;

pub use error::{Error, Result, SampleScope};
pub use gradients::{
    finite_difference, grad_hybrid, grad_mae, grad_mse, grad_sdsc_loss, relative_error,
    sensitivity_table, GradientReport, LossKind, SensitivityColumn, SensitivityTable, StepPolicy,
};
pub use metrics::{
    dice, dtw, hybrid_loss, mae, metric_panel, mse, sdsc, sdsc_loss, soft_dtw, DtwNormalization,
    HeavisideMode, HybridLoss, LocalCost, LossConfig, MetricReport, PanelConfig, Weighting,
};
pub use scalar::Scalar;
pub use signal::{
    generate, perturb, perturb_chain, BaseSignalSpec, PerturbationSpec, Signal, Waveform,
};

pub type Signal64 = Signal<f64>;
pub type Signal32 = Signal<f32>;
pub type LossConfig64 = LossConfig<f64>;
pub type LossConfig32 = LossConfig<f32>;
pub type HeavisideMode64 = HeavisideMode<f64>;
pub type PerturbationSpec64 = PerturbationSpec<f64>;
pub type BaseSignalSpec64 = BaseSignalSpec<f64>;
pub type MetricReport64 = MetricReport<f64>;
pub type GradientReport64 = GradientReport<f64>;
