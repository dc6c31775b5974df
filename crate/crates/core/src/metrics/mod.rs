//! Similarity and distance metrics, and the losses built on them.

mod dice;
mod distance;
mod dtw;
mod loss;
mod panel;
mod sdsc;

pub use dice::dice;
pub use distance::{mae, mse};
pub use dtw::{dtw, soft_dtw, DtwNormalization, LocalCost};
pub use loss::{hybrid_loss, sdsc_loss, HybridLoss, LossConfig, Weighting};
pub use panel::{metric_panel, MetricReport, PanelConfig};
pub use sdsc::{sdsc, sigmoid_heaviside, HeavisideMode};
pub(crate) use sdsc::{sdsc_terms, validate_eps};
