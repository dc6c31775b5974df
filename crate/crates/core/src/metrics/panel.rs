use serde::{Deserialize, Serialize};

use super::distance::{mae, mse};
use super::dtw::{dtw, soft_dtw, DtwNormalization, LocalCost};
use super::sdsc::{sdsc, HeavisideMode};
use crate::error::{ensure_same_len, Result};
use crate::scalar::Scalar;
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct PanelConfig<T> {
    /// Sharpness for the smooth SDSC column.
    pub alpha: T,
    pub gamma: T,
    pub denom_epsilon: T,
    pub dtw_cost: LocalCost,
    pub dtw_normalization: DtwNormalization,
}

impl<T: Scalar> Default for PanelConfig<T> {
    fn default() -> Self {
        Self {
            alpha: T::lit(10.0),
            gamma: T::one(),
            denom_epsilon: T::lit(1e-8),
            dtw_cost: LocalCost::Abs,
            dtw_normalization: DtwNormalization::Mean,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct MetricReport<T> {
    pub n: usize,
    pub mse: T,
    pub mae: T,
    pub dtw: T,
    pub soft_dtw: T,
    pub sdsc: T,
    pub sdsc_smooth: T,
    pub config: PanelConfig<T>,
}

/// Every metric for one (reference, candidate) pair.
pub fn metric_panel<T: Scalar>(
    e: &Signal<T>,
    r: &Signal<T>,
    cfg: &PanelConfig<T>,
) -> Result<MetricReport<T>> {
    ensure_same_len(e.len(), r.len())?;
    Ok(MetricReport {
        n: e.len(),
        mse: mse(e, r)?,
        mae: mae(e, r)?,
        dtw: dtw(e, r, cfg.dtw_cost, cfg.dtw_normalization)?,
        soft_dtw: soft_dtw(e, r, cfg.gamma)?,
        sdsc: sdsc(e, r, HeavisideMode::Exact, cfg.denom_epsilon)?,
        sdsc_smooth: sdsc(e, r, HeavisideMode::sigmoid(cfg.alpha), cfg.denom_epsilon)?,
        config: *cfg,
    })
}
