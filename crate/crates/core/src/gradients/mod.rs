//! Analytic gradients of the losses with respect to the candidate signal.
//!
//! Conventions at the non-differentiable points:
//! - `∂|r|/∂r = sign(r)` with `sign(0) = 0`.
//! - `∂min(|e|, |r|)/∂r = sign(r)` when `|r| <= |e|`, else 0. At a tie the
//!   derivative follows the candidate branch.
//! - The exact step `H` is treated as locally constant, giving a
//!   subgradient of the exact-mode loss.

mod finite_diff;
mod sensitivity;

pub use finite_diff::{finite_difference, relative_error, StepPolicy};
pub use sensitivity::{sensitivity_table, SensitivityColumn, SensitivityRow, SensitivityTable};

use serde::{Deserialize, Serialize};

use crate::error::{ensure_same_len, Result};
use crate::metrics::{hybrid_loss, HeavisideMode, LossConfig};
use crate::scalar::{l2_norm, Scalar};
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossKind {
    Mse,
    Mae,
    SdscLoss,
    Hybrid,
}

impl LossKind {
    pub fn name(self) -> &'static str {
        match self {
            LossKind::Mse => "mse",
            LossKind::Mae => "mae",
            LossKind::SdscLoss => "sdsc_loss",
            LossKind::Hybrid => "hybrid",
        }
    }
}

/// Gradient of one loss with respect to the candidate `r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct GradientReport<T> {
    pub metric: LossKind,
    pub grad: Vec<T>,
    pub l2_norm: T,
    pub config: Option<LossConfig<T>>,
    /// `∂total/∂(sigma_sdsc, sigma_mse)` for adaptive hybrid weighting.
    pub sigma_grad: Option<[T; 2]>,
}

impl<T: Scalar> GradientReport<T> {
    fn new(metric: LossKind, grad: Vec<T>, config: Option<LossConfig<T>>) -> Self {
        Self {
            metric,
            l2_norm: l2_norm(&grad),
            grad,
            config,
            sigma_grad: None,
        }
    }
}

pub fn grad_mse<T: Scalar>(e: &Signal<T>, r: &Signal<T>) -> Result<GradientReport<T>> {
    ensure_same_len(e.len(), r.len())?;
    let scale = T::lit(2.0) / T::from_usize_lossy(e.len());
    let grad = e
        .iter()
        .zip(r.iter())
        .map(|(a, b)| scale * (b - a))
        .collect();
    Ok(GradientReport::new(LossKind::Mse, grad, None))
}

pub fn grad_mae<T: Scalar>(e: &Signal<T>, r: &Signal<T>) -> Result<GradientReport<T>> {
    ensure_same_len(e.len(), r.len())?;
    let n = T::from_usize_lossy(e.len());
    let grad = e
        .iter()
        .zip(r.iter())
        .map(|(a, b)| (b - a).sign0() / n)
        .collect();
    Ok(GradientReport::new(LossKind::Mae, grad, None))
}

/// Gradient of `1 - N/D` where `N = 2 Σ H(e r) min(|e|, |r|)` and
/// `D = Σ (|e| + |r|) + eps`.
pub(crate) fn sdsc_loss_grad<T: Scalar>(
    e: &[T],
    r: &[T],
    mode: &HeavisideMode<T>,
    eps: T,
) -> Vec<T> {
    let (num, den) = crate::metrics::sdsc_terms(e, r, mode);
    let den = den + eps;
    if den == T::zero() {
        return vec![T::zero(); r.len()];
    }
    let two = T::lit(2.0);
    let den_sq = den * den;
    e.iter()
        .zip(r)
        .map(|(&a, &b)| {
            let p = a * b;
            let m = a.abs().min(b.abs());
            let dm = if b.abs() <= a.abs() {
                b.sign0()
            } else {
                T::zero()
            };
            let dnum = two * (mode.derivative(p) * a * m + mode.eval(p) * dm);
            let dden = b.sign0();
            -(dnum * den - num * dden) / den_sq
        })
        .collect()
}

pub fn grad_sdsc_loss<T: Scalar>(
    e: &Signal<T>,
    r: &Signal<T>,
    cfg: &LossConfig<T>,
) -> Result<GradientReport<T>> {
    ensure_same_len(e.len(), r.len())?;
    cfg.heaviside.validate()?;
    crate::metrics::validate_eps(cfg.denom_epsilon)?;
    let grad = sdsc_loss_grad(e.samples(), r.samples(), &cfg.heaviside, cfg.denom_epsilon);
    Ok(GradientReport::new(LossKind::SdscLoss, grad, Some(*cfg)))
}

/// Gradient of the hybrid loss; adaptive weighting also fills `sigma_grad`.
pub fn grad_hybrid<T: Scalar>(
    e: &Signal<T>,
    r: &Signal<T>,
    cfg: &LossConfig<T>,
) -> Result<GradientReport<T>> {
    let loss = hybrid_loss(e, r, cfg)?;
    let [w_sdsc, w_mse] = loss.effective_weights;
    let g_sdsc = sdsc_loss_grad(e.samples(), r.samples(), &cfg.heaviside, cfg.denom_epsilon);
    let g_mse = grad_mse(e, r)?.grad;
    let grad = g_sdsc
        .into_iter()
        .zip(g_mse)
        .map(|(s, m)| w_sdsc * s + w_mse * m)
        .collect();
    let mut report = GradientReport::new(LossKind::Hybrid, grad, Some(*cfg));
    report.sigma_grad = loss.sigma_grad;
    Ok(report)
}
