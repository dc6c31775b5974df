//! SDSC loss and the hybrid SDSC + MSE objective.

use serde::{Deserialize, Serialize};

use super::distance::mse;
use super::sdsc::{sdsc, validate_eps, HeavisideMode};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;
use crate::signal::Signal;

/// How the SDSC and MSE terms are combined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "weighting", rename_all = "snake_case")]
pub enum Weighting<T> {
    /// `lambda_sdsc * L_sdsc + lambda_mse * L_mse`.
    Fixed { lambda_sdsc: T, lambda_mse: T },
    /// Homoscedastic-uncertainty weighting
    /// `Σ_i L_i / (2 sigma_i^2) + ln(1 + sigma_i^2)`.
    ///
    /// The sigmas belong to the caller's training loop; the loss only
    /// reports their gradient.
    Adaptive { sigma_sdsc: T, sigma_mse: T },
}

impl<T: Scalar> Weighting<T> {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Weighting::Fixed {
                lambda_sdsc,
                lambda_mse,
            } => {
                for (name, v) in [("lambda_sdsc", lambda_sdsc), ("lambda_mse", lambda_mse)] {
                    if !(v.is_finite() && v >= T::zero()) {
                        return Err(invalid(name, v.to_f64_lossy(), "must be finite and >= 0"));
                    }
                }
                if lambda_sdsc == T::zero() && lambda_mse == T::zero() {
                    return Err(invalid("lambda", 0.0, "weights must not both be zero"));
                }
                Ok(())
            }
            Weighting::Adaptive {
                sigma_sdsc,
                sigma_mse,
            } => {
                for (name, v) in [("sigma_sdsc", sigma_sdsc), ("sigma_mse", sigma_mse)] {
                    if !(v.is_finite() && v > T::zero()) {
                        return Err(invalid(name, v.to_f64_lossy(), "must be finite and > 0"));
                    }
                }
                Ok(())
            }
        }
    }

    /// Multipliers applied to `(L_sdsc, L_mse)`.
    pub fn effective_weights(&self) -> [T; 2] {
        match *self {
            Weighting::Fixed {
                lambda_sdsc,
                lambda_mse,
            } => [lambda_sdsc, lambda_mse],
            Weighting::Adaptive {
                sigma_sdsc,
                sigma_mse,
            } => {
                let w = |s: T| T::one() / (T::lit(2.0) * s * s);
                [w(sigma_sdsc), w(sigma_mse)]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct LossConfig<T> {
    pub heaviside: HeavisideMode<T>,
    pub denom_epsilon: T,
    pub weighting: Weighting<T>,
}

impl<T: Scalar> LossConfig<T> {
    pub const DEFAULT_EPSILON: f64 = 1e-8;

    /// Sigmoid step with the given sharpness and pure SDSC weighting.
    pub fn sigmoid(alpha: T) -> Self {
        Self {
            heaviside: HeavisideMode::sigmoid(alpha),
            denom_epsilon: T::lit(Self::DEFAULT_EPSILON),
            weighting: Weighting::Fixed {
                lambda_sdsc: T::one(),
                lambda_mse: T::zero(),
            },
        }
    }

    pub fn exact() -> Self {
        Self {
            heaviside: HeavisideMode::Exact,
            ..Self::sigmoid(T::one())
        }
    }

    pub fn with_weights(self, lambda_sdsc: T, lambda_mse: T) -> Self {
        Self {
            weighting: Weighting::Fixed {
                lambda_sdsc,
                lambda_mse,
            },
            ..self
        }
    }

    pub fn with_uncertainty(self, sigma_sdsc: T, sigma_mse: T) -> Self {
        Self {
            weighting: Weighting::Adaptive {
                sigma_sdsc,
                sigma_mse,
            },
            ..self
        }
    }

    pub fn with_epsilon(self, denom_epsilon: T) -> Self {
        Self {
            denom_epsilon,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.heaviside.validate()?;
        validate_eps(self.denom_epsilon)?;
        self.weighting.validate()
    }
}

/// `1 - SDSC(e, r)`.
pub fn sdsc_loss<T: Scalar>(e: &Signal<T>, r: &Signal<T>, cfg: &LossConfig<T>) -> Result<T> {
    Ok(T::one() - sdsc(e, r, cfg.heaviside, cfg.denom_epsilon)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HybridLoss<T> {
    pub total: T,
    pub l_sdsc: T,
    pub l_mse: T,
    /// Multipliers actually applied to `(l_sdsc, l_mse)`.
    pub effective_weights: [T; 2],
    /// `∂total/∂(sigma_sdsc, sigma_mse)`, adaptive weighting only.
    pub sigma_grad: Option<[T; 2]>,
}

pub fn hybrid_loss<T: Scalar>(
    e: &Signal<T>,
    r: &Signal<T>,
    cfg: &LossConfig<T>,
) -> Result<HybridLoss<T>> {
    cfg.validate()?;
    let l_sdsc = sdsc_loss(e, r, cfg)?;
    let l_mse = mse(e, r)?;
    let effective_weights = cfg.weighting.effective_weights();
    let weighted = effective_weights[0] * l_sdsc + effective_weights[1] * l_mse;
    let (total, sigma_grad) = match cfg.weighting {
        Weighting::Fixed { .. } => (weighted, None),
        Weighting::Adaptive {
            sigma_sdsc,
            sigma_mse,
        } => {
            let reg = |s: T| (T::one() + s * s).ln();
            let d = |l: T, s: T| -l / (s * s * s) + T::lit(2.0) * s / (T::one() + s * s);
            (
                weighted + reg(sigma_sdsc) + reg(sigma_mse),
                Some([d(l_sdsc, sigma_sdsc), d(l_mse, sigma_mse)]),
            )
        }
    };
    Ok(HybridLoss {
        total,
        l_sdsc,
        l_mse,
        effective_weights,
        sigma_grad,
    })
}
