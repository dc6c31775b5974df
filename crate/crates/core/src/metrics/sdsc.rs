//! Signal Dice Similarity Coefficient.
//!
//! For sampled signals `e` and `r`:
//!
//! ```text
//! SDSC = 2 * Σ H(e_s * r_s) * min(|e_s|, |r_s|) / (Σ (|e_s| + |r_s|) + eps)
//! ```
//!
//! The numerator is the sign-matched overlap of the two amplitude envelopes
//! and the denominator their total absolute area, so the score lies in
//! `[0, 1]` (pointwise `2 min(a, b) <= a + b`). `H` is either the exact step
//! (`H(0) = 0`) or the logistic surrogate `1 / (1 + exp(-alpha * x))`.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_same_len, invalid, Result};
use crate::scalar::{seq_sum, Scalar};
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum HeavisideMode<T> {
    Exact,
    Sigmoid { alpha: T },
}

impl<T: Scalar> HeavisideMode<T> {
    pub fn sigmoid(alpha: T) -> Self {
        HeavisideMode::Sigmoid { alpha }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            HeavisideMode::Sigmoid { alpha } if !(alpha.is_finite() && alpha > T::zero()) => Err(
                invalid("alpha", alpha.to_f64_lossy(), "must be finite and > 0"),
            ),
            _ => Ok(()),
        }
    }

    /// Step value at `x`.
    pub fn eval(&self, x: T) -> T {
        match *self {
            HeavisideMode::Exact => {
                if x > T::zero() {
                    T::one()
                } else {
                    T::zero()
                }
            }
            HeavisideMode::Sigmoid { alpha } => sigmoid_heaviside(x, alpha),
        }
    }

    /// Derivative of the step at `x`; the exact step is treated as locally
    /// constant.
    pub fn derivative(&self, x: T) -> T {
        match *self {
            HeavisideMode::Exact => T::zero(),
            HeavisideMode::Sigmoid { alpha } => {
                let h = sigmoid_heaviside(x, alpha);
                alpha * h * (T::one() - h)
            }
        }
    }
}

/// Logistic step `1 / (1 + exp(-alpha * x))`, evaluated without overflow.
pub fn sigmoid_heaviside<T: Scalar>(x: T, alpha: T) -> T {
    let z = alpha * x;
    if z >= T::zero() {
        T::one() / (T::one() + (-z).exp())
    } else {
        let ez = z.exp();
        ez / (T::one() + ez)
    }
}

pub(crate) fn validate_eps<T: Scalar>(eps: T) -> Result<()> {
    if eps.is_finite() && eps >= T::zero() {
        Ok(())
    } else {
        Err(invalid(
            "denom_epsilon",
            eps.to_f64_lossy(),
            "must be finite and >= 0",
        ))
    }
}

/// Numerator `2 Σ H(e r) min(|e|, |r|)` and unguarded denominator `Σ (|e| + |r|)`.
pub(crate) fn sdsc_terms<T: Scalar>(e: &[T], r: &[T], mode: &HeavisideMode<T>) -> (T, T) {
    let two = T::lit(2.0);
    let num = two
        * seq_sum(
            e.iter()
                .zip(r)
                .map(|(&a, &b)| mode.eval(a * b) * a.abs().min(b.abs())),
        );
    let den = seq_sum(e.iter().zip(r).map(|(&a, &b)| a.abs() + b.abs()));
    (num, den)
}

/// Signal Dice Similarity Coefficient.
///
/// Two all-zero signals are identical and score 1. Exact mode clamps to
/// `[0, 1]`; sigmoid mode is returned unclamped.
pub fn sdsc<T: Scalar>(e: &Signal<T>, r: &Signal<T>, mode: HeavisideMode<T>, eps: T) -> Result<T> {
    ensure_same_len(e.len(), r.len())?;
    mode.validate()?;
    validate_eps(eps)?;
    let (num, den) = sdsc_terms(e.samples(), r.samples(), &mode);
    if den == T::zero() {
        return Ok(T::one());
    }
    let v = num / (den + eps);
    Ok(match mode {
        HeavisideMode::Exact => v.max(T::zero()).min(T::one()),
        HeavisideMode::Sigmoid { .. } => v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{generate, BaseSignalSpec};

    const EPS: f64 = 1e-8;

    fn sine() -> Signal<f64> {
        generate(&BaseSignalSpec::sine(1.0, 1.0, 1000)).unwrap()
    }

    fn scaled(x: &Signal<f64>, c: f64) -> Signal<f64> {
        Signal::new(x.iter().map(|v| c * v).collect()).unwrap()
    }

    #[test]
    fn scaled_copies_score_two_thirds() {
        let e = sine();
        for c in [0.5, 2.0] {
            let v = sdsc(&e, &scaled(&e, c), HeavisideMode::Exact, EPS).unwrap();
            assert!((v - 2.0 / 3.0).abs() < 1e-6, "c={c}: {v}");
        }
    }

    #[test]
    fn shifted_copy_matches_area_ratio() {
        // Overlap is the positive lobe (N/pi); total area is 2N/pi + N.
        let e = sine();
        let r = Signal::new(e.iter().map(|v| v + 1.0).collect()).unwrap();
        let v = sdsc(&e, &r, HeavisideMode::Exact, EPS).unwrap();
        let analytic = 4.0 / (4.0 + 2.0 * std::f64::consts::PI);
        assert!((v - 0.3887).abs() < 2e-3, "{v}");
        assert!((v - analytic).abs() < 1e-3, "{v} vs {analytic}");
    }

    #[test]
    fn inverted_scores_zero_and_identical_one() {
        let e = sine();
        assert_eq!(
            sdsc(&e, &scaled(&e, -1.0), HeavisideMode::Exact, EPS).unwrap(),
            0.0
        );
        assert!((sdsc(&e, &e, HeavisideMode::Exact, 0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn both_zero_scores_one() {
        let z = Signal::<f64>::zeros(5).unwrap();
        assert_eq!(sdsc(&z, &z, HeavisideMode::Exact, 0.0).unwrap(), 1.0);
        assert_eq!(
            sdsc(&z, &z, HeavisideMode::sigmoid(10.0), EPS).unwrap(),
            1.0
        );
    }

    #[test]
    fn one_zero_signal_scores_zero() {
        let e = sine();
        let z = Signal::zeros(e.len()).unwrap();
        assert_eq!(sdsc(&e, &z, HeavisideMode::Exact, EPS).unwrap(), 0.0);
        assert_eq!(
            sdsc(&e, &z, HeavisideMode::sigmoid(10.0), EPS).unwrap(),
            0.0
        );
    }

    #[test]
    fn sigmoid_converges_to_exact() {
        let e = sine();
        let ladder = [1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6];
        for c in [-1.0, 0.5, 2.0] {
            let r = scaled(&e, c);
            let exact = sdsc(&e, &r, HeavisideMode::Exact, EPS).unwrap();
            let mut prev = f64::INFINITY;
            for alpha in ladder {
                let gap = (sdsc(&e, &r, HeavisideMode::sigmoid(alpha), EPS).unwrap() - exact).abs();
                assert!(gap <= prev, "c={c} alpha={alpha}: {gap} > {prev}");
                prev = gap;
            }
            // samples next to the zero crossings keep |e r| ~ 1e-5
            assert!(prev < 1e-6, "c={c}: {prev}");
        }
        for offset in [1.0, -1.0] {
            let r = Signal::new(e.iter().map(|v| v + offset).collect()).unwrap();
            let exact = sdsc(&e, &r, HeavisideMode::Exact, EPS).unwrap();
            let far = sdsc(&e, &r, HeavisideMode::sigmoid(1e4), EPS).unwrap();
            assert!((far - exact).abs() < 1e-6, "offset={offset}");
        }
    }

    #[test]
    fn sigmoid_is_overflow_safe() {
        assert_eq!(sigmoid_heaviside(-1e6f64, 100.0), 0.0);
        assert_eq!(sigmoid_heaviside(1e6f64, 100.0), 1.0);
        assert_eq!(sigmoid_heaviside(0.0f64, 3.0), 0.5);
    }

    #[test]
    fn rejects_bad_parameters() {
        let e = sine();
        assert!(sdsc(&e, &e, HeavisideMode::sigmoid(0.0), EPS).is_err());
        assert!(sdsc(&e, &e, HeavisideMode::sigmoid(f64::NAN), EPS).is_err());
        assert!(sdsc(&e, &e, HeavisideMode::Exact, -1.0).is_err());
        let short = Signal::new(vec![1.0]).unwrap();
        assert!(sdsc(&e, &short, HeavisideMode::Exact, EPS).is_err());
    }
}
