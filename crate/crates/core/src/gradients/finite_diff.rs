//! Central finite differences, the independent oracle for the analytic
//! gradients.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signal::Signal;

/// Per-coordinate step `h_i = h_rel * (1 + |r_i|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPolicy<T> {
    pub h_rel: T,
}

impl<T: Scalar> Default for StepPolicy<T> {
    fn default() -> Self {
        Self {
            h_rel: T::lit(1e-6),
        }
    }
}

impl<T: Scalar> StepPolicy<T> {
    pub fn step(&self, at: T) -> T {
        self.h_rel * (T::one() + at.abs())
    }
}

/// `∂loss/∂r_i ≈ (loss(r + h_i) - loss(r - h_i)) / (2 h_i)` for every `i`.
pub fn finite_difference<T, F>(
    loss: F,
    e: &Signal<T>,
    r: &Signal<T>,
    policy: StepPolicy<T>,
) -> Result<Vec<T>>
where
    T: Scalar,
    F: Fn(&Signal<T>, &Signal<T>) -> Result<T>,
{
    let base = r.samples().to_vec();
    let mut probe = base.clone();
    let mut out = Vec::with_capacity(base.len());
    for i in 0..base.len() {
        let h = policy.step(base[i]);
        let mut eval_at = |v: T| -> Result<T> {
            probe[i] = v;
            let candidate = Signal::with_sample_period(probe.clone(), r.sample_period())
                .map_err(|_| Error::EvaluationNotFinite { index: i })?;
            let value = loss(e, &candidate)?;
            if value.is_finite() {
                Ok(value)
            } else {
                Err(Error::EvaluationNotFinite { index: i })
            }
        };
        let plus = eval_at(base[i] + h)?;
        let minus = eval_at(base[i] - h)?;
        probe[i] = base[i];
        // (x + h) - (x - h) is not exactly 2h in floating point
        let span = (base[i] + h) - (base[i] - h);
        out.push((plus - minus) / span);
    }
    Ok(out)
}

/// `max_i |a_i - b_i| / max(max_i |a_i|, max_i |b_i|)`; zero when both are
/// zero vectors.
pub fn relative_error<T: Scalar>(a: &[T], b: &[T]) -> T {
    let inf_norm = |v: &[T]| v.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let scale = inf_norm(a).max(inf_norm(b));
    if scale == T::zero() {
        return T::zero();
    }
    let diff = a
        .iter()
        .zip(b)
        .fold(T::zero(), |m, (&x, &y)| m.max((x - y).abs()));
    diff / scale
}
