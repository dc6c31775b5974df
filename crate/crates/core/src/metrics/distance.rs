use crate::error::{ensure_same_len, Result};
use crate::scalar::{seq_sum, Scalar};
use crate::signal::Signal;

fn mean_of<T: Scalar>(e: &Signal<T>, r: &Signal<T>, f: impl Fn(T) -> T) -> Result<T> {
    ensure_same_len(e.len(), r.len())?;
    let n = T::from_usize_lossy(e.len());
    Ok(seq_sum(e.iter().zip(r.iter()).map(|(a, b)| f(b - a))) / n)
}

/// Mean squared error.
pub fn mse<T: Scalar>(e: &Signal<T>, r: &Signal<T>) -> Result<T> {
    mean_of(e, r, |d| d * d)
}

/// Mean absolute error.
pub fn mae<T: Scalar>(e: &Signal<T>, r: &Signal<T>) -> Result<T> {
    mean_of(e, r, |d| d.abs())
}
