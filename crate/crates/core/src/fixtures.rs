//! The toy perturbation cases used to contrast distance metrics with SDSC.
//!
//! All cases start from one period of a sine with `N = 1000` samples. The
//! quality table uses `A = 0.1` for the inverted case (so that inversion
//! scores a deceptively low MSE) and `A = 1` otherwise; the gradient tables
//! use `A = 1` throughout and add a jittered case.

use serde::Serialize;

use crate::error::Result;
use crate::scalar::Scalar;
use crate::signal::{generate, perturb_chain, BaseSignalSpec, PerturbationSpec, Signal};

pub const DEFAULT_N: usize = 1000;
/// Relative amplitude of the inverted quality case.
pub const INVERTED_AMPLITUDE: f64 = 0.1;
/// Pure-noise candidate spread: `MSE = A^2/2 + sigma^2 ≈ 0.506` for `A = 1`.
pub const NOISE_SAMPLE_SIGMA: f64 = 0.0787;

/// A named reference/candidate construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct Fixture<T> {
    pub label: &'static str,
    /// Multiplies the base amplitude when set.
    pub amplitude_factor: Option<T>,
    pub chain: Vec<PerturbationSpec<T>>,
}

impl<T: Scalar> Fixture<T> {
    fn new(label: &'static str, chain: Vec<PerturbationSpec<T>>) -> Self {
        Self {
            label,
            amplitude_factor: None,
            chain,
        }
    }

    /// Reference and candidate signals for this case.
    pub fn build(&self, base: &BaseSignalSpec<T>) -> Result<(Signal<T>, Signal<T>)> {
        let spec = match self.amplitude_factor {
            Some(f) => base.with_amplitude(base.amplitude * f),
            None => *base,
        };
        let reference = generate(&spec)?;
        let candidate = perturb_chain(&reference, &self.chain)?;
        Ok((reference, candidate))
    }
}

pub fn default_base<T: Scalar>(n_samples: usize, amplitude: T) -> BaseSignalSpec<T> {
    BaseSignalSpec::sine(amplitude, T::one(), n_samples)
}

fn noise_sample<T: Scalar>(seed: u64) -> Vec<PerturbationSpec<T>> {
    vec![
        PerturbationSpec::Zero,
        PerturbationSpec::AddNoise {
            sigma: T::lit(NOISE_SAMPLE_SIGMA),
            seed,
        },
    ]
}

/// The seven rows of the metric-quality table.
pub fn quality_cases<T: Scalar>(seed: u64) -> Vec<Fixture<T>> {
    vec![
        Fixture {
            amplitude_factor: Some(T::lit(INVERTED_AMPLITUDE)),
            ..Fixture::new("Inverted", vec![PerturbationSpec::Invert])
        },
        Fixture::new(
            "0.5x Scaled",
            vec![PerturbationSpec::Scale {
                factor: T::lit(0.5),
            }],
        ),
        Fixture::new(
            "2x Scaled",
            vec![PerturbationSpec::Scale {
                factor: T::lit(2.0),
            }],
        ),
        Fixture::new("Zero", vec![PerturbationSpec::Zero]),
        Fixture::new("Noise Sample", noise_sample(seed)),
        Fixture::new(
            "Positive Shifted",
            vec![PerturbationSpec::Shift { offset: T::one() }],
        ),
        Fixture::new(
            "Negative Shifted",
            vec![PerturbationSpec::Shift { offset: -T::one() }],
        ),
    ]
}

/// Rows of the gradient-sensitivity tables.
pub fn sensitivity_cases<T: Scalar>(seed: u64) -> Vec<Fixture<T>> {
    vec![
        Fixture::new("Inverted", vec![PerturbationSpec::Invert]),
        Fixture::new(
            "0.5x Scaled",
            vec![PerturbationSpec::Scale {
                factor: T::lit(0.5),
            }],
        ),
        Fixture::new(
            "2x Scaled",
            vec![PerturbationSpec::Scale {
                factor: T::lit(2.0),
            }],
        ),
        Fixture::new("Zero", vec![PerturbationSpec::Zero]),
        Fixture::new("Noise Sample", noise_sample(seed)),
        Fixture::new(
            "Shifted",
            vec![PerturbationSpec::Shift { offset: T::one() }],
        ),
        Fixture::new(
            "Jittered",
            vec![PerturbationSpec::jitter(seed.wrapping_add(1))],
        ),
    ]
}
