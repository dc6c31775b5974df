//! Sampled signals, the synthetic base waveform and the perturbation suite.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;

/// A uniformly sampled, real-valued, finite series of at least one sample.
///
/// Samples cannot be modified after construction; every transformation
/// returns a new signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal<T> {
    samples: Vec<T>,
    sample_period: T,
}

impl<T: Scalar> Signal<T> {
    pub fn new(samples: Vec<T>) -> Result<Self> {
        Self::with_sample_period(samples, T::one())
    }

    pub fn with_sample_period(samples: Vec<T>, sample_period: T) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if !(sample_period.is_finite() && sample_period > T::zero()) {
            return Err(invalid(
                "sample_period",
                sample_period.to_f64_lossy(),
                "must be finite and > 0",
            ));
        }
        Ok(Self {
            samples,
            sample_period,
        })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![T::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn sample_period(&self) -> T {
        self.sample_period
    }

    pub fn iter(&self) -> impl Iterator<Item = T> + '_ {
        self.samples.iter().copied()
    }

    pub fn into_samples(self) -> Vec<T> {
        self.samples
    }

    /// Mean of squared samples.
    pub fn mean_power(&self) -> T {
        crate::scalar::seq_sum(self.iter().map(|v| v * v)) / T::from_usize_lossy(self.len())
    }

    fn map(&self, f: impl Fn(T) -> T) -> Result<Self> {
        Self::with_sample_period(self.iter().map(f).collect(), self.sample_period)
    }
}

impl<T> AsRef<[T]> for Signal<T> {
    fn as_ref(&self) -> &[T] {
        &self.samples
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Waveform {
    Sine,
}

/// Closed-form base waveform: `s_i = A * sin(2*pi*P*i/N)` for `i in 0..N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaseSignalSpec<T> {
    pub waveform: Waveform,
    pub amplitude: T,
    pub periods: T,
    pub n_samples: usize,
}

impl<T: Scalar> BaseSignalSpec<T> {
    pub fn sine(amplitude: T, periods: T, n_samples: usize) -> Self {
        Self {
            waveform: Waveform::Sine,
            amplitude,
            periods,
            n_samples,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 2 {
            return Err(invalid(
                "n_samples",
                self.n_samples as f64,
                "must be at least 2",
            ));
        }
        if !(self.amplitude.is_finite() && self.amplitude > T::zero()) {
            return Err(invalid(
                "amplitude",
                self.amplitude.to_f64_lossy(),
                "must be finite and > 0",
            ));
        }
        if !(self.periods.is_finite() && self.periods > T::zero()) {
            return Err(invalid(
                "periods",
                self.periods.to_f64_lossy(),
                "must be finite and > 0",
            ));
        }
        Ok(())
    }

    pub fn with_amplitude(self, amplitude: T) -> Self {
        Self { amplitude, ..self }
    }
}

pub fn generate<T: Scalar>(spec: &BaseSignalSpec<T>) -> Result<Signal<T>> {
    spec.validate()?;
    let n = T::from_usize_lossy(spec.n_samples);
    let two_pi = T::lit(std::f64::consts::TAU);
    let samples = (0..spec.n_samples)
        .map(|i| match spec.waveform {
            Waveform::Sine => {
                spec.amplitude * (two_pi * spec.periods * T::from_usize_lossy(i) / n).sin()
            }
        })
        .collect();
    Signal::new(samples)
}

/// One elementary transformation of a signal.
///
/// Noise and jitter draw i.i.d. standard normals from a ChaCha8 stream
/// seeded with `seed` (via `SeedableRng::seed_from_u64`), one draw per
/// sample in index order, scaled by `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PerturbationSpec<T> {
    Invert,
    Scale {
        factor: T,
    },
    Shift {
        offset: T,
    },
    Zero,
    AddNoise {
        sigma: T,
        seed: u64,
    },
    /// Small additive Gaussian distortion, reported separately from noise.
    Jitter {
        sigma: T,
        seed: u64,
    },
}

impl<T: Scalar> PerturbationSpec<T> {
    pub const DEFAULT_JITTER_SIGMA: f64 = 0.05;

    pub fn jitter(seed: u64) -> Self {
        PerturbationSpec::Jitter {
            sigma: T::lit(Self::DEFAULT_JITTER_SIGMA),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PerturbationSpec::Scale { factor } if !factor.is_finite() => {
                Err(invalid("factor", factor.to_f64_lossy(), "must be finite"))
            }
            PerturbationSpec::Shift { offset } if !offset.is_finite() => {
                Err(invalid("offset", offset.to_f64_lossy(), "must be finite"))
            }
            PerturbationSpec::AddNoise { sigma, .. } | PerturbationSpec::Jitter { sigma, .. }
                if !(sigma.is_finite() && sigma >= T::zero()) =>
            {
                Err(invalid(
                    "sigma",
                    sigma.to_f64_lossy(),
                    "must be finite and >= 0",
                ))
            }
            _ => Ok(()),
        }
    }
}

pub fn perturb<T: Scalar>(x: &Signal<T>, spec: &PerturbationSpec<T>) -> Result<Signal<T>> {
    spec.validate()?;
    match *spec {
        PerturbationSpec::Invert => x.map(|v| -v),
        PerturbationSpec::Scale { factor } => x.map(|v| factor * v),
        PerturbationSpec::Shift { offset } => x.map(|v| v + offset),
        PerturbationSpec::Zero => x.map(|_| T::zero()),
        PerturbationSpec::AddNoise { sigma, seed } | PerturbationSpec::Jitter { sigma, seed } => {
            if sigma == T::zero() {
                return Ok(x.clone());
            }
            let noise = gaussian_noise(x.len(), sigma, seed);
            let samples = x.iter().zip(noise).map(|(v, n)| v + n).collect();
            Signal::with_sample_period(samples, x.sample_period())
        }
    }
}

/// Applies a chain of perturbations left to right.
pub fn perturb_chain<T: Scalar>(x: &Signal<T>, chain: &[PerturbationSpec<T>]) -> Result<Signal<T>> {
    chain
        .iter()
        .try_fold(x.clone(), |acc, spec| perturb(&acc, spec))
}

pub(crate) fn gaussian_noise<T: Scalar>(n: usize, sigma: T, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            sigma * T::lit(z)
        })
        .collect()
}
