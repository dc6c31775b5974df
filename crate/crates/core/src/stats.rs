//! Dispersion and correlation statistics over (MSE, SDSC) score pairs.
//!
//! Quantiles use linear interpolation between order statistics at
//! position `h = (n - 1) p` (inclusive). Standard deviations are population
//! (divide by `n`).

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result, SampleScope};
use crate::io::parse_cell;
use crate::scalar::{seq_sum, Scalar};

/// One model output's scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairedSample<T> {
    pub mse_value: T,
    pub sdsc_value: T,
}

impl<T: Scalar> PairedSample<T> {
    pub fn new(mse_value: T, sdsc_value: T) -> Result<Self> {
        if !mse_value.is_finite() {
            return Err(invalid(
                "mse_value",
                mse_value.to_f64_lossy(),
                "must be finite",
            ));
        }
        if !(sdsc_value >= T::zero() && sdsc_value <= T::one()) {
            return Err(invalid(
                "sdsc_value",
                sdsc_value.to_f64_lossy(),
                "must lie in [0, 1]",
            ));
        }
        Ok(Self {
            mse_value,
            sdsc_value,
        })
    }
}

/// Mean shifted by the first element, exact for constant data.
fn mean<T: Scalar>(v: &[T]) -> T {
    let pivot = v[0];
    pivot + seq_sum(v.iter().map(|&x| x - pivot)) / T::from_usize_lossy(v.len())
}

pub fn pearson<T: Scalar>(xs: &[T], ys: &[T]) -> Result<T> {
    crate::error::ensure_same_len(xs.len(), ys.len())?;
    if xs.len() < 2 {
        return Err(Error::InsufficientSamples {
            scope: SampleScope::Global,
            needed: 2,
            got: xs.len(),
        });
    }
    let (mx, my) = (mean(xs), mean(ys));
    let sxy = seq_sum(xs.iter().zip(ys).map(|(&x, &y)| (x - mx) * (y - my)));
    let sxx = seq_sum(xs.iter().map(|&x| (x - mx) * (x - mx)));
    let syy = seq_sum(ys.iter().map(|&y| (y - my) * (y - my)));
    if sxx == T::zero() {
        return Err(Error::ZeroVariance { what: "mse" });
    }
    if syy == T::zero() {
        return Err(Error::ZeroVariance { what: "sdsc" });
    }
    Ok(sxy / (sxx.sqrt() * syy.sqrt()))
}

/// Population standard deviation.
pub fn std_dev<T: Scalar>(v: &[T]) -> T {
    let m = mean(v);
    (seq_sum(v.iter().map(|&x| (x - m) * (x - m))) / T::from_usize_lossy(v.len())).sqrt()
}

/// Linear-interpolation quantile of already sorted, non-empty data.
pub fn quantile_sorted<T: Scalar>(sorted: &[T], p: T) -> T {
    let h = T::from_usize_lossy(sorted.len() - 1) * p;
    let lo = h.floor();
    let i = lo.to_usize().unwrap_or(0).min(sorted.len() - 1);
    if i + 1 >= sorted.len() {
        return sorted[i];
    }
    sorted[i] + (h - lo) * (sorted[i + 1] - sorted[i])
}

fn sorted_copy<T: Scalar>(v: &[T]) -> Vec<T> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct Histogram<T> {
    /// `bins + 1` edges spanning `[0, 1]`.
    pub edges: Vec<T>,
    pub counts: Vec<usize>,
}

/// Equal-width histogram on `[0, 1]`; the last bin is closed.
pub fn histogram<T: Scalar>(values: &[T], bins: usize) -> Histogram<T> {
    let bins = bins.max(1);
    let nb = T::from_usize_lossy(bins);
    let edges = (0..=bins).map(|i| T::from_usize_lossy(i) / nb).collect();
    let mut counts = vec![0; bins];
    for &v in values {
        let idx = (v * nb).floor().to_usize().unwrap_or(0).min(bins - 1);
        counts[idx] += 1;
    }
    Histogram { edges, counts }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct BandStats<T> {
    pub center: T,
    pub half_width: T,
    pub count: usize,
    pub std: T,
    pub q1: T,
    pub median: T,
    pub q3: T,
    pub iqr: T,
}

/// SDSC dispersion restricted to `|mse - center| <= half_width`.
pub fn band_stats<T: Scalar>(
    samples: &[PairedSample<T>],
    center: T,
    half_width: T,
) -> Result<BandStats<T>> {
    let band: Vec<T> = samples
        .iter()
        .filter(|s| (s.mse_value - center).abs() <= half_width)
        .map(|s| s.sdsc_value)
        .collect();
    if band.len() < 2 {
        return Err(Error::InsufficientSamples {
            scope: SampleScope::Band,
            needed: 2,
            got: band.len(),
        });
    }
    let sorted = sorted_copy(&band);
    let q1 = quantile_sorted(&sorted, T::lit(0.25));
    let q3 = quantile_sorted(&sorted, T::lit(0.75));
    Ok(BandStats {
        center,
        half_width,
        count: band.len(),
        std: std_dev(&band),
        q1,
        median: quantile_sorted(&sorted, T::lit(0.5)),
        q3,
        iqr: q3 - q1,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct StatsReport<T> {
    pub n: usize,
    pub pearson_r: T,
    pub band: BandStats<T>,
    /// SDSC histogram of the in-band samples.
    pub histogram: Histogram<T>,
}

pub fn summarize<T: Scalar>(
    samples: &[PairedSample<T>],
    band_center: T,
    band_half_width: T,
    bins: usize,
) -> Result<StatsReport<T>> {
    if samples.len() < 2 {
        return Err(Error::InsufficientSamples {
            scope: SampleScope::Global,
            needed: 2,
            got: samples.len(),
        });
    }
    let xs: Vec<T> = samples.iter().map(|s| s.mse_value).collect();
    let ys: Vec<T> = samples.iter().map(|s| s.sdsc_value).collect();
    let pearson_r = pearson(&xs, &ys)?;
    let band = band_stats(samples, band_center, band_half_width)?;
    let in_band: Vec<T> = samples
        .iter()
        .filter(|s| (s.mse_value - band_center).abs() <= band_half_width)
        .map(|s| s.sdsc_value)
        .collect();
    Ok(StatsReport {
        n: samples.len(),
        pearson_r,
        band,
        histogram: histogram(&in_band, bins),
    })
}

/// Bivariate-normal score pairs with correlation `rho`:
/// `mse = 1.5 + 0.3 x`, `sdsc = 0.6 + 0.05 y`, `corr(x, y) = rho`.
///
/// Draws leaving `mse >= 0` or `sdsc ∈ [0, 1]` (beyond five standard
/// deviations) are redrawn.
pub fn synthetic_pairs(n: usize, rho: f64, seed: u64) -> Result<Vec<PairedSample<f64>>> {
    if !(-1.0..=1.0).contains(&rho) {
        return Err(invalid("rho", rho, "must lie in [-1, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ortho = (1.0 - rho * rho).sqrt();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let z1: f64 = StandardNormal.sample(&mut rng);
        let z2: f64 = StandardNormal.sample(&mut rng);
        let mse = 1.5 + 0.3 * z1;
        let sdsc = 0.6 + 0.05 * (rho * z1 + ortho * z2);
        if mse >= 0.0 && (0.0..=1.0).contains(&sdsc) {
            out.push(PairedSample::new(mse, sdsc)?);
        }
    }
    Ok(out)
}

/// Reads a CSV with header `mse,sdsc` (columns located by name).
pub fn read_pairs<T: Scalar, R: Read>(reader: R, origin: &Path) -> Result<Vec<PairedSample<T>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let fmt = |message: String| Error::Format {
        path: origin.into(),
        message,
    };
    let headers = rdr.headers().map_err(|e| fmt(e.to_string()))?.clone();
    let col = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            fmt(format!(
                "missing {name:?} column (expected header mse,sdsc)"
            ))
        })
    };
    let (im, is) = (col("mse")?, col("sdsc")?);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| fmt(e.to_string()))?;
        let row = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        let cell = |i: usize| -> Result<T> {
            let raw = rec.get(i).unwrap_or("");
            parse_cell(raw).ok_or_else(|| Error::Parse {
                path: origin.into(),
                row,
                value: raw.to_string(),
            })
        };
        let sample =
            PairedSample::new(cell(im)?, cell(is)?).map_err(|e| fmt(format!("row {row}: {e}")))?;
        out.push(sample);
    }
    Ok(out)
}

pub fn load_pairs<T: Scalar>(path: impl AsRef<Path>) -> Result<Vec<PairedSample<T>>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })?;
    read_pairs(file, path)
}

pub fn write_pairs<T: Scalar, W: Write>(
    samples: &[PairedSample<T>],
    w: &mut W,
) -> std::io::Result<()> {
    writeln!(w, "mse,sdsc")?;
    for s in samples {
        writeln!(
            w,
            "{},{}",
            crate::io::format_round_trip(s.mse_value),
            crate::io::format_round_trip(s.sdsc_value)
        )?;
    }
    Ok(())
}
