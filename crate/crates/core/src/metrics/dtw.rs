//! Classic and soft dynamic time warping over the step set
//! `{(1,0), (0,1), (1,1)}`, without a warping window.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::Scalar;
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalCost {
    #[default]
    Abs,
    Squared,
}

impl LocalCost {
    pub fn eval<T: Scalar>(self, a: T, b: T) -> T {
        match self {
            LocalCost::Abs => (a - b).abs(),
            LocalCost::Squared => (a - b) * (a - b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DtwNormalization {
    #[default]
    None,
    /// Divide by the number of cells on the optimal warping path.
    PathLength,
    /// Divide by the longer input length (`N` for equal lengths).
    Mean,
}

#[derive(Clone, Copy)]
struct Cell<T> {
    cost: T,
    steps: usize,
}

/// DTW distance between `e` and `r`.
///
/// Among equal-cost predecessors the one with the shorter path wins, which
/// fixes the path length used by [`DtwNormalization::PathLength`].
pub fn dtw<T: Scalar>(
    e: &Signal<T>,
    r: &Signal<T>,
    local_cost: LocalCost,
    normalize: DtwNormalization,
) -> Result<T> {
    let (x, y) = (e.samples(), r.samples());
    let (n, m) = (x.len(), y.len());
    let w = m + 1;
    let inf = Cell {
        cost: T::infinity(),
        steps: usize::MAX,
    };
    let mut table = vec![inf; (n + 1) * w];
    table[0] = Cell {
        cost: T::zero(),
        steps: 0,
    };

    for i in 1..=n {
        for j in 1..=m {
            let d = local_cost.eval(x[i - 1], y[j - 1]);
            let best = [
                table[(i - 1) * w + (j - 1)],
                table[(i - 1) * w + j],
                table[i * w + (j - 1)],
            ]
            .into_iter()
            .reduce(|a, b| {
                if b.cost < a.cost || (b.cost == a.cost && b.steps < a.steps) {
                    b
                } else {
                    a
                }
            })
            .expect("three predecessors");
            table[i * w + j] = Cell {
                cost: best.cost + d,
                steps: best.steps.saturating_add(1),
            };
        }
    }

    let end = table[n * w + m];
    Ok(match normalize {
        DtwNormalization::None => end.cost,
        DtwNormalization::PathLength => end.cost / T::from_usize_lossy(end.steps),
        DtwNormalization::Mean => end.cost / T::from_usize_lossy(n.max(m)),
    })
}

/// `-gamma * ln(e^{-a/gamma} + e^{-b/gamma} + e^{-c/gamma})`, shifted by the
/// minimum for stability.
fn softmin3<T: Scalar>(gamma: T, a: T, b: T, c: T) -> T {
    let lo = a.min(b).min(c);
    if lo == T::infinity() {
        return lo;
    }
    let s = ((lo - a) / gamma).exp() + ((lo - b) / gamma).exp() + ((lo - c) / gamma).exp();
    lo - gamma * s.ln()
}

/// Soft-DTW with squared local cost. The value may be negative.
pub fn soft_dtw<T: Scalar>(e: &Signal<T>, r: &Signal<T>, gamma: T) -> Result<T> {
    if !(gamma.is_finite() && gamma > T::zero()) {
        return Err(invalid(
            "gamma",
            gamma.to_f64_lossy(),
            "must be finite and > 0",
        ));
    }
    let (x, y) = (e.samples(), r.samples());
    let (n, m) = (x.len(), y.len());
    let w = m + 1;
    let mut table = vec![T::infinity(); (n + 1) * w];
    table[0] = T::zero();
    for i in 1..=n {
        for j in 1..=m {
            let d = LocalCost::Squared.eval(x[i - 1], y[j - 1]);
            table[i * w + j] = d + softmin3(
                gamma,
                table[(i - 1) * w + (j - 1)],
                table[(i - 1) * w + j],
                table[i * w + (j - 1)],
            );
        }
    }
    Ok(table[n * w + m])
}
