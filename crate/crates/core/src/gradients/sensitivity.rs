use serde::Serialize;

use super::{grad_mae, grad_mse, grad_sdsc_loss};
use crate::error::Result;
use crate::fixtures::Fixture;
use crate::metrics::{HeavisideMode, LossConfig};
use crate::scalar::Scalar;
use crate::signal::BaseSignalSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub enum SensitivityColumn<T> {
    Mse,
    Mae,
    Sdsc(HeavisideMode<T>),
}

impl<T: Scalar> SensitivityColumn<T> {
    pub fn header(&self) -> String {
        match self {
            SensitivityColumn::Mse => "MSE".into(),
            SensitivityColumn::Mae => "MAE".into(),
            SensitivityColumn::Sdsc(HeavisideMode::Exact) => "SDSC".into(),
            SensitivityColumn::Sdsc(HeavisideMode::Sigmoid { alpha }) => format!("alpha={alpha}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct SensitivityRow<T> {
    pub label: &'static str,
    pub norms: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct SensitivityTable<T> {
    pub columns: Vec<SensitivityColumn<T>>,
    pub rows: Vec<SensitivityRow<T>>,
}

impl<T: Scalar> SensitivityTable<T> {
    pub fn get(&self, label: &str, column: usize) -> Option<T> {
        self.rows
            .iter()
            .find(|r| r.label == label)
            .and_then(|r| r.norms.get(column).copied())
    }
}

/// Gradient L2 norms, one row per case and one column per loss.
pub fn sensitivity_table<T: Scalar>(
    base: &BaseSignalSpec<T>,
    cases: &[Fixture<T>],
    columns: &[SensitivityColumn<T>],
    denom_epsilon: T,
) -> Result<SensitivityTable<T>> {
    base.validate()?;
    let mut rows = Vec::with_capacity(cases.len());
    for case in cases {
        let (e, r) = case.build(base)?;
        let norms = columns
            .iter()
            .map(|col| {
                Ok(match *col {
                    SensitivityColumn::Mse => grad_mse(&e, &r)?.l2_norm,
                    SensitivityColumn::Mae => grad_mae(&e, &r)?.l2_norm,
                    SensitivityColumn::Sdsc(heaviside) => {
                        let cfg = LossConfig {
                            heaviside,
                            ..LossConfig::exact().with_epsilon(denom_epsilon)
                        };
                        grad_sdsc_loss(&e, &r, &cfg)?.l2_norm
                    }
                })
            })
            .collect::<Result<Vec<T>>>()?;
        rows.push(SensitivityRow {
            label: case.label,
            norms,
        });
    }
    Ok(SensitivityTable {
        columns: columns.to_vec(),
        rows,
    })
}
