//! Stage-wise median imputation for numeric columns and placeholder fill for
//! text columns.
//!
//! Fitting computes one median per (class, column) pair over observed values
//! plus a global per-column median. Application fills missing numeric cells
//! from the row's class median, falling back to the global median when the
//! class never observed that column; rows whose label must not be consulted
//! are filled from global medians only.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, N_STAGES};
use crate::error::{Error, Result};

/// Fitted imputation lookup tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImputationPlan {
    /// `per_class_medians[class][column]`, `None` where the class had no
    /// observed value for the column.
    pub per_class_medians: Vec<Vec<Option<f64>>>,
    /// One entry per numeric column; fitting fails if a column is entirely
    /// unobserved.
    pub global_medians: Vec<f64>,
    /// Fill value for missing text cells.
    pub text_placeholder: String,
    /// Numeric column names, for error messages and manifest checks.
    pub column_names: Vec<String>,
}

/// Whether a row's label may be consulted when choosing the median.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApplyMode {
    /// Use the row's class median, global as fallback.
    PerClass,
    /// Use global medians only (label never consulted).
    GlobalOnly,
}

/// Median by the positional formula: sorted values, odd n takes the middle
/// element, even n averages the two middle elements.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput("median"));
    }
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    if n % 2 == 1 {
        Ok(sorted[n / 2])
    } else {
        Ok((sorted[n / 2 - 1] + sorted[n / 2]) / 2.0)
    }
}

/// Fits per-class and global medians over observed (non-NaN) numeric cells.
pub fn fit_imputation(ds: &Dataset, placeholder: &str) -> Result<ImputationPlan> {
    let n_cols = ds.numeric.ncols();
    let classes = ds.classes();
    let mut per_class = Vec::with_capacity(N_STAGES);
    let mut global = Vec::with_capacity(n_cols);
    let names: Vec<String> =
        ds.schema.numeric_names().iter().map(|s| String::from(*s)).collect();

    for j in 0..n_cols {
        let observed: Vec<f64> =
            ds.numeric.column(j).iter().copied().filter(|v| !v.is_nan()).collect();
        if observed.is_empty() {
            return Err(Error::MissingData(format!(
                "numeric column `{}` has no observed values",
                names[j]
            )));
        }
        global.push(median(&observed)?);
    }
    for class in 0..N_STAGES {
        let mut row = Vec::with_capacity(n_cols);
        for j in 0..n_cols {
            let observed: Vec<f64> = ds
                .numeric
                .column(j)
                .iter()
                .zip(classes.iter())
                .filter(|(v, &c)| c == class && !v.is_nan())
                .map(|(v, _)| *v)
                .collect();
            row.push(if observed.is_empty() { None } else { Some(median(&observed)?) });
        }
        per_class.push(row);
    }
    Ok(ImputationPlan {
        per_class_medians: per_class,
        global_medians: global,
        text_placeholder: String::from(placeholder),
        column_names: names,
    })
}

/// Fills missing cells, leaving observed cells untouched.
pub fn apply_imputation(plan: &ImputationPlan, ds: &Dataset, mode: ApplyMode) -> Result<Dataset> {
    let names = ds.schema.numeric_names();
    if names.len() != plan.column_names.len()
        || names.iter().zip(plan.column_names.iter()).any(|(a, b)| *a != b.as_str())
    {
        return Err(Error::Schema(format!(
            "numeric columns {:?} do not match imputation plan columns {:?}",
            names, plan.column_names
        )));
    }
    let mut out = ds.clone();
    let classes = ds.classes();
    for i in 0..out.n_rows() {
        for j in 0..out.numeric.ncols() {
            if out.numeric[[i, j]].is_nan() {
                let fill = match mode {
                    ApplyMode::PerClass => plan.per_class_medians[classes[i]][j]
                        .unwrap_or(plan.global_medians[j]),
                    ApplyMode::GlobalOnly => plan.global_medians[j],
                };
                out.numeric[[i, j]] = fill;
            }
        }
        for cell in out.text[i].iter_mut() {
            if cell.is_empty() {
                *cell = plan.text_placeholder.clone();
            }
        }
    }
    Ok(out)
}
