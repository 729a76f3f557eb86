//! Column-role datasets, stage labels and stratified splitting.
//!
//! A [`Dataset`] is a numeric matrix (NaN marks a missing cell), a text table
//! (empty string marks a missing cell) and one stage label per row, described
//! by a [`Schema`] that assigns each named column a [`Role`]. Raw AJCC codes
//! 100/200/300/400 map bijectively onto the encoded classes 0..=3.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use ndarray::Array2;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{stream_rng, Stream};

/// Number of stage classes (AJCC I–IV).
pub const N_STAGES: usize = 4;

/// What a column holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Numeric,
    Text,
    Label,
}

/// One named, role-tagged column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnSpec {
    pub name: String,
    pub role: Role,
}

/// An ordered list of column specs with exactly one label column and unique
/// column names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schema {
    columns: Vec<ColumnSpec>,
}

impl Schema {
    pub fn new(columns: Vec<ColumnSpec>) -> Result<Self> {
        let labels = columns.iter().filter(|c| c.role == Role::Label).count();
        if labels != 1 {
            return Err(Error::Schema(format!(
                "expected exactly one label column, found {labels}"
            )));
        }
        for (i, c) in columns.iter().enumerate() {
            if columns[..i].iter().any(|d| d.name == c.name) {
                return Err(Error::Schema(format!("duplicate column name `{}`", c.name)));
            }
        }
        Ok(Self { columns })
    }

    pub fn columns(&self) -> &[ColumnSpec] {
        &self.columns
    }

    /// Names of numeric columns, in schema order.
    pub fn numeric_names(&self) -> Vec<&str> {
        self.names_with_role(Role::Numeric)
    }

    /// Names of text columns, in schema order.
    pub fn text_names(&self) -> Vec<&str> {
        self.names_with_role(Role::Text)
    }

    pub fn label_name(&self) -> &str {
        self.columns
            .iter()
            .find(|c| c.role == Role::Label)
            .map(|c| c.name.as_str())
            .expect("schema invariant: one label column")
    }

    fn names_with_role(&self, role: Role) -> Vec<&str> {
        self.columns
            .iter()
            .filter(|c| c.role == role)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn n_numeric(&self) -> usize {
        self.columns.iter().filter(|c| c.role == Role::Numeric).count()
    }

    pub fn n_text(&self) -> usize {
        self.columns.iter().filter(|c| c.role == Role::Text).count()
    }
}

/// An encoded stage class in 0..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StageLabel(u8);

impl StageLabel {
    /// The encoded class index.
    pub fn class(self) -> usize {
        self.0 as usize
    }

    /// Builds a label from an already-encoded class index.
    pub fn from_class(class: usize) -> Result<Self> {
        if class < N_STAGES {
            Ok(Self(class as u8))
        } else {
            Err(Error::InvalidParameter(format!("class {class} out of range 0..{N_STAGES}")))
        }
    }

    /// The raw AJCC code (100/200/300/400) this label decodes to.
    pub fn ajcc_code(self) -> i64 {
        (self.0 as i64 + 1) * 100
    }
}

/// Encodes a raw AJCC code: 100→0, 200→1, 300→2, 400→3.
pub fn encode_stage(raw: i64) -> Result<StageLabel> {
    match raw {
        100 => Ok(StageLabel(0)),
        200 => Ok(StageLabel(1)),
        300 => Ok(StageLabel(2)),
        400 => Ok(StageLabel(3)),
        other => Err(Error::UnknownStageCode(other)),
    }
}

/// Row-aligned numeric matrix, text table and labels under one schema.
///
/// Missing numeric cells are NaN; missing text cells are empty strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub schema: Schema,
    /// rows × numeric columns; NaN = missing.
    pub numeric: Array2<f64>,
    /// rows × text columns; "" = missing.
    pub text: Vec<Vec<String>>,
    pub labels: Vec<StageLabel>,
}

impl Dataset {
    /// Builds a dataset, checking row and column counts against the schema.
    pub fn new(
        schema: Schema,
        numeric: Array2<f64>,
        text: Vec<Vec<String>>,
        labels: Vec<StageLabel>,
    ) -> Result<Self> {
        let rows = labels.len();
        if numeric.nrows() != rows || text.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "rows disagree: numeric {}, text {}, labels {}",
                numeric.nrows(),
                text.len(),
                rows
            )));
        }
        if numeric.ncols() != schema.n_numeric() {
            return Err(Error::DimensionMismatch(format!(
                "numeric columns {} != schema {}",
                numeric.ncols(),
                schema.n_numeric()
            )));
        }
        if let Some(bad) = text.iter().position(|r| r.len() != schema.n_text()) {
            return Err(Error::DimensionMismatch(format!(
                "text row {bad} has {} cells, schema names {}",
                text[bad].len(),
                schema.n_text()
            )));
        }
        Ok(Self { schema, numeric, text, labels })
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    /// Encoded class per row.
    pub fn classes(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.class()).collect()
    }

    /// Per-class row counts over all [`N_STAGES`] classes.
    pub fn class_counts(&self) -> [usize; N_STAGES] {
        let mut counts = [0usize; N_STAGES];
        for l in &self.labels {
            counts[l.class()] += 1;
        }
        counts
    }

    /// A new dataset holding `rows` in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Dataset {
        let ncols = self.numeric.ncols();
        let mut numeric = Array2::zeros((rows.len(), ncols));
        for (out, &r) in rows.iter().enumerate() {
            numeric.row_mut(out).assign(&self.numeric.row(r));
        }
        Dataset {
            schema: self.schema.clone(),
            numeric,
            text: rows.iter().map(|&r| self.text[r].clone()).collect(),
            labels: rows.iter().map(|&r| self.labels[r]).collect(),
        }
    }
}

/// Stratified train/test split on label classes, returning (train, test) row
/// indices in ascending order.
///
/// Per-class test counts are the largest-remainder rounding of
/// `count_c × test_fraction` against a global total of
/// `round(n × test_fraction)`. Single-row classes stay in training, and every
/// class keeps at least one training row.
pub fn stratified_split_indices(
    classes: &[usize],
    test_fraction: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if classes.is_empty() {
        return Err(Error::EmptyInput("stratified split"));
    }
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "test fraction must lie in (0, 1), got {test_fraction}"
        )));
    }
    let n_classes = classes.iter().max().unwrap() + 1;
    let mut per_class: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
    for (i, &c) in classes.iter().enumerate() {
        per_class[c].push(i);
    }

    let mut rng = stream_rng(seed, Stream::TrainTestSplit, 0);
    for members in per_class.iter_mut() {
        members.shuffle(&mut rng);
    }

    let total_target = libm::floor(classes.len() as f64 * test_fraction + 0.5) as usize;
    let quotas: Vec<f64> = per_class.iter().map(|m| m.len() as f64 * test_fraction).collect();
    let mut take: Vec<usize> = quotas.iter().map(|&q| libm::floor(q) as usize).collect();
    // Cap: a class never sends its last training row to the test set.
    for (c, members) in per_class.iter().enumerate() {
        if !members.is_empty() {
            take[c] = take[c].min(members.len() - 1);
        }
    }
    let mut extras = total_target.saturating_sub(take.iter().sum::<usize>());
    // Largest remainders first; ties favor the lower class index.
    let mut order: Vec<usize> = (0..n_classes).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - libm::floor(quotas[a]);
        let rb = quotas[b] - libm::floor(quotas[b]);
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    for &c in order.iter().cycle().take(order.len() * 2) {
        if extras == 0 {
            break;
        }
        if per_class[c].len() >= 2 && take[c] < per_class[c].len() - 1 {
            take[c] += 1;
            extras -= 1;
        }
    }

    let mut test: Vec<usize> = Vec::new();
    let mut train: Vec<usize> = Vec::new();
    for (c, members) in per_class.iter().enumerate() {
        test.extend_from_slice(&members[..take[c]]);
        train.extend_from_slice(&members[take[c]..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

/// Stratified 80/20-style split into (train, test) datasets.
pub fn split_train_test(ds: &Dataset, test_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    let (train_idx, test_idx) = stratified_split_indices(&ds.classes(), test_fraction, seed)?;
    Ok((ds.select_rows(&train_idx), ds.select_rows(&test_idx)))
}
