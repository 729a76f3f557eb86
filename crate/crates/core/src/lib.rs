//! Core algorithms for multimodal cancer-stage classification.
//!
//! The crate covers the full modelling chain on in-memory data: column-role
//! datasets with stage labels, stage-wise median imputation, text embedding
//! (signed feature hashing or ingested precomputed vectors), variance-threshold
//! PCA, SMOTE oversampling, class-weighted random forests, stratified
//! cross-validation with fold-local preprocessing, averaging/stacking
//! ensembles, multiclass evaluation metrics and exact/sampled Shapley
//! attributions.
//!
//! The crate is `no_std` (with `alloc`); all file formats, CSV/JSON parsing
//! and the command-line surface live in the companion `stagefuse-cli` crate.
//! Every operation that consumes randomness takes an explicit seed and is
//! bit-for-bit reproducible, including under the optional `parallel` feature.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dataset;
pub mod embed;
pub mod ensembles;
pub mod error;
pub mod explain;
pub mod forest;
pub mod impute;
pub mod metrics;
pub mod pca;
pub mod pipeline;
pub mod resample;
pub mod rng;
pub mod synth;

pub use error::{Error, Result};

use alloc::vec::Vec;

/// Maps `0..n` through `f`, in parallel when the `parallel` feature is on.
///
/// Results are collected in index order, so parallel and serial execution
/// produce identical output.
#[cfg(feature = "parallel")]
pub(crate) fn indexed_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn indexed_map<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
