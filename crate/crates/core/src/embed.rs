//! Dense per-row text vectors: field concatenation, a signed feature-hashing
//! embedder, and validated ingestion of precomputed embeddings.
//!
//! The hashing embedder is the dependency-free stand-in for an external
//! contextual encoder; any row-aligned dense representation can be supplied
//! instead through [`EmbeddingMatrix::from_precomputed`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Where an embedding matrix came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingSource {
    Precomputed,
    Hashing,
}

/// A rows × dim matrix of finite reals, row-aligned with the dataset it was
/// built for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingMatrix {
    pub data: Array2<f64>,
    pub source: EmbeddingSource,
}

impl EmbeddingMatrix {
    /// Wraps externally computed vectors, enforcing row count and finiteness.
    pub fn from_precomputed(data: Array2<f64>, expected_rows: usize) -> Result<Self> {
        if data.nrows() != expected_rows {
            return Err(Error::DimensionMismatch(format!(
                "embedding row count {} does not match dataset rows {}",
                data.nrows(),
                expected_rows
            )));
        }
        if let Some(((i, j), v)) =
            data.indexed_iter().find(|(_, v)| !v.is_finite())
        {
            return Err(Error::NonFinite(format!("embedding cell ({i}, {j}) = {v}")));
        }
        Ok(Self { data, source: EmbeddingSource::Precomputed })
    }

    pub fn n_rows(&self) -> usize {
        self.data.nrows()
    }

    pub fn dim(&self) -> usize {
        self.data.ncols()
    }

    /// The embedding rows for `rows`, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> EmbeddingMatrix {
        let mut data = Array2::zeros((rows.len(), self.dim()));
        for (out, &r) in rows.iter().enumerate() {
            data.row_mut(out).assign(&self.data.row(r));
        }
        EmbeddingMatrix { data, source: self.source }
    }
}

/// Joins a row's text fields in schema order with single spaces.
pub fn concat_text_fields(ds: &Dataset, row: usize) -> String {
    ds.text[row].join(" ")
}

/// All rows of `ds` through [`concat_text_fields`].
pub fn concat_all_rows(ds: &Dataset) -> Vec<String> {
    (0..ds.n_rows()).map(|r| concat_text_fields(ds, r)).collect()
}

/// Token hash used by the hashing embedder. The exact algorithm is normative
/// so that independent implementations can reproduce vectors bit-for-bit:
///
/// 1. `h = splitmix64(seed XOR 0xA0761D6478BD642F)` where `splitmix64(z)` is
///    `z += 0x9E3779B97F4A7C15; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9;
///     z = (z ^ z>>27) * 0x94D049BB133111EB; z ^ z>>31` (wrapping).
/// 2. For each UTF-8 byte `b` of the token: `h = (h XOR b) * 0x100000001B3`
///    (wrapping; the FNV-1a 64 multiplier).
/// 3. Finalize: `h ^= h>>33; h *= 0xFF51AFD7ED558CCD; h ^= h>>33;
///    h *= 0xC4CEB9FE1A85EC53; h ^= h>>33` (wrapping).
///
/// Bucket = `h mod dim`; sign is `+1` when bit 63 of `h` is clear, else `-1`.
pub fn token_hash(token: &str, seed: u64) -> u64 {
    let mut h = splitmix64(seed ^ 0xA076_1D64_78BD_642F);
    for &b in token.as_bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01B3);
    }
    h ^= h >> 33;
    h = h.wrapping_mul(0xFF51_AFD7_ED55_8CCD);
    h ^= h >> 33;
    h = h.wrapping_mul(0xC4CE_B9FE_1A85_EC53);
    h ^= h >> 33;
    h
}

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Lowercases, splits on runs of non-alphanumeric characters and drops empty
/// pieces.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(String::from)
        .collect()
}

/// Signed feature hashing: each token adds ±1 into its bucket, then nonzero
/// rows are L2-normalized. Empty texts produce zero vectors.
pub fn embed_hashing(texts: &[String], dim: usize, seed: u64) -> Result<EmbeddingMatrix> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("hashing dim must be >= 2, got {dim}")));
    }
    let mut data = Array2::zeros((texts.len(), dim));
    for (i, text) in texts.iter().enumerate() {
        for token in tokenize(text) {
            let h = token_hash(&token, seed);
            let bucket = (h % dim as u64) as usize;
            let sign = if h >> 63 == 0 { 1.0 } else { -1.0 };
            data[[i, bucket]] += sign;
        }
        let norm = libm::sqrt(data.row(i).iter().map(|v| v * v).sum::<f64>());
        if norm > 0.0 {
            data.row_mut(i).mapv_inplace(|v| v / norm);
        }
    }
    Ok(EmbeddingMatrix { data, source: EmbeddingSource::Hashing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{ColumnSpec, Role, Schema, StageLabel};
    use alloc::string::ToString;
    use alloc::vec;
    use ndarray::Array2;

    fn text_ds(rows: Vec<Vec<&str>>) -> Dataset {
        let n_text = rows[0].len();
        let mut cols: Vec<ColumnSpec> = (0..n_text)
            .map(|i| ColumnSpec { name: format!("t{i}"), role: Role::Text })
            .collect();
        cols.push(ColumnSpec { name: "pros_stage".into(), role: Role::Label });
        let n = rows.len();
        Dataset::new(
            Schema::new(cols).unwrap(),
            Array2::zeros((n, 0)),
            rows.into_iter()
                .map(|r| r.into_iter().map(|s| s.to_string()).collect())
                .collect(),
            vec![StageLabel::from_class(0).unwrap(); n],
        )
        .unwrap()
    }

    #[test]
    fn concat_joins_in_schema_order() {
        let ds = text_ds(vec![vec!["enlarged prostate", "negative"]]);
        assert_eq!(concat_text_fields(&ds, 0), "enlarged prostate negative");
        let ds = text_ds(vec![vec!["Unknown", "Unknown"]]);
        assert_eq!(concat_text_fields(&ds, 0), "Unknown Unknown");
    }

    #[test]
    fn concat_of_zero_text_columns_is_empty() {
        let schema = Schema::new(vec![
            ColumnSpec { name: "x".into(), role: Role::Numeric },
            ColumnSpec { name: "pros_stage".into(), role: Role::Label },
        ])
        .unwrap();
        let ds = Dataset::new(
            schema,
            Array2::zeros((1, 1)),
            vec![vec![]],
            vec![StageLabel::from_class(0).unwrap()],
        )
        .unwrap();
        assert_eq!(concat_text_fields(&ds, 0), "");
    }

    #[test]
    fn identical_strings_embed_identically() {
        let texts = vec!["nodular firm lobe".to_string(), "nodular firm lobe".to_string()];
        let m = embed_hashing(&texts, 32, 9).unwrap();
        assert_eq!(m.data.row(0), m.data.row(1));
    }

    #[test]
    fn empty_string_embeds_to_zero() {
        let m = embed_hashing(&[String::new()], 16, 1).unwrap();
        assert!(m.data.row(0).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn nonempty_rows_have_unit_norm() {
        let texts = vec!["a b c".to_string(), "psa rising trend".to_string()];
        let m = embed_hashing(&texts, 64, 3).unwrap();
        for row in m.data.rows() {
            let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn token_multiset_determines_vector() {
        let a = embed_hashing(&["alpha beta gamma".to_string()], 64, 5).unwrap();
        let b = embed_hashing(&["gamma alpha beta".to_string()], 64, 5).unwrap();
        assert_eq!(a.data, b.data);
    }

    #[test]
    fn row_permutation_permutes_output() {
        let texts: Vec<String> =
            ["one two", "three", "four five six"].iter().map(|s| s.to_string()).collect();
        let m = embed_hashing(&texts, 32, 7).unwrap();
        let permuted: Vec<String> = vec![texts[2].clone(), texts[0].clone(), texts[1].clone()];
        let p = embed_hashing(&permuted, 32, 7).unwrap();
        assert_eq!(m.data.row(0), p.data.row(1));
        assert_eq!(m.data.row(1), p.data.row(2));
        assert_eq!(m.data.row(2), p.data.row(0));
    }

    /// Independent literal reimplementation of the documented hash scheme.
    fn oracle_embed(text: &str, dim: usize, seed: u64) -> Vec<f64> {
        fn sm(mut z: u64) -> u64 {
            z = z.wrapping_add(0x9E3779B97F4A7C15);
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            z ^ (z >> 31)
        }
        let mut acc = vec![0.0f64; dim];
        let lower = text.to_lowercase();
        for tok in lower.split(|c: char| !c.is_alphanumeric()) {
            if tok.is_empty() {
                continue;
            }
            let mut h = sm(seed ^ 0xA0761D6478BD642F);
            for &b in tok.as_bytes() {
                h = (h ^ b as u64).wrapping_mul(0x100000001B3);
            }
            h ^= h >> 33;
            h = h.wrapping_mul(0xFF51AFD7ED558CCD);
            h ^= h >> 33;
            h = h.wrapping_mul(0xC4CEB9FE1A85EC53);
            h ^= h >> 33;
            let bucket = (h % dim as u64) as usize;
            acc[bucket] += if h >> 63 == 0 { 1.0 } else { -1.0 };
        }
        let norm = acc.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            for v in acc.iter_mut() {
                *v /= norm;
            }
        }
        acc
    }

    #[test]
    fn cosine_similarity_matches_independent_reimplementation() {
        let s1 = "induration of the left lobe, repeat psa advised";
        let s2 = "Unknown screening normal; no nodules seen";
        let dim = 64;
        let m = embed_hashing(&[s1.to_string(), s2.to_string()], dim, 17).unwrap();
        let o1 = oracle_embed(s1, dim, 17);
        let o2 = oracle_embed(s2, dim, 17);
        for j in 0..dim {
            assert_eq!(m.data[[0, j]], o1[j]);
            assert_eq!(m.data[[1, j]], o2[j]);
        }
        let cos = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let impl_cos: f64 = m.data.row(0).iter().zip(m.data.row(1)).map(|(x, y)| x * y).sum();
        assert_eq!(impl_cos, cos(&o1, &o2));
    }

    #[test]
    fn precomputed_checks_rows_and_finiteness() {
        let good = Array2::from_shape_vec((2, 3), vec![0.0; 6]).unwrap();
        assert!(EmbeddingMatrix::from_precomputed(good.clone(), 2).is_ok());
        assert!(matches!(
            EmbeddingMatrix::from_precomputed(good.clone(), 3),
            Err(Error::DimensionMismatch(_))
        ));
        let mut bad = good;
        bad[[1, 2]] = f64::INFINITY;
        assert!(matches!(
            EmbeddingMatrix::from_precomputed(bad, 2),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn hashing_dim_guard() {
        assert!(embed_hashing(&[], 1, 0).is_err());
    }
}
