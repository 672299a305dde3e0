//! Exhaustive search over polynomial tuples for LCD derivative codes of large
//! minimum distance.

use serde::Serialize;
use thiserror::Error;

use crate::codes::{CodeError, InnerProduct};
use crate::constructions::{spectral_verdict, ConstructionError, ConstructionSpec, Decision};
use crate::enumerate::Exec;
use crate::galois::Elem;
use crate::linalg::{DensePolynomial, TridiagonalSpec};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub tridiag: TridiagonalSpec,
    pub inner: InnerProduct,
    /// Index of the derivative code; `t - 1` polynomials are chosen.
    pub t: usize,
    pub max_degree: usize,
    /// Values each coefficient ranges over.
    pub coefficients: Vec<Elem>,
    /// Enumeration budget per candidate code.
    pub budget: u64,
    /// Upper bound on the number of candidate tuples.
    pub max_candidates: u64,
    /// Screen candidates with the spectral predicate instead of the Gram matrix.
    pub spectral_filter: bool,
    pub exec: Exec,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search space has {size} candidates, over the limit of {limit}")]
    SpaceTooLarge { size: u128, limit: u64 },
    #[error("index t must be at least 2")]
    BadIndex,
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRow {
    /// Concatenated ascending coefficient vectors, `max_degree + 1` per polynomial.
    pub coefficients: Vec<Elem>,
    pub polynomials: Vec<String>,
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

impl SearchConfig {
    /// Number of candidate tuples, `|coefficients|^((max_degree + 1)(t - 1))`.
    pub fn space_size(&self) -> u128 {
        let slots = ((self.max_degree + 1) * self.t.saturating_sub(1)) as u32;
        (self.coefficients.len() as u128).checked_pow(slots).unwrap_or(u128::MAX)
    }

    fn candidate(&self, mut index: u128) -> Vec<Elem> {
        let base = self.coefficients.len() as u128;
        let slots = (self.max_degree + 1) * (self.t - 1);
        let mut v = vec![0; slots];
        // most significant slot first, so index order is lexicographic order of
        // positions within the coefficient list
        for slot in v.iter_mut().rev() {
            *slot = self.coefficients[(index % base) as usize];
            index /= base;
        }
        v
    }
}

/// Survivors sorted by distance descending, then by coefficient vector.
pub fn search(cfg: &SearchConfig) -> Result<Vec<SearchRow>, SearchError> {
    if cfg.t < 2 {
        return Err(SearchError::BadIndex);
    }
    let size = cfg.space_size();
    if size > cfg.max_candidates as u128 {
        return Err(SearchError::SpaceTooLarge { size, limit: cfg.max_candidates });
    }
    if cfg.coefficients.is_empty() {
        return Ok(Vec::new());
    }
    let field = cfg.tridiag.field.clone();
    let width = cfg.max_degree + 1;
    let indices: Vec<u128> = (0..size).collect();
    let results = cfg.exec.map(indices, |idx| -> Result<Option<SearchRow>, SearchError> {
        let coeffs = cfg.candidate(idx);
        let polys: Vec<DensePolynomial> =
            coeffs.chunks(width).map(|c| DensePolynomial::new(&field, c.to_vec())).collect();
        let spec = ConstructionSpec::derivative(cfg.tridiag.clone(), polys.clone(), cfg.inner)?;
        let lcd = if cfg.spectral_filter {
            let v = spectral_verdict(&spec)?;
            match v.decision {
                Decision::Lcd => true,
                Decision::Inconclusive => v.oracle_hull_dim == Some(0),
                _ => false,
            }
        } else {
            spec.code()?.is_lcd()
        };
        if !lcd {
            return Ok(None);
        }
        let code = spec.code()?;
        let d = code.min_distance(cfg.budget, Exec::Sequential)?;
        Ok(Some(SearchRow {
            coefficients: coeffs,
            polynomials: polys.iter().map(|p| p.to_string()).collect(),
            n: code.length(),
            k: code.dimension(),
            d,
        }))
    });
    let mut rows = Vec::new();
    for r in results {
        if let Some(row) = r? {
            rows.push(row);
        }
    }
    rows.sort_by(|x, y| y.d.cmp(&x.d).then_with(|| x.coefficients.cmp(&y.coefficients)));
    Ok(rows)
}
