//! Linear codes: duals, Gram matrices, hulls, exact weight enumeration,
//! MacWilliams transform and the Griesmer bound.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerate::{self, Exec};
use crate::galois::{FieldError, FieldRef};
use crate::linalg::{MatrixError, MatrixOverField};

/// Default enumeration budget: at most `2^26` codewords.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InnerProduct {
    /// `<x, y> = sum x_i y_i`
    Euclidean,
    /// `<x, y> = sum x_i y_i^q` over GF(q^2)
    Hermitian,
}

impl fmt::Display for InnerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InnerProduct::Euclidean => "E",
            InnerProduct::Hermitian => "H",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("generator matrix is zero")]
    ZeroGenerator,
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("enumeration needs {q}^{k} codewords, over the budget of {budget}")]
    BudgetExceeded { q: u32, k: usize, budget: u64 },
    #[error("malformed weight distribution: {0}")]
    MalformedDistribution(String),
    #[error("integer overflow in the MacWilliams transform")]
    Overflow,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A linear code given by a full-rank generator in reduced row echelon form.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: MatrixOverField,
    inner: InnerProduct,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]_{} inner={}", self.length(), self.dimension(), self.field().order(), self.inner)
    }
}

impl LinearCode {
    /// Row space of `g`. Dependent rows are dropped.
    pub fn from_generator(g: &MatrixOverField, inner: InnerProduct) -> Result<Self, CodeError> {
        if g.rows() == 0 || g.is_zero() {
            return Err(CodeError::ZeroGenerator);
        }
        if inner == InnerProduct::Hermitian && g.field().quadratic_base().is_none() {
            return Err(FieldError::NoQuadraticStructure(g.field().order()).into());
        }
        Ok(Self::span(g, inner))
    }

    fn span(g: &MatrixOverField, inner: InnerProduct) -> Self {
        let (r, pivots) = g.rref();
        LinearCode { generator: r.top_rows(pivots.len()), inner }
    }

    pub fn field(&self) -> &FieldRef {
        self.generator.field()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &MatrixOverField {
        &self.generator
    }

    pub fn inner(&self) -> InnerProduct {
        self.inner
    }

    /// Dual under the code's own inner product. The dual of the full space is
    /// the zero code (dimension 0).
    pub fn dual(&self) -> LinearCode {
        let h = self.generator.nullspace();
        let h = match self.inner {
            InnerProduct::Euclidean => h,
            // y is Hermitian-orthogonal to C iff conj(y) is Euclidean-orthogonal
            InnerProduct::Hermitian => h.conjugate().expect("checked at construction"),
        };
        Self::span(&h, self.inner)
    }

    /// `G G^T` or `G conj(G)^T`.
    pub fn gram_matrix(&self) -> MatrixOverField {
        let g = &self.generator;
        let rhs = match self.inner {
            InnerProduct::Euclidean => g.transpose(),
            InnerProduct::Hermitian => g.conjugate_transpose().expect("checked at construction"),
        };
        g.mul(&rhs).expect("conformable")
    }

    /// `K - rank(Gram)`.
    pub fn hull_dimension(&self) -> usize {
        self.dimension() - self.gram_matrix().rank()
    }

    /// `dim C + dim C^perp - dim(C + C^perp)`.
    pub fn hull_dimension_by_intersection(&self) -> usize {
        let d = self.dual();
        let stacked = self.generator.vconcat(d.generator()).expect("same length");
        self.dimension() + d.dimension() - stacked.rank()
    }

    pub fn is_lcd(&self) -> bool {
        self.dimension() == 0 || self.gram_matrix().det().expect("square") != 0
    }

    /// `q^K` if it fits in the budget.
    pub fn check_budget(&self, budget: u64) -> Result<u64, CodeError> {
        let over = || CodeError::BudgetExceeded { q: self.field().order(), k: self.dimension(), budget };
        let total = enumerate::codeword_count(self.field(), self.dimension()).ok_or_else(over)?;
        if total > budget {
            return Err(over());
        }
        Ok(total)
    }

    /// `A_0..A_N` by exhaustive enumeration.
    pub fn weight_distribution(&self, budget: u64, exec: Exec) -> Result<Vec<u64>, CodeError> {
        self.check_budget(budget)?;
        if self.dimension() == 0 {
            let mut w = vec![0; self.length() + 1];
            w[0] = 1;
            return Ok(w);
        }
        Ok(enumerate::weight_histogram(self.field(), &self.generator, exec))
    }

    pub fn min_distance(&self, budget: u64, exec: Exec) -> Result<usize, CodeError> {
        if self.dimension() == 0 {
            return Err(CodeError::ZeroCode);
        }
        let w = self.weight_distribution(budget, exec)?;
        Ok(min_weight(&w).expect("nonzero code"))
    }

    pub fn is_formally_self_dual(&self, budget: u64, exec: Exec) -> Result<bool, CodeError> {
        let w = self.weight_distribution(budget, exec)?;
        is_fsd_distribution(&w, self.dimension(), self.field().order())
    }

    pub fn report(&self, budget: u64, exec: Exec) -> Result<CodeReport, CodeError> {
        let q = self.field().order();
        let (n, k) = (self.length(), self.dimension());
        let w = self.weight_distribution(budget, exec)?;
        let d = min_weight(&w).ok_or(CodeError::ZeroCode)?;
        let hull = self.hull_dimension();
        Ok(CodeReport {
            n,
            k,
            d,
            q,
            inner: self.inner,
            hull_dim: hull,
            is_lcd: hull == 0,
            is_fsd: is_fsd_distribution(&w, k, q)?,
            griesmer_defect: griesmer_defect(n, k, d, q),
            weight_distribution: w,
        })
    }
}

/// Smallest positive weight present in a distribution.
pub fn min_weight(w: &[u64]) -> Option<usize> {
    (1..w.len()).find(|&i| w[i] > 0)
}

fn is_fsd_distribution(w: &[u64], k: usize, q: u32) -> Result<bool, CodeError> {
    let n = w.len() - 1;
    Ok(macwilliams_dual_distribution(w, n, k, q)? == w)
}

/// Parameters and analytics of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub q: u32,
    pub inner: InnerProduct,
    pub hull_dim: usize,
    pub is_lcd: bool,
    pub is_fsd: bool,
    pub griesmer_defect: i64,
    pub weight_distribution: Vec<u64>,
}

impl CodeReport {
    pub fn params(&self) -> (usize, usize, usize) {
        (self.n, self.k, self.d)
    }

    /// `i,A_i` rows for the nonzero entries, with a header.
    pub fn weight_csv(&self) -> String {
        let mut out = String::from("i,A_i\n");
        for (i, &a) in self.weight_distribution.iter().enumerate() {
            if a > 0 {
                out.push_str(&format!("{i},{a}\n"));
            }
        }
        out
    }
}

impl fmt::Display for CodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { 'y' } else { 'n' };
        write!(
            f,
            "[{},{},{}]_{} inner={} hull={} lcd={} fsd={} griesmer_defect={}",
            self.n,
            self.k,
            self.d,
            self.q,
            self.inner,
            self.hull_dim,
            yn(self.is_lcd),
            yn(self.is_fsd),
            self.griesmer_defect
        )
    }
}

fn binomials(n: usize) -> Vec<Vec<i128>> {
    let mut c = vec![vec![0i128; n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
        }
    }
    c
}

/// Weight distribution of the dual from that of an `[n, k]` code over GF(q):
/// `B_j = q^-k sum_i A_i K_j(i)` with Krawtchouk polynomials `K_j`.
pub fn macwilliams_dual_distribution(w: &[u64], n: usize, k: usize, q: u32) -> Result<Vec<u64>, CodeError> {
    if w.len() != n + 1 {
        return Err(CodeError::MalformedDistribution(format!("expected {} entries, got {}", n + 1, w.len())));
    }
    if w[0] != 1 {
        return Err(CodeError::MalformedDistribution(format!("A_0 = {}", w[0])));
    }
    let size = (q as i128).checked_pow(k as u32).ok_or(CodeError::Overflow)?;
    let total: i128 = w.iter().map(|&a| a as i128).sum();
    if total != size {
        return Err(CodeError::MalformedDistribution(format!("sum {total} is not {q}^{k}")));
    }
    let c = binomials(n);
    let q1 = q as i128 - 1;
    let mut pw = vec![1i128; n + 1];
    for j in 1..=n {
        pw[j] = pw[j - 1].checked_mul(q1).ok_or(CodeError::Overflow)?;
    }
    let ovf = || CodeError::Overflow;
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc: i128 = 0;
        for (i, &a) in w.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut kj: i128 = 0;
            for s in 0..=j.min(i) {
                if j - s > n - i {
                    continue;
                }
                let term = c[i][s]
                    .checked_mul(c[n - i][j - s])
                    .and_then(|t| t.checked_mul(pw[j - s]))
                    .ok_or_else(ovf)?;
                kj = if s % 2 == 0 { kj.checked_add(term) } else { kj.checked_sub(term) }.ok_or_else(ovf)?;
            }
            acc = acc.checked_add(kj.checked_mul(a as i128).ok_or_else(ovf)?).ok_or_else(ovf)?;
        }
        if acc % size != 0 || acc < 0 {
            return Err(CodeError::MalformedDistribution(format!("B_{j} = {acc}/{size} is not a count")));
        }
        out.push(u64::try_from(acc / size).map_err(|_| CodeError::Overflow)?);
    }
    Ok(out)
}

/// `N - sum_{i<K} ceil(D / q^i)`; negative values mean no such code exists.
pub fn griesmer_defect(n: usize, k: usize, d: usize, q: u32) -> i64 {
    let mut sum: i64 = 0;
    let mut qi: u128 = 1;
    for _ in 0..k {
        sum += (d as u128).div_ceil(qi) as i64;
        qi = qi.saturating_mul(q as u128);
    }
    n as i64 - sum
}
