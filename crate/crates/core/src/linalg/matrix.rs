use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::poly::DensePolynomial;
use crate::galois::{Elem, FieldError, FieldRef, UnityContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Dense row-major matrix over a finite field.
#[derive(Clone)]
pub struct MatrixOverField {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for MatrixOverField {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for MatrixOverField {}

impl fmt::Debug for MatrixOverField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for MatrixOverField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|&x| self.field.format_elem(x)).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = cells[r * self.cols..(r + 1) * self.cols]
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl MatrixOverField {
    pub fn zeros(field: &FieldRef, rows: usize, cols: usize) -> Self {
        MatrixOverField { field: Arc::clone(field), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldRef, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &FieldRef, rows: Vec<Vec<Elem>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(MatrixError::DimensionMismatch(r, c, 1, bad.len()));
        }
        if let Some(&x) = rows.iter().flatten().find(|&&x| !field.contains(x)) {
            return Err(FieldError::NotAnElement(x, field.order()).into());
        }
        Ok(MatrixOverField { field: Arc::clone(field), rows: r, cols: c, data: rows.concat() })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// The first `k` rows.
    pub fn top_rows(&self, k: usize) -> Self {
        let k = k.min(self.rows);
        MatrixOverField { field: Arc::clone(&self.field), rows: k, cols: self.cols, data: self.data[..k * self.cols].to_vec() }
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn check_field(&self, other: &Self) -> Result<(), MatrixError> {
        if *self.field != *other.field {
            return Err(MatrixError::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(MatrixOverField { field: Arc::clone(f), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: Elem) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        MatrixOverField { field: Arc::clone(f), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Entry-wise Frobenius conjugate.
    pub fn conjugate(&self) -> Result<Self, MatrixError> {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.conjugate(a)).collect::<Result<_, _>>()?;
        Ok(MatrixOverField { field: Arc::clone(f), rows: self.rows, cols: self.cols, data })
    }

    pub fn conjugate_transpose(&self) -> Result<Self, MatrixError> {
        Ok(self.conjugate()?.transpose())
    }

    /// `(self | other)`
    pub fn hconcat(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(MatrixError::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    /// `(self ; other)`
    pub fn vconcat(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatrixOverField { field: Arc::clone(&self.field), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Copies the matrix into the extension field of `ctx`.
    pub fn embed(&self, ctx: &UnityContext) -> Self {
        debug_assert_eq!(*ctx.base, *self.field);
        let data = self.data.iter().map(|&a| ctx.embed(a)).collect();
        MatrixOverField { field: Arc::clone(&ctx.ext), rows: self.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and pivot columns. Pivot = first nonzero entry in
    /// the column at or below the current row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<Elem, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1;
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| m.get(r, col) != 0) else {
                return Ok(0);
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = f.neg(det);
            }
            let pivot = m.get(col, col);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Rows spanning the right kernel `{y : self * y^T = 0}`.
    pub fn nullspace(&self) -> Self {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, f.neg(r.get(pr, fc)));
            }
        }
        out
    }

    /// Horner evaluation `poly(self)`.
    pub fn poly_eval(&self, poly: &DensePolynomial) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        if **poly.field() != *self.field {
            return Err(MatrixError::FieldMismatch);
        }
        let n = self.rows;
        let f = &self.field;
        let mut acc = Self::zeros(f, n, n);
        for &c in poly.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `self - lambda I`
    pub fn sub_scalar_identity(&self, lambda: Elem) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out.set(i, i, self.field.sub(self.get(i, i), lambda));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    fn cofactor_det(f: &crate::galois::GaloisField, m: &[Vec<Elem>]) -> Elem {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        let mut acc = 0;
        for c in 0..n {
            let minor: Vec<Vec<Elem>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
                .collect();
            let term = f.mul(m[0][c], cofactor_det(f, &minor));
            acc = if c % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
        }
        acc
    }

    #[test]
    fn det_of_singular_t2() {
        let f = make_field(2, 1).unwrap();
        let m = MatrixOverField::from_rows(&f, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.det().unwrap(), 0);
    }

    #[test]
    fn identity_rank() {
        let f = make_field(3, 1).unwrap();
        for n in 0..6 {
            assert_eq!(MatrixOverField::identity(&f, n).rank(), n);
        }
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)] {
            let f = make_field(p, m).unwrap();
            for _ in 0..40 {
                let n = rng.gen_range(1..=5);
                let rows: Vec<Vec<Elem>> =
                    (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..f.order())).collect()).collect();
                let mat = MatrixOverField::from_rows(&f, rows.clone()).unwrap();
                let d = cofactor_det(&f, &rows);
                assert_eq!(mat.det().unwrap(), d);
                assert_eq!(mat.rank() == n, d != 0);
            }
        }
    }

    #[test]
    fn nullspace_is_orthogonal_and_complementary() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let f = make_field(5, 1).unwrap();
        for _ in 0..30 {
            let (r, c) = (rng.gen_range(1..5), rng.gen_range(1..8));
            let rows: Vec<Vec<Elem>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..5)).collect()).collect();
            let m = MatrixOverField::from_rows(&f, rows).unwrap();
            let ns = m.nullspace();
            assert_eq!(ns.rows() + m.rank(), c);
            assert!(m.mul(&ns.transpose()).unwrap().is_zero());
            assert_eq!(ns.rank(), ns.rows());
        }
    }

    #[test]
    fn errors() {
        let f = make_field(2, 1).unwrap();
        let a = MatrixOverField::zeros(&f, 2, 3);
        assert!(matches!(a.mul(&a), Err(MatrixError::DimensionMismatch(..))));
        assert!(matches!(a.det(), Err(MatrixError::NotSquare(2, 3))));
        assert!(matches!(a.conjugate(), Err(MatrixError::Field(_))));
        assert!(MatrixOverField::from_rows(&f, vec![vec![1, 0], vec![1]]).is_err());
        assert!(MatrixOverField::from_rows(&f, vec![vec![2]]).is_err());
        let poly = DensePolynomial::monomial(&f, 1);
        assert!(matches!(a.poly_eval(&poly), Err(MatrixError::NotSquare(..))));
    }

    #[test]
    fn poly_eval_basics() {
        let f = make_field(3, 1).unwrap();
        let a = MatrixOverField::from_rows(&f, vec![vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(a.poly_eval(&DensePolynomial::monomial(&f, 1)).unwrap(), a);
        assert_eq!(
            a.poly_eval(&DensePolynomial::constant(&f, 2)).unwrap(),
            MatrixOverField::identity(&f, 2).scale(2)
        );
        assert!(a.poly_eval(&DensePolynomial::zero(&f)).unwrap().is_zero());
        let x3 = DensePolynomial::monomial(&f, 3);
        assert_eq!(a.poly_eval(&x3).unwrap(), a.pow(3).unwrap());
    }
}
