use std::fmt;
use std::sync::Arc;

use crate::galois::{Elem, FieldRef, UnityContext};

/// Dense univariate polynomial over a finite field, ascending coefficients,
/// no trailing zeros.
#[derive(Clone)]
pub struct DensePolynomial {
    field: FieldRef,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.field)
    }
}

impl PartialEq for DensePolynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for DensePolynomial {}

impl DensePolynomial {
    pub fn new(field: &FieldRef, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        DensePolynomial { field: Arc::clone(field), coeffs }
    }

    pub fn zero(field: &FieldRef) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: &FieldRef, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `x^e`
    pub fn monomial(field: &FieldRef, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = 1;
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluates at a point of `ctx.ext`, embedding the coefficients.
    pub fn eval_ext(&self, ctx: &UnityContext, x: Elem) -> Elem {
        debug_assert_eq!(*ctx.base, *self.field);
        let e = &ctx.ext;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| e.add(e.mul(acc, x), ctx.embed(c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add(a, b)
            })
            .collect();
        Self::new(f, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut coeffs = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Self::new(f, coeffs)
    }

    /// Coefficient-wise Frobenius conjugation (requires a quadratic field).
    pub fn conjugate(&self) -> Option<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| self.field.conjugate(c).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new(&self.field, coeffs))
    }
}

impl fmt::Display for DensePolynomial {
    /// Same syntax the parser accepts, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let coef = self.field.format_elem(c);
            match (e, c) {
                (0, _) => f.write_str(&coef)?,
                (_, 1) => {}
                _ => write!(f, "{coef}*")?,
            }
            match e {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Second-kind Dickson polynomial `E_n(x, alpha)` by its three-term recurrence,
/// `E_0 = 1`, `E_1 = x`, `E_n = x E_{n-1} - alpha E_{n-2}`.
pub fn dickson_eval(field: &crate::galois::GaloisField, n: usize, x: Elem, alpha: Elem) -> Elem {
    if n == 0 {
        return 1;
    }
    let (mut prev, mut cur) = (1, x);
    for _ in 1..n {
        let next = field.sub(field.mul(x, cur), field.mul(alpha, prev));
        prev = cur;
        cur = next;
    }
    cur
}
