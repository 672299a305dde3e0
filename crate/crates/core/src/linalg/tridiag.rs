//! Tridiagonal Toeplitz matrices `T_n(a, b, c)` and their offset-2 variants
//! `T'_n(a, b, c)`, characteristic polynomials via second-kind Dickson
//! polynomials, and closed-form spectra.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::matrix::MatrixOverField;
use super::poly::dickson_eval;
use crate::galois::{Elem, ExtensionNeeds, FieldError, FieldRef, UnityContext, DEFAULT_FIELD_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TridiagKind {
    /// Off-diagonals at offsets -1 / +1.
    T,
    /// Off-diagonals at offsets -2 / +2.
    TPrime,
}

impl fmt::Display for TridiagKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TridiagKind::T => "T",
            TridiagKind::TPrime => "T'",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("b*c = 0: the closed-form spectrum needs a nonzero off-diagonal product")]
    DegenerateProduct,
    #[error("matrix order must be at least 1")]
    EmptyMatrix,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `T_n(a, b, c)` or `T'_n(a, b, c)`: `a` on the diagonal, `c` above, `b` below.
#[derive(Clone)]
pub struct TridiagonalSpec {
    pub field: FieldRef,
    pub kind: TridiagKind,
    pub n: usize,
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
}

impl fmt::Debug for TridiagonalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {:?}", self.field)
    }
}

impl fmt::Display for TridiagonalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fe = |x| self.field.format_elem(x);
        write!(f, "{}_{}({}, {}, {})", self.kind, self.n, fe(self.a), fe(self.b), fe(self.c))
    }
}

impl TridiagonalSpec {
    pub fn new(field: &FieldRef, kind: TridiagKind, n: usize, a: Elem, b: Elem, c: Elem) -> Self {
        TridiagonalSpec { field: Arc::clone(field), kind, n, a, b, c }
    }

    /// `T_n(a, b, b)`
    pub fn symmetric(field: &FieldRef, n: usize, a: Elem, b: Elem) -> Self {
        Self::new(field, TridiagKind::T, n, a, b, b)
    }

    /// `T_n(a, b, b^q)` over GF(q^2).
    pub fn hermitian(field: &FieldRef, n: usize, a: Elem, b: Elem) -> Result<Self, FieldError> {
        let c = field.conjugate(b)?;
        Ok(Self::new(field, TridiagKind::T, n, a, b, c))
    }

    pub fn with_kind(&self, kind: TridiagKind, n: usize) -> Self {
        TridiagonalSpec { kind, n, ..self.clone() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.b == self.c
    }

    /// `a` fixed by conjugation and `c = b^q`.
    pub fn is_hermitian(&self) -> bool {
        let f = &self.field;
        matches!(f.conjugate(self.a), Ok(x) if x == self.a)
            && matches!(f.conjugate(self.b), Ok(x) if x == self.c)
    }

    pub fn offset(&self) -> usize {
        match self.kind {
            TridiagKind::T => 1,
            TridiagKind::TPrime => 2,
        }
    }

    pub fn build(&self) -> MatrixOverField {
        let mut m = MatrixOverField::identity(&self.field, self.n).scale(self.a);
        let d = self.offset();
        for i in 0..self.n.saturating_sub(d) {
            m.set(i, i + d, self.c);
            m.set(i + d, i, self.b);
        }
        m
    }

    /// Orders of the `T` blocks whose characteristic polynomials multiply to this one.
    pub fn blocks(&self) -> Vec<usize> {
        match self.kind {
            TridiagKind::T => vec![self.n],
            TridiagKind::TPrime => {
                let hi = self.n.div_ceil(2);
                let lo = self.n / 2;
                if lo == 0 { vec![hi] } else { vec![hi, lo] }
            }
        }
    }

    /// A square root of `b c` in the base field, preferring the explicit roots
    /// `b` (symmetric) and `b^((q+1)/2)` / `b^((q+1) q^2 / 2)` (Hermitian).
    pub fn sqrt_bc_in_base(&self) -> Option<Elem> {
        let f = &self.field;
        if self.b == self.c {
            return Some(self.b);
        }
        if let Some(q) = f.quadratic_base() {
            if f.conjugate(self.b).ok() == Some(self.c) {
                let q = q as i64;
                let e = if f.is_even_char() { (q + 1) * q * q / 2 } else { (q + 1) / 2 };
                return f.pow(self.b, e);
            }
        }
        f.sqrt(f.mul(self.b, self.c))
    }

    /// Extension requirements for [`eigen_spectrum_in`].
    pub fn spectrum_needs(&self) -> ExtensionNeeds {
        let p = self.field.characteristic() as u64;
        let mut needs = ExtensionNeeds::default();
        for n in self.blocks() {
            let d = BlockDecomposition::new(n, p);
            needs.orders.push(d.theta_order(p));
        }
        needs.even_degree = self.sqrt_bc_in_base().is_none();
        needs
    }
}

/// `n + 1 = p^r (m + 1)` with `gcd(m + 1, p) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub n: usize,
    pub r: u32,
    pub m: usize,
    pub p_r: u64,
}

impl BlockDecomposition {
    pub fn new(n: usize, p: u64) -> Self {
        let mut rest = n as u64 + 1;
        let mut r = 0;
        let mut p_r = 1;
        while rest.is_multiple_of(p) {
            rest /= p;
            r += 1;
            p_r *= p;
        }
        BlockDecomposition { n, r, m: rest as usize - 1, p_r }
    }

    /// Order of the root of unity in the factorization: `m + 1` in
    /// characteristic 2, `2(m + 1)` otherwise.
    pub fn theta_order(&self, p: u64) -> u64 {
        let m1 = self.m as u64 + 1;
        if p == 2 { m1 } else { 2 * m1 }
    }
}

/// Eigenvalues with multiplicities, living in `ctx.ext`.
#[derive(Debug, Clone)]
pub struct SpectrumMultiset {
    pub ctx: UnityContext,
    pub pairs: Vec<(Elem, usize)>,
    pub blocks: Vec<BlockDecomposition>,
}

impl SpectrumMultiset {
    pub fn total_multiplicity(&self) -> usize {
        self.pairs.iter().map(|&(_, k)| k).sum()
    }

    /// Decomposition of the first (largest) block.
    pub fn r(&self) -> u32 {
        self.blocks[0].r
    }

    pub fn m(&self) -> usize {
        self.blocks[0].m
    }

    pub fn multiplicity_of(&self, x: Elem) -> usize {
        self.pairs.iter().filter(|&&(v, _)| v == x).map(|&(_, k)| k).sum()
    }

    fn push(&mut self, x: Elem, k: usize) {
        if k == 0 {
            return;
        }
        match self.pairs.iter_mut().find(|(v, _)| *v == x) {
            Some((_, mult)) => *mult += k,
            None => self.pairs.push((x, k)),
        }
    }
}

/// `det(T - lambda I)` for `lambda` in `ctx.ext`: `E_n(a - lambda, bc)` for `T`,
/// and the product over the two `T` blocks for `T'`.
pub fn char_poly_value(spec: &TridiagonalSpec, ctx: &UnityContext, lambda: Elem) -> Elem {
    let e = &ctx.ext;
    let x = e.sub(ctx.embed(spec.a), lambda);
    let alpha = ctx.embed(spec.field.mul(spec.b, spec.c));
    spec.blocks()
        .into_iter()
        .map(|n| dickson_eval(e, n, x, alpha))
        .fold(1, |acc, v| e.mul(acc, v))
}

pub fn spectrum_context(spec: &TridiagonalSpec, extra: ExtensionNeeds) -> Result<UnityContext, SpectrumError> {
    let mut needs = spec.spectrum_needs();
    needs.orders.extend(extra.orders);
    needs.even_degree |= extra.even_degree;
    needs.need_mu |= extra.need_mu;
    Ok(UnityContext::build(&spec.field, &needs, DEFAULT_FIELD_LIMIT)?)
}

/// Closed-form spectrum from the Dickson factorization.
pub fn eigen_spectrum(spec: &TridiagonalSpec) -> Result<SpectrumMultiset, SpectrumError> {
    check_spectral(spec)?;
    let ctx = spectrum_context(spec, ExtensionNeeds::default())?;
    eigen_spectrum_in(spec, &ctx)
}

fn check_spectral(spec: &TridiagonalSpec) -> Result<(), SpectrumError> {
    if spec.n == 0 {
        return Err(SpectrumError::EmptyMatrix);
    }
    if spec.field.mul(spec.b, spec.c) == 0 {
        return Err(SpectrumError::DegenerateProduct);
    }
    Ok(())
}

/// Spectrum inside a caller-provided context, which must satisfy
/// [`TridiagonalSpec::spectrum_needs`].
pub fn eigen_spectrum_in(spec: &TridiagonalSpec, ctx: &UnityContext) -> Result<SpectrumMultiset, SpectrumError> {
    check_spectral(spec)?;
    let e = &ctx.ext;
    let p = spec.field.characteristic() as u64;
    let s = match spec.sqrt_bc_in_base() {
        Some(root) => ctx.embed(root),
        None => e
            .sqrt(ctx.embed(spec.field.mul(spec.b, spec.c)))
            .expect("even-degree extensions contain every base square root"),
    };
    let a = ctx.embed(spec.a);
    let mut out = SpectrumMultiset { ctx: ctx.clone(), pairs: Vec::new(), blocks: Vec::new() };
    for n in spec.blocks() {
        let d = BlockDecomposition::new(n, p);
        out.blocks.push(d);
        let theta = ctx
            .root_of_unity(d.theta_order(p))
            .expect("context built from spectrum_needs");
        // a - s (theta^i + theta^-i)
        let family = |i: usize| {
            let t = e.pow(theta, i as i64).expect("nonzero");
            let t_inv = e.inv(t).expect("nonzero");
            e.sub(a, e.mul(s, e.add(t, t_inv)))
        };
        if p == 2 {
            if d.r == 0 {
                for i in 1..=n / 2 {
                    out.push(family(i), 2);
                }
            } else {
                out.push(a, (1usize << d.r) - 1);
                for i in 1..=d.m / 2 {
                    out.push(family(i), 1usize << (d.r + 1));
                }
            }
        } else {
            let half = ((d.p_r - 1) / 2) as usize;
            let two_s = e.add(s, s);
            out.push(e.add(a, two_s), half);
            out.push(e.sub(a, two_s), half);
            for i in 1..=d.m {
                out.push(family(i), d.p_r as usize);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{make_field, unity_context};

    #[test]
    fn t3_and_tprime3_layout() {
        let f = make_field(5, 1).unwrap();
        let (a, b, c) = (1, 2, 3);
        let t = TridiagonalSpec::new(&f, TridiagKind::T, 3, a, b, c).build();
        assert_eq!(t.to_rows(), vec![vec![a, c, 0], vec![b, a, c], vec![0, b, a]]);
        let tp = TridiagonalSpec::new(&f, TridiagKind::TPrime, 3, a, b, c).build();
        assert_eq!(tp.to_rows(), vec![vec![a, 0, c], vec![0, a, 0], vec![b, 0, a]]);
        let t1 = TridiagonalSpec::new(&f, TridiagKind::T, 1, a, b, c).build();
        assert_eq!(t1.to_rows(), vec![vec![a]]);
    }

    #[test]
    fn decomposition() {
        assert_eq!(BlockDecomposition::new(3, 2), BlockDecomposition { n: 3, r: 2, m: 0, p_r: 4 });
        assert_eq!(BlockDecomposition::new(12, 2), BlockDecomposition { n: 12, r: 0, m: 12, p_r: 1 });
        assert_eq!(BlockDecomposition::new(8, 3), BlockDecomposition { n: 8, r: 2, m: 0, p_r: 9 });
        assert_eq!(BlockDecomposition::new(5, 3), BlockDecomposition { n: 5, r: 1, m: 1, p_r: 3 });
    }

    #[test]
    fn char_poly_small_cases() {
        let f = make_field(3, 1).unwrap();
        let ctx = unity_context(&f, 1, false).unwrap();
        let spec = TridiagonalSpec::new(&f, TridiagKind::T, 1, 2, 1, 1);
        for l in f.elements() {
            assert_eq!(char_poly_value(&spec, &ctx, l), f.sub(2, l));
        }
        // T'_4 = phi_2^2
        let spec4 = TridiagonalSpec::new(&f, TridiagKind::TPrime, 4, 1, 2, 2);
        let spec2 = spec4.with_kind(TridiagKind::T, 2);
        for l in f.elements() {
            let v = char_poly_value(&spec2, &ctx, l);
            assert_eq!(char_poly_value(&spec4, &ctx, l), f.mul(v, v));
        }
    }

    #[test]
    fn spectrum_t3_gf2() {
        let f = make_field(2, 1).unwrap();
        let sp = eigen_spectrum(&TridiagonalSpec::symmetric(&f, 3, 1, 1)).unwrap();
        assert_eq!((sp.r(), sp.m()), (2, 0));
        assert_eq!(sp.pairs, vec![(1, 3)]);
    }

    #[test]
    fn spectrum_t2_gf2() {
        let f = make_field(2, 1).unwrap();
        let sp = eigen_spectrum(&TridiagonalSpec::symmetric(&f, 2, 1, 1)).unwrap();
        assert_eq!(sp.ctx.ext.order(), 4);
        assert_eq!(sp.pairs, vec![(0, 2)]);
        let e = &sp.ctx.ext;
        let th = sp.ctx.theta;
        assert_eq!(e.add(th, e.mul(th, th)), 1);
    }

    #[test]
    fn spectrum_tprime_is_union() {
        let f = make_field(2, 1).unwrap();
        let sp5 = eigen_spectrum(&TridiagonalSpec::new(&f, TridiagKind::TPrime, 5, 1, 1, 1)).unwrap();
        assert_eq!(sp5.total_multiplicity(), 5);
        // T_3: {1 x3}, T_2: {0 x2}
        assert_eq!(sp5.multiplicity_of(1), 3);
        assert_eq!(sp5.multiplicity_of(0), 2);
    }

    #[test]
    fn degenerate_product_is_refused() {
        let f = make_field(3, 1).unwrap();
        let spec = TridiagonalSpec::new(&f, TridiagKind::T, 4, 1, 0, 2);
        assert_eq!(eigen_spectrum(&spec).unwrap_err(), SpectrumError::DegenerateProduct);
        let spec = TridiagonalSpec::new(&f, TridiagKind::T, 0, 1, 1, 1);
        assert_eq!(eigen_spectrum(&spec).unwrap_err(), SpectrumError::EmptyMatrix);
    }

    #[test]
    fn hermitian_shape_and_sqrt() {
        let f4 = make_field(2, 2).unwrap();
        let w = f4.generator();
        let spec = TridiagonalSpec::hermitian(&f4, 6, 1, f4.mul(w, w)).unwrap();
        assert_eq!(spec.c, w);
        assert!(spec.is_hermitian());
        let m = spec.build();
        assert_eq!(m.conjugate_transpose().unwrap(), m);
        let r = spec.sqrt_bc_in_base().unwrap();
        assert_eq!(f4.mul(r, r), f4.mul(spec.b, spec.c));

        let f9 = make_field(3, 2).unwrap();
        for b in f9.nonzero() {
            let spec = TridiagonalSpec::hermitian(&f9, 4, 1, b).unwrap();
            let r = spec.sqrt_bc_in_base().unwrap();
            assert_eq!(f9.mul(r, r), f9.mul(spec.b, spec.c));
        }
    }

    #[test]
    fn non_residue_product_extends_the_field() {
        // b c = 2 is a non-residue mod 5
        let f = make_field(5, 1).unwrap();
        let spec = TridiagonalSpec::new(&f, TridiagKind::T, 3, 1, 1, 2);
        assert!(spec.sqrt_bc_in_base().is_none());
        let sp = eigen_spectrum(&spec).unwrap();
        assert_eq!(sp.ctx.s % 2, 0);
        assert_eq!(sp.total_multiplicity(), 3);
        for &(l, _) in &sp.pairs {
            assert_eq!(char_poly_value(&spec, &sp.ctx, l), 0);
        }
    }
}
