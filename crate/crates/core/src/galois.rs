//! Finite fields GF(p^m) backed by exponent/log tables.
//!
//! Elements are encoded as integers: the coordinate vector `(c_0, .., c_{m-1})`
//! of `c_0 + c_1 x + .. + c_{m-1} x^{m-1}` maps to `c_0 + c_1 p + .. + c_{m-1} p^{m-1}`.
//! Prime-subfield elements therefore have the same encoding in every field of
//! a given characteristic, which the embedding code relies on.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

/// Largest field order built unless a caller raises the limit.
pub const DEFAULT_FIELD_LIMIT: u64 = 1 << 20;

/// Raw element encoding. Only meaningful together with its [`GaloisField`].
pub type Elem = u32;

pub const ZERO: Elem = 0;
pub const ONE: Elem = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {order} exceeds the size limit {limit}")]
    TooLarge { order: u128, limit: u64 },
    #[error("elements belong to different fields: GF({0}) and GF({1})")]
    FieldMismatch(u32, u32),
    #[error("zero has no inverse")]
    DivisionByZero,
    #[error("GF({0}) has no quadratic subfield structure")]
    NoQuadraticStructure(u32),
    #[error("order {order} is divisible by the characteristic {p}")]
    OrderNotCoprime { order: u64, p: u32 },
    #[error("element {0} is not in GF({1})")]
    NotAnElement(u32, u32),
}

pub type FieldRef = Arc<GaloisField>;

/// GF(p^m) with the lexicographically smallest primitive modulus and the class
/// of the indeterminate as the fixed generator `w`.
pub struct GaloisField {
    p: u32,
    m: u32,
    order: u32,
    /// Monic modulus, ascending coefficients, length m + 1.
    modulus: Vec<u32>,
    /// `exp[i] = w^i` for `0 <= i < 2(order - 1)`.
    exp: Vec<Elem>,
    /// `log[x]` for nonzero x; `log[0]` is unused.
    log: Vec<u32>,
    /// `p^j` for `0 <= j < m`.
    pow_p: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for GaloisField {}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), FieldRef>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FieldRef>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Builds (or fetches from the process-wide cache) GF(p^m) with the default size limit.
pub fn make_field(p: u32, m: u32) -> Result<FieldRef, FieldError> {
    make_field_with_limit(p, m, DEFAULT_FIELD_LIMIT)
}

pub fn make_field_with_limit(p: u32, m: u32, limit: u64) -> Result<FieldRef, FieldError> {
    if !is_prime(p as u64) {
        return Err(FieldError::NotPrime(p as u64));
    }
    if m == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let order = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
    if order > limit as u128 || order > u32::MAX as u128 / 2 {
        return Err(FieldError::TooLarge { order, limit });
    }
    let mut cache = field_cache().lock().unwrap();
    if let Some(f) = cache.get(&(p, m)) {
        return Ok(Arc::clone(f));
    }
    let field = Arc::new(GaloisField::build(p, m, order as u32));
    cache.insert((p, m), Arc::clone(&field));
    Ok(field)
}

/// Polynomials over GF(p) modulo a monic modulus, used only while searching for
/// a primitive polynomial.
struct PrimeModRing<'a> {
    p: u64,
    modulus: &'a [u32],
}

impl PrimeModRing<'_> {
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.modulus.len() - 1;
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for d in (m..2 * m).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &mk) in self.modulus[..m].iter().enumerate() {
                let sub = c * mk as u64 % self.p;
                prod[d - m + k] = (prod[d - m + k] + self.p - sub) % self.p;
            }
        }
        prod.truncate(m);
        prod
    }

    fn pow_x(&self, mut e: u64) -> Vec<u64> {
        let m = self.modulus.len() - 1;
        let mut result = vec![0u64; m];
        result[0] = 1;
        let mut base = vec![0u64; m];
        if m == 1 {
            // x reduces to -c_0
            base[0] = (self.p - self.modulus[0] as u64) % self.p;
        } else {
            base[1] = 1;
        }
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    fn is_one(v: &[u64]) -> bool {
        v[0] == 1 && v[1..].iter().all(|&c| c == 0)
    }
}

fn is_primitive(p: u32, modulus: &[u32], order_minus_one: u64, factors: &[u64]) -> bool {
    if modulus[0] == 0 {
        return false;
    }
    let ring = PrimeModRing { p: p as u64, modulus };
    if !PrimeModRing::is_one(&ring.pow_x(order_minus_one)) {
        return false;
    }
    factors
        .iter()
        .all(|&l| !PrimeModRing::is_one(&ring.pow_x(order_minus_one / l)))
}

impl GaloisField {
    fn build(p: u32, m: u32, order: u32) -> GaloisField {
        let n = (order - 1) as u64;
        let factors = prime_factors(n);
        // Candidates ordered by the tail coefficients read from degree m-1 down
        // to degree 0, which is the integer encoding of the tail.
        let modulus = (0..order)
            .map(|tail| {
                let mut coeffs: Vec<u32> = (0..m).map(|j| tail / p.pow(j) % p).collect();
                coeffs.push(1);
                coeffs
            })
            .find(|coeffs| is_primitive(p, coeffs, n, &factors))
            .expect("a primitive polynomial exists for every degree");

        let pow_p: Vec<u32> = (0..m).map(|j| p.pow(j)).collect();
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; order as usize];
        let mut digits = vec![0u32; m as usize];
        digits[0] = 1;
        for i in 0..n as usize {
            let enc: u32 = digits.iter().zip(&pow_p).map(|(d, w)| d * w).sum();
            exp[i] = enc;
            exp[i + n as usize] = enc;
            log[enc as usize] = i as u32;
            // multiply by x
            let top = digits[m as usize - 1];
            for j in (1..m as usize).rev() {
                digits[j] = digits[j - 1];
            }
            digits[0] = 0;
            if top != 0 {
                for j in 0..m as usize {
                    digits[j] = (digits[j] + p * p - top * modulus[j] % p) % p;
                }
            }
        }
        GaloisField { p, m, order, modulus, exp, log, pow_p }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic modulus coefficients, ascending.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.exp[1 % (self.order as usize - 1).max(1)]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.order
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.order
    }

    pub fn is_even_char(&self) -> bool {
        self.p == 2
    }

    /// Coordinates of `x` over GF(p), ascending.
    pub fn coords(&self, x: Elem) -> Vec<u32> {
        self.pow_p.iter().map(|w| x / w % self.p).collect()
    }

    /// Prime-subfield element `k mod p`.
    pub fn from_int(&self, k: i64) -> Elem {
        k.rem_euclid(self.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.p == 2 {
            return x ^ y;
        }
        if self.m == 1 {
            let s = x + y;
            return if s >= self.p { s - self.p } else { s };
        }
        let mut out = 0;
        for &w in &self.pow_p {
            let d = (x / w % self.p + y / w % self.p) % self.p;
            out += d * w;
        }
        out
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        if self.p == 2 {
            return x;
        }
        if self.m == 1 {
            return if x == 0 { 0 } else { self.p - x };
        }
        let mut out = 0;
        for &w in &self.pow_p {
            let d = x / w % self.p;
            out += ((self.p - d) % self.p) * w;
        }
        out
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x == 0 || y == 0 {
            return 0;
        }
        self.exp[(self.log[x as usize] + self.log[y as usize]) as usize]
    }

    pub fn inv(&self, x: Elem) -> Option<Elem> {
        if x == 0 {
            return None;
        }
        let n = self.order - 1;
        Some(self.exp[((n - self.log[x as usize]) % n) as usize])
    }

    pub fn div(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.inv(y).map(|yi| self.mul(x, yi))
    }

    /// `x^e`; negative exponents require nonzero `x`.
    pub fn pow(&self, x: Elem, e: i64) -> Option<Elem> {
        if x == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => None,
                std::cmp::Ordering::Equal => Some(1),
                std::cmp::Ordering::Greater => Some(0),
            };
        }
        let n = (self.order - 1) as i64;
        let l = (self.log[x as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Some(self.exp[l as usize])
    }

    /// `w^e` for any integer `e`.
    pub fn exp(&self, e: i64) -> Elem {
        let n = (self.order - 1) as i64;
        self.exp[e.rem_euclid(n) as usize]
    }

    /// Discrete log base `w`; `None` for zero.
    pub fn log(&self, x: Elem) -> Option<u32> {
        (x != 0).then(|| self.log[x as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: Elem) -> Option<u64> {
        let l = self.log(x)? as u64;
        let n = (self.order - 1) as u64;
        Some(n / gcd(l, n))
    }

    /// `q` such that this field is GF(q^2), when the degree is even.
    pub fn quadratic_base(&self) -> Option<u32> {
        self.m.is_multiple_of(2).then(|| self.p.pow(self.m / 2))
    }

    /// Frobenius conjugation `x -> x^q` relative to the index-2 subfield.
    pub fn conjugate(&self, x: Elem) -> Result<Elem, FieldError> {
        let q = self
            .quadratic_base()
            .ok_or(FieldError::NoQuadraticStructure(self.order))?;
        Ok(self.pow(x, q as i64).expect("nonnegative exponent"))
    }

    /// Square root. Total in characteristic 2; in odd characteristic returns the
    /// root with the smaller discrete log, or `None` for non-residues.
    pub fn sqrt(&self, x: Elem) -> Option<Elem> {
        if x == 0 {
            return Some(0);
        }
        if self.p == 2 {
            return self.pow(x, (self.order / 2) as i64);
        }
        let l = self.log[x as usize];
        l.is_multiple_of(2).then(|| self.exp[(l / 2) as usize])
    }

    /// Evaluates a polynomial with prime-subfield coefficients (ascending) at `x`.
    pub fn eval_prime_poly(&self, coeffs: &[u32], x: Elem) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c % self.p))
    }

    /// Text form: `0`, prime-subfield integers, `w`, `w^e`.
    pub fn format_elem(&self, x: Elem) -> String {
        if x < self.p {
            return x.to_string();
        }
        match self.log[x as usize] {
            1 => "w".to_string(),
            e => format!("w^{e}"),
        }
    }

    pub fn element(self: &Arc<Self>, value: Elem) -> Result<FieldElement, FieldError> {
        if !self.contains(value) {
            return Err(FieldError::NotAnElement(value, self.order));
        }
        Ok(FieldElement { field: Arc::clone(self), value })
    }
}

/// An element carrying its field; arithmetic checks that operands agree.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldRef,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.field.format_elem(self.value), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(self.value))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if *self.field != *other.field {
            return Err(FieldError::FieldMismatch(self.field.order, other.field.order));
        }
        Ok(())
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement { field: Arc::clone(&self.field), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        self.field
            .inv(self.value)
            .map(|v| self.wrap(v))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        self.field
            .pow(self.value, e)
            .map(|v| self.wrap(v))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn conjugate(&self) -> Result<Self, FieldError> {
        self.field.conjugate(self.value).map(|v| self.wrap(v))
    }

    pub fn sqrt(&self) -> Option<Self> {
        self.field.sqrt(self.value).map(|v| self.wrap(v))
    }
}

/// An extension GF(q^s) of a base field GF(q) together with the roots of unity
/// the spectral formulas need and a fixed embedding of the base.
#[derive(Clone)]
pub struct UnityContext {
    pub base: FieldRef,
    pub ext: FieldRef,
    /// Extension degree s over the base.
    pub s: u32,
    /// Primary root of unity of order `k`.
    pub theta: Elem,
    pub k: u64,
    /// Square root of -1 in the extension, when requested in odd characteristic.
    pub mu: Option<Elem>,
    /// Image of the base generator; a root of the base modulus in the extension.
    beta: Elem,
}

impl fmt::Debug for UnityContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnityContext")
            .field("base", &self.base)
            .field("ext", &self.ext)
            .field("s", &self.s)
            .field("k", &self.k)
            .finish()
    }
}

/// Requirements on an extension: every listed order must divide `q^s - 1`,
/// optionally with `s` even (so every base element has a square root).
#[derive(Debug, Clone, Default)]
pub struct ExtensionNeeds {
    pub orders: Vec<u64>,
    pub even_degree: bool,
    pub need_mu: bool,
}

impl ExtensionNeeds {
    pub fn order(mut self, k: u64) -> Self {
        self.orders.push(k);
        self
    }
}

/// Builds the smallest extension of `base` containing a primitive `k`-th root of unity
/// (and a square root of -1 when `need_mu` is set in odd characteristic).
pub fn unity_context(base: &FieldRef, k: u64, need_mu: bool) -> Result<UnityContext, FieldError> {
    let needs = ExtensionNeeds { orders: vec![k], even_degree: false, need_mu };
    UnityContext::build(base, &needs, DEFAULT_FIELD_LIMIT)
}

impl UnityContext {
    pub fn build(base: &FieldRef, needs: &ExtensionNeeds, limit: u64) -> Result<UnityContext, FieldError> {
        let p = base.characteristic();
        let q = base.order() as u128;
        let mut orders: Vec<u64> = needs.orders.iter().copied().filter(|&k| k > 0).collect();
        for &k in &orders {
            if k % p as u64 == 0 {
                return Err(FieldError::OrderNotCoprime { order: k, p });
            }
        }
        if needs.need_mu && p != 2 {
            orders.push(4);
        }
        let mut s = 1u32;
        loop {
            let size = q.checked_pow(s).unwrap_or(u128::MAX);
            if size > limit as u128 {
                return Err(FieldError::TooLarge { order: size, limit });
            }
            let n = size - 1;
            let ok = orders.iter().all(|&k| n.is_multiple_of(k as u128))
                && (!needs.even_degree || s.is_multiple_of(2));
            if ok {
                break;
            }
            s += 1;
        }
        let ext = if s == 1 {
            Arc::clone(base)
        } else {
            make_field_with_limit(p, base.degree() * s, limit)?
        };
        let beta = if s == 1 {
            base.generator()
        } else {
            find_base_generator_image(base, &ext)
        };
        let k = needs.orders.first().copied().unwrap_or(1);
        let n = ext.order() as i64 - 1;
        let theta = ext.exp(n / k as i64);
        let mu = (needs.need_mu && p != 2).then(|| ext.exp(n / 4));
        Ok(UnityContext { base: Arc::clone(base), ext, s, theta, k, mu, beta })
    }

    /// A primitive `k`-th root of unity in the extension, `w^((Q-1)/k)`.
    pub fn root_of_unity(&self, k: u64) -> Option<Elem> {
        let n = self.ext.order() as u64 - 1;
        (k > 0 && n.is_multiple_of(k)).then(|| self.ext.exp((n / k) as i64))
    }

    /// Homomorphic embedding of a base element.
    pub fn embed(&self, x: Elem) -> Elem {
        match self.base.log(x) {
            None => 0,
            Some(e) => self.ext.pow(self.beta, e as i64).expect("nonzero"),
        }
    }

    pub fn embed_checked(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        if **x.field() != *self.base {
            return Err(FieldError::FieldMismatch(x.field().order(), self.base.order()));
        }
        self.ext.element(self.embed(x.value()))
    }

    /// Base element mapping to `y`, if `y` lies in the embedded subfield.
    pub fn pull_back(&self, y: Elem) -> Option<Elem> {
        self.base.elements().find(|&x| self.embed(x) == y)
    }
}

/// Smallest `j` (coprime to q - 1) such that `h^(j (Q-1)/(q-1))` is a root of the
/// base modulus, where `h` generates the extension.
fn find_base_generator_image(base: &GaloisField, ext: &GaloisField) -> Elem {
    let q1 = base.order() as u64 - 1;
    let big = ext.order() as u64 - 1;
    let step = big / q1;
    (1..=q1)
        .filter(|&j| gcd(j, q1) == 1)
        .map(|j| ext.exp((j * step) as i64))
        .find(|&cand| ext.eval_prime_poly(base.modulus(), cand) == 0)
        .expect("the base modulus splits in every extension")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_has_two_elements() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn gf4_generator_relation() {
        let f = make_field(2, 2).unwrap();
        let w = f.generator();
        let w2 = f.mul(w, w);
        assert_eq!(f.mul(w2, w), 1);
        assert_eq!(f.add(f.add(w2, w), 1), 0);
        assert_eq!(f.mul(w, w2), 1);
    }

    #[test]
    fn gf9_modulus_is_smallest_primitive_quadratic() {
        // oracle: brute-force element orders for every monic quadratic over GF(3)
        let mut primitive = Vec::new();
        for c1 in 0..3u32 {
            for c0 in 0..3u32 {
                // represent a + b x, multiply by x repeatedly: x^2 = -c1 x - c0
                let (mut a, mut b) = (1u32, 0u32);
                let mut order = 0;
                for i in 1..=8 {
                    let (na, nb) = ((3 - c0 * b % 3) % 3, (a + 3 - c1 * b % 3) % 3);
                    a = na;
                    b = nb;
                    if a == 1 && b == 0 {
                        order = i;
                        break;
                    }
                }
                if order == 8 {
                    primitive.push(vec![c0, c1, 1]);
                }
            }
        }
        assert_eq!(primitive, vec![vec![2, 1, 1], vec![2, 2, 1]]);
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.modulus(), &primitive[0][..]);
        assert_eq!(f.mult_order(f.generator()), Some(8));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(make_field(2, 21), Err(FieldError::TooLarge { .. })));
        assert!(make_field_with_limit(2, 21, 1 << 21).is_ok());
    }

    #[test]
    fn small_arithmetic() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.inv(2), Some(3));
        assert_eq!(f5.inv(0), None);
        let f8 = make_field(2, 3).unwrap();
        assert!(f8.elements().all(|x| f8.add(x, x) == 0));
        assert_eq!(f5.pow(2, -1), Some(3));
        assert_eq!(f5.pow(0, -1), None);
        assert_eq!(f5.pow(0, 0), Some(1));
    }

    #[test]
    fn checked_elements_reject_mismatch() {
        let f4 = make_field(2, 2).unwrap();
        let f8 = make_field(2, 3).unwrap();
        let x = f4.element(2).unwrap();
        let y = f8.element(2).unwrap();
        assert_eq!(x.mul(&y).unwrap_err(), FieldError::FieldMismatch(4, 8));
        assert_eq!(f4.element(0).unwrap().inv().unwrap_err(), FieldError::DivisionByZero);
        assert!(f4.element(4).is_err());
        let w = f4.element(f4.generator()).unwrap();
        assert_eq!(w.mul(&w.pow(2).unwrap()).unwrap().value(), 1);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (2, 6)] {
            let f = make_field(p, m).unwrap();
            assert_eq!(f.mult_order(f.generator()), Some(f.order() as u64 - 1));
            for x in f.elements() {
                assert_eq!(f.add(x, f.neg(x)), 0);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
                }
                for y in f.elements() {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    for z in [0, 1, f.generator(), f.order() - 1] {
                        assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation() {
        let f4 = make_field(2, 2).unwrap();
        let w = f4.generator();
        assert_eq!(f4.conjugate(w).unwrap(), f4.mul(w, w));
        assert_eq!(f4.conjugate(0).unwrap(), 0);
        assert_eq!(f4.conjugate(1).unwrap(), 1);
        for (p, m) in [(2, 2), (3, 2), (2, 4), (2, 6), (3, 4)] {
            let f = make_field(p, m).unwrap();
            let q = f.quadratic_base().unwrap();
            let fixed: Vec<_> = f.elements().filter(|&x| f.conjugate(x).unwrap() == x).collect();
            assert_eq!(fixed.len() as u32, q);
            for x in f.elements() {
                assert_eq!(f.conjugate(f.conjugate(x).unwrap()).unwrap(), x);
                for y in [f.generator(), 1, f.order() - 1] {
                    let cx = f.conjugate(x).unwrap();
                    let cy = f.conjugate(y).unwrap();
                    assert_eq!(f.conjugate(f.mul(x, y)).unwrap(), f.mul(cx, cy));
                    assert_eq!(f.conjugate(f.add(x, y)).unwrap(), f.add(cx, cy));
                }
            }
        }
        let f8 = make_field(2, 3).unwrap();
        assert_eq!(f8.conjugate(3), Err(FieldError::NoQuadraticStructure(8)));
    }

    #[test]
    fn square_roots() {
        let f8 = make_field(2, 3).unwrap();
        for x in f8.elements() {
            let r = f8.sqrt(x).unwrap();
            assert_eq!(r, f8.pow(x, 4).unwrap());
            assert_eq!(f8.mul(r, r), x);
        }
        let f5 = make_field(5, 1).unwrap();
        let r = f5.sqrt(4).unwrap();
        assert!(r == 2 || r == 3);
        assert_eq!(f5.sqrt(4), f5.sqrt(4));
        assert_eq!(f5.sqrt(2), None);
        assert_eq!(f5.sqrt(3), None);
        let squares: Vec<_> = (0..5).map(|x| x * x % 5).collect();
        assert!(!squares.contains(&2));
        for (p, m) in [(3, 1), (3, 2), (5, 2), (7, 1)] {
            let f = make_field(p, m).unwrap();
            for x in f.elements() {
                if let Some(r) = f.sqrt(x) {
                    assert_eq!(f.mul(r, r), x);
                }
            }
        }
    }

    #[test]
    fn unity_contexts_from_examples() {
        let f2 = make_field(2, 1).unwrap();
        let ctx = unity_context(&f2, 3, false).unwrap();
        assert_eq!(ctx.s, 2);
        assert_eq!(ctx.ext.mult_order(ctx.theta), Some(3));

        let ctx = unity_context(&f2, 13, false).unwrap();
        assert_eq!(ctx.s, 12);
        assert_eq!(ctx.ext.order(), 4096);
        assert_eq!(ctx.ext.mult_order(ctx.theta), Some(13));
        // w^315 has order 4095 / gcd(315, 4095) = 13
        assert_eq!(ctx.ext.mult_order(ctx.ext.exp(315)), Some(13));

        let f5 = make_field(5, 1).unwrap();
        let ctx = unity_context(&f5, 16, true).unwrap();
        assert_eq!(ctx.s, 4);
        assert_eq!(ctx.ext.mult_order(ctx.theta), Some(16));
        let mu = ctx.mu.unwrap();
        assert_eq!(ctx.ext.mul(mu, mu), ctx.ext.neg(1));

        assert!(matches!(unity_context(&f5, 10, false), Err(FieldError::OrderNotCoprime { .. })));
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        for (p, m) in [(2, 1), (2, 2), (3, 1), (3, 2), (2, 4), (5, 1)] {
            let base = make_field(p, m).unwrap();
            for s in 1..=3u64 {
                let k = (base.order() as u64).pow(s as u32) - 1;
                let ctx = unity_context(&base, k, false).unwrap();
                assert_eq!(ctx.s as u64, s);
                assert_eq!(ctx.embed(1), 1);
                assert_eq!(ctx.embed(0), 0);
                for x in base.elements() {
                    for y in base.elements() {
                        assert_eq!(ctx.embed(base.add(x, y)), ctx.ext.add(ctx.embed(x), ctx.embed(y)));
                        assert_eq!(ctx.embed(base.mul(x, y)), ctx.ext.mul(ctx.embed(x), ctx.embed(y)));
                    }
                    assert_eq!(ctx.pull_back(ctx.embed(x)), Some(x));
                }
            }
        }
    }

    #[test]
    fn gf4_into_gf16() {
        let f4 = make_field(2, 2).unwrap();
        let ctx = unity_context(&f4, 15, false).unwrap();
        assert_eq!(ctx.ext.order(), 16);
        let w = ctx.embed(f4.generator());
        // the image has order 3, i.e. it is h^5 or h^10
        let l = ctx.ext.log(w).unwrap();
        assert!(l == 5 || l == 10);
        // minimal polynomial x^2 + x + 1 over GF(2), checked by brute force
        assert_eq!(ctx.ext.eval_prime_poly(&[1, 1, 1], w), 0);
        assert_eq!(ctx.ext.eval_prime_poly(&[1, 1, 1], ctx.embed(1)), 1);
    }

    #[test]
    fn formatting() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.format_elem(0), "0");
        assert_eq!(f4.format_elem(1), "1");
        assert_eq!(f4.format_elem(f4.generator()), "w");
        assert_eq!(f4.format_elem(f4.exp(2)), "w^2");
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.format_elem(2), "2");
    }
}
