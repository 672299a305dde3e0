//! Text syntax for elements, polynomials and construction specs.
//!
//! Elements: `0`, `1`, `w`, `w^e` (powers of the field's generator, `e` may be
//! negative) and integers below the characteristic.
//! Polynomials: terms joined by `+`, each `[coef[*]]x[^e]` or a bare coefficient.
//! Spec lines: `q=<p^m> kind=T|T' n=<int> a=<elt> b=<elt> [c=<elt>] inner=E|H
//! (f=<poly>[;<poly>...] | k=<int>)`, fields in any order.

use std::collections::HashMap;

use thiserror::Error;

use crate::codes::InnerProduct;
use crate::constructions::{ConstructionError, ConstructionSpec, Payload};
use crate::galois::{is_prime, make_field, Elem, FieldRef, GaloisField};
use crate::linalg::{DensePolynomial, TridiagKind, TridiagonalSpec};

/// A parse failure at a byte offset of the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("at column {}: {msg}", .pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }

    fn shifted(mut self, by: usize) -> Self {
        self.pos += by;
        self
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::new(start, "expected an integer"))
    }

    fn done(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn element_at(field: &GaloisField, cur: &mut Cursor) -> Result<Elem, ParseError> {
    let start = cur.pos;
    match cur.peek() {
        Some(b'w') => {
            cur.pos += 1;
            if cur.eat(b'^') {
                let e = cur.int()?;
                Ok(field.exp(e))
            } else {
                Ok(field.generator())
            }
        }
        Some(c) if c.is_ascii_digit() => {
            let v = cur.int()?;
            if v >= field.characteristic() as i64 {
                return Err(ParseError::new(start, format!("integer {v} is not below the characteristic {}", field.characteristic())));
            }
            Ok(field.from_int(v))
        }
        _ => Err(ParseError::new(cur.pos, "expected a field element (0, 1, w, w^e or an integer)")),
    }
}

pub fn parse_element(field: &GaloisField, s: &str) -> Result<Elem, ParseError> {
    let mut cur = Cursor::new(s);
    let x = element_at(field, &mut cur)?;
    if !cur.done() {
        return Err(ParseError::new(cur.pos, "trailing input after element"));
    }
    Ok(x)
}

pub fn parse_polynomial(field: &FieldRef, s: &str) -> Result<DensePolynomial, ParseError> {
    let mut cur = Cursor::new(s);
    let mut coeffs: Vec<Elem> = Vec::new();
    loop {
        let coef = if cur.peek() == Some(b'x') {
            1
        } else {
            let c = element_at(field, &mut cur)?;
            cur.eat(b'*');
            c
        };
        let deg = if cur.eat(b'x') {
            if cur.eat(b'^') {
                let at = cur.pos;
                let e = cur.int()?;
                usize::try_from(e).map_err(|_| ParseError::new(at, "exponent must be nonnegative"))?
            } else {
                1
            }
        } else {
            0
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] = field.add(coeffs[deg], coef);
        if cur.done() {
            break;
        }
        if !cur.eat(b'+') {
            return Err(ParseError::new(cur.pos, "expected '+' between terms"));
        }
    }
    Ok(DensePolynomial::new(field, coeffs))
}

/// `q` as `p^m` or as the integer `p^m`.
pub fn parse_field(s: &str) -> Result<FieldRef, ParseError> {
    let mut cur = Cursor::new(s);
    let base = cur.int()?;
    let (p, m) = if cur.eat(b'^') {
        (base, cur.int()?)
    } else {
        prime_power(base).ok_or_else(|| ParseError::new(0, format!("{base} is not a prime power")))?
    };
    if !cur.done() {
        return Err(ParseError::new(cur.pos, "trailing input after field order"));
    }
    let (p, m) = (u32::try_from(p), u32::try_from(m));
    let (Ok(p), Ok(m)) = (p, m) else {
        return Err(ParseError::new(0, "field order out of range"));
    };
    make_field(p, m).map_err(|e| ParseError::new(0, e.to_string()))
}

fn prime_power(q: i64) -> Option<(i64, i64)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1 && is_prime(p as u64)).then_some((p, m))
}

/// A parsed spec line; `inner` and the payload are optional so the same syntax
/// serves spectrum queries.
#[derive(Debug, Clone)]
pub struct SpecLine {
    pub tridiag: TridiagonalSpec,
    pub inner: InnerProduct,
    pub payload: Option<Payload>,
}

impl SpecLine {
    pub fn construction(self) -> Result<ConstructionSpec, SpecError> {
        let payload = self.payload.ok_or_else(|| SpecError::Parse(ParseError::new(0, "missing f=... or k=...")))?;
        let spec = ConstructionSpec { tridiag: self.tridiag, payload, inner: self.inner };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

struct Field<'a> {
    value: &'a str,
    pos: usize,
}

pub fn parse_spec_line(line: &str) -> Result<SpecLine, ParseError> {
    const KEYS: [&str; 9] = ["q", "kind", "n", "a", "b", "c", "inner", "f", "k"];
    let mut fields: HashMap<&str, Field> = HashMap::new();
    let mut offset = 0;
    for token in line.split_whitespace() {
        let pos = offset + line[offset..].find(token).expect("token from this line");
        offset = pos + token.len();
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| ParseError::new(pos, format!("expected key=value, got '{token}'")))?;
        if !KEYS.contains(&key) {
            return Err(ParseError::new(pos, format!("unknown key '{key}'")));
        }
        if fields.insert(key, Field { value, pos: pos + key.len() + 1 }).is_some() {
            return Err(ParseError::new(pos, format!("duplicate key '{key}'")));
        }
    }
    let need = |k: &str| fields.get(k).ok_or_else(|| ParseError::new(line.len(), format!("missing {k}=...")));

    let q = need("q")?;
    let field = parse_field(q.value).map_err(|e| e.shifted(q.pos))?;
    let kind = match fields.get("kind") {
        None => TridiagKind::T,
        Some(Field { value: "T", .. }) => TridiagKind::T,
        Some(Field { value: "T'", .. }) => TridiagKind::TPrime,
        Some(f) => return Err(ParseError::new(f.pos, "kind must be T or T'")),
    };
    let n_field = need("n")?;
    let n = n_field
        .value
        .parse::<usize>()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| ParseError::new(n_field.pos, "n must be a positive integer"))?;
    let elem = |f: &Field| parse_element(&field, f.value).map_err(|e| e.shifted(f.pos));
    let a = elem(need("a")?)?;
    let b = elem(need("b")?)?;
    let inner = match fields.get("inner") {
        None => InnerProduct::Euclidean,
        Some(Field { value: "E", .. }) => InnerProduct::Euclidean,
        Some(Field { value: "H", .. }) => InnerProduct::Hermitian,
        Some(f) => return Err(ParseError::new(f.pos, "inner must be E or H")),
    };
    let c = match fields.get("c") {
        Some(f) => elem(f)?,
        None => match inner {
            InnerProduct::Euclidean => b,
            InnerProduct::Hermitian => field
                .conjugate(b)
                .map_err(|e| ParseError::new(fields.get("inner").map_or(0, |f| f.pos), e.to_string()))?,
        },
    };
    let payload = match (fields.get("f"), fields.get("k")) {
        (Some(_), Some(k)) => return Err(ParseError::new(k.pos, "give either f=... or k=..., not both")),
        (Some(f), None) => {
            let mut polys = Vec::new();
            let mut at = f.pos;
            for part in f.value.split(';') {
                polys.push(parse_polynomial(&field, part).map_err(|e| e.shifted(at))?);
                at += part.len() + 1;
            }
            Some(Payload::Derivative(polys))
        }
        (None, Some(k)) => {
            let v = k.value.parse::<u64>().map_err(|_| ParseError::new(k.pos, "k must be a nonnegative integer"))?;
            Some(Payload::Power { k: v })
        }
        (None, None) => None,
    };
    Ok(SpecLine { tridiag: TridiagonalSpec::new(&field, kind, n, a, b, c), inner, payload })
}

/// Parses and validates a full construction spec line.
pub fn parse_construction(line: &str) -> Result<ConstructionSpec, SpecError> {
    parse_spec_line(line)?.construction()
}
