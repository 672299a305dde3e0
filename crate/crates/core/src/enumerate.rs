//! Exhaustive codeword enumeration.
//!
//! A code over GF(p^m) with `K` generator rows is a GF(p)-space of dimension
//! `K m`, spanned by `w^j g_i`. Codewords are visited in modular Gray-code order
//! over that prime-field basis, so each step adds exactly one packed basis vector.
//! Coordinates are stored as `m` digit planes: bit planes for p = 2, bit-sliced
//! trit planes for p = 3, and one word per digit otherwise.
//!
//! The counter range is split into fixed chunks; per-chunk histograms are summed,
//! so results do not depend on scheduling.

use crate::galois::GaloisField;
use crate::linalg::MatrixOverField;

/// Execution strategy for data-parallel loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise sequential.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") { Exec::Parallel } else { Exec::Sequential }
    }
}

impl Exec {
    /// Maps `f` over `items` and collects in input order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }
}

/// Sets the size of the global worker pool. Has no effect without the
/// `parallel` feature; fails if the pool was already initialized.
pub fn configure_workers(n: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
        Ok(())
    }
}

const CHUNKS: u64 = 256;

/// Packed vector arithmetic over the prime field.
trait Lanes: Sync {
    fn words(&self) -> usize;
    fn add(&self, acc: &mut [u64], v: &[u64]);
    fn weight(&self, acc: &[u64]) -> usize;
}

struct Binary {
    planes: usize,
    w: usize,
}

impl Lanes for Binary {
    fn words(&self) -> usize {
        self.planes * self.w
    }

    #[inline]
    fn add(&self, acc: &mut [u64], v: &[u64]) {
        for (a, b) in acc.iter_mut().zip(v) {
            *a ^= b;
        }
    }

    #[inline]
    fn weight(&self, acc: &[u64]) -> usize {
        (0..self.w)
            .map(|i| {
                let mut any = 0;
                for pl in 0..self.planes {
                    any |= acc[pl * self.w + i];
                }
                any.count_ones() as usize
            })
            .sum()
    }
}

/// Trit planes: word `2i` holds "digit is 1" bits, word `2i + 1` "digit is 2" bits.
struct Ternary {
    planes: usize,
    w: usize,
}

impl Lanes for Ternary {
    fn words(&self) -> usize {
        2 * self.planes * self.w
    }

    #[inline]
    fn add(&self, acc: &mut [u64], v: &[u64]) {
        for (a, b) in acc.chunks_exact_mut(2).zip(v.chunks_exact(2)) {
            let (x1, x2, y1, y2) = (a[0], a[1], b[0], b[1]);
            let t = (x1 | y2) ^ (x2 | y1);
            a[0] = (x2 | y2) ^ t;
            a[1] = (x1 | y1) ^ t;
        }
    }

    #[inline]
    fn weight(&self, acc: &[u64]) -> usize {
        (0..self.w)
            .map(|i| {
                let mut any = 0;
                for pl in 0..self.planes {
                    let base = 2 * (pl * self.w + i);
                    any |= acc[base] | acc[base + 1];
                }
                any.count_ones() as usize
            })
            .sum()
    }
}

/// One word per digit; plane-major layout.
struct Wide {
    p: u64,
    planes: usize,
    n: usize,
}

impl Lanes for Wide {
    fn words(&self) -> usize {
        self.planes * self.n
    }

    #[inline]
    fn add(&self, acc: &mut [u64], v: &[u64]) {
        for (a, b) in acc.iter_mut().zip(v) {
            let s = *a + b;
            *a = if s >= self.p { s - self.p } else { s };
        }
    }

    #[inline]
    fn weight(&self, acc: &[u64]) -> usize {
        (0..self.n)
            .filter(|&c| (0..self.planes).any(|pl| acc[pl * self.n + c] != 0))
            .count()
    }
}

/// Prime-field basis of the code, each vector as GF(p) digits `[plane][coord]`.
#[allow(clippy::needless_range_loop)]
fn prime_basis(field: &GaloisField, gen: &MatrixOverField) -> Vec<Vec<Vec<u32>>> {
    let m = field.degree() as usize;
    let n = gen.cols();
    let mut out = Vec::with_capacity(gen.rows() * m);
    for r in 0..gen.rows() {
        for j in 0..m {
            let scale = field.exp(j as i64);
            let mut planes = vec![vec![0u32; n]; m];
            for c in 0..n {
                let coords = field.coords(field.mul(scale, gen.get(r, c)));
                for (pl, d) in coords.into_iter().enumerate() {
                    planes[pl][c] = d;
                }
            }
            out.push(planes);
        }
    }
    out
}

fn pack_binary(basis: &[Vec<Vec<u32>>], lanes: &Binary) -> Vec<Vec<u64>> {
    basis
        .iter()
        .map(|planes| {
            let mut v = vec![0u64; lanes.words()];
            for (pl, digits) in planes.iter().enumerate() {
                for (c, &d) in digits.iter().enumerate() {
                    if d == 1 {
                        v[pl * lanes.w + c / 64] |= 1 << (c % 64);
                    }
                }
            }
            v
        })
        .collect()
}

fn pack_ternary(basis: &[Vec<Vec<u32>>], lanes: &Ternary) -> Vec<Vec<u64>> {
    basis
        .iter()
        .map(|planes| {
            let mut v = vec![0u64; lanes.words()];
            for (pl, digits) in planes.iter().enumerate() {
                for (c, &d) in digits.iter().enumerate() {
                    if d != 0 {
                        let idx = 2 * (pl * lanes.w + c / 64) + (d as usize - 1);
                        v[idx] |= 1 << (c % 64);
                    }
                }
            }
            v
        })
        .collect()
}

fn pack_wide(basis: &[Vec<Vec<u32>>]) -> Vec<Vec<u64>> {
    basis
        .iter()
        .map(|planes| planes.iter().flatten().map(|&d| d as u64).collect())
        .collect()
}

/// Histogram of weights for counters `start..end`.
fn histogram_range<L: Lanes>(lanes: &L, basis: &[Vec<u64>], p: u64, n: usize, start: u64, end: u64) -> Vec<u64> {
    let dims = basis.len();
    let mut hist = vec![0u64; n + 1];
    if start >= end {
        return hist;
    }
    let mut counter = vec![0u64; dims + 1];
    let mut rest = start;
    for d in counter.iter_mut().take(dims) {
        *d = rest % p;
        rest /= p;
    }
    let mut acc = vec![0u64; lanes.words()];
    for i in 0..dims {
        let g = (counter[i] + p - counter[i + 1]) % p;
        for _ in 0..g {
            lanes.add(&mut acc, &basis[i]);
        }
    }
    hist[lanes.weight(&acc)] += 1;
    if p == 2 {
        for c in start..end - 1 {
            let j = c.trailing_ones() as usize;
            lanes.add(&mut acc, &basis[j]);
            hist[lanes.weight(&acc)] += 1;
        }
    } else {
        for _ in start..end - 1 {
            let mut j = 0;
            while counter[j] == p - 1 {
                counter[j] = 0;
                j += 1;
            }
            counter[j] += 1;
            lanes.add(&mut acc, &basis[j]);
            hist[lanes.weight(&acc)] += 1;
        }
    }
    hist
}

fn histogram_with<L: Lanes>(lanes: &L, basis: &[Vec<u64>], p: u64, n: usize, total: u64, exec: Exec) -> Vec<u64> {
    let chunks = CHUNKS.min(total).max(1);
    let bounds: Vec<(u64, u64)> = (0..chunks)
        .map(|i| (total * i / chunks, total * (i + 1) / chunks))
        .collect();
    let parts = exec.map(bounds, |(s, e)| histogram_range(lanes, basis, p, n, s, e));
    let mut hist = vec![0u64; n + 1];
    for part in parts {
        for (h, x) in hist.iter_mut().zip(part) {
            *h += x;
        }
    }
    hist
}

/// Number of codewords, `q^K`, or `None` on overflow.
pub fn codeword_count(field: &GaloisField, k: usize) -> Option<u64> {
    (field.order() as u64).checked_pow(k as u32)
}

/// Weight histogram `A_0..A_N` of the row space of `gen` (rows assumed independent).
pub fn weight_histogram(field: &GaloisField, gen: &MatrixOverField, exec: Exec) -> Vec<u64> {
    let n = gen.cols();
    let p = field.characteristic() as u64;
    let planes = field.degree() as usize;
    let basis = prime_basis(field, gen);
    let total = p.pow(basis.len() as u32);
    let w = n.div_ceil(64).max(1);
    match p {
        2 => {
            let lanes = Binary { planes, w };
            let packed = pack_binary(&basis, &lanes);
            histogram_with(&lanes, &packed, p, n, total, exec)
        }
        3 => {
            let lanes = Ternary { planes, w };
            let packed = pack_ternary(&basis, &lanes);
            histogram_with(&lanes, &packed, p, n, total, exec)
        }
        _ => {
            let lanes = Wide { p, planes, n };
            let packed = pack_wide(&basis);
            histogram_with(&lanes, &packed, p, n, total, exec)
        }
    }
}
