//! Bit-word encoding of simplices.
//!
//! A k-simplex on `n` vertices is an `n`-bit word with exactly `k + 1` bits
//! set; bit `i` set means vertex `i` belongs to the simplex. For a fixed
//! weight, ascending word order coincides with colexicographic order of the
//! vertex sets, which is what [`slot_index`] ranks against.

use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count a word can hold.
pub const MAX_VERTICES: usize = 64;

/// A k-simplex encoded as a basis-state word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexWord {
    bits: u64,
    n: u8,
}

impl SimplexWord {
    /// Wraps `bits` as a simplex on `n` vertices. The dimension is implied by
    /// the popcount.
    pub fn new(bits: u64, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidInput(format!("vertex count {n} outside 1..=64")));
        }
        if bits == 0 || (n < 64 && bits >> n != 0) {
            return Err(Error::MalformedSimplex { word: bits, n, k: 0 });
        }
        Ok(Self { bits, n: n as u8 })
    }

    /// Wraps `bits` and checks that it is a k-simplex.
    pub fn with_dim(bits: u64, n: usize, k: usize) -> Result<Self> {
        let s = Self::new(bits, n).map_err(|_| Error::MalformedSimplex { word: bits, n, k })?;
        if s.dim() != k {
            return Err(Error::MalformedSimplex { word: bits, n, k });
        }
        Ok(s)
    }

    pub fn from_vertices(vertices: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &v in vertices {
            if v >= n || bits & (1 << v) != 0 {
                return Err(Error::InvalidInput(format!(
                    "bad vertex list {vertices:?} for n = {n}"
                )));
            }
            bits |= 1 << v;
        }
        Self::new(bits, n)
    }

    pub(crate) fn from_bits_unchecked(bits: u64, n: usize) -> Self {
        debug_assert!(bits != 0 && (n == 64 || bits >> n == 0));
        Self { bits, n: n as u8 }
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Dimension k (one less than the vertex count).
    #[inline]
    pub fn dim(&self) -> usize {
        self.bits.count_ones() as usize - 1
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    /// Codimension-one faces paired with the boundary sign `(-1)^i`, where
    /// `i` is the position of the removed vertex in ascending order.
    pub fn faces(&self) -> impl Iterator<Item = (SimplexWord, i8)> + '_ {
        let n = self.n();
        let bits = self.bits;
        self.vertices().enumerate().filter_map(move |(i, v)| {
            let face = bits & !(1u64 << v);
            (face != 0).then(|| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                (SimplexWord::from_bits_unchecked(face, n), sign)
            })
        })
    }
}

impl fmt::Debug for SimplexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplexWord({:0width$b})", self.bits, width = self.n())
    }
}

impl fmt::Display for SimplexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", vs.join(","))
    }
}

/// Binomial coefficient as `u64`; returns 0 when `r > m`.
pub fn binomial(m: usize, r: usize) -> u64 {
    if r > m {
        return 0;
    }
    let r = r.min(m - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Number of k-slots on `n` vertices: `binom(n, k + 1)`.
#[inline]
pub fn slot_count(n: usize, k: usize) -> usize {
    binomial(n, k + 1) as usize
}

/// Next word with the same popcount (Gosper's hack).
#[inline]
fn next_same_weight(x: u64) -> Option<u64> {
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some((((r ^ x) >> 2) / c) | r)
}

/// All k-slots on `n` vertices in ascending word order.
pub fn enumerate_slots(n: usize, k: usize) -> Result<Vec<SimplexWord>> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::InvalidInput(format!("vertex count {n} outside 1..=64")));
    }
    if k >= n {
        return Err(Error::DimensionOutOfRange { k, max: n - 1 });
    }
    let weight = k + 1;
    let mut out = Vec::with_capacity(slot_count(n, k));
    let mut w: u64 = if weight == 64 { u64::MAX } else { (1u64 << weight) - 1 };
    loop {
        if n < 64 && w >> n != 0 {
            break;
        }
        out.push(SimplexWord::from_bits_unchecked(w, n));
        match next_same_weight(w) {
            Some(next) if next > w => w = next,
            _ => break,
        }
    }
    Ok(out)
}

/// Position of `s` in [`enumerate_slots`]`(s.n(), s.dim())`.
pub fn slot_index(s: SimplexWord) -> usize {
    s.vertices()
        .enumerate()
        .map(|(i, v)| binomial(v, i + 1) as usize)
        .sum()
}
