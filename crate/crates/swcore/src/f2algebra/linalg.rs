//! Dense linear algebra over the field with two elements.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    #[must_use]
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, on: bool) {
        let bit = 1u64 << (i % 64);
        if on {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn resize(&mut self, len: usize) {
        self.words.resize(len.div_ceil(64), 0);
        self.len = len;
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
            self.len = self.len.max(other.len);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn highest(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(k * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut bits = w;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(k * 64 + t)
            })
        })
    }

    /// Value as an integer when it fits, bit `i` having weight `2^i`.
    #[must_use]
    pub fn as_u64(&self) -> Option<u64> {
        if self.words.iter().skip(1).any(|&w| w != 0) {
            return None;
        }
        Some(self.words.first().copied().unwrap_or(0))
    }
}

/// Fully reduced echelon basis with highest-bit pivots.
///
/// Each row remembers which inserted vectors it combines.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, BitVec, BitVec)>,
    inserted: usize,
}

impl Echelon {
    #[must_use]
    pub fn new() -> Self {
        Self::default()
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v`, returning the remainder and the combination used.
    #[must_use]
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut r = v.clone();
        let mut tag = BitVec::zeros(self.inserted);
        for (p, row, t) in &self.rows {
            if *p < r.len() && r.get(*p) {
                r.xor_assign(row);
                tag.xor_assign(t);
            }
        }
        (r, tag)
    }

    #[must_use]
    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts `v`; on dependence returns the relation among inserted
    /// vectors (including `v` as the newest index) that it exposes.
    pub fn insert(&mut self, v: &BitVec) -> Result<(), BitVec> {
        let idx = self.inserted;
        self.inserted += 1;
        for (_, _, t) in &mut self.rows {
            t.resize(self.inserted);
        }
        let (r, mut tag) = self.reduce(v);
        tag.resize(self.inserted);
        tag.set(idx, true);
        match r.highest() {
            None => Err(tag),
            Some(p) => {
                for (_, row, t) in &mut self.rows {
                    if p < row.len() && row.get(p) {
                        row.xor_assign(&r);
                        t.xor_assign(&tag);
                    }
                }
                let pos = self.rows.partition_point(|(q, _, _)| *q > p);
                self.rows.insert(pos, (p, r, tag));
                Ok(())
            }
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter().map(|(_, r, _)| r)
    }
}

/// Kernel basis of the map sending the `i`-th unit vector to `images[i]`.
#[must_use]
pub fn nullspace(images: &[BitVec]) -> Vec<BitVec> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for v in images {
        if let Err(mut rel) = e.insert(v) {
            rel.resize(images.len());
            out.push(rel);
        }
    }
    out
}

#[must_use]
pub fn rank(vectors: &[BitVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        let _ = e.insert(v);
    }
    e.rank()
}
