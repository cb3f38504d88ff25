//! Packed exponent vectors.

use core::fmt;

/// Largest number of variables a ring may carry.
pub const MAX_VARS: usize = 64;

/// A power product with a cached weighted degree and support mask.
///
/// Exponents are stored by variable index; the weighted degree is the one
/// of the ring that built the monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u32,
    mask: u64,
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl Monomial {
    #[must_use]
    pub const fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
            mask: 0,
        }
    }

    /// Builds a monomial from raw exponents and variable weights.
    ///
    /// # Panics
    /// When `exps` is longer than [`MAX_VARS`] or longer than `weights`.
    #[must_use]
    pub fn from_exponents(exps: &[u8], weights: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS && exps.len() <= weights.len());
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                m.exps[i] = e;
                m.deg += u32::from(e) * weights[i];
                m.mask |= 1 << i;
            }
        }
        m
    }

    #[must_use]
    pub fn var(index: usize, weight: u32) -> Self {
        let mut m = Self::one();
        m.exps[index] = 1;
        m.deg = weight;
        m.mask = 1 << index;
        m
    }

    #[inline]
    #[must_use]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    #[must_use]
    pub fn exponent(&self, i: usize) -> u8 {
        self.exps[i]
    }

    #[inline]
    #[must_use]
    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    /// Bit `i` set iff variable `i` occurs.
    #[inline]
    #[must_use]
    pub fn support(&self) -> u64 {
        self.mask
    }

    #[inline]
    #[must_use]
    pub fn is_one(&self) -> bool {
        self.mask == 0
    }

    /// Total number of variable factors, ignoring weights.
    #[must_use]
    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().map(|&e| u32::from(e)).sum()
    }

    /// # Panics
    /// On exponent overflow (above 255).
    #[inline]
    #[must_use]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut bits = other.mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out.exps[i] = out.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        out.deg += other.deg;
        out.mask |= other.mask;
        out
    }

    #[inline]
    #[must_use]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.deg > other.deg {
            return false;
        }
        let mut bits = self.mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.exps[i] > other.exps[i] {
                return false;
            }
        }
        true
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    #[must_use]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = *self;
        let mut bits = other.mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out.exps[i] -= other.exps[i];
            if out.exps[i] == 0 {
                out.mask &= !(1 << i);
            }
        }
        out.deg -= other.deg;
        Some(out)
    }

    #[must_use]
    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut out = *self;
        let mut bits = other.mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if other.exps[i] > out.exps[i] {
                out.deg += u32::from(other.exps[i] - out.exps[i]) * weights[i];
                out.exps[i] = other.exps[i];
            }
        }
        out.mask |= other.mask;
        out
    }

    #[inline]
    #[must_use]
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0
    }

    #[must_use]
    pub fn square(&self) -> Monomial {
        self.mul(self)
    }

    /// Sends variable `i` to variable `map[i]` under new weights.
    #[must_use]
    pub fn remap(&self, map: &[usize], weights: &[u32]) -> Monomial {
        let mut out = Self::one();
        let mut bits = self.mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let j = map[i];
            out.exps[j] = out.exps[j]
                .checked_add(self.exps[i])
                .expect("exponent overflow");
            out.deg += u32::from(self.exps[i]) * weights[j];
            out.mask |= 1 << j;
        }
        out
    }

    /// Indices and exponents of the variables that occur.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        let mut bits = self.mask;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some((i, self.exps[i]))
        })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[")?;
        let mut first = true;
        for (i, e) in self.factors() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "x{i}^{e}")?;
        }
        write!(f, "]")
    }
}
