use core::fmt;

use super::{span, SetError};
use crate::bits::Bits;

/// A subset of the integer window `[lo, hi)`, one bit per integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WindowSet1D {
    lo: i64,
    hi: i64,
    bits: Bits,
}

impl WindowSet1D {
    pub fn empty(lo: i64, hi: i64) -> Result<Self, SetError> {
        let n = span(lo, hi)?;
        Ok(WindowSet1D {
            lo,
            hi,
            bits: Bits::zeros(n),
        })
    }

    pub fn full(lo: i64, hi: i64) -> Result<Self, SetError> {
        let n = span(lo, hi)?;
        Ok(WindowSet1D {
            lo,
            hi,
            bits: Bits::ones(n),
        })
    }

    pub fn from_members<I>(lo: i64, hi: i64, members: I) -> Result<Self, SetError>
    where
        I: IntoIterator<Item = i64>,
    {
        let mut s = Self::empty(lo, hi)?;
        for m in members {
            s.insert(m)?;
        }
        Ok(s)
    }

    /// Builds a set from half-open runs `[a, b)`; empty runs are allowed.
    pub fn from_runs<I>(lo: i64, hi: i64, runs: I) -> Result<Self, SetError>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut s = Self::empty(lo, hi)?;
        for (a, b) in runs {
            s.insert_run(a, b)?;
        }
        Ok(s)
    }

    #[inline]
    pub fn lo(&self) -> i64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> i64 {
        self.hi
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn in_window(&self, m: i64) -> bool {
        self.lo <= m && m < self.hi
    }

    /// Membership, or `None` when `m` is outside the window.
    #[inline]
    pub fn get(&self, m: i64) -> Option<bool> {
        if self.in_window(m) {
            Some(self.bits.get((m - self.lo) as usize))
        } else {
            None
        }
    }

    pub fn contains(&self, m: i64) -> Result<bool, SetError> {
        self.get(m).ok_or(SetError::OutOfWindow {
            point: m,
            lo: self.lo,
            hi: self.hi,
        })
    }

    fn index(&self, m: i64) -> Result<usize, SetError> {
        if self.in_window(m) {
            Ok((m - self.lo) as usize)
        } else {
            Err(SetError::OutOfWindow {
                point: m,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    pub fn insert(&mut self, m: i64) -> Result<(), SetError> {
        let i = self.index(m)?;
        self.bits.set(i);
        Ok(())
    }

    pub fn remove(&mut self, m: i64) -> Result<(), SetError> {
        let i = self.index(m)?;
        self.bits.clear(i);
        Ok(())
    }

    pub fn insert_run(&mut self, a: i64, b: i64) -> Result<(), SetError> {
        if a >= b {
            return Ok(());
        }
        let i = self.index(a)?;
        let j = self.index(b - 1)?;
        for k in i..=j {
            self.bits.set(k);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.bits.ones_iter().map(move |i| self.lo + i as i64)
    }

    /// Maximal runs of members as half-open intervals, ascending.
    pub fn runs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.bits
            .runs_in(0, self.bits.len())
            .map(move |(a, b)| (self.lo + a as i64, self.lo + b as i64))
    }

    fn same_window(&self, other: &Self) -> Result<(), SetError> {
        if self.lo == other.lo && self.hi == other.hi {
            Ok(())
        } else {
            Err(SetError::WindowMismatch(
                self.lo, self.hi, other.lo, other.hi,
            ))
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self, SetError> {
        self.same_window(other)?;
        let mut out = self.clone();
        out.bits.or_assign(&other.bits);
        Ok(out)
    }

    pub fn is_disjoint(&self, other: &Self) -> Result<bool, SetError> {
        self.same_window(other)?;
        Ok(!self.bits.intersects(&other.bits))
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool, SetError> {
        self.same_window(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }
}

impl fmt::Debug for WindowSet1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WindowSet1D[{}, {}) ", self.lo, self.hi)?;
        f.debug_list().entries(self.runs()).finish()
    }
}
