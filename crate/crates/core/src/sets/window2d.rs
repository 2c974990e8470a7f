use core::fmt;

use super::{span, SetError, MAX_WINDOW_CELLS};
use crate::bits::Bits;

/// A subset of the integer box `[x_lo, x_hi) × [y_lo, y_hi)`, stored row by row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WindowSet2D {
    x_lo: i64,
    x_hi: i64,
    y_lo: i64,
    y_hi: i64,
    bits: Bits,
}

impl WindowSet2D {
    pub fn empty(x_lo: i64, x_hi: i64, y_lo: i64, y_hi: i64) -> Result<Self, SetError> {
        let w = span(x_lo, x_hi)?;
        let h = span(y_lo, y_hi)?;
        let cells = (w as u128) * (h as u128);
        if cells > MAX_WINDOW_CELLS as u128 {
            return Err(SetError::WindowTooLarge {
                cells: cells.min(u64::MAX as u128) as u64,
            });
        }
        Ok(WindowSet2D {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
            bits: Bits::zeros(cells as usize),
        })
    }

    pub fn full(x_lo: i64, x_hi: i64, y_lo: i64, y_hi: i64) -> Result<Self, SetError> {
        let mut s = Self::empty(x_lo, x_hi, y_lo, y_hi)?;
        s.bits = Bits::ones(s.bits.len());
        Ok(s)
    }

    pub fn from_points<I>(
        x_lo: i64,
        x_hi: i64,
        y_lo: i64,
        y_hi: i64,
        points: I,
    ) -> Result<Self, SetError>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut s = Self::empty(x_lo, x_hi, y_lo, y_hi)?;
        for (x, y) in points {
            s.insert(x, y)?;
        }
        Ok(s)
    }

    /// An empty set with the same box as `self`.
    pub fn empty_like(&self) -> Self {
        WindowSet2D {
            bits: Bits::zeros(self.bits.len()),
            ..*self
        }
    }

    /// `(x_lo, x_hi, y_lo, y_hi)`
    #[inline]
    pub fn bounds(&self) -> (i64, i64, i64, i64) {
        (self.x_lo, self.x_hi, self.y_lo, self.y_hi)
    }

    #[inline]
    pub fn x_lo(&self) -> i64 {
        self.x_lo
    }
    #[inline]
    pub fn x_hi(&self) -> i64 {
        self.x_hi
    }
    #[inline]
    pub fn y_lo(&self) -> i64 {
        self.y_lo
    }
    #[inline]
    pub fn y_hi(&self) -> i64 {
        self.y_hi
    }

    #[inline]
    pub fn width(&self) -> usize {
        (self.x_hi - self.x_lo) as usize
    }

    #[inline]
    pub fn height(&self) -> usize {
        (self.y_hi - self.y_lo) as usize
    }

    #[inline]
    pub fn in_box(&self, x: i64, y: i64) -> bool {
        self.x_lo <= x && x < self.x_hi && self.y_lo <= y && y < self.y_hi
    }

    #[inline]
    fn offset(&self, x: i64, y: i64) -> usize {
        (y - self.y_lo) as usize * self.width() + (x - self.x_lo) as usize
    }

    /// Membership, or `None` outside the box.
    #[inline]
    pub fn get(&self, x: i64, y: i64) -> Option<bool> {
        if self.in_box(x, y) {
            Some(self.bits.get(self.offset(x, y)))
        } else {
            None
        }
    }

    pub fn contains(&self, x: i64, y: i64) -> Result<bool, SetError> {
        self.get(x, y).ok_or(SetError::OutOfBox { x, y })
    }

    pub fn insert(&mut self, x: i64, y: i64) -> Result<(), SetError> {
        if !self.in_box(x, y) {
            return Err(SetError::OutOfBox { x, y });
        }
        let i = self.offset(x, y);
        self.bits.set(i);
        Ok(())
    }

    pub fn remove(&mut self, x: i64, y: i64) -> Result<(), SetError> {
        if !self.in_box(x, y) {
            return Err(SetError::OutOfBox { x, y });
        }
        let i = self.offset(x, y);
        self.bits.clear(i);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    /// Members ordered by row (`y`) and then by `x`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let w = self.width();
        self.bits
            .ones_iter()
            .map(move |i| (self.x_lo + (i % w) as i64, self.y_lo + (i / w) as i64))
    }

    /// Maximal horizontal runs in row `y` as half-open `[a, b)` in `x`.
    pub fn row_runs(&self, y: i64) -> impl Iterator<Item = (i64, i64)> + '_ {
        let w = self.width();
        let (from, to) = if self.y_lo <= y && y < self.y_hi {
            let base = (y - self.y_lo) as usize * w;
            (base, base + w)
        } else {
            (0, 0)
        };
        self.bits
            .runs_in(from, to)
            .map(move |(a, b)| (self.x_lo + (a - from) as i64, self.x_lo + (b - from) as i64))
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool, SetError> {
        if self.bounds() != other.bounds() {
            return Err(SetError::WindowMismatch(
                self.x_lo, self.x_hi, other.x_lo, other.x_hi,
            ));
        }
        Ok(self.bits.is_subset(&other.bits))
    }
}

impl fmt::Debug for WindowSet2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "WindowSet2D[{}, {})x[{}, {}) ",
            self.x_lo, self.x_hi, self.y_lo, self.y_hi
        )?;
        f.debug_set().entries(self.iter()).finish()
    }
}
