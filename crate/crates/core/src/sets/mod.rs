//! Finite-window integer sets and scale-indexed largeness predicates.
//!
//! A set is only ever known on its window. Asking about a point outside the
//! window is an error ([`SetError::OutOfWindow`]), not a `false`: treating
//! unknown points as absent would quietly deflate every score near the edges.

mod scale;
mod window1d;
mod window2d;

pub use scale::{
    contains_interval, contains_square, is_ps_at_scale, ps_scale_1d, ps_scale_2d, shifted_union_1d,
    shifted_union_2d, square_sides, PsWitness1D, Scale,
};
pub use window1d::WindowSet1D;
pub use window2d::WindowSet2D;

use thiserror::Error;

/// Upper bound on the number of cells a single window may hold.
pub const MAX_WINDOW_CELLS: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("empty window [{lo}, {hi})")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("window of {cells} cells exceeds the limit of {MAX_WINDOW_CELLS}")]
    WindowTooLarge { cells: u64 },
    #[error("{point} lies outside the window [{lo}, {hi})")]
    OutOfWindow { point: i64, lo: i64, hi: i64 },
    #[error("({x}, {y}) lies outside the box")]
    OutOfBox { x: i64, y: i64 },
    #[error("windows differ: [{0}, {1}) vs [{2}, {3})")]
    WindowMismatch(i64, i64, i64, i64),
    #[error("scale parameters must be positive (r = {r}, L = {len})")]
    ZeroScale { r: usize, len: usize },
}

pub(crate) fn span(lo: i64, hi: i64) -> Result<usize, SetError> {
    if lo >= hi {
        return Err(SetError::EmptyWindow { lo, hi });
    }
    let cells = (hi as i128 - lo as i128) as u128;
    if cells > MAX_WINDOW_CELLS as u128 {
        return Err(SetError::WindowTooLarge {
            cells: cells.min(u64::MAX as u128) as u64,
        });
    }
    Ok(cells as usize)
}
