//! Deterministic example sets.

use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::sets::{SetError, WindowSet1D};

#[derive(Debug, Clone, PartialEq)]
pub enum ExampleKind {
    /// Members are the integers whose residue mod `period` is listed.
    Periodic { period: u64, residues: Vec<u64> },
    /// Blocks of length `first_len`, `first_len + growth`, ... separated by gaps
    /// `gap`, `2·gap`, ...: long intervals, unbounded gaps.
    ThickBlocks {
        first_len: usize,
        growth: usize,
        gap: usize,
    },
    /// Blocks of length `block`; consecutive members are at most `gap` apart
    /// (seeded, between `min(2, gap)` and `gap`). The radius-`gap` shifted union
    /// covers everything from just before the first block on.
    PsStriped { block: usize, gap: usize },
    /// Independent seeded coin flips with the given density.
    RandomSparse { density: f64 },
}

impl ExampleKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExampleKind::Periodic { .. } => "periodic",
            ExampleKind::ThickBlocks { .. } => "thick-blocks",
            ExampleKind::PsStriped { .. } => "ps-striped",
            ExampleKind::RandomSparse { .. } => "random-sparse",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid parameters for {kind}: {reason}")]
    InvalidParams { kind: &'static str, reason: String },
    #[error(transparent)]
    Set(#[from] SetError),
}

fn invalid(kind: &ExampleKind, reason: &str) -> GenError {
    GenError::InvalidParams {
        kind: kind.name(),
        reason: reason.into(),
    }
}

/// Generates an example on `[lo, hi)`. Equal inputs give bit-identical sets.
pub fn gen_example(
    kind: &ExampleKind,
    lo: i64,
    hi: i64,
    seed: u64,
) -> Result<WindowSet1D, GenError> {
    let mut s = WindowSet1D::empty(lo, hi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        ExampleKind::Periodic { period, residues } => {
            if *period == 0 {
                return Err(invalid(kind, "period must be at least 1"));
            }
            if residues.iter().any(|&c| c >= *period) {
                return Err(invalid(kind, "residues must be below the period"));
            }
            let p = *period as i64;
            for m in lo..hi {
                if residues.contains(&(m.rem_euclid(p) as u64)) {
                    s.insert(m)?;
                }
            }
        }
        ExampleKind::ThickBlocks {
            first_len,
            growth,
            gap,
        } => {
            if *first_len == 0 || *gap == 0 {
                return Err(invalid(kind, "first_len and gap must be at least 1"));
            }
            let mut pos = lo + rng.gen_range(0..=*gap as i64);
            let mut j = 0i64;
            while pos < hi {
                let len = *first_len as i64 + j * *growth as i64;
                s.insert_run(pos, (pos + len).min(hi))?;
                pos += len + *gap as i64 * (j + 1);
                j += 1;
            }
        }
        ExampleKind::PsStriped { block, gap } => {
            if *block == 0 || *gap == 0 {
                return Err(invalid(kind, "block and gap must be at least 1"));
            }
            let mut pos = lo + rng.gen_range(0..*gap as i64);
            while pos < hi {
                s.insert_run(pos, (pos + *block as i64).min(hi))?;
                let step = rng.gen_range((*gap).min(2) as i64..=*gap as i64);
                pos += *block as i64 + step - 1;
            }
        }
        ExampleKind::RandomSparse { density } => {
            if !(*density > 0.0 && *density <= 1.0) {
                return Err(invalid(kind, "density must lie in (0, 1]"));
            }
            for m in lo..hi {
                if rng.gen_bool(*density) {
                    s.insert(m)?;
                }
            }
        }
    }
    Ok(s)
}
