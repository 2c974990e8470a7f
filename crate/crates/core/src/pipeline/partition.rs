use alloc::vec::Vec;

use super::PipelineError;
use crate::sets::{is_ps_at_scale, ps_scale_1d, PsWitness1D, Scale, WindowSet1D};

/// Best `(r', L')` reached by one cell during the radius sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellScore {
    pub r: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPick {
    pub index: usize,
    pub witness: PsWitness1D,
    pub table: Vec<CellScore>,
}

/// Picks a cell of a partition of `S` that stays piecewise syndetic.
///
/// Each cell is scored by sweeping radii `r' = 1..=r·c` (`c` cells) and keeping the
/// largest `ps_scale_1d(cell, r')` at the smallest radius reaching it. The winner
/// has the largest length, then the smallest radius, then the smallest index.
pub fn partition_extract(
    s: &WindowSet1D,
    cells: &[WindowSet1D],
    r: usize,
) -> Result<PartitionPick, PipelineError> {
    if r == 0 {
        return Err(PipelineError::ZeroParam("r"));
    }
    if cells.is_empty() {
        return Err(PipelineError::NotAPartition("no cells"));
    }
    let mut covered = WindowSet1D::empty(s.lo(), s.hi())?;
    for cell in cells {
        if (cell.lo(), cell.hi()) != (s.lo(), s.hi()) {
            return Err(PipelineError::NotAPartition("cell window differs from S"));
        }
        if !covered.is_disjoint(cell)? {
            return Err(PipelineError::NotAPartition("cells overlap"));
        }
        covered = covered.union(cell)?;
    }
    if covered != *s {
        return Err(PipelineError::NotAPartition("cells do not cover S exactly"));
    }

    let max_r = r * cells.len();
    let table = cells
        .iter()
        .map(|cell| {
            let mut best = CellScore { r: 1, len: 0 };
            for rr in 1..=max_r {
                let len = ps_scale_1d(cell, rr)?;
                if len > best.len {
                    best = CellScore { r: rr, len };
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<_>, PipelineError>>()?;

    let (index, best) = table
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| b.len.cmp(&a.len).then(a.r.cmp(&b.r)))
        .map(|(i, c)| (i, *c))
        .ok_or(PipelineError::NoClasses)?;
    if best.len == 0 {
        return Err(PipelineError::NotPiecewiseSyndetic { r: max_r });
    }
    let witness = is_ps_at_scale(&cells[index], Scale::new(best.r, best.len)?)?.ok_or(
        PipelineError::Internal("partition witness did not re-verify"),
    )?;
    Ok(PartitionPick {
        index,
        witness,
        table,
    })
}
