use alloc::vec::Vec;

use super::{ApPair, PipelineError};
use crate::sets::{is_ps_at_scale, ps_scale_1d, Scale, WindowSet1D};
use crate::vdw::{find_mono_ap, vdw_number, Coloring};

/// A pair `(a, d)`, `d ≠ 0`, with `a, a + d, ..., a + kd ∈ S`.
///
/// Takes an interval of length `W(r, k + 1)` inside the shifted union, colors each
/// point by the least `t` with `point + t ∈ S`, finds a monochromatic
/// `(k + 1)`-term progression and shifts it back by its color.
pub fn theorem1_find_ap(
    s: &WindowSet1D,
    r: usize,
    k: usize,
    budget: u64,
) -> Result<ApPair, PipelineError> {
    if r == 0 {
        return Err(PipelineError::ZeroParam("r"));
    }
    if k == 0 {
        return Err(PipelineError::ZeroParam("k"));
    }
    let vdw = vdw_number(r, k + 1, budget)?;
    if !vdw.exhaustive {
        return Err(PipelineError::BudgetExhausted {
            r,
            len: k + 1,
            spent: vdw.budget_spent,
        });
    }
    let need = vdw.n;
    let Some(w) = is_ps_at_scale(s, Scale::new(r, need)?)? else {
        return Err(PipelineError::ScaleUnmet {
            r,
            required: need,
            achieved: ps_scale_1d(s, r)?,
        });
    };

    let start = w.start;
    let colors = (0..need as i64)
        .map(|j| {
            (1..=r as i64)
                .find(|&t| s.get(start + j + t) == Some(true))
                .map(|t| t as u8)
                .ok_or(PipelineError::Internal("union point without witness"))
        })
        .collect::<Result<Vec<u8>, _>>()?;
    let coloring = Coloring::new(r, colors)?;
    let mono = find_mono_ap(&coloring, k + 1).ok_or(PipelineError::Internal(
        "vdW number did not force a progression",
    ))?;

    let pair = ApPair {
        a: start + mono.ap.alpha as i64 + mono.color as i64,
        d: mono.ap.delta as i64,
    };
    let ok = (0..=k as i64).all(|i| s.contains(pair.a + i * pair.d) == Ok(true));
    if !ok || pair.d == 0 {
        return Err(PipelineError::Internal(
            "progression pair failed membership",
        ));
    }
    Ok(pair)
}
