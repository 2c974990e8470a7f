//! From a piecewise syndetic `S ⊆ Z` to a piecewise syndetic set of progression
//! pairs `(a, d)` with `a, a + d, ..., a + kd ∈ S`.
//!
//! Stages, in order: the vdW constant `K`, the set `B` of pairs whose
//! `(K + 1)`-point progression sits in the shifted union, the coloring `φ` of
//! `B` by triples `(α, δ, t)`, the best color class `M`, and its affine image
//! `M̃ = {(A + αD + t, δD)}`.

mod construct;
mod partition;
mod theorem1;

pub use construct::{
    b_box_policy, fg_construct, fg_construct_with, Executor, FgOutcome, FgParams, Sequential,
};
pub use partition::{partition_extract, CellScore, PartitionPick};
pub use theorem1::theorem1_find_ap;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use crate::sets::{ps_scale_2d, shifted_union_1d, SetError, WindowSet1D, WindowSet2D};
use crate::vdw::VdwError;

/// The value `φ(A, D) = (α, δ, t)`: `A + (α + iδ)D + t ∈ S` for `i = 0..=k`.
///
/// Ordered by `(t, δ, α)`, the order in which `φ` searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColorTriple {
    pub alpha: usize,
    pub delta: usize,
    pub t: usize,
}

impl Ord for ColorTriple {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.t, self.delta, self.alpha).cmp(&(other.t, other.delta, other.alpha))
    }
}

impl PartialOrd for ColorTriple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(A1, A2) ↦ (A1 + x·A2 + y, z·A2)` with `z ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineMap2D {
    x: i64,
    y: i64,
    z: i64,
}

impl AffineMap2D {
    pub fn new(x: i64, y: i64, z: i64) -> Result<Self, PipelineError> {
        if z == 0 {
            return Err(PipelineError::ZeroScaleFactor);
        }
        Ok(AffineMap2D { x, y, z })
    }

    pub fn x(&self) -> i64 {
        self.x
    }
    pub fn y(&self) -> i64 {
        self.y
    }
    pub fn z(&self) -> i64 {
        self.z
    }

    #[inline]
    pub fn apply(&self, a1: i64, a2: i64) -> (i64, i64) {
        (a1 + self.x * a2 + self.y, self.z * a2)
    }
}

/// A progression pair: `a, a + d, ..., a + kd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApPair {
    pub a: i64,
    pub d: i64,
}

/// Half-open box `[x_lo, x_hi) × [y_lo, y_hi)`. For `B` the axes are `A` and `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxBounds {
    pub x_lo: i64,
    pub x_hi: i64,
    pub y_lo: i64,
    pub y_hi: i64,
}

impl BoxBounds {
    pub fn of(m: &WindowSet2D) -> Self {
        let (x_lo, x_hi, y_lo, y_hi) = m.bounds();
        BoxBounds {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Vdw(#[from] VdwError),
    #[error("affine map needs a nonzero scale factor")]
    ZeroScaleFactor,
    #[error("{0} must be at least 1")]
    ZeroParam(&'static str),
    #[error("vdW search for W({r}, {len}) ran out of budget after {spent} nodes")]
    BudgetExhausted { r: usize, len: usize, spent: u64 },
    #[error("S is not piecewise syndetic at radius {r} on its window")]
    NotPiecewiseSyndetic { r: usize },
    #[error("S reaches scale {achieved} at radius {r}, but {required} is required")]
    ScaleUnmet {
        r: usize,
        required: usize,
        achieved: usize,
    },
    #[error("every pair in the box probes outside the shifted-union window")]
    BoxOutsideRange,
    #[error("B is empty on the chosen box")]
    EmptyB,
    #[error("no triple colors ({a}, {d}); K = {big_k} is not a valid vdW witness")]
    NoTriple { a: i64, d: i64, big_k: usize },
    #[error("no nonempty color class")]
    NoClasses,
    #[error("cells do not partition S: {0}")]
    NotAPartition(&'static str),
    #[error("internal check failed: {0}")]
    Internal(&'static str),
}

/// `B` on a box, plus how many pairs were dropped for probing outside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildB {
    pub b: WindowSet2D,
    pub boundary: usize,
}

/// `(A, D) ∈ B` iff `A, A + D, ..., A + KD` all lie in the radius-`r` shifted union.
///
/// Pairs with a probe outside the union's window are excluded and counted.
pub fn build_b(
    s: &WindowSet1D,
    r: usize,
    big_k: usize,
    bx: BoxBounds,
) -> Result<BuildB, PipelineError> {
    let u = shifted_union_1d(s, r)?;
    let mut b = WindowSet2D::empty(bx.x_lo, bx.x_hi, bx.y_lo, bx.y_hi)?;
    let mut boundary = 0usize;
    let kk = big_k as i64;
    for d in bx.y_lo..bx.y_hi {
        for a in bx.x_lo..bx.x_hi {
            let last = d.checked_mul(kk).and_then(|x| x.checked_add(a));
            let Some(last) = last else {
                boundary += 1;
                continue;
            };
            if !u.in_window(a) || !u.in_window(last) {
                boundary += 1;
                continue;
            }
            if (0..=kk).all(|i| u.get(a + i * d) == Some(true)) {
                b.insert(a, d)?;
            }
        }
    }
    let total = (bx.x_hi - bx.x_lo) as usize * (bx.y_hi - bx.y_lo) as usize;
    if boundary == total {
        return Err(PipelineError::BoxOutsideRange);
    }
    Ok(BuildB { b, boundary })
}

/// Everything `φ` needs besides the pair itself.
#[derive(Debug, Clone, Copy)]
pub struct PhiContext<'a> {
    pub s: &'a WindowSet1D,
    pub r: usize,
    pub k: usize,
    pub big_k: usize,
}

impl PhiContext<'_> {
    /// Least `(t, δ, α)` with `A + (α + iδ)D + t ∈ S` for `i = 0..=k`.
    ///
    /// `δ` ranges over `1..=K/k` and `α` over `0..=K - kδ`, so the index progression
    /// stays inside `{0, ..., K}`. Points outside `S`'s window never witness.
    pub fn phi(&self, a: i64, d: i64) -> Result<ColorTriple, PipelineError> {
        if self.k == 0 {
            return Err(PipelineError::ZeroParam("k"));
        }
        let k = self.k as i64;
        let hits = |alpha: i64, delta: i64, t: i64| {
            (0..=k).all(|i| self.s.get(a + (alpha + i * delta) * d + t) == Some(true))
        };
        for t in 1..=self.r as i64 {
            for delta in 1..=(self.big_k / self.k) as i64 {
                for alpha in 0..=self.big_k as i64 - k * delta {
                    if hits(alpha, delta, t) {
                        let triple = ColorTriple {
                            alpha: alpha as usize,
                            delta: delta as usize,
                            t: t as usize,
                        };
                        if !(0..=k)
                            .all(|i| self.s.contains(a + (alpha + i * delta) * d + t) == Ok(true))
                        {
                            return Err(PipelineError::Internal("phi re-verification"));
                        }
                        return Ok(triple);
                    }
                }
            }
        }
        Err(PipelineError::NoTriple {
            a,
            d,
            big_k: self.big_k,
        })
    }
}

/// Splits `B` by `φ`. Every class shares `B`'s box.
pub fn color_classes(
    b: &WindowSet2D,
    ctx: &PhiContext<'_>,
) -> Result<BTreeMap<ColorTriple, WindowSet2D>, PipelineError> {
    let mut classes: BTreeMap<ColorTriple, WindowSet2D> = BTreeMap::new();
    for (a, d) in b.iter() {
        let triple = ctx.phi(a, d)?;
        classes
            .entry(triple)
            .or_insert_with(|| b.empty_like())
            .insert(a, d)?;
    }
    Ok(classes)
}

/// The class chosen by pigeonhole extraction and its 2D scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extracted {
    pub triple: ColorTriple,
    pub class: WindowSet2D,
    pub scale: usize,
}

/// Index of the best-scoring nonempty entry; ties go to the smaller triple.
pub fn select_best(scored: &[(ColorTriple, usize, bool)]) -> Option<usize> {
    scored
        .iter()
        .enumerate()
        .filter(|(_, (_, _, nonempty))| *nonempty)
        .min_by(|(_, (ta, sa, _)), (_, (tb, sb, _))| sb.cmp(sa).then(ta.cmp(tb)))
        .map(|(i, _)| i)
}

/// The class maximizing `ps_scale_2d(·, r2d)`, ties broken by least triple.
pub fn pigeonhole_extract(
    classes: &BTreeMap<ColorTriple, WindowSet2D>,
    r2d: usize,
) -> Result<Extracted, PipelineError> {
    let scored = classes
        .iter()
        .map(|(t, m)| Ok((*t, ps_scale_2d(m, r2d)?, !m.is_empty())))
        .collect::<Result<Vec<_>, SetError>>()?;
    let i = select_best(&scored).ok_or(PipelineError::NoClasses)?;
    let (triple, scale, _) = scored[i];
    Ok(Extracted {
        triple,
        class: classes[&triple].clone(),
        scale,
    })
}

/// Image of `M` under the map; the box is the bounding box of the image of `M`'s box.
pub fn affine_image(m: &WindowSet2D, map: AffineMap2D) -> Result<WindowSet2D, PipelineError> {
    if map.z == 0 {
        return Err(PipelineError::ZeroScaleFactor);
    }
    let (x_lo, x_hi, y_lo, y_hi) = m.bounds();
    let corners = [
        map.apply(x_lo, y_lo),
        map.apply(x_lo, y_hi - 1),
        map.apply(x_hi - 1, y_lo),
        map.apply(x_hi - 1, y_hi - 1),
    ];
    let nx_lo = corners.iter().map(|c| c.0).min().unwrap();
    let nx_hi = corners.iter().map(|c| c.0).max().unwrap() + 1;
    let ny_lo = corners.iter().map(|c| c.1).min().unwrap();
    let ny_hi = corners.iter().map(|c| c.1).max().unwrap() + 1;
    let mut out = WindowSet2D::empty(nx_lo, nx_hi, ny_lo, ny_hi)?;
    for (a1, a2) in m.iter() {
        let (x, y) = map.apply(a1, a2);
        out.insert(x, y)?;
    }
    Ok(out)
}
