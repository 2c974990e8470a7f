use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{
    affine_image, build_b, color_classes, select_best, AffineMap2D, BoxBounds, ColorTriple,
    PhiContext, PipelineError,
};
use crate::certify::{FgCertificate, InputDigest};
use crate::sets::{ps_scale_1d, ps_scale_2d, shifted_union_1d, SetError, WindowSet1D, WindowSet2D};
use crate::vdw::{VdwError, VdwResult, VdwSearch};

/// Knobs for [`fg_construct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FgParams {
    /// Shift radius for `S`.
    pub r: usize,
    /// Progressions have `k + 1` terms.
    pub k: usize,
    /// Radius for the 2D scale of classes and of `M̃`; `None` means `K`.
    pub r2d: Option<usize>,
    /// Node budget for the vdW search.
    pub budget: u64,
    /// Cap on the side of the `(A, D)` box.
    pub box_side: usize,
    /// Minimum input scale `ps_scale_1d(S, r)` the caller insists on.
    pub min_scale: usize,
}

impl FgParams {
    pub const DEFAULT_BOX_SIDE: usize = 64;

    pub fn new(r: usize, k: usize) -> Self {
        FgParams {
            r,
            k,
            r2d: None,
            budget: 1 << 32,
            box_side: Self::DEFAULT_BOX_SIDE,
            min_scale: 1,
        }
    }
}

/// Pluggable execution for the expensive stages.
pub trait Executor {
    fn vdw(&self, search: &VdwSearch, budget: u64) -> Result<VdwResult, VdwError> {
        search.run(budget)
    }

    fn class_scales(&self, classes: &[&WindowSet2D], r2d: usize) -> Result<Vec<usize>, SetError> {
        classes.iter().map(|m| ps_scale_2d(m, r2d)).collect()
    }
}

/// Single-threaded reference execution.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {}

/// Every intermediate stage alongside the certificate.
#[derive(Debug, Clone)]
pub struct FgOutcome {
    pub certificate: FgCertificate,
    pub b: WindowSet2D,
    pub m: WindowSet2D,
    pub class_scales: Vec<(ColorTriple, usize)>,
}

/// The `(A, D)` box for `B`.
///
/// Let `[a, a + L)` be the leftmost longest run of the shifted union. `A` ranges
/// over `[a, a + min(L, side))` and `D` over `[-h, h]` with
/// `h = min(side / 2, (L - 1) / K)`, so that for small `|D|` the whole probe
/// progression stays inside the run.
pub fn b_box_policy(run_start: i64, run_len: usize, big_k: usize, side: usize) -> BoxBounds {
    let width = run_len.min(side).max(1) as i64;
    let h = (side / 2).min(run_len.saturating_sub(1) / big_k.max(1)) as i64;
    BoxBounds {
        x_lo: run_start,
        x_hi: run_start + width,
        y_lo: -h,
        y_hi: h + 1,
    }
}

pub fn fg_construct(s: &WindowSet1D, params: &FgParams) -> Result<FgOutcome, PipelineError> {
    fg_construct_with(s, params, &Sequential)
}

pub fn fg_construct_with<E: Executor>(
    s: &WindowSet1D,
    params: &FgParams,
    exec: &E,
) -> Result<FgOutcome, PipelineError> {
    let FgParams {
        r,
        k,
        budget,
        box_side,
        min_scale,
        ..
    } = *params;
    for (name, v) in [("r", r), ("k", k), ("box_side", box_side)] {
        if v == 0 {
            return Err(PipelineError::ZeroParam(name));
        }
    }
    if budget == 0 {
        return Err(PipelineError::ZeroParam("budget"));
    }

    let l_in = ps_scale_1d(s, r)?;
    if l_in == 0 {
        return Err(PipelineError::NotPiecewiseSyndetic { r });
    }
    if l_in < min_scale {
        return Err(PipelineError::ScaleUnmet {
            r,
            required: min_scale,
            achieved: l_in,
        });
    }

    let search = VdwSearch::new(r, k + 1)?;
    let vdw = exec.vdw(&search, budget)?;
    if !vdw.exhaustive {
        return Err(PipelineError::BudgetExhausted {
            r,
            len: k + 1,
            spent: vdw.budget_spent,
        });
    }
    let big_k = vdw.n - 1;
    let r2d = params.r2d.unwrap_or(big_k).max(1);

    let u = shifted_union_1d(s, r)?;
    let (run_start, _) = u
        .runs()
        .find(|&(a, b)| (b - a) as usize == l_in)
        .ok_or(PipelineError::Internal("longest run vanished"))?;
    let bx = b_box_policy(run_start, l_in, big_k, box_side);
    let built = build_b(s, r, big_k, bx)?;
    if built.b.is_empty() {
        return Err(PipelineError::EmptyB);
    }

    let ctx = PhiContext { s, r, k, big_k };
    let classes: BTreeMap<ColorTriple, WindowSet2D> = color_classes(&built.b, &ctx)?;
    let triples: Vec<ColorTriple> = classes.keys().copied().collect();
    let sets: Vec<&WindowSet2D> = classes.values().collect();
    let scales = exec.class_scales(&sets, r2d)?;
    let scored: Vec<(ColorTriple, usize, bool)> = triples
        .iter()
        .zip(&scales)
        .zip(&sets)
        .map(|((t, s), m)| (*t, *s, !m.is_empty()))
        .collect();
    let best = select_best(&scored).ok_or(PipelineError::NoClasses)?;
    let triple = triples[best];
    let m = classes[&triple].clone();

    let map = AffineMap2D::new(triple.alpha as i64, triple.t as i64, triple.delta as i64)?;
    let mtilde = affine_image(&m, map)?;
    let kk = k as i64;
    for (a, d) in mtilde.iter() {
        if !(0..=kk).all(|i| s.contains(a + i * d) == Ok(true)) {
            return Err(PipelineError::Internal("M-tilde pair leaves S"));
        }
    }
    let l_out = ps_scale_2d(&mtilde, r2d)?;

    let certificate = FgCertificate {
        tool: crate::TOOL_VERSION.to_string(),
        input: InputDigest::of(s),
        r,
        k,
        r2d,
        box_side,
        big_k,
        k_exhaustive: vdw.exhaustive,
        triple,
        l_in,
        b_box: bx,
        b_size: built.b.len(),
        b_boundary: built.boundary,
        m_size: m.len(),
        mtilde,
        l_out,
    };
    Ok(FgOutcome {
        certificate,
        b: built.b,
        m,
        class_scales: triples.into_iter().zip(scales).collect(),
    })
}
