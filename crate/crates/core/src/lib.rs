//! Finite-window models of large sets of integers and the machinery built on them.
//!
//! The crate is split along the lines of the construction it executes:
//!
//! * [`sets`] holds bitmask models of subsets of an integer interval and of an
//!   integer box, together with scale-indexed thickness and piecewise
//!   syndeticity predicates.
//! * [`vdw`] is an exhaustive depth-first search for van der Waerden numbers
//!   and monochromatic arithmetic progressions.
//! * [`pipeline`] turns a piecewise syndetic set `S` into a piecewise syndetic
//!   set of pairs `(a, d)` with `a, a + d, ..., a + kd` all in `S`, plus the
//!   single-progression finder and the partition extractor.
//! * [`certify`] is the certificate data model and an independent verifier that
//!   re-derives every claim by brute force.
//!
//! Everything here is `no_std` with `alloc`. File formats, threads and the
//! command line live in the `syndetic` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod bits;

pub mod certify;
pub mod generate;
pub mod pipeline;
pub mod sets;
pub mod vdw;

pub use certify::{verify_fg, Claim, FgCertificate, InputDigest, Verdict, VerifyError};
pub use generate::{gen_example, ExampleKind, GenError};
pub use pipeline::{
    affine_image, build_b, color_classes, fg_construct, partition_extract, pigeonhole_extract,
    theorem1_find_ap, AffineMap2D, ApPair, BoxBounds, ColorTriple, FgOutcome, FgParams, PhiContext,
    PipelineError,
};
pub use sets::{
    contains_interval, contains_square, is_ps_at_scale, ps_scale_1d, ps_scale_2d, shifted_union_1d,
    shifted_union_2d, PsWitness1D, Scale, SetError, WindowSet1D, WindowSet2D,
};
pub use vdw::{
    find_mono_ap, vdw_number, vdw_witness_k, ApIndex, Coloring, MonoAp, VdwError, VdwResult,
    VdwSearch,
};

/// Version tag written into certificates.
pub const TOOL_VERSION: &str = concat!("syndetic-", env!("CARGO_PKG_VERSION"));
