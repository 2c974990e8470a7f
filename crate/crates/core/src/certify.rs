//! Certificates for the pair construction and an independent verifier.
//!
//! The verifier shares nothing with [`crate::pipeline`]: it recomputes the
//! box, `B`, `φ`, the color classes and `M̃` with its own brute-force loops and
//! uses only the scale primitives from [`crate::sets`] and the vdW search.
//!
//! # Input digest
//!
//! The digest is SHA-256 over the canonical text form of `S`: the line
//! `window1d <lo> <hi>\n` followed by `run <a> <b>\n` for every maximal run
//! `[a, b)` of members in ascending order, integers in decimal.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::pipeline::{BoxBounds, ColorTriple};
use crate::sets::{is_ps_at_scale, ps_scale_1d, ps_scale_2d, Scale, WindowSet1D, WindowSet2D};
use crate::vdw::vdw_number;

/// Binds a certificate to its input set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InputDigest {
    pub lo: i64,
    pub hi: i64,
    pub members: usize,
    pub sha256: [u8; 32],
}

struct HashWriter(Sha256);

impl fmt::Write for HashWriter {
    fn write_str(&mut self, s: &str) -> fmt::Result {
        self.0.update(s.as_bytes());
        Ok(())
    }
}

impl InputDigest {
    pub fn of(s: &WindowSet1D) -> Self {
        let mut h = HashWriter(Sha256::new());
        // Writing into a hasher cannot fail.
        let _ = writeln!(h, "window1d {} {}", s.lo(), s.hi());
        for (a, b) in s.runs() {
            let _ = writeln!(h, "run {a} {b}");
        }
        InputDigest {
            lo: s.lo(),
            hi: s.hi(),
            members: s.len(),
            sha256: h.0.finalize().into(),
        }
    }

    pub fn hex(&self) -> String {
        let mut out = String::with_capacity(64);
        for b in self.sha256 {
            let _ = write!(out, "{b:02x}");
        }
        out
    }
}

/// Transcript of one run of the pair construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgCertificate {
    pub tool: String,
    pub input: InputDigest,
    pub r: usize,
    pub k: usize,
    pub r2d: usize,
    pub box_side: usize,
    pub big_k: usize,
    pub k_exhaustive: bool,
    pub triple: ColorTriple,
    /// `ps_scale_1d(S, r)`.
    pub l_in: usize,
    pub b_box: BoxBounds,
    pub b_size: usize,
    pub b_boundary: usize,
    pub m_size: usize,
    pub mtilde: WindowSet2D,
    /// `ps_scale_2d(M̃, r2d)`.
    pub l_out: usize,
}

/// Claims in the order the verifier checks them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// `S` reaches scale `(r, l_in)`, and `l_in` is its exact scale.
    InputScale = 1,
    /// Every `(a, d) ∈ M̃` has `a + i·d ∈ S` for `i = 0..=k`.
    ApMembership = 2,
    /// `ps_scale_2d(M̃, r2d) ≥ l_out`, with `l_out` exact.
    OutputScale = 3,
    /// `K = W(r, k + 1) - 1` when a local search settles it.
    VdwConstant = 4,
    /// Box, `B`, the triple, `M` and `M̃` match a brute-force rerun.
    Transcript = 5,
}

impl Claim {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Claim::InputScale => "input-scale",
            Claim::ApMembership => "ap-membership",
            Claim::OutputScale => "output-scale",
            Claim::VdwConstant => "vdw-constant",
            Claim::Transcript => "transcript",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.number(), self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass { advisories: Vec<String> },
    Fail { claim: Claim, detail: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("certificate is for a different input: {0}")]
    DigestMismatch(&'static str),
}

/// Node budget the verifier gives its own vdW recomputation.
pub const DEFAULT_VERIFY_BUDGET: u64 = 1 << 32;

fn fail(claim: Claim, detail: String) -> Verdict {
    Verdict::Fail { claim, detail }
}

/// Re-derives every claim in `cert` from `s`.
pub fn verify_fg(cert: &FgCertificate, s: &WindowSet1D) -> Result<Verdict, VerifyError> {
    verify_fg_with_budget(cert, s, DEFAULT_VERIFY_BUDGET)
}

pub fn verify_fg_with_budget(
    cert: &FgCertificate,
    s: &WindowSet1D,
    vdw_budget: u64,
) -> Result<Verdict, VerifyError> {
    let d = InputDigest::of(s);
    if (d.lo, d.hi) != (cert.input.lo, cert.input.hi) {
        return Err(VerifyError::DigestMismatch("window bounds"));
    }
    if d.members != cert.input.members {
        return Err(VerifyError::DigestMismatch("member count"));
    }
    if d.sha256 != cert.input.sha256 {
        return Err(VerifyError::DigestMismatch("member hash"));
    }
    let mut advisories = Vec::new();

    // (1)
    let scale = match Scale::new(cert.r, cert.l_in) {
        Ok(sc) => sc,
        Err(e) => return Ok(fail(Claim::InputScale, format!("{e}"))),
    };
    match is_ps_at_scale(s, scale) {
        Ok(Some(_)) => {}
        Ok(None) => {
            return Ok(fail(
                Claim::InputScale,
                format!("S has no run of length {} at radius {}", cert.l_in, cert.r),
            ))
        }
        Err(e) => return Ok(fail(Claim::InputScale, format!("{e}"))),
    }
    match ps_scale_1d(s, cert.r) {
        Ok(l) if l == cert.l_in => {}
        Ok(l) => {
            return Ok(fail(
                Claim::InputScale,
                format!("claimed l_in {} but S reaches {l}", cert.l_in),
            ))
        }
        Err(e) => return Ok(fail(Claim::InputScale, format!("{e}"))),
    }

    // (2)
    if cert.k == 0 {
        return Ok(fail(Claim::ApMembership, "k must be at least 1".into()));
    }
    for (a, dd) in cert.mtilde.iter() {
        for i in 0..=cert.k as i64 {
            let p = a.checked_add(dd.saturating_mul(i));
            if p.and_then(|p| s.get(p)) != Some(true) {
                return Ok(fail(
                    Claim::ApMembership,
                    format!("({a}, {dd}): term {i} is not in S"),
                ));
            }
        }
    }
    if cert.mtilde.is_empty() {
        return Ok(fail(Claim::ApMembership, "M-tilde is empty".into()));
    }

    // (3)
    let out = match ps_scale_2d(&cert.mtilde, cert.r2d) {
        Ok(l) => l,
        Err(e) => return Ok(fail(Claim::OutputScale, format!("{e}"))),
    };
    if out < cert.l_out {
        return Ok(fail(
            Claim::OutputScale,
            format!("claimed l_out {} but M-tilde reaches {out}", cert.l_out),
        ));
    }
    if out != cert.l_out {
        return Ok(fail(
            Claim::OutputScale,
            format!(
                "claimed l_out {} understates the recomputed {out}",
                cert.l_out
            ),
        ));
    }

    // (4)
    match vdw_number(cert.r, cert.k + 1, vdw_budget) {
        Ok(res) if res.exhaustive => {
            if cert.big_k + 1 != res.n || !cert.k_exhaustive {
                return Ok(fail(
                    Claim::VdwConstant,
                    format!(
                        "recomputed W({}, {}) = {}, certificate has K = {} (exhaustive: {})",
                        cert.r,
                        cert.k + 1,
                        res.n,
                        cert.big_k,
                        cert.k_exhaustive
                    ),
                ));
            }
        }
        Ok(res) => {
            if cert.big_k + 1 < res.n {
                return Ok(fail(
                    Claim::VdwConstant,
                    format!("K = {} but W > {} is already known", cert.big_k, res.n - 1),
                ));
            }
            advisories.push(format!(
                "K = {} not confirmed: local search stopped at lower bound {}",
                cert.big_k, res.n
            ));
        }
        Err(e) => return Ok(fail(Claim::VdwConstant, format!("{e}"))),
    }

    // (5)
    if let Err(detail) = recheck_transcript(cert, s) {
        return Ok(fail(Claim::Transcript, detail));
    }

    Ok(Verdict::Pass { advisories })
}

/// Brute-force rerun of the construction, compared field by field.
fn recheck_transcript(cert: &FgCertificate, s: &WindowSet1D) -> Result<(), String> {
    let r = cert.r as i64;
    let k = cert.k as i64;
    let big_k = cert.big_k as i64;
    if cert.box_side == 0 || cert.big_k == 0 || cert.r2d == 0 {
        return Err("box_side, K and r2d must be positive".into());
    }
    let (u_lo, u_hi) = (s.lo() - r, s.hi() - 1);
    let in_union = |m: i64| (1..=r).any(|t| s.get(m + t) == Some(true));

    // Leftmost longest run of the shifted union.
    let (mut best_start, mut best_len) = (u_lo, 0i64);
    let mut m = u_lo;
    while m < u_hi {
        if in_union(m) {
            let start = m;
            while m < u_hi && in_union(m) {
                m += 1;
            }
            if m - start > best_len {
                best_start = start;
                best_len = m - start;
            }
        } else {
            m += 1;
        }
    }
    let side = cert.box_side as i64;
    let width = best_len.min(side).max(1);
    let h = (side / 2).min((best_len - 1).max(0) / big_k);
    let expect_box = BoxBounds {
        x_lo: best_start,
        x_hi: best_start + width,
        y_lo: -h,
        y_hi: h + 1,
    };
    if expect_box != cert.b_box {
        return Err(format!("B box {:?}, expected {:?}", cert.b_box, expect_box));
    }

    let mut b_pairs = Vec::new();
    let mut boundary = 0usize;
    for dd in expect_box.y_lo..expect_box.y_hi {
        for a in expect_box.x_lo..expect_box.x_hi {
            let last = a + big_k * dd;
            if a < u_lo || a >= u_hi || last < u_lo || last >= u_hi {
                boundary += 1;
            } else if (0..=big_k).all(|i| in_union(a + i * dd)) {
                b_pairs.push((a, dd));
            }
        }
    }
    if b_pairs.len() != cert.b_size || boundary != cert.b_boundary {
        return Err(format!(
            "|B| = {} with {} boundary pairs, certificate says {} and {}",
            b_pairs.len(),
            boundary,
            cert.b_size,
            cert.b_boundary
        ));
    }

    let ColorTriple { alpha, delta, t } = cert.triple;
    if t == 0 || t > cert.r || delta == 0 || alpha + cert.k * delta > cert.big_k {
        return Err(format!("triple {:?} is out of range", cert.triple));
    }

    // φ by exhaustive scan; key is (t, δ, α) so the map orders classes the same way.
    let mut classes: BTreeMap<(i64, i64, i64), Vec<(i64, i64)>> = BTreeMap::new();
    for &(a, dd) in &b_pairs {
        let mut found = None;
        'scan: for tt in 1..=r {
            for de in 1..=big_k {
                for al in 0..=big_k {
                    if al + k * de > big_k {
                        continue;
                    }
                    if (0..=k).all(|i| s.get(a + (al + i * de) * dd + tt) == Some(true)) {
                        found = Some((tt, de, al));
                        break 'scan;
                    }
                }
            }
        }
        let key = found.ok_or_else(|| format!("no triple colors ({a}, {dd})"))?;
        classes.entry(key).or_default().push((a, dd));
    }

    let key = (t as i64, delta as i64, alpha as i64);
    let chosen = classes
        .get(&key)
        .ok_or_else(|| format!("class {:?} is empty", cert.triple))?;
    if chosen.len() != cert.m_size {
        return Err(format!(
            "|M| = {}, certificate says {}",
            chosen.len(),
            cert.m_size
        ));
    }

    // M-tilde and its box: image of the B box corners under (A, D) -> (A + αD + t, δD).
    let img = |a: i64, dd: i64| (a + alpha as i64 * dd + t as i64, delta as i64 * dd);
    let corners = [
        img(expect_box.x_lo, expect_box.y_lo),
        img(expect_box.x_lo, expect_box.y_hi - 1),
        img(expect_box.x_hi - 1, expect_box.y_lo),
        img(expect_box.x_hi - 1, expect_box.y_hi - 1),
    ];
    let mbox = (
        corners.iter().map(|c| c.0).min().unwrap(),
        corners.iter().map(|c| c.0).max().unwrap() + 1,
        corners.iter().map(|c| c.1).min().unwrap(),
        corners.iter().map(|c| c.1).max().unwrap() + 1,
    );
    if mbox != cert.mtilde.bounds() {
        return Err(format!(
            "M-tilde box {:?}, expected {:?}",
            cert.mtilde.bounds(),
            mbox
        ));
    }
    let mut expect: Vec<(i64, i64)> = chosen.iter().map(|&(a, dd)| img(a, dd)).collect();
    expect.sort_unstable();
    let mut got: Vec<(i64, i64)> = cert.mtilde.iter().collect();
    got.sort_unstable();
    if expect != got {
        return Err("M-tilde differs from the image of M".into());
    }

    // The chosen class maximizes the 2D scale, ties to the least triple.
    let mut best: Option<((i64, i64, i64), usize)> = None;
    for (key, pts) in &classes {
        let mut m = WindowSet2D::empty(
            expect_box.x_lo,
            expect_box.x_hi,
            expect_box.y_lo,
            expect_box.y_hi,
        )
        .map_err(|e| format!("{e}"))?;
        for &(a, dd) in pts {
            m.insert(a, dd).map_err(|e| format!("{e}"))?;
        }
        let sc = ps_scale_2d(&m, cert.r2d).map_err(|e| format!("{e}"))?;
        if best.is_none_or(|(_, b)| sc > b) {
            best = Some((*key, sc));
        }
    }
    match best {
        Some((k2, _)) if k2 == key => Ok(()),
        Some((k2, sc)) => Err(format!(
            "class (t, delta, alpha) = {k2:?} scores {sc}, better than the chosen triple"
        )),
        None => Err("B has no classes".into()),
    }
}
