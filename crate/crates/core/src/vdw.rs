//! Exhaustive search for van der Waerden numbers.
//!
//! `W(r, k)` is the least `N` such that every `r`-coloring of `N` consecutive
//! positions has a monochromatic `k`-term arithmetic progression. The search
//! walks colorings position by position, rejecting any extension that closes a
//! monochromatic progression, and reports the longest surviving coloring.
//!
//! Colors are explored in ascending order and only in first-appearance order
//! (position 0 gets color 1, and a new color is always the next unused one).
//! The lexicographically least coloring of any length is of that form, so the
//! cut changes neither `W` nor the reported extremal coloring.
//!
//! The tree is split at a fixed depth into a frontier of prefixes. Subtrees are
//! folded in frontier order against the node budget, which makes the result,
//! including `budget_spent`, independent of how subtrees are scheduled.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// A coloring of positions `0..n` with colors `1..=r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    r: u8,
    colors: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VdwError {
    #[error("number of colors must be between 1 and 255, got {0}")]
    BadColorCount(usize),
    #[error("progression length must be at least 1")]
    ZeroLength,
    #[error("node budget must be positive")]
    ZeroBudget,
    #[error("color {color} at position {pos} is outside 1..={r}")]
    BadColor { pos: usize, color: u8, r: u8 },
}

impl Coloring {
    pub fn new(r: usize, colors: Vec<u8>) -> Result<Self, VdwError> {
        let r = color_count(r)?;
        if let Some((pos, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > r) {
            return Err(VdwError::BadColor { pos, color, r });
        }
        Ok(Coloring { r, colors })
    }

    pub fn r(&self) -> usize {
        self.r as usize
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn color(&self, pos: usize) -> u8 {
        self.colors[pos]
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring(r={}) ", self.r)?;
        for c in &self.colors {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn color_count(r: usize) -> Result<u8, VdwError> {
    match u8::try_from(r) {
        Ok(r) if r >= 1 => Ok(r),
        _ => Err(VdwError::BadColorCount(r)),
    }
}

/// Index progression `alpha, alpha + delta, ..., alpha + (len - 1)·delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ApIndex {
    pub alpha: usize,
    pub delta: usize,
    pub len: usize,
}

impl ApIndex {
    pub fn indices(&self) -> impl Iterator<Item = usize> {
        let ApIndex { alpha, delta, len } = *self;
        (0..len).map(move |i| alpha + i * delta)
    }

    pub fn last(&self) -> usize {
        self.alpha + (self.len.saturating_sub(1)) * self.delta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonoAp {
    pub ap: ApIndex,
    pub color: u8,
}

/// Least `(delta, alpha)` monochromatic `k`-term progression in `c`.
pub fn find_mono_ap(c: &Coloring, k: usize) -> Option<MonoAp> {
    let n = c.n();
    if k == 0 || n == 0 {
        return None;
    }
    if k == 1 {
        return Some(MonoAp {
            ap: ApIndex {
                alpha: 0,
                delta: 1,
                len: 1,
            },
            color: c.color(0),
        });
    }
    let max_delta = (n - 1) / (k - 1);
    for delta in 1..=max_delta {
        for alpha in 0..n - (k - 1) * delta {
            let color = c.color(alpha);
            if (1..k).all(|i| c.color(alpha + i * delta) == color) {
                let ap = ApIndex {
                    alpha,
                    delta,
                    len: k,
                };
                debug_assert!(ap.indices().all(|i| c.color(i) == color));
                return Some(MonoAp { ap, color });
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VdwResult {
    /// `W(r, k)` when `exhaustive`, otherwise a lower bound.
    pub n: usize,
    /// Coloring of `n - 1` positions with no monochromatic `k`-term progression.
    pub extremal: Coloring,
    pub exhaustive: bool,
    pub budget_spent: u64,
}

/// Outcome of searching below one frontier prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeOutcome {
    pub nodes: u64,
    pub best: Vec<u8>,
    pub complete: bool,
}

/// Depth at which the search tree is cut into independent subtrees.
pub const SPLIT_DEPTH: usize = 12;

/// Search configuration for one `(r, k)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VdwSearch {
    r: u8,
    k: usize,
}

/// Prefixes at [`SPLIT_DEPTH`] plus what the shallow walk already established.
#[derive(Debug, Clone)]
pub struct Frontier {
    pub prefixes: Vec<Vec<u8>>,
    pub nodes: u64,
    pub best: Vec<u8>,
    pub complete: bool,
}

impl VdwSearch {
    pub fn new(r: usize, k: usize) -> Result<Self, VdwError> {
        let r = color_count(r)?;
        if k == 0 {
            return Err(VdwError::ZeroLength);
        }
        Ok(VdwSearch { r, k })
    }

    pub fn r(&self) -> usize {
        self.r as usize
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Whether color `c` at position `colors.len()` avoids closing a progression.
    #[inline]
    fn extends(&self, colors: &[u8], c: u8) -> bool {
        let k = self.k;
        if k == 1 {
            return false;
        }
        let p = colors.len();
        let max_delta = p / (k - 1);
        for delta in 1..=max_delta {
            let mut j = 1;
            while j < k && colors[p - j * delta] == c {
                j += 1;
            }
            if j == k {
                return false;
            }
        }
        true
    }

    /// Depth-first walk below `prefix`, stopping at `depth_cap` (collected into
    /// `leaves`) or after `budget` nodes.
    fn walk(
        &self,
        prefix: &[u8],
        budget: u64,
        depth_cap: usize,
        mut leaves: Option<&mut Vec<Vec<u8>>>,
    ) -> SubtreeOutcome {
        let base = prefix.len();
        let mut colors: Vec<u8> = prefix.to_vec();
        let mut best = colors.clone();
        let mut nodes = 0u64;
        // max_used[d]: largest color among the first d positions.
        let mut max_used: Vec<u8> = vec![0];
        for &c in prefix {
            let m = *max_used.last().unwrap();
            max_used.push(m.max(c));
        }
        let mut next: Vec<u8> = vec![1];

        if base >= depth_cap {
            if let Some(l) = leaves.as_deref_mut() {
                l.push(colors);
            }
            return SubtreeOutcome {
                nodes,
                best,
                complete: true,
            };
        }

        loop {
            let d = colors.len();
            let level = d - base;
            let limit = self.r.min(max_used[d].saturating_add(1));
            let c = next[level];
            if c > limit {
                if d == base {
                    return SubtreeOutcome {
                        nodes,
                        best,
                        complete: true,
                    };
                }
                colors.pop();
                next.pop();
                max_used.pop();
                continue;
            }
            next[level] += 1;
            if !self.extends(&colors, c) {
                continue;
            }
            if nodes == budget {
                return SubtreeOutcome {
                    nodes,
                    best,
                    complete: false,
                };
            }
            nodes += 1;
            colors.push(c);
            if colors.len() > best.len() {
                best.clone_from(&colors);
            }
            if colors.len() >= depth_cap {
                if let Some(l) = leaves.as_deref_mut() {
                    l.push(colors.clone());
                }
                colors.pop();
                continue;
            }
            max_used.push(max_used[d].max(c));
            next.push(1);
        }
    }

    /// Walks the tree down to [`SPLIT_DEPTH`], spending at most `budget` nodes.
    pub fn frontier(&self, budget: u64) -> Frontier {
        let mut prefixes = Vec::new();
        let out = self.walk(&[], budget, SPLIT_DEPTH, Some(&mut prefixes));
        Frontier {
            prefixes,
            nodes: out.nodes,
            best: out.best,
            complete: out.complete,
        }
    }

    /// Exhaustive search below `prefix` with a node budget.
    pub fn subtree(&self, prefix: &[u8], budget: u64) -> SubtreeOutcome {
        self.walk(prefix, budget, usize::MAX, None)
    }

    /// Runs the search, folding subtrees in frontier order.
    ///
    /// `speculate` may return outcomes for any leading run of prefixes computed
    /// with the budget it is handed (for example in parallel). Outcomes that
    /// completed within the budget remaining at their turn are reused; anything
    /// else is recomputed here, so the result never depends on `speculate`.
    pub fn run_with<F>(&self, budget: u64, speculate: F) -> Result<VdwResult, VdwError>
    where
        F: FnOnce(&VdwSearch, &[Vec<u8>], u64) -> Vec<SubtreeOutcome>,
    {
        if budget == 0 {
            return Err(VdwError::ZeroBudget);
        }
        let frontier = self.frontier(budget);
        let mut spent = frontier.nodes;
        let mut best = frontier.best;
        let mut exhaustive = frontier.complete;
        if exhaustive && !frontier.prefixes.is_empty() {
            let remaining = budget - spent;
            let guesses = speculate(self, &frontier.prefixes, remaining);
            for (i, prefix) in frontier.prefixes.iter().enumerate() {
                let remaining = budget - spent;
                let out = match guesses.get(i) {
                    Some(g) if g.complete && g.nodes <= remaining => g.clone(),
                    _ => self.subtree(prefix, remaining),
                };
                spent += out.nodes;
                if out.best.len() > best.len() {
                    best = out.best;
                }
                if !out.complete {
                    exhaustive = false;
                    break;
                }
            }
        }
        Ok(VdwResult {
            n: best.len() + 1,
            extremal: Coloring {
                r: self.r,
                colors: best,
            },
            exhaustive,
            budget_spent: spent,
        })
    }

    pub fn run(&self, budget: u64) -> Result<VdwResult, VdwError> {
        self.run_with(budget, |_, _, _| Vec::new())
    }
}

/// `W(r, k)` by exhaustive search, or a flagged lower bound if `budget` nodes run out.
pub fn vdw_number(r: usize, k: usize, budget: u64) -> Result<VdwResult, VdwError> {
    VdwSearch::new(r, k)?.run(budget)
}

/// The constant `K = W(r, k + 1) - 1`: every `r`-coloring of `{0, ..., K}` holds a
/// monochromatic `(k + 1)`-term progression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KWitness {
    pub big_k: usize,
    pub vdw: VdwResult,
}

impl KWitness {
    pub fn exhaustive(&self) -> bool {
        self.vdw.exhaustive
    }
}

pub fn vdw_witness_k(r: usize, k: usize, budget: u64) -> Result<KWitness, VdwError> {
    let vdw = vdw_number(r, k.checked_add(1).ok_or(VdwError::ZeroLength)?, budget)?;
    Ok(KWitness {
        big_k: vdw.n - 1,
        vdw,
    })
}
