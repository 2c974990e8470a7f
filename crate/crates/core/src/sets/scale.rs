use alloc::vec;
use alloc::vec::Vec;

use super::{SetError, WindowSet1D, WindowSet2D};

/// A quantitative largeness witness: shift radius `r` and required length `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scale {
    r: usize,
    len: usize,
}

impl Scale {
    pub fn new(r: usize, len: usize) -> Result<Self, SetError> {
        if r == 0 || len == 0 {
            return Err(SetError::ZeroScale { r, len });
        }
        Ok(Scale { r, len })
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }
}

/// `S` is piecewise syndetic at `scale`: `[start, start + L)` lies in the union of `S - t`, `1 ≤ t ≤ r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PsWitness1D {
    pub scale: Scale,
    pub start: i64,
}

fn check_radius(r: usize) -> Result<i64, SetError> {
    if r == 0 {
        return Err(SetError::ZeroScale { r, len: 1 });
    }
    i64::try_from(r).map_err(|_| SetError::WindowTooLarge { cells: r as u64 })
}

/// Start of the leftmost run of `len` consecutive members, scanning the window only.
///
/// A zero `len` is satisfied at the window start.
pub fn contains_interval(s: &WindowSet1D, len: usize) -> Option<i64> {
    if len == 0 {
        return Some(s.lo());
    }
    s.runs()
        .find(|&(a, b)| (b - a) as usize >= len)
        .map(|(a, _)| a)
}

/// The union of `S - t` for `t = 1..=r`, on the window `[lo - r, hi - 1)`.
///
/// Points of `S` are only known inside its window, so a point of the result is a
/// member iff some `m + t` with `1 ≤ t ≤ r` is a member of `S` inside `S`'s window.
pub fn shifted_union_1d(s: &WindowSet1D, r: usize) -> Result<WindowSet1D, SetError> {
    let ri = check_radius(r)?;
    let lo = s
        .lo()
        .checked_sub(ri)
        .ok_or(SetError::WindowTooLarge { cells: r as u64 })?;
    let hi = s.hi() - 1;
    let mut out = WindowSet1D::empty(lo, hi)?;
    // Walk downward remembering the nearest member of S above the current point.
    let mut next: Option<i64> = None;
    let mut m = hi - 1;
    while m >= lo {
        if s.get(m + 1) == Some(true) {
            next = Some(m + 1);
        }
        if matches!(next, Some(n) if n - m <= ri) {
            out.insert(m)?;
        }
        m -= 1;
    }
    Ok(out)
}

pub fn is_ps_at_scale(s: &WindowSet1D, scale: Scale) -> Result<Option<PsWitness1D>, SetError> {
    let u = shifted_union_1d(s, scale.r())?;
    Ok(contains_interval(&u, scale.len()).map(|start| PsWitness1D { scale, start }))
}

/// Longest run in the shifted union at radius `r`; 0 when there is none.
pub fn ps_scale_1d(s: &WindowSet1D, r: usize) -> Result<usize, SetError> {
    let u = shifted_union_1d(s, r)?;
    Ok(longest_run(&u))
}

pub(crate) fn longest_run(s: &WindowSet1D) -> usize {
    s.runs().map(|(a, b)| (b - a) as usize).max().unwrap_or(0)
}

/// The union of `M - (t1, t2)` over `1 ≤ t1, t2 ≤ r`, on the box
/// `[x_lo - r, x_hi - 1) × [y_lo - r, y_hi - 1)`.
pub fn shifted_union_2d(m: &WindowSet2D, r: usize) -> Result<WindowSet2D, SetError> {
    let ri = check_radius(r)?;
    let (x_lo, x_hi, y_lo, y_hi) = m.bounds();
    let (nx_lo, nx_hi, ny_lo, ny_hi) = (x_lo - ri, x_hi - 1, y_lo - ri, y_hi - 1);
    let mut out = WindowSet2D::empty(nx_lo, nx_hi, ny_lo, ny_hi)?;
    let nw = (nx_hi - nx_lo) as usize;

    // Horizontal pass over the source rows, then a vertical pass over columns.
    let src_h = m.height();
    let mut horiz = vec![false; nw * src_h];
    for (row, y) in (y_lo..y_hi).enumerate() {
        let mut next: Option<i64> = None;
        let mut x = nx_hi - 1;
        while x >= nx_lo {
            if m.get(x + 1, y) == Some(true) {
                next = Some(x + 1);
            }
            if matches!(next, Some(n) if n - x <= ri) {
                horiz[row * nw + (x - nx_lo) as usize] = true;
            }
            x -= 1;
        }
    }
    for (col, x) in (nx_lo..nx_hi).enumerate() {
        let mut next: Option<i64> = None;
        let mut y = ny_hi - 1;
        while y >= ny_lo {
            let above = y + 1;
            if above >= y_lo && above < y_hi && horiz[(above - y_lo) as usize * nw + col] {
                next = Some(above);
            }
            if matches!(next, Some(n) if n - y <= ri) {
                out.insert(x, y)?;
            }
            y -= 1;
        }
    }
    Ok(out)
}

/// For each cell, the side of the largest filled square with that cell as its
/// lower-left corner. Indexed like the set's rows: `(y - y_lo) * width + (x - x_lo)`.
pub fn square_sides(m: &WindowSet2D) -> Vec<u32> {
    let w = m.width();
    let h = m.height();
    let mut side = vec![0u32; w * h];
    let (x_lo, _, y_lo, _) = m.bounds();
    for row in (0..h).rev() {
        for col in (0..w).rev() {
            if m.get(x_lo + col as i64, y_lo + row as i64) != Some(true) {
                continue;
            }
            let right = if col + 1 < w {
                side[row * w + col + 1]
            } else {
                0
            };
            let up = if row + 1 < h {
                side[(row + 1) * w + col]
            } else {
                0
            };
            let diag = if col + 1 < w && row + 1 < h {
                side[(row + 1) * w + col + 1]
            } else {
                0
            };
            side[row * w + col] = 1 + right.min(up).min(diag);
        }
    }
    side
}

/// Lexicographically least `(x, y)` with `[x, x+L) × [y, y+L)` filled.
pub fn contains_square(m: &WindowSet2D, len: usize) -> Option<(i64, i64)> {
    if len == 0 {
        return Some((m.x_lo(), m.y_lo()));
    }
    let w = m.width();
    let h = m.height();
    if len > w || len > h {
        return None;
    }
    let side = square_sides(m);
    for col in 0..w {
        for row in 0..h {
            if side[row * w + col] as usize >= len {
                return Some((m.x_lo() + col as i64, m.y_lo() + row as i64));
            }
        }
    }
    None
}

/// Largest `L` such that the radius-`r` shifted union holds a filled `L × L` square.
pub fn ps_scale_2d(m: &WindowSet2D, r: usize) -> Result<usize, SetError> {
    let u = shifted_union_2d(m, r)?;
    Ok(square_sides(&u).into_iter().max().unwrap_or(0) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    // Oracles: direct double/triple loops over the definitions.

    fn naive_union_1d(s: &WindowSet1D, r: usize) -> Vec<i64> {
        let r = r as i64;
        (s.lo() - r..s.hi() - 1)
            .filter(|&m| (1..=r).any(|t| s.get(m + t) == Some(true)))
            .collect()
    }

    fn naive_union_2d(m: &WindowSet2D, r: usize) -> Vec<(i64, i64)> {
        let r = r as i64;
        let (x_lo, x_hi, y_lo, y_hi) = m.bounds();
        let mut pts = Vec::new();
        for y in y_lo - r..y_hi - 1 {
            for x in x_lo - r..x_hi - 1 {
                let hit = (1..=r).any(|t1| (1..=r).any(|t2| m.get(x + t1, y + t2) == Some(true)));
                if hit {
                    pts.push((x, y));
                }
            }
        }
        pts
    }

    fn naive_square(m: &WindowSet2D, len: usize) -> Option<(i64, i64)> {
        let l = len as i64;
        let (x_lo, x_hi, y_lo, y_hi) = m.bounds();
        for x in x_lo..x_hi {
            for y in y_lo..y_hi {
                let filled = (0..l).all(|dx| (0..l).all(|dy| m.get(x + dx, y + dy) == Some(true)));
                if filled {
                    return Some((x, y));
                }
            }
        }
        None
    }

    fn naive_longest_run(members: &[i64]) -> usize {
        let mut best = 0;
        let mut cur = 0;
        let mut prev: Option<i64> = None;
        for &m in members {
            cur = if prev == Some(m - 1) { cur + 1 } else { 1 };
            best = best.max(cur);
            prev = Some(m);
        }
        best
    }

    fn set1(lo: i64, hi: i64, m: &[i64]) -> WindowSet1D {
        WindowSet1D::from_members(lo, hi, m.iter().copied()).unwrap()
    }

    #[test]
    fn contains_interval_examples() {
        assert_eq!(contains_interval(&set1(0, 5, &[0, 1, 2, 3, 4]), 5), Some(0));
        assert_eq!(contains_interval(&set1(0, 5, &[0, 2, 4]), 2), None);
        // Scan by hand: runs are [3,6) and [9,10).
        assert_eq!(contains_interval(&set1(0, 12, &[3, 4, 5, 9]), 3), Some(3));
        assert_eq!(contains_interval(&set1(0, 5, &[0, 1, 2, 3, 4]), 6), None);
    }

    #[test]
    fn shifted_union_examples() {
        let u = shifted_union_1d(&set1(0, 10, &[5]), 2).unwrap();
        assert_eq!((u.lo(), u.hi()), (-2, 9));
        assert_eq!(u.iter().collect::<Vec<_>>(), [3, 4]);

        let u = shifted_union_1d(&WindowSet1D::empty(0, 10).unwrap(), 4).unwrap();
        assert!(u.is_empty());

        let u = shifted_union_1d(&set1(0, 10, &[0, 3, 6, 9]), 3).unwrap();
        assert_eq!(u.iter().collect::<Vec<_>>(), (-3..9).collect::<Vec<_>>());
        assert_eq!(
            u.iter().collect::<Vec<_>>(),
            naive_union_1d(&set1(0, 10, &[0, 3, 6, 9]), 3)
        );
    }

    #[test]
    fn ps_at_scale_examples() {
        let evens = WindowSet1D::from_members(0, 100, (0..100).step_by(2)).unwrap();
        let w = is_ps_at_scale(&evens, Scale::new(2, 50).unwrap()).unwrap();
        // Union of evens-1 and evens-2 is every integer in [-2, 98].
        assert_eq!(w.map(|w| w.start), Some(-2));

        assert_eq!(
            is_ps_at_scale(&set1(0, 5, &[0]), Scale::new(1, 2).unwrap()).unwrap(),
            None
        );

        let full = WindowSet1D::full(0, 20).unwrap();
        assert!(is_ps_at_scale(&full, Scale::new(1, 19).unwrap())
            .unwrap()
            .is_some());
        assert!(is_ps_at_scale(&full, Scale::new(1, 20).unwrap())
            .unwrap()
            .is_some());
        assert!(is_ps_at_scale(&full, Scale::new(1, 21).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn ps_scale_1d_examples() {
        assert_eq!(
            ps_scale_1d(&WindowSet1D::empty(0, 9).unwrap(), 3).unwrap(),
            0
        );
        // S - 1 = {2,3,4,8}.
        assert_eq!(ps_scale_1d(&set1(0, 12, &[3, 4, 5, 9]), 1).unwrap(), 3);
        assert!(shifted_union_1d(&set1(0, 3, &[1]), 0).is_err());
    }

    #[test]
    fn shifted_union_2d_examples() {
        let m = WindowSet2D::from_points(0, 10, 0, 10, [(5, 5)]).unwrap();
        let u = shifted_union_2d(&m, 1).unwrap();
        assert_eq!(u.iter().collect::<Vec<_>>(), [(4, 4)]);

        let e = WindowSet2D::empty(0, 4, 0, 4).unwrap();
        assert!(shifted_union_2d(&e, 3).unwrap().is_empty());

        let m = WindowSet2D::from_points(0, 2, 0, 2, [(0, 0), (1, 1)]).unwrap();
        let u = shifted_union_2d(&m, 2).unwrap();
        assert_eq!(u.iter().collect::<Vec<_>>(), naive_union_2d(&m, 2));
        // Box is [-2, 1)²: four shifts of each point, (-1,-1) reached twice.
        assert_eq!(u.len(), 7);
    }

    #[test]
    fn contains_square_examples() {
        let full = WindowSet2D::full(3, 6, -1, 2).unwrap();
        assert_eq!(contains_square(&full, 3), Some((3, -1)));

        // Remove every point with both coordinates odd: each 2x2 block loses one.
        let holes = WindowSet2D::from_points(
            0,
            8,
            0,
            8,
            (0..8)
                .flat_map(|x| (0..8).map(move |y| (x, y)))
                .filter(|&(x, y)| x % 2 == 0 || y % 2 == 0),
        )
        .unwrap();
        assert_eq!(contains_square(&holes, 2), None);
        assert_eq!(contains_square(&holes, 1), Some((0, 0)));
    }

    #[test]
    fn ps_scale_2d_examples() {
        assert_eq!(
            ps_scale_2d(&WindowSet2D::empty(0, 3, 0, 3).unwrap(), 1).unwrap(),
            0
        );
        // With r = 1 the shifted union of the full box [0,10)² is the full box [-1,9)².
        let full = WindowSet2D::full(0, 10, 0, 10).unwrap();
        assert_eq!(naive_union_2d(&full, 1).len(), 100);
        assert_eq!(ps_scale_2d(&full, 1).unwrap(), 10);
    }

    fn arb_set1d() -> impl Strategy<Value = WindowSet1D> {
        (
            -20i64..20,
            1usize..60,
            proptest::collection::vec(any::<bool>(), 60),
        )
            .prop_map(|(lo, w, coins)| {
                let hi = lo + w as i64;
                WindowSet1D::from_members(lo, hi, (lo..hi).filter(|m| coins[(m - lo) as usize]))
                    .unwrap()
            })
    }

    fn arb_set2d() -> impl Strategy<Value = WindowSet2D> {
        (
            -5i64..5,
            -5i64..5,
            1usize..10,
            1usize..10,
            proptest::collection::vec(0u8..4, 100),
        )
            .prop_map(|(x_lo, y_lo, w, h, coins)| {
                let (x_hi, y_hi) = (x_lo + w as i64, y_lo + h as i64);
                let pts = (x_lo..x_hi)
                    .flat_map(|x| (y_lo..y_hi).map(move |y| (x, y)))
                    .filter(|&(x, y)| coins[((x - x_lo) * 10 + (y - y_lo)) as usize] != 0);
                WindowSet2D::from_points(x_lo, x_hi, y_lo, y_hi, pts).unwrap()
            })
    }

    proptest! {
        #[test]
        fn union_1d_matches_definition(s in arb_set1d(), r in 1usize..8) {
            let u = shifted_union_1d(&s, r).unwrap();
            prop_assert_eq!(u.iter().collect::<Vec<_>>(), naive_union_1d(&s, r));
        }

        #[test]
        fn ps_scale_1d_is_longest_union_run(s in arb_set1d(), r in 1usize..8) {
            prop_assert_eq!(ps_scale_1d(&s, r).unwrap(), naive_longest_run(&naive_union_1d(&s, r)));
        }

        #[test]
        fn ps_scale_1d_monotone_in_r(s in arb_set1d(), r in 1usize..8) {
            prop_assert!(ps_scale_1d(&s, r + 1).unwrap() >= ps_scale_1d(&s, r).unwrap());
        }

        #[test]
        fn ps_predicate_is_monotone(s in arb_set1d(), r in 1usize..6, len in 1usize..20, dr in 0usize..4, dl in 0usize..20) {
            if is_ps_at_scale(&s, Scale::new(r, len).unwrap()).unwrap().is_some() {
                let l2 = len.saturating_sub(dl).max(1);
                prop_assert!(is_ps_at_scale(&s, Scale::new(r + dr, l2).unwrap()).unwrap().is_some());
            }
        }

        #[test]
        fn ps_scale_1d_of_union_dominates(a in arb_set1d(), coins in proptest::collection::vec(any::<bool>(), 60), r in 1usize..6) {
            let b = WindowSet1D::from_members(a.lo(), a.hi(), (a.lo()..a.hi()).filter(|m| coins[(m - a.lo()) as usize])).unwrap();
            let ab = a.union(&b).unwrap();
            let best = ps_scale_1d(&a, r).unwrap().max(ps_scale_1d(&b, r).unwrap());
            prop_assert!(ps_scale_1d(&ab, r).unwrap() >= best);
        }

        #[test]
        fn union_2d_matches_definition(m in arb_set2d(), r in 1usize..4) {
            let u = shifted_union_2d(&m, r).unwrap();
            let mut got: Vec<_> = u.iter().collect();
            let mut want = naive_union_2d(&m, r);
            got.sort();
            want.sort();
            prop_assert_eq!(got, want);
        }

        #[test]
        fn square_matches_corner_scan(m in arb_set2d(), len in 1usize..5) {
            let got = contains_square(&m, len);
            prop_assert_eq!(got, naive_square(&m, len));
            if let Some((x, y)) = got {
                let l = len as i64;
                for dx in 0..l {
                    for dy in 0..l {
                        prop_assert_eq!(m.get(x + dx, y + dy), Some(true));
                    }
                }
            }
        }

        #[test]
        fn ps_scale_2d_superset_monotone(m in arb_set2d(), extra in proptest::collection::vec((0usize..10, 0usize..10), 0..10), r in 1usize..3) {
            let mut bigger = m.clone();
            for (dx, dy) in extra {
                let x = m.x_lo() + (dx % m.width()) as i64;
                let y = m.y_lo() + (dy % m.height()) as i64;
                bigger.insert(x, y).unwrap();
            }
            prop_assert!(ps_scale_2d(&bigger, r).unwrap() >= ps_scale_2d(&m, r).unwrap());
        }
    }
}
