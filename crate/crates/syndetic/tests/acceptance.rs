//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.
//!
//! Run with `cargo test -p syndetic --test acceptance`. Pass `--stretch` after
//! `--` to also attempt W(2, 5) under a ten-minute budget (never gating).

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syndetic::format::{parse_certificate, parse_set1d};
use syndetic::par::Parallel;
use syndetic_core::pipeline::fg_construct_with;
use syndetic_core::{
    affine_image, gen_example, is_ps_at_scale, partition_extract, ps_scale_1d, ps_scale_2d,
    theorem1_find_ap, vdw_number, verify_fg, AffineMap2D, ExampleKind, FgCertificate, FgParams,
    VdwResult, Verdict, WindowSet1D, WindowSet2D,
};

type Check = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnOnce() -> Check>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- independent oracles ----

fn has_mono_ap(colors: &[u8], k: usize) -> bool {
    let n = colors.len();
    if k <= 1 {
        return n > 0;
    }
    for a in 0..n {
        for d in 1..n {
            if a + (k - 1) * d >= n {
                break;
            }
            if (1..k).all(|i| colors[a + i * d] == colors[a]) {
                return true;
            }
        }
    }
    false
}

/// Least N such that all 2-colorings of N positions contain a monochromatic k-AP.
fn enumerated_w2(k: usize, max_n: usize) -> Option<usize> {
    (1..=max_n).find(|&n| {
        (0u32..1 << n).all(|mask| {
            let colors: Vec<u8> = (0..n).map(|i| (mask >> i & 1) as u8).collect();
            has_mono_ap(&colors, k)
        })
    })
}

fn naive_ps_scale_2d(m: &WindowSet2D, r: usize) -> usize {
    let pts: BTreeSet<(i64, i64)> = m.iter().collect();
    let r = r as i64;
    let mut u = BTreeSet::new();
    for &(x, y) in &pts {
        for t1 in 1..=r {
            for t2 in 1..=r {
                u.insert((x - t1, y - t2));
            }
        }
    }
    let mut best = 0;
    for &(x, y) in &u {
        let mut l = best + 1;
        while (0..l).all(|i| (0..l).all(|j| u.contains(&(x + i as i64, y + j as i64)))) {
            best = l;
            l += 1;
        }
    }
    best
}

fn check_result(res: &VdwResult, r: usize, k: usize, n: usize) -> Result<(), String> {
    ensure(res.exhaustive, || format!("W({r},{k}) not exhaustive"))?;
    ensure(res.n == n, || {
        format!("W({r},{k}) = {} expected {n}", res.n)
    })?;
    let c = &res.extremal;
    ensure(c.n() == n - 1, || {
        format!("W({r},{k}) extremal has {} positions", c.n())
    })?;
    ensure(
        c.colors().iter().all(|&x| x >= 1 && x as usize <= r),
        || format!("W({r},{k}) extremal uses a color outside 1..={r}"),
    )?;
    ensure(!has_mono_ap(c.colors(), k), || {
        format!("W({r},{k}) extremal contains a monochromatic {k}-AP")
    })
}

// ---- criteria ----

fn vdw_trivial() -> Check {
    let mut count = 0;
    for k in 1..=10 {
        check_result(
            &vdw_number(1, k, 1 << 20).map_err(|e| e.to_string())?,
            1,
            k,
            k,
        )?;
        count += 1;
    }
    for r in 1..=10 {
        check_result(
            &vdw_number(r, 2, 1 << 20).map_err(|e| e.to_string())?,
            r,
            2,
            r + 1,
        )?;
        count += 1;
    }
    Ok(format!(
        "{count} cases, all exhaustive with verified extremal colorings"
    ))
}

fn vdw_timed(r: usize, k: usize, n: usize, limit: Duration, workers: usize) -> Check {
    let t = Instant::now();
    let res = Parallel::new(workers)
        .vdw_number(r, k, u64::MAX)
        .map_err(|e| e.to_string())?;
    let el = t.elapsed();
    check_result(&res, r, k, n)?;
    ensure(el < limit, || format!("took {el:.2?}, limit {limit:?}"))?;
    Ok(format!(
        "W({r},{k}) = {n} in {el:.2?} ({} nodes, {workers} workers)",
        res.budget_spent
    ))
}

fn vdw_enumeration() -> Check {
    let enumerated = enumerated_w2(3, 12).ok_or("no N <= 12 forces a 3-AP")?;
    let searched = vdw_number(2, 3, 1 << 20).map_err(|e| e.to_string())?;
    ensure(enumerated == searched.n, || {
        format!(
            "enumeration gives {enumerated}, search gives {}",
            searched.n
        )
    })?;
    Ok(format!(
        "all 2-colorings of N <= 12 agree on W(2,3) = {enumerated}"
    ))
}

fn corpus() -> Vec<(String, WindowSet1D, usize, usize)> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..60u64 {
        let r = 1 + (i % 2) as usize;
        let k = 1 + (i / 2 % 2) as usize;
        let width: i64 = match i % 5 {
            0 => 100_000,
            1 => 20_000,
            2 => 3_000,
            _ => rng.gen_range(200..2_000),
        };
        let lo = rng.gen_range(-1_000..1_000);
        let kind = if i % 3 == 0 {
            let period = rng.gen_range(r as u64..=6);
            // Residues no more than r apart, cyclically.
            let mut residues = Vec::new();
            let mut x = rng.gen_range(0..period);
            let first = x;
            loop {
                residues.push(x % period);
                x += rng.gen_range(1..=r as u64);
                if x >= first + period {
                    break;
                }
            }
            ExampleKind::Periodic { period, residues }
        } else {
            ExampleKind::PsStriped {
                block: rng.gen_range(1..12),
                gap: rng.gen_range(1..=r),
            }
        };
        let s = gen_example(&kind, lo, lo + width, i).unwrap();
        out.push((format!("#{i} {kind:?} [{lo}, {})", lo + width), s, r, k));
    }
    out
}

fn theorem2(corpus: &[(String, WindowSet1D, usize, usize)]) -> Check {
    let t = Instant::now();
    let exec = Parallel::new(1);
    for (name, s, r, k) in corpus {
        let params = FgParams::new(*r, *k);
        let out = fg_construct_with(s, &params, &exec).map_err(|e| format!("{name}: {e}"))?;
        let c = &out.certificate;
        for (a, d) in c.mtilde.iter() {
            ensure(
                (0..=*k as i64).all(|i| s.get(a + i * d) == Some(true)),
                || format!("{name}: ({a}, {d}) leaves S"),
            )?;
        }
        let l = ps_scale_2d(&c.mtilde, c.r2d).map_err(|e| e.to_string())?;
        ensure(l >= c.l_out && c.l_out > 0, || {
            format!("{name}: scale {l} vs claimed {}", c.l_out)
        })?;
        match verify_fg(c, s) {
            Ok(Verdict::Pass { .. }) => {}
            other => return Err(format!("{name}: verifier said {other:?}")),
        }
    }
    let el = t.elapsed();
    ensure(el < Duration::from_secs(600), || format!("took {el:.2?}"))?;
    Ok(format!(
        "{} inputs constructed and verified in {el:.2?}",
        corpus.len()
    ))
}

fn theorem1(corpus: &[(String, WindowSet1D, usize, usize)]) -> Check {
    let mut eligible = 0;
    for (name, s, r, k) in corpus {
        let w = vdw_number(*r, k + 1, 1 << 32).map_err(|e| e.to_string())?;
        let l_in = ps_scale_1d(s, *r).map_err(|e| e.to_string())?;
        if l_in < w.n {
            continue;
        }
        eligible += 1;
        let p = theorem1_find_ap(s, *r, *k, 1 << 32).map_err(|e| format!("{name}: {e}"))?;
        ensure(p.d != 0, || format!("{name}: d = 0"))?;
        ensure(
            (0..=*k as i64).all(|i| s.get(p.a + i * p.d) == Some(true)),
            || format!("{name}: ({}, {}) leaves S", p.a, p.d),
        )?;
    }
    ensure(eligible > 0, || "no eligible inputs".into())?;
    Ok(format!(
        "{eligible}/{eligible} eligible inputs yield a progression"
    ))
}

fn lemma() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for case in 0..100 {
        let (w, h) = (rng.gen_range(1..10), rng.gen_range(1..10));
        let (x0, y0) = (rng.gen_range(-8..8), rng.gen_range(-8..8));
        let density = rng.gen_range(0.2..0.95);
        let pts: Vec<(i64, i64)> = (0..w)
            .flat_map(|i| (0..h).map(move |j| (x0 + i, y0 + j)))
            .filter(|_| rng.gen_bool(density))
            .collect();
        let m = WindowSet2D::from_points(x0, x0 + w, y0, y0 + h, pts.iter().copied())
            .map_err(|e| e.to_string())?;
        let x = rng.gen_range(-5..=5);
        let y = rng.gen_range(-5..=5);
        let z = loop {
            let z = rng.gen_range(-5..=5);
            if z != 0 {
                break z;
            }
        };
        let r = rng.gen_range(1..=3usize);
        let img = affine_image(&m, AffineMap2D::new(x, y, z).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;

        let expected: BTreeSet<(i64, i64)> = pts
            .iter()
            .map(|&(a1, a2)| (a1 + x * a2 + y, z * a2))
            .collect();
        let got: BTreeSet<(i64, i64)> = img.iter().collect();
        ensure(expected.len() == pts.len() && got == expected, || {
            format!("case {case}: image is not the injective pointwise image")
        })?;

        let before = naive_ps_scale_2d(&m, r);
        let r_img = r * z.unsigned_abs() as usize;
        let after = naive_ps_scale_2d(&img, r_img);
        ensure(before == 0 || after > 0, || {
            format!("case {case}: scale {before} at r={r} became 0 at r={r_img}")
        })?;
        let lib = ps_scale_2d(&img, r_img).map_err(|e| e.to_string())?;
        ensure(lib == after, || {
            format!("case {case}: library {lib} vs brute force {after}")
        })?;
    }
    Ok("100 seeded maps injective, positive scale preserved".into())
}

fn partition() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for case in 0..100u64 {
        let r = rng.gen_range(1..=2usize);
        let lo = rng.gen_range(-500..500);
        let width = rng.gen_range(100..1500);
        let kind = ExampleKind::PsStriped {
            block: rng.gen_range(2..10),
            gap: rng.gen_range(1..=r),
        };
        let s = gen_example(&kind, lo, lo + width, case).map_err(|e| e.to_string())?;
        let c = rng.gen_range(1..=4usize);
        let by_runs = rng.gen_bool(0.5);
        let mut cells: Vec<Vec<i64>> = vec![Vec::new(); c];
        for (a, b) in s.runs() {
            let run_cell = rng.gen_range(0..c);
            for m in a..b {
                let cell = if by_runs {
                    run_cell
                } else {
                    rng.gen_range(0..c)
                };
                cells[cell].push(m);
            }
        }
        let cells: Vec<WindowSet1D> = cells
            .into_iter()
            .map(|v| WindowSet1D::from_members(s.lo(), s.hi(), v))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let pick = partition_extract(&s, &cells, r).map_err(|e| format!("case {case}: {e}"))?;
        let cell = &cells[pick.index];
        let w = pick.witness;
        ensure(w.scale.len() > 0, || {
            format!("case {case}: zero-length witness")
        })?;
        let rr = w.scale.r() as i64;
        let covered = (w.start..w.start + w.scale.len() as i64)
            .all(|x| (1..=rr).any(|t| cell.get(x + t) == Some(true)));
        ensure(covered, || {
            format!("case {case}: witness interval not covered")
        })?;
        let again = is_ps_at_scale(cell, w.scale).map_err(|e| e.to_string())?;
        ensure(again.is_some(), || {
            format!("case {case}: is_ps_at_scale rejects the witness")
        })?;
    }
    Ok("100 seeded partitions, every chosen witness re-verifies".into())
}

fn mutations(cert: &FgCertificate) -> Vec<(&'static str, FgCertificate)> {
    let mut out = Vec::new();
    let mut push = |name: &'static str, f: &dyn Fn(&mut FgCertificate)| {
        let mut c = cert.clone();
        f(&mut c);
        out.push((name, c));
    };
    push("r+1", &|c| c.r += 1);
    push("k+1", &|c| c.k += 1);
    push("r2d+1", &|c| c.r2d += 1);
    push("box_side-1", &|c| c.box_side -= 1);
    push("K+1", &|c| c.big_k += 1);
    push("K-1", &|c| c.big_k -= 1);
    push("exhaustive flip", &|c| c.k_exhaustive = !c.k_exhaustive);
    push("alpha+1", &|c| c.triple.alpha += 1);
    push("delta+1", &|c| c.triple.delta += 1);
    push("t+1", &|c| c.triple.t += 1);
    push("l_in+1", &|c| c.l_in += 1);
    push("l_in-1", &|c| c.l_in -= 1);
    push("b_box shift", &|c| {
        c.b_box.x_lo -= 1;
        c.b_box.x_hi -= 1;
    });
    push("b_size+1", &|c| c.b_size += 1);
    push("b_boundary+1", &|c| c.b_boundary += 1);
    push("m_size+1", &|c| c.m_size += 1);
    push("l_out+1", &|c| c.l_out += 1);
    push("l_out-1", &|c| c.l_out -= 1);
    push("mtilde point removed", &|c| {
        let p = c.mtilde.iter().nth(c.mtilde.len() / 2).unwrap();
        c.mtilde.remove(p.0, p.1).unwrap();
    });
    push("mtilde point added", &|c| {
        let (x_lo, x_hi, y_lo, y_hi) = c.mtilde.bounds();
        let mut grown = WindowSet2D::empty(x_lo - 1, x_hi, y_lo, y_hi).unwrap();
        for (x, y) in c.mtilde.iter() {
            grown.insert(x, y).unwrap();
        }
        grown.insert(x_lo - 1, y_lo).unwrap();
        c.mtilde = grown;
    });
    push("mtilde point shifted", &|c| {
        let (x, y) = c.mtilde.iter().next().unwrap();
        let (x_lo, x_hi, y_lo, y_hi) = c.mtilde.bounds();
        let mut moved = WindowSet2D::empty(x_lo - 1, x_hi, y_lo, y_hi).unwrap();
        for p in c.mtilde.iter().filter(|&p| p != (x, y)) {
            moved.insert(p.0, p.1).unwrap();
        }
        moved.insert(x - 1, y).unwrap();
        c.mtilde = moved;
    });
    push("mtilde box widened", &|c| {
        let (x_lo, x_hi, y_lo, y_hi) = c.mtilde.bounds();
        let mut wide = WindowSet2D::empty(x_lo, x_hi + 1, y_lo, y_hi + 1).unwrap();
        for (x, y) in c.mtilde.iter() {
            wide.insert(x, y).unwrap();
        }
        c.mtilde = wide;
    });
    push("digest byte flip", &|c| c.input.sha256[0] ^= 1);
    push("member count+1", &|c| c.input.members += 1);
    push("window shift", &|c| c.input.lo -= 1);
    out
}

fn mutation_suite() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut total = 0;
    for name in ["periodic", "striped", "thick"] {
        let read = |ext: &str| std::fs::read_to_string(dir.join(format!("{name}.{ext}"))).unwrap();
        let cert = parse_certificate(&read("cert")).map_err(|e| e.to_string())?;
        let set = parse_set1d(&read("set")).map_err(|e| e.to_string())?;
        ensure(
            verify_fg(&cert, &set).map(|v| v.is_pass()) == Ok(true),
            || format!("{name}: unmutated certificate does not pass"),
        )?;
        let muts = mutations(&cert);
        ensure(muts.len() >= 20, || "fewer than 20 mutations".into())?;
        for (m, c) in muts {
            ensure(c != cert, || format!("{name}/{m}: mutation is a no-op"))?;
            if let Ok(Verdict::Pass { .. }) = verify_fg(&c, &set) {
                return Err(format!("{name}/{m}: mutated certificate passed"));
            }
            total += 1;
        }
    }
    Ok(format!(
        "{total} mutations over 3 golden certificates, none passed"
    ))
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_syndetic");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [&[&str]; 5] = [
        &["vdw", "2", "4"],
        &["vdw", "3", "3", "--budget", "2000"],
        &["gen", "random-sparse", "--hi", "500", "--seed", "5"],
        &["construct", "periodic.set", "2", "2", "--box-side", "16"],
        &["construct", "thick.set", "1", "2"],
    ];
    for args in cases {
        let mut base: Option<(Option<i32>, Vec<u8>)> = None;
        for w in ["1", "1", "2", "3", "8"] {
            let o = Command::new(bin)
                .current_dir(&dir)
                .args(args)
                .args(["--workers", w])
                .output()
                .map_err(|e| e.to_string())?;
            let cur = (o.status.code(), o.stdout);
            match &base {
                None => base = Some(cur),
                Some(b) => ensure(*b == cur, || format!("{args:?} differs at workers={w}"))?,
            }
        }
    }
    Ok(format!(
        "{} commands byte-identical across runs and worker counts",
        cases.len()
    ))
}

fn stretch() -> Check {
    let t = Instant::now();
    let res = Parallel::new(workers())
        .vdw_number(2, 5, 1 << 40)
        .map_err(|e| e.to_string())?;
    let el = t.elapsed();
    check_result(&res, 2, 5, 178)?;
    ensure(el < Duration::from_secs(600), || format!("took {el:.2?}"))?;
    Ok(format!("W(2,5) = 178 in {el:.2?}"))
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    // Only the harness flags cargo passes through; anything else is ignored.
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let corpus = corpus();
    let w = workers();
    let mut criteria: Vec<Criterion> = vec![
        ("vdw trivial cases r,k <= 10", Box::new(vdw_trivial)),
        (
            "vdw W(2,3)=9 under 1s",
            Box::new(|| vdw_timed(2, 3, 9, Duration::from_secs(1), 1)),
        ),
        (
            "vdw W(3,3)=27 under 60s",
            Box::new(move || vdw_timed(3, 3, 27, Duration::from_secs(60), w)),
        ),
        (
            "vdw W(2,4)=35 under 60s",
            Box::new(move || vdw_timed(2, 4, 35, Duration::from_secs(60), w)),
        ),
        (
            "vdw enumeration cross-check N<=12",
            Box::new(vdw_enumeration),
        ),
        (
            "pair construction end to end",
            Box::new({
                let c = corpus.clone();
                move || theorem2(&c)
            }),
        ),
        (
            "single progression finder",
            Box::new(move || theorem1(&corpus)),
        ),
        ("affine image lemma", Box::new(lemma)),
        ("partition regularity", Box::new(partition)),
        ("verifier mutation suite", Box::new(mutation_suite)),
        ("cli determinism", Box::new(determinism)),
    ];
    let want_stretch = args.iter().any(|a| a == "--stretch");
    if want_stretch {
        criteria.push(("stretch W(2,5)=178 (non-gating)", Box::new(stretch)));
    }

    let mut failed = 0;
    for (name, f) in criteria {
        let gating = !name.starts_with("stretch");
        match f() {
            Ok(msg) => println!("ACCEPT PASS  {name}: {msg}"),
            Err(msg) => {
                println!("ACCEPT FAIL  {name}: {msg}");
                if gating {
                    failed += 1;
                }
            }
        }
    }
    if !want_stretch {
        println!("ACCEPT SKIP  stretch W(2,5)=178 (non-gating): pass --stretch to run");
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
