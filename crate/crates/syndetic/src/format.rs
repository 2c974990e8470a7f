//! Line-oriented text formats.
//!
//! Every format is one record per line with space-separated fields. Lines
//! starting with `#` and blank lines are ignored by every parser, which is how
//! command output carries its run header.
//!
//! ```text
//! window1d <lo> <hi>                     1D set; then `run <a> <b>` lines, [a, b) ⊆ S
//! window2d <x_lo> <x_hi> <y_lo> <y_hi>   2D set; then `pt <x> <y>` / `rowrun <y> <a> <b>`
//! coloring <r> <n>                       followed by one line of n colors
//! ```
//!
//! A vdW result is `n`, `exhaustive`, `budget_spent` lines followed by the
//! extremal coloring. The certificate grammar is documented on
//! [`write_certificate`].

use std::fmt::Write as _;
use std::str::FromStr;

use syndetic_core::pipeline::{BoxBounds, ColorTriple};
use syndetic_core::{
    Coloring, FgCertificate, InputDigest, SetError, VdwResult, WindowSet1D, WindowSet2D,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    At { line: usize, msg: String },
    #[error("unexpected end of document: {0}")]
    Eof(String),
}

fn at(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::At {
        line,
        msg: msg.into(),
    }
}

/// Significant lines with their 1-based line numbers.
struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(doc: &'a str) -> Self {
        let lines = doc
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Cursor { lines, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        let l = self
            .peek()
            .ok_or_else(|| FormatError::Eof(format!("expected {what}")))?;
        self.pos += 1;
        Ok(l)
    }

    /// Next line must be `key` followed by exactly `n` fields.
    fn expect(&mut self, key: &str, n: usize) -> Result<(usize, Vec<&'a str>), FormatError> {
        let (ln, line) = self.next_line(&format!("`{key}`"))?;
        let mut it = line.split_whitespace();
        let found = it.next().unwrap_or("");
        if found != key {
            return Err(at(ln, format!("expected `{key}`, found `{found}`")));
        }
        let fields: Vec<&str> = it.collect();
        if fields.len() != n {
            return Err(at(
                ln,
                format!("`{key}` takes {n} fields, found {}", fields.len()),
            ));
        }
        Ok((ln, fields))
    }

    fn finish(&self) -> Result<(), FormatError> {
        match self.peek() {
            None => Ok(()),
            Some((ln, l)) => Err(at(ln, format!("trailing content `{l}`"))),
        }
    }
}

fn num<T: FromStr>(ln: usize, s: &str) -> Result<T, FormatError> {
    s.parse()
        .map_err(|_| at(ln, format!("malformed integer `{s}`")))
}

fn boolean(ln: usize, s: &str) -> Result<bool, FormatError> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(at(ln, format!("expected true or false, found `{s}`"))),
    }
}

fn set_err(ln: usize, e: SetError) -> FormatError {
    at(ln, e.to_string())
}

// ---------------------------------------------------------------- 1D sets

pub fn write_set1d(s: &WindowSet1D) -> String {
    let mut out = format!("window1d {} {}\n", s.lo(), s.hi());
    for (a, b) in s.runs() {
        let _ = writeln!(out, "run {a} {b}");
    }
    out
}

pub fn parse_set1d(doc: &str) -> Result<WindowSet1D, FormatError> {
    let mut c = Cursor::new(doc);
    let (ln, f) = c.expect("window1d", 2)?;
    let mut s = WindowSet1D::empty(num(ln, f[0])?, num(ln, f[1])?).map_err(|e| set_err(ln, e))?;
    while c.peek().is_some() {
        let (ln, f) = c.expect("run", 2)?;
        let (a, b): (i64, i64) = (num(ln, f[0])?, num(ln, f[1])?);
        if a > b {
            return Err(at(ln, format!("run [{a}, {b}) is reversed")));
        }
        s.insert_run(a, b).map_err(|e| set_err(ln, e))?;
    }
    Ok(s)
}

// ---------------------------------------------------------------- 2D sets

pub fn write_set2d(m: &WindowSet2D) -> String {
    let (x_lo, x_hi, y_lo, y_hi) = m.bounds();
    let mut out = format!("window2d {x_lo} {x_hi} {y_lo} {y_hi}\n");
    for y in y_lo..y_hi {
        for (a, b) in m.row_runs(y) {
            if b - a == 1 {
                let _ = writeln!(out, "pt {a} {y}");
            } else {
                let _ = writeln!(out, "rowrun {y} {a} {b}");
            }
        }
    }
    out
}

pub fn parse_set2d(doc: &str) -> Result<WindowSet2D, FormatError> {
    let mut c = Cursor::new(doc);
    let (ln, f) = c.expect("window2d", 4)?;
    let mut m = WindowSet2D::empty(
        num(ln, f[0])?,
        num(ln, f[1])?,
        num(ln, f[2])?,
        num(ln, f[3])?,
    )
    .map_err(|e| set_err(ln, e))?;
    while let Some((ln, line)) = c.peek() {
        if line.starts_with("pt") {
            let (ln, f) = c.expect("pt", 2)?;
            m.insert(num(ln, f[0])?, num(ln, f[1])?)
                .map_err(|e| set_err(ln, e))?;
        } else if line.starts_with("rowrun") {
            let (ln, f) = c.expect("rowrun", 3)?;
            let (y, a, b): (i64, i64, i64) = (num(ln, f[0])?, num(ln, f[1])?, num(ln, f[2])?);
            for x in a..b {
                m.insert(x, y).map_err(|e| set_err(ln, e))?;
            }
        } else {
            return Err(at(ln, format!("expected `pt` or `rowrun`, found `{line}`")));
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------- colorings

pub fn write_coloring(c: &Coloring) -> String {
    let colors: Vec<String> = c.colors().iter().map(|x| x.to_string()).collect();
    format!("coloring {} {}\n{}\n", c.r(), c.n(), colors.join(" "))
}

fn read_coloring(c: &mut Cursor<'_>) -> Result<Coloring, FormatError> {
    let (ln, f) = c.expect("coloring", 2)?;
    let r: usize = num(ln, f[0])?;
    let n: usize = num(ln, f[1])?;
    let colors: Vec<u8> = if n == 0 {
        Vec::new()
    } else {
        let (ln, line) = c.next_line("color indices")?;
        let colors = line
            .split_whitespace()
            .map(|x| num(ln, x))
            .collect::<Result<Vec<u8>, _>>()?;
        if colors.len() != n {
            return Err(at(
                ln,
                format!("expected {n} colors, found {}", colors.len()),
            ));
        }
        colors
    };
    Coloring::new(r, colors).map_err(|e| at(ln, e.to_string()))
}

pub fn parse_coloring(doc: &str) -> Result<Coloring, FormatError> {
    let mut c = Cursor::new(doc);
    let col = read_coloring(&mut c)?;
    c.finish()?;
    Ok(col)
}

// ---------------------------------------------------------------- vdW results

pub fn write_vdw_result(res: &VdwResult) -> String {
    format!(
        "n {}\nexhaustive {}\nbudget_spent {}\n{}",
        res.n,
        res.exhaustive,
        res.budget_spent,
        write_coloring(&res.extremal)
    )
}

pub fn parse_vdw_result(doc: &str) -> Result<VdwResult, FormatError> {
    let mut c = Cursor::new(doc);
    let (ln, f) = c.expect("n", 1)?;
    let n = num(ln, f[0])?;
    let (ln, f) = c.expect("exhaustive", 1)?;
    let exhaustive = boolean(ln, f[0])?;
    let (ln, f) = c.expect("budget_spent", 1)?;
    let budget_spent = num(ln, f[0])?;
    let extremal = read_coloring(&mut c)?;
    c.finish()?;
    Ok(VdwResult {
        n,
        extremal,
        exhaustive,
        budget_spent,
    })
}

// ---------------------------------------------------------------- certificates

/// Serializes a certificate. Fields appear in exactly this order:
///
/// ```text
/// fgcert v1
/// tool <version tag>
/// section input
/// window <lo> <hi>
/// members <count>
/// digest sha256:<64 hex digits>
/// section params
/// r <r>
/// k <k>
/// r2d <r2d>
/// box_side <side>
/// section vdw
/// K <K>
/// exhaustive <true|false>
/// section triple
/// alpha <alpha>
/// delta <delta>
/// t <t>
/// section mtilde
/// box <x_lo> <x_hi> <y_lo> <y_hi>
/// count <n>
/// pt <a> <d>            n lines, ordered by d then a
/// section claims
/// l_in <L>
/// b_box <x_lo> <x_hi> <y_lo> <y_hi>
/// b_size <n>
/// b_boundary <n>
/// m_size <n>
/// l_out <L>
/// end
/// ```
pub fn write_certificate(c: &FgCertificate) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "fgcert v1");
    let _ = writeln!(o, "tool {}", c.tool);
    let _ = writeln!(o, "section input");
    let _ = writeln!(o, "window {} {}", c.input.lo, c.input.hi);
    let _ = writeln!(o, "members {}", c.input.members);
    let _ = writeln!(o, "digest sha256:{}", c.input.hex());
    let _ = writeln!(o, "section params");
    let _ = writeln!(o, "r {}", c.r);
    let _ = writeln!(o, "k {}", c.k);
    let _ = writeln!(o, "r2d {}", c.r2d);
    let _ = writeln!(o, "box_side {}", c.box_side);
    let _ = writeln!(o, "section vdw");
    let _ = writeln!(o, "K {}", c.big_k);
    let _ = writeln!(o, "exhaustive {}", c.k_exhaustive);
    let _ = writeln!(o, "section triple");
    let _ = writeln!(o, "alpha {}", c.triple.alpha);
    let _ = writeln!(o, "delta {}", c.triple.delta);
    let _ = writeln!(o, "t {}", c.triple.t);
    let _ = writeln!(o, "section mtilde");
    let (x_lo, x_hi, y_lo, y_hi) = c.mtilde.bounds();
    let _ = writeln!(o, "box {x_lo} {x_hi} {y_lo} {y_hi}");
    let _ = writeln!(o, "count {}", c.mtilde.len());
    for (a, d) in c.mtilde.iter() {
        let _ = writeln!(o, "pt {a} {d}");
    }
    let _ = writeln!(o, "section claims");
    let _ = writeln!(o, "l_in {}", c.l_in);
    let b = c.b_box;
    let _ = writeln!(o, "b_box {} {} {} {}", b.x_lo, b.x_hi, b.y_lo, b.y_hi);
    let _ = writeln!(o, "b_size {}", c.b_size);
    let _ = writeln!(o, "b_boundary {}", c.b_boundary);
    let _ = writeln!(o, "m_size {}", c.m_size);
    let _ = writeln!(o, "l_out {}", c.l_out);
    let _ = writeln!(o, "end");
    o
}

fn section(c: &mut Cursor<'_>, name: &str) -> Result<(), FormatError> {
    let (ln, f) = c.expect("section", 1)?;
    if f[0] != name {
        return Err(at(
            ln,
            format!("expected section `{name}`, found `{}`", f[0]),
        ));
    }
    Ok(())
}

fn single<T: FromStr>(c: &mut Cursor<'_>, key: &str) -> Result<T, FormatError> {
    let (ln, f) = c.expect(key, 1)?;
    num(ln, f[0])
}

fn four(c: &mut Cursor<'_>, key: &str) -> Result<(usize, [i64; 4]), FormatError> {
    let (ln, f) = c.expect(key, 4)?;
    Ok((
        ln,
        [
            num(ln, f[0])?,
            num(ln, f[1])?,
            num(ln, f[2])?,
            num(ln, f[3])?,
        ],
    ))
}

fn parse_hex32(ln: usize, s: &str) -> Result<[u8; 32], FormatError> {
    let hex = s
        .strip_prefix("sha256:")
        .ok_or_else(|| at(ln, "digest must start with `sha256:`"))?;
    if hex.len() != 64 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(at(ln, "digest must be 64 hex digits"));
    }
    let mut out = [0u8; 32];
    for (i, byte) in out.iter_mut().enumerate() {
        *byte = u8::from_str_radix(&hex[2 * i..2 * i + 2], 16)
            .map_err(|_| at(ln, "malformed digest"))?;
    }
    Ok(out)
}

pub fn parse_certificate(doc: &str) -> Result<FgCertificate, FormatError> {
    let mut c = Cursor::new(doc);
    let (ln, f) = c.expect("fgcert", 1)?;
    if f[0] != "v1" {
        return Err(at(
            ln,
            format!("unsupported certificate version `{}`", f[0]),
        ));
    }
    let (_, f) = c.expect("tool", 1)?;
    let tool = f[0].to_string();

    section(&mut c, "input")?;
    let (ln, f) = c.expect("window", 2)?;
    let (lo, hi) = (num(ln, f[0])?, num(ln, f[1])?);
    let members = single(&mut c, "members")?;
    let (ln, f) = c.expect("digest", 1)?;
    let sha256 = parse_hex32(ln, f[0])?;

    section(&mut c, "params")?;
    let r = single(&mut c, "r")?;
    let k = single(&mut c, "k")?;
    let r2d = single(&mut c, "r2d")?;
    let box_side = single(&mut c, "box_side")?;

    section(&mut c, "vdw")?;
    let big_k = single(&mut c, "K")?;
    let (ln, f) = c.expect("exhaustive", 1)?;
    let k_exhaustive = boolean(ln, f[0])?;

    section(&mut c, "triple")?;
    let alpha = single(&mut c, "alpha")?;
    let delta = single(&mut c, "delta")?;
    let t = single(&mut c, "t")?;

    section(&mut c, "mtilde")?;
    let (ln, [x_lo, x_hi, y_lo, y_hi]) = four(&mut c, "box")?;
    let mut mtilde = WindowSet2D::empty(x_lo, x_hi, y_lo, y_hi).map_err(|e| set_err(ln, e))?;
    let count: usize = single(&mut c, "count")?;
    for _ in 0..count {
        let (ln, f) = c.expect("pt", 2)?;
        let (a, d) = (num(ln, f[0])?, num(ln, f[1])?);
        if mtilde.contains(a, d).map_err(|e| set_err(ln, e))? {
            return Err(at(ln, format!("duplicate point ({a}, {d})")));
        }
        mtilde.insert(a, d).map_err(|e| set_err(ln, e))?;
    }

    section(&mut c, "claims")?;
    let l_in = single(&mut c, "l_in")?;
    let (_, [bx_lo, bx_hi, by_lo, by_hi]) = four(&mut c, "b_box")?;
    let b_size = single(&mut c, "b_size")?;
    let b_boundary = single(&mut c, "b_boundary")?;
    let m_size = single(&mut c, "m_size")?;
    let l_out = single(&mut c, "l_out")?;
    c.expect("end", 0)?;
    c.finish()?;

    Ok(FgCertificate {
        tool,
        input: InputDigest {
            lo,
            hi,
            members,
            sha256,
        },
        r,
        k,
        r2d,
        box_side,
        big_k,
        k_exhaustive,
        triple: ColorTriple { alpha, delta, t },
        l_in,
        b_box: BoxBounds {
            x_lo: bx_lo,
            x_hi: bx_hi,
            y_lo: by_lo,
            y_hi: by_hi,
        },
        b_size,
        b_boundary,
        m_size,
        mtilde,
        l_out,
    })
}
