//! The `syndetic` command line.
//!
//! Every document a command emits starts with a `#` header that is itself a
//! command line reproducing the document. The worker count is left out of the
//! header because it never changes the output.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 budget exhausted,
//! 3 precondition failure (including unreadable inputs), 64 usage error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use syndetic_core::certify::verify_fg_with_budget;
use syndetic_core::pipeline::{fg_construct_with, FgParams, PipelineError};
use syndetic_core::{gen_example, is_ps_at_scale, ExampleKind, GenError, Scale, Verdict};

use crate::format::{
    parse_certificate, parse_set1d, write_certificate, write_set1d, write_vdw_result,
};
use crate::par::Parallel;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

pub const DEFAULT_BUDGET: u64 = 1 << 32;

#[derive(Debug, Parser)]
#[command(
    name = "syndetic",
    version,
    about = "Piecewise syndetic sets, vdW numbers and AP-pair certificates"
)]
pub struct Cli {
    /// Worker threads for search and scoring; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,

    /// Recorded in every output header.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Progress on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute W(r, k) by exhaustive search.
    Vdw {
        r: usize,
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check whether a 1D set is piecewise syndetic at scale (r, L).
    Check1d { path: PathBuf, r: usize, len: usize },
    /// Build a certified set of progression pairs from a 1D set.
    Construct {
        path: PathBuf,
        r: usize,
        k: usize,
        /// 2D shift radius; defaults to K.
        #[arg(long)]
        r2d: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = FgParams::DEFAULT_BOX_SIDE)]
        box_side: usize,
        #[arg(long, default_value_t = 1)]
        min_scale: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independently re-check a certificate against its input set.
    Verify {
        cert: PathBuf,
        set: PathBuf,
        /// Node budget for re-deriving K.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Write a generated 1D example set.
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 1000, allow_hyphen_values = true)]
        hi: i64,
        #[arg(long, default_value_t = 2)]
        period: u64,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        residues: Vec<u64>,
        #[arg(long, default_value_t = 5)]
        block: usize,
        #[arg(long, default_value_t = 2)]
        gap: usize,
        #[arg(long, default_value_t = 1)]
        first_len: usize,
        #[arg(long, default_value_t = 1)]
        growth: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Periodic,
    ThickBlocks,
    PsStriped,
    RandomSparse,
}

/// Outcome of one command: exit code plus what goes to stdout.
#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> Outcome {
    eprintln!("error: {msg}");
    Outcome {
        code,
        stdout: String::new(),
    }
}

fn read_set(path: &Path) -> Result<syndetic_core::WindowSet1D, String> {
    let doc = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_set1d(&doc).map_err(|e| format!("{}: {e}", path.display()))
}

/// Writes `doc` to `out` or returns it for stdout.
fn emit(doc: String, out: Option<&Path>) -> Result<String, String> {
    match out {
        Some(p) => {
            fs::write(p, doc).map_err(|e| format!("{}: {e}", p.display()))?;
            Ok(String::new())
        }
        None => Ok(doc),
    }
}

fn pipeline_exit(e: &PipelineError) -> u8 {
    match e {
        PipelineError::BudgetExhausted { .. } => EXIT_BUDGET,
        PipelineError::ZeroParam(_) | PipelineError::Vdw(_) => EXIT_USAGE,
        _ => EXIT_PRECONDITION,
    }
}

impl Cli {
    /// The `#` header: a command line that regenerates the document.
    pub fn header(&self) -> String {
        let mut h = String::from("# syndetic");
        match &self.cmd {
            Command::Vdw { r, k, budget } => {
                let _ = write!(h, " vdw {r} {k} --budget {budget}");
            }
            Command::Check1d { path, r, len } => {
                let _ = write!(h, " check1d {} {r} {len}", path.display());
            }
            Command::Construct {
                path,
                r,
                k,
                r2d,
                budget,
                box_side,
                min_scale,
                out,
            } => {
                let _ = write!(h, " construct {} {r} {k}", path.display());
                if let Some(r2d) = r2d {
                    let _ = write!(h, " --r2d {r2d}");
                }
                let _ = write!(
                    h,
                    " --budget {budget} --box-side {box_side} --min-scale {min_scale}"
                );
                if let Some(o) = out {
                    let _ = write!(h, " --out {}", o.display());
                }
            }
            Command::Verify { cert, set, budget } => {
                let _ = write!(
                    h,
                    " verify {} {} --budget {budget}",
                    cert.display(),
                    set.display()
                );
            }
            Command::Gen {
                kind,
                lo,
                hi,
                period,
                residues,
                block,
                gap,
                first_len,
                growth,
                density,
                out,
            } => {
                let name = kind.to_possible_value().map(|v| v.get_name().to_string());
                let _ = write!(h, " gen {} --lo {lo} --hi {hi}", name.unwrap_or_default());
                match kind {
                    GenKind::Periodic => {
                        let rs: Vec<String> = residues.iter().map(|x| x.to_string()).collect();
                        let _ = write!(h, " --period {period} --residues {}", rs.join(","));
                    }
                    GenKind::ThickBlocks => {
                        let _ = write!(h, " --first-len {first_len} --growth {growth} --gap {gap}");
                    }
                    GenKind::PsStriped => {
                        let _ = write!(h, " --block {block} --gap {gap}");
                    }
                    GenKind::RandomSparse => {
                        let _ = write!(h, " --density {density}");
                    }
                }
                if let Some(o) = out {
                    let _ = write!(h, " --out {}", o.display());
                }
            }
        }
        let _ = writeln!(h, " --seed {}", self.seed);
        h
    }

    pub fn run(&self) -> Outcome {
        let header = self.header();
        let exec = Parallel::new(self.workers);
        let started = Instant::now();
        let log = |msg: &str| {
            if self.verbose > 0 {
                eprintln!("[{:>8.3}s] {msg}", started.elapsed().as_secs_f64());
            }
        };

        match &self.cmd {
            Command::Vdw { r, k, budget } => {
                log(&format!(
                    "searching W({r}, {k}) with {} workers",
                    exec.workers()
                ));
                match exec.vdw_number(*r, *k, *budget) {
                    Ok(res) => {
                        log(&format!("done after {} nodes", res.budget_spent));
                        let code = if res.exhaustive { EXIT_OK } else { EXIT_BUDGET };
                        Outcome {
                            code,
                            stdout: header + &write_vdw_result(&res),
                        }
                    }
                    Err(e) => fail(EXIT_USAGE, e),
                }
            }

            Command::Check1d { path, r, len } => {
                let scale = match Scale::new(*r, *len) {
                    Ok(s) => s,
                    Err(e) => return fail(EXIT_USAGE, e),
                };
                let s = match read_set(path) {
                    Ok(s) => s,
                    Err(e) => return fail(EXIT_PRECONDITION, e),
                };
                match is_ps_at_scale(&s, scale) {
                    Ok(Some(w)) => Outcome {
                        code: EXIT_OK,
                        stdout: format!("{header}witness start={} r={r} L={len}\n", w.start),
                    },
                    Ok(None) => Outcome {
                        code: EXIT_NEGATIVE,
                        stdout: format!("{header}ABSENT\n"),
                    },
                    Err(e) => fail(EXIT_PRECONDITION, e),
                }
            }

            Command::Construct {
                path,
                r,
                k,
                r2d,
                budget,
                box_side,
                min_scale,
                out,
            } => {
                let s = match read_set(path) {
                    Ok(s) => s,
                    Err(e) => return fail(EXIT_PRECONDITION, e),
                };
                let params = FgParams {
                    r: *r,
                    k: *k,
                    r2d: *r2d,
                    budget: *budget,
                    box_side: *box_side,
                    min_scale: *min_scale,
                };
                log("running construction");
                match fg_construct_with(&s, &params, &exec) {
                    Ok(o) => {
                        log(&format!(
                            "|B| = {}, chosen class of {} pairs, L_out = {}",
                            o.b.len(),
                            o.m.len(),
                            o.certificate.l_out
                        ));
                        let doc = header + &write_certificate(&o.certificate);
                        match emit(doc, out.as_deref()) {
                            Ok(stdout) => Outcome {
                                code: EXIT_OK,
                                stdout,
                            },
                            Err(e) => fail(EXIT_PRECONDITION, e),
                        }
                    }
                    Err(e) => fail(pipeline_exit(&e), e),
                }
            }

            Command::Verify { cert, set, budget } => {
                if *budget == 0 {
                    return fail(EXIT_USAGE, "budget must be positive");
                }
                let doc = match fs::read_to_string(cert) {
                    Ok(d) => d,
                    Err(e) => return fail(EXIT_PRECONDITION, format!("{}: {e}", cert.display())),
                };
                let c = match parse_certificate(&doc) {
                    Ok(c) => c,
                    Err(e) => return fail(EXIT_PRECONDITION, format!("{}: {e}", cert.display())),
                };
                let s = match read_set(set) {
                    Ok(s) => s,
                    Err(e) => return fail(EXIT_PRECONDITION, e),
                };
                match verify_fg_with_budget(&c, &s, *budget) {
                    Ok(Verdict::Pass { advisories }) => {
                        let mut o = header + "PASS\n";
                        for a in advisories {
                            let _ = writeln!(o, "advisory {a}");
                        }
                        Outcome {
                            code: EXIT_OK,
                            stdout: o,
                        }
                    }
                    Ok(Verdict::Fail { claim, detail }) => Outcome {
                        code: EXIT_NEGATIVE,
                        stdout: format!("{header}FAIL claim {claim}: {detail}\n"),
                    },
                    Err(e) => Outcome {
                        code: EXIT_PRECONDITION,
                        stdout: format!("{header}REFUSED {e}\n"),
                    },
                }
            }

            Command::Gen {
                kind,
                lo,
                hi,
                period,
                residues,
                block,
                gap,
                first_len,
                growth,
                density,
                out,
            } => {
                let kind = match kind {
                    GenKind::Periodic => ExampleKind::Periodic {
                        period: *period,
                        residues: residues.clone(),
                    },
                    GenKind::ThickBlocks => ExampleKind::ThickBlocks {
                        first_len: *first_len,
                        growth: *growth,
                        gap: *gap,
                    },
                    GenKind::PsStriped => ExampleKind::PsStriped {
                        block: *block,
                        gap: *gap,
                    },
                    GenKind::RandomSparse => ExampleKind::RandomSparse { density: *density },
                };
                match gen_example(&kind, *lo, *hi, self.seed) {
                    Ok(s) => match emit(header + &write_set1d(&s), out.as_deref()) {
                        Ok(stdout) => Outcome {
                            code: EXIT_OK,
                            stdout,
                        },
                        Err(e) => fail(EXIT_PRECONDITION, e),
                    },
                    Err(e @ (GenError::InvalidParams { .. } | GenError::Set(_))) => {
                        fail(EXIT_USAGE, e)
                    }
                }
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => cli.run(),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            Outcome {
                code,
                stdout: String::new(),
            }
        }
    }
}

pub fn main() -> ExitCode {
    let out = run_from(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(out.code)
}
