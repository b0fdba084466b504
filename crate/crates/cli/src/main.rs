//! `bl`: generate bichromatic instances, enumerate their balanced lines,
//! trace k-level rotations, verify the r lower bound, and draw figures.
//!
//! Exit codes: 0 success, 2 invalid parameters, 3 invalid instance,
//! 4 naive/sweep mismatch, 5 lemma or certificate failure.

mod plot;
mod report;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use balanced_lines::io::{instance_from_json, instance_to_json, lines_to_csv, lines_to_json, IoError};
use balanced_lines::sliding::{decompose_fhg, find_gamma};
use balanced_lines::{
    batch_params, enumerate_naive, enumerate_sweep_with, gen_clustered, gen_random, gen_separated_convex, run_rotation,
    transitions_at, verify_lower_bound, Color, Direction, Exec, Instance, RotationError, RotationSpec, Subset,
};
use clap::{Parser, Subcommand, ValueEnum};

use plot::Canvas;

#[derive(Parser)]
#[command(name = "bl", version, about = "Balanced lines of bichromatic point sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a new instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// List the balanced lines of an instance.
    Enumerate {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Run the sweep on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Dump the events of a k-level rotation as JSON lines.
    Trace {
        input: PathBuf,
        /// `red`, `blue`, or `ids:0,3,5`.
        #[arg(long, default_value = "red")]
        subset: String,
        #[arg(short)]
        k: usize,
        /// Start direction as `dx,dy`; defaults to straight down.
        #[arg(long)]
        start: Option<String>,
        /// Only print the weight steps between LOW and LOW + 1.
        #[arg(long, value_name = "LOW", allow_hyphen_values = true)]
        transitions: Option<i64>,
    },
    /// Certify the lower bound and run every lemma check.
    Verify {
        /// Instance file; omit with --batch.
        input: Option<PathBuf>,
        /// Verify this many random instances instead.
        #[arg(long, conflicts_with = "input")]
        batch: Option<usize>,
        #[arg(long, env = "BL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        max_n: usize,
        #[arg(long, default_value_t = 1000)]
        bound: i64,
        /// Write the certificate JSON here (single instance only).
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
    /// Draw an instance as SVG.
    Plot {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = What::Points)]
        what: What,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Rotation snapshot: subset and level.
        #[arg(long, default_value = "red")]
        subset: String,
        #[arg(short, default_value_t = 0)]
        k: usize,
        /// Rotation snapshot direction as `dx,dy`.
        #[arg(long)]
        at: Option<String>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Uniform integer points in a square, rejecting collinear triples.
    Random {
        #[arg(long, env = "BL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short)]
        r: usize,
        #[arg(short)]
        b: usize,
        #[arg(long, default_value_t = 1000)]
        bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reds and blues on a parabola, split by the vertical axis.
    Separated {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random points with one color packed into a smaller central square.
    Clustered {
        #[arg(long, env = "BL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short)]
        r: usize,
        #[arg(short)]
        b: usize,
        #[arg(long, default_value_t = 1000)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = ColorArg::Blue)]
        inner: ColorArg,
        #[arg(long, default_value_t = 200)]
        inner_bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Naive,
    Sweep,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Points,
    Balanced,
    Rotation,
    Certificate,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorArg {
    Red,
    Blue,
}

impl From<ColorArg> for Color {
    fn from(c: ColorArg) -> Color {
        match c {
            ColorArg::Red => Color::Red,
            ColorArg::Blue => Color::Blue,
        }
    }
}

enum Failure {
    Params(String),
    Invalid(String),
    Mismatch(String),
    Lemma(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Params(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Mismatch(_) => 4,
            Failure::Lemma(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Params(m) | Failure::Invalid(m) | Failure::Mismatch(m) | Failure::Lemma(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("bl: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Gen { kind } => gen(kind),
        Cmd::Enumerate { input, method, format, sequential } => enumerate(&input, method, format, exec(sequential)),
        Cmd::Trace { input, subset, k, start, transitions } => trace(&input, &subset, k, start.as_deref(), transitions),
        Cmd::Verify { input, batch, seed, max_n, bound, certificate, sequential } => match (input, batch) {
            (Some(path), None) => verify_one(&path, certificate.as_deref()),
            (None, Some(n)) => verify_batch(n, seed, max_n, bound, exec(sequential)),
            _ => Err(Failure::Params("give an instance file or --batch N".into())),
        },
        Cmd::Plot { input, what, out, subset, k, at } => plot(&input, what, out.as_deref(), &subset, k, at.as_deref()),
    }
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Params(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure::Params(format!("stdout: {e}")))
        }
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Params(format!("cannot read {}: {e}", path.display())))?;
    instance_from_json(&text).map_err(|e: IoError| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn summary(inst: &Instance) {
    eprintln!("r={} b={} delta={}", inst.r(), inst.b(), inst.delta());
}

fn gen(kind: GenKind) -> Outcome {
    let (made, out) = match kind {
        GenKind::Random { seed, r, b, bound, out } => (gen_random(seed, r, b, bound), out),
        GenKind::Separated { r, b, out } => (gen_separated_convex(r, b), out),
        GenKind::Clustered { seed, r, b, bound, inner, inner_bound, out } => {
            (gen_clustered(seed, r, b, bound, inner.into(), inner_bound), out)
        }
    };
    let inst = made.map_err(|e| Failure::Params(e.to_string()))?;
    summary(&inst);
    emit(out.as_deref(), &(instance_to_json(&inst) + "\n"))
}

fn enumerate(path: &Path, method: Method, format: Format, exec: Exec) -> Outcome {
    let inst = load(path)?;
    let lines = match method {
        Method::Naive => enumerate_naive(&inst),
        Method::Sweep => enumerate_sweep_with(&inst, exec),
        Method::Both => {
            let naive = enumerate_naive(&inst);
            let sweep = enumerate_sweep_with(&inst, exec);
            if naive != sweep {
                return Err(Failure::Mismatch(format!(
                    "naive found {} lines, sweep found {}",
                    naive.len(),
                    sweep.len()
                )));
            }
            naive
        }
    };
    let text = match format {
        Format::Csv => lines_to_csv(&inst, &lines),
        Format::Json => lines_to_json(&inst, &lines) + "\n",
    };
    emit(None, &text)
}

fn parse_subset(s: &str) -> Result<Subset, Failure> {
    match s {
        "red" => Ok(Subset::AllRed),
        "blue" => Ok(Subset::AllBlue),
        _ => {
            let ids = s.strip_prefix("ids:").ok_or_else(|| Failure::Params(format!("unknown subset {s:?}")))?;
            ids.split(',')
                .map(|t| t.trim().parse().map_err(|_| Failure::Params(format!("bad point id {t:?}"))))
                .collect::<Result<Vec<_>, _>>()
                .map(Subset::Ids)
        }
    }
}

fn parse_direction(s: &str) -> Result<Direction, Failure> {
    let bad = || Failure::Params(format!("bad direction {s:?}; expected dx,dy"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    let dx = x.trim().parse().map_err(|_| bad())?;
    let dy = y.trim().parse().map_err(|_| bad())?;
    Direction::new(dx, dy).ok_or_else(bad)
}

fn rotation_spec(subset: &str, k: usize, start: Option<&str>) -> Result<RotationSpec, Failure> {
    let mut spec = RotationSpec::new(parse_subset(subset)?, k);
    if let Some(s) = start {
        spec = spec.starting_at(parse_direction(s)?);
    }
    Ok(spec)
}

fn rotation_failure(e: RotationError) -> Failure {
    Failure::Params(e.to_string())
}

fn trace(path: &Path, subset: &str, k: usize, start: Option<&str>, low: Option<i64>) -> Outcome {
    let inst = load(path)?;
    let spec = rotation_spec(subset, k, start)?;
    let trace = run_rotation(&spec, &inst).map_err(rotation_failure)?;
    let text = match low {
        None => trace.to_json_lines(),
        Some(low) => {
            let mut out = String::new();
            for t in transitions_at(&trace, &inst, low) {
                let rec = serde_json::json!({
                    "dir": { "dx": t.at.dx, "dy": t.at.dy },
                    "from": t.from_w,
                    "to": t.to_w,
                    "pivot": t.pivot,
                    "crossed": t.crossed,
                    "end": t.end,
                    "balanced": t.is_balanced,
                });
                out.push_str(&rec.to_string());
                out.push('\n');
            }
            out
        }
    };
    emit(None, &text)
}

fn verify_one(path: &Path, certificate: Option<&Path>) -> Outcome {
    let inst = load(path)?;
    let (rep, cert) = report::run(&inst, None);
    if let (Some(p), Some(c)) = (certificate, &cert) {
        emit(Some(p), &(c.to_json() + "\n"))?;
    }
    emit(None, &(serde_json::to_string(&rep).expect("report serializes") + "\n"))?;
    if rep.pass {
        Ok(())
    } else {
        Err(Failure::Lemma(format!("{}: {}", path.display(), rep.failures.join("; "))))
    }
}

fn verify_batch(n: usize, seed: u64, max_n: usize, bound: i64, exec: Exec) -> Outcome {
    let seeds: Vec<u64> = (0..n as u64).map(|i| seed.wrapping_add(i)).collect();
    let (r0, b0) = batch_params(seed, max_n).ok_or_else(|| Failure::Params("--max-n must be at least 2".into()))?;
    gen_random(seed, r0, b0, bound).map_err(|e| Failure::Params(e.to_string()))?;
    let reports = exec.map(&seeds, |&s| {
        let (r, b) = batch_params(s, max_n).expect("checked above");
        gen_random(s, r, b, bound).map(|inst| report::run(&inst, Some(s)).0)
    });
    let mut failed = Vec::new();
    let mut text = String::new();
    for (s, rep) in seeds.iter().zip(reports) {
        let rep = rep.map_err(|e| Failure::Params(format!("seed {s}: {e}")))?;
        if !rep.pass {
            failed.push(format!("seed {s}: {}", rep.failures.join("; ")));
        }
        text.push_str(&serde_json::to_string(&rep).expect("report serializes"));
        text.push('\n');
    }
    emit(None, &text)?;
    eprintln!("{} instances, {} failed", n, failed.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Lemma(failed.join("\n")))
    }
}

fn plot(path: &Path, what: What, out: Option<&Path>, subset: &str, k: usize, at: Option<&str>) -> Outcome {
    let inst = load(path)?;
    let mut canvas = Canvas::new(&inst);
    let title = match what {
        What::Points => "points",
        What::Balanced => {
            for l in enumerate_naive(&inst) {
                canvas.segment(&inst, l.red, l.blue, "balanced");
            }
            "balanced lines"
        }
        What::Rotation => {
            let spec = rotation_spec(subset, k, None)?;
            let trace = run_rotation(&spec, &inst).map_err(rotation_failure)?;
            let t = match at {
                Some(s) => parse_direction(s)?,
                None => trace.start(),
            };
            let line = trace.line_at(t);
            canvas.line(&inst, &line, "rotation", false);
            canvas.ring(&inst, line.anchor(), "pivot", "#000");
            "rotation snapshot"
        }
        What::Certificate => {
            let cert = verify_lower_bound(&inst).map_err(|e| Failure::Lemma(e.to_string()))?;
            for l in cert.balanced_lines() {
                canvas.segment(&inst, l.red, l.blue, "certified");
            }
            if let Some(gamma) = find_gamma(&inst).filter(|_| cert.gamma.is_some()) {
                let (zero, pi) = gamma.waist.lines;
                canvas.line(&inst, &zero, "gamma-0", true);
                canvas.line(&inst, &pi, "gamma-pi", true);
                let split = decompose_fhg(&inst, &gamma).map_err(|e| Failure::Lemma(e.to_string()))?;
                for (ids, class, stroke) in [(&split.f, "F", "#2ca02c"), (&split.h, "H", "#9467bd"), (&split.g, "G", "#ff7f0e")] {
                    for &id in ids {
                        canvas.ring(&inst, id, class, stroke);
                    }
                }
            }
            "certificate"
        }
    };
    canvas.points(&inst);
    emit(out, &canvas.finish(title))
}
