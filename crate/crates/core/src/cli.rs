//! The `branchcut` command line.
//!
//! Exit status is 0 on success, 2 for malformed or missing flags, and 1 when
//! an operation rejects its input (the message goes to standard error).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::fractal::{
    render, trace_disk_chain, traces_to_csv, Exponent, IterationMode, RenderConfig,
    DEFAULT_BAILOUT, DEFAULT_MAX_ITER,
};
use crate::multival::{nth_roots, rational_pow_values, RationalExponent, ValueSet};
use crate::polar::{int_pow_rect, principal_pow, RectComplex};
use crate::surface::{lift, smul, spow, SheetedPoint, SurfaceSpec};
use crate::translate::{add_ccc, add_general, add_sign, probe_discontinuity, PROBE_SAMPLES};

#[derive(Debug, Parser)]
#[command(
    name = "branchcut",
    version,
    about = "Multivalued complex powers and sheet tracking"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integer power by repeated multiplication (--n) or principal power (--alpha)
    Pow(PowArgs),
    /// All n-th roots of z
    Roots(RootsArgs),
    /// All values of z^(p/q)
    Rpow(RpowArgs),
    /// Sheet-tracked product on W_alpha
    Smul(SmulArgs),
    /// Sheet-tracked alpha-power on W_alpha
    Spow(SpowArgs),
    /// Sheet-tracked sum on W_alpha
    Sadd(SaddArgs),
    /// Translate a small disk and report the sheets it lands on
    Probe(ProbeArgs),
    /// Escape-time raster of z^alpha + c
    Render(RenderArgs),
    /// Images of a disk on the negative real axis under log, alpha*log and exp
    Trace(TraceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Algo {
    /// Case tree for (c, 0); with a nonzero --mc this is the general rule
    #[default]
    Ccc,
    Sign,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Principal,
    Ccc,
    Sign,
}

impl From<ModeArg> for IterationMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Principal => IterationMode::Principal,
            ModeArg::Ccc => IterationMode::Ccc,
            ModeArg::Sign => IterationMode::Sign,
        }
    }
}

/// View rectangle `xmin,xmax,ymin,ymax`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("malformed region {s:?}")))?;
        match parts[..] {
            [x_min, x_max, y_min, y_max] => Ok(Region {
                x_min,
                x_max,
                y_min,
                y_max,
            }),
            _ => Err(Error::Parse(format!("region needs four values, got {s:?}"))),
        }
    }
}

#[derive(Debug, Args)]
pub struct PowArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub z: RectComplex,
    #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<Exponent>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub z: RectComplex,
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RpowArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub z: RectComplex,
    #[arg(long, allow_hyphen_values = true)]
    pub p: i64,
    #[arg(long)]
    pub q: i64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SmulArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub z: RectComplex,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub m: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: RectComplex,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub mc: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: RationalExponent,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SpowArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub z: RectComplex,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub m: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: RationalExponent,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SaddArgs {
    #[arg(long, value_enum, default_value_t)]
    pub algo: Algo,
    #[arg(long, allow_hyphen_values = true)]
    pub z: RectComplex,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub m: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: RectComplex,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub mc: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: RationalExponent,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub c: RectComplex,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: RationalExponent,
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
    #[arg(long, default_value_t = PROBE_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "5/2")]
    pub alpha: Exponent,
    #[arg(long, allow_hyphen_values = true, default_value = "0.5i")]
    pub c: RectComplex,
    #[arg(long, allow_hyphen_values = true, default_value = "-2,2,-2,2")]
    pub region: Region,
    #[arg(long, default_value_t = 256)]
    pub width: u32,
    #[arg(long, default_value_t = 256)]
    pub height: u32,
    #[arg(long = "max-iter", default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: u32,
    #[arg(long, default_value_t = DEFAULT_BAILOUT)]
    pub bailout: f64,
    #[arg(long, value_enum, default_value = "principal")]
    pub mode: ModeArg,
    /// Output file; `.pgm`, `.ppm` or `.csv`
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    /// Disk centre, a point on the negative real axis
    #[arg(long, allow_hyphen_values = true, default_value = "-1")]
    pub z: RectComplex,
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
    #[arg(long, allow_hyphen_values = true, default_value = "5/2")]
    pub alpha: Exponent,
    /// Points per arc and per cut edge
    #[arg(long, default_value_t = 32)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Failure of a subcommand, split by exit status.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(Error::Domain(format!("i/o: {e}")))
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Pow(a) => pow(a, out),
        Command::Roots(a) => {
            let set = nth_roots(a.z, a.n)?;
            write_values(&set, a.format, out)
        }
        Command::Rpow(a) => {
            let e = RationalExponent::new(a.p, a.q).map_err(|e| Failure::Usage(e.to_string()))?;
            let set = rational_pow_values(a.z, e)?;
            write_values(&set, a.format, out)
        }
        Command::Smul(a) => {
            let surf = SurfaceSpec::new(a.alpha);
            let p = smul(lift(a.z, a.m, &surf), lift(a.c, a.mc, &surf), &surf);
            write_sheeted(p, a.format, out)
        }
        Command::Spow(a) => {
            let surf = SurfaceSpec::new(a.alpha);
            let p = spow(lift(a.z, a.m, &surf), &surf)?;
            write_sheeted(p, a.format, out)
        }
        Command::Sadd(a) => {
            let surf = SurfaceSpec::new(a.alpha);
            let lhs = lift(a.z, a.m, &surf);
            let rhs = lift(a.c, a.mc, &surf);
            let p = match a.algo {
                Algo::Ccc if rhs.m == 0 => add_ccc(lhs, a.c, &surf),
                Algo::Ccc | Algo::General => add_general(lhs, rhs, &surf),
                Algo::Sign => add_sign(lhs, rhs, &surf),
            };
            write_sheeted(p, a.format, out)
        }
        Command::Probe(a) => {
            let surf = SurfaceSpec::new(a.alpha);
            let ev = probe_discontinuity(a.c, &surf, a.epsilon, a.samples, a.seed)?;
            match a.format {
                Format::Csv => out.write_all(ev.to_csv().as_bytes())?,
                Format::Text => {
                    let labels: Vec<String> = ev.sheet_labels.iter().map(i64::to_string).collect();
                    writeln!(out, "z0={}", ev.z0)?;
                    writeln!(out, "epsilon={}", ev.epsilon)?;
                    writeln!(out, "input_sheet={}", ev.input_sheet)?;
                    writeln!(out, "sheets={}", labels.join(","))?;
                    writeln!(out, "split_fraction={}", ev.split_fraction)?;
                }
            }
            Ok(())
        }
        Command::Render(a) => render_cmd(a, out),
        Command::Trace(a) => {
            if a.z.im != 0.0 || a.z.re >= 0.0 {
                return Err(Failure::Usage(format!(
                    "--z must lie on the negative real axis, got {}",
                    a.z
                )));
            }
            let traces = trace_disk_chain(-a.z.re, a.epsilon, a.alpha.value(), a.n)?;
            match a.format {
                Format::Csv => out.write_all(traces_to_csv(&traces).as_bytes())?,
                Format::Text => {
                    for t in &traces {
                        let edge = t.cut_edge();
                        let mid = edge[edge.len() / 2];
                        writeln!(
                            out,
                            "{} {}: {} points, cut-edge midpoint {}",
                            t.stage,
                            t.half,
                            t.points.len(),
                            mid
                        )?;
                    }
                }
            }
            Ok(())
        }
    }
}

fn pow(a: PowArgs, out: &mut dyn Write) -> CmdResult {
    let v = match (a.n, a.alpha) {
        (Some(n), _) => int_pow_rect(a.z, n),
        (None, Some(alpha)) => principal_pow(a.z, alpha.value())?,
        (None, None) => return Err(Failure::Usage("one of --n or --alpha is required".into())),
    };
    match a.format {
        Format::Text => writeln!(out, "{v}")?,
        Format::Csv => write!(out, "re,im\n{},{}\n", v.re, v.im)?,
    }
    Ok(())
}

fn write_values(set: &ValueSet, format: Format, out: &mut dyn Write) -> CmdResult {
    match format {
        Format::Csv => out.write_all(set.to_csv().as_bytes())?,
        Format::Text => {
            for ((k, v), arg) in set.k_index.iter().zip(&set.values).zip(&set.arguments) {
                writeln!(out, "k={k} {v} modulus={} argument={arg}", v.abs())?;
            }
        }
    }
    Ok(())
}

fn write_sheeted(p: SheetedPoint, format: Format, out: &mut dyn Write) -> CmdResult {
    match format {
        Format::Text => writeln!(out, "{} sheet={}", p.z, p.m)?,
        Format::Csv => write!(out, "re,im,sheet\n{},{},{}\n", p.z.re, p.z.im, p.m)?,
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
enum OutKind {
    Pgm,
    Ppm,
    Csv,
}

impl OutKind {
    fn from_path(path: &Path) -> std::result::Result<Self, Failure> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("pgm") => Ok(OutKind::Pgm),
            Some("ppm") => Ok(OutKind::Ppm),
            Some("csv") => Ok(OutKind::Csv),
            _ => Err(Failure::Usage(format!(
                "--out must end in .pgm, .ppm or .csv, got {}",
                path.display()
            ))),
        }
    }
}

fn render_cmd(a: RenderArgs, out: &mut dyn Write) -> CmdResult {
    let cfg = RenderConfig {
        alpha: a.alpha,
        c: a.c,
        x_min: a.region.x_min,
        x_max: a.region.x_max,
        y_min: a.region.y_min,
        y_max: a.region.y_max,
        width: a.width,
        height: a.height,
        max_iter: a.max_iter,
        bailout: a.bailout,
        mode: a.mode.into(),
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;

    let kind = a.out.as_deref().map(OutKind::from_path).transpose()?;

    let grid = render(&cfg)?;
    let escaped = grid.counts.iter().filter(|&&n| n < cfg.max_iter).count();
    match (&a.out, a.format) {
        (Some(path), _) => {
            let bytes = match kind.expect("kind is set whenever --out is") {
                OutKind::Pgm => grid.to_pgm(),
                OutKind::Ppm => grid.to_ppm(),
                OutKind::Csv => grid.to_csv().into_bytes(),
            };
            fs::write(path, bytes)?;
            writeln!(
                out,
                "wrote {} ({}x{}, {} of {} pixels escaped)",
                path.display(),
                cfg.width,
                cfg.height,
                escaped,
                grid.counts.len()
            )?;
        }
        (None, Format::Csv) => grid.write_csv(&mut *out)?,
        (None, Format::Text) => {
            writeln!(
                out,
                "{}x{} alpha={} c={}: {} of {} pixels escaped",
                cfg.width,
                cfg.height,
                cfg.alpha,
                cfg.c,
                escaped,
                grid.counts.len()
            )?;
        }
    }
    Ok(())
}
