//! Command-line interface. Exit codes: 0 certified (or success), 2 not
//! certified, 1 error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::{Complex, DMatrix, DVector};
use serde_json::{json, Value};

use crate::cayley::{build_ball, geodesic_pairs};
use crate::certifier::{builtin_example, run, run_with_words, Entry, JobConfig, Verdict};
use crate::criteria::eps_max;
use crate::field::{FieldTag, Scalar};
use crate::symspace::{self, Flag, FlagType, HyperplaneFlag, LineFlag, Point, Tolerances};

/// Environment variable capping the worker threads (`0` or unset: automatic).
pub const THREADS_ENV: &str = "ANOSOV_CERT_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "anosov-cert",
    version,
    about = "Certify projective Anosov subgroups of SL(d, R) and SL(d, C)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full pipeline and write a certificate.
    Certify {
        #[arg(long)]
        config: PathBuf,
        /// Word list to survey instead of enumerating the ball.
        #[arg(long)]
        words: Option<PathBuf>,
        /// Certificate path; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fixed interpolation parameter for the auxiliary constants.
        #[arg(long)]
        t: Option<f64>,
        /// Number of interpolation parameters scanned.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Write the built-in genus-two example config.
    Example {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print sphere sizes of the Cayley ball and the geodesic pair count.
    Enumerate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        radius: usize,
    },
    /// Evaluate one geometric operation.
    Geometry {
        #[arg(long)]
        op: GeometryOp,
        /// Point as a JSON matrix.
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        x: Option<String>,
        /// Line as a JSON vector.
        #[arg(long)]
        line: Option<String>,
        /// Hyperplane as a JSON covector.
        #[arg(long)]
        hyperplane: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        d: Option<f64>,
        #[arg(long, value_enum, default_value = "zeta")]
        type_a: FlagArg,
        #[arg(long, value_enum, default_value = "zeta")]
        type_b: FlagArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryOp {
    VecDistance,
    RiemDistance,
    DAlpha,
    Midpoint,
    ZetaFlag,
    IotaZetaFlag,
    SegmentZetaAngle,
    CosAngle,
    IsTransverse,
    DistToParallelSet,
    BusemannGapStandard,
    Zeta0,
    EpsMax,
    ZetaAngleBound,
    RayToParallelBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlagArg {
    Zeta,
    IotaZeta,
}

impl From<FlagArg> for FlagType {
    fn from(f: FlagArg) -> Self {
        match f {
            FlagArg::Zeta => FlagType::Zeta,
            FlagArg::IotaZeta => FlagType::IotaZeta,
        }
    }
}

pub fn main() -> ExitCode {
    let code = run_cli(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    ExitCode::from(code)
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run_cli(
    args: impl IntoIterator<Item = OsString>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    configure_threads();
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn configure_threads() {
    let n = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if n > 0 {
        // Fails only if a global pool already exists, in which case it is kept.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn write_text(path: Option<&PathBuf>, text: &str, out: &mut dyn Write) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => writeln!(out, "{text}").map_err(|e| e.to_string()),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<u8, String> {
    match command {
        Command::Certify {
            config,
            words,
            out: path,
            t,
            grid,
        } => {
            let mut cfg = JobConfig::load(&config).map_err(|e| e.to_string())?;
            if t.is_some() {
                cfg.t = t;
            }
            if let Some(g) = grid {
                cfg.aux_grid = g;
            }
            let cert = match words {
                Some(w) => {
                    let text =
                        std::fs::read_to_string(&w).map_err(|e| format!("{}: {e}", w.display()))?;
                    cfg.word_list = Some(w);
                    run_with_words(&cfg, Some(&text))
                }
                None => run(&cfg),
            }
            .map_err(|e| e.to_string())?;
            let json = cert.to_json();
            if let Some(p) = &path {
                std::fs::write(p, &json).map_err(|e| format!("{}: {e}", p.display()))?;
                let mut line = format!("verdict: {}", cert.verdict);
                if let Some(s) = &cert.survey {
                    line += &format!(
                        ", S = {}, eps = {}, pairs = {}",
                        s.spacing, s.eps, s.pair_count
                    );
                }
                writeln!(out, "{line}").map_err(|e| e.to_string())?;
            } else {
                writeln!(out, "{json}").map_err(|e| e.to_string())?;
            }
            Ok(if cert.verdict == Verdict::Certified {
                0
            } else {
                2
            })
        }
        Command::Example { out: path } => {
            write_text(path.as_ref(), &builtin_example().to_json(), out)?;
            Ok(0)
        }
        Command::Enumerate { config, radius } => {
            let cfg = JobConfig::load(&config).map_err(|e| e.to_string())?;
            match cfg.field {
                FieldTag::Real => enumerate::<f64>(&cfg, radius, out),
                FieldTag::Complex => enumerate::<Complex<f64>>(&cfg, radius, out),
            }
        }
        Command::Geometry {
            op,
            p,
            q,
            x,
            line,
            hyperplane,
            dim,
            s,
            d,
            type_a,
            type_b,
        } => {
            let args = GeometryArgs {
                op,
                p,
                q,
                x,
                line,
                hyperplane,
                dim,
                s,
                d,
                type_a,
                type_b,
            };
            let complex = [&args.p, &args.q, &args.x, &args.line, &args.hyperplane]
                .iter()
                .filter_map(|v| v.as_deref())
                .any(|v| v.contains("[[") && has_complex_entry(v));
            let value = if complex {
                geometry::<Complex<f64>>(&args)
            } else {
                geometry::<f64>(&args)
            }?;
            writeln!(out, "{value}").map_err(|e| e.to_string())?;
            Ok(0)
        }
    }
}

fn enumerate<T: Scalar>(cfg: &JobConfig, radius: usize, out: &mut dyn Write) -> Result<u8, String> {
    let k = cfg.half_length;
    if radius > 2 * k {
        return Err(format!("radius {radius} exceeds 2k = {}", 2 * k));
    }
    let gens = cfg.generator_set::<T>().map_err(|e| e.to_string())?;
    let table = build_ball(&gens, radius, cfg.dedup_grid).map_err(|e| e.to_string())?;
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(|e| e.to_string());
    for (n, size) in table.sphere_sizes().iter().enumerate() {
        w(out, format!("{n}\t{size}"))?;
    }
    if radius == 2 * k {
        let pairs = geodesic_pairs(&table, k).map_err(|e| e.to_string())?;
        w(out, format!("pairs(k={k})\t{}", pairs.len()))?;
    }
    Ok(0)
}

struct GeometryArgs {
    op: GeometryOp,
    p: Option<String>,
    q: Option<String>,
    x: Option<String>,
    line: Option<String>,
    hyperplane: Option<String>,
    dim: Option<usize>,
    s: Option<f64>,
    d: Option<f64>,
    type_a: FlagArg,
    type_b: FlagArg,
}

fn has_complex_entry(text: &str) -> bool {
    serde_json::from_str::<Vec<Vec<Entry>>>(text)
        .map(|rows| {
            rows.iter()
                .flatten()
                .any(|e| matches!(e, Entry::Complex(_)))
        })
        .unwrap_or(false)
}

fn parse_matrix<T: Scalar>(name: &str, text: Option<&String>) -> Result<DMatrix<T>, String> {
    let text = text.ok_or_else(|| format!("--{name} is required"))?;
    let rows: Vec<Vec<Entry>> = serde_json::from_str(text).map_err(|e| format!("--{name}: {e}"))?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(format!("--{name} must be a square matrix"));
    }
    let mut m = DMatrix::<T>::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let (re, im) = e.parts();
            m[(i, j)] = T::from_parts(re, im).ok_or_else(|| format!("--{name}: complex entry"))?;
        }
    }
    Ok(m)
}

fn parse_vector<T: Scalar>(name: &str, text: Option<&String>) -> Result<DVector<T>, String> {
    let text = text.ok_or_else(|| format!("--{name} is required"))?;
    let entries: Vec<Entry> = serde_json::from_str(text).map_err(|e| format!("--{name}: {e}"))?;
    entries
        .iter()
        .map(|e| {
            let (re, im) = e.parts();
            T::from_parts(re, im).ok_or_else(|| format!("--{name}: complex entry"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(DVector::from_vec)
}

fn parse_point<T: Scalar>(name: &str, text: Option<&String>) -> Result<Point<T>, String> {
    Point::new(parse_matrix(name, text)?, &Tolerances::default())
        .map_err(|e| format!("--{name}: {e}"))
}

fn scalar_json<T: Scalar>(z: T) -> Value {
    match T::FIELD {
        FieldTag::Real => json!(z.parts().0),
        FieldTag::Complex => json!([z.parts().0, z.parts().1]),
    }
}

fn matrix_json<T: Scalar>(m: &DMatrix<T>) -> Value {
    Value::Array(
        m.row_iter()
            .map(|r| Value::Array(r.iter().map(|&z| scalar_json(z)).collect()))
            .collect(),
    )
}

fn vector_json<T: Scalar>(v: &DVector<T>) -> Value {
    Value::Array(v.iter().map(|&z| scalar_json(z)).collect())
}

fn geometry<T: Scalar>(a: &GeometryArgs) -> Result<Value, String> {
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| format!("--{name} is required"));
    let need_dim = || a.dim.ok_or_else(|| "--dim is required".to_string());
    let e = |err: symspace::GeometryError| err.to_string();
    Ok(match a.op {
        GeometryOp::VecDistance => {
            json!(symspace::vec_distance(
                &parse_point::<T>("p", a.p.as_ref())?,
                &parse_point("q", a.q.as_ref())?
            )
            .map_err(e)?
            .entries())
        }
        GeometryOp::RiemDistance => {
            json!(symspace::riem_distance(
                &parse_point::<T>("p", a.p.as_ref())?,
                &parse_point("q", a.q.as_ref())?
            )
            .map_err(e)?)
        }
        GeometryOp::DAlpha => {
            json!(symspace::d_alpha(
                &parse_point::<T>("p", a.p.as_ref())?,
                &parse_point("q", a.q.as_ref())?
            )
            .map_err(e)?)
        }
        GeometryOp::Midpoint => {
            let m = symspace::midpoint(
                &parse_point::<T>("p", a.p.as_ref())?,
                &parse_point("q", a.q.as_ref())?,
            )
            .map_err(e)?;
            matrix_json(m.matrix())
        }
        GeometryOp::ZetaFlag => {
            let f = symspace::zeta_flag(
                &parse_point::<T>("p", a.p.as_ref())?,
                &parse_point("q", a.q.as_ref())?,
            )
            .map_err(e)?;
            vector_json(f.vector())
        }
        GeometryOp::IotaZetaFlag => {
            let f = symspace::iota_zeta_flag(
                &parse_point::<T>("p", a.p.as_ref())?,
                &parse_point("q", a.q.as_ref())?,
            )
            .map_err(e)?;
            vector_json(f.covector())
        }
        GeometryOp::SegmentZetaAngle => json!(symspace::segment_zeta_angle(
            &parse_point::<T>("x", a.x.as_ref())?,
            &parse_point("p", a.p.as_ref())?,
            &parse_point("q", a.q.as_ref())?,
            a.type_a.into(),
            a.type_b.into(),
        )
        .map_err(e)?),
        GeometryOp::CosAngle | GeometryOp::IsTransverse | GeometryOp::DistToParallelSet => {
            let p = parse_point::<T>("p", a.p.as_ref())?;
            let line = LineFlag::new(parse_vector("line", a.line.as_ref())?).map_err(e)?;
            let hyp = HyperplaneFlag::new(parse_vector("hyperplane", a.hyperplane.as_ref())?)
                .map_err(e)?;
            match a.op {
                GeometryOp::CosAngle => {
                    json!(
                        symspace::cos_angle(&p, &Flag::Hyperplane(hyp), &Flag::Line(line))
                            .map_err(e)?
                    )
                }
                GeometryOp::IsTransverse => {
                    json!(symspace::is_transverse(&p, &hyp, &line).map_err(e)?)
                }
                _ => json!(symspace::dist_to_parallel_set(&p, &hyp, &line).map_err(e)?),
            }
        }
        GeometryOp::BusemannGapStandard => {
            json!(symspace::busemann_gap_standard(&parse_point::<T>(
                "p",
                a.p.as_ref()
            )?))
        }
        GeometryOp::Zeta0 => json!(symspace::zeta0(need_dim()?)),
        GeometryOp::EpsMax => json!(eps_max(need_dim()?)),
        GeometryOp::ZetaAngleBound => {
            json!(
                symspace::zeta_angle_bound(need(a.s, "s")?, need(a.d, "d")?, need_dim()?)
                    .map_err(e)?
            )
        }
        GeometryOp::RayToParallelBound => json!(symspace::ray_to_parallel_bound(
            need(a.d, "d")?,
            need(a.s, "s")?
        )),
    })
}
