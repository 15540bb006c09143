use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use supersparse::eig::{parse_root_csv, root_cloud_capped};
use supersparse::family::family_poly_capped;
use supersparse::io::{matrix_from_json, matrix_to_json, parse_rational, read_mtx, write_mtx, MtxFlavor};
use supersparse::oracle::verify_family_budget;
use supersparse::plot::{render_svg, Bounds};
use supersparse::{
    alpha, compose, compose_single, degree_cap_from_env, family_degree, family_matrix, frobenius_height, Error,
    Family, FamilyId, SparseHessenberg, DEFAULT_DENSE_CAP, DEFAULT_ORACLE_DIM_CAP,
};

#[derive(Parser)]
#[command(name = "supersparse", version, about = "Supersparse companion matrices for Mandelbrot-type polynomial families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Mtx,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family companion and write it as Matrix Market or JSON.
    Build {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        /// Output file; the matrix goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Defaults to the extension of `--out`, else mtx.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check companions against the expanded polynomials for every n up to max-n.
    Verify {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        max_n: u32,
        /// Largest dimension handed to the exact oracle.
        #[arg(long, default_value_t = DEFAULT_ORACLE_DIM_CAP)]
        budget: usize,
        /// One JSON report per line instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Eigenvalues with residuals, as CSV.
    Eig {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
        dense_cap: usize,
    },
    /// Scatter plot of a root CSV as SVG.
    Plot {
        csv: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// re_min,re_max,im_min,im_max
        #[arg(long, allow_hyphen_values = true)]
        bounds: Option<String>,
    },
    /// Degree of a family polynomial, without expanding it.
    Degree {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
    },
    /// Height of the family companion.
    Height {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        /// Also report the height of the Frobenius companion of the same polynomial.
        #[arg(long)]
        compare_frobenius: bool,
    },
    /// Compose user matrices: companion of z·a(z)·b(z) + c0, or z·a(z) + c0 without b.
    Compose {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: Option<PathBuf>,
        /// Integer or p/q.
        #[arg(long, allow_hyphen_values = true)]
        c0: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn format_for(path: Option<&Path>, explicit: Option<Format>) -> Format {
    explicit.unwrap_or_else(|| match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
        _ => Format::Mtx,
    })
}

fn serialize(m: &SparseHessenberg, format: Format) -> String {
    match format {
        Format::Mtx => write_mtx(m, if m.is_integer() { MtxFlavor::Real } else { MtxFlavor::Exact }),
        Format::Json => matrix_to_json(m) + "\n",
    }
}

fn read_matrix(path: &Path) -> anyhow::Result<SparseHessenberg> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m = match format_for(Some(path), None) {
        Format::Json => matrix_from_json(&text),
        Format::Mtx => read_mtx(&text),
    };
    m.with_context(|| format!("{}", path.display()))
}

/// Writes to `out`, or to stdout when absent.
fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Stdout when writing a file, stderr when stdout carries the data.
fn report(to_file: bool, line: &str) {
    if to_file {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn checked_id(family: Family, n: u32) -> anyhow::Result<FamilyId> {
    let id = FamilyId::new(family, n)?;
    let degree = family_degree(id).unwrap_or(0);
    let cap = degree_cap_from_env();
    if degree > cap {
        return Err(Error::DegreeCapExceeded { degree, cap }.into());
    }
    Ok(id)
}

fn parse_bounds(s: &str) -> anyhow::Result<Bounds> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .context("bounds must be four numbers re_min,re_max,im_min,im_max")?;
    let [re_min, re_max, im_min, im_max] = v[..] else {
        bail!("bounds must be four numbers re_min,re_max,im_min,im_max");
    };
    let b = Bounds { re_min, re_max, im_min, im_max };
    if !b.is_valid() {
        bail!("bounds must be finite with min < max");
    }
    Ok(b)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Build { family, n, out, format } => {
            let m = family_matrix(checked_id(family, n)?)?;
            let format = format_for(out.as_deref(), format);
            emit(out.as_deref(), &serialize(&m, format))?;
            report(out.is_some(), &format!("dim: {}", m.dim()));
            report(out.is_some(), &format!("height: {}", m.height()));
        }
        Command::Verify { family, max_n, budget, json } => {
            let mut failures = 0;
            for n in 1..=max_n {
                let id = checked_id(family, n)?;
                if family_degree(id).unwrap_or(0) == 0 {
                    continue;
                }
                let r = verify_family_budget(id, budget)?;
                if json {
                    println!("{}", r.to_json());
                } else {
                    println!("{id} dim {}: {r}", family_degree(id).unwrap_or(0));
                }
                failures += usize::from(!r.ok);
            }
            if failures > 0 {
                eprintln!("{failures} mismatches");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Eig { family, n, out, dense_cap } => {
            let cloud = root_cloud_capped(checked_id(family, n)?, dense_cap)?;
            emit(out.as_deref(), &cloud.to_csv())?;
            report(out.is_some(), &format!("max residual: {:e}", cloud.max_residual()));
        }
        Command::Plot { csv, out, bounds } => {
            let text = fs::read_to_string(&csv).with_context(|| format!("reading {}", csv.display()))?;
            let roots = parse_root_csv(&text).with_context(|| format!("{}", csv.display()))?;
            let bounds = bounds.as_deref().map(parse_bounds).transpose()?;
            emit(out.as_deref(), &render_svg(&roots, bounds))?;
            report(out.is_some(), &format!("points: {}", roots.len()));
        }
        Command::Degree { family, n } => {
            println!("{}", family_degree(FamilyId::new(family, n)?).unwrap_or(0));
        }
        Command::Height { family, n, compare_frobenius } => {
            let id = checked_id(family, n)?;
            let h = family_matrix(id)?.height();
            if compare_frobenius {
                let p = family_poly_capped(id, degree_cap_from_env())?;
                println!("supersparse: {h}, frobenius: {}", frobenius_height(&p)?);
            } else {
                println!("{h}");
            }
        }
        Command::Compose { a, b, c0, out, format } => {
            let c0 = parse_rational(&c0).context("--c0")?;
            let a = read_matrix(&a)?;
            let b = b.as_deref().map(read_matrix).transpose()?;
            let (m, alpha) = match &b {
                Some(b) => (compose(&a, b, c0), alpha(&a, Some(b))),
                None => (compose_single(&a, c0), alpha(&a, None)),
            };
            let format = format_for(out.as_deref(), format);
            emit(out.as_deref(), &serialize(&m, format))?;
            report(out.is_some(), &format!("alpha: {alpha}"));
            report(out.is_some(), &format!("dim: {}", m.dim()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ConvergenceFailure { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
