//! Command-line front end for the `bchp` binary.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::bchp::{bchp, bchp_value, Route};
use crate::error::{Error, Result};
use crate::exactring::{MultiIndex4, Rational};
use crate::numerics::ortho::{bchp_norm_sqr, ortho_integral};
use crate::numerics::quadrature::gauss_hermite;
use crate::numerics::wigner::{bchp_via_tensor_wigner, bchp_via_wigner};
use crate::verify::{run_suite, RunConfig, VerifyReport, DEFAULT_SEED};
use crate::Variant;

/// Largest total degree accepted by `table`.
pub const TABLE_MAX: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Parser, Debug)]
#[command(name = "bchp", version, about = "Bivariate complex Hermite polynomials H_{m,n,m',n'}(z, w)")]
pub struct Cli {
    /// Seed for sampled evaluation points.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Gauss–Hermite nodes per real dimension (overrides suite defaults).
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Series truncation order for generating functions.
    #[arg(long, global = true, default_value_t = 25)]
    pub trunc: usize,
    /// Numeric tolerance (overrides suite defaults).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Largest index used by verification suites (overrides suite defaults).
    #[arg(long, global = true, visible_alias = "max")]
    pub max_index: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Judge identities only in their printed form.
    #[arg(long, global = true)]
    pub as_printed_only: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print H_M exactly.
    Gen {
        /// Multi-index as `m n m' n'` or `m,n,m',n'`.
        #[arg(num_args = 1..=4, required = true)]
        index: Vec<String>,
        #[arg(long, value_parser = parse_route, default_value = "compose")]
        route: Route,
    },
    /// Evaluate H_M at a point.
    Eval {
        #[arg(num_args = 1..=4, required = true)]
        index: Vec<String>,
        /// Complex literal such as `0.5-1/3i`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Complex64,
    },
    /// Tabulate H_M for |M| up to a bound.
    Table {
        bound: u32,
    },
    /// Run a verification suite (`all` runs every suite).
    Verify {
        suite: String,
    },
    /// Evaluate H_M through both Fourier–Wigner realizations.
    Wigner {
        #[arg(num_args = 1..=4, required = true)]
        index: Vec<String>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Complex64,
    },
    /// Orthogonality integral of H_M against H_N.
    Ortho {
        /// Two multi-indices, as `m,n,m',n' j,k,j',k'` or eight integers.
        #[arg(num_args = 2..=8, required = true)]
        indices: Vec<String>,
    },
}

/// Reads one multi-index from either four integer arguments or a single
/// comma-separated argument.
pub fn index_from_args(args: &[String]) -> Result<MultiIndex4> {
    args.join(",").parse()
}

fn two_indices(args: &[String]) -> Result<(MultiIndex4, MultiIndex4)> {
    match args.len() {
        2 => Ok((args[0].parse()?, args[1].parse()?)),
        8 => Ok((index_from_args(&args[..4])?, index_from_args(&args[4..])?)),
        _ => Err(Error::Parse("ortho needs two multi-indices".into())),
    }
}

fn parse_route(s: &str) -> std::result::Result<Route, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_real(s: &str) -> Result<f64> {
    if s.contains('/') {
        let r: Rational = s.parse()?;
        return Ok(r.to_f64());
    }
    s.parse::<f64>().map_err(|_| Error::Parse(format!("invalid number `{s}`")))
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`; parts may be decimals or
/// rationals `p/q`.
pub fn parse_complex_literal(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(&t)?, 0.0));
    };
    // split at the last sign that is not part of an exponent and not leading
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => parse_real(x)?,
    };
    Ok(Complex64::new(re, im))
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    parse_complex_literal(s).map_err(|e| e.to_string())
}

fn fmt_c(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

impl Cli {
    fn config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            max_index: self.max_index,
            nodes: self.nodes,
            trunc: self.trunc,
            tol: self.tol,
            as_printed_only: self.as_printed_only,
        }
    }
}

/// Runs the command; returns `Ok(true)` when everything checked passed.
fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let io = |e: io::Error| Error::Domain(format!("write failed: {e}"));
    match &cli.command {
        Command::Gen { index, route } => {
            let index = &index_from_args(index)?;
            let p = bchp(*index, *route);
            match cli.format {
                Format::Json => writeln!(out, "{}", p.to_json()),
                Format::Csv => {
                    writeln!(out, "z,zbar,w,wbar,coeff").map_err(io)?;
                    for (e, c) in p.terms() {
                        writeln!(out, "{},{},{},{},\"{}\"", e[0], e[1], e[2], e[3], c).map_err(io)?;
                    }
                    Ok(())
                }
                Format::Pretty => writeln!(out, "H_{index} = {p}"),
            }
            .map_err(io)?;
            Ok(true)
        }
        Command::Eval { index, z, w } => {
            let index = &index_from_args(index)?;
            let v = bchp_value(*index, *z, *w);
            match cli.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::json!({"index": index.to_array(), "z": [z.re, z.im], "w": [w.re, w.im], "value": [v.re, v.im]})
                ),
                Format::Csv => writeln!(out, "m,n,mp,np,re,im\n{},{},{},{},{:e},{:e}", index.m, index.n, index.mp, index.np, v.re, v.im),
                Format::Pretty => writeln!(out, "H_{index}({}, {}) = {}", fmt_c(*z), fmt_c(*w), fmt_c(v)),
            }
            .map_err(io)?;
            Ok(true)
        }
        Command::Table { bound } => {
            if *bound > TABLE_MAX {
                return Err(Error::Index(format!("table bound {bound} exceeds {TABLE_MAX}")));
            }
            if cli.format == Format::Csv {
                writeln!(out, "m,n,mp,np,terms,degree,norm_sqr").map_err(io)?;
            }
            for m in MultiIndex4::up_to_total(*bound) {
                let p = bchp(m, Route::Compose);
                let norm = bchp_norm_sqr(m);
                let deg = p.total_degree().unwrap_or(0);
                match cli.format {
                    // the polynomial is spliced in verbatim to keep its canonical key order
                    Format::Json => writeln!(
                        out,
                        "{{\"index\":{:?},\"terms\":{},\"degree\":{deg},\"norm_sqr\":{},\"poly\":{}}}",
                        m.to_array(),
                        p.num_terms(),
                        serde_json::to_string(&norm).expect("finite"),
                        p.to_json()
                    ),
                    Format::Csv => writeln!(out, "{},{},{},{},{},{},{:e}", m.m, m.n, m.mp, m.np, p.num_terms(), deg, norm),
                    Format::Pretty => writeln!(out, "H_{m}  terms {:>4}  degree {:>2}  ‖H‖² = {norm:.6e}", p.num_terms(), deg),
                }
                .map_err(io)?;
            }
            Ok(true)
        }
        Command::Verify { suite } => {
            let reports = run_suite(suite, &cli.config())?;
            write_reports(&reports, cli.format, out).map_err(io)?;
            Ok(reports.iter().all(VerifyReport::passed))
        }
        Command::Wigner { index, z, w } => {
            let index = &index_from_args(index)?;
            let grid = gauss_hermite(cli.nodes.unwrap_or(40))?;
            let s2 = 2f64.sqrt();
            let direct = bchp_value(*index, *z, *w);
            let fw = bchp_via_wigner(*index, *z, *w, Variant::Corrected, &grid);
            let direct2 = bchp_value(*index, z / s2, w / s2);
            let fw2 = bchp_via_tensor_wigner(*index, *z, *w, &grid);
            match cli.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::json!({
                        "index": index.to_array(),
                        "direct": [direct.re, direct.im], "wigner": [fw.re, fw.im],
                        "direct_scaled": [direct2.re, direct2.im], "tensor_wigner": [fw2.re, fw2.im]
                    })
                ),
                Format::Csv => writeln!(
                    out,
                    "quantity,re,im\ndirect,{:e},{:e}\nwigner,{:e},{:e}\ndirect_scaled,{:e},{:e}\ntensor_wigner,{:e},{:e}",
                    direct.re, direct.im, fw.re, fw.im, direct2.re, direct2.im, fw2.re, fw2.im
                ),
                Format::Pretty => writeln!(
                    out,
                    "H_{index}(z, w)         = {}\n  via V(h, h)(2z, 2w)  = {}\nH_{index}(z/√2, w/√2) = {}\n  via V^{{m,n}}_{{m',n'}}  = {}",
                    fmt_c(direct),
                    fmt_c(fw),
                    fmt_c(direct2),
                    fmt_c(fw2)
                ),
            }
            .map_err(io)?;
            Ok(true)
        }
        Command::Ortho { indices } => {
            let (m, n) = &two_indices(indices)?;
            let v = ortho_integral(*m, *n, cli.nodes.unwrap_or(30))?;
            let want = if m == n { bchp_norm_sqr(*m) } else { 0.0 };
            match cli.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::json!({"m": m.to_array(), "n": n.to_array(), "integral": [v.re, v.im], "expected": want})
                ),
                Format::Csv => writeln!(out, "re,im,expected\n{:e},{:e},{:e}", v.re, v.im, want),
                Format::Pretty => writeln!(out, "⟨H_{m}, H_{n}⟩ = {}  (expected {want:e})", fmt_c(v)),
            }
            .map_err(io)?;
            Ok(true)
        }
    }
}

pub fn write_reports(reports: &[VerifyReport], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in reports {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        Format::Csv => {
            writeln!(out, "{}", VerifyReport::CSV_HEADER)?;
            for r in reports {
                writeln!(out, "{}", r.to_csv())?;
            }
        }
        Format::Pretty => {
            for r in reports {
                writeln!(out, "{r}")?;
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let errata = reports.iter().filter(|r| r.erratum.is_some()).count();
            writeln!(
                out,
                "{} checks, {} passed, {failed} failed, {errata} with errata",
                reports.len(),
                reports.len() - failed
            )?;
        }
    }
    Ok(())
}

/// Parses arguments, runs, and returns the process exit code:
/// 0 on success, 1 if a check failed, 2 on usage or input errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                execute(&cli, &mut w).and_then(|ok| {
                    w.flush().map_err(|e| Error::Domain(e.to_string()))?;
                    Ok(ok)
                })
            }
            Err(e) => Err(Error::Domain(format!("cannot create {}: {e}", path.display()))),
        },
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            execute(&cli, &mut lock)
        }
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
