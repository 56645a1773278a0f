//! Command-line front end: evaluate L, regularized products, series sums, and
//! run the identity-verification suites.
//!
//! Exit codes: 0 success (verify: all rows pass), 1 verify had failing rows,
//! 2 domain/evaluation error, 64 usage or configuration error.

mod complexfmt;
mod report;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use zetareg::config::EvalConfig;
use zetareg::hurwitz::lerch_l;
use zetareg::poly::MonicPoly;
use zetareg::regprod::{regprod_poly, regprod_power_form, Epsilon, RegProduct, StartIndex};
use zetareg::series::{sum_digamma, sum_direct, SignConvention};

use complexfmt::{display_complex, parse_complex};
use suites::{run_suite, Grid, Suite, SuiteContext};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "zetareg",
    about = "Zeta-regularized products, the Lerch function, and Dirichlet series sums",
    version
)]
struct Cli {
    /// Key-value configuration file (trunc, em_order, quad_tol, overflow_clamp)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Direct-summation truncation length N
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Euler-Maclaurin order J
    #[arg(long, global = true)]
    em_order: Option<usize>,
    /// Quadrature tolerance (also via ZETAREG_QUAD_TOL)
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    /// Overflow clamp for exponential arguments
    #[arg(long, global = true)]
    overflow_clamp: Option<f64>,
    /// Evaluate the disputed formulas with their signs exactly as printed
    /// (documentation runs; the affected verify rows then fail by design)
    #[arg(long, global = true)]
    paper_signs: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Lerch function L(x) = ⧉∏_{n≥0}(n+x)
    Lerch {
        /// Argument, real or complex ("0.5", "-1", "1+2i")
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Regularized product ⧉∏ Q(k) of a polynomial or power-form sequence
    Regprod {
        /// Monic polynomial, descending coefficients ("1,3,2" is t²+3t+2)
        #[arg(long, value_name = "COEFFS", conflicts_with = "power")]
        poly: Option<String>,
        /// Power form "m=2,eps=-1,x=0,y=1" for ⧉∏((k+x)^m - eps·y^m)
        #[arg(long, value_name = "SPEC")]
        power: Option<String>,
        /// First index of the product
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        start: u8,
        /// Which m-th root of eps plays eps^{1/m} (power form only)
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Series sum Σ_{k≥1} 1/((k+x)^m + y)
    Series {
        m: u32,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Run the identity-verification suites and stream report rows
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value_t = OutArg::Json)]
        out: OutArg,
        #[arg(long, value_enum, default_value_t = GridArg::Fast)]
        grid: GridArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Digamma,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Lerch,
    Regprod,
    Series,
    Theta,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Dense,
    Fast,
}

struct Configs {
    series: EvalConfig,
    hurwitz: EvalConfig,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("zetareg: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn domain_error(msg: &str) -> ExitCode {
    eprintln!("zetareg: {msg}");
    ExitCode::from(EXIT_DOMAIN)
}

/// Precedence: flags > ZETAREG_QUAD_TOL > config file > defaults.
fn resolve_configs(cli: &Cli) -> Result<Configs, String> {
    let mut overrides: Vec<(String, f64)> = Vec::new();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {} is not key = value", lineno + 1))?;
            let key = key.trim();
            if !matches!(key, "trunc" | "em_order" | "quad_tol" | "overflow_clamp") {
                return Err(format!("unknown config key {key:?}"));
            }
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| format!("bad numeric value on config line {}", lineno + 1))?;
            overrides.push((key.to_string(), value));
        }
    }
    if let Ok(raw) = std::env::var("ZETAREG_QUAD_TOL") {
        let v: f64 = raw
            .parse()
            .map_err(|_| format!("ZETAREG_QUAD_TOL is not a number: {raw:?}"))?;
        overrides.push(("quad_tol".into(), v));
    }
    if let Some(v) = cli.trunc {
        overrides.push(("trunc".into(), v as f64));
    }
    if let Some(v) = cli.em_order {
        overrides.push(("em_order".into(), v as f64));
    }
    if let Some(v) = cli.quad_tol {
        overrides.push(("quad_tol".into(), v));
    }
    if let Some(v) = cli.overflow_clamp {
        overrides.push(("overflow_clamp".into(), v));
    }

    let apply = |base: EvalConfig, touch_trunc: bool| -> Result<EvalConfig, String> {
        let mut cfg = base;
        for (key, value) in &overrides {
            match key.as_str() {
                "trunc" if touch_trunc => cfg.trunc = *value as usize,
                "trunc" => {}
                "em_order" => cfg.em_order = *value as usize,
                "quad_tol" => cfg.quad_tol = *value,
                "overflow_clamp" => cfg.overflow_clamp = *value,
                _ => unreachable!(),
            }
        }
        EvalConfig::new(cfg.trunc, cfg.em_order, cfg.quad_tol, cfg.overflow_clamp)
            .map_err(|e| e.to_string())
    };
    Ok(Configs {
        series: apply(EvalConfig::default(), true)?,
        // the continuation truncation adapts on its own; em_order and
        // tolerances still follow the overrides
        hurwitz: apply(EvalConfig::hurwitz_em(), false)?,
    })
}

fn print_regprod(p: &RegProduct) {
    println!("{}", display_complex(p.value));
    println!("method: {}", p.method.name());
    println!("error_estimate: {:e}", p.error_estimate);
}

fn parse_power_spec(spec: &str) -> Result<(u32, Epsilon, Complex64, Complex64), String> {
    let mut m = None;
    let mut eps = None;
    let mut x = None;
    let mut y = None;
    for part in spec.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("power spec item {part:?} is not key=value"))?;
        match key.trim() {
            "m" => m = Some(value.trim().parse::<u32>().map_err(|_| "bad m".to_string())?),
            "eps" => {
                eps = Some(match value.trim() {
                    "1" | "+1" => Epsilon::Plus,
                    "-1" => Epsilon::Minus,
                    other => return Err(format!("eps must be +1 or -1, got {other:?}")),
                })
            }
            "x" => x = Some(parse_complex(value)?),
            "y" => y = Some(parse_complex(value)?),
            other => return Err(format!("unknown power spec key {other:?}")),
        }
    }
    Ok((
        m.ok_or("power spec missing m")?,
        eps.ok_or("power spec missing eps")?,
        x.ok_or("power spec missing x")?,
        y.ok_or("power spec missing y")?,
    ))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            if e.kind() == clap::error::ErrorKind::DisplayHelp
                || e.kind() == clap::error::ErrorKind::DisplayVersion
            {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let configs = match resolve_configs(&cli) {
        Ok(c) => c,
        Err(msg) => return usage_error(&msg),
    };
    let convention = if cli.paper_signs {
        SignConvention::PaperPrinted
    } else {
        SignConvention::OracleResolved
    };

    match &cli.command {
        Command::Lerch { x } => {
            let x = match parse_complex(x) {
                Ok(v) => v,
                Err(msg) => return usage_error(&msg),
            };
            match lerch_l(x, &configs.hurwitz) {
                Ok(v) => {
                    println!("{}", display_complex(v.value));
                    ExitCode::SUCCESS
                }
                Err(e) => domain_error(&e.to_string()),
            }
        }
        Command::Regprod {
            poly,
            power,
            start,
            root,
        } => {
            let start_index = if *start == 0 {
                StartIndex::Zero
            } else {
                StartIndex::One
            };
            if let Some(coeffs) = poly {
                let parsed: Result<Vec<Complex64>, String> =
                    coeffs.split(',').map(parse_complex).collect();
                let mut parsed = match parsed {
                    Ok(v) => v,
                    Err(msg) => return usage_error(&msg),
                };
                if parsed.len() < 2 {
                    return usage_error("polynomial needs a leading 1 and at least one coefficient");
                }
                if parsed[0] != Complex64::new(1.0, 0.0) {
                    return usage_error("polynomial must be monic (leading coefficient 1)");
                }
                parsed.remove(0);
                parsed.reverse(); // descending on the command line, ascending inside
                let q = match MonicPoly::new(parsed) {
                    Ok(q) => q,
                    Err(e) => return domain_error(&e.to_string()),
                };
                match regprod_poly(&q, start_index) {
                    Ok(p) => {
                        print_regprod(&p);
                        ExitCode::SUCCESS
                    }
                    Err(e) => domain_error(&e.to_string()),
                }
            } else if let Some(spec) = power {
                let (m, eps, x, y) = match parse_power_spec(spec) {
                    Ok(t) => t,
                    Err(msg) => return usage_error(&msg),
                };
                // start 1 re-indexes k >= 1 as k >= 0 with x + 1
                let x = if *start == 1 { x + 1.0 } else { x };
                match regprod_power_form(x, y, m, eps, *root, &configs.hurwitz) {
                    Ok(p) => {
                        print_regprod(&p);
                        ExitCode::SUCCESS
                    }
                    Err(e) => domain_error(&e.to_string()),
                }
            } else {
                usage_error("regprod needs --poly or --power")
            }
        }
        Command::Series { m, x, y, method } => {
            let (x, y) = match (parse_complex(x), parse_complex(y)) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(msg), _) | (_, Err(msg)) => return usage_error(&msg),
            };
            let mut direct = None;
            let mut closed = None;
            if matches!(method, MethodArg::Direct | MethodArg::Both) {
                match sum_direct(*m, x, y, &configs.series) {
                    Ok(s) => {
                        println!(
                            "direct: {} (tail bound {:e})",
                            display_complex(s.value),
                            s.tail_bound
                        );
                        direct = Some(s.value);
                    }
                    Err(e) => return domain_error(&e.to_string()),
                }
            }
            if matches!(method, MethodArg::Digamma | MethodArg::Both) {
                match sum_digamma(*m, x, y, convention) {
                    Ok(s) => {
                        println!("digamma: {}", display_complex(s.value));
                        closed = Some(s.value);
                    }
                    Err(e) => return domain_error(&e.to_string()),
                }
            }
            if let (Some(a), Some(b)) = (direct, closed) {
                println!("residual: {:e}", (a - b).norm());
            }
            ExitCode::SUCCESS
        }
        Command::Verify { suite, out, grid } => {
            let ctx = SuiteContext {
                series_cfg: configs.series,
                hurwitz_cfg: configs.hurwitz,
                convention,
                grid: match grid {
                    GridArg::Dense => Grid::Dense,
                    GridArg::Fast => Grid::Fast,
                },
            };
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Lerch => Suite::Lerch,
                SuiteArg::Regprod => Suite::Regprod,
                SuiteArg::Series => Suite::Series,
                SuiteArg::Theta => Suite::Theta,
            };
            let rows = run_suite(suite, &ctx);
            let stdout = std::io::stdout();
            let mut out_lock = stdout.lock();
            match out {
                OutArg::Json => {
                    for row in &rows {
                        writeln!(out_lock, "{}", row.to_json()).expect("stdout write");
                    }
                }
                OutArg::Csv => {
                    writeln!(out_lock, "{}", report::VerificationReport::CSV_HEADER)
                        .expect("stdout write");
                    for row in &rows {
                        writeln!(out_lock, "{}", row.to_csv_row()).expect("stdout write");
                    }
                }
            }
            let passed = rows.iter().filter(|r| r.pass).count();
            eprintln!("{passed}/{} rows passed", rows.len());
            if passed == rows.len() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY_FAILED)
            }
        }
    }
}
