//! `effham`: effective Hamiltonians of trigonometric potentials from the
//! command line.
//!
//! ```sh
//! effham eval --potential v.json --x "0.25,0.25"
//! effham expand --potential v.json --Q "1,0.7" --order 4
//! effham hbar --potential v.json --p-grid "-3:3:0.5" --grid 128
//! effham decide --a v1.json --b v2.json
//! effham mfunc --r "1,1,1" --alpha "1,1" --range "0:6.2832:0.01"
//! effham verify --a v1.json --b v2.json --grid 96 --seed 7
//! ```
//!
//! Machine-readable output (JSON or CSV) goes to stdout or `--output`; a
//! short human-readable summary goes to stderr. Exit codes: `decide` returns
//! 0 (equivalent), 1 (not equivalent) or 2 (out of scope); `verify` returns
//! 0 when the evidence is consistent with the verdict and 1 otherwise; any
//! error exits with 3.

mod args;
mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use effham_core::expansion::{corrector_recursion, DEFAULT_ETA};
use effham_core::homogenize::{hbar_grid, momentum_grid};
use effham_core::rigidity::{decide, m_trace, MFunctionParams, Verdict};
use effham_core::verify::{run_verify, VerifyConfig};
use effham_core::{Scheme, SolverConfig};

const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "effham", version, about = "Effective Hamiltonians of trigonometric periodic potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Godunov,
    LaxFriedrichs,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Godunov => Scheme::Godunov,
            SchemeArg::LaxFriedrichs => Scheme::LaxFriedrichs,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate V at a point of the torus.
    Eval {
        #[arg(long)]
        potential: PathBuf,
        /// Point as comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Coefficients a_0..a_L of the large-momentum expansion at Q.
    Expand {
        #[arg(long)]
        potential: PathBuf,
        #[arg(long = "Q", allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Smallest admissible |k·Q| over the frequencies reached.
        #[arg(long, default_value_t = DEFAULT_ETA)]
        eta: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// H̄ on a momentum grid, as CSV `p1,..,hbar,error_estimate`.
    Hbar {
        #[arg(long)]
        potential: PathBuf,
        /// `min:max:step`, shared by every coordinate or one per coordinate.
        #[arg(long, allow_hyphen_values = true)]
        p_grid: String,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long, default_value_t = 0.4)]
        cfl: f64,
        #[arg(long, value_enum, default_value_t = SchemeArg::Godunov)]
        scheme: SchemeArg,
        /// Skip the half-resolution run that feeds the error estimate.
        #[arg(long)]
        no_resolution_check: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide whether two potentials share their effective Hamiltonian.
    Decide {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Trace M(t) as CSV `t,M`.
    Mfunc {
        /// Amplitudes r1,r2,r3.
        #[arg(long)]
        r: String,
        /// Rational weights a1,a2 (integers or p/q).
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// `start:stop:step`.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide a pair and cross-check the verdict numerically.
    Verify {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Grid points per dimension in one and two dimensions.
        #[arg(long, default_value_t = 96)]
        grid: usize,
        /// Grid points per dimension in three dimensions.
        #[arg(long, default_value_t = 32)]
        grid_3d: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Momentum grid `min:max:step`; defaults to {-1,0,1}^n (n ≤ 2) or
        /// the origin and ±e_i (n = 3).
        #[arg(long, allow_hyphen_values = true)]
        p_grid: Option<String>,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long, default_value_t = 5e-2)]
        hbar_tol: f64,
        #[arg(long, default_value_t = 1e-2)]
        max_gap: f64,
        #[arg(long, default_value_t = 1e-8)]
        coeff_tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn emit_json(output: Option<&Path>, doc: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    emit(output, &text)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Eval { potential, x } => {
            let v = args::read_potential(&potential)?;
            let x = args::expect_len(args::floats(&x)?, v.dim(), "x")?;
            let value = v.eval(&x)?;
            emit_json(None, &render::eval(&x, value))?;
            eprintln!("V({}) = {value}", args_list(&x));
            Ok(0)
        }
        Command::Expand { potential, q, order, eta, output } => {
            let v = args::read_potential(&potential)?;
            let q = args::expect_len(args::floats(&q)?, v.dim(), "Q")?;
            let e = corrector_recursion(&v, &q, order, eta)?;
            emit_json(output.as_deref(), &render::expansion(&e))?;
            eprintln!(
                "expansion to order {order} at Q = ({}); min |k·Q| = {:.3e}",
                args_list(&q),
                e.min_denominator
            );
            Ok(0)
        }
        Command::Hbar {
            potential,
            p_grid,
            grid,
            horizon,
            cfl,
            scheme,
            no_resolution_check,
            output,
        } => {
            let v = args::read_potential(&potential)?;
            let ps = momentum_grid(&args::ranges(&p_grid, v.dim())?);
            let cfg = SolverConfig {
                grid_points_per_dim: grid,
                cfl,
                horizon,
                scheme: scheme.into(),
                resolution_check: !no_resolution_check,
            };
            cfg.validate()?;
            let samples = hbar_grid(&v, &ps, &cfg)?;
            emit(output.as_deref(), &render::hbar_csv(&samples))?;
            let worst = samples.iter().map(|s| s.error_estimate).fold(0.0, f64::max);
            eprintln!("{} samples on a {grid}-point grid; largest error estimate {worst:.2e}", samples.len());
            Ok(0)
        }
        Command::Decide { a, b, output } => {
            let v1 = args::read_potential(&a)?;
            let v2 = args::read_potential(&b)?;
            let verdict = decide(&v1, &v2);
            emit_json(output.as_deref(), &render::verdict(&verdict))?;
            eprintln!("{}", summary(&verdict));
            Ok(match verdict {
                Verdict::TransformEquivalent { .. } | Verdict::EffectivelyEqual { .. } => 0,
                Verdict::NotEquivalent { .. } => 1,
                Verdict::OutOfScope { .. } => 2,
            })
        }
        Command::Mfunc { r, alpha, range, output } => {
            let r = args::floats(&r)?;
            let alpha = args::rationals(&alpha)?;
            let (Ok(r), Ok(alpha)) = (<[f64; 3]>::try_from(r), <[_; 2]>::try_from(alpha)) else {
                bail!("--r takes three amplitudes and --alpha two weights");
            };
            let params = MFunctionParams::new(r, alpha)?;
            let (start, stop, step) = args::range(&range)?;
            let trace = m_trace(&params, start, stop, step)?;
            let mut text = format!("# l = {} pi = {}\nt,M\n", params.halfperiod(), render::sci(params.l()));
            for (t, m) in &trace {
                text.push_str(&render::csv_row(&[*t, *m]));
                text.push('\n');
            }
            emit(output.as_deref(), &text)?;
            eprintln!("{} samples of M; l = {} pi", trace.len(), params.halfperiod());
            Ok(0)
        }
        Command::Verify {
            a,
            b,
            grid,
            grid_3d,
            seed,
            p_grid,
            horizon,
            hbar_tol,
            max_gap,
            coeff_tol,
            output,
        } => {
            let v1 = args::read_potential(&a)?;
            let v2 = args::read_potential(&b)?;
            let p_grid = match p_grid {
                Some(text) => Some(momentum_grid(&args::ranges(&text, v1.dim())?)),
                None => None,
            };
            let cfg = VerifyConfig {
                grid,
                grid_3d,
                p_grid,
                seed,
                horizon,
                hbar_tol,
                max_gap,
                coeff_rel_tol: coeff_tol,
                ..VerifyConfig::default()
            };
            let report = run_verify(&v1, &v2, &cfg)?;
            emit_json(output.as_deref(), &render::verify(&report))?;
            eprintln!("{}", summary(&report.verdict));
            for c in &report.checks {
                eprintln!("  {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
            }
            eprintln!("consistent: {}", report.consistent);
            Ok(if report.consistent { 0 } else { 1 })
        }
    }
}

fn args_list(x: &[f64]) -> String {
    x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn summary(v: &Verdict) -> String {
    match v {
        Verdict::TransformEquivalent { transform, .. } => format!(
            "TransformEquivalent: V1(x) = V2({}x/{} + x0), x0 = ({})",
            if transform.orientation.sign() < 0 { "-" } else { "" },
            transform.c,
            args_list(&transform.x0)
        ),
        Verdict::EffectivelyEqual { scalings, .. } => format!(
            "EffectivelyEqual: per-mode scalings {}",
            scalings.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
        ),
        Verdict::NotEquivalent { witness, detail } => format!("NotEquivalent ({witness}): {detail}"),
        Verdict::OutOfScope { reason } => format!("OutOfScope: {reason}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
