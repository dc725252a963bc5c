//! `landen` — evaluate ∫ℝ B/A dx by iterating rational Landen
//! transformations in exact arithmetic, with independent oracle checks.

use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use landen_cli::input::{parse_integrand, poly_json, rationals_json, InputError};
use landen_cli::report::{render_summary, render_table, Format};
use landen_core::coeff::Coefficient;
use landen_core::iteration::{
    iterate, iterate_float_escalating, IterateConfig, IterationError,
};
use landen_core::oracle::{integral_by_quadrature, integral_by_residues, OracleError};
use landen_core::transform::{landen_transform, RationalIntegrand, TransformError};

/// Exit codes: 0 success, 1 usage/parse error, 2 validation failure,
/// 3 numerical failure.
const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "landen",
    version,
    about = "Exact evaluation of integrals of rational functions over the real line \
             by iterated Landen transformations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one order-m transformation and print the image and scaling.
    Transform(RunArgs),
    /// Iterate until the coefficient vector reaches its limit; print the
    /// integral.
    Iterate(RunArgs),
    /// Print the per-step convergence table (n, L2, Linf, Error, Size).
    Table(RunArgs),
    /// Transform once, run the independent oracles on both sides, and
    /// report the discrepancies.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    /// Arbitrary-precision rationals (default; supports the Size column).
    Exact,
    /// High-precision floats at --bits of precision.
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleChoice {
    Residue,
    Quadrature,
    Both,
}

#[derive(Args)]
struct RunArgs {
    /// Integrand file ({"numerator":[...],"denominator":[...]},
    /// descending powers); "-" reads standard input.
    input: String,
    /// Transformation order m ≥ 2.
    #[arg(short = 'm', long = "order", default_value_t = 2)]
    order: usize,
    /// Convergence tolerance on the L2 distance from the limit vector.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Iteration step cap.
    #[arg(long, default_value_t = 30)]
    max_steps: usize,
    /// Coefficient backend.
    #[arg(long, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,
    /// Float-backend starting precision in bits (raised automatically,
    /// up to 16x, if the run stalls).
    #[arg(long, default_value_t = 256)]
    bits: u32,
    /// Skip the exact no-real-roots check on the denominator.
    #[arg(long)]
    no_validate: bool,
    /// Cancel common polynomial factors after each step (exact backend).
    #[arg(long)]
    reduce: bool,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Which independent oracle(s) to run on each side.
    #[arg(long, value_enum, default_value_t = OracleChoice::Both)]
    oracle: OracleChoice,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Transform(args) => cmd_transform(&args),
        Command::Iterate(args) => cmd_iterate(&args),
        Command::Table(args) => cmd_table(&args),
        Command::Check(args) => cmd_check(&args),
    };
    ExitCode::from(code)
}

fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn load(args: &RunArgs) -> Result<RationalIntegrand<BigRational>, u8> {
    let source = match read_source(&args.input) {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            return Err(EXIT_USAGE);
        }
    };
    if args.order < 2 {
        eprintln!("error: --order must be at least 2");
        return Err(EXIT_USAGE);
    }
    if args.tol <= 0.0 {
        eprintln!("error: --tol must be positive");
        return Err(EXIT_USAGE);
    }
    let allow_float = args.backend == Backend::Float;
    parse_integrand(&source, !args.no_validate, allow_float).map_err(|e| {
        eprintln!("error: {e}");
        match e {
            InputError::Parse(_) => EXIT_USAGE,
            InputError::Integrand(_) => EXIT_VALIDATION,
        }
    })
}

fn exit_for_transform_error(e: &TransformError) -> u8 {
    match e {
        TransformError::RealRoots { .. } => EXIT_VALIDATION,
        TransformError::Scaling(_) => EXIT_NUMERICAL,
    }
}

fn exit_for_iteration_error(e: &IterationError) -> u8 {
    match e {
        IterationError::NotValidated => EXIT_VALIDATION,
        IterationError::Shape(_) => EXIT_VALIDATION,
        IterationError::OddDegree { .. } => EXIT_VALIDATION,
        IterationError::Transform(t) => exit_for_transform_error(t),
        _ => EXIT_NUMERICAL,
    }
}

fn cmd_transform(args: &RunArgs) -> u8 {
    let r = match load(args) {
        Ok(r) => r,
        Err(code) => return code,
    };
    // The transform itself is backend-generic; the float backend merely
    // rounds the same computation, so print-outs always come from the
    // exact run unless floats were requested explicitly.
    match args.backend {
        Backend::Exact => {
            let result = match landen_transform(&r, args.order) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_for_transform_error(&e);
                }
            };
            match args.format {
                Format::Jsonl => {
                    let record = serde_json::json!({
                        "order": args.order,
                        "j": poly_json(&result.j),
                        "h": poly_json(&result.h),
                        "z": poly_json(&result.scaling.z),
                        "e": rationals_json(&result.scaling.e),
                    });
                    println!("{record}");
                }
                Format::Csv => {
                    let line = |name: &str, coeffs: Vec<String>| {
                        println!("{name},{}", coeffs.join(","));
                    };
                    line("j", result.j.coeffs().iter().map(|c| c.to_string()).collect());
                    line("h", result.h.coeffs().iter().map(|c| c.to_string()).collect());
                    line("z", result.scaling.z.coeffs().iter().map(|c| c.to_string()).collect());
                    line("e", result.scaling.e.iter().map(|c| c.to_string()).collect());
                }
                Format::Text => {
                    println!("order: {}", args.order);
                    println!("J: {}", result.j);
                    println!("H: {}", result.h);
                    println!("Z: {}", result.scaling.z);
                    println!(
                        "e: [{}]",
                        result
                            .scaling
                            .e
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                }
            }
        }
        Backend::Float => {
            let rf = r.to_float(args.bits.max(53));
            let result = match landen_transform(&rf, args.order) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_for_transform_error(&e);
                }
            };
            match args.format {
                Format::Jsonl => {
                    let floats =
                        |v: Vec<f64>| v.into_iter().collect::<Vec<_>>();
                    let record = serde_json::json!({
                        "order": args.order,
                        "j": floats(result.j.to_f64_coeffs()),
                        "h": floats(result.h.to_f64_coeffs()),
                        "z": floats(result.scaling.z.to_f64_coeffs()),
                        "e": result.scaling.e.iter().map(|c| c.to_f64())
                            .collect::<Vec<_>>(),
                    });
                    println!("{record}");
                }
                _ => {
                    println!("order: {}", args.order);
                    println!("J: {}", result.j);
                    println!("H: {}", result.h);
                    println!("Z: {}", result.scaling.z);
                    println!(
                        "e: [{}]",
                        result
                            .scaling
                            .e
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                }
            }
        }
    }
    EXIT_OK
}

fn run_iteration(
    args: &RunArgs,
    r: &RationalIntegrand<BigRational>,
) -> Result<(String, String, bool), u8> {
    // Returns (table, summary, converged) rendered in the chosen format.
    match args.backend {
        Backend::Exact => {
            let cfg = IterateConfig {
                tolerance: args.tol,
                max_steps: args.max_steps,
                validate: !args.no_validate,
                reduce_each_step: args.reduce,
                ..IterateConfig::default()
            };
            let report = iterate(r, args.order, &cfg).map_err(|e| {
                eprintln!("error: {e}");
                exit_for_iteration_error(&e)
            })?;
            Ok((
                render_table(&report.records, args.format),
                render_summary(&report, args.format),
                report.converged,
            ))
        }
        Backend::Float => {
            let cfg = IterateConfig {
                tolerance: args.tol,
                max_steps: args.max_steps,
                validate: !args.no_validate,
                reduce_each_step: false,
                ..IterateConfig::default()
            };
            let bits = args.bits.max(53);
            let (report, used_bits) =
                iterate_float_escalating(r, args.order, &cfg, bits, bits.saturating_mul(16))
                    .map_err(|e| {
                        eprintln!("error: {e}");
                        exit_for_iteration_error(&e)
                    })?;
            if used_bits != bits {
                eprintln!("note: precision raised to {used_bits} bits");
            }
            Ok((
                render_table(&report.records, args.format),
                render_summary(&report, args.format),
                report.converged,
            ))
        }
    }
}

fn cmd_iterate(args: &RunArgs) -> u8 {
    let r = match load(args) {
        Ok(r) => r,
        Err(code) => return code,
    };
    match run_iteration(args, &r) {
        Ok((table, summary, converged)) => {
            print!("{table}");
            if args.format == Format::Csv {
                eprint!("{summary}");
            } else {
                print!("{summary}");
            }
            if converged {
                EXIT_OK
            } else {
                eprintln!("error: did not converge within the step budget");
                EXIT_NUMERICAL
            }
        }
        Err(code) => code,
    }
}

fn cmd_table(args: &RunArgs) -> u8 {
    let r = match load(args) {
        Ok(r) => r,
        Err(code) => return code,
    };
    match run_iteration(args, &r) {
        Ok((table, _, _)) => {
            print!("{table}");
            EXIT_OK
        }
        Err(code) => code,
    }
}

fn relative_gap(x: f64, y: f64) -> f64 {
    let scale = x.abs().max(y.abs()).max(1e-300);
    (x - y).abs() / scale
}

fn cmd_check(args: &CheckArgs) -> u8 {
    let r = match load(&args.run) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let result = match landen_transform(&r, args.run.order) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for_transform_error(&e);
        }
    };
    let transformed = match RationalIntegrand::new(result.j.clone(), result.h.clone()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: transformed pair is malformed: {e}");
            return EXIT_NUMERICAL;
        }
    };

    let run_oracle = |which: OracleChoice,
                      r: &RationalIntegrand<BigRational>|
     -> Result<Vec<(&'static str, f64)>, OracleError> {
        let mut values = Vec::new();
        if matches!(which, OracleChoice::Residue | OracleChoice::Both) {
            values.push(("residues", integral_by_residues(r)?));
        }
        if matches!(which, OracleChoice::Quadrature | OracleChoice::Both) {
            values.push(("quadrature", integral_by_quadrature(r)?));
        }
        Ok(values)
    };

    let originals = run_oracle(args.oracle, &r);
    let transformed_values = run_oracle(args.oracle, &transformed);
    let (originals, transformed_values) = match (originals, transformed_values) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: oracle failed: {e}");
            return EXIT_NUMERICAL;
        }
    };

    let mut all: Vec<(String, f64)> = Vec::new();
    for (name, v) in &originals {
        all.push((format!("{name} (original)"), *v));
    }
    for (name, v) in &transformed_values {
        all.push((format!("{name} (transformed)"), *v));
    }
    let mut max_gap = 0.0f64;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            max_gap = max_gap.max(relative_gap(all[i].1, all[j].1));
        }
    }
    const CHECK_TOL: f64 = 1e-8;
    let ok = max_gap <= CHECK_TOL;

    match args.run.format {
        Format::Jsonl => {
            let record = serde_json::json!({
                "order": args.run.order,
                "values": all.iter()
                    .map(|(k, v)| serde_json::json!({"which": k, "integral": v}))
                    .collect::<Vec<_>>(),
                "max_relative_discrepancy": max_gap,
                "tolerance": CHECK_TOL,
                "ok": ok,
            });
            println!("{record}");
        }
        Format::Csv => {
            println!("which,integral");
            for (k, v) in &all {
                println!("{k},{v:.17e}");
            }
            println!("max_relative_discrepancy,{max_gap:.3e}");
        }
        Format::Text => {
            for (k, v) in &all {
                println!("{k:<26} {v:.15e}");
            }
            println!("max relative discrepancy: {max_gap:.3e} (tolerance {CHECK_TOL:.0e})");
            println!("check: {}", if ok { "ok" } else { "FAILED" });
        }
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    }
}
