//! Output shaping: the human-readable convergence table and its CSV and
//! JSON-lines renderings.
//!
//! The table mirrors the classical five-column layout (n, L₂-norm,
//! L∞-norm, Error, Size) with floats shown to six significant digits.
//! Machine formats carry the same rows, with the exact coefficient
//! vectors attached in JSON lines.

use std::fmt::Write as _;

use landen_core::coeff::{Coefficient, Sci};
use landen_core::iteration::{ConvergenceReport, IterationRecord};

/// Output format selector shared by all subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Aligned columns for reading.
    Text,
    /// Comma-separated rows with a header.
    Csv,
    /// One JSON object per row, coefficients included.
    Jsonl,
}

/// Significant digits in every float column.
const SIG: usize = 6;

fn sci_cell(s: &Sci) -> String {
    s.format(SIG)
}

fn size_cell(size: Option<u64>) -> String {
    match size {
        Some(n) => n.to_string(),
        None => "-".to_string(),
    }
}

/// A `Sci` as a JSON value: a plain number when f64 can carry it, a
/// scientific string when the exponent leaves the f64 range (deep
/// high-order runs reach 10^(-5000) and beyond).
fn sci_json(s: &Sci) -> serde_json::Value {
    let f = s.to_f64();
    if s.is_zero() || (f != 0.0 && f.is_finite()) {
        serde_json::json!(f)
    } else {
        serde_json::Value::String(s.format(17))
    }
}

fn coeff_json<C: Coefficient + std::fmt::Display>(c: &C) -> serde_json::Value {
    if C::EXACT {
        serde_json::Value::String(c.to_string())
    } else {
        serde_json::json!(c.to_f64())
    }
}

/// One table row as a JSON-lines record.
pub fn record_json<C: Coefficient + std::fmt::Display>(
    rec: &IterationRecord<C>,
) -> serde_json::Value {
    serde_json::json!({
        "n": rec.n,
        "l2": sci_json(&rec.l2),
        "linf": sci_json(&rec.linf),
        "rel_error": sci_json(&rec.rel_error),
        "size": rec.size,
        "a": rec.a.coeffs().iter().map(coeff_json).collect::<Vec<_>>(),
        "b": rec.b.coeffs().iter().map(coeff_json).collect::<Vec<_>>(),
    })
}

/// The five-column table in the chosen format.
pub fn render_table<C: Coefficient + std::fmt::Display>(
    records: &[IterationRecord<C>],
    format: Format,
) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(
                out,
                "{:>3}  {:>13}  {:>13}  {:>13}  {:>8}",
                "n", "L2-norm", "Linf-norm", "Error", "Size"
            );
            for rec in records {
                let _ = writeln!(
                    out,
                    "{:>3}  {:>13}  {:>13}  {:>13}  {:>8}",
                    rec.n,
                    sci_cell(&rec.l2),
                    sci_cell(&rec.linf),
                    sci_cell(&rec.rel_error),
                    size_cell(rec.size),
                );
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "n,l2,linf,rel_error,size");
            for rec in records {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    rec.n,
                    sci_cell(&rec.l2),
                    sci_cell(&rec.linf),
                    sci_cell(&rec.rel_error),
                    size_cell(rec.size),
                );
            }
        }
        Format::Jsonl => {
            for rec in records {
                let _ = writeln!(out, "{}", record_json(rec));
            }
        }
    }
    out
}

/// The end-of-run summary for `iterate` (text and JSON lines; CSV runs
/// put it on stderr to keep stdout strictly tabular).
pub fn render_summary<C: Coefficient + std::fmt::Display>(
    report: &ConvergenceReport<C>,
    format: Format,
) -> String {
    let steps = report.records.len();
    let order = report
        .estimated_order
        .map(|o| format!("{o:.3}"))
        .unwrap_or_else(|| "n/a".to_string());
    match format {
        Format::Jsonl => {
            let ratio = report.final_ratio().map(|r| coeff_json(r));
            serde_json::json!({
                "converged": report.converged,
                "steps": steps,
                "integral": report.integral_estimate,
                "estimated_order": report.estimated_order,
                "ratio": ratio,
            })
            .to_string()
                + "\n"
        }
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "converged: {} ({} steps)", report.converged, steps);
            if let Some(ratio) = report.final_ratio() {
                let _ = writeln!(out, "final ratio b0/a0: {ratio}");
            }
            let _ = writeln!(out, "integral: {:.15e}", report.integral_estimate);
            let _ = writeln!(out, "estimated order: {order}");
            out
        }
    }
}
