//! Integrand file parsing and rendering.
//!
//! The on-disk format is a small JSON document with two coefficient
//! arrays in descending powers:
//!
//! ```json
//! {"numerator": [3, 5], "denominator": [1, 14, 74, 184, 208]}
//! ```
//!
//! Entries are integers, or strings like `"22/7"` for rationals and for
//! integers too large to write as a JSON number.  Float literals are
//! rejected on the exact backend — there is no silent rationalization —
//! and accepted only when the caller opts in for a float-backend run.

use std::fmt;
use std::str::FromStr;

use landen_core::poly::Polynomial;
use landen_core::transform::{IntegrandError, RationalIntegrand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum InputError {
    /// Malformed document, bad coefficient literal, or a float literal
    /// in exact mode.
    Parse(String),
    /// Structurally valid document whose polynomials violate the
    /// integrand shape or carry real poles.
    Integrand(IntegrandError),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse(msg) => write!(f, "input error: {msg}"),
            InputError::Integrand(e) => write!(f, "invalid integrand: {e}"),
        }
    }
}

impl std::error::Error for InputError {}

impl From<IntegrandError> for InputError {
    fn from(e: IntegrandError) -> Self {
        InputError::Integrand(e)
    }
}

fn parse_rational_literal(s: &str) -> Result<BigRational, InputError> {
    let s = s.trim();
    let (num_text, den_text) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer = BigInt::from_str(num_text)
        .map_err(|_| InputError::Parse(format!("bad integer literal {num_text:?}")))?;
    let denom = BigInt::from_str(den_text)
        .map_err(|_| InputError::Parse(format!("bad integer literal {den_text:?}")))?;
    if denom.is_zero() {
        return Err(InputError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

fn parse_coeff(v: &serde_json::Value, allow_float: bool) -> Result<BigRational, InputError> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(BigRational::from_integer(BigInt::from(u)))
            } else if allow_float {
                let f = n.as_f64().ok_or_else(|| {
                    InputError::Parse(format!("non-finite number {n}"))
                })?;
                BigRational::from_float(f)
                    .ok_or_else(|| InputError::Parse(format!("non-finite number {n}")))
            } else {
                Err(InputError::Parse(format!(
                    "non-integer number {n}: exact mode takes integers or \"n/d\" strings \
                     (write oversized integers as quoted strings)"
                )))
            }
        }
        serde_json::Value::String(s) => parse_rational_literal(s),
        other => Err(InputError::Parse(format!(
            "coefficient must be a number or string, got {other}"
        ))),
    }
}

fn parse_poly_array(
    doc: &serde_json::Value,
    key: &str,
    allow_float: bool,
) -> Result<Polynomial<BigRational>, InputError> {
    let arr = doc
        .get(key)
        .ok_or_else(|| InputError::Parse(format!("missing key {key:?}")))?
        .as_array()
        .ok_or_else(|| InputError::Parse(format!("{key:?} must be an array")))?;
    if arr.is_empty() {
        return Err(InputError::Parse(format!("{key:?} must be non-empty")));
    }
    let coeffs = arr
        .iter()
        .map(|v| parse_coeff(v, allow_float))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Parses an integrand document.  `validate` runs the exact real-root
/// check on the denominator; `allow_float` admits float literals (only
/// sensible for float-backend runs).
pub fn parse_integrand(
    source: &str,
    validate: bool,
    allow_float: bool,
) -> Result<RationalIntegrand<BigRational>, InputError> {
    let doc: serde_json::Value = serde_json::from_str(source)
        .map_err(|e| InputError::Parse(format!("malformed JSON: {e}")))?;
    if !doc.is_object() {
        return Err(InputError::Parse(
            "document must be an object with \"numerator\" and \"denominator\"".into(),
        ));
    }
    let b = parse_poly_array(&doc, "numerator", allow_float)?;
    let a = parse_poly_array(&doc, "denominator", allow_float)?;
    let r = if validate {
        RationalIntegrand::validated(b, a)?
    } else {
        RationalIntegrand::new(b, a)?
    };
    Ok(r)
}

fn render_coeff(c: &BigRational) -> serde_json::Value {
    if c.denom().is_one() {
        let n = c.numer();
        if let Ok(small) = i64::try_from(n) {
            return serde_json::Value::Number(small.into());
        }
        return serde_json::Value::String(n.to_string());
    }
    serde_json::Value::String(format!("{}/{}", c.numer(), c.denom()))
}

/// Renders an integrand back to the document format; `parse_integrand`
/// of the result reproduces the input exactly.
pub fn render_integrand(r: &RationalIntegrand<BigRational>) -> String {
    let doc = serde_json::json!({
        "numerator": r.b.coeffs().iter().map(render_coeff).collect::<Vec<_>>(),
        "denominator": r.a.coeffs().iter().map(render_coeff).collect::<Vec<_>>(),
    });
    doc.to_string()
}

/// Exact coefficient vector as JSON (integers when small, strings when
/// rational or oversized) — shared by the machine-readable reports.
pub fn poly_json(p: &Polynomial<BigRational>) -> serde_json::Value {
    rationals_json(p.coeffs())
}

/// Same rendering for a bare coefficient slice.
pub fn rationals_json(cs: &[BigRational]) -> serde_json::Value {
    serde_json::Value::Array(cs.iter().map(render_coeff).collect())
}
