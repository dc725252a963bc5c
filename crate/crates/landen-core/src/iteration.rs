//! Fixed-point iteration of the transform.
//!
//! Iterating the order-m map drives the normalized coefficient vector u_n
//! toward a universal binomial limit u_∞ (the coefficients of
//! (x²+1)^(p/2) over (x²+1)^(p/2−1)), and the leading-coefficient ratio
//! b₀⁽ⁿ⁾/a₀⁽ⁿ⁾ toward I/π, where I is the integral of the original
//! function over ℝ.  This module runs that loop, records norms against the
//! limit, extracts the integral, and estimates the empirical convergence
//! order from the error decay.

use std::fmt;

use num_rational::BigRational;

use crate::coeff::{Coefficient, Sci};
use crate::float::FloatNum;
use crate::poly::Polynomial;
use crate::special::binomial;
use crate::transform::{landen_transform, IntegrandError, RationalIntegrand, TransformError};

/// State after one iteration step: the transformed pair, its normalized
/// ratio vector, distances from the limit, and the bookkeeping the
/// convergence tables report.
#[derive(Debug, Clone)]
pub struct IterationRecord<C: Coefficient> {
    /// Step index, starting at 1 for the first transformed pair.
    pub n: usize,
    /// Denominator coefficients a₀..a_p (descending powers).
    pub a: Polynomial<C>,
    /// Numerator coefficients b₀..b_{p−2} (descending powers).
    pub b: Polynomial<C>,
    /// Ratio vector (a₁/a₀, …, a_p/a₀, b₁/b₀, …, b_{p−2}/b₀).
    pub u: Vec<C>,
    /// The integral estimator's core: b₀/a₀ (converges to I/π).
    pub ratio: C,
    /// Normalized distance from the limit: (2p−2)^(−1/2)·‖u − u_∞‖₂.
    pub l2: Sci,
    /// Max-norm distance from the limit.
    pub linf: Sci,
    /// |π·b₀/a₀ − I| / |I| against the configured reference.
    pub rel_error: Sci,
    /// Max decimal digit count over all integer parts of the exact
    /// coefficients; `None` in the float backend.
    pub size: Option<u64>,
}

/// Which reference value the per-step `rel_error` is measured against.
#[derive(Debug, Clone)]
pub enum ErrorRef<C: Coefficient> {
    /// The exactly known ratio I/π (compared backend-natively).
    ExactRatio(C),
    /// An externally supplied value of I (e.g. from an oracle).
    Float(f64),
    /// The run's own final estimate (the last step's π·b₀/a₀).
    SelfConverged,
}

/// Knobs for [`iterate`].
#[derive(Debug, Clone)]
pub struct IterateConfig<C: Coefficient> {
    /// Stop once l2 ≤ tolerance (the comparison is performed in the
    /// coefficient backend, exactly for rationals).
    pub tolerance: f64,
    /// Hard step cap.
    pub max_steps: usize,
    /// Require the input to carry a no-real-roots proof.
    pub validate: bool,
    /// Cancel common polynomial factors of (J, H) after each step
    /// (exact backend only; trims growth, never changes u_n).
    pub reduce_each_step: bool,
    /// Consecutive l2 growths before declaring divergence.
    pub divergence_window: usize,
    /// Reference for the per-step rel_error column.
    pub error_ref: ErrorRef<C>,
}

impl<C: Coefficient> Default for IterateConfig<C> {
    fn default() -> Self {
        IterateConfig {
            tolerance: 1e-12,
            max_steps: 30,
            validate: true,
            reduce_each_step: false,
            divergence_window: 5,
            error_ref: ErrorRef::SelfConverged,
        }
    }
}

/// Outcome of an iteration run.
#[derive(Debug, Clone)]
pub struct ConvergenceReport<C: Coefficient> {
    pub records: Vec<IterationRecord<C>>,
    /// True when the final l2 met the tolerance within the step budget.
    pub converged: bool,
    /// π·b₀/a₀ at the final step.
    pub integral_estimate: f64,
    /// Least-squares slope of log e_{n+1} vs log e_n over the trailing
    /// decaying regime of the l2 column; `None` when too short.
    pub estimated_order: Option<f64>,
}

impl<C: Coefficient> ConvergenceReport<C> {
    /// The exact final ratio b₀/a₀ (the integral is π times this).
    pub fn final_ratio(&self) -> Option<&C> {
        self.records.last().map(|r| &r.ratio)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IterationError {
    /// Limit vectors exist only for even p ≥ 2.
    OddDegree { got: usize },
    /// Config demands a validated integrand but the input carries no
    /// no-real-roots proof.
    NotValidated,
    /// A leading coefficient needed for normalization vanished (step 0
    /// refers to a direct normalization request outside a run).
    ZeroLeading { step: usize },
    /// l2 grew for the configured number of consecutive steps.
    Diverged { at_step: usize },
    /// Float backend: the distance to the limit collapsed to exactly
    /// zero, i.e. the working precision can no longer resolve it.
    NumericUnderflow { bits: u32 },
    /// Order estimation needs at least three decaying error values.
    InsufficientData,
    Transform(TransformError),
    Shape(IntegrandError),
}

impl fmt::Display for IterationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IterationError::OddDegree { got } => {
                write!(f, "degree must be even and at least 2, got {got}")
            }
            IterationError::NotValidated => {
                write!(f, "integrand lacks the required no-real-roots validation")
            }
            IterationError::ZeroLeading { step } => {
                write!(f, "leading coefficient vanished at step {step}")
            }
            IterationError::Diverged { at_step } => {
                write!(f, "norms kept growing; diverged at step {at_step}")
            }
            IterationError::NumericUnderflow { bits } => {
                write!(f, "working precision of {bits} bits exhausted")
            }
            IterationError::InsufficientData => {
                write!(f, "need at least three decaying error values")
            }
            IterationError::Transform(e) => e.fmt(f),
            IterationError::Shape(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for IterationError {}

impl From<TransformError> for IterationError {
    fn from(e: TransformError) -> Self {
        IterationError::Transform(e)
    }
}

impl From<IntegrandError> for IterationError {
    fn from(e: IntegrandError) -> Self {
        IterationError::Shape(e)
    }
}

/// The limit ratio vector u_∞ for denominator degree p: with q = p/2,
/// the interleaved binomials (0, C(q,1), 0, C(q,2), …, C(q,q)) followed by
/// (0, C(q−1,1), 0, …, C(q−1,q−1)) — the ratio vector of the pair
/// ((x²+1)^(q−1), (x²+1)^q).
pub fn u_infinity<C: Coefficient>(p: usize) -> Result<Vec<C>, IterationError> {
    if p < 2 || p % 2 != 0 {
        return Err(IterationError::OddDegree { got: p });
    }
    let q = p / 2;
    let mut u = Vec::with_capacity(2 * p - 2);
    for k in 1..=p {
        if k % 2 == 0 {
            u.push(C::from_bigint(&binomial(q, k / 2)));
        } else {
            u.push(C::zero());
        }
    }
    for k in 1..=p.saturating_sub(2) {
        if k % 2 == 0 {
            u.push(C::from_bigint(&binomial(q - 1, k / 2)));
        } else {
            u.push(C::zero());
        }
    }
    Ok(u)
}

/// Divides each trailing coefficient of A and B by its polynomial's
/// leading coefficient, returning the concatenated ratio vector together
/// with the leading pair (a₀, b₀).  Works on the natural degree frames of
/// both inputs; errors if either polynomial is identically zero.
pub fn normalize_step<C: Coefficient>(
    a: &Polynomial<C>,
    b: &Polynomial<C>,
) -> Result<(Vec<C>, (C, C)), IterationError> {
    if a.is_zero() || b.is_zero() {
        return Err(IterationError::ZeroLeading { step: 0 });
    }
    let a0 = a.leading().clone();
    let b0 = b.leading().clone();
    let mut u = Vec::with_capacity(a.deg() + b.deg());
    for k in 1..=a.deg() {
        u.push(a.coeffs()[k].div(&a0));
    }
    for k in 1..=b.deg() {
        u.push(b.coeffs()[k].div(&b0));
    }
    Ok((u, (a0, b0)))
}

fn abs<C: Coefficient>(v: &C) -> C {
    if v.sign() < 0 {
        v.neg()
    } else {
        v.clone()
    }
}

/// Tolerance as a backend value (exact rationals carry `tol` precisely
/// via its binary expansion, which is what the comparison should use).
fn backend_from_f64<C: Coefficient>(v: f64) -> C {
    let r = BigRational::from_float(v).expect("finite config value");
    C::from_bigint(r.numer()).div(&C::from_bigint(r.denom()))
}

fn relative_gap<C: Coefficient>(value: &C, reference: &C) -> Sci {
    let diff = abs(&value.sub(reference));
    if reference.is_zero() {
        diff.to_sci()
    } else {
        diff.div(&abs(reference)).to_sci()
    }
}

/// Runs the order-m iteration until the l2 distance from u_∞ meets the
/// tolerance or the step budget runs out.  Records are the states after
/// each transform (n = 1, 2, …); each step jointly renormalizes (J, H) to
/// the backend's canonical pair form, which changes no ratio and keeps
/// exact coefficient growth to the intrinsic doubling.
pub fn iterate<C: Coefficient>(
    r: &RationalIntegrand<C>,
    m: usize,
    cfg: &IterateConfig<C>,
) -> Result<ConvergenceReport<C>, IterationError> {
    if cfg.validate && !r.validated {
        return Err(IterationError::NotValidated);
    }
    let mut p = r.p();
    let mut u_inf = u_infinity::<C>(p)?;
    let tol_sq = {
        let t = backend_from_f64::<C>(cfg.tolerance);
        t.mul(&t)
    };

    let mut current = r.clone();
    let mut records: Vec<IterationRecord<C>> = Vec::new();
    let mut converged = false;
    let mut prev_l2_sq: Option<C> = None;
    let mut growth_streak = 0usize;

    for n in 1..=cfg.max_steps {
        let step = landen_transform(&current, m)?;
        let mut j = step.j;
        let mut h = step.h;

        if cfg.reduce_each_step {
            if let Some((jj, hh)) = C::cancel_common_factors(&j, &h) {
                if hh.deg() != p {
                    // The cancelled pair lives at a smaller even degree;
                    // the limit vector must follow it.
                    p = hh.deg();
                    u_inf = u_infinity::<C>(p)?;
                }
                j = jj;
                h = hh;
            }
        }

        if j.is_zero() || j.deg() != p - 2 {
            return Err(IterationError::ZeroLeading { step: n });
        }

        // One canonical representative per rational function: renormalize
        // the pair jointly (ratios, and hence u_n and b₀/a₀, unchanged).
        let mut jv = j.coeffs().to_vec();
        let mut hv = h.coeffs().to_vec();
        C::normalize_pair(&mut jv, &mut hv);
        let j = Polynomial::from_coeffs(jv);
        let h = Polynomial::from_coeffs(hv);

        let (u, (a0, b0)) = normalize_step(&h, &j)?;
        let ratio = b0.div(&a0);

        let mut l2_sq = C::zero();
        let mut linf = C::zero();
        for (uk, limit) in u.iter().zip(u_inf.iter()) {
            let d = uk.sub(limit);
            l2_sq = l2_sq.add(&d.mul(&d));
            let d_abs = abs(&d);
            if d_abs.abs_cmp(&linf) == std::cmp::Ordering::Greater {
                linf = d_abs;
            }
        }
        l2_sq = l2_sq.div(&C::from_i64((2 * p - 2) as i64));

        if !C::EXACT && l2_sq.is_zero() {
            let bits = h.leading().precision_bits().unwrap_or(0);
            return Err(IterationError::NumericUnderflow { bits });
        }

        let rel_error = match &cfg.error_ref {
            ErrorRef::ExactRatio(rho) => relative_gap(&ratio, rho),
            ErrorRef::Float(i_ref) => {
                let estimate = std::f64::consts::PI * ratio.to_f64();
                let gap = if *i_ref == 0.0 {
                    estimate.abs()
                } else {
                    ((estimate - i_ref) / i_ref).abs()
                };
                Sci::from_f64(gap)
            }
            ErrorRef::SelfConverged => Sci::ZERO, // filled in after the run
        };

        let size = j
            .coeffs()
            .iter()
            .chain(h.coeffs().iter())
            .filter_map(|c| c.decimal_size())
            .max();

        records.push(IterationRecord {
            n,
            a: h.clone(),
            b: j.clone(),
            u,
            ratio,
            l2: l2_sq.to_sci().sqrt(),
            linf: linf.to_sci(),
            rel_error,
            size,
        });

        if l2_sq.sub(&tol_sq).sign() <= 0 {
            converged = true;
            break;
        }

        if let Some(prev) = &prev_l2_sq {
            if l2_sq.sub(prev).sign() > 0 {
                growth_streak += 1;
                if growth_streak >= cfg.divergence_window {
                    return Err(IterationError::Diverged { at_step: n });
                }
            } else {
                growth_streak = 0;
            }
        }
        prev_l2_sq = Some(l2_sq);

        let mut next = RationalIntegrand::new(j, h)?;
        next.validated = current.validated;
        current = next;
    }

    if let ErrorRef::SelfConverged = cfg.error_ref {
        if let Some(reference) = records.last().map(|r| r.ratio.clone()) {
            for rec in &mut records {
                rec.rel_error = relative_gap(&rec.ratio, &reference);
            }
        }
    }

    let integral_estimate = records
        .last()
        .map(|r| std::f64::consts::PI * r.ratio.to_f64())
        .unwrap_or(f64::NAN);
    let l2_series: Vec<Sci> = records.iter().map(|r| r.l2).collect();
    let estimated_order = estimate_order(&l2_series).ok();

    Ok(ConvergenceReport {
        records,
        converged,
        integral_estimate,
        estimated_order,
    })
}

/// Empirical convergence order: over the trailing run of strictly
/// decreasing errors below 1, fit log e_{n+1} = q·log e_n + c by least
/// squares and return the slope q.
pub fn estimate_order(errors: &[Sci]) -> Result<f64, IterationError> {
    let logs: Vec<f64> = errors
        .iter()
        .filter(|e| !e.is_zero())
        .map(|e| e.log10_abs())
        .collect();
    // Trailing regime: strictly decreasing and below 1 (log < 0).
    let mut start = logs.len();
    while start > 0 && logs[start - 1] < 0.0 && (start == logs.len() || logs[start - 1] > logs[start])
    {
        start -= 1;
    }
    let regime = &logs[start..];
    if regime.len() < 3 {
        return Err(IterationError::InsufficientData);
    }
    let xs = &regime[..regime.len() - 1];
    let ys = &regime[1..];
    let n = xs.len() as f64;
    let mean_x: f64 = xs.iter().sum::<f64>() / n;
    let mean_y: f64 = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        cov += (x - mean_x) * (y - mean_y);
        var += (x - mean_x) * (x - mean_x);
    }
    if var == 0.0 {
        return Err(IterationError::InsufficientData);
    }
    Ok(cov / var)
}

/// Float-backend driver with precision escalation: runs [`iterate`] at
/// the given precision and doubles the bit count (up to `max_bits`) every
/// time the run underflows, diverges, or stalls short of the tolerance.
/// Returns the first converged report with the precision that produced
/// it, or the terminal outcome at the cap.
pub fn iterate_float_escalating(
    r: &RationalIntegrand<BigRational>,
    m: usize,
    cfg: &IterateConfig<FloatNum>,
    initial_bits: u32,
    max_bits: u32,
) -> Result<(ConvergenceReport<FloatNum>, u32), IterationError> {
    let mut bits = initial_bits.max(53).min(max_bits.max(53));
    loop {
        let rf = r.to_float(bits);
        let outcome = iterate(&rf, m, cfg);
        let at_cap = bits >= max_bits;
        match outcome {
            Ok(report) if report.converged => return Ok((report, bits)),
            Ok(report) => {
                if at_cap {
                    return Ok((report, bits));
                }
            }
            Err(IterationError::NumericUnderflow { .. }) | Err(IterationError::Diverged { .. }) => {
                if at_cap {
                    return outcome.map(|r| (r, bits));
                }
            }
            Err(e) => return Err(e),
        }
        bits = (bits * 2).min(max_bits);
    }
}
