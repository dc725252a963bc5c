//! Independent ground truth for the main pipeline, at float precision.
//!
//! Everything here is verification plumbing: a simultaneous-iteration
//! complex root finder (with clustering, because the interesting inputs
//! have multiple roots), the classical residue evaluation of ∫ℝ B/A, an
//! adaptive Gauss–Kronrod quadrature over the compactified line, a
//! root-based reconstruction of the scaling e-vector, and numerical
//! checks of the trigonometric moment integrals that underpin the
//! transform.  The main path never calls into this module.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::coeff::Coefficient;
use crate::poly::Polynomial;
use crate::special::make_cot_pair;
use crate::transform::RationalIntegrand;

/// Relative imaginary-part threshold under which a root counts as real.
const AXIS_EPS: f64 = 1e-7;
/// Relative distance under which approximations merge into one cluster.
const CLUSTER_EPS: f64 = 1e-5;
/// Backward-error stopping threshold for the simultaneous iteration.
const STOP_EPS: f64 = 1e-14;
/// Maximum acceptable relative backward error of a returned root set.
const RESIDUAL_CAP: f64 = 1e-9;
/// Simultaneous-iteration sweep cap.
const MAX_SWEEPS: usize = 400;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// All complex roots of a real polynomial, multiple roots merged.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexRootSet {
    pub roots: Vec<ComplexRoot>,
    /// Max relative backward error |A(root)| / Σ|a_i||root|^(p−i).
    pub residual: f64,
}

impl ComplexRootSet {
    /// Total root count including multiplicities (equals deg A).
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    /// The root iteration failed to reach the backward-error target.
    NoConvergence { iterations: usize, residual: f64 },
    /// A denominator root sits on (or numerically on) the real axis and
    /// exact cancellation could not remove it.
    PoleOnAxis { re: f64, im: f64 },
    /// Adaptive quadrature exhausted its subdivision budget.
    ToleranceNotMet { achieved: f64 },
    /// The trigonometric denominator has a near-zero on the check grid.
    DenominatorVanishes { at: f64 },
    /// A float computation left the finite range.
    NonFinite,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NoConvergence {
                iterations,
                residual,
            } => write!(
                f,
                "root finder did not converge in {iterations} sweeps (residual {residual:.2e})"
            ),
            OracleError::PoleOnAxis { re, im } => {
                write!(f, "denominator root {re}+{im}i lies on the real axis")
            }
            OracleError::ToleranceNotMet { achieved } => {
                write!(f, "quadrature tolerance not met (achieved {achieved:.2e})")
            }
            OracleError::DenominatorVanishes { at } => {
                write!(f, "trigonometric denominator vanishes near θ = {at}")
            }
            OracleError::NonFinite => write!(f, "computation left the finite float range"),
        }
    }
}

impl std::error::Error for OracleError {}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs {
        acc = acc * z + c;
    }
    acc
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn horner_real(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

/// Scale Σ|a_i||z|^(p−i) for relative backward error of an evaluation.
fn eval_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let az = z.norm();
    coeffs
        .iter()
        .fold(0.0f64, |acc, c| acc * az + c.norm())
        .max(f64::MIN_POSITIVE)
}

/// All complex roots of A with multiplicities, found by simultaneous
/// (Aberth-style) iteration from a deterministic spiral of starting
/// points, followed by cluster merging and a multiplicity-aware Newton
/// polish.  Verification-grade float precision only.
pub fn find_roots<C: Coefficient>(a: &Polynomial<C>) -> Result<ComplexRootSet, OracleError> {
    assert!(!a.is_zero(), "find_roots requires a nonzero polynomial");
    let raw = a.to_f64_coeffs();
    if raw.iter().any(|c| !c.is_finite()) {
        return Err(OracleError::NonFinite);
    }
    let n = a.deg();
    if n == 0 {
        return Ok(ComplexRootSet {
            roots: Vec::new(),
            residual: 0.0,
        });
    }
    // Monic complex copy.
    let lead = raw[0];
    let monic: Vec<Complex64> = raw.iter().map(|c| Complex64::new(c / lead, 0.0)).collect();

    // Cauchy bound and the deterministic starting spiral.
    let bound = 1.0 + monic.iter().skip(1).fold(0.0f64, |m, c| m.max(c.norm()));
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            let radius = bound * (0.4 + 0.6 * (k as f64 + 0.5) / (n as f64));
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut all_settled = true;
        let mut updates = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let (p, dp) = horner_with_derivative(&monic, zs[k]);
            if p.norm() <= STOP_EPS * eval_scale(&monic, zs[k]) {
                continue; // settled at backward-error level
            }
            all_settled = false;
            if dp.norm() == 0.0 {
                // Perturb off the critical point, deterministically.
                updates[k] = Complex64::new(1e-6, 1e-6) * (1.0 + zs[k].norm());
                continue;
            }
            let newton = p / dp;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = zs[k] - zs[j];
                    if d.norm() > 0.0 {
                        repulsion += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            updates[k] = if denom.norm() == 0.0 {
                newton
            } else {
                newton / denom
            };
        }
        for k in 0..n {
            zs[k] -= updates[k];
        }
        if all_settled || sweeps >= MAX_SWEEPS {
            if !all_settled {
                let worst = zs
                    .iter()
                    .map(|&z| horner(&monic, z).norm() / eval_scale(&monic, z))
                    .fold(0.0f64, f64::max);
                if worst > RESIDUAL_CAP {
                    return Err(OracleError::NoConvergence {
                        iterations: sweeps,
                        residual: worst,
                    });
                }
            }
            break;
        }
    }

    // Deterministic cluster merging.
    zs.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    let mut used = vec![false; n];
    let mut roots = Vec::new();
    for i in 0..n {
        if used[i] {
            continue;
        }
        let mut members = vec![zs[i]];
        used[i] = true;
        for j in i + 1..n {
            if !used[j] && (zs[j] - zs[i]).norm() <= CLUSTER_EPS * zs[i].norm().max(1.0) {
                members.push(zs[j]);
                used[j] = true;
            }
        }
        let k = members.len();
        let mut center = members.iter().sum::<Complex64>() / (k as f64);
        // A k-fold root of A is a simple root of the (k−1)th derivative,
        // where Newton is quadratic AND the float noise floor is ~ε rather
        // than ε^(1/k); polishing there recovers full f64 accuracy for
        // multiple roots.
        let mut target = monic.clone();
        for _ in 1..k {
            let deg = target.len() - 1;
            target = target[..deg]
                .iter()
                .enumerate()
                .map(|(i, c)| c * ((deg - i) as f64))
                .collect();
        }
        for _ in 0..12 {
            let (p, dp) = horner_with_derivative(&target, center);
            if dp.norm() == 0.0 || p.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            center -= step;
            if step.norm() <= 1e-16 * (1.0 + center.norm()) {
                break;
            }
        }
        roots.push(ComplexRoot {
            value: center,
            multiplicity: k,
        });
    }

    let residual = roots
        .iter()
        .map(|r| horner(&monic, r.value).norm() / eval_scale(&monic, r.value))
        .fold(0.0f64, f64::max);
    if residual > RESIDUAL_CAP {
        return Err(OracleError::NoConvergence {
            iterations: sweeps,
            residual,
        });
    }
    Ok(ComplexRootSet { roots, residual })
}

/// First `len` Taylor coefficients of the polynomial at `z0`, by repeated
/// synthetic division.
fn taylor_at(coeffs: &[Complex64], z0: Complex64, len: usize) -> Vec<Complex64> {
    let mut work = coeffs.to_vec();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        if work.is_empty() {
            out.push(Complex64::new(0.0, 0.0));
            continue;
        }
        // Divide by (z − z0): quotient stays in `work`, remainder is the
        // next Taylor coefficient.
        let mut acc = Complex64::new(0.0, 0.0);
        for c in work.iter_mut() {
            acc = acc * z0 + *c;
            *c = acc;
        }
        out.push(work.pop().unwrap());
    }
    out
}

/// Truncated power-series quotient num/den to `len` terms; den[0] ≠ 0.
fn jet_div(num: &[Complex64], den: &[Complex64], len: usize) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut q = vec![zero; len];
    for i in 0..len {
        let mut acc = *num.get(i).unwrap_or(&zero);
        for j in 0..i {
            acc -= q[j] * *den.get(i - j).unwrap_or(&zero);
        }
        q[i] = acc / den[0];
    }
    q
}

/// Sum of residues of B/A over the upper-half-plane poles.  Exposed so
/// tests can verify the conjugate-closure realness property directly.
pub fn upper_residue_sum(r: &RationalIntegrand<BigRational>) -> Result<Complex64, OracleError> {
    // Cancel removable singularities exactly before looking at poles.
    let reduced = r.reduced().unwrap_or_else(|_| r.clone());
    let a_coeffs: Vec<Complex64> = reduced
        .a
        .to_f64_coeffs()
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect();
    let b_coeffs: Vec<Complex64> = reduced
        .b
        .to_f64_coeffs()
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect();
    if a_coeffs.iter().chain(b_coeffs.iter()).any(|c| !c.re.is_finite()) {
        return Err(OracleError::NonFinite);
    }
    let roots = find_roots(&reduced.a)?;
    for root in &roots.roots {
        if root.value.im.abs() <= AXIS_EPS * (1.0 + root.value.norm()) {
            return Err(OracleError::PoleOnAxis {
                re: root.value.re,
                im: root.value.im,
            });
        }
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for root in roots.roots.iter().filter(|r| r.value.im > 0.0) {
        let k = root.multiplicity;
        let z0 = root.value;
        // A = (z−z0)^k · D near z0: D's jet is A's Taylor tail.
        let a_taylor = taylor_at(&a_coeffs, z0, 2 * k);
        let d_jet = &a_taylor[k..2 * k];
        let b_jet = taylor_at(&b_coeffs, z0, k);
        let q = jet_div(&b_jet, d_jet, k);
        sum += q[k - 1];
    }
    Ok(sum)
}

/// ∫ℝ B/A dx by contour integration: 2π·Re(i·Σ upper residues).
pub fn integral_by_residues(r: &RationalIntegrand<BigRational>) -> Result<f64, OracleError> {
    let sum = upper_residue_sum(r)?;
    let value = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * sum).re;
    if !value.is_finite() {
        return Err(OracleError::NonFinite);
    }
    Ok(value)
}

// --- Adaptive Gauss–Kronrod (7, 15) quadrature -------------------------

/// 15-point Kronrod abscissae on [0, 1] side (symmetric), last is 0.
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];
/// Embedded 7-point Gauss weights (for the odd-indexed Kronrod nodes).
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

/// One (G7, K15) panel: returns (K15 value, |K15 − G7|, K15 of |f|).
fn gk_panel(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64, f64) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut k15 = 0.0;
    let mut g7 = 0.0;
    let mut k15_abs = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (f_plus, f_minus) = if x == 0.0 {
            let v = f(c);
            (v, 0.0)
        } else {
            (f(c + h * x), f(c - h * x))
        };
        let pair = f_plus + f_minus;
        k15 += wk * pair;
        k15_abs += wk * (f_plus.abs() + f_minus.abs());
        if i % 2 == 1 {
            g7 += WG[i / 2] * pair;
        } else if x == 0.0 {
            g7 += WG[3] * f_plus;
        }
    }
    (h * k15, h * (k15 - g7).abs(), h * k15_abs)
}

struct AdaptiveOutcome {
    value: f64,
    error: f64,
}

fn adaptive_gk(
    f: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    depth: usize,
) -> AdaptiveOutcome {
    let (value, error, _) = gk_panel(f, lo, hi);
    if error <= abs_tol || depth == 0 {
        return AdaptiveOutcome { value, error };
    }
    let mid = 0.5 * (lo + hi);
    let left = adaptive_gk(f, lo, mid, 0.5 * abs_tol, depth - 1);
    let right = adaptive_gk(f, mid, hi, 0.5 * abs_tol, depth - 1);
    AdaptiveOutcome {
        value: left.value + right.value,
        error: left.error + right.error,
    }
}

/// Adaptive integral of f over panels split at the given break points;
/// the tolerance is relative to the integral of |f|.
fn integrate_adaptive(
    f: &dyn Fn(f64) -> f64,
    breaks: &[f64],
    rel_tol: f64,
) -> Result<f64, OracleError> {
    let mut scale = 0.0;
    for w in breaks.windows(2) {
        let (_, _, abs_est) = gk_panel(f, w[0], w[1]);
        scale += abs_est;
    }
    let abs_tol = (scale.max(1e-30)) * rel_tol;
    let mut total = 0.0;
    let mut err = 0.0;
    for w in breaks.windows(2) {
        let panels = (breaks.len() - 1) as f64;
        let out = adaptive_gk(f, w[0], w[1], abs_tol / panels, 48);
        total += out.value;
        err += out.error;
    }
    if !total.is_finite() {
        return Err(OracleError::NonFinite);
    }
    if err > abs_tol * 4.0 {
        return Err(OracleError::ToleranceNotMet {
            achieved: err / scale.max(1e-30),
        });
    }
    Ok(total)
}

/// ∫ℝ B/A dx by the tangent compactification: the integrand becomes
/// R(tan θ)·sec²θ on (−π/2, π/2), evaluated through reversed coefficients
/// beyond |x| = 1 so large arguments never overflow.
pub fn integral_by_quadrature(r: &RationalIntegrand<BigRational>) -> Result<f64, OracleError> {
    // Cancel removable singularities exactly so the float evaluation
    // never meets a 0/0 point on the axis.
    let r = r.reduced().unwrap_or_else(|_| r.clone());
    let p = r.p();
    let a: Vec<f64> = r.a.to_f64_coeffs();
    // Numerator in the full x^(p−2) frame (descending), so the reversed
    // evaluation has matched degrees.
    let b: Vec<f64> = (0..=p - 2)
        .map(|k| r.b.coeff_of_power(p - 2 - k).to_f64())
        .collect();
    if a.iter().chain(b.iter()).any(|c| !c.is_finite()) {
        return Err(OracleError::NonFinite);
    }
    // Reversed (ascending-in-1/x) views: A(x) = x^p·Ã(1/x), B = x^(p−2)·B̃.
    let a_rev: Vec<f64> = a.iter().rev().copied().collect();
    let b_rev: Vec<f64> = b.iter().rev().copied().collect();

    let g = move |theta: f64| {
        let x = theta.tan();
        if x.abs() <= 1.0 {
            (horner_real(&b, x) / horner_real(&a, x)) * (1.0 + x * x)
        } else {
            let u = 1.0 / x; // cot θ
            (1.0 + u * u) * horner_real(&b_rev, u) / horner_real(&a_rev, u)
        }
    };
    let q = std::f64::consts::FRAC_PI_4;
    integrate_adaptive(&g, &[-2.0 * q, -q, q, 2.0 * q], 1e-11)
}

/// The scaling output rebuilt from roots: with x_j the roots of A and
/// y_j = P_m(x_j)/Q_m(x_j) their images, e₀ = a₀^m·∏ Q_m(x_j) and
/// e_l = e₀·(−1)^l·σ_l(y₁, …, y_p).  Entirely independent of the linear
/// solve on the main path.
pub fn e_by_symmetric_functions(
    a: &Polynomial<BigRational>,
    m: usize,
) -> Result<Vec<f64>, OracleError> {
    let p = a.deg();
    let pair = make_cot_pair::<BigRational>(m).expect("order at least 2");
    let pm: Vec<Complex64> = pair
        .p_m
        .to_f64_coeffs()
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect();
    let qm: Vec<Complex64> = pair
        .q_m
        .to_f64_coeffs()
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect();
    let roots = find_roots(a)?;

    let a0 = a.leading().to_f64();
    let mut e0 = Complex64::new(a0.powi(m as i32), 0.0);
    for root in &roots.roots {
        let qv = horner(&qm, root.value);
        for _ in 0..root.multiplicity {
            e0 *= qv;
        }
    }
    // H(y) = e₀·∏(y − y_j): expand from the image multiset.
    let mut h = vec![e0];
    for root in &roots.roots {
        let qv = horner(&qm, root.value);
        if qv.norm() == 0.0 {
            return Err(OracleError::NonFinite);
        }
        let y = horner(&pm, root.value) / qv;
        for _ in 0..root.multiplicity {
            let mut next = vec![Complex64::new(0.0, 0.0); h.len() + 1];
            for (i, c) in h.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c * y;
            }
            h = next;
        }
    }
    debug_assert_eq!(h.len(), p + 1);
    let e: Vec<f64> = h.iter().map(|c| c.re).collect();
    if e.iter().any(|c| !c.is_finite()) {
        return Err(OracleError::NonFinite);
    }
    Ok(e)
}

/// The two trigonometric moments (∫ sin(kθ)/ET, ∫ cos(kθ)/ET over a full
/// period), where ET(θ) = Σ e_l cos^(p−l)(mθ)·sin^l(mθ).  They vanish
/// unless k is a multiple of m, which tests exercise.
pub fn vanishing_moment_check(
    e: &[f64],
    m: usize,
    p: usize,
    k: usize,
) -> Result<(f64, f64), OracleError> {
    assert_eq!(e.len(), p + 1, "e-vector must have p+1 entries");
    let et = move |theta: f64| {
        let (s, c) = (theta * m as f64).sin_cos();
        let mut value = 0.0;
        for (l, el) in e.iter().enumerate() {
            value += el * c.powi((p - l) as i32) * s.powi(l as i32);
        }
        value
    };
    // Guard: ET bounded away from zero on a uniform grid.
    let samples = 512;
    let mut max_abs = 0.0f64;
    let mut min_abs = f64::INFINITY;
    let mut min_at = 0.0;
    for i in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * (i as f64) / (samples as f64);
        let v = et(theta).abs();
        max_abs = max_abs.max(v);
        if v < min_abs {
            min_abs = v;
            min_at = theta;
        }
    }
    if !max_abs.is_finite() || min_abs <= 1e-9 * max_abs {
        return Err(OracleError::DenominatorVanishes { at: min_at });
    }

    let tau = 2.0 * std::f64::consts::PI;
    let quarters: Vec<f64> = (0..=4).map(|i| tau * (i as f64) / 4.0).collect();
    let s_fn = move |theta: f64| (k as f64 * theta).sin() / et(theta);
    let s_value = integrate_adaptive(&s_fn, &quarters, 1e-11)?;
    let c_fn = move |theta: f64| (k as f64 * theta).cos() / et(theta);
    let c_value = integrate_adaptive(&c_fn, &quarters, 1e-11)?;
    Ok((s_value, c_value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaling::{build_scaling, LandenOrderParams};

    fn ipoly(coeffs: &[i64]) -> Polynomial<BigRational> {
        Polynomial::from_i64s(coeffs)
    }

    fn integrand(b: &[i64], a: &[i64]) -> RationalIntegrand<BigRational> {
        RationalIntegrand::new(ipoly(b), ipoly(a)).unwrap()
    }

    fn assert_root(set: &ComplexRootSet, re: f64, im: f64, mult: usize) {
        let hit = set.roots.iter().find(|r| {
            (r.value - Complex64::new(re, im)).norm() < 1e-7 * (1.0 + r.value.norm())
        });
        match hit {
            Some(r) => assert_eq!(r.multiplicity, mult, "multiplicity at {re}+{im}i"),
            None => panic!("no root near {re}+{im}i in {:?}", set.roots),
        }
    }

    #[test]
    fn simple_conjugate_pair() {
        let set = find_roots(&ipoly(&[1, 6, 13])).unwrap();
        assert_eq!(set.roots.len(), 2);
        assert_root(&set, -3.0, 2.0, 1);
        assert_root(&set, -3.0, -2.0, 1);
        assert!(set.residual < 1e-12);

        let set = find_roots(&ipoly(&[1, 0, 1])).unwrap();
        assert_root(&set, 0.0, 1.0, 1);
        assert_root(&set, 0.0, -1.0, 1);
    }

    #[test]
    fn double_roots_cluster() {
        // (x²+3x+10)² — double conjugate pair at −3/2 ± (√31/2)i.
        let set = find_roots(&ipoly(&[1, 6, 29, 60, 100])).unwrap();
        assert_eq!(set.total_multiplicity(), 4);
        let im = 31f64.sqrt() / 2.0;
        assert_root(&set, -1.5, im, 2);
        assert_root(&set, -1.5, -im, 2);

        // (x+2)²(x²+6x+13)² — a double real root and double pairs.
        let sextic = ipoly(&[1, 4, 4]).mul(&ipoly(&[1, 12, 62, 156, 169]));
        let set = find_roots(&sextic).unwrap();
        assert_eq!(set.total_multiplicity(), 6);
        assert_root(&set, -2.0, 0.0, 2);
        assert_root(&set, -3.0, 2.0, 2);
        assert_root(&set, -3.0, -2.0, 2);
    }

    #[test]
    fn residue_integrals_match_known_values() {
        // Quartic with double complex poles.
        let i1 = integral_by_residues(&integrand(&[1, 1, 1], &[1, 6, 29, 60, 100])).unwrap();
        let expected = 38.0 * std::f64::consts::PI / (31.0 * 31f64.sqrt());
        assert!((i1 - expected).abs() < 1e-10 * expected, "got {i1}");

        // Simple quadratic family: ∫ 1/(a₀x²+a₁x+a₂) = 2π/√(4a₀a₂−a₁²).
        for (a0, a1, a2) in [(1i64, 0, 1), (1, 1, 1), (2, 0, 2), (3, -1, 5)] {
            let i = integral_by_residues(&integrand(&[1], &[a0, a1, a2])).unwrap();
            let expected =
                2.0 * std::f64::consts::PI / ((4 * a0 * a2 - a1 * a1) as f64).sqrt();
            assert!((i - expected).abs() < 1e-12 * expected, "({a0},{a1},{a2})");
        }

        // Double pole at a squared quadratic: π/16.
        let i3 = integral_by_residues(&integrand(&[1], &[1, 12, 62, 156, 169])).unwrap();
        assert!((i3 - std::f64::consts::PI / 16.0).abs() < 1e-12);
    }

    #[test]
    fn removable_singularity_cancels_exactly() {
        // (x+2)² cancels from the sextic, leaving a proper integrand.
        let sextic = ipoly(&[1, 4, 4]).mul(&ipoly(&[1, 12, 62, 156, 169]));
        let r = RationalIntegrand::new(ipoly(&[1, 4, 4]), sextic).unwrap();
        let i = integral_by_residues(&r).unwrap();
        assert!((i - std::f64::consts::PI / 16.0).abs() < 1e-12);
        let i = integral_by_quadrature(&r).unwrap();
        assert!((i - std::f64::consts::PI / 16.0).abs() < 1e-10);
    }

    #[test]
    fn true_axis_pole_is_an_error() {
        let r = integrand(&[1], &[1, 0, -1, 0, -2]); // (x²−2)(x²+1)
        assert!(matches!(
            integral_by_residues(&r),
            Err(OracleError::PoleOnAxis { .. })
        ));
    }

    #[test]
    fn quadrature_matches_known_values() {
        let i = integral_by_quadrature(&integrand(&[1], &[1, 0, 1])).unwrap();
        assert!((i - std::f64::consts::PI).abs() < 1e-10);

        let i = integral_by_quadrature(&integrand(&[3, 5], &[1, 14, 74, 184, 208])).unwrap();
        let expected = -7.0 * std::f64::consts::PI / 12.0;
        assert!((i - expected).abs() < 1e-10 * expected.abs(), "got {i}");

        // Transformed quartic: same value as the original by invariance.
        let h = ipoly(&[20, 27, 56]).mul(&ipoly(&[20, 27, 56]));
        let r = RationalIntegrand::new(ipoly(&[202, 45, 97]), h).unwrap();
        let i = integral_by_quadrature(&r).unwrap();
        let expected = 38.0 * std::f64::consts::PI / (31.0 * 31f64.sqrt());
        assert!((i - expected).abs() < 1e-9 * expected, "got {i}");
    }

    #[test]
    fn oracles_agree_with_each_other() {
        for (b, a) in [
            (vec![1i64, 1, 1], vec![1i64, 6, 29, 60, 100]),
            (vec![3, 5], vec![1, 14, 74, 184, 208]),
            (vec![1], vec![1, 0, 1]),
            (vec![2, -3, 7, 1, 4], vec![3, 1, 11, 4, 17, 2, 9]),
        ] {
            let r = integrand(&b, &a);
            let by_res = integral_by_residues(&r).unwrap();
            let by_quad = integral_by_quadrature(&r).unwrap();
            let scale = by_res.abs().max(1e-6);
            assert!(
                (by_res - by_quad).abs() < 1e-9 * scale,
                "residues {by_res} vs quadrature {by_quad}"
            );
        }
    }

    #[test]
    fn residue_sum_is_conjugate_closed() {
        for (b, a) in [
            (vec![1i64, 1, 1], vec![1i64, 6, 29, 60, 100]),
            (vec![3, 5], vec![1, 14, 74, 184, 208]),
        ] {
            let sum = upper_residue_sum(&integrand(&b, &a)).unwrap();
            // 2πi·sum must be real: sum is (real value)/(2πi)-shaped, so
            // its real part carries the conjugate-closure defect.
            assert!(sum.re.abs() < 1e-9 * sum.norm().max(1e-12), "sum {sum}");
        }
    }

    #[test]
    fn root_based_e_vector_matches_the_linear_solve() {
        for (a, m) in [
            (ipoly(&[1, 6, 29, 60, 100]), 2usize),
            (ipoly(&[1, 0, 1]), 2),
            (ipoly(&[1, 14, 74, 184, 208]), 3),
        ] {
            let from_roots = e_by_symmetric_functions(&a, m).unwrap();
            let params = LandenOrderParams::new(m, a.deg()).unwrap();
            let exact = build_scaling(&a, params).unwrap();
            assert_eq!(from_roots.len(), exact.e.len());
            for (approx, exact_c) in from_roots.iter().zip(exact.e.iter()) {
                let reference = exact_c.to_f64();
                assert!(
                    (approx - reference).abs() <= 1e-6 * reference.abs().max(1.0),
                    "e-mismatch: {approx} vs {reference}"
                );
            }
        }
        // The known sextic pin.
        let sextic = ipoly(&[1, 4, 4]).mul(&ipoly(&[1, 12, 62, 156, 169]));
        let e = e_by_symmetric_functions(&sextic, 3).unwrap();
        assert!((e[0] - 269_353_744.0).abs() < 1e-6 * 269_353_744.0);
    }

    #[test]
    fn trigonometric_moments_vanish_off_multiples() {
        let params = LandenOrderParams::new(2, 4).unwrap();
        let scaling = build_scaling(&ipoly(&[1, 6, 29, 60, 100]), params).unwrap();
        let e: Vec<f64> = scaling.e.iter().map(|c| c.to_f64()).collect();
        let mut at_m = 0.0f64;
        for k in 0..=4usize {
            let (s, c) = vanishing_moment_check(&e, 2, 4, k).unwrap();
            if k == 0 {
                assert!(c > 0.0, "period integral of a positive denominator");
                assert!(s.abs() < 1e-8);
            } else if k % 2 == 0 {
                at_m = at_m.max(s.abs().max(c.abs()));
            } else {
                assert!(s.abs() < 1e-8 && c.abs() < 1e-8, "k = {k}: ({s}, {c})");
            }
        }
        // Multiples of m carry actual signal.
        assert!(at_m > 1e-6, "moment magnitude at multiples of m: {at_m}");

        // A vanishing denominator is detected: a pure cosine power is
        // zero wherever cos(mθ) is.
        let bad = [1.0, 0.0, 0.0, 0.0, 0.0];
        assert!(matches!(
            vanishing_moment_check(&bad, 2, 4, 1),
            Err(OracleError::DenominatorVanishes { .. })
        ));
    }
}
