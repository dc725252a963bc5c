//! The order-m coefficient transform: maps an integrand B/A to J/H with the
//! same integral over ℝ.
//!
//! The denominator is immediate — H(x) = Σ e_l x^(p−l) reuses the e-vector
//! from the scaling step.  The numerator J is assembled from the scaled
//! numerator coefficients c_j by five nested sums.  They come from expanding
//! sin/cos powers into multiple angles (the `t_coeff` weights), discarding
//! every moment that integrates to zero against the homogeneous denominator
//! (only multiples of m survive), and rewriting the survivors in powers of
//! 1 + y² via the shifted-basis expansions of P_{2α} and Q_{2α}.  The even
//! part of J collects M₁ terms, the odd part M₂ terms, and a final division
//! by 2^s clears the linearization prefactors.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::Coefficient;
use crate::poly::Polynomial;
use crate::scaling::{build_scaling, scaled_numerator, LandenOrderParams, ScalingError, ScalingResult};
use crate::special::{alt_sign, binomial, t_coeff};
use crate::sturm::sturm_real_root_count;

/// A rational function B/A destined for integration over the whole real
/// line: deg A = p even, deg B ≤ p − 2.  The `validated` flag records that
/// A was proven to have no real zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalIntegrand<C: Coefficient> {
    pub b: Polynomial<C>,
    pub a: Polynomial<C>,
    pub validated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegrandError {
    /// Denominator degree must be even and at least 2.
    OddDegree { got: usize },
    /// Numerator degree must stay two below the denominator's.
    DegreeGap { deg_b: usize, max: usize },
    /// The denominator has real zeros, so the integral diverges.
    RealRoots { count: usize },
}

impl fmt::Display for IntegrandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegrandError::OddDegree { got } => {
                write!(f, "denominator degree must be even and at least 2, got {got}")
            }
            IntegrandError::DegreeGap { deg_b, max } => {
                write!(f, "numerator degree {deg_b} exceeds the allowed {max}")
            }
            IntegrandError::RealRoots { count } => {
                write!(f, "denominator has {count} real zero(s)")
            }
        }
    }
}

impl std::error::Error for IntegrandError {}

impl<C: Coefficient> RationalIntegrand<C> {
    /// Shape-checks the pair without the (exact-only) real-root scan.
    pub fn new(b: Polynomial<C>, a: Polynomial<C>) -> Result<Self, IntegrandError> {
        let p = a.deg();
        if a.is_zero() || p < 2 || p % 2 != 0 {
            return Err(IntegrandError::OddDegree { got: p });
        }
        if !b.is_zero() && b.deg() > p - 2 {
            return Err(IntegrandError::DegreeGap {
                deg_b: b.deg(),
                max: p - 2,
            });
        }
        Ok(RationalIntegrand {
            b,
            a,
            validated: false,
        })
    }

    /// Degree of the denominator.
    pub fn p(&self) -> usize {
        self.a.deg()
    }
}

impl RationalIntegrand<BigRational> {
    /// Shape-checks and proves A has no real zeros via a Sturm chain.
    pub fn validated(
        b: Polynomial<BigRational>,
        a: Polynomial<BigRational>,
    ) -> Result<Self, IntegrandError> {
        let mut r = RationalIntegrand::new(b, a)?;
        let count = sturm_real_root_count(&r.a).expect("denominator is nonzero");
        if count > 0 {
            return Err(IntegrandError::RealRoots { count });
        }
        r.validated = true;
        Ok(r)
    }

    /// Converts to the float backend at the given working precision,
    /// carrying the validation status along (validation is an exact-side
    /// property; it cannot be established on floats).
    pub fn to_float(&self, bits: u32) -> RationalIntegrand<crate::float::FloatNum> {
        RationalIntegrand {
            b: self.b.map(|c| crate::float::FloatNum::from_rational_bits(c, bits)),
            a: self.a.map(|c| crate::float::FloatNum::from_rational_bits(c, bits)),
            validated: self.validated,
        }
    }

    /// Cancels the polynomial gcd of numerator and denominator.  Fails only
    /// if the reduced denominator no longer has even degree (possible when a
    /// removable real singularity of odd multiplicity is cancelled).
    pub fn reduced(&self) -> Result<Self, IntegrandError> {
        if self.b.is_zero() {
            return Ok(self.clone());
        }
        let g = self.b.gcd(&self.a);
        if g.deg() == 0 {
            return Ok(self.clone());
        }
        let mut r = RationalIntegrand::new(self.b.exact_div(&g), self.a.exact_div(&g))?;
        r.validated = self.validated;
        Ok(r)
    }
}

/// The transformed pair (J, H), plus the scaling data that produced it —
/// including the e_0 pin that fixes the overall scale.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult<C: Coefficient> {
    pub j: Polynomial<C>,
    pub h: Polynomial<C>,
    pub scaling: ScalingResult<C>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformError {
    Scaling(ScalingError),
    /// Closed-form map applied to a quadratic with real zeros.
    RealRoots,
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::Scaling(e) => e.fmt(f),
            TransformError::RealRoots => {
                write!(f, "quadratic has real zeros (4·a0·a2 ≤ a1²)")
            }
        }
    }
}

impl std::error::Error for TransformError {}

impl From<ScalingError> for TransformError {
    fn from(e: ScalingError) -> TransformError {
        TransformError::Scaling(e)
    }
}

/// Integer prefactor shared by the M₁ terms and the shifted-basis expansion
/// of P_{2α}: Σ_{j=0..α−β} C(2α,2j)·C(α−j,β), which also equals
/// (α/(2α−β))·C(2α−β,β)·2^(2(α−β)).  Zero when β > α.
pub fn m1_prefactor(alpha: usize, beta: usize) -> BigInt {
    if beta > alpha {
        return BigInt::zero();
    }
    let mut total = BigInt::zero();
    for j in 0..=alpha - beta {
        total += binomial(2 * alpha, 2 * j) * binomial(alpha - j, beta);
    }
    total
}

/// Coefficients of P_{2α}(y) over the basis (1+y²)^β for β = 0..α:
/// entry β is (−1)^(α−β)·(α/(2α−β))·2^(2(α−β))·C(2α−β,β), an integer.
pub fn p2alpha_in_shifted_basis(alpha: usize) -> Vec<BigInt> {
    assert!(alpha >= 1, "the expansion starts at alpha = 1");
    (0..=alpha)
        .map(|beta| alt_sign((alpha - beta) as i64) * m1_prefactor(alpha, beta))
        .collect()
}

/// Odd-family counterpart: coefficients of Q_{2α}(y) over the basis
/// y·(1+y²)^(α−1−β) for β = 0..α−1; entry β is (−1)^β·2^(2β+1)·C(α+β,2β+1).
pub fn q2alpha_in_shifted_basis(alpha: usize) -> Vec<BigInt> {
    assert!(alpha >= 1, "the expansion starts at alpha = 1");
    (0..alpha)
        .map(|beta| {
            alt_sign(beta as i64) * (BigInt::one() << (2 * beta + 1)) * binomial(alpha + beta, 2 * beta + 1)
        })
        .collect()
}

/// One even-power reduction term:
/// M₁ = (−1)^(j+α−β) c_{2j} · pre(α,β) · C(ν−α−1+β, γ) ·
///      [T_{λ+αm}(2j, s−2j) + T_{λ−αm}(2j, s−2j)],
/// with pre the `m1_prefactor`.  Out-of-range indices yield zero.
pub fn m1_coeff<C: Coefficient>(
    j: usize,
    alpha: usize,
    beta: usize,
    gamma: usize,
    params: &LandenOrderParams,
    c: &[C],
) -> C {
    if 2 * j > params.s || 2 * j >= c.len() {
        return C::zero();
    }
    let upper = params.nu as i64 - alpha as i64 - 1 + beta as i64;
    if upper < 0 {
        return C::zero();
    }
    let pre = m1_prefactor(alpha, beta);
    if pre.is_zero() {
        return C::zero();
    }
    let bin = binomial(upper as usize, gamma);
    if bin.is_zero() {
        return C::zero();
    }
    let (a, b) = (2 * j, params.s - 2 * j);
    let shift = (alpha * params.m) as i64;
    let bracket = t_coeff(params.lambda as i64 + shift, a, b)
        + t_coeff(params.lambda as i64 - shift, a, b);
    let total = alt_sign((j + alpha) as i64 - beta as i64) * pre * bin * bracket;
    C::from_bigint(&total).mul(&c[2 * j])
}

/// One odd-power reduction term:
/// M₂ = (−1)^(j+β) c_{2j+1} · 2^(2β+1) · C(α+β, 2β+1) · C(ν−2−β, γ) ·
///      [T_{λ+αm}(2j+1, s−2j−1) − T_{λ−αm}(2j+1, s−2j−1)].
pub fn m2_coeff<C: Coefficient>(
    j: usize,
    alpha: usize,
    beta: usize,
    gamma: usize,
    params: &LandenOrderParams,
    c: &[C],
) -> C {
    if 2 * j + 1 > params.s || 2 * j + 1 >= c.len() {
        return C::zero();
    }
    let upper = params.nu as i64 - 2 - beta as i64;
    if upper < 0 {
        return C::zero();
    }
    let middle = binomial(alpha + beta, 2 * beta + 1);
    if middle.is_zero() {
        return C::zero();
    }
    let bin = binomial(upper as usize, gamma);
    if bin.is_zero() {
        return C::zero();
    }
    let (a, b) = (2 * j + 1, params.s - 2 * j - 1);
    let shift = (alpha * params.m) as i64;
    let bracket = t_coeff(params.lambda as i64 + shift, a, b)
        - t_coeff(params.lambda as i64 - shift, a, b);
    let total =
        alt_sign((j + beta) as i64) * (BigInt::one() << (2 * beta + 1)) * middle * bin * bracket;
    C::from_bigint(&total).mul(&c[2 * j + 1])
}

/// Applies the order-m transform, returning J/H with ∫ J/H = ∫ B/A.
pub fn landen_transform<C: Coefficient>(
    r: &RationalIntegrand<C>,
    m: usize,
) -> Result<TransformResult<C>, TransformError> {
    let p = r.p();
    let params = LandenOrderParams::new(m, p)?;
    let scaling = build_scaling(&r.a, params)?;
    let c_poly = scaled_numerator(&r.b, &scaling)?;
    let (s, lambda, nu) = (params.s, params.lambda, params.nu);
    let c: Vec<C> = (0..=s).map(|k| c_poly.coeff_of_power(s - k)).collect();

    // J coefficients accumulate by ascending power of x, 0..=p−2.
    let mut by_power = vec![C::zero(); p - 1];

    // Base sum: S₀ = Σ_j (−1)^j c_{2j} T_λ(2j, s−2j), distributed over the
    // even powers with binomial weights C(ν−1, γ).
    let mut s0 = C::zero();
    for j in 0..=lambda {
        let t = alt_sign(j as i64) * t_coeff(lambda as i64, 2 * j, s - 2 * j);
        if !t.is_zero() {
            s0 = s0.add(&C::from_bigint(&t).mul(&c[2 * j]));
        }
    }
    for gamma in 0..=nu - 1 {
        let w = C::from_bigint(&binomial(nu - 1, gamma));
        by_power[2 * gamma] = by_power[2 * gamma].add(&w.mul(&s0));
    }

    // Even-power corrections (M₁), split by which side of the binomial
    // C(ν−α−1+β, γ) limits the range.
    if nu >= 2 {
        for gamma in 0..=nu - 2 {
            for j in 0..=lambda {
                for alpha in 1..=nu - 1 - gamma {
                    for beta in 0..=alpha {
                        let term = m1_coeff(j, alpha, beta, gamma, &params, &c);
                        by_power[2 * gamma] = by_power[2 * gamma].add(&term);
                    }
                }
            }
        }
    }
    for gamma in 1..=nu - 1 {
        for j in 0..=lambda {
            for alpha in nu - gamma..=nu - 1 {
                for beta in alpha + gamma + 1 - nu..=alpha {
                    let term = m1_coeff(j, alpha, beta, gamma, &params, &c);
                    by_power[2 * gamma] = by_power[2 * gamma].add(&term);
                }
            }
        }
    }

    // Odd-power corrections (M₂).
    if nu >= 2 {
        for gamma in 0..=nu - 2 {
            for j in 0..=lambda - 1 {
                for alpha in 1..=nu - 1 - gamma {
                    for beta in 0..alpha {
                        let term = m2_coeff(j, alpha, beta, gamma, &params, &c);
                        by_power[2 * gamma + 1] = by_power[2 * gamma + 1].add(&term);
                    }
                }
            }
        }
        for gamma in 1..=nu - 2 {
            for j in 0..=lambda - 1 {
                for alpha in nu - gamma..=nu - 1 {
                    for beta in 0..alpha {
                        let term = m2_coeff(j, alpha, beta, gamma, &params, &c);
                        by_power[2 * gamma + 1] = by_power[2 * gamma + 1].add(&term);
                    }
                }
            }
        }
    }

    let two_pow_s = C::from_bigint(&(BigInt::one() << s));
    by_power.reverse();
    let j_poly = Polynomial::from_coeffs(by_power).map(|v| v.div(&two_pow_s));
    let h_poly = Polynomial::from_coeffs(scaling.e.clone());

    Ok(TransformResult {
        j: j_poly,
        h: h_poly,
        scaling,
    })
}

/// The p = m = 2 transform in closed form.  Returns the new quadratic
/// (a0', a1', a2') normalized to numerator 1, together with the numerator
/// value 2(a0+a2)/a0² that the un-normalized transform of 1/(a0x²+a1x+a2)
/// produces alongside the denominator (4a2/a0)x² + … .
pub fn closed_form_p2m2<C: Coefficient>(
    a0: &C,
    a1: &C,
    a2: &C,
) -> Result<(C, C, C, C), TransformError> {
    let two = C::from_i64(2);
    let four = C::from_i64(4);
    let disc = four.mul(a0).mul(a2).sub(&a1.mul(a1));
    if disc.sign() <= 0 {
        return Err(TransformError::RealRoots);
    }
    let sum = a0.add(a2);
    let new_a0 = two.mul(a0).mul(a2).div(&sum);
    let new_a1 = a1.mul(&a2.sub(a0)).div(&sum);
    let new_a2 = sum.mul(&sum).sub(&a1.mul(a1)).div(&two.mul(&sum));
    let scale = two.mul(&sum).div(&a0.mul(a0));
    Ok((new_a0, new_a1, new_a2, scale))
}

/// True when n1/d1 and n2/d2 agree as rational functions, i.e. the
/// cross-products n1·d2 and n2·d1 are identical polynomials.
pub fn same_rational_function<C: Coefficient>(
    n1: &Polynomial<C>,
    d1: &Polynomial<C>,
    n2: &Polynomial<C>,
    d2: &Polynomial<C>,
) -> bool {
    n1.mul(d2) == n2.mul(d1)
}
