//! The scaling step: multiply a degree-p denominator A by a computed Z so
//! that A·Z becomes homogeneous in the pair (P_m, Q_m).
//!
//! Writing E = A·Z = Σ_{l=0..p} e_l P_m^(p−l) Q_m^l turns the later change
//! of variables into pure coefficient bookkeeping, and the vector e becomes
//! the next denominator.  Everything here is linear algebra on coefficients:
//! matching powers of x gives mp+1 equations in the mp+2 unknowns
//! (z_0..z_r, e_0..e_p), and the one-dimensional freedom is pinned by the
//! root-free normalization e_0 = a_0 · res(A, Q_m), which keeps every
//! denominator produced by repeated transforms on a single consistent scale.
//! No root of A is ever computed.

use std::fmt;

use crate::coeff::Coefficient;
use crate::linalg::{resultant, LinalgError};
use crate::poly::Polynomial;
use crate::special::make_cot_pair;

/// Derived index bounds for an order-m transform of a degree-p integrand:
/// s = mp−2 (degree of the scaled numerator), r = p(m−1) (degree of Z),
/// λ = s/2 and ν = p/2 (loop bounds in the numerator reduction).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LandenOrderParams {
    pub m: usize,
    pub p: usize,
    pub s: usize,
    pub r: usize,
    pub lambda: usize,
    pub nu: usize,
}

impl LandenOrderParams {
    pub fn new(m: usize, p: usize) -> Result<LandenOrderParams, ScalingError> {
        if m < 2 {
            return Err(ScalingError::OrderTooSmall { m });
        }
        if p < 2 || p % 2 != 0 {
            return Err(ScalingError::InvalidDegree { p });
        }
        let s = m * p - 2;
        Ok(LandenOrderParams {
            m,
            p,
            s,
            r: p * (m - 1),
            lambda: s / 2,
            nu: p / 2,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalingError {
    /// Order m = 0 or 1: the transform is undefined or the identity.
    OrderTooSmall { m: usize },
    /// The denominator degree must be even and at least 2.
    InvalidDegree { p: usize },
    /// deg A disagrees with the p the parameters were built for.
    DimensionMismatch { expected: usize, got: usize },
    /// The pinned system has no unique solution: A shares a root with the
    /// order-m multiplier polynomials, or its root multiset is invariant
    /// under a symmetry of the order-m root map.
    SingularSystem { stage: usize },
    /// Numerator degree exceeds p − 2.
    DegreeTooHigh { max: usize, got: usize },
}

impl fmt::Display for ScalingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalingError::OrderTooSmall { m } => {
                write!(f, "transform order must be at least 2, got {m}")
            }
            ScalingError::InvalidDegree { p } => {
                write!(f, "denominator degree must be even and at least 2, got {p}")
            }
            ScalingError::DimensionMismatch { expected, got } => {
                write!(f, "expected a denominator of degree {expected}, got {got}")
            }
            ScalingError::SingularSystem { stage } => write!(
                f,
                "scaling system is singular at elimination stage {stage} \
                 (the denominator's roots collide with the order-m \
                 multiplier roots or are symmetric under its root map)"
            ),
            ScalingError::DegreeTooHigh { max, got } => {
                write!(f, "numerator degree {got} exceeds the allowed {max}")
            }
        }
    }
}

impl std::error::Error for ScalingError {}

impl From<LinalgError> for ScalingError {
    fn from(e: LinalgError) -> ScalingError {
        match e {
            LinalgError::SingularSystem { stage } => ScalingError::SingularSystem { stage },
            LinalgError::DimensionMismatch { expected, got } => {
                ScalingError::DimensionMismatch { expected, got }
            }
            // Zero polynomials cannot reach the resultant: deg A = p ≥ 2 is
            // checked first and Q_m is never zero.
            LinalgError::ZeroPolynomial => ScalingError::SingularSystem { stage: 0 },
        }
    }
}

/// Output of the scaling step: Z, the e-vector, and E = A·Z.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingResult<C: Coefficient> {
    pub params: LandenOrderParams,
    /// Z of degree r, with z_0 = e_0 / a_0 ≠ 0.
    pub z: Polynomial<C>,
    /// e_0..e_p, the coefficients of the homogeneous form (and of the next
    /// denominator H(y) = Σ e_l y^(p−l)).
    pub e: Vec<C>,
    /// E = A·Z of degree mp, equal to Σ e_l P_m^(p−l) Q_m^l.
    pub e_poly: Polynomial<C>,
}

/// Computes Z and e with A·Z = Σ e_l P_m^(p−l) Q_m^l, pinning
/// e_0 = a_0 · res(A, Q_m).
pub fn build_scaling<C: Coefficient>(
    a: &Polynomial<C>,
    params: LandenOrderParams,
) -> Result<ScalingResult<C>, ScalingError> {
    let (m, p, r) = (params.m, params.p, params.r);
    if a.deg() != p {
        return Err(ScalingError::DimensionMismatch {
            expected: p,
            got: a.deg(),
        });
    }
    let mp = m * p;
    let pair = make_cot_pair::<C>(m).expect("order was validated by LandenOrderParams");

    // Basis polynomials G_l = P_m^(p−l) Q_m^l, of degree mp − l exactly.
    let mut p_pows = Vec::with_capacity(p + 1);
    let mut q_pows = Vec::with_capacity(p + 1);
    p_pows.push(Polynomial::<C>::one());
    q_pows.push(Polynomial::<C>::one());
    for k in 1..=p {
        p_pows.push(p_pows[k - 1].mul(&pair.p_m));
        q_pows.push(q_pows[k - 1].mul(&pair.q_m));
    }
    let basis: Vec<Polynomial<C>> = (0..=p).map(|l| p_pows[p - l].mul(&q_pows[l])).collect();

    let a0 = a.coeffs()[0].clone();
    let e0 = a0.mul(&resultant(a, &pair.q_m)?);

    // Match the coefficient of x^(mp−k) for k = 0..mp.  Unknown layout:
    // columns 0..=r hold z_0..z_r, columns r+1..r+p hold e_1..e_p; the
    // pinned e_0 term moves to the right-hand side.
    let n = mp + 1;
    let mut matrix = vec![vec![C::zero(); n]; n];
    let mut rhs = vec![C::zero(); n];
    for k in 0..n {
        let row = &mut matrix[k];
        for (j, slot) in row.iter_mut().enumerate().take(r + 1) {
            if k >= j && k - j <= p {
                *slot = a.coeffs()[k - j].clone();
            }
        }
        for l in 1..=p {
            if mp >= k {
                row[r + l] = basis[l].coeff_of_power(mp - k).neg();
            }
        }
        rhs[k] = e0.mul(&basis[0].coeff_of_power(mp - k));
    }

    let solution = C::solve_square(matrix, rhs)?;
    let z = Polynomial::from_coeffs(solution[..=r].to_vec());
    let mut e = Vec::with_capacity(p + 1);
    e.push(e0);
    e.extend_from_slice(&solution[r + 1..]);
    let e_poly = a.mul(&z);

    Ok(ScalingResult {
        params,
        z,
        e,
        e_poly,
    })
}

/// Multiplies the numerator through by the already-computed Z, producing
/// C = B·Z of degree at most s = mp − 2.
pub fn scaled_numerator<C: Coefficient>(
    b: &Polynomial<C>,
    scale: &ScalingResult<C>,
) -> Result<Polynomial<C>, ScalingError> {
    let max = scale.params.p - 2;
    if !b.is_zero() && b.deg() > max {
        return Err(ScalingError::DegreeTooHigh { max, got: b.deg() });
    }
    Ok(b.mul(&scale.z))
}
