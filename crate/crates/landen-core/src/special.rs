//! Cotangent polynomial families and trigonometric reduction coefficients.
//!
//! The pair (P_m, Q_m) satisfies P_m(cot t)/Q_m(cot t) = cot(m t); the starred
//! pair works the same trick for tangents: P*_m(tan t)·cos^m t = cos(m t) and
//! Q*_m(tan t)·cos^m t = sin(m t).  Both families have integer coefficients
//! given by alternating binomial sums, and the quotient map R_m = P_m/Q_m
//! composes multiplicatively: R_n∘R_m = R_{nm}.
//!
//! The second half of the module reduces powers sin^a·cos^b to a linear
//! combination of sines and cosines of multiple angles.  The weights are
//! integer combinations `t_coeff(x, a, b)` of products of two binomials; they
//! drive the numerator assembly in the transform engine, where out-of-range
//! subscripts simply contribute zero.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::Coefficient;
use crate::poly::Polynomial;

/// Binomial coefficient over arbitrary-precision integers; 0 when k > n.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Binomial with a possibly negative lower index; 0 outside 0 ≤ k ≤ n.
fn binomial_signed(n: usize, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    binomial(n, k as usize)
}

/// Parity sign (−1)^e for an exponent that may be negative.
pub(crate) fn alt_sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Error for the degenerate order m = 0, where neither family is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidOrder;

impl fmt::Display for InvalidOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "polynomial family order must be at least 1")
    }
}

impl std::error::Error for InvalidOrder {}

/// The degree-m cotangent multiplier pair (P_m, Q_m).
#[derive(Debug, Clone, PartialEq)]
pub struct CotangentPolyPair<C: Coefficient> {
    pub m: usize,
    pub p_m: Polynomial<C>,
    pub q_m: Polynomial<C>,
}

/// Builds P_m(x) = Σ_j (−1)^j C(m,2j) x^(m−2j) and
/// Q_m(x) = Σ_j (−1)^j C(m,2j+1) x^(m−1−2j).
pub fn make_cot_pair<C: Coefficient>(m: usize) -> Result<CotangentPolyPair<C>, InvalidOrder> {
    if m == 0 {
        return Err(InvalidOrder);
    }
    // Descending storage: slot k holds the coefficient of x^(deg−k), so the
    // x^(m−2j) term of P_m lands in slot 2j and the x^(m−1−2j) term of Q_m
    // in slot 2j as well.
    let mut p = vec![C::zero(); m + 1];
    for j in 0..=m / 2 {
        p[2 * j] = C::from_bigint(&(alt_sign(j as i64) * binomial(m, 2 * j)));
    }
    let mut q = vec![C::zero(); m];
    for j in 0..=(m - 1) / 2 {
        q[2 * j] = C::from_bigint(&(alt_sign(j as i64) * binomial(m, 2 * j + 1)));
    }
    Ok(CotangentPolyPair {
        m,
        p_m: Polynomial::from_coeffs(p),
        q_m: Polynomial::from_coeffs(q),
    })
}

/// Builds the tangent-side pair P*_m(x) = Σ_i (−1)^i C(m,2i) x^(2i) and
/// Q*_m(x) = Σ_i (−1)^i C(m,2i+1) x^(2i+1), with ascending powers this time.
///
/// Both are the reversals of (P_m, Q_m) in the common degree-m frame:
/// P*_m(x) = x^m P_m(1/x) and Q*_m(x) = x^m Q_m(1/x).
pub fn make_star_pair<C: Coefficient>(
    m: usize,
) -> Result<(Polynomial<C>, Polynomial<C>), InvalidOrder> {
    if m == 0 {
        return Err(InvalidOrder);
    }
    let mut p_by_power = vec![C::zero(); m + 1];
    for i in 0..=m / 2 {
        p_by_power[2 * i] = C::from_bigint(&(alt_sign(i as i64) * binomial(m, 2 * i)));
    }
    let mut q_by_power = vec![C::zero(); m + 1];
    for i in 0..=(m - 1) / 2 {
        q_by_power[2 * i + 1] = C::from_bigint(&(alt_sign(i as i64) * binomial(m, 2 * i + 1)));
    }
    p_by_power.reverse();
    q_by_power.reverse();
    Ok((
        Polynomial::from_coeffs(p_by_power),
        Polynomial::from_coeffs(q_by_power),
    ))
}

/// T_x(a,b) = Σ_{j=0..x} (−1)^(a−x+j) C(a, x−j) C(b, j), the multiple-angle
/// weight function.  Returns 0 for x < 0 and for x > a + b.
pub fn t_coeff(x: i64, a: usize, b: usize) -> BigInt {
    if x < 0 || x > (a + b) as i64 {
        return BigInt::zero();
    }
    let mut total = BigInt::zero();
    for j in 0..=x {
        let c1 = binomial_signed(a, x - j);
        if c1.is_zero() {
            continue;
        }
        let c2 = binomial_signed(b, j);
        if c2.is_zero() {
            continue;
        }
        total += alt_sign(a as i64 - x + j) * c1 * c2;
    }
    total
}

/// One term of a multiple-angle expansion: `weight` times cos(k·u), sin(k·u),
/// or the constant 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigTerm {
    pub kind: TrigKind,
    pub multiple: usize,
    pub weight: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Constant,
    Cos,
    Sin,
}

impl TrigTerm {
    /// Evaluates the term at angle `u` in double precision.
    pub fn eval_f64(&self, u: f64) -> f64 {
        let w = self.weight.to_f64();
        match self.kind {
            TrigKind::Constant => w,
            TrigKind::Cos => w * (self.multiple as f64 * u).cos(),
            TrigKind::Sin => w * (self.multiple as f64 * u).sin(),
        }
    }
}

/// Expands sin^a(u)·cos^b(u) as an exact linear combination of multiple-angle
/// terms.  With c = ⌈(a+b)/2⌉ and d = ⌊a/2⌋ the expansion splits into four
/// parity cases:
///
/// * a, b even:  (−1)^d/2^(a+b) · [T_c + Σ_{j≥1} (T_{c+j} + T_{c−j}) cos(2ju)]
/// * a even, b odd:  … Σ_{j≥1} (T_{c−1+j} + T_{c−j}) cos((2j−1)u)
/// * a odd, b even:  … Σ_{j≥1} (T_{c−1+j} − T_{c−j}) sin((2j−1)u)
/// * a, b odd:  … Σ_{j≥1} (T_{c+j} − T_{c−j}) sin(2ju)
///
/// where every T is evaluated at (a, b).  Zero-weight terms are dropped;
/// terms are ordered constant-first, then by increasing multiple.
pub fn linearize_sin_cos(a: usize, b: usize) -> Vec<TrigTerm> {
    let c = (a + b).div_ceil(2);
    let d = a / 2;
    let prefactor = BigRational::new(alt_sign(d as i64), BigInt::one() << (a + b));
    let t = |x: i64| t_coeff(x, a, b);
    let ci = c as i64;

    let mut terms = Vec::new();
    let mut push = |kind: TrigKind, multiple: usize, raw: BigInt| {
        if !raw.is_zero() {
            terms.push(TrigTerm {
                kind,
                multiple,
                weight: &prefactor * BigRational::from(raw),
            });
        }
    };

    match (a % 2, b % 2) {
        (0, 0) => {
            push(TrigKind::Constant, 0, t(ci));
            for j in 1..=ci {
                push(TrigKind::Cos, 2 * j as usize, t(ci + j) + t(ci - j));
            }
        }
        (0, 1) => {
            for j in 1..=ci {
                push(TrigKind::Cos, 2 * j as usize - 1, t(ci - 1 + j) + t(ci - j));
            }
        }
        (1, 0) => {
            for j in 1..=ci {
                push(TrigKind::Sin, 2 * j as usize - 1, t(ci - 1 + j) - t(ci - j));
            }
        }
        _ => {
            for j in 1..=ci {
                push(TrigKind::Sin, 2 * j as usize, t(ci + j) - t(ci - j));
            }
        }
    }
    terms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{integer, rational};

    fn ipoly(coeffs: &[i64]) -> Polynomial<BigRational> {
        Polynomial::from_i64s(coeffs)
    }

    #[test]
    fn cot_pairs_match_hand_expansion() {
        let pair1 = make_cot_pair::<BigRational>(1).unwrap();
        assert_eq!(pair1.p_m, ipoly(&[1, 0]));
        assert_eq!(pair1.q_m, ipoly(&[1]));

        let pair2 = make_cot_pair::<BigRational>(2).unwrap();
        assert_eq!(pair2.p_m, ipoly(&[1, 0, -1]));
        assert_eq!(pair2.q_m, ipoly(&[2, 0]));

        let pair3 = make_cot_pair::<BigRational>(3).unwrap();
        assert_eq!(pair3.p_m, ipoly(&[1, 0, -3, 0]));
        assert_eq!(pair3.q_m, ipoly(&[3, 0, -1]));

        assert_eq!(make_cot_pair::<BigRational>(0), Err(InvalidOrder));
    }

    #[test]
    fn cot_pair_degrees_and_leading_coefficients() {
        for m in 1..=8 {
            let pair = make_cot_pair::<BigRational>(m).unwrap();
            assert_eq!(pair.p_m.deg(), m);
            assert_eq!(pair.q_m.deg(), m - 1);
            assert_eq!(*pair.p_m.leading(), integer(1));
            assert_eq!(*pair.q_m.leading(), integer(m as i64));
        }
    }

    #[test]
    fn star_pairs_match_hand_expansion() {
        let (p1, q1) = make_star_pair::<BigRational>(1).unwrap();
        assert_eq!(p1, ipoly(&[1]));
        assert_eq!(q1, ipoly(&[1, 0]));

        let (p2, q2) = make_star_pair::<BigRational>(2).unwrap();
        assert_eq!(p2, ipoly(&[-1, 0, 1]));
        assert_eq!(q2, ipoly(&[2, 0]));

        let (p3, q3) = make_star_pair::<BigRational>(3).unwrap();
        assert_eq!(p3, ipoly(&[-3, 0, 1]));
        assert_eq!(q3, ipoly(&[-1, 0, 3, 0]));
    }

    #[test]
    fn star_pairs_are_degree_m_frame_reversals() {
        // F*(x) = x^m F(1/x) for both families.  Q_m has degree m−1, so its
        // frame gains a leading zero before reversal.
        for m in 1..=8usize {
            let pair = make_cot_pair::<BigRational>(m).unwrap();
            let (ps, qs) = make_star_pair::<BigRational>(m).unwrap();
            let mut p_frame = pair.p_m.coeffs().to_vec();
            p_frame.reverse();
            let mut q_frame = vec![integer(0)];
            q_frame.extend_from_slice(pair.q_m.coeffs());
            q_frame.reverse();
            assert_eq!(Polynomial::from_coeffs(p_frame), ps, "P* reversal, m={m}");
            assert_eq!(Polynomial::from_coeffs(q_frame), qs, "Q* reversal, m={m}");
        }
    }

    #[test]
    fn t_coeff_reference_values() {
        for a in 0..=6usize {
            for b in 0..=6usize {
                let expected = if a % 2 == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(-1)
                };
                assert_eq!(t_coeff(0, a, b), expected, "T_0({a},{b})");
                assert_eq!(
                    t_coeff((a + b) as i64 + 1, a, b),
                    BigInt::zero(),
                    "out of range above"
                );
            }
        }
        assert_eq!(t_coeff(1, 2, 0), BigInt::from(-2));
        assert_eq!(t_coeff(-1, 3, 2), BigInt::zero());
        // With a = 0 only the j = x term survives, leaving C(b, x).
        for b in 0..=6usize {
            for x in 0..=b as i64 {
                assert_eq!(t_coeff(x, 0, b), binomial(b, x as usize));
            }
        }
    }

    #[test]
    fn linearization_small_cases() {
        assert_eq!(
            linearize_sin_cos(0, 0),
            vec![TrigTerm {
                kind: TrigKind::Constant,
                multiple: 0,
                weight: integer(1),
            }]
        );
        assert_eq!(
            linearize_sin_cos(0, 2),
            vec![
                TrigTerm {
                    kind: TrigKind::Constant,
                    multiple: 0,
                    weight: rational(1, 2),
                },
                TrigTerm {
                    kind: TrigKind::Cos,
                    multiple: 2,
                    weight: rational(1, 2),
                },
            ]
        );
        assert_eq!(
            linearize_sin_cos(2, 0),
            vec![
                TrigTerm {
                    kind: TrigKind::Constant,
                    multiple: 0,
                    weight: rational(1, 2),
                },
                TrigTerm {
                    kind: TrigKind::Cos,
                    multiple: 2,
                    weight: rational(-1, 2),
                },
            ]
        );
        assert_eq!(
            linearize_sin_cos(1, 1),
            vec![TrigTerm {
                kind: TrigKind::Sin,
                multiple: 2,
                weight: rational(1, 2),
            }]
        );
        assert_eq!(
            linearize_sin_cos(0, 1),
            vec![TrigTerm {
                kind: TrigKind::Cos,
                multiple: 1,
                weight: integer(1),
            }]
        );
    }

    #[test]
    fn linearization_matches_float_products() {
        for a in 0..=4usize {
            for b in 0..=4usize {
                let terms = linearize_sin_cos(a, b);
                for k in 0..12 {
                    let u = 0.37 + 0.51 * k as f64;
                    let direct = u.sin().powi(a as i32) * u.cos().powi(b as i32);
                    let expanded: f64 = terms.iter().map(|t| t.eval_f64(u)).sum();
                    assert!(
                        (direct - expanded).abs() < 1e-12,
                        "a={a} b={b} u={u}: {direct} vs {expanded}"
                    );
                }
            }
        }
    }

    #[test]
    fn cot_identity_smoke() {
        // P_m(cot t)·sin(mt) = Q_m(cot t)·cos(mt), checked in the
        // cross-multiplied form that stays finite at cot(mt) poles.
        for m in 2..=5usize {
            let pair = make_cot_pair::<BigRational>(m).unwrap();
            for k in 1..=10 {
                let x = rational(2 * k + 1, 7);
                let t = (7.0 / (2 * k + 1) as f64).atan();
                let p = pair.p_m.eval(&x).to_f64();
                let q = pair.q_m.eval(&x).to_f64();
                let mt = m as f64 * t;
                let residual = (p * mt.sin() - q * mt.cos()).abs() / (p.abs() + q.abs());
                assert!(residual < 1e-12, "m={m} k={k}: residual {residual}");
            }
        }
    }
}
