//! Real-root counting via Sturm chains over exact rationals.
//!
//! The denominator of an integrand must have no real zeros for the integral
//! over ℝ to exist; this module provides the exact check.  The chain is the
//! classical one — f₀ = A, f₁ = A′, then negated polynomial remainders — and
//! the difference in sign variations between −∞ and +∞ counts the distinct
//! real roots.  Repeated roots are fine: a common factor scales every chain
//! member past some index without disturbing the variation count.

use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SturmError {
    /// The zero polynomial has no meaningful root count.
    ZeroPolynomial,
}

impl fmt::Display for SturmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SturmError::ZeroPolynomial => write!(f, "cannot count roots of the zero polynomial"),
        }
    }
}

impl std::error::Error for SturmError {}

/// Divides out the content magnitude, keeping the sign of every coefficient.
/// Plain `content_primitive` flips negative-leading polynomials, which would
/// corrupt the sign variation count.
fn primitive_keep_sign(f: &Polynomial<BigRational>) -> Polynomial<BigRational> {
    let (content, primitive) = f.content_primitive();
    if content.is_negative() {
        primitive.neg()
    } else {
        primitive
    }
}

/// Number of distinct real roots of `a`, by the sign-variation difference of
/// its Sturm chain between −∞ and +∞.
pub fn sturm_real_root_count(a: &Polynomial<BigRational>) -> Result<usize, SturmError> {
    if a.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    if a.deg() == 0 {
        return Ok(0);
    }

    let mut chain = vec![primitive_keep_sign(a)];
    chain.push(primitive_keep_sign(&a.derivative()));
    loop {
        let f_prev = &chain[chain.len() - 2];
        let f_last = &chain[chain.len() - 1];
        if f_last.is_zero() || f_last.deg() == 0 {
            break;
        }
        let (_, rem) = f_prev.divrem(f_last);
        if rem.is_zero() {
            break;
        }
        let next = primitive_keep_sign(&rem.neg());
        chain.push(next);
    }

    // Sign of f(x) as x → +∞ is the sign of the leading coefficient; toward
    // −∞ it flips once per odd degree.
    let variations = |at_minus_infinity: bool| -> usize {
        let mut count = 0;
        let mut prev_sign = 0i8;
        for f in &chain {
            if f.is_zero() {
                continue;
            }
            let mut s = if f.leading().is_negative() { -1i8 } else { 1 };
            if at_minus_infinity && f.deg() % 2 == 1 {
                s = -s;
            }
            if prev_sign != 0 && s != prev_sign {
                count += 1;
            }
            prev_sign = s;
        }
        count
    };

    let at_neg = variations(true);
    let at_pos = variations(false);
    debug_assert!(at_neg >= at_pos);
    Ok(at_neg - at_pos)
}
