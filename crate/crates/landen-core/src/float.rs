//! Arbitrary-precision binary floats with an explicit working precision.
//!
//! [`FloatNum`] wraps `astro_float::BigFloat` and records the working
//! precision (in bits) inside every value. Binary operations run at the
//! larger of the two operands' precisions, rounding half to even, so
//! exactly-representable constants (integers from binomials and `T`
//! tables) never drag a high-precision computation down. Order-m
//! convergence squeezes norms below any fixed precision within a few
//! steps; the iteration layer detects the resulting stall and restarts at
//! doubled precision, which is why precision must travel with the values
//! rather than live in a global.
//!
//! NaN and infinity are outlawed: any operation that would produce one
//! panics instead. The solvers test every pivot and divisor first, so a
//! non-finite value can only mean a bug, not bad input data.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, RoundingMode, Sign as FSign};
use num_bigint::{BigInt, Sign as ISign};
use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::{Coefficient, Sci};
use crate::linalg::LinalgError;

/// Minimum working precision, matching IEEE double.
pub const MIN_PRECISION_BITS: u32 = 53;

const RM: RoundingMode = RoundingMode::ToEven;

/// An arbitrary-precision binary float tagged with its working precision.
#[derive(Clone, Debug)]
pub struct FloatNum {
    value: BigFloat,
    precision: u32,
}

impl FloatNum {
    fn wrap(value: BigFloat, precision: u32) -> FloatNum {
        assert!(
            !value.is_nan() && !value.is_inf(),
            "non-finite value in float backend (precision {precision} bits)"
        );
        FloatNum { value, precision }
    }

    /// Precision in bits this value carries through arithmetic.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Embed an `f64` exactly at the given precision.
    pub fn from_f64(v: f64, precision: u32) -> FloatNum {
        let precision = precision.max(MIN_PRECISION_BITS);
        FloatNum::wrap(BigFloat::from_f64(v, precision as usize), precision)
    }

    /// Embed an integer exactly; the stored precision is at least the
    /// integer's bit length, so no rounding occurs.
    pub fn from_bigint_exact(n: &BigInt) -> FloatNum {
        let bits = n.magnitude().bits().max(1) as u32;
        FloatNum::from_rational_bits(
            &BigRational::from_integer(n.clone()),
            bits.max(MIN_PRECISION_BITS),
        )
    }

    /// Round a rational to `bits` of precision.
    ///
    /// This is the only entry point that rounds exact data, and the seam
    /// where a float-backend run fixes its working precision.
    pub fn from_rational_bits(r: &BigRational, bits: u32) -> FloatNum {
        let bits = bits.max(MIN_PRECISION_BITS);
        if Zero::is_zero(r) {
            return FloatNum::wrap(BigFloat::from_f64(0.0, bits as usize), bits);
        }
        let numer = r.numer().magnitude();
        let denom = r.denom().magnitude();
        // Scale n/d so the integer quotient holds `bits + 2` significant
        // bits; the final rounding to `bits` is then faithful.
        let want = bits as i64 + 2;
        let shift = want - (numer.bits() as i64 - denom.bits() as i64);
        let (n, d) = if shift >= 0 {
            (numer << shift as u64, denom.clone())
        } else {
            (numer.clone(), denom << (-shift) as u64)
        };
        let q = &n / &d;
        let qbits = q.bits();
        // Normalize the quotient into full 64-bit words, most significant
        // bit set, as `from_words` expects.
        let words_len = qbits.div_ceil(64).max(1);
        let pad = words_len * 64 - qbits;
        let q = q << pad;
        let mut words = q.to_u64_digits();
        words.resize(words_len as usize, 0);
        let sign = if r.numer().sign() == ISign::Minus { FSign::Neg } else { FSign::Pos };
        // value = 0.words * 2^exp, and q = value_scaled * 2^(pad) with
        // q = (n/d rounded down); undo both scalings.
        let exp = (qbits as i64 - shift) as i32;
        let raw = BigFloat::from_words(&words, sign, exp);
        let rounded = raw.add(&BigFloat::from_f64(0.0, bits as usize), bits as usize, RM);
        FloatNum::wrap(rounded, bits)
    }

    fn op_precision(&self, rhs: &FloatNum) -> u32 {
        self.precision.max(rhs.precision)
    }

    /// Raw view: (sign, fraction in [0.5, 1), base-2 exponent) with
    /// `value = sign * fraction * 2^exp`. Zero reports (0, 0.0, 0).
    fn sign_fraction_exp(&self) -> (i8, f64, i64) {
        if self.value.is_zero() {
            return (0, 0.0, 0);
        }
        let (words, _len, sign, exp, _inexact) =
            self.value.as_raw_parts().expect("finite value has raw parts");
        let sign = if sign == FSign::Neg { -1 } else { 1 };
        // Top 128 bits of the fraction are plenty for a f64 image.
        let hi = words[words.len() - 1] as f64;
        let lo = if words.len() > 1 { words[words.len() - 2] as f64 } else { 0.0 };
        let fraction = hi / 2f64.powi(64) + lo / 2f64.powi(128);
        (sign, fraction, i64::from(exp))
    }
}

impl PartialEq for FloatNum {
    fn eq(&self, other: &Self) -> bool {
        self.value.cmp(&other.value) == Some(0)
    }
}

impl fmt::Display for FloatNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Shortest round-ish display; full precision is never needed for
        // human output, and exact serialization goes through the exact
        // backend instead.
        write!(f, "{}", self.to_sci().format(17))
    }
}

impl Coefficient for FloatNum {
    const EXACT: bool = false;

    fn zero() -> Self {
        FloatNum::from_f64(0.0, MIN_PRECISION_BITS)
    }

    fn one() -> Self {
        FloatNum::from_f64(1.0, MIN_PRECISION_BITS)
    }

    fn from_i64(n: i64) -> Self {
        FloatNum::from_bigint_exact(&BigInt::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        FloatNum::from_bigint_exact(n)
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn sign(&self) -> i8 {
        if self.value.is_zero() {
            0
        } else if self.value.is_negative() {
            -1
        } else {
            1
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        let p = self.op_precision(rhs);
        FloatNum::wrap(self.value.add(&rhs.value, p as usize, RM), p)
    }

    fn sub(&self, rhs: &Self) -> Self {
        let p = self.op_precision(rhs);
        FloatNum::wrap(self.value.sub(&rhs.value, p as usize, RM), p)
    }

    fn mul(&self, rhs: &Self) -> Self {
        let p = self.op_precision(rhs);
        FloatNum::wrap(self.value.mul(&rhs.value, p as usize, RM), p)
    }

    fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.value.is_zero(), "division by zero in float backend");
        let p = self.op_precision(rhs);
        FloatNum::wrap(self.value.div(&rhs.value, p as usize, RM), p)
    }

    fn neg(&self) -> Self {
        FloatNum::wrap(self.value.clone().neg(), self.precision)
    }

    fn abs_cmp(&self, rhs: &Self) -> Ordering {
        let ord = self
            .value
            .abs()
            .cmp(&rhs.value.abs())
            .expect("finite values always compare");
        if ord < 0 {
            Ordering::Less
        } else if ord > 0 {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }

    fn to_f64(&self) -> f64 {
        let (sign, fraction, exp) = self.sign_fraction_exp();
        if sign == 0 {
            return 0.0;
        }
        let v = if exp >= 1100 {
            f64::INFINITY
        } else if exp <= -1100 {
            0.0
        } else {
            fraction * 2f64.powi(exp as i32)
        };
        if sign < 0 {
            -v
        } else {
            v
        }
    }

    fn to_sci(&self) -> Sci {
        let (sign, fraction, exp) = self.sign_fraction_exp();
        if sign == 0 {
            return Sci::ZERO;
        }
        let l10 = (exp as f64 + fraction.log2()) * core::f64::consts::LOG10_2;
        Sci::from_log10(f64::from(sign), l10)
    }

    fn precision_bits(&self) -> Option<u32> {
        Some(self.precision)
    }

    fn decimal_size(&self) -> Option<u64> {
        None
    }

    fn solve_square(
        matrix: Vec<Vec<Self>>,
        rhs: Vec<Self>,
    ) -> Result<Vec<Self>, LinalgError> {
        crate::linalg::solve_gaussian(matrix, rhs)
    }

    fn det(matrix: Vec<Vec<Self>>) -> Result<Self, LinalgError> {
        crate::linalg::det_gaussian(matrix)
    }

    fn normalize_pair(num: &mut [Self], den: &mut [Self]) {
        let Some(lead) = den.iter().find(|c| !c.is_zero()).cloned() else {
            return;
        };
        for c in num.iter_mut().chain(den.iter_mut()) {
            *c = c.div(&lead);
        }
    }
}
