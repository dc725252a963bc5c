//! Scalar backends for the polynomial engine.
//!
//! Two interchangeable coefficient types implement [`Coefficient`]:
//! `BigRational` (exact arbitrary-precision rationals, always in lowest
//! terms) and [`crate::float::FloatNum`] (arbitrary-precision binary
//! floats with an explicit working precision). The backend is a type-level
//! choice, so exact and floating values can never mix inside one
//! computation.
//!
//! The module also provides [`Sci`], a tiny base-10 scientific
//! representation used for reporting norms and errors. Iteration norms
//! shrink like `1e-70` and beyond while their defining rationals grow to
//! thousands of digits; `Sci` carries (mantissa, exponent) pairs that are
//! immune to both overflow and underflow, and is built from exact
//! rationals without ever converting them to `f64` as a whole.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::LinalgError;

/// Natural log of 10, used for base conversions.
const LN_10: f64 = core::f64::consts::LN_10;
/// log10(2), used to convert bit lengths to decimal exponents.
const LOG10_2: f64 = core::f64::consts::LOG10_2;

/// Scalar operations required by every layer of the pipeline.
///
/// Arithmetic is by reference (values can be thousands of digits wide;
/// implicit copies would dominate the runtime). Division by zero panics:
/// all callers test divisors (pivots, leading coefficients) before
/// dividing, so a zero divisor is a programming error, not a data error.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// True when arithmetic is exact (no rounding anywhere).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Exact embedding of an integer. Never rounds, in either backend.
    fn from_bigint(n: &BigInt) -> Self;

    fn is_zero(&self) -> bool;
    /// Sign of the value: -1, 0, or +1.
    fn sign(&self) -> i8;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics if `rhs` is zero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Compare absolute values (used for pivot selection).
    fn abs_cmp(&self, rhs: &Self) -> Ordering;

    /// Best-effort conversion for oracle comparisons and display.
    /// Saturates to `±inf` / `0` outside the `f64` range.
    fn to_f64(&self) -> f64;
    /// Scientific form, accurate to ~1e-11 relative even for values whose
    /// numerators and denominators have tens of thousands of digits.
    fn to_sci(&self) -> Sci;

    /// Working precision in bits; `None` for the exact backend.
    fn precision_bits(&self) -> Option<u32>;

    /// Maximum decimal digit count over the value's integer parts
    /// (numerator and denominator); `None` for the float backend.
    fn decimal_size(&self) -> Option<u64>;

    /// Solve the square linear system `matrix * x = rhs`.
    ///
    /// The exact backend clears denominators and runs fraction-free
    /// (Bareiss) elimination over integers; the float backend uses
    /// Gaussian elimination with partial pivoting.
    fn solve_square(matrix: Vec<Vec<Self>>, rhs: Vec<Self>) -> Result<Vec<Self>, LinalgError>;

    /// Determinant of a square matrix, by the same backend split.
    fn det(matrix: Vec<Vec<Self>>) -> Result<Self, LinalgError>;

    /// Jointly rescale a numerator/denominator coefficient pair by one
    /// common nonzero factor. The rescaling must leave every coefficient
    /// ratio — hence the represented rational function up to a constant —
    /// unchanged.
    ///
    /// Exact backend: primitive integer form (clear denominators, divide
    /// by the common integer gcd, sign fixed so `den[0] > 0`). Float
    /// backend: divide through by `den[0]`.
    fn normalize_pair(num: &mut [Self], den: &mut [Self]);

    /// Cancel common polynomial factors of a fraction, where the backend
    /// supports an exact gcd. Returns `None` where it cannot (floats have
    /// no meaningful polynomial gcd). A `Some` result with a trivial gcd
    /// returns the inputs unchanged.
    fn cancel_common_factors(
        num: &crate::poly::Polynomial<Self>,
        den: &crate::poly::Polynomial<Self>,
    ) -> Option<(crate::poly::Polynomial<Self>, crate::poly::Polynomial<Self>)>
    where
        Self: Sized,
    {
        let _ = (num, den);
        None
    }
}

impl Coefficient for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn sign(&self) -> i8 {
        match self.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Self {
        assert!(!Zero::is_zero(rhs), "division by zero in exact backend");
        self / rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn abs_cmp(&self, rhs: &Self) -> Ordering {
        self.abs().cmp(&rhs.abs())
    }

    fn to_f64(&self) -> f64 {
        self.to_sci().to_f64()
    }

    fn to_sci(&self) -> Sci {
        Sci::from_rational(self)
    }

    fn precision_bits(&self) -> Option<u32> {
        None
    }

    fn decimal_size(&self) -> Option<u64> {
        let digits = |n: &BigInt| -> u64 {
            if Zero::is_zero(n) {
                return 1;
            }
            // `to_string` is linear-ish in the digit count and only runs
            // on report boundaries, never inside the solver loops.
            let s = n.magnitude().to_string();
            s.len() as u64
        };
        Some(digits(self.numer()).max(digits(self.denom())))
    }

    fn solve_square(
        matrix: Vec<Vec<Self>>,
        rhs: Vec<Self>,
    ) -> Result<Vec<Self>, LinalgError> {
        crate::linalg::solve_exact(matrix, rhs)
    }

    fn det(matrix: Vec<Vec<Self>>) -> Result<Self, LinalgError> {
        crate::linalg::det_exact_rational(matrix)
    }

    fn normalize_pair(num: &mut [Self], den: &mut [Self]) {
        use num_integer::Integer;

        let mut denom_lcm = BigInt::one();
        for c in num.iter().chain(den.iter()) {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in num.iter().chain(den.iter()) {
            numer_gcd = numer_gcd.gcd(&(c.numer() * &denom_lcm / c.denom()));
        }
        if Zero::is_zero(&numer_gcd) {
            return; // all coefficients zero; nothing to scale
        }
        let mut factor = BigRational::new(denom_lcm, numer_gcd);
        // Keep the denominator's leading coefficient positive so the pair
        // has one canonical representative.
        if let Some(lead) = den.iter().find(|c| !Zero::is_zero(*c)) {
            if (lead * &factor).numer().sign() == Sign::Minus {
                factor = -factor;
            }
        }
        for c in num.iter_mut().chain(den.iter_mut()) {
            *c *= &factor;
        }
    }

    fn cancel_common_factors(
        num: &crate::poly::Polynomial<Self>,
        den: &crate::poly::Polynomial<Self>,
    ) -> Option<(crate::poly::Polynomial<Self>, crate::poly::Polynomial<Self>)> {
        if num.is_zero() || den.is_zero() {
            return Some((num.clone(), den.clone()));
        }
        let g = num.gcd(den);
        if g.deg() == 0 {
            return Some((num.clone(), den.clone()));
        }
        Some((num.exact_div(&g), den.exact_div(&g)))
    }
}

/// Convenience constructor for exact rationals (used pervasively in tests).
pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Convenience constructor for exact integers as rationals.
pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Base-10 scientific pair: `mant * 10^exp10` with `1 <= |mant| < 10`,
/// or the exact zero (`mant == 0`).
///
/// Built from exact rationals via bit lengths, so it stays accurate for
/// values far outside the `f64` exponent range.
#[derive(Clone, Copy, Debug)]
pub struct Sci {
    mant: f64,
    exp10: i32,
}

impl Sci {
    pub const ZERO: Sci = Sci { mant: 0.0, exp10: 0 };

    /// Normalize a raw (mantissa, exponent) pair into the class invariant.
    fn normalized(mut mant: f64, mut exp10: i32) -> Sci {
        if mant == 0.0 {
            return Sci::ZERO;
        }
        while mant.abs() >= 10.0 {
            mant /= 10.0;
            exp10 += 1;
        }
        while mant.abs() < 1.0 {
            mant *= 10.0;
            exp10 -= 1;
        }
        Sci { mant, exp10 }
    }

    pub fn from_f64(v: f64) -> Sci {
        assert!(v.is_finite(), "Sci::from_f64 requires a finite value");
        if v == 0.0 {
            return Sci::ZERO;
        }
        let exp10 = v.abs().log10().floor() as i32;
        Sci::normalized(v / 10f64.powi(exp10), exp10)
    }

    /// Recover a value from its sign and base-10 logarithm of magnitude.
    pub(crate) fn from_log10(sign: f64, l10: f64) -> Sci {
        let exp10 = l10.floor();
        let mant = 10f64.powf(l10 - exp10);
        Sci::normalized(mant.copysign(sign), exp10 as i32)
    }

    /// Exact-rational entry point; accurate to ~1e-11 relative even for
    /// operands with tens of thousands of digits.
    pub fn from_rational(r: &BigRational) -> Sci {
        if Zero::is_zero(r) {
            return Sci::ZERO;
        }
        let sign = if r.numer().sign() == Sign::Minus { -1.0 } else { 1.0 };
        let l2 = bigint_log2(r.numer()) - bigint_log2(r.denom());
        Sci::from_log10(sign, l2 * LOG10_2)
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0.0
    }

    pub fn mantissa(&self) -> f64 {
        self.mant
    }

    pub fn exponent(&self) -> i32 {
        self.exp10
    }

    /// Base-10 logarithm of the magnitude. Panics on zero.
    pub fn log10_abs(&self) -> f64 {
        assert!(!self.is_zero(), "log of zero");
        f64::from(self.exp10) + self.mant.abs().log10()
    }

    /// Natural logarithm of the magnitude. Panics on zero.
    pub fn ln_abs(&self) -> f64 {
        self.log10_abs() * LN_10
    }

    /// Square root of a nonnegative value.
    pub fn sqrt(&self) -> Sci {
        assert!(self.mant >= 0.0, "sqrt of negative value");
        if self.is_zero() {
            return Sci::ZERO;
        }
        Sci::from_log10(1.0, self.log10_abs() / 2.0)
    }

    /// Scale by a finite nonzero `f64`.
    pub fn scale(&self, f: f64) -> Sci {
        assert!(f.is_finite() && f != 0.0);
        if self.is_zero() {
            return Sci::ZERO;
        }
        let sign = self.mant.signum() * f.signum();
        Sci::from_log10(sign, self.log10_abs() + f.abs().log10())
    }

    /// Saturating conversion: values outside the `f64` range become
    /// `0` or `±inf` with the right sign.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.exp10 < -340 {
            return 0.0_f64.copysign(self.mant);
        }
        if self.exp10 > 308 {
            return f64::INFINITY.copysign(self.mant);
        }
        // Split the power so neither factor over/underflows prematurely.
        let half = self.exp10 / 2;
        self.mant * 10f64.powi(half) * 10f64.powi(self.exp10 - half)
    }

    /// Fixed-exponent scientific form with `sig` significant digits,
    /// e.g. `format(6)` of 1.0823050e-16 is `"1.08231e-16"`.
    pub fn format(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return format!("{:.*}e0", sig - 1, 0.0);
        }
        let mut mant = self.mant;
        let mut exp = self.exp10;
        // Pre-round at the displayed width; a mantissa like 9.999997 can
        // carry over into the next decade.
        let scale = 10f64.powi(sig as i32 - 1);
        if (mant.abs() * scale).round() >= 10.0 * scale {
            mant /= 10.0;
            exp += 1;
        }
        format!("{:.*}e{}", sig - 1, mant, exp)
    }

    /// `%g`-style form: plain decimal for moderate exponents, scientific
    /// otherwise. Used for the human-readable tables.
    pub fn format_g(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        if self.exp10 >= -4 && (self.exp10 as i64) < sig as i64 {
            let places = (sig as i64 - 1 - self.exp10 as i64).max(0) as usize;
            format!("{:.*}", places, self.to_f64())
        } else {
            self.format(sig)
        }
    }
}

impl PartialEq for Sci {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Sci {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let sa = self.mant.partial_cmp(&0.0)?;
        let sb = other.mant.partial_cmp(&0.0)?;
        if sa != sb {
            // Signs differ; the sign comparison decides.
            return Some(if sa != Ordering::Equal { sa } else { sb.reverse() });
        }
        // Same sign. Zero equals zero.
        if self.is_zero() && other.is_zero() {
            return Some(Ordering::Equal);
        }
        let flip = self.mant < 0.0;
        let ord = match self.exp10.cmp(&other.exp10) {
            Ordering::Equal => self.mant.abs().partial_cmp(&other.mant.abs())?,
            o => o,
        };
        Some(if flip { ord.reverse() } else { ord })
    }
}

impl fmt::Display for Sci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(6))
    }
}

/// log2 of a nonzero integer's magnitude, accurate to ~1e-15 relative.
fn bigint_log2(n: &BigInt) -> f64 {
    let mag = n.magnitude();
    let bits = mag.bits();
    assert!(bits > 0, "log2 of zero");
    if bits <= 64 {
        return (mag.to_u64().expect("fits in u64") as f64).log2();
    }
    // Keep the top 64 bits for the fractional part of the logarithm.
    let top = (mag >> (bits - 64)).to_u64().expect("top word fits");
    (bits - 64) as f64 + (top as f64).log2()
}
