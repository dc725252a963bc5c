//! Dense univariate polynomials over an exchangeable scalar backend.
//!
//! Coefficients are stored by *descending* power — `coeffs[k]` holds the
//! coefficient of `x^(deg-k)` — matching the index convention used
//! throughout the transform formulas (`a_k` multiplies `x^(p-k)`), so the
//! code can mirror those sums without reindexing. The zero polynomial is
//! a single zero coefficient of degree 0.
//!
//! Everything here is exact in the active backend; the only rounding is
//! whatever the backend's own arithmetic performs (none for rationals).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::Coefficient;

/// A dense univariate polynomial; see module docs for the layout.
#[derive(Clone, PartialEq)]
pub struct Polynomial<C: Coefficient> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Polynomial<C> {
    /// Build from descending-power coefficients, trimming leading zeros.
    pub fn from_coeffs(coeffs: Vec<C>) -> Polynomial<C> {
        let mut coeffs = coeffs;
        let first_nonzero = coeffs.iter().position(|c| !c.is_zero());
        match first_nonzero {
            None => Polynomial { coeffs: vec![C::zero()] },
            Some(0) => Polynomial { coeffs },
            Some(k) => {
                coeffs.drain(..k);
                Polynomial { coeffs }
            }
        }
    }

    /// Build from descending-power machine integers.
    pub fn from_i64s(coeffs: &[i64]) -> Polynomial<C> {
        Polynomial::from_coeffs(coeffs.iter().map(|&n| C::from_i64(n)).collect())
    }

    pub fn zero() -> Polynomial<C> {
        Polynomial { coeffs: vec![C::zero()] }
    }

    pub fn one() -> Polynomial<C> {
        Polynomial { coeffs: vec![C::one()] }
    }

    pub fn constant(c: C) -> Polynomial<C> {
        Polynomial::from_coeffs(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: C, k: usize) -> Polynomial<C> {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[0] = c;
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &C {
        &self.coeffs[0]
    }

    /// Descending-power view: element `k` is the coefficient of
    /// `x^(deg-k)`.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `x^power` (zero beyond the degree).
    pub fn coeff_of_power(&self, power: usize) -> C {
        if power > self.deg() {
            C::zero()
        } else {
            self.coeffs[self.deg() - power].clone()
        }
    }

    pub fn add(&self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![C::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[n - self.coeffs.len() + k] = c.clone();
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            let slot = n - rhs.coeffs.len() + k;
            out[slot] = out[slot].add(c);
        }
        Polynomial::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Polynomial<C> {
        Polynomial { coeffs: self.coeffs.iter().map(C::neg).collect() }
    }

    pub fn scale(&self, c: &C) -> Polynomial<C> {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// Multiply by `x^k`.
    pub fn mul_x_power(&self, k: usize) -> Polynomial<C> {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(std::iter::repeat_with(C::zero).take(k));
        Polynomial { coeffs }
    }

    pub fn mul(&self, rhs: &Polynomial<C>) -> Polynomial<C> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let n = self.coeffs.len();
        let m = rhs.coeffs.len();
        let mut out = vec![C::zero(); n + m - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        // Leading coefficients of both factors are nonzero but their
        // product can still vanish only in rings with zero divisors;
        // both backends are fields, so no trim is needed. Trim anyway to
        // keep the invariant bulletproof.
        Polynomial::from_coeffs(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial<C> {
        let mut out = Polynomial::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in &self.coeffs {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Polynomial composition `self(g(x))`, by Horner over polynomials.
    pub fn compose(&self, g: &Polynomial<C>) -> Polynomial<C> {
        let mut acc = Polynomial::zero();
        for c in &self.coeffs {
            acc = acc.mul(g).add(&Polynomial::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial<C> {
        if self.deg() == 0 {
            return Polynomial::zero();
        }
        let d = self.deg();
        let coeffs = self
            .coeffs
            .iter()
            .take(d)
            .enumerate()
            .map(|(k, c)| c.mul(&C::from_i64((d - k) as i64)))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    /// Euclidean division: returns `(q, r)` with `self = q*d + r` and
    /// `deg r < deg d` (or `r = 0`). Panics if `d` is zero.
    pub fn divrem(&self, d: &Polynomial<C>) -> (Polynomial<C>, Polynomial<C>) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() || self.deg() < d.deg() {
            return (Polynomial::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let qlen = self.deg() - d.deg() + 1;
        let mut q = vec![C::zero(); qlen];
        let lead = d.leading();
        for k in 0..qlen {
            if rem[k].is_zero() {
                continue;
            }
            let factor = rem[k].div(lead);
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&factor.mul(dc));
            }
            q[k] = factor;
        }
        (
            Polynomial::from_coeffs(q),
            Polynomial::from_coeffs(rem[qlen..].to_vec()),
        )
    }

    /// Map coefficients into another backend (or transform them in this
    /// one); trims in case the map sends leading coefficients to zero.
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Coefficients as saturating `f64`s, descending powers.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(Coefficient::to_f64).collect()
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let deg = self.deg();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = deg - k;
            let (sign, mag) = if c.sign() < 0 { ("-", c.neg()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mag_str = mag.to_string();
            let needs_parens = mag_str.contains('/') || mag_str.contains('e');
            let is_one = mag_str == "1";
            match power {
                0 => write!(f, "{mag_str}")?,
                _ => {
                    if !is_one {
                        if needs_parens {
                            write!(f, "({mag_str})*")?;
                        } else {
                            write!(f, "{mag_str}*")?;
                        }
                    }
                    if power == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// ---------------------------------------------------------------------------
// Exact-backend extras: content, primitive part, gcd.
// ---------------------------------------------------------------------------

impl Polynomial<BigRational> {
    /// Split into `(content, primitive)` with `self = content * primitive`,
    /// where the primitive part has coprime integer coefficients and a
    /// positive leading coefficient. The zero polynomial has content 0.
    pub fn content_primitive(&self) -> (BigRational, Polynomial<BigRational>) {
        if self.is_zero() {
            return (crate::coeff::integer(0), Polynomial::zero());
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in &self.coeffs {
            numer_gcd = numer_gcd.gcd(&(c.numer() * &denom_lcm / c.denom()));
        }
        let mut content = BigRational::new(numer_gcd, denom_lcm);
        if self.leading().is_negative() {
            content = -content;
        }
        let primitive = self.scale(&content.recip());
        (content, primitive)
    }

    /// Primitive polynomial gcd (primitive-PRS Euclid). The result is
    /// primitive with positive leading coefficient; gcd with zero is the
    /// other argument's primitive part, and gcd of two zeros is zero.
    pub fn gcd(&self, other: &Polynomial<BigRational>) -> Polynomial<BigRational> {
        let mut a = self.content_primitive().1;
        let mut b = other.content_primitive().1;
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            if a.deg() < b.deg() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.content_primitive().1;
        }
        a
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial<BigRational>) -> Polynomial<BigRational> {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "exact_div: remainder is nonzero");
        q
    }
}
