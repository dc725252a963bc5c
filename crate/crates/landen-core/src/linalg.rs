//! Dense linear solvers and resultants.
//!
//! The scaling step reduces to one square linear system per transform;
//! its entries are the integrand's coefficients, which double in digit
//! count every iteration. Naive rational elimination squares that cost
//! through intermediate fraction blowup, so the exact path clears each
//! row to integers and runs fraction-free (Bareiss) elimination: every
//! intermediate entry is a minor of the integer matrix, and every
//! division is exact. The float path uses textbook Gaussian elimination
//! with partial pivoting.
//!
//! Resultants are computed literally as Sylvester-matrix determinants —
//! degrees never exceed a few dozen here, so determinant cost is noise
//! next to the digit growth the Bareiss form controls.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::Coefficient;
use crate::poly::Polynomial;

/// Failures from the dense solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    /// Elimination found no usable pivot at the given stage: the system
    /// is singular (or numerically so for the float backend).
    SingularSystem { stage: usize },
    /// A matrix/vector dimension disagreed with the caller's contract.
    DimensionMismatch { expected: usize, got: usize },
    /// Resultant of a zero polynomial is not defined here.
    ZeroPolynomial,
}

impl std::fmt::Display for LinalgError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LinalgError::SingularSystem { stage } => {
                write!(f, "linear system is singular (elimination stage {stage})")
            }
            LinalgError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            LinalgError::ZeroPolynomial => write!(f, "resultant of the zero polynomial"),
        }
    }
}

impl std::error::Error for LinalgError {}

fn check_square<T>(matrix: &[Vec<T>], rhs_len: Option<usize>) -> Result<usize, LinalgError> {
    let n = matrix.len();
    for row in matrix {
        if row.len() != n {
            return Err(LinalgError::DimensionMismatch { expected: n, got: row.len() });
        }
    }
    if let Some(m) = rhs_len {
        if m != n {
            return Err(LinalgError::DimensionMismatch { expected: n, got: m });
        }
    }
    Ok(n)
}

/// Scale one rational row to integers by its denominators' lcm.
fn clear_row(row: &[BigRational], rhs: &BigRational) -> (Vec<BigInt>, BigInt) {
    let mut lcm = BigInt::one();
    for c in row.iter().chain(std::iter::once(rhs)) {
        lcm = lcm.lcm(c.denom());
    }
    let scaled = row
        .iter()
        .chain(std::iter::once(rhs))
        .map(|c| c.numer() * &lcm / c.denom())
        .collect();
    (scaled, lcm)
}

/// Exact solve of a square rational system via integer Bareiss
/// elimination on the row-cleared augmented matrix.
pub fn solve_exact(
    matrix: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
) -> Result<Vec<BigRational>, LinalgError> {
    let n = check_square(&matrix, Some(rhs.len()))?;
    if n == 0 {
        return Ok(vec![]);
    }
    // Row scaling changes neither the solution set nor singularity.
    let mut aug: Vec<Vec<BigInt>> = matrix
        .iter()
        .zip(&rhs)
        .map(|(row, b)| clear_row(row, b).0)
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if aug[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !aug[i][k].is_zero());
            match swap {
                Some(i) => aug.swap(k, i),
                None => return Err(LinalgError::SingularSystem { stage: k }),
            }
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let num = &aug[k][k] * &aug[i][j] - &aug[i][k] * &aug[k][j];
                // Bareiss guarantee: `prev` divides exactly.
                aug[i][j] = num / &prev;
            }
            aug[i][k] = BigInt::zero();
        }
        prev = aug[k][k].clone();
    }
    if aug[n - 1][n - 1].is_zero() {
        return Err(LinalgError::SingularSystem { stage: n - 1 });
    }

    // Back-substitution in rationals; entries are integers, solutions are
    // modest rationals (quotients of minors).
    let mut x = vec![crate::coeff::integer(0); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(aug[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(aug[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(aug[i][i].clone());
    }
    Ok(x)
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn det_exact(matrix: Vec<Vec<BigInt>>) -> Result<BigInt, LinalgError> {
    let n = check_square(&matrix, None)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = matrix;
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    // The Bareiss final pivot *is* the determinant (up to swap sign).
    let det = m[n - 1][n - 1].clone();
    Ok(if sign < 0 { -det } else { det })
}

/// Determinant of a square rational matrix: clear rows to integers,
/// divide the integer determinant by the row scales.
pub fn det_exact_rational(matrix: Vec<Vec<BigRational>>) -> Result<BigRational, LinalgError> {
    let n = check_square(&matrix, None)?;
    if n == 0 {
        return Ok(crate::coeff::integer(1));
    }
    let zero = crate::coeff::integer(0);
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(n);
    for row in &matrix {
        let (mut cleared, lcm) = clear_row(row, &zero);
        cleared.pop(); // drop the padded rhs entry
        scale *= lcm;
        rows.push(cleared);
    }
    let det = det_exact(rows)?;
    Ok(BigRational::new(det, scale))
}

/// Gaussian elimination with partial pivoting, for the float backend
/// (also correct, if slower, over exact scalars).
pub fn solve_gaussian<C: Coefficient>(
    matrix: Vec<Vec<C>>,
    rhs: Vec<C>,
) -> Result<Vec<C>, LinalgError> {
    let n = check_square(&matrix, Some(rhs.len()))?;
    if n == 0 {
        return Ok(vec![]);
    }
    let mut aug = matrix;
    for (row, b) in aug.iter_mut().zip(rhs) {
        row.push(b);
    }
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| aug[i][k].abs_cmp(&aug[j][k]))
            .expect("nonempty range");
        if aug[pivot_row][k].is_zero() {
            return Err(LinalgError::SingularSystem { stage: k });
        }
        aug.swap(k, pivot_row);
        for i in k + 1..n {
            if aug[i][k].is_zero() {
                continue;
            }
            let factor = aug[i][k].div(&aug[k][k]);
            for j in k..=n {
                let delta = factor.mul(&aug[k][j]);
                aug[i][j] = aug[i][j].sub(&delta);
            }
        }
    }
    let mut x = vec![C::zero(); n];
    for i in (0..n).rev() {
        let mut acc = aug[i][n].clone();
        for j in i + 1..n {
            acc = acc.sub(&aug[i][j].mul(&x[j]));
        }
        x[i] = acc.div(&aug[i][i]);
    }
    Ok(x)
}

/// Determinant via Gaussian elimination with partial pivoting.
pub fn det_gaussian<C: Coefficient>(matrix: Vec<Vec<C>>) -> Result<C, LinalgError> {
    let n = check_square(&matrix, None)?;
    if n == 0 {
        return Ok(C::one());
    }
    let mut m = matrix;
    let mut det = C::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| m[i][k].abs_cmp(&m[j][k]))
            .expect("nonempty range");
        if m[pivot_row][k].is_zero() {
            return Ok(C::zero());
        }
        if pivot_row != k {
            m.swap(k, pivot_row);
            det = det.neg();
        }
        det = det.mul(&m[k][k]);
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = m[i][k].div(&m[k][k]);
            for j in k..n {
                let delta = factor.mul(&m[k][j]);
                m[i][j] = m[i][j].sub(&delta);
            }
        }
    }
    Ok(det)
}

/// Sylvester matrix of `(f, g)`: `deg g` shifted copies of `f`'s
/// coefficient row stacked over `deg f` shifted copies of `g`'s.
fn sylvester<C: Coefficient>(f: &Polynomial<C>, g: &Polynomial<C>) -> Vec<Vec<C>> {
    let n = f.deg();
    let m = g.deg();
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..m {
        let mut row = vec![C::zero(); size];
        for (k, c) in f.coeffs().iter().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..n {
        let mut row = vec![C::zero(); size];
        for (k, c) in g.coeffs().iter().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two nonzero polynomials, as the determinant of their
/// Sylvester matrix. For degree-zero arguments the empty/constant
/// conventions apply: `res(f, c) = c^(deg f)`.
pub fn resultant<C: Coefficient>(
    f: &Polynomial<C>,
    g: &Polynomial<C>,
) -> Result<C, LinalgError> {
    if f.is_zero() || g.is_zero() {
        return Err(LinalgError::ZeroPolynomial);
    }
    if f.deg() == 0 && g.deg() == 0 {
        return Ok(C::one());
    }
    C::det(sylvester(f, g))
}
