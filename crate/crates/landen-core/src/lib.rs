//! Exact evaluation of ∫ℝ B(x)/A(x) dx by iterated coefficient maps.
//!
//! The engine implements rational Landen transformations: order-m maps on
//! the 2p coefficients of a rational integrand B/A (deg A = p even, A
//! without real roots, deg B ≤ p−2) that leave the integral over the real
//! line unchanged. Iterating the map drives the normalized coefficient
//! vector to a binomial fixed point at rate m, and the integral falls out
//! as π·b₀/a₀ — no root finding anywhere on the main path.
//!
//! Module map:
//! - [`coeff`], [`float`]: exact-rational and big-float scalar backends;
//! - [`poly`]: dense polynomial arithmetic over either backend;
//! - [`special`]: the cotangent-multiplier polynomial families and the
//!   combinatorial tables the transform formulas consume;
//! - [`linalg`], [`sturm`]: fraction-free solvers, resultants, and real
//!   root counting;
//! - [`scaling`]: the denominator-scaling step (A·Z homogeneous in the
//!   multiplier pair), built by exact linear algebra;
//! - [`transform`]: one Landen step B/A ↦ J/H;
//! - [`iteration`]: the fixed-point loop, norms, and order estimation;
//! - [`oracle`]: independent ground truth (residues, quadrature, and a
//!   root-based reconstruction of the scaling output).

pub mod coeff;
pub mod float;
pub mod iteration;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod scaling;
pub mod special;
pub mod sturm;
pub mod transform;

pub use coeff::{Coefficient, Sci};
pub use float::FloatNum;
pub use iteration::{iterate, ConvergenceReport, IterateConfig};
pub use linalg::{resultant, LinalgError};
pub use oracle::{integral_by_quadrature, integral_by_residues, OracleError};
pub use poly::Polynomial;
pub use transform::{landen_transform, RationalIntegrand, TransformResult};
