//! Helpers shared by the integration suites: fixed example integrands,
//! deterministic random generators, identity checkers for the cotangent
//! polynomial families, and oracle cross-check utilities.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use landen_core::coeff::Coefficient;
use landen_core::iteration::{iterate, ConvergenceReport, ErrorRef, IterateConfig};
use landen_core::oracle::{
    e_by_symmetric_functions, find_roots, integral_by_quadrature, integral_by_residues,
    vanishing_moment_check,
};
use landen_core::scaling::{build_scaling, LandenOrderParams};
use landen_core::special::{make_cot_pair, make_star_pair, CotangentPolyPair};
use landen_core::transform::{landen_transform, m1_prefactor, RationalIntegrand};
use landen_core::Polynomial;

// ---------------------------------------------------------------------------
// Fixed example integrands
// ---------------------------------------------------------------------------

/// (x²+x+1)/(x⁴+6x³+29x²+60x+100); the integral is 38π/(31√31).
pub const QUARTIC_B: &[i64] = &[1, 1, 1];
pub const QUARTIC_A: &[i64] = &[1, 6, 29, 60, 100];

/// (3x+5)/(x⁴+14x³+74x²+184x+208); the integral is −7π/12.
pub const DEMO_B: &[i64] = &[3, 5];
pub const DEMO_A: &[i64] = &[1, 14, 74, 184, 208];

/// (x+2)²/[(x+2)²(x²+6x+13)²]; the reduced integral is π/16.  The common
/// square factor puts removable real zeros in the denominator, so this one
/// must bypass validation.
pub const SEXTIC_B: &[i64] = &[1, 4, 4];
pub const SEXTIC_A: &[i64] = &[1, 16, 114, 452, 1041, 1300, 676];

pub const VALUE_QUARTIC: f64 = 0.691_657_241_965_725_6; // 38π/(31√31)
pub const VALUE_DEMO: f64 = -1.832_595_714_594_046; // −7π/12
pub const VALUE_SEXTIC: f64 = 0.196_349_540_849_362_07; // π/16

pub fn ipoly(coeffs: &[i64]) -> Polynomial<BigRational> {
    Polynomial::from_i64s(coeffs)
}

pub fn integrand(b: &[i64], a: &[i64]) -> RationalIntegrand<BigRational> {
    RationalIntegrand::new(ipoly(b), ipoly(a)).unwrap()
}

pub fn validated_integrand(b: &[i64], a: &[i64]) -> RationalIntegrand<BigRational> {
    RationalIntegrand::validated(ipoly(b), ipoly(a)).unwrap()
}

// ---------------------------------------------------------------------------
// Deterministic random integrands
// ---------------------------------------------------------------------------

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A quadratic a₀x²+a₁x+a₂ with integer coefficients and 4a₀a₂ > a₁².
pub fn random_pole_free_quadratic(rng: &mut ChaCha8Rng) -> [i64; 3] {
    let a0 = rng.gen_range(1..=9);
    let a1 = rng.gen_range(-9..=9);
    let a2 = a1 * a1 / (4 * a0) + 1 + rng.gen_range(0..=9);
    [a0, a1, a2]
}

/// A degree-2q integer polynomial with no real roots: a product of q
/// negative-discriminant quadratics.
pub fn random_denominator(rng: &mut ChaCha8Rng, q: usize) -> Polynomial<BigRational> {
    let mut a = Polynomial::one();
    for _ in 0..q {
        a = a.mul(&ipoly(&random_pole_free_quadratic(rng)));
    }
    a
}

/// A nonnegative numerator of degree exactly p−2: the square of a random
/// integer polynomial of degree p/2−1.  Squaring keeps the integral well
/// away from zero, so relative oracle comparisons stay meaningful.
pub fn random_squared_numerator(rng: &mut ChaCha8Rng, p: usize) -> Polynomial<BigRational> {
    let half = p / 2 - 1;
    let mut coeffs = Vec::with_capacity(half + 1);
    coeffs.push(rng.gen_range(1..=9));
    for _ in 0..half {
        coeffs.push(rng.gen_range(-9..=9));
    }
    let root = ipoly(&coeffs);
    root.mul(&root)
}

// ---------------------------------------------------------------------------
// Numeric comparison utilities
// ---------------------------------------------------------------------------

pub fn rel_gap(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(1e-300)
}

/// Largest pairwise deviation within `vals`, relative to the largest value.
pub fn set_gap(vals: &[f64]) -> f64 {
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    let mut worst = 0.0f64;
    for (i, x) in vals.iter().enumerate() {
        for y in &vals[i + 1..] {
            worst = worst.max((x - y).abs() / scale);
        }
    }
    worst
}

/// Agreement to three significant figures, as a relative band.
pub fn sig3_agree(mine: f64, printed: f64) -> bool {
    (mine - printed).abs() <= 5e-3 * printed.abs()
}

fn horner_c(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs {
        acc = acc * z + c;
    }
    acc
}

fn horner_r(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

// ---------------------------------------------------------------------------
// Cotangent-family identity checkers
// ---------------------------------------------------------------------------

pub fn cot_pair(m: usize) -> CotangentPolyPair<BigRational> {
    make_cot_pair(m).unwrap()
}

/// x^deg · F(1/x): the reversal of F into the degree-`deg` frame.
pub fn reversed_to_degree(f: &Polynomial<BigRational>, deg: usize) -> Polynomial<BigRational> {
    let coeffs: Vec<BigRational> = (0..=deg).map(|k| f.coeff_of_power(k)).collect();
    Polynomial::from_coeffs(coeffs)
}

/// Worst deviation of P_m(cot θ)/Q_m(cot θ) from cot(mθ) over an open grid,
/// skipping points too close to the poles of either side.
pub fn cot_identity_max_dev(m: usize, samples: usize) -> f64 {
    let pair = cot_pair(m);
    let p: Vec<f64> = pair.p_m.to_f64_coeffs();
    let q: Vec<f64> = pair.q_m.to_f64_coeffs();
    let mut worst = 0.0f64;
    for i in 0..samples {
        let theta = std::f64::consts::PI * (i as f64 + 0.37) / (samples as f64);
        let (sm, cm) = (theta * m as f64).sin_cos();
        if theta.sin().abs() < 0.03 || sm.abs() < 0.03 {
            continue;
        }
        let x = theta.cos() / theta.sin();
        let lhs = horner_r(&p, x) / horner_r(&q, x);
        let rhs = cm / sm;
        worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1.0));
    }
    worst
}

/// Same identity through the reversed pair: P*_m(tan θ)/Q*_m(tan θ) is also
/// cot(mθ), because substituting 1/x cancels the common reversal power.
pub fn star_identity_max_dev(m: usize, samples: usize) -> f64 {
    let (ps, qs) = make_star_pair::<BigRational>(m).unwrap();
    let p: Vec<f64> = ps.to_f64_coeffs();
    let q: Vec<f64> = qs.to_f64_coeffs();
    let mut worst = 0.0f64;
    for i in 0..samples {
        let theta = std::f64::consts::PI * (i as f64 + 0.37) / (samples as f64);
        let (sm, cm) = (theta * m as f64).sin_cos();
        if theta.cos().abs() < 0.03 || sm.abs() < 0.03 {
            continue;
        }
        let t = theta.sin() / theta.cos();
        let lhs = horner_r(&p, t) / horner_r(&q, t);
        let rhs = cm / sm;
        worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1.0));
    }
    worst
}

/// Exact check that composing the multiplier maps multiplies the orders:
/// R_n ∘ R_m = R_{nm} as rational functions, verified by cross-multiplying
/// the numerator/denominator pairs after clearing Q_m powers.
pub fn composition_cross_check(n: usize, m: usize) -> bool {
    let outer = cot_pair(n);
    let inner = cot_pair(m);
    let target = cot_pair(n * m);

    // Q_m^n · P_n(P_m/Q_m) and Q_m^n · Q_n(P_m/Q_m), both polynomials.
    let mut num = Polynomial::zero();
    for j in 0..=n {
        let c = outer.p_m.coeff_of_power(j);
        if c.is_zero() {
            continue;
        }
        let term = inner.p_m.pow(j as u32).mul(&inner.q_m.pow((n - j) as u32));
        num = num.add(&term.scale(&c));
    }
    let mut den = Polynomial::zero();
    for j in 0..n {
        let c = outer.q_m.coeff_of_power(j);
        if c.is_zero() {
            continue;
        }
        let term = inner.p_m.pow(j as u32).mul(&inner.q_m.pow((n - j) as u32));
        den = den.add(&term.scale(&c));
    }
    num.mul(&target.q_m) == den.mul(&target.p_m)
}

/// Exact even-family basis change: P_{2α}(y) = Σ_β c_β (1+y²)^β with the
/// tabulated integer coefficients.
pub fn shifted_basis_even_holds(alpha: usize) -> bool {
    let coeffs = landen_core::transform::p2alpha_in_shifted_basis(alpha);
    let base = ipoly(&[1, 0, 1]); // 1+y²  (descending)
    let mut total: Polynomial<BigRational> = Polynomial::zero();
    for (beta, c) in coeffs.iter().enumerate() {
        let c = BigRational::from_integer(c.clone());
        total = total.add(&base.pow(beta as u32).scale(&c));
    }
    total == cot_pair(2 * alpha).p_m
}

/// Exact odd-family basis change: Q_{2α}(y) = Σ_β d_β · y·(1+y²)^(α−1−β).
pub fn shifted_basis_odd_holds(alpha: usize) -> bool {
    let coeffs = landen_core::transform::q2alpha_in_shifted_basis(alpha);
    let base = ipoly(&[1, 0, 1]);
    let y = ipoly(&[1, 0]);
    let mut total: Polynomial<BigRational> = Polynomial::zero();
    for (beta, c) in coeffs.iter().enumerate() {
        let c = BigRational::from_integer(c.clone());
        total = total.add(&y.mul(&base.pow((alpha - 1 - beta) as u32)).scale(&c));
    }
    total == cot_pair(2 * alpha).q_m
}

/// The prefactor's two faces agree: (2α−β)·Σ_j C(2α,2j)C(α−j,β) equals
/// α·C(2α−β,β)·2^(2(α−β)) for α ≥ 1, and the sum alone is 1 at (0,0).
pub fn prefactor_closed_form_holds(alpha: usize, beta: usize) -> bool {
    use num_traits::One;
    let lhs = m1_prefactor(alpha, beta);
    if alpha == 0 {
        return beta == 0 && lhs.is_one() || beta > 0 && lhs == BigInt::from(0);
    }
    if beta > alpha {
        return lhs == BigInt::from(0);
    }
    let choose = landen_core::special::binomial(2 * alpha - beta, beta);
    let pow: BigInt = BigInt::one() << (2 * (alpha - beta));
    lhs * BigInt::from((2 * alpha - beta) as i64) == BigInt::from(alpha as i64) * choose * pow
}

/// Worst float deviation of the product-to-sum linearization of
/// cos^a·sin^b against direct evaluation.
pub fn linearize_max_dev(a: usize, b: usize, samples: usize) -> f64 {
    let terms = landen_core::special::linearize_sin_cos(a, b);
    let mut worst = 0.0f64;
    for i in 0..samples {
        let u = 2.0 * std::f64::consts::PI * (i as f64 + 0.19) / (samples as f64);
        let direct = u.sin().powi(a as i32) * u.cos().powi(b as i32);
        let linear: f64 = terms.iter().map(|t| t.eval_f64(u)).sum();
        worst = worst.max((direct - linear).abs());
    }
    worst
}

// ---------------------------------------------------------------------------
// Oracle cross-check helpers
// ---------------------------------------------------------------------------

/// Transform invariance measured externally: the residue and quadrature
/// oracles must agree on both B/A and its order-m image.  Returns the
/// largest pairwise relative gap among the four values.
pub fn transform_invariance_gap(r: &RationalIntegrand<BigRational>, m: usize) -> f64 {
    let t = landen_transform(r, m).unwrap();
    let image = RationalIntegrand::new(t.j.clone(), t.h.clone()).unwrap();
    let vals = [
        integral_by_residues(r).unwrap(),
        integral_by_quadrature(r).unwrap(),
        integral_by_residues(&image).unwrap(),
        integral_by_quadrature(&image).unwrap(),
    ];
    set_gap(&vals)
}

/// Both oracle values for one integrand, as a pair gap.
pub fn oracle_pair_gap(r: &RationalIntegrand<BigRational>) -> f64 {
    rel_gap(
        integral_by_residues(r).unwrap(),
        integral_by_quadrature(r).unwrap(),
    )
}

/// Relative disagreement between the root-based e-vector reconstruction and
/// the exact linear-algebra scaling, normalized by the largest entry.
pub fn e_agreement_rel(a: &Polynomial<BigRational>, m: usize) -> f64 {
    let p = a.deg();
    let params = LandenOrderParams::new(m, p).unwrap();
    let exact = build_scaling(a, params).unwrap();
    let from_roots = e_by_symmetric_functions(a, m).unwrap();
    let exact_f: Vec<f64> = exact.e.iter().map(|c| c.to_f64()).collect();
    let scale = exact_f.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    exact_f
        .iter()
        .zip(&from_roots)
        .fold(0.0f64, |worst, (x, y)| worst.max((x - y).abs() / scale))
}

/// The image denominator H(y) = Σ e_l y^(p−l) must vanish at the multiplier
/// images of A's roots.  Returns the worst |H(R_m(x_j))| after scaling H to
/// unit largest coefficient and damping by the image magnitude.
pub fn root_image_rel_max(a: &Polynomial<BigRational>, m: usize) -> f64 {
    let p = a.deg();
    let params = LandenOrderParams::new(m, p).unwrap();
    let scaling = build_scaling(a, params).unwrap();
    let e: Vec<f64> = scaling.e.iter().map(|c| c.to_f64()).collect();
    let scale = e.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let h: Vec<f64> = e.iter().map(|c| c / scale).collect();

    let pair = cot_pair(m);
    let pm = pair.p_m.to_f64_coeffs();
    let qm = pair.q_m.to_f64_coeffs();
    let roots = find_roots(a).unwrap();
    let mut worst = 0.0f64;
    for root in &roots.roots {
        let y = horner_c(&pm, root.value) / horner_c(&qm, root.value);
        let damp = (1.0 + y.norm()).powi(p as i32);
        worst = worst.max(horner_c(&h, y).norm() / damp);
    }
    worst
}

/// Largest trigonometric moment of 1/ET over k not divisible by m, with the
/// e-vector scaled to unit largest entry so the threshold is scale-free.
pub fn off_multiple_moment_max(a: &Polynomial<BigRational>, m: usize) -> f64 {
    let p = a.deg();
    let params = LandenOrderParams::new(m, p).unwrap();
    let scaling = build_scaling(a, params).unwrap();
    let e: Vec<f64> = scaling.e.iter().map(|c| c.to_f64()).collect();
    let scale = e.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let e: Vec<f64> = e.iter().map(|c| c / scale).collect();
    let mut worst = 0.0f64;
    for k in 1..=2 * m {
        if k % m == 0 {
            continue;
        }
        let (s, c) = vanishing_moment_check(&e, m, p, k).unwrap();
        worst = worst.max(s.abs()).max(c.abs());
    }
    worst
}

// ---------------------------------------------------------------------------
// Convergence-table runs
// ---------------------------------------------------------------------------

/// Runs the order-m iteration on (3x+5)/(x⁴+14x³+74x²+184x+208) for exactly
/// `steps` steps, with the per-step error measured against the exact ratio
/// −7/12.
pub fn run_demo_table(m: usize, steps: usize) -> ConvergenceReport<BigRational> {
    let r = validated_integrand(DEMO_B, DEMO_A);
    let cfg = IterateConfig {
        tolerance: 1e-300,
        max_steps: steps,
        validate: true,
        reduce_each_step: false,
        divergence_window: 5,
        error_ref: ErrorRef::ExactRatio(BigRational::new(BigInt::from(-7), BigInt::from(12))),
    };
    iterate(&r, m, &cfg).unwrap()
}

/// Exact relative gap between a report's final ratio b₀/a₀ and num/den,
/// returned as a float for thresholding.
pub fn final_ratio_rel_gap(
    report: &ConvergenceReport<BigRational>,
    num: i64,
    den: i64,
) -> f64 {
    let reference = BigRational::new(BigInt::from(num), BigInt::from(den));
    let ratio = report.final_ratio().expect("at least one step");
    let gap = ratio.sub(&reference).div(&reference);
    landen_core::Sci::from_rational(&gap).to_f64().abs()
}

// ---------------------------------------------------------------------------
// Reference convergence tables (frozen expected values)
// ---------------------------------------------------------------------------

/// Rows of (l2, linf, rel_error, size) per step for the three reference
/// runs on (3x+5)/(x⁴+14x³+74x²+184x+208).
pub type TableRow = (f64, f64, f64, u64);

pub const TABLE_ORDER_2: &[TableRow] = &[
    (58.7171, 69.1000, 1.02060, 5),
    (7.444927, 9.64324, 1.04473, 10),
    (4.04691, 5.36256, 0.945481, 18),
    (1.81592, 2.41858, 1.15092, 41),
    (0.360422, 0.411437, 0.262511, 82),
    (0.0298892, 0.0249128, 0.0189903, 164),
    (0.000256824, 0.000299728, 0.0000362352, 327),
    (1.92454e-8, 2.24568e-8, 1.47053e-8, 659),
    (1.0823e-16, 1.2609e-16, 8.2207e-17, 1318),
];

pub const TABLE_ORDER_3: &[TableRow] = &[
    (15.2207, 20.2945, 1.03511, 8),
    (1.97988, 1.83067, 0.859941, 23),
    (0.41100, 0.338358, 0.197044, 69),
    (0.00842346, 0.00815475, 0.00597363, 208),
    (5.05016e-8, 5.75969e-8, 1.64059e-9, 626),
    (1.09651e-23, 1.02510e-23, 3.86286e-24, 1878),
    (1.12238e-70, 1.22843e-70, 8.59237e-71, 5634),
];

pub const TABLE_ORDER_4: &[TableRow] = &[
    (7.44927, 9.64324, 1.04473, 10),
    (1.81592, 2.41858, 1.15092, 41),
    (0.0298892, 0.0249128, 0.0189903, 164),
    (1.92454e-8, 2.249128e-8, 1.47053e-8, 659),
    (3.40769e-33, 3.96407e-33, 2.56817e-33, 2637),
];

pub fn reference_tables() -> [(usize, &'static [TableRow]); 3] {
    [(2, TABLE_ORDER_2), (3, TABLE_ORDER_3), (4, TABLE_ORDER_4)]
}
