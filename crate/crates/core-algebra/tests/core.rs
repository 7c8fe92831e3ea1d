//! Core-layer tests: exact arithmetic canonical forms, algebra axioms on a
//! fixture, and high-precision special functions against independent oracles.

use std::sync::Arc;

use core_algebra::algebra::{AlgElem, AlgebraSpec, Degree};
use core_algebra::gamma::{hp_digamma, hp_gamma, hp_polygamma, spouge_gamma};
use core_algebra::hp::{bits_for_digits, HPComplex};
use core_algebra::numelem::{NamedFn, NumAlgebra, NumElem};
use core_algebra::rat::{rat, rint, PolyL, Rat, RatFuncL};
use num_traits::One;
use rug::Float;

fn rf(p: PolyL) -> RatFuncL {
    RatFuncL::from_poly(p)
}

fn lam_pow(c: Rat, k: usize) -> RatFuncL {
    RatFuncL::lambda_pow(c, k)
}

/// Fixture: the three-dimensional algebra C(l)[p]/<p^3> with pairing
/// (a, b) = [p^2-coefficient of a·b·(1/l + 3p/l^2 + 9p^2/l^3)].
fn local_plane_algebra() -> Arc<AlgebraSpec> {
    let n = 3usize;
    let mut mul = vec![vec![vec![RatFuncL::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mul[i][j][i + j] = RatFuncL::one();
            }
        }
    }
    let inv = |k: usize, c: i64| {
        RatFuncL::new(PolyL::constant(rint(c)), PolyL::monomial(Rat::one(), k)).unwrap()
    };
    let pairing = vec![
        vec![inv(3, 9), inv(2, 3), inv(1, 1)],
        vec![inv(2, 3), inv(1, 1), RatFuncL::zero()],
        vec![inv(1, 1), RatFuncL::zero(), RatFuncL::zero()],
    ];
    AlgebraSpec::new("test-local-plane", vec!["1", "p", "p2"], vec![0, 2, 4], mul, pairing)
        .expect("valid fixture algebra")
}

#[test]
fn ratfunc_canonical_form_and_arithmetic() {
    // (l^2 - 1)/(l - 1) reduces to l + 1.
    let num = PolyL::from_coeffs(vec![rint(-1), rint(0), rint(1)]);
    let den = PolyL::from_coeffs(vec![rint(-1), rint(1)]);
    let r = RatFuncL::new(num, den).unwrap();
    assert!(r.is_polynomial());
    assert_eq!(r.num().coeffs(), &[rint(1), rint(1)]);

    // Monic denominator: (1)/(2l) becomes (1/2)/(l).
    let r = RatFuncL::new(PolyL::one(), PolyL::monomial(rint(2), 1)).unwrap();
    assert_eq!(r.den().leading_coeff(), Rat::one());
    assert_eq!(r.num().coeff(0), rat(1, 2));

    // Field ops.
    let a = lam_pow(rat(3, 4), 2);
    let b = rf(PolyL::from_coeffs(vec![rint(1), rint(2)]));
    let s = &(&a + &b) - &b;
    assert_eq!(s, a);
    let p = &(&a * &b) / &b;
    assert_eq!(p, a);
    assert_eq!(&a - &a, RatFuncL::zero());
}

#[test]
fn ratfunc_nonequivariant_limit() {
    // (3l)/l -> 3.
    let r = RatFuncL::new(PolyL::monomial(rint(3), 1), PolyL::lambda()).unwrap();
    assert_eq!(r.eval_at_zero().unwrap(), rint(3));
    // 1/l -> pole of order 1.
    let r = RatFuncL::new(PolyL::one(), PolyL::lambda()).unwrap();
    match r.eval_at_zero() {
        Err(core_algebra::CoreError::PoleAtLambdaZero { order }) => assert_eq!(order, 1),
        other => panic!("expected pole, got {:?}", other.ok()),
    }
    // (l^2 + l)/l -> 1 after cancellation.
    let num = PolyL::from_coeffs(vec![rint(0), rint(1), rint(1)]);
    let r = RatFuncL::new(num, PolyL::lambda()).unwrap();
    assert_eq!(r.eval_at_zero().unwrap(), rint(1));
}

#[test]
fn ratfunc_text_round_trip() {
    let cases = [
        RatFuncL::zero(),
        RatFuncL::one(),
        lam_pow(rat(-5, 128), 1),
        RatFuncL::new(
            PolyL::from_coeffs(vec![rat(1, 3), rint(-2), rint(7)]),
            PolyL::from_coeffs(vec![rint(0), rint(0), rint(1)]),
        )
        .unwrap(),
        rf(PolyL::from_coeffs(vec![rint(-1), rat(-3, 2)])),
    ];
    for r in &cases {
        let s = r.to_string();
        let back: RatFuncL = s.parse().expect("parse back");
        assert_eq!(&back, r, "round trip failed for {s}");
    }
}

#[test]
fn algebra_axioms_and_duals() {
    let alg = local_plane_algebra();
    assert_eq!(alg.nilpotency(), Some(3));

    // Dual basis rows must be l·p^2, l·p − 3p^2, l − 3p.
    let d = alg.dual_matrix();
    let lam = PolyL::lambda();
    assert_eq!(d[0], vec![RatFuncL::zero(), RatFuncL::zero(), rf(lam.clone())]);
    assert_eq!(
        d[1],
        vec![RatFuncL::zero(), rf(lam.clone()), RatFuncL::constant(rint(-3))]
    );
    assert_eq!(
        d[2],
        vec![rf(lam.clone()), RatFuncL::constant(rint(-3)), RatFuncL::zero()]
    );

    // (Φ_i, Φ^j) = δ_i^j.
    for i in 0..3 {
        for j in 0..3 {
            let phi = AlgElem::basis(alg.clone(), i);
            let dual = AlgElem::dual_basis(alg.clone(), j);
            let v = phi.pairing(&dual).unwrap();
            let expect = if i == j { RatFuncL::one() } else { RatFuncL::zero() };
            assert_eq!(v, expect, "pairing ({i},{j})");
        }
    }
}

#[test]
fn algebra_products_and_degrees() {
    let alg = local_plane_algebra();
    let p = AlgElem::basis(alg.clone(), 1);
    let p2 = AlgElem::basis(alg.clone(), 2);
    let one = AlgElem::unit(alg.clone());

    assert_eq!(p.mul(&p).unwrap(), p2);
    assert!(p2.mul(&p).unwrap().is_zero());
    assert_eq!(one.mul(&p2).unwrap(), p2);

    assert_eq!(p.degree(), Degree::Homogeneous(2));
    assert_eq!(p2.degree(), Degree::Homogeneous(4));
    // l·1 has degree 2.
    let l1 = AlgElem::scalar(alg.clone(), RatFuncL::lambda());
    assert_eq!(l1.degree(), Degree::Homogeneous(2));
    // l − 3p is homogeneous of degree 2; l + p^2 is mixed.
    let lm3p = l1.sub(&p.scale_rat(&rint(3))).unwrap();
    assert_eq!(lm3p.degree(), Degree::Homogeneous(2));
    let mixed = l1.add(&p2).unwrap();
    assert_eq!(mixed.degree(), Degree::Mixed);
    assert_eq!(AlgElem::zero(alg.clone()).degree(), Degree::Zero);
}

#[test]
fn algebra_rejects_bad_data() {
    // Breaking associativity/commutativity must be caught: make p·p = p
    // but p·p2 nonzero asymmetric.
    let n = 3usize;
    let mut mul = vec![vec![vec![RatFuncL::zero(); n]; n]; n];
    for j in 0..n {
        mul[0][j][j] = RatFuncL::one();
        mul[j][0][j] = RatFuncL::one();
    }
    mul[1][2][0] = RatFuncL::one(); // p·p2 = 1: violates grading/associativity
    let pairing = vec![vec![RatFuncL::one(); n]; n];
    assert!(AlgebraSpec::new("bad", vec!["1", "p", "p2"], vec![0, 2, 4], mul, pairing).is_err());
}

#[test]
fn json_round_trip_for_algebra_spec() {
    let alg = local_plane_algebra();
    let doc = alg.to_doc();
    let text = serde_json::to_string_pretty(&doc).unwrap();
    let doc2: core_algebra::algebra::AlgebraSpecDoc = serde_json::from_str(&text).unwrap();
    let alg2 = AlgebraSpec::from_doc(&doc2).unwrap();
    assert_eq!(*alg, *alg2);
    assert_eq!(serde_json::to_string_pretty(&alg2.to_doc()).unwrap(), text);
}

// ---------------------------------------------------------------------------
// High-precision special functions
// ---------------------------------------------------------------------------

const DIGITS: u32 = 60;

fn tol(digits: u32) -> Float {
    let prec = bits_for_digits(digits);
    Float::with_val(prec, 10f64).pow_i(-(digits as i32 - 1))
}

trait PowI {
    fn pow_i(self, e: i32) -> Float;
}
impl PowI for Float {
    fn pow_i(self, e: i32) -> Float {
        use rug::ops::Pow;
        let prec = self.prec();
        Float::with_val(prec, self.pow(e))
    }
}

#[test]
fn gamma_classical_values() {
    let prec = bits_for_digits(DIGITS);
    let half = HPComplex::from_f64(0.5, prec);
    let g = hp_gamma(&half, DIGITS).unwrap();
    let sqrt_pi = HPComplex::pi(prec).sqrt();
    assert!(g.im.clone().abs() < tol(DIGITS));
    assert!(Float::with_val(prec, &g.re - &sqrt_pi).abs() < tol(DIGITS));

    // Γ(1) = 1, Γ(5) = 24.
    let one = HPComplex::one(prec);
    let g1 = hp_gamma(&one, DIGITS).unwrap();
    assert!(g1.dist(&one) < tol(DIGITS));
    let five = HPComplex::from_i64(5, prec);
    let g5 = hp_gamma(&five, DIGITS).unwrap();
    assert!(g5.dist(&HPComplex::from_i64(24, prec)) < tol(DIGITS));
}

#[test]
fn gamma_matches_mpfr_on_real_axis() {
    let prec = bits_for_digits(DIGITS);
    for k in 1..40u32 {
        let x = 0.13_f64 + 0.35 * k as f64;
        let z = HPComplex::from_f64(x, prec);
        let ours = hp_gamma(&z, DIGITS).unwrap();
        let mpfr = Float::with_val(prec, x).gamma();
        let rel = (Float::with_val(prec, &ours.re - &mpfr) / &mpfr).abs();
        assert!(rel < tol(DIGITS), "gamma mismatch at x={x}: rel={rel}");
        assert!(ours.im.clone().abs() < tol(DIGITS));

        let ours_d = hp_digamma(&z, DIGITS).unwrap();
        let mpfr_d = Float::with_val(prec, x).digamma();
        assert!(
            Float::with_val(prec, &ours_d.re - &mpfr_d).abs() < tol(DIGITS - 5),
            "digamma mismatch at x={x}"
        );
    }
}

#[test]
fn gamma_agrees_with_independent_spouge_route() {
    // Two independent algorithms agree to 1e-50 on a grid of complex points,
    // including Γ(1/3) and Γ(2/3) which enter the printed limit matrices.
    let digits = 55u32;
    let prec = bits_for_digits(digits);
    let mut points = vec![
        HPComplex::from_rat(&rat(1, 3), prec),
        HPComplex::from_rat(&rat(2, 3), prec),
        HPComplex::from_rat(&rat(1, 4), prec),
    ];
    for k in 0..20 {
        let re = -2.3 + 0.47 * k as f64;
        let im = -1.9 + 0.21 * k as f64;
        points.push(HPComplex::new(
            Float::with_val(prec, re),
            Float::with_val(prec, im),
        ));
    }
    let target = Float::with_val(prec, 10f64).pow_i(-50);
    for z in &points {
        let a = hp_gamma(z, digits).unwrap();
        let b = spouge_gamma(z, digits).unwrap();
        let rel = Float::with_val(prec, a.dist(&b) / a.abs());
        assert!(rel < target, "gamma routes disagree at {:?}: {rel}", z);
    }
}

#[test]
fn gamma_reflection_identity_random_points() {
    // hp_gamma(x)·hp_gamma(1−x)·sin(πx)/π = 1 for 100 pseudo-random x.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let prec = bits_for_digits(DIGITS);
    let pi = HPComplex::from_real(HPComplex::pi(prec));
    let one = HPComplex::one(prec);
    for _ in 0..100 {
        let re: f64 = rng.gen_range(-3.0..3.0);
        let im: f64 = rng.gen_range(-3.0..3.0);
        let z = HPComplex::new(Float::with_val(prec, re), Float::with_val(prec, im));
        // Avoid integer poles on the real axis.
        if z.im.clone().abs() < 1e-2 {
            continue;
        }
        let g = hp_gamma(&z, DIGITS).unwrap();
        let gr = hp_gamma(&(&one - &z), DIGITS).unwrap();
        let s = (&pi * &z).sin();
        let prod = &(&(&g * &gr) * &s) / &pi;
        assert!(prod.dist(&one) < tol(DIGITS - 4), "reflection failed at {:?}", z);
    }
}

#[test]
fn digamma_and_polygamma_classical_values() {
    let prec = bits_for_digits(DIGITS);
    let one = HPComplex::one(prec);

    // ψ(1) = −γ.
    let d = hp_digamma(&one, DIGITS).unwrap();
    let euler = Float::with_val(prec, rug::float::Constant::Euler);
    assert!(Float::with_val(prec, &d.re + &euler).abs() < tol(DIGITS));

    // ψ'(1) = π²/6, ψ''(1) = −2ζ(3), ψ'''(1) = π⁴/15, ψ''''(1) = −24ζ(5).
    let pi = HPComplex::pi(prec);
    let p1 = hp_polygamma(&one, 1, DIGITS).unwrap();
    let want = Float::with_val(prec, &pi * &pi) / 6u32;
    assert!(Float::with_val(prec, &p1.re - &want).abs() < tol(DIGITS - 2));

    let p2 = hp_polygamma(&one, 2, DIGITS).unwrap();
    let zeta3 = Float::with_val(prec, 3f64).zeta();
    let want = Float::with_val(prec, -2 * &zeta3);
    assert!(Float::with_val(prec, &p2.re - &want).abs() < tol(DIGITS - 2));

    let p3 = hp_polygamma(&one, 3, DIGITS).unwrap();
    let pi4 = Float::with_val(prec, &pi * &pi);
    let pi4 = Float::with_val(prec, &pi4 * &pi4);
    let want = pi4 / 15u32;
    assert!(Float::with_val(prec, &p3.re - &want).abs() < tol(DIGITS - 2));

    let p4 = hp_polygamma(&one, 4, DIGITS).unwrap();
    let zeta5 = Float::with_val(prec, 5f64).zeta();
    let want = Float::with_val(prec, -24 * &zeta5);
    assert!(Float::with_val(prec, &p4.re - &want).abs() < tol(DIGITS - 2));
}

#[test]
fn gamma_pole_is_an_error() {
    let prec = bits_for_digits(DIGITS);
    for n in [0i64, -1, -2, -7] {
        let z = HPComplex::from_i64(n, prec);
        assert!(hp_gamma(&z, DIGITS).is_err());
        assert!(hp_digamma(&z, DIGITS).is_err());
    }
}

// ---------------------------------------------------------------------------
// eval on scalar-plus-nilpotent elements
// ---------------------------------------------------------------------------

fn num_fixture(lam_re: f64, digits: u32) -> Arc<NumAlgebra> {
    let prec = bits_for_digits(digits);
    NumAlgebra::new(local_plane_algebra(), HPComplex::from_f64(lam_re, prec))
}

#[test]
fn eval_gamma_at_unit_is_one() {
    let alg = num_fixture(1.0, DIGITS);
    let one = NumElem::unit(alg.clone());
    let g = one.eval_fn(&NamedFn::Gamma, DIGITS).unwrap();
    assert!(g.sub(&one).max_abs() < tol(DIGITS));
}

#[test]
fn eval_exp_inverse_identity() {
    let alg = num_fixture(0.7, DIGITS);
    let prec = alg.prec();
    // a = 0.3 + 1.7 p − 0.4 p²
    let a = NumElem::new(
        alg.clone(),
        vec![
            HPComplex::from_f64(0.3, prec),
            HPComplex::from_f64(1.7, prec),
            HPComplex::from_f64(-0.4, prec),
        ],
    )
    .unwrap();
    let e = a.eval_fn(&NamedFn::Exp, DIGITS).unwrap();
    let einv = a.neg().eval_fn(&NamedFn::Exp, DIGITS).unwrap();
    let prod = e.mul(&einv);
    let one = NumElem::unit(alg);
    assert!(prod.sub(&one).max_abs() < tol(DIGITS - 3));
}

#[test]
fn eval_sin_taylor_identity() {
    // sin(π(x + n)) = sin(πx) + πn cos(πx) − (πn)²/2 sin(πx), n = p-part.
    let alg = num_fixture(0.9, DIGITS);
    let prec = alg.prec();
    let x = HPComplex::from_f64(0.37, prec);
    let pi = HPComplex::from_real(HPComplex::pi(prec));
    let arg = NumElem::new(
        alg.clone(),
        vec![
            &pi * &x,
            pi.clone(),
            HPComplex::zero(prec),
        ],
    )
    .unwrap();
    let s = arg.eval_fn(&NamedFn::Sin, DIGITS).unwrap();
    let sin_px = (&pi * &x).sin();
    let cos_px = (&pi * &x).cos();
    assert!(s.coeff(0).dist(&sin_px) < tol(DIGITS - 2));
    assert!(s.coeff(1).dist(&(&pi * &cos_px)) < tol(DIGITS - 2));
    let half_pi2 = &(&pi * &pi) * &HPComplex::from_f64(-0.5, prec);
    assert!(s.coeff(2).dist(&(&half_pi2 * &sin_px)) < tol(DIGITS - 2));
}

#[test]
fn eval_gamma_cubed_matches_finite_difference_oracle() {
    // Γ(1 − p/z)³ at z = 1: component of p^j must match the j-th Taylor
    // coefficient of t ↦ Γ(1 − t)³ computed by MPFR central differences.
    let digits = 60u32;
    let alg = num_fixture(1.0, digits);
    let prec = alg.prec();
    let one_minus_p = NumElem::new(
        alg.clone(),
        vec![
            HPComplex::one(prec),
            HPComplex::from_i64(-1, prec),
            HPComplex::zero(prec),
        ],
    )
    .unwrap();
    let g = one_minus_p.eval_fn(&NamedFn::Gamma, digits).unwrap();
    let g3 = g.mul(&g).mul(&g);

    // Oracle: f(t) = Γ(1−t)³ with MPFR real gamma at very high precision.
    let oprec = bits_for_digits(200);
    let f = |t: &Float| -> Float {
        let x = Float::with_val(oprec, 1) - t;
        let g = x.gamma();
        Float::with_val(oprec, &g * &g) * &g
    };
    let h = Float::with_val(oprec, 10f64).pow_i(-40);
    let zero = Float::with_val(oprec, 0);
    let f0 = f(&zero);
    let fp = f(&h);
    let fm = f(&(-h.clone()));
    let d1 = Float::with_val(oprec, &fp - &fm) / Float::with_val(oprec, 2 * &h);
    let d2 = (Float::with_val(oprec, &fp + &fm) - Float::with_val(oprec, 2 * &f0))
        / Float::with_val(oprec, &h * &h);

    let t = tol(digits - 5);
    assert!(Float::with_val(prec, &g3.coeff(0).re - &f0).abs() < t);
    assert!(Float::with_val(prec, &g3.coeff(1).re - &d1).abs() < t);
    let half_d2 = d2 / 2u32;
    assert!(Float::with_val(prec, &g3.coeff(2).re - &half_d2).abs() < t);
    // And the leading coefficient is exactly 1 = Γ(1)³.
    assert!(g3.coeff(0).dist(&HPComplex::one(prec)) < t);
}

#[test]
fn recip_gamma_entire_at_poles() {
    // 1/Γ at a nonpositive-integer scalar part: finite, scalar part 0.
    let alg = num_fixture(1.3, DIGITS);
    let prec = alg.prec();
    let a = NumElem::new(
        alg.clone(),
        vec![
            HPComplex::from_i64(-2, prec),
            HPComplex::one(prec),
            HPComplex::zero(prec),
        ],
    )
    .unwrap();
    let r = a.eval_fn(&NamedFn::RecipGamma, DIGITS).unwrap();
    assert!(r.coeff(0).abs() < tol(DIGITS - 2));
    // d/dt [1/Γ(t)] at t = −2 equals (−1)^2·2! = 2.
    assert!(r.coeff(1).dist(&HPComplex::from_i64(2, prec)) < tol(DIGITS - 4));
}

/// Fixture: C(l)[u]/<u^2(u+l)>, basis (1, u, u^2). The positive-degree part
/// is not nilpotent (u^3 = -l·u^2), so functional calculus needs the
/// two-point spectral decomposition: a double point at u = 0 and a simple
/// point at u = -l with idempotent u^2/l^2.
fn non_nilpotent_line_algebra(
    with_spectrum: bool,
) -> Result<Arc<AlgebraSpec>, core_algebra::CoreError> {
    let n = 3usize;
    let z = RatFuncL::zero;
    let one = RatFuncL::one;
    let mut mul = vec![vec![vec![z(); n]; n]; n];
    for j in 0..n {
        mul[0][j][j] = one();
        mul[j][0][j] = one();
    }
    // u·u = u^2; u·u^2 = u^3 = -l u^2; u^2·u^2 = l^2 u^2.
    mul[1][1][2] = one();
    mul[1][2][2] = rf(PolyL::monomial(rint(-1), 1));
    mul[2][1][2] = mul[1][2][2].clone();
    mul[2][2][2] = rf(PolyL::monomial(rint(1), 2));
    // Trace form from the functional θ(1) = 0, θ(u) = 0, θ(u^2) = 1.
    let neg_l = rf(PolyL::monomial(rint(-1), 1));
    let l_sq = rf(PolyL::monomial(rint(1), 2));
    let pairing = vec![
        vec![z(), z(), one()],
        vec![z(), one(), neg_l],
        vec![one(), rf(PolyL::monomial(rint(-1), 1)), l_sq],
    ];
    let spectrum = if with_spectrum {
        let inv_l2 = RatFuncL::new(PolyL::constant(Rat::one()), PolyL::monomial(Rat::one(), 2))
            .unwrap();
        // e1 = u^2/l^2 at the point u = -l; e0 = 1 - u^2/l^2 at u = 0.
        let e1 = vec![z(), z(), inv_l2.clone()];
        let e0 = vec![one(), z(), -&inv_l2];
        let chi0 = vec![one(), z(), z()];
        let chi1 = vec![
            one(),
            rf(PolyL::monomial(rint(-1), 1)),
            rf(PolyL::monomial(rint(1), 2)),
        ];
        Some(vec![(e0, chi0), (e1, chi1)])
    } else {
        None
    };
    AlgebraSpec::new_with_spectrum(
        "test-non-nilpotent-line",
        vec!["1", "u", "u2"],
        vec![0, 2, 4],
        mul,
        pairing,
        spectrum,
    )
}

#[test]
fn non_nilpotent_algebra_without_spectrum_has_no_calculus() {
    let alg = non_nilpotent_line_algebra(false).expect("algebra itself is valid");
    assert_eq!(alg.nilpotency(), None);
    let prec = bits_for_digits(DIGITS);
    let lam = HPComplex::from_f64(0.75, prec);
    let nalg = NumAlgebra::new(alg, lam);
    let a = NumElem::basis(nalg, 1);
    assert!(a.eval_fn(&NamedFn::Exp, DIGITS).is_err());
}

#[test]
fn spectral_calculus_exp_matches_power_series() {
    let alg = non_nilpotent_line_algebra(true).expect("valid spectral data");
    // Double point contributes order 2, simple point order 1.
    assert_eq!(alg.nilpotency(), Some(2));
    let prec = bits_for_digits(DIGITS);
    let lam = HPComplex::new(Float::with_val(prec, 0.75), Float::with_val(prec, 0.25));
    let nalg = NumAlgebra::new(alg, lam);
    let u = NumElem::basis(nalg.clone(), 1);
    let got = u.eval_fn(&NamedFn::Exp, DIGITS).unwrap();
    // Oracle: the power series Σ u^k/k! converges (eigenvalues 0, -l).
    let mut sum = NumElem::unit(nalg.clone());
    let mut term = NumElem::unit(nalg);
    for k in 1..200u32 {
        term = term.mul(&u).scale(&HPComplex::from_i64(k as i64, prec).recip());
        sum = sum.add(&term);
    }
    for i in 0..3 {
        assert!(got.coeff(i).dist(sum.coeff(i)) < tol(DIGITS - 3));
    }
}

#[test]
fn spectral_calculus_gamma_functional_equation() {
    let alg = non_nilpotent_line_algebra(true).expect("valid spectral data");
    let prec = bits_for_digits(DIGITS);
    let lam = HPComplex::from_f64(0.375, prec);
    let nalg = NumAlgebra::new(alg, lam);
    // a = 2 + u has spectrum {2 (double), 2 - l}; Γ(a + 1) = a·Γ(a).
    let two = NumElem::unit(nalg.clone()).scale(&HPComplex::from_i64(2, prec));
    let a = two.add(&NumElem::basis(nalg.clone(), 1));
    let lhs = a
        .add(&NumElem::unit(nalg.clone()))
        .eval_fn(&NamedFn::Gamma, DIGITS)
        .unwrap();
    let rhs = a.mul(&a.eval_fn(&NamedFn::Gamma, DIGITS).unwrap());
    for i in 0..3 {
        assert!(lhs.coeff(i).dist(rhs.coeff(i)) < tol(DIGITS - 3));
    }
}
