//! Series-layer tests: ring axioms via independent convolution oracles,
//! Euler-operator action and the Leibniz rule, formal map inversion against
//! frozen coefficients, substitution round trips, and exp-correction
//! identities.

use std::sync::Arc;

use core_algebra::algebra::{AlgElem, AlgebraSpec};
use core_algebra::rat::{rat, rint, PolyL, Rat, RatFuncL};
use num_traits::One;
use series_engine::{
    invert_map, ClassSeries, CohSeries, DPoly, DiffOp, FracVec, LZPoly, MapComp, SSer,
    SeriesMap, Window,
};

/// Fixture: C(l)[p]/<p^3> with the localization pairing used in the core
/// crate's tests.
fn plane_algebra() -> Arc<AlgebraSpec> {
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
    AlgebraSpec::new("series-test-plane", vec!["1", "p", "p2"], vec![0, 2, 4], mul, pairing)
        .unwrap()
}

fn empty_series(spec: &Arc<AlgebraSpec>, order: i64, prefactor_p: bool) -> CohSeries {
    let pref = if prefactor_p {
        vec![AlgElem::basis(spec.clone(), 1)]
    } else {
        vec![AlgElem::zero(spec.clone())]
    };
    CohSeries::new(
        spec.clone(),
        vec!["y".into()],
        vec![1],
        pref,
        Window::box_to(1, &rint(order)),
        -(2 * order + 4),
    )
    .unwrap()
}

fn d1(v: i64) -> FracVec {
    FracVec::from_ints(&[v])
}

#[test]
fn unit_series_products() {
    let spec = plane_algebra();
    let one = AlgElem::unit(spec.clone());
    // (z·1)·(z·1) = z²·1
    let mut s = empty_series(&spec, 4, false);
    s.insert_add(d1(0), 1, &one).unwrap();
    let sq = s.mul(&s).unwrap();
    assert_eq!(sq.coeff(&d1(0), 2).unwrap(), one);
    assert!(sq.coeff(&d1(0), 1).unwrap().is_zero());

    // (1 + yp/z)(1 − yp/z) = 1 − y²p²/z²
    let p = AlgElem::basis(spec.clone(), 1);
    let p2 = AlgElem::basis(spec.clone(), 2);
    let mut a = empty_series(&spec, 4, false);
    a.insert_add(d1(0), 0, &one).unwrap();
    a.insert_add(d1(1), -1, &p).unwrap();
    let mut b = empty_series(&spec, 4, false);
    b.insert_add(d1(0), 0, &one).unwrap();
    b.insert_add(d1(1), -1, &p.neg()).unwrap();
    let prod = a.mul(&b).unwrap();
    assert_eq!(prod.coeff(&d1(0), 0).unwrap(), one);
    assert!(prod.coeff(&d1(1), -1).unwrap().is_zero());
    assert_eq!(prod.coeff(&d1(2), -2).unwrap(), p2.neg());
}

fn random_series(spec: &Arc<AlgebraSpec>, seed: u64, order: i64) -> CohSeries {
    // Deterministic pseudo-random filler with small rational coefficients.
    let mut s = empty_series(spec, order, false);
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 7) as i64 - 3
    };
    for d in 0..=order {
        for k in -3..=1i64 {
            let coeffs = vec![
                RatFuncL::constant(rat(next(), 2)),
                RatFuncL::constant(rat(next(), 3)),
                RatFuncL::constant(rint(next())),
            ];
            let v = AlgElem::new(spec.clone(), coeffs).unwrap();
            s.insert_add(d1(d), k, &v).unwrap();
        }
    }
    s
}

#[test]
fn product_matches_direct_convolution_oracle() {
    let spec = plane_algebra();
    let a = random_series(&spec, 11, 5);
    let b = random_series(&spec, 23, 5);
    let prod = a.mul(&b).unwrap();
    // Independent double loop over index pairs for a few target coefficients.
    for (dt, kt) in [(3i64, -2i64), (5, -1), (2, 0), (4, -4)] {
        let mut acc = AlgElem::zero(spec.clone());
        for da in 0..=dt {
            let db = dt - da;
            for ka in -10..=5i64 {
                let kb = kt - ka;
                if ka < a.z_floor() || kb < b.z_floor() {
                    continue;
                }
                let ca = a.coeff(&d1(da), ka).unwrap();
                let cb = b.coeff(&d1(db), kb).unwrap();
                acc = acc.add(&ca.mul(&cb).unwrap()).unwrap();
            }
        }
        assert_eq!(prod.coeff(&d1(dt), kt).unwrap(), acc, "at y^{dt} z^{kt}");
    }
}

#[test]
fn ring_axioms_on_random_inputs() {
    let spec = plane_algebra();
    let a = random_series(&spec, 5, 4);
    let b = random_series(&spec, 7, 4);
    let c = random_series(&spec, 13, 4);
    let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
    let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
    assert_eq!(ab_c, a_bc, "associativity");
    let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
    let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
    assert_eq!(lhs, rhs, "distributivity");
    assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap(), "commutativity");
}

#[test]
fn euler_symbol_action() {
    let spec = plane_algebra();
    let one = AlgElem::unit(spec.clone());
    let p = AlgElem::basis(spec.clone(), 1);
    // D applied to y^{p/z}·1 (d = 0 term) → p·y^{p/z}.
    let mut s = empty_series(&spec, 4, true);
    s.insert_add(d1(0), 0, &one).unwrap();
    let d_op = DiffOp::euler(1, 0);
    let ds = s.apply_diffop(&d_op).unwrap();
    assert_eq!(ds.coeff(&d1(0), 0).unwrap(), p);

    // D³ on an arbitrary coefficient v at d = 1 gives (z + p)³·v.
    let v = AlgElem::new(
        spec.clone(),
        vec![
            RatFuncL::lambda(),
            RatFuncL::constant(rat(1, 2)),
            RatFuncL::one(),
        ],
    )
    .unwrap();
    let mut s = empty_series(&spec, 4, true);
    s.insert_add(d1(1), -1, &v).unwrap();
    let d3 = d_op.pow(3);
    let out = s.apply_diffop(&d3).unwrap();
    // (z + p)³ = z³ + 3z²p + 3zp² + p³ with p³ = 0.
    let p2 = AlgElem::basis(spec.clone(), 2);
    assert_eq!(out.coeff(&d1(1), 2).unwrap(), v);
    assert_eq!(
        out.coeff(&d1(1), 1).unwrap(),
        p.scale_rat(&rint(3)).mul(&v).unwrap()
    );
    assert_eq!(
        out.coeff(&d1(1), 0).unwrap(),
        p2.scale_rat(&rint(3)).mul(&v).unwrap()
    );
    assert!(out.coeff(&d1(1), -1).unwrap().is_zero());
}

#[test]
fn leibniz_rule_for_euler_operators() {
    let spec = plane_algebra();
    let a = random_series(&spec, 31, 4);
    let b = random_series(&spec, 37, 4);
    let d_op = DiffOp::euler(1, 0);
    let lhs = a.mul(&b).unwrap().apply_diffop(&d_op).unwrap();
    let da_b = a.apply_diffop(&d_op).unwrap().mul(&b).unwrap();
    let a_db = a.mul(&b.apply_diffop(&d_op).unwrap()).unwrap();
    let rhs = da_b.add(&a_db).unwrap();
    // Compare on the common valid window.
    let lhs_r = lhs.restrict(rhs.window());
    let rhs_r = rhs.restrict(lhs.window());
    assert_eq!(lhs_r, rhs_r);
}

#[test]
fn diffop_composition_commutation() {
    // D ∘ y = y ∘ (D + z) as operators.
    let d_op = DiffOp::euler(1, 0);
    let y = DiffOp::monomial(d1(1));
    let left = d_op.mul(&y);
    let dz = DiffOp::from_dpoly(
        DPoly::euler(1, 0).add(&DPoly::scalar(1, LZPoly::z_term(Rat::one(), 1))),
    );
    let right = y.mul(&dz);
    assert_eq!(left, right);
}

#[test]
fn diffop_coordinate_transport() {
    // Build L = D³ − y(λ−3D)(λ−3D−z)(λ−3D−2z); transport through y = x⁻³
    // (so D_y = −D_x/3) and compare with the hand-derived image
    // −D_x³/27 − x⁻³(λ+D_x)(λ+D_x−z)(λ+D_x−2z), up to the overall −27.
    let d_y = DiffOp::euler(1, 0);
    let lam = DiffOp::scalar(1, LZPoly::lambda());
    let z = |c: i64| DiffOp::scalar(1, LZPoly::z_term(rint(c), 1));
    let lam_m3d = lam.sub(&d_y.scale(&rint(3)));
    let factor = |k: i64| lam_m3d.sub(&z(k));
    let l_y = d_y.pow(3).sub(
        &DiffOp::monomial(d1(1))
            .mul(&factor(0))
            .mul(&factor(1))
            .mul(&factor(2)),
    );
    let transported = l_y.change_coords(&[vec![rat(-1, 3)]], &[vec![rint(-3)]]);

    let d_x = DiffOp::euler(1, 0);
    let lam_pd = lam.add(&d_x);
    let xfac = |k: i64| lam_pd.sub(&z(k));
    let expected = d_x.pow(3).add(
        &DiffOp::monomial(d1(-3))
            .mul(&xfac(0))
            .mul(&xfac(1))
            .mul(&xfac(2))
            .scale(&rint(27)),
    );
    let prop = transported.proportional_up_to_monomial(&expected);
    assert_eq!(prop, Some((FracVec::zeros(1), rint(-27))));
}

#[test]
fn recurrence_annihilation_on_valid_window() {
    // The series with coefficients defined by the recurrence
    // c_{d} = (λ−3(z·(d−1)+p))(λ−3(z(d−1)+p)−z)(λ−3(z(d−1)+p)−2z)-style
    // action is annihilated by its defining operator; build coefficients by
    // the recurrence c_d = M(d−1)·c_{d−1}/(p+dz)³ in exact arithmetic.
    let spec = plane_algebra();
    let order = 6i64;
    let mut s = empty_series(&spec, order, true);
    // Represent c_d as an AlgElem-valued z-Laurent series expanded: store
    // coefficients directly by applying the recurrence numerically over
    // RatFuncL in z... here we instead verify with the operator identity on
    // a manufactured solution of D f = y·f: f = Σ y^d Π_{k≤d}(z k + p)^{-1}.
    // (p + kz) is invertible in the z-Laurent sense only as a series; use
    // the simpler operator D·(D) − y·1 with f_d satisfying
    // (z d + p)² f_d = f_{d−1}.
    let one = AlgElem::unit(spec.clone());
    let mut prev = series_engine::ZSer::single(0, one);
    s.insert_zser(d1(0), prev.clone()).unwrap();
    for d in 1..=order {
        // Invert (zd + p)² on the nilpotent algebra: (zd)⁻²(1 + p/(zd))⁻²
        // = z⁻²d⁻²(1 − 2p/(zd) + 3p²/(zd)²).
        let p = AlgElem::basis(spec.clone(), 1);
        let p2 = AlgElem::basis(spec.clone(), 2);
        let dd = rint(d);
        let mut inv = series_engine::ZSer::single(-2, AlgElem::unit(spec.clone()).scale_rat(&(Rat::one() / (&dd * &dd))));
        inv = inv
            .add(&series_engine::ZSer::single(
                -3,
                p.scale_rat(&(rint(-2) / (&dd * &dd * &dd))),
            ))
            .unwrap();
        inv = inv
            .add(&series_engine::ZSer::single(
                -4,
                p2.scale_rat(&(rint(3) / (&dd * &dd * &dd * &dd))),
            ))
            .unwrap();
        let mut next = prev.mul(&inv).unwrap();
        next.truncate_below(s.z_floor());
        s.insert_zser(d1(d), next.clone()).unwrap();
        prev = next;
    }
    let d_op = DiffOp::euler(1, 0);
    let l = d_op.pow(2).sub(&DiffOp::monomial(d1(1)));
    let res = s.apply_diffop(&l).unwrap();
    // On the valid window every coefficient with z-exponent above the floor
    // margin must vanish.
    for d in 0..=order {
        let dd = d1(d);
        if !res.window().contains(&dd) {
            continue;
        }
        let z = res.zser_at(&dd).unwrap();
        for (k, v) in z.iter() {
            // Terms near the z-floor are truncation artifacts of the
            // inverted factors; the recurrence itself is exact above it.
            if *k >= res.z_floor() + 4 {
                assert!(v.is_zero(), "nonzero residual at d={d}, z^{k}: {v:?}");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

/// The correction series f(y) = Σ_{d>0} (3d−1)!/(d!)³ (−y)^d to the given
/// order.
fn mirror_f(order: i64) -> SSer {
    fn fact(n: i64) -> Rat {
        let mut acc = Rat::one();
        for k in 2..=n {
            acc *= rint(k);
        }
        acc
    }
    let mut f = SSer::zero(1, rint(order));
    for d in 1..=order {
        let num = fact(3 * d - 1);
        let fd = fact(d);
        let den = &fd * &fd * &fd;
        let sign = if d % 2 == 1 { rint(-1) } else { rint(1) };
        let c = sign * num / den;
        f.insert_add(d1(d), &RatFuncL::constant(c));
    }
    f
}

#[test]
fn invert_identity_map() {
    let id = SeriesMap::identity(2, rint(6));
    let inv = invert_map(&id, &rint(6)).unwrap();
    assert!(inv.is_identity_to_order(&rint(6)));
}

#[test]
fn invert_exponential_mirror_map() {
    // q = y·exp(3 f(y)) with f = −2y + 15y² − ...; the inverse must be
    // y = q + 6q² + 9q³ + 56q⁴ − 300q⁵ + ...
    let order = rint(6);
    let f = mirror_f(8);
    let m = SeriesMap::new(
        1,
        vec![MapComp::MonExp {
            mono: d1(1),
            corr: f.scale_rat(&rint(3)),
        }],
    )
    .unwrap();
    let inv = invert_map(&m, &order).unwrap();
    let plain = inv.comp(0).as_plain().unwrap();
    let expected = [
        (1i64, rint(1)),
        (2, rint(6)),
        (3, rint(9)),
        (4, rint(56)),
        (5, rint(-300)),
    ];
    for (d, c) in expected {
        assert_eq!(
            plain.coeff(&d1(d)),
            RatFuncL::constant(c),
            "inverse map coefficient at q^{d}"
        );
    }
    // Round trips both ways.
    assert!(m.compose(&inv).unwrap().is_identity_to_order(&order));
    assert!(inv.compose(&m).unwrap().is_identity_to_order(&order));
}

#[test]
fn invert_mixed_two_variable_map() {
    // q₁ = x₁·exp(x₂² − 2x₁), q₂ = x₂ + x₁x₂ + x₂³ (additive component).
    let order = rint(7);
    let big = rint(9);
    let mut corr = SSer::zero(2, big.clone());
    corr.insert_add(FracVec::from_ints(&[0, 2]), &RatFuncL::one());
    corr.insert_add(FracVec::from_ints(&[1, 0]), &RatFuncL::constant(rint(-2)));
    let mut plain = SSer::var(2, 1, big.clone());
    plain.insert_add(FracVec::from_ints(&[1, 1]), &RatFuncL::one());
    plain.insert_add(FracVec::from_ints(&[0, 3]), &RatFuncL::one());
    let m = SeriesMap::new(
        2,
        vec![
            MapComp::MonExp { mono: FracVec::from_ints(&[1, 0]), corr },
            MapComp::Plain { series: plain },
        ],
    )
    .unwrap();
    let inv = invert_map(&m, &order).unwrap();
    assert!(m.compose(&inv).unwrap().is_identity_to_order(&order));
    assert!(inv.compose(&m).unwrap().is_identity_to_order(&order));
}

#[test]
fn substitution_round_trip() {
    let spec = plane_algebra();
    let s = random_series(&spec, 41, 4);
    let order = rint(8);
    let f = mirror_f(8);
    let m = SeriesMap::new(
        1,
        vec![MapComp::MonExp { mono: d1(1), corr: f.scale_rat(&rint(3)) }],
    )
    .unwrap();
    let minv = invert_map(&m, &order).unwrap();
    let once = s.substitute(&m).unwrap();
    let back = once.substitute(&minv).unwrap();
    // s has zero prefactor so no exp-correction factors are owed; compare
    // all coefficients inside the round-trip window.
    for d in 0..=4i64 {
        if !back.window().contains(&d1(d)) {
            continue;
        }
        for k in s.z_floor()..=2 {
            assert_eq!(
                back.coeff(&d1(d), k).unwrap(),
                s.coeff(&d1(d), k).unwrap(),
                "round trip at y^{d} z^{k}"
            );
        }
    }
}

#[test]
fn exp_correction_identities() {
    let spec = plane_algebra();
    let s = random_series(&spec, 53, 4);
    // exp(0) → s.
    let zero_c = ClassSeries::zero(spec.clone(), 1);
    assert_eq!(s.mul_exp_correction(&zero_c, -1).unwrap(), s);
    // e^{a}·e^{−a}·s = s for a = (λ𝟙 + p)·y.
    let lam1 = AlgElem::scalar(spec.clone(), RatFuncL::lambda());
    let a_class = lam1.add(&AlgElem::basis(spec.clone(), 1)).unwrap();
    let mut a = ClassSeries::zero(spec.clone(), 1);
    a.insert_add(d1(1), &a_class).unwrap();
    let mut a_neg = ClassSeries::zero(spec.clone(), 1);
    a_neg.insert_add(d1(1), &a_class.neg()).unwrap();
    let round = s
        .mul_exp_correction(&a, -1)
        .unwrap()
        .mul_exp_correction(&a_neg, -1)
        .unwrap();
    for d in 0..=4i64 {
        for k in s.z_floor()..=1 {
            assert_eq!(
                round.coeff(&d1(d), k).unwrap(),
                s.coeff(&d1(d), k).unwrap(),
                "exp inverse at y^{d} z^{k}"
            );
        }
    }
}

#[test]
fn coeff_out_of_window_errors() {
    let spec = plane_algebra();
    let s = empty_series(&spec, 4, false);
    assert!(s.coeff(&d1(5), 0).is_err());
    assert!(s.coeff(&d1(2), -100).is_err());
    assert!(s.coeff(&d1(2), 0).unwrap().is_zero());
}

#[test]
fn coh_series_json_round_trip() {
    let spec = plane_algebra();
    let s = random_series(&spec, 61, 3);
    let doc = s.to_doc();
    let text = serde_json::to_string(&doc).unwrap();
    let doc2: series_engine::CohSeriesDoc = serde_json::from_str(&text).unwrap();
    let s2 = CohSeries::from_doc(spec, &doc2).unwrap();
    assert_eq!(s, s2);
    assert_eq!(serde_json::to_string(&s2.to_doc()).unwrap(), text);
}
