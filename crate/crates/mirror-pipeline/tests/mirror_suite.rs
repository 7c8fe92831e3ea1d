//! End-to-end checks of the mirror pipeline: closed-form mirror-map series,
//! printed invariant tables, internal consistency between z-rows and
//! extraction routes, λ-homogeneity, and truncation stability.

use core_algebra::rat::{rat, rint, Rat, RatFuncL};
use geometry_registry::{targets, ExampleId, Family, Side};
use mirror_pipeline::normalize::FlatCoord;
use mirror_pipeline::*;
use num_traits::{One, Zero};
use series_engine::{FracVec, MapComp, SSer};

fn id(f: Family, s: Side) -> ExampleId {
    ExampleId::new(f, s)
}

fn fact(n: i64) -> Rat {
    let mut f = Rat::one();
    for k in 2..=n {
        f *= rint(k);
    }
    f
}

fn sser_from(nv: usize, order: i64, terms: &[(Vec<Rat>, Rat)]) -> SSer {
    let mut s = SSer::zero(nv, rint(order));
    for (e, c) in terms {
        s.insert_add(FracVec(e.clone()), &RatFuncL::constant(c.clone()));
    }
    s
}

/// Σ_{d>0} (3d−1)!/(d!)³ (−y)^d, the local-plane correction series.
fn f_local_plane(order: i64) -> SSer {
    let mut terms = Vec::new();
    for d in 1..=order {
        let sign = if d % 2 == 1 { rint(-1) } else { rint(1) };
        let c = sign * fact(3 * d - 1) / (fact(d) * fact(d) * fact(d));
        terms.push((vec![rint(d)], c));
    }
    sser_from(1, order, &terms)
}

/// Σ_{n>0} (4n−1)!/((n!)²(2n)!) x^n, the weighted local-surface correction.
fn h_weighted(order: i64) -> SSer {
    let mut terms = Vec::new();
    for n in 1..=order {
        let c = fact(4 * n - 1) / (fact(n) * fact(n) * fact(2 * n));
        terms.push((vec![rint(n)], c));
    }
    sser_from(1, order, &terms)
}

/// Σ_{l>0} (2l−1)!/(l!)² y₂^l for the two-parameter resolution.
fn f_two_param(order: i64) -> SSer {
    let mut terms = Vec::new();
    for l in 1..=order {
        let c = fact(2 * l - 1) / (fact(l) * fact(l));
        terms.push((vec![Rat::zero(), rint(l)], c));
    }
    sser_from(2, order, &terms)
}

/// Σ_{k>0, 0≤l≤k/2} (2k−1)!/((l!)² k! (k−2l)!) y₁^k y₂^l.
fn g_two_param(order: i64) -> SSer {
    let mut terms = Vec::new();
    for k in 1..=order {
        for l in 0..=(k / 2) {
            if k + l > order {
                continue;
            }
            let c = fact(2 * k - 1) / (fact(l) * fact(l) * fact(k) * fact(k - 2 * l));
            terms.push((vec![rint(k), rint(l)], c));
        }
    }
    sser_from(2, order, &terms)
}

/// Twisted flat coordinate of the order-three quotient:
/// Σ_m (−1)^m x^{3m+1}/(3m+1)! · Π_{j=0}^{m−1}(1/3 + j)³.
fn tau_z3(order: i64) -> SSer {
    let mut terms = Vec::new();
    let mut m = 0i64;
    while 3 * m + 1 <= order {
        let sign = if m % 2 == 1 { rint(-1) } else { rint(1) };
        let mut c = sign / fact(3 * m + 1);
        for j in 0..m {
            let g = rat(1, 3) + rint(j);
            c *= &g * &g * &g;
        }
        terms.push((vec![rint(3 * m + 1)], c));
        m += 1;
    }
    sser_from(1, order, &terms)
}

/// Twisted flat coordinate of the order-four quotient:
/// Σ_m x^{4m+1}/(4m+1)! · Π_{j=1}^{m}(3/4 − j)² · Π_{j=1}^{2m}(1/2 − j).
fn tau_z4(order: i64) -> SSer {
    let mut terms = Vec::new();
    let mut m = 0i64;
    while 4 * m + 1 <= order {
        let mut c = Rat::one() / fact(4 * m + 1);
        for j in 1..=m {
            let g = rat(3, 4) - rint(j);
            c *= &g * &g;
        }
        for j in 1..=(2 * m) {
            c *= rat(1, 2) - rint(j);
        }
        terms.push((vec![rint(4 * m + 1)], c));
        m += 1;
    }
    sser_from(1, order, &terms)
}

fn assert_sser_eq(got: &SSer, want: &SSer, what: &str) {
    let order = got.order().clone().min(want.order().clone());
    for (e, c) in want.terms() {
        if e.total() > order {
            continue;
        }
        assert_eq!(got.coeff(e), c.clone(), "{what}: coefficient at {e:?}");
    }
    for (e, c) in got.terms() {
        if e.total() > order {
            continue;
        }
        assert_eq!(want.coeff(e), c.clone(), "{what}: unexpected coefficient at {e:?}");
    }
}

fn monexp_corr(md: &MirrorData, var: usize) -> &SSer {
    match md.forward.comp(var) {
        MapComp::MonExp { corr, .. } => corr,
        MapComp::Plain { .. } => panic!("expected a divisor flat coordinate"),
    }
}

fn plain_series(md: &MirrorData, var: usize) -> &SSer {
    match md.forward.comp(var) {
        MapComp::Plain { series } => series,
        MapComp::MonExp { .. } => panic!("expected a twisted flat coordinate"),
    }
}

// --- Closed-form mirror maps ------------------------------------------------

#[test]
fn local_plane_mirror_map_matches_closed_form() {
    let md = normalize_example(id(Family::I, Side::Y), 8).unwrap();
    let f = f_local_plane(8);
    assert_sser_eq(&md.s, &f, "λ-twist series");
    assert_sser_eq(monexp_corr(&md, 0), &f.scale_rat(&rint(3)), "log-correction 3f");
    let inv = inverse_mirror_coeffs(&md, 0).unwrap();
    for (k, want) in targets::local_p2_inverse_mirror().iter().enumerate() {
        let e = FracVec(vec![rint(k as i64 + 1)]);
        assert_eq!(inv.coeff(&e), RatFuncL::constant(want.clone()), "inverse at q^{}", k + 1);
    }
}

#[test]
fn weighted_surface_mirror_map_matches_closed_form() {
    let md = normalize_example(id(Family::III, Side::Y), 7).unwrap();
    let h = h_weighted(7);
    assert_sser_eq(&md.s, &h, "λ-twist series");
    assert_sser_eq(monexp_corr(&md, 0), &h.scale_rat(&rint(4)), "log-correction 4h");
    assert!(matches!(md.flat[0], FlatCoord::Divisor { .. }));
}

#[test]
fn two_parameter_resolution_mirror_map_matches_closed_form() {
    let md = normalize_example(id(Family::II, Side::Y), 6).unwrap();
    let f = f_two_param(6);
    let g = g_two_param(6);
    assert_sser_eq(&md.s, &g, "λ-twist series");
    assert_sser_eq(
        monexp_corr(&md, 0),
        &g.scale_rat(&rint(2)).sub(&f),
        "first log-correction 2g − f",
    );
    assert_sser_eq(monexp_corr(&md, 1), &f.scale_rat(&rint(2)), "second log-correction 2f");
}

#[test]
fn orbifold_flat_coordinates_match_gamma_ratios() {
    let md3 = normalize_example(id(Family::I, Side::X), 8).unwrap();
    assert!(md3.s.is_zero(), "order-three quotient has no λ-twist");
    assert!(matches!(md3.flat[0], FlatCoord::Twisted { .. }));
    assert_sser_eq(plain_series(&md3, 0), &tau_z3(8), "twisted flat coordinate");

    let md4 = normalize_example(id(Family::III, Side::X), 9).unwrap();
    assert!(md4.s.is_zero(), "order-four quotient has no λ-twist");
    assert_sser_eq(plain_series(&md4, 0), &tau_z4(9), "twisted flat coordinate");
}

#[test]
fn flop_family_mirror_maps_are_trivial() {
    for side in [Side::Y, Side::X] {
        let md = normalize_example(id(Family::VI, side), 6).unwrap();
        assert!(md.s.is_zero(), "no λ-twist on side {side:?}");
        assert!(
            md.forward.is_identity_to_order(&rint(6)),
            "identity mirror map on side {side:?}"
        );
    }
}

// --- Printed tables ----------------------------------------------------------

#[test]
fn local_plane_one_point_rows_match_printed_values() {
    let start = std::time::Instant::now();
    let recs = one_point_invariants(id(Family::I, Side::Y), 8).unwrap();
    let p_want = targets::local_p2_one_point();
    let k_want = targets::local_p2_kd();
    for d in 1..=4i64 {
        let p_rec = recs
            .iter()
            .find(|r| r.degree == rint(d) && r.insertions == vec![("p".to_string(), 0)])
            .unwrap();
        assert_eq!(p_rec.nonequivariant.as_ref(), Some(&p_want[d as usize - 1]));
        assert_eq!(p_rec.provenance, "paper-table");
        let k_rec = recs
            .iter()
            .find(|r| r.degree == rint(d) && r.insertions.is_empty())
            .unwrap();
        assert_eq!(k_rec.nonequivariant.as_ref(), Some(&k_want[d as usize - 1]));
    }
    assert!(
        start.elapsed().as_secs() < 10,
        "local-plane extraction took {:?}",
        start.elapsed()
    );
}

#[test]
fn weighted_surface_tables_match_printed_values() {
    let t = kp112_tables(7).unwrap();
    for (i, want) in targets::kp112_a_table().iter().enumerate() {
        let rec = &t.a[i];
        assert_eq!(rec.degree, rint(i as i64 + 1));
        assert_eq!(rec.value, RatFuncL::constant(want.clone()));
    }
    for (i, want) in targets::kp112_b_table().iter().enumerate() {
        let rec = &t.b[i];
        assert_eq!(rec.degree, rint(i as i64 + 1));
        assert_eq!(rec.value, RatFuncL::lambda_pow(want.clone(), 1));
    }
    for (i, want) in targets::kp112_c_table().iter().enumerate() {
        let rec = &t.c[i];
        assert_eq!(rec.degree, rint(2 * i as i64 + 1) / rint(2));
        assert_eq!(rec.value, RatFuncL::constant(want.clone()));
    }
}

#[test]
fn degree_zero_tables_match_printed_values() {
    let start = std::time::Instant::now();
    let t = bzn_degree0_tables(10).unwrap();
    for (m, row) in targets::z4_a_table().iter().enumerate() {
        for (n, want) in row.iter().enumerate() {
            assert_eq!(
                t.a[m][n],
                RatFuncL::constant(want.clone()),
                "A entry n={n} m={m}"
            );
        }
    }
    for (m, row) in targets::z4_b_table().iter().enumerate() {
        for (n, want) in row.iter().enumerate() {
            assert_eq!(
                t.b[m][n],
                RatFuncL::lambda_pow(want.clone(), 1),
                "B entry n={n} m={m}"
            );
        }
    }
    assert!(
        start.elapsed().as_secs() < 120,
        "degree-zero tables took {:?}",
        start.elapsed()
    );
}

#[test]
fn orbifold_bundle_invariants_match_printed_values() {
    let recs = kp113_invariants(6).unwrap();
    for (n, d, want) in targets::kp113_invariant_targets() {
        let rec = recs
            .iter()
            .find(|r| r.insertions.len() == n && r.degree == d)
            .unwrap_or_else(|| panic!("no record with {n} insertions at degree {d}"));
        assert_eq!(rec.nonequivariant.as_ref(), Some(&want), "n={n} d={d}");
        assert_eq!(rec.provenance, "paper-table");
    }
}

// --- Internal consistency ----------------------------------------------------

#[test]
fn degree_zero_extraction_routes_agree() {
    let md = normalize_z4_family(8).unwrap();
    let mut compared = 0;
    for n in 1..=7u64 {
        for m in 1..=7u64 {
            if n + m > 8 {
                continue;
            }
            let via_quarter = z4_entry(&md, n, m, "u1/4").unwrap().unwrap();
            let via_half = z4_entry(&md, n, m, "u1/2").unwrap().unwrap();
            assert_eq!(via_quarter, via_half, "routes at n={n} m={m}");
            compared += 1;
        }
    }
    assert!(compared > 10);
}

#[test]
fn adjacent_z_rows_satisfy_string_and_divisor_shifts() {
    // d·⟨𝟙₀ψ⟩_{0,1,d} = −2·⟨p⟩_{0,1,d}: the dilaton row against the divisor
    // row, both read from the same J-candidate.
    let md = normalize_example(id(Family::I, Side::Y), 8).unwrap();
    let spec = md.j.spec().clone();
    let unit = core_algebra::algebra::AlgElem::basis(spec.clone(), 0);
    let p = core_algebra::algebra::AlgElem::basis(spec.clone(), 1);
    for d in 1..=6i64 {
        let e = FracVec(vec![rint(d)]);
        let psi = one_point_row(&md, &e, 1).unwrap().pairing(&unit).unwrap();
        let div = one_point_row(&md, &e, 0).unwrap().pairing(&p).unwrap();
        let lhs = &psi * &RatFuncL::constant(rint(d));
        let rhs = &div * &RatFuncL::constant(rint(-2));
        assert_eq!(lhs, rhs, "rows at degree {d}");
    }

    // The same shift on the weighted surface, against the emitted a_d row:
    // ⟨p⟩_{0,1,d} = d·a_d.
    let t = kp112_tables(6).unwrap();
    let md2 = normalize_example(id(Family::III, Side::Y), 6).unwrap();
    let spec2 = md2.j.spec().clone();
    let p2 = core_algebra::algebra::AlgElem::basis(spec2.clone(), 1);
    for rec in &t.a {
        let e = rec.exponent.clone();
        let div = one_point_row(&md2, &e, 0).unwrap().pairing(&p2).unwrap();
        let want = &rec.value * &RatFuncL::constant(rec.degree.clone());
        assert_eq!(div, want, "divisor row at degree {}", rec.degree);
    }
}

#[test]
fn extracted_values_are_lambda_homogeneous() {
    let mut checked = 0;
    let recs = one_point_invariants(id(Family::I, Side::Y), 6).unwrap();
    let spec = geometry_registry::example_spec(id(Family::I, Side::Y)).algebra.clone();
    for r in &recs {
        if r.insertions.is_empty() {
            continue; // derived rows carry no insertion data
        }
        assert!(r.is_lambda_homogeneous(&spec), "{:?} at degree {}", r.insertions, r.degree);
        checked += 1;
    }
    let t = kp112_tables(5).unwrap();
    let spec2 = geometry_registry::example_spec(id(Family::III, Side::Y)).algebra.clone();
    for r in t.b.iter().chain(t.c.iter()) {
        assert!(r.is_lambda_homogeneous(&spec2), "{:?} at degree {}", r.insertions, r.degree);
        checked += 1;
    }
    let z4 = bzn_degree0_tables(6).unwrap();
    let spec3 = geometry_registry::example_spec(id(Family::III, Side::X)).algebra.clone();
    for r in &z4.records {
        assert!(r.is_lambda_homogeneous(&spec3), "{:?}", r.insertions);
        checked += 1;
    }
    let kp113 = kp113_invariants(5).unwrap();
    let spec4 = geometry_registry::example_spec(id(Family::IV, Side::X)).algebra.clone();
    for r in &kp113 {
        assert!(r.is_lambda_homogeneous(&spec4), "{:?} at degree {}", r.insertions, r.degree);
        checked += 1;
    }
    assert!(checked > 40);
}

#[test]
fn extraction_is_stable_under_truncation_order() {
    let lo = one_point_invariants(id(Family::I, Side::Y), 5).unwrap();
    let hi = one_point_invariants(id(Family::I, Side::Y), 8).unwrap();
    let mut compared = 0;
    for a in &lo {
        let b = hi
            .iter()
            .find(|r| r.degree == a.degree && r.insertions == a.insertions)
            .unwrap();
        assert_eq!(a.value, b.value, "{:?} at degree {}", a.insertions, a.degree);
        compared += 1;
    }
    assert!(compared >= 15);
}

// --- Shape of the normalized series -------------------------------------------

#[test]
fn every_example_normalizes_with_the_expected_flat_coordinates() {
    use geometry_registry::all_examples;
    for ex in all_examples() {
        let md = normalize_example(ex.id, 4)
            .unwrap_or_else(|e| panic!("normalize {} failed: {e}", ex.id.code()));
        // Flat coordinates: one per variable, divisor ones carrying positive
        // roots, twisted ones pointing at age-one sectors.
        for f in &md.flat {
            match f {
                FlatCoord::Divisor { root, .. } => assert!(root > &Rat::zero()),
                FlatCoord::Twisted { basis } => {
                    assert_eq!(md.j.spec().degrees()[*basis], 2);
                }
            }
        }
    }
    let md = normalize_z4_family(4).unwrap();
    assert_eq!(
        md.flat,
        vec![FlatCoord::Twisted { basis: 1 }, FlatCoord::Twisted { basis: 2 }]
    );
}
