//! Picard–Fuchs operators for the twelve I-functions, plus the coordinate
//! transports that carry each Y-side system to the corresponding X-side
//! system. Operators are stored as annihilators: `op` applied to the
//! I-function vanishes on the valid window.

use std::collections::BTreeSet;

use core_algebra::rat::{rat, rint, PolyL, Rat};
use series_engine::{DiffOp, DPoly, FracVec, LZPoly};

use crate::Family;

/// Affine symbol c_λ·λ + Σ_i c_i·D_i + c_z·z as a DPoly.
fn aff(nv: usize, c_lam: Rat, c_d: &[Rat], c_z: Rat) -> DPoly {
    let mut out = DPoly::scalar(nv, LZPoly::from_poly(PolyL::monomial(c_lam, 1)));
    for (i, c) in c_d.iter().enumerate() {
        out = out.add(&DPoly::euler(nv, i).scale(c));
    }
    out.add(&DPoly::scalar(nv, LZPoly::z_term(c_z, 1)))
}

fn mono1(a: i64) -> DiffOp {
    DiffOp::monomial(FracVec(vec![rint(a)]))
}

fn mono2(a: i64, b: i64) -> DiffOp {
    DiffOp::monomial(FracVec(vec![rint(a), rint(b)]))
}

/// Π_{m=0}^{count−1} (c_λ·λ + Σ c_i·D_i − m·z).
fn descending_product(nv: usize, c_lam: Rat, c_d: &[Rat], count: u32) -> DPoly {
    let mut out = DPoly::one(nv);
    for m in 0..count {
        out = out.mul(&aff(nv, c_lam.clone(), c_d, rint(-(m as i64))));
    }
    out
}

pub fn ops_i_y() -> Vec<DiffOp> {
    let d3 = DPoly::euler(1, 0).pow(3);
    let rhs = descending_product(1, rint(1), &[rint(-3)], 3);
    vec![DiffOp::from_dpoly(d3).sub(&mono1(1).mul(&DiffOp::from_dpoly(rhs)))]
}

pub fn ops_i_x() -> Vec<DiffOp> {
    let d3 = DPoly::euler(1, 0).pow(3);
    let rhs = descending_product(1, rint(1), &[rint(1)], 3);
    vec![DiffOp::from_dpoly(d3)
        .add(&mono1(-3).mul(&DiffOp::from_dpoly(rhs)).scale(&rint(27)))]
}

pub fn ops_ii_y() -> Vec<DiffOp> {
    let d1 = DPoly::euler(2, 0);
    let d1_m2d2 = aff(2, rint(0), &[rint(1), rint(-2)], rint(0));
    let lhs1 = d1.mul(&d1_m2d2);
    let rhs1 = descending_product(2, rint(1), &[rint(-2), rint(0)], 2);
    let op1 = DiffOp::from_dpoly(lhs1).sub(&mono2(1, 0).mul(&DiffOp::from_dpoly(rhs1)));
    let lhs2 = DPoly::euler(2, 1).pow(2);
    let rhs2 = descending_product(2, rint(0), &[rint(1), rint(-2)], 2);
    let op2 = DiffOp::from_dpoly(lhs2).sub(&mono2(0, 1).mul(&DiffOp::from_dpoly(rhs2)));
    vec![op1, op2]
}

/// Shared operator for the weighted projective bundle side of families II/III
/// (variable name immaterial to the operator data).
pub fn ops_kp112(_var: &str) -> Vec<DiffOp> {
    let d = DPoly::euler(1, 0);
    let lhs = d
        .pow(2)
        .mul(&d.scale(&rint(2)))
        .mul(&aff(1, rint(0), &[rint(2)], rint(-1)));
    let rhs = descending_product(1, rint(1), &[rint(-4)], 4);
    vec![DiffOp::from_dpoly(lhs).sub(&mono1(1).mul(&DiffOp::from_dpoly(rhs)))]
}

pub fn ops_iii_x() -> Vec<DiffOp> {
    let md4 = aff(1, rint(0), &[rat(-1, 4)], rint(0));
    let lhs = md4
        .pow(2)
        .mul(&aff(1, rint(0), &[rat(-1, 2)], rint(0)))
        .mul(&aff(1, rint(0), &[rat(-1, 2)], rint(-1)));
    let rhs = descending_product(1, rint(1), &[rint(1)], 4);
    vec![DiffOp::from_dpoly(lhs).sub(&mono1(-4).mul(&DiffOp::from_dpoly(rhs)))]
}

pub fn ops_iv_y() -> Vec<DiffOp> {
    let d1 = DPoly::euler(2, 0);
    let d2 = DPoly::euler(2, 1);
    let d1_m3d2 = aff(2, rint(0), &[rint(1), rint(-3)], rint(0));
    let fiber = |zc: i64| aff(2, rint(1), &[rint(-2), rint(1)], rint(zc));
    let op1 = DiffOp::from_dpoly(d1.mul(&d1_m3d2))
        .sub(&mono2(1, 0).mul(&DiffOp::from_dpoly(fiber(0).mul(&fiber(-1)))));
    let rhs2 = descending_product(2, rint(0), &[rint(1), rint(-3)], 3);
    let op2 = DiffOp::from_dpoly(d2.pow(2).mul(&fiber(0)))
        .sub(&mono2(0, 1).mul(&DiffOp::from_dpoly(rhs2)));
    vec![op1, op2]
}

/// System for the weighted projective bundle side of families IV/V.
pub fn ops_kp113(_var: &str) -> Vec<DiffOp> {
    let d1 = DPoly::euler(2, 0);
    let d2 = DPoly::euler(2, 1);
    let third = aff(2, rint(0), &[rat(1, 3), rat(-1, 3)], rint(0));
    let fiber = |zc: i64| aff(2, rint(1), &[rat(-5, 3), rat(-1, 3)], rint(zc));
    let descending = |count: u32| -> DPoly {
        let mut out = DPoly::one(2);
        for m in 0..count as i64 {
            out = out.mul(&fiber(-m));
        }
        out
    };
    let lhs1 = d2
        .mul(&aff(2, rint(0), &[rint(0), rint(1)], rint(-1)))
        .mul(&aff(2, rint(0), &[rint(0), rint(1)], rint(-2)));
    let op1 = DiffOp::from_dpoly(lhs1)
        .sub(&mono2(0, 3).mul(&DiffOp::from_dpoly(third.pow(2).mul(&fiber(0)))));
    let op2 =
        DiffOp::from_dpoly(d1.mul(&d2)).sub(&mono2(1, 1).mul(&DiffOp::from_dpoly(descending(2))));
    let lhs3 = d1
        .mul(&aff(2, rint(0), &[rint(1), rint(0)], rint(-1)))
        .mul(&aff(2, rint(0), &[rint(1), rint(0)], rint(-2)))
        .mul(&third.pow(2));
    let op3 = DiffOp::from_dpoly(lhs3).sub(&mono2(3, 0).mul(&DiffOp::from_dpoly(descending(5))));
    vec![op1, op2, op3]
}

pub fn ops_vi_y() -> Vec<DiffOp> {
    let d3 = DPoly::euler(1, 0).pow(3);
    let rhs = aff(1, rint(1), &[rint(-1)], rint(0))
        .mul(&aff(1, rint(2), &[rint(-2)], rint(0)))
        .mul(&aff(1, rint(2), &[rint(-2)], rint(-1)));
    vec![DiffOp::from_dpoly(d3).sub(&mono1(1).mul(&DiffOp::from_dpoly(rhs)))]
}

pub fn ops_vi_x() -> Vec<DiffOp> {
    let d3 = DPoly::euler(1, 0).pow(3);
    let rhs = aff(1, rint(1), &[rint(1)], rint(0))
        .mul(&aff(1, rint(2), &[rint(2)], rint(0)))
        .mul(&aff(1, rint(2), &[rint(2)], rint(-1)));
    vec![mono1(1)
        .mul(&DiffOp::from_dpoly(d3))
        .add(&DiffOp::from_dpoly(rhs))]
}

/// Multiplicative coordinate change carrying the Y-side system toward the
/// X-side chart: (Euler substitution matrix, exponent matrix).
pub fn gluing_data(family: Family) -> Option<(Vec<Vec<Rat>>, Vec<Vec<Rat>>)> {
    match family {
        // y = x^{-3}
        Family::I => Some((vec![vec![rat(-1, 3)]], vec![vec![rint(-3)]])),
        // y1 = ŷ1 ŷ2, y2 = ŷ2^{-2}
        Family::II => Some((
            vec![vec![rint(1), rint(0)], vec![rat(1, 2), rat(-1, 2)]],
            vec![vec![rint(1), rint(0)], vec![rint(1), rint(-2)]],
        )),
        // y = x^{-4}
        Family::III => Some((vec![vec![rat(-1, 4)]], vec![vec![rint(-4)]])),
        // y1 = x1 x2, y2 = x2^{-3}
        Family::IV => Some((
            vec![vec![rint(1), rint(0)], vec![rat(1, 3), rat(-1, 3)]],
            vec![vec![rint(1), rint(0)], vec![rint(1), rint(-3)]],
        )),
        Family::V => None,
        // y = x^{-1}
        Family::VI => Some((vec![vec![rint(-1)]], vec![vec![rint(-1)]])),
    }
}

/// The Y-side system rewritten in the X-side chart.
pub fn transported_y_ops(family: Family) -> Option<Vec<DiffOp>> {
    let (dcoef, expmat) = gluing_data(family)?;
    let ops = match family {
        Family::I => ops_i_y(),
        Family::II => ops_ii_y(),
        Family::III => ops_kp112("y"),
        Family::IV => ops_iv_y(),
        Family::V => return None,
        Family::VI => ops_vi_y(),
    };
    Some(
        ops.iter()
            .map(|op| op.change_coords(&dcoef, &expmat))
            .collect(),
    )
}

/// The one-variable operator of families II/III rewritten in the chart
/// u = x^{1/2} (so x = u², D_x = D_u/2).
pub fn kp112_op_in_sqrt_chart() -> DiffOp {
    ops_kp112("x")[0].change_coords(&[vec![rat(1, 2)]], &[vec![rint(2)]])
}

/// All distinct exponent shifts of `op` along `axis` (must be integers).
pub fn axis_shifts(op: &DiffOp, axis: usize) -> BTreeSet<i64> {
    op.shifts()
        .map(|a| {
            let s = &a.0[axis];
            assert!(s.is_integer(), "axis shift must be an integer");
            s.to_integer().try_into().expect("small shift")
        })
        .collect()
}

/// Restrict a two-variable operator to one level of the distinguished axis:
/// acting on h(u)·v^{j_in} (u the remaining variable, v the axis variable),
/// keep the terms landing in level v^{j_out}, with D_axis evaluated at j_in·z.
/// Returns a one-variable operator in u.
pub fn level_component(op: &DiffOp, axis: usize, j_in: i64, j_out: i64) -> DiffOp {
    assert_eq!(op.nvars(), 2);
    let other = 1 - axis;
    let mut out = DiffOp::zero(1);
    for (a, d) in op.iter() {
        let step = &a.0[axis];
        if *step != rint(j_out - j_in) {
            continue;
        }
        let mut images = vec![DPoly::zero(1); 2];
        images[axis] = DPoly::scalar(1, LZPoly::z_term(rint(j_in), 1));
        images[other] = DPoly::euler(1, 0);
        let reduced = d.substitute_symbols(&images);
        out = out.add(&DiffOp::monomial(FracVec(vec![a.0[other].clone()])).mul(&DiffOp::from_dpoly(reduced)));
    }
    out
}

/// Certificate that the two-variable system of family II, transported to the
/// chart (ŷ1, ŷ2), forces the restriction h0(ŷ1) of any ŷ2-holomorphic
/// solution to satisfy the one-variable operator of the other chamber (in the
/// chart ŷ1 = x^{1/2}). Pure operator arithmetic; returns an error message
/// describing the first failed identity.
pub fn kf2_gluing_certificate() -> Result<(), String> {
    let t = transported_y_ops(Family::II).expect("family II has gluing data");
    // Completeness of the level bookkeeping: the first transported equation
    // moves ŷ2-levels by {0, 1}, the second by {−2, 0}.
    if axis_shifts(&t[0], 1) != BTreeSet::from([0, 1]) {
        return Err("unexpected level structure in the first equation".into());
    }
    if axis_shifts(&t[1], 1) != BTreeSet::from([-2, 0]) {
        return Err("unexpected level structure in the second equation".into());
    }
    // Level relations for f = Σ_{j≥0} h_j(ŷ1) ŷ2^j:
    //   x2·h1 = y2·h0   (first equation at output level 1)
    //   a·h2 = b·h1     (first equation at output level 2)
    //   c·h2 = d·h0     (second equation at output level 0)
    let x2 = level_component(&t[0], 1, 1, 1);
    let y2 = level_component(&t[0], 1, 0, 1).neg();
    let a = level_component(&t[0], 1, 2, 2);
    let b = level_component(&t[0], 1, 1, 2).neg();
    let c = level_component(&t[1], 1, 2, 0).neg();
    let d = level_component(&t[1], 1, 0, 0);
    // Eliminate h2: find l·a == m·c with l = z, m = D.
    let l = DiffOp::scalar(1, LZPoly::z_term(rint(1), 1));
    let m = DiffOp::euler(1, 0);
    if l.mul(&a) != m.mul(&c) {
        return Err("level cross-multiplication (h2 elimination) failed".into());
    }
    // So x1·h1 = y1·h0 with x1 = l·b, y1 = m·d.
    let x1 = l.mul(&b);
    let y1 = m.mul(&d);
    // Eliminate h1: u·x1 == v·x2 with u = D − z, v = y2.
    let u = DiffOp::euler(1, 0).sub(&DiffOp::scalar(1, LZPoly::z_term(rint(1), 1)));
    let v = y2.clone();
    if u.mul(&x1) != v.mul(&x2) {
        return Err("level cross-multiplication (h1 elimination) failed".into());
    }
    // The annihilator of h0 must match the other chamber's operator in the
    // chart ŷ1 = x^{1/2}.
    let w = u.mul(&y1).sub(&v.mul(&y2));
    let target = kp112_op_in_sqrt_chart();
    if w.proportional_up_to_monomial(&target).is_none() {
        return Err("eliminated operator is not the other chamber's operator".into());
    }
    Ok(())
}
