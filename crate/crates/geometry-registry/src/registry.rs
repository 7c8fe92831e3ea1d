//! The example registry: one immutable spec per (family, side), holding the
//! state-space algebra, the hypergeometric generator of the equivariant
//! I-function, the Picard–Fuchs operators, and export to JSON.

use std::collections::BTreeMap;
use std::sync::Arc;

use core_algebra::algebra::{AlgebraSpec, AlgebraSpecDoc, AlgElem, Degree};
use core_algebra::rat::{rat, rint, Rat, RatFuncL};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use series_engine::DiffOp;

use crate::algebras::{self, elem, lq, scalar_elem};
use crate::ifunc::{HGFactor, IGen, ModFactor};
use crate::linform::LinForm;
use crate::pf;
use crate::{ExampleId, Family, RegistryError, Side, FAMILIES};

/// Immutable data pack for one side of one transformation.
pub struct ExampleSpec {
    pub id: ExampleId,
    /// Short geometry name (matches the algebra name).
    pub name: String,
    pub algebra: Arc<AlgebraSpec>,
    pub igen: IGen,
    pub pf_ops: Vec<DiffOp>,
}

fn units(spec: &Arc<AlgebraSpec>, nv: usize) -> Vec<AlgElem> {
    vec![AlgElem::zero(spec.clone()); nv]
}

fn factorial_factor(spec: &Arc<AlgebraSpec>, nv: usize, var: usize) -> HGFactor {
    HGFactor {
        class: AlgElem::zero(spec.clone()),
        lo: LinForm::zero(nv),
        hi: LinForm::var(nv, var, rint(1)),
        frref: LinForm::zero(nv),
        power: -1,
        is_modification: false,
    }
}

fn spec_i_y() -> ExampleSpec {
    let a = algebras::alg_y_i();
    let lam_m3p = elem(&a, &[(0, lq(1, 1, 1)), (1, lq(-3, 1, 0))]);
    let p = AlgElem::basis(a.clone(), 1);
    ExampleSpec {
        id: ExampleId::new(Family::I, Side::Y),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: IGen {
            spec: a.clone(),
            vars: vec!["y".into()],
            dens: vec![1],
            prefactor: vec![p.clone()],
            factors: vec![
                HGFactor {
                    class: lam_m3p.clone(),
                    lo: LinForm::var(1, 0, rint(-3)),
                    hi: LinForm::zero(1),
                    frref: LinForm::zero(1),
                    power: 1,
                    is_modification: true,
                },
                HGFactor {
                    class: p,
                    lo: LinForm::zero(1),
                    hi: LinForm::var(1, 0, rint(1)),
                    frref: LinForm::zero(1),
                    power: -3,
                    is_modification: false,
                },
            ],
            sector: None,
            modification: vec![ModFactor {
                class: lam_m3p,
                pair: LinForm::var(1, 0, rint(-3)),
                mult: 1,
            }],
        },
        pf_ops: pf::ops_i_y(),
    }
}

fn spec_i_x() -> ExampleSpec {
    let a = algebras::alg_x_i();
    ExampleSpec {
        id: ExampleId::new(Family::I, Side::X),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: IGen {
            spec: a.clone(),
            vars: vec!["x".into()],
            dens: vec![1],
            prefactor: vec![scalar_elem(&a, lq(-1, 1, 1))],
            factors: vec![
                factorial_factor(&a, 1, 0),
                HGFactor {
                    class: scalar_elem(&a, lq(1, 3, 1)),
                    lo: LinForm::var(1, 0, rat(-1, 3)),
                    hi: LinForm::zero(1),
                    frref: LinForm::var(1, 0, rat(-1, 3)),
                    power: 3,
                    is_modification: false,
                },
            ],
            sector: Some((
                LinForm::var(1, 0, rat(1, 3)),
                vec![(rint(0), 0), (rat(1, 3), 1), (rat(2, 3), 2)],
            )),
            modification: vec![],
        },
        pf_ops: pf::ops_i_x(),
    }
}

fn spec_ii_y() -> ExampleSpec {
    let a = algebras::alg_y_ii();
    let lam_m2p1 = elem(&a, &[(0, lq(1, 1, 1)), (1, lq(-2, 1, 0))]);
    let p1 = AlgElem::basis(a.clone(), 1);
    let p2 = AlgElem::basis(a.clone(), 2);
    let p1_m2p2 = elem(&a, &[(1, lq(1, 1, 0)), (2, lq(-2, 1, 0))]);
    ExampleSpec {
        id: ExampleId::new(Family::II, Side::Y),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: IGen {
            spec: a.clone(),
            vars: vec!["y1".into(), "y2".into()],
            dens: vec![1, 1],
            prefactor: vec![p1.clone(), p2.clone()],
            factors: vec![
                HGFactor {
                    class: lam_m2p1.clone(),
                    lo: LinForm::var(2, 0, rint(-2)),
                    hi: LinForm::zero(2),
                    frref: LinForm::zero(2),
                    power: 1,
                    is_modification: true,
                },
                HGFactor {
                    class: p2,
                    lo: LinForm::zero(2),
                    hi: LinForm::var(2, 1, rint(1)),
                    frref: LinForm::zero(2),
                    power: -2,
                    is_modification: false,
                },
                HGFactor {
                    class: p1,
                    lo: LinForm::zero(2),
                    hi: LinForm::var(2, 0, rint(1)),
                    frref: LinForm::zero(2),
                    power: -1,
                    is_modification: false,
                },
                // Π_{m ≤ 0}(p1−2p2+mz) / Π_{m ≤ k−2l}(p1−2p2+mz): the factors
                // over (k−2l, 0] (numerator for k ≤ 2l, denominator flipped
                // otherwise).
                HGFactor {
                    class: p1_m2p2,
                    lo: LinForm::from_ints(&[1, -2], 1),
                    hi: LinForm::zero(2),
                    frref: LinForm::zero(2),
                    power: 1,
                    is_modification: false,
                },
            ],
            sector: None,
            modification: vec![ModFactor {
                class: lam_m2p1,
                pair: LinForm::var(2, 0, rint(-2)),
                mult: 1,
            }],
        },
        pf_ops: pf::ops_ii_y(),
    }
}

fn igen_kp112(a: &Arc<AlgebraSpec>, var: &str) -> IGen {
    let lam_m4p = elem(a, &[(0, lq(1, 1, 1)), (1, lq(-4, 1, 0))]);
    let p = AlgElem::basis(a.clone(), 1);
    let two_p = p.scale(&lq(2, 1, 0));
    IGen {
        spec: a.clone(),
        vars: vec![var.into()],
        dens: vec![2],
        prefactor: vec![p.clone()],
        factors: vec![
            HGFactor {
                class: lam_m4p.clone(),
                lo: LinForm::var(1, 0, rint(-4)),
                hi: LinForm::zero(1),
                frref: LinForm::zero(1),
                power: 1,
                is_modification: true,
            },
            HGFactor {
                class: p,
                lo: LinForm::zero(1),
                hi: LinForm::var(1, 0, rint(1)),
                frref: LinForm::var(1, 0, rint(1)),
                power: -2,
                is_modification: false,
            },
            HGFactor {
                class: two_p,
                lo: LinForm::zero(1),
                hi: LinForm::var(1, 0, rint(2)),
                frref: LinForm::zero(1),
                power: -1,
                is_modification: false,
            },
        ],
        sector: Some((
            LinForm::var(1, 0, rint(-1)),
            vec![(rint(0), 0), (rat(1, 2), 3)],
        )),
        modification: vec![ModFactor {
            class: lam_m4p,
            pair: LinForm::var(1, 0, rint(-4)),
            mult: 1,
        }],
    }
}

fn spec_ii_x() -> ExampleSpec {
    let a = algebras::alg_kp112();
    ExampleSpec {
        id: ExampleId::new(Family::II, Side::X),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: igen_kp112(&a, "x"),
        pf_ops: pf::ops_kp112("x"),
    }
}

fn spec_iii_y() -> ExampleSpec {
    let a = algebras::alg_kp112();
    ExampleSpec {
        id: ExampleId::new(Family::III, Side::Y),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: igen_kp112(&a, "y"),
        pf_ops: pf::ops_kp112("y"),
    }
}

fn spec_iii_x() -> ExampleSpec {
    let a = algebras::alg_x_iii();
    ExampleSpec {
        id: ExampleId::new(Family::III, Side::X),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: IGen {
            spec: a.clone(),
            vars: vec!["x".into()],
            dens: vec![1],
            prefactor: vec![scalar_elem(&a, lq(-1, 1, 1))],
            factors: vec![
                factorial_factor(&a, 1, 0),
                HGFactor {
                    class: scalar_elem(&a, lq(1, 4, 1)),
                    lo: LinForm::var(1, 0, rat(-1, 4)),
                    hi: LinForm::zero(1),
                    frref: LinForm::var(1, 0, rat(-1, 4)),
                    power: 2,
                    is_modification: false,
                },
                HGFactor {
                    class: scalar_elem(&a, lq(1, 2, 1)),
                    lo: LinForm::var(1, 0, rat(-1, 2)),
                    hi: LinForm::zero(1),
                    frref: LinForm::var(1, 0, rat(-1, 2)),
                    power: 1,
                    is_modification: false,
                },
            ],
            sector: Some((
                LinForm::var(1, 0, rat(1, 4)),
                vec![
                    (rint(0), 0),
                    (rat(1, 4), 1),
                    (rat(1, 2), 2),
                    (rat(3, 4), 3),
                ],
            )),
            modification: vec![],
        },
        pf_ops: pf::ops_iii_x(),
    }
}

/// Two-parameter extended family for [C^3/Z_4]: x1 couples the age-1/4 unit,
/// x2 the age-1/2 unit. Used for the degree-zero invariant tables.
pub fn igen_z4_family() -> IGen {
    let a = algebras::alg_x_iii();
    IGen {
        spec: a.clone(),
        vars: vec!["x1".into(), "x2".into()],
        dens: vec![1, 1],
        prefactor: units(&a, 2),
        factors: vec![
            factorial_factor(&a, 2, 0),
            factorial_factor(&a, 2, 1),
            HGFactor {
                class: scalar_elem(&a, lq(1, 4, 1)),
                lo: LinForm::from_ints(&[-1, -2], 4),
                hi: LinForm::zero(2),
                frref: LinForm::from_ints(&[-1, -2], 4),
                power: 2,
                is_modification: false,
            },
            HGFactor {
                class: scalar_elem(&a, lq(1, 2, 1)),
                lo: LinForm::from_ints(&[-1, 0], 2),
                hi: LinForm::zero(2),
                frref: LinForm::from_ints(&[-1, 0], 2),
                power: 1,
                is_modification: false,
            },
        ],
        sector: Some((
            LinForm::from_ints(&[1, 2], 4),
            vec![
                (rint(0), 0),
                (rat(1, 4), 1),
                (rat(1, 2), 2),
                (rat(3, 4), 3),
            ],
        )),
        modification: vec![],
    }
}

fn spec_iv_y() -> ExampleSpec {
    let a = algebras::alg_y_iv();
    let p1 = AlgElem::basis(a.clone(), 1);
    let p2 = AlgElem::basis(a.clone(), 2);
    let p1_m3p2 = elem(&a, &[(1, lq(1, 1, 0)), (2, lq(-3, 1, 0))]);
    let fiber = elem(&a, &[(0, lq(1, 1, 1)), (1, lq(-2, 1, 0)), (2, lq(1, 1, 0))]);
    ExampleSpec {
        id: ExampleId::new(Family::IV, Side::Y),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: IGen {
            spec: a.clone(),
            vars: vec!["y1".into(), "y2".into()],
            dens: vec![1, 1],
            prefactor: vec![p1.clone(), p2.clone()],
            factors: vec![
                HGFactor {
                    class: p2,
                    lo: LinForm::zero(2),
                    hi: LinForm::var(2, 1, rint(1)),
                    frref: LinForm::zero(2),
                    power: -2,
                    is_modification: false,
                },
                HGFactor {
                    class: p1,
                    lo: LinForm::zero(2),
                    hi: LinForm::var(2, 0, rint(1)),
                    frref: LinForm::zero(2),
                    power: -1,
                    is_modification: false,
                },
                HGFactor {
                    class: p1_m3p2,
                    lo: LinForm::zero(2),
                    hi: LinForm::from_ints(&[1, -3], 1),
                    frref: LinForm::zero(2),
                    power: -1,
                    is_modification: false,
                },
                HGFactor {
                    class: fiber.clone(),
                    lo: LinForm::zero(2),
                    hi: LinForm::from_ints(&[-2, 1], 1),
                    frref: LinForm::zero(2),
                    power: -1,
                    is_modification: true,
                },
            ],
            sector: None,
            modification: vec![ModFactor {
                class: fiber,
                pair: LinForm::from_ints(&[-2, 1], 1),
                mult: 1,
            }],
        },
        pf_ops: pf::ops_iv_y(),
    }
}

fn igen_kp113(a: &Arc<AlgebraSpec>, v1: &str, v2: &str) -> IGen {
    // Exponent lattice: (K, L) with x1^{K + 3p/z} x2^L, K = 3d, L = 3e.
    let p = AlgElem::basis(a.clone(), 1);
    let lam_m5p = elem(a, &[(0, lq(1, 1, 1)), (1, lq(-5, 1, 0))]);
    let three_p = p.scale(&lq(3, 1, 0));
    IGen {
        spec: a.clone(),
        vars: vec![v1.into(), v2.into()],
        dens: vec![1, 1],
        prefactor: vec![three_p.clone(), AlgElem::zero(a.clone())],
        factors: vec![
            factorial_factor(a, 2, 1),
            HGFactor {
                class: p,
                lo: LinForm::zero(2),
                hi: LinForm::from_ints(&[1, -1], 3),
                frref: LinForm::from_ints(&[1, -1], 3),
                power: -2,
                is_modification: false,
            },
            HGFactor {
                class: lam_m5p.clone(),
                lo: LinForm::from_ints(&[-5, -1], 3),
                hi: LinForm::zero(2),
                frref: LinForm::from_ints(&[-5, -1], 3),
                power: 1,
                is_modification: true,
            },
            HGFactor {
                class: three_p,
                lo: LinForm::zero(2),
                hi: LinForm::var(2, 0, rint(1)),
                frref: LinForm::zero(2),
                power: -1,
                is_modification: false,
            },
        ],
        sector: Some((
            LinForm::from_ints(&[-1, 1], 3),
            vec![(rint(0), 0), (rat(1, 3), 3), (rat(2, 3), 4)],
        )),
        modification: vec![ModFactor {
            class: lam_m5p,
            pair: LinForm::from_ints(&[-5, -1], 3),
            mult: 1,
        }],
    }
}

fn spec_iv_x() -> ExampleSpec {
    let a = algebras::alg_kp113();
    ExampleSpec {
        id: ExampleId::new(Family::IV, Side::X),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: igen_kp113(&a, "x1", "x2"),
        pf_ops: pf::ops_kp113("x"),
    }
}

fn spec_v_y() -> ExampleSpec {
    let a = algebras::alg_kp113();
    ExampleSpec {
        id: ExampleId::new(Family::V, Side::Y),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: igen_kp113(&a, "y1", "y2"),
        pf_ops: pf::ops_kp113("y"),
    }
}

fn spec_v_x() -> ExampleSpec {
    let a = algebras::alg_x_v();
    ExampleSpec {
        id: ExampleId::new(Family::V, Side::X),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: IGen {
            spec: a.clone(),
            vars: vec!["x1".into(), "x2".into()],
            dens: vec![1, 1],
            prefactor: units(&a, 2),
            factors: vec![
                factorial_factor(&a, 2, 0),
                factorial_factor(&a, 2, 1),
                HGFactor {
                    class: scalar_elem(&a, lq(1, 5, 1)),
                    lo: LinForm::from_ints(&[-1, -2], 5),
                    hi: LinForm::zero(2),
                    frref: LinForm::from_ints(&[-1, -2], 5),
                    power: 2,
                    is_modification: false,
                },
                HGFactor {
                    class: scalar_elem(&a, lq(3, 5, 1)),
                    lo: LinForm::from_ints(&[-3, -1], 5),
                    hi: LinForm::zero(2),
                    frref: LinForm::from_ints(&[-3, -1], 5),
                    power: 1,
                    is_modification: false,
                },
            ],
            sector: Some((
                LinForm::from_ints(&[1, 2], 5),
                vec![
                    (rint(0), 0),
                    (rat(1, 5), 1),
                    (rat(2, 5), 2),
                    (rat(3, 5), 3),
                    (rat(4, 5), 4),
                ],
            )),
            modification: vec![],
        },
        pf_ops: vec![],
    }
}

fn spec_vi_y() -> ExampleSpec {
    let a = algebras::alg_y_vi();
    let p = AlgElem::basis(a.clone(), 1);
    let two_lam_m2p = elem(&a, &[(0, lq(2, 1, 1)), (1, lq(-2, 1, 0))]);
    let lam_mp = elem(&a, &[(0, lq(1, 1, 1)), (1, lq(-1, 1, 0))]);
    ExampleSpec {
        id: ExampleId::new(Family::VI, Side::Y),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: IGen {
            spec: a.clone(),
            vars: vec!["y".into()],
            dens: vec![1],
            prefactor: vec![p.clone()],
            factors: vec![
                HGFactor {
                    class: two_lam_m2p.clone(),
                    lo: LinForm::var(1, 0, rint(-2)),
                    hi: LinForm::zero(1),
                    frref: LinForm::zero(1),
                    power: 1,
                    is_modification: true,
                },
                HGFactor {
                    class: lam_mp.clone(),
                    lo: LinForm::var(1, 0, rint(-1)),
                    hi: LinForm::zero(1),
                    frref: LinForm::zero(1),
                    power: 1,
                    is_modification: true,
                },
                HGFactor {
                    class: p,
                    lo: LinForm::zero(1),
                    hi: LinForm::var(1, 0, rint(1)),
                    frref: LinForm::zero(1),
                    power: -3,
                    is_modification: false,
                },
            ],
            sector: None,
            modification: vec![
                ModFactor {
                    class: two_lam_m2p,
                    pair: LinForm::var(1, 0, rint(-2)),
                    mult: 1,
                },
                ModFactor {
                    class: lam_mp,
                    pair: LinForm::var(1, 0, rint(-1)),
                    mult: 1,
                },
            ],
        },
        pf_ops: pf::ops_vi_y(),
    }
}

fn spec_vi_x() -> ExampleSpec {
    let a = algebras::alg_x_vi();
    let q = AlgElem::basis(a.clone(), 1);
    let lam_mq = elem(&a, &[(0, lq(1, 1, 1)), (1, lq(-1, 1, 0))]);
    let prefactor = elem(&a, &[(0, lq(-1, 1, 1)), (1, lq(1, 1, 0))]); // q − λ
    ExampleSpec {
        id: ExampleId::new(Family::VI, Side::X),
        name: a.name().to_string(),
        algebra: a.clone(),
        igen: IGen {
            spec: a.clone(),
            vars: vec!["x".into()],
            dens: vec![2],
            prefactor: vec![prefactor],
            factors: vec![
                HGFactor {
                    class: lam_mq.clone(),
                    lo: LinForm::var(1, 0, rint(-1)),
                    hi: LinForm::zero(1),
                    frref: LinForm::var(1, 0, rint(-1)),
                    power: 3,
                    is_modification: true,
                },
                HGFactor {
                    class: q.clone(),
                    lo: LinForm::zero(1),
                    hi: LinForm::var(1, 0, rint(1)),
                    frref: LinForm::var(1, 0, rint(1)),
                    power: -1,
                    is_modification: false,
                },
                HGFactor {
                    class: q.scale(&lq(2, 1, 0)),
                    lo: LinForm::zero(1),
                    hi: LinForm::var(1, 0, rint(2)),
                    frref: LinForm::zero(1),
                    power: -1,
                    is_modification: false,
                },
            ],
            sector: Some((
                LinForm::var(1, 0, rint(-1)),
                vec![(rint(0), 0), (rat(1, 2), 2)],
            )),
            modification: vec![ModFactor {
                class: lam_mq,
                pair: LinForm::var(1, 0, rint(-1)),
                mult: 3,
            }],
        },
        pf_ops: pf::ops_vi_x(),
    }
}

static REGISTRY: Lazy<BTreeMap<ExampleId, ExampleSpec>> = Lazy::new(|| {
    let mut m = BTreeMap::new();
    for s in [
        spec_i_y(),
        spec_i_x(),
        spec_ii_y(),
        spec_ii_x(),
        spec_iii_y(),
        spec_iii_x(),
        spec_iv_y(),
        spec_iv_x(),
        spec_v_y(),
        spec_v_x(),
        spec_vi_y(),
        spec_vi_x(),
    ] {
        m.insert(s.id, s);
    }
    m
});

/// Look up the immutable spec for one example.
pub fn example_spec(id: ExampleId) -> &'static ExampleSpec {
    REGISTRY.get(&id).expect("all twelve examples are registered")
}

/// All registered examples, in family order with Y before X.
pub fn all_examples() -> Vec<&'static ExampleSpec> {
    let mut out = Vec::new();
    for f in FAMILIES {
        out.push(example_spec(ExampleId::new(f, Side::Y)));
        out.push(example_spec(ExampleId::new(f, Side::X)));
    }
    out
}

/// Is basis label `l` a twisted-sector unit?
pub fn is_twisted_label(l: &str) -> bool {
    l.starts_with('u') && l.contains('/')
}

/// Matrix of Chen–Ruan multiplication by a degree-2 untwisted class ρ in the
/// fixed basis: column j holds the coordinates of ρ·Φ_j.
pub fn cr_mult_matrix(
    spec: &ExampleSpec,
    rho: &AlgElem,
) -> Result<Vec<Vec<RatFuncL>>, RegistryError> {
    if **rho.spec() != *spec.algebra {
        return Err(RegistryError::InvalidArgument(
            "class belongs to a different algebra".into(),
        ));
    }
    if !rho.is_zero() && rho.degree() != Degree::Homogeneous(2) {
        return Err(RegistryError::InvalidArgument(
            "multiplier must be homogeneous of degree 2".into(),
        ));
    }
    for (i, label) in spec.algebra.labels().iter().enumerate() {
        if is_twisted_label(label) && !rho.coeff(i).is_zero() {
            return Err(RegistryError::InvalidArgument(
                "multiplier must be supported on the untwisted sector".into(),
            ));
        }
    }
    let n = spec.algebra.dim();
    let mut out = vec![vec![RatFuncL::zero(); n]; n];
    for j in 0..n {
        let col = rho.mul(&AlgElem::basis(spec.algebra.clone(), j))?;
        for k in 0..n {
            out[k][j] = col.coeff(k).clone();
        }
    }
    Ok(out)
}

// --------------------------- JSON export ----------------------------------

#[derive(Serialize, Deserialize)]
pub struct LinFormDoc {
    pub constant: String,
    pub coeffs: Vec<String>,
}

fn linform_doc(l: &LinForm) -> LinFormDoc {
    LinFormDoc {
        constant: l.constant.to_string(),
        coeffs: l.coeffs.iter().map(|c| c.to_string()).collect(),
    }
}

#[derive(Serialize, Deserialize)]
pub struct HGFactorDoc {
    pub class: Vec<String>,
    pub lo: LinFormDoc,
    pub hi: LinFormDoc,
    pub frref: LinFormDoc,
    pub power: i32,
    pub is_modification: bool,
}

#[derive(Serialize, Deserialize)]
pub struct ExampleSpecDoc {
    pub id: String,
    pub name: String,
    pub algebra: AlgebraSpecDoc,
    pub variables: Vec<String>,
    pub denominators: Vec<i64>,
    pub prefactor: Vec<Vec<String>>,
    pub factors: Vec<HGFactorDoc>,
    pub sector: Option<(LinFormDoc, Vec<(String, usize)>)>,
    pub pf_operator_count: usize,
}

impl ExampleSpec {
    pub fn to_doc(&self) -> ExampleSpecDoc {
        let g = &self.igen;
        ExampleSpecDoc {
            id: self.id.code(),
            name: self.name.clone(),
            algebra: self.algebra.to_doc(),
            variables: g.vars.clone(),
            denominators: g.dens.clone(),
            prefactor: g
                .prefactor
                .iter()
                .map(|p| p.coeffs().iter().map(|c| c.to_string()).collect())
                .collect(),
            factors: g
                .factors
                .iter()
                .map(|f| HGFactorDoc {
                    class: f.class.coeffs().iter().map(|c| c.to_string()).collect(),
                    lo: linform_doc(&f.lo),
                    hi: linform_doc(&f.hi),
                    frref: linform_doc(&f.frref),
                    power: f.power,
                    is_modification: f.is_modification,
                })
                .collect(),
            sector: g.sector.as_ref().map(|(s, table)| {
                (
                    linform_doc(s),
                    table.iter().map(|(v, i)| (v.to_string(), *i)).collect(),
                )
            }),
            pf_operator_count: self.pf_ops.len(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }
}

/// Kept for cross-checking: the localization pairing of a Rat value.
pub fn rat_from(r: i64, s: i64) -> Rat {
    rat(r, s)
}
