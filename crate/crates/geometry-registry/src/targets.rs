//! Frozen verification targets: closed-form constants (evaluable to any
//! precision) and exact rational tables that downstream computations must
//! reproduce.

use core_algebra::gamma::hp_gamma;
use core_algebra::hp::{bits_for_digits, HPComplex};
use core_algebra::rat::{rat, rint, Rat};

/// Closed-form constant, optionally carrying powers of the formal variable z.
/// Trigonometric arguments are rational multiples of π.
#[derive(Clone, Debug)]
pub enum ConstExpr {
    Num(Rat),
    Pi,
    /// The imaginary unit.
    I,
    /// Γ at a rational argument.
    Gamma(Rat),
    /// sin(r·π).
    SinPi(Rat),
    /// cos(r·π).
    CosPi(Rat),
    Sqrt(Box<ConstExpr>),
    /// z^k for the formal variable supplied at evaluation time.
    Z(i64),
    Neg(Box<ConstExpr>),
    Pow(Box<ConstExpr>, i32),
    Mul(Vec<ConstExpr>),
    Add(Vec<ConstExpr>),
}

impl ConstExpr {
    /// Evaluate to `digits` decimal digits with the given value of z.
    pub fn eval(&self, z: &HPComplex, digits: u32) -> HPComplex {
        let prec = bits_for_digits(digits + 10);
        match self {
            ConstExpr::Num(r) => HPComplex::from_rat(r, prec),
            ConstExpr::Pi => HPComplex::from_real(HPComplex::pi(prec)),
            ConstExpr::I => HPComplex::i(prec),
            ConstExpr::Gamma(r) => {
                hp_gamma(&HPComplex::from_rat(r, prec), digits).expect("argument off the poles")
            }
            ConstExpr::SinPi(r) => {
                let arg =
                    HPComplex::from_rat(r, prec).scale_f(&HPComplex::pi(prec));
                arg.sin()
            }
            ConstExpr::CosPi(r) => {
                let arg =
                    HPComplex::from_rat(r, prec).scale_f(&HPComplex::pi(prec));
                arg.cos()
            }
            ConstExpr::Sqrt(e) => e.eval(z, digits).sqrt(),
            ConstExpr::Z(k) => z.powi(*k),
            ConstExpr::Neg(e) => -&e.eval(z, digits),
            ConstExpr::Pow(e, k) => e.eval(z, digits).powi(*k as i64),
            ConstExpr::Mul(v) => {
                let mut acc = HPComplex::one(prec);
                for e in v {
                    acc = &acc * &e.eval(z, digits);
                }
                acc
            }
            ConstExpr::Add(v) => {
                let mut acc = HPComplex::zero(prec);
                for e in v {
                    acc = &acc + &e.eval(z, digits);
                }
                acc
            }
        }
    }
}

// -------------------- expression-building shorthand -----------------------

pub fn num(p: i64, q: i64) -> ConstExpr {
    ConstExpr::Num(rat(p, q))
}

pub fn gam(p: i64, q: i64) -> ConstExpr {
    ConstExpr::Gamma(rat(p, q))
}

pub fn powi(e: ConstExpr, k: i32) -> ConstExpr {
    ConstExpr::Pow(Box::new(e), k)
}

pub fn sqrt(e: ConstExpr) -> ConstExpr {
    ConstExpr::Sqrt(Box::new(e))
}

pub fn neg(e: ConstExpr) -> ConstExpr {
    ConstExpr::Neg(Box::new(e))
}

pub fn mul(v: Vec<ConstExpr>) -> ConstExpr {
    ConstExpr::Mul(v)
}

pub fn add(v: Vec<ConstExpr>) -> ConstExpr {
    ConstExpr::Add(v)
}

/// csc(r·π) = 1/sin(r·π).
pub fn cscpi(p: i64, q: i64) -> ConstExpr {
    powi(ConstExpr::SinPi(rat(p, q)), -1)
}

/// sec(r·π) = 1/cos(r·π).
pub fn secpi(p: i64, q: i64) -> ConstExpr {
    powi(ConstExpr::CosPi(rat(p, q)), -1)
}

pub fn zero() -> ConstExpr {
    num(0, 1)
}

pub fn one() -> ConstExpr {
    num(1, 1)
}

fn zpow(k: i64) -> ConstExpr {
    ConstExpr::Z(k)
}

// ----------------------------- exact tables -------------------------------

/// One-point degree-d invariants of the local plane, d = 1..4.
pub fn local_p2_one_point() -> Vec<Rat> {
    vec![rint(3), rat(-45, 4), rat(244, 3), rat(-12333, 16)]
}

/// The associated local BPS-normalized numbers K_d = invariant / d, d = 1..4.
pub fn local_p2_kd() -> Vec<Rat> {
    vec![rint(3), rat(-45, 8), rat(244, 9), rat(-12333, 64)]
}

/// Coefficients of the inverse mirror map y(q) = q + 6q² + 9q³ + 56q⁴ − 300q⁵
/// for the local plane.
pub fn local_p2_inverse_mirror() -> Vec<Rat> {
    vec![rint(1), rint(6), rint(9), rint(56), rint(-300)]
}

/// a_d table for the weighted bundle of families II/III, d = 1..6.
pub fn kp112_a_table() -> Vec<Rat> {
    vec![
        rat(-7, 2),
        rat(-265, 16),
        rat(-5471, 27),
        rat(-467721, 128),
        rat(-20372507, 250),
        rat(-448940081, 216),
    ]
}

/// b_d table (coefficients of λ), d = 1..6.
pub fn kp112_b_table() -> Vec<Rat> {
    vec![
        rat(11, 4),
        rat(525, 16),
        rat(6152, 9),
        rat(1146765, 64),
        rat(53305261, 100),
        rat(51550873, 3),
    ]
}

/// c_d table for half-integer degrees d = 1/2, 3/2, …, 13/2.
pub fn kp112_c_table() -> Vec<Rat> {
    vec![
        rint(-2),
        rat(-52, 9),
        rat(-2002, 25),
        rat(-83004, 49),
        rat(-3554552, 81),
        rat(-154984300, 121),
        rat(-6835086702, 169),
    ]
}

/// A_{n,m} degree-zero table for the Z4 orbifold point: rows indexed by
/// m = 0..10, row m listing n = 0.. (triangular, n + m ≤ 10).
pub fn z4_a_table() -> Vec<Vec<Rat>> {
    vec![
        vec![
            rint(0),
            rint(0),
            rint(0),
            rint(0),
            rat(-1, 8),
            rint(0),
            rint(0),
            rint(0),
            rat(-9, 64),
            rint(0),
            rint(0),
        ],
        vec![
            rint(0),
            rint(0),
            rat(1, 4),
            rint(0),
            rint(0),
            rint(0),
            rat(7, 128),
            rint(0),
            rint(0),
            rint(0),
        ],
        vec![
            rint(0),
            rint(0),
            rint(0),
            rint(0),
            rat(-1, 32),
            rint(0),
            rint(0),
            rint(0),
            rat(-143, 512),
        ],
        vec![
            rint(0),
            rint(0),
            rat(1, 32),
            rint(0),
            rint(0),
            rint(0),
            rat(3, 32),
            rint(0),
        ],
        vec![
            rat(-1, 8),
            rint(0),
            rint(0),
            rint(0),
            rat(-11, 256),
            rint(0),
            rint(0),
        ],
        vec![rint(0), rint(0), rat(1, 32), rint(0), rint(0), rint(0)],
        vec![rat(-1, 16), rint(0), rint(0), rint(0), rat(-147, 1024)],
        vec![rint(0), rint(0), rat(87, 1024), rint(0)],
        vec![rat(-1, 8), rint(0), rint(0)],
        vec![rint(0), rint(0)],
        vec![rat(-17, 32)],
    ]
}

/// B_{n,m} degree-zero table (coefficients of λ): rows indexed by m = 0..9,
/// row m listing n = 0.. (triangular, n + m ≤ 9).
pub fn z4_b_table() -> Vec<Vec<Rat>> {
    vec![
        vec![
            rint(0),
            rint(0),
            rint(0),
            rint(0),
            rint(0),
            rat(-5, 128),
            rint(0),
            rint(0),
            rint(0),
            rat(-865, 2048),
        ],
        vec![
            rint(0),
            rint(0),
            rint(0),
            rat(3, 128),
            rint(0),
            rint(0),
            rint(0),
            rat(117, 1024),
            rint(0),
        ],
        vec![
            rint(0),
            rat(-1, 32),
            rint(0),
            rint(0),
            rint(0),
            rat(-41, 1024),
            rint(0),
            rint(0),
        ],
        vec![rint(0), rint(0), rint(0), rat(5, 256), rint(0), rint(0), rint(0)],
        vec![rint(0), rat(-1, 64), rint(0), rint(0), rint(0), rat(-487, 4096)],
        vec![rint(0), rint(0), rint(0), rat(201, 4096), rint(0)],
        vec![rint(0), rat(-1, 32), rint(0), rint(0)],
        vec![rint(0), rint(0), rint(0)],
        vec![rint(0), rat(-17, 128)],
        vec![rint(0)],
    ]
}

/// Twisted one-point invariants of the weighted bundle of families IV/V,
/// keyed by (number of age-1/3 insertions, total degree): values in Q, with
/// the degree stored as an exact rational.
pub fn kp113_invariant_targets() -> Vec<(usize, Rat, Rat)> {
    vec![
        (1, rat(1, 3), rint(-2)),
        (1, rat(4, 3), rat(3757, 648)),
        (2, rat(2, 3), rat(-13, 18)),
        (3, rint(0), rat(1, 3)),
        (4, rat(1, 3), rat(-2, 27)),
    ]
}

// --------------------- closed-form matrices and scalars --------------------

/// Nonequivariant limit of the symplectic transformation for family IV, in
/// the printed bases (5×5, entries carrying explicit z powers).
pub fn u_matrix_iv() -> Vec<Vec<ConstExpr>> {
    let s3 = sqrt(num(3, 1)); // √3
    let g13_3 = powi(gam(1, 3), 3);
    let g23_3 = powi(gam(2, 3), 3);
    vec![
        vec![one(), zero(), zero(), zero(), zero()],
        vec![
            zero(),
            num(1, 3),
            zero(),
            mul(vec![num(2, 3), ConstExpr::Pi, powi(s3.clone(), -1), powi(g23_3.clone(), -1)]),
            neg(mul(vec![
                num(2, 3),
                ConstExpr::Pi,
                zpow(1),
                powi(s3.clone(), -1),
                powi(g13_3.clone(), -1),
            ])),
        ],
        vec![
            zero(),
            zero(),
            zero(),
            neg(mul(vec![num(2, 1), ConstExpr::Pi, powi(s3.clone(), -1), powi(g23_3.clone(), -1)])),
            mul(vec![
                num(2, 1),
                ConstExpr::Pi,
                zpow(1),
                powi(s3.clone(), -1),
                powi(g13_3.clone(), -1),
            ]),
        ],
        vec![
            mul(vec![num(1, 9), powi(ConstExpr::Pi, 2), zpow(-2)]),
            zero(),
            num(1, 3),
            mul(vec![num(2, 9), powi(ConstExpr::Pi, 2), zpow(-1), powi(g23_3.clone(), -1)]),
            mul(vec![num(2, 9), powi(ConstExpr::Pi, 2), powi(g13_3.clone(), -1)]),
        ],
        vec![
            neg(mul(vec![num(1, 3), powi(ConstExpr::Pi, 2), zpow(-2)])),
            zero(),
            zero(),
            neg(mul(vec![num(2, 3), powi(ConstExpr::Pi, 2), zpow(-1), powi(g23_3, -1)])),
            neg(mul(vec![num(2, 3), powi(ConstExpr::Pi, 2), powi(g13_3, -1)])),
        ],
    ]
}

/// Nonequivariant limit of the symplectic transformation for family V (5×5).
pub fn u_matrix_v() -> Vec<Vec<ConstExpr>> {
    let pi = || ConstExpr::Pi;
    let pi2 = || powi(ConstExpr::Pi, 2);
    let s3 = || sqrt(num(3, 1));
    let g13_3 = || powi(gam(1, 3), 3);
    let g23_3 = || powi(gam(2, 3), 3);
    let s5 = || sqrt(num(5, 1));
    // √(2 + 2/√5)
    let r_a = || sqrt(add(vec![num(2, 1), mul(vec![num(2, 1), powi(s5(), -1)])]));
    // √(2(5+√5)) = √(10 + 2√5)
    let r_b = || sqrt(add(vec![num(10, 1), mul(vec![num(2, 1), s5()])]));
    // √((5/2)(5+√5)) = √(25/2 + (5/2)√5)
    let r_c = || sqrt(add(vec![num(25, 2), mul(vec![num(5, 2), s5()])]));
    vec![
        vec![one(), zero(), zero(), zero(), zero()],
        vec![
            zero(),
            neg(mul(vec![r_a(), pi(), powi(gam(2, 5), -1), powi(gam(4, 5), -2)])),
            mul(vec![
                num(25, 1),
                pi(),
                powi(r_b(), -1),
                powi(gam(-2, 5), -2),
                powi(gam(4, 5), -1),
            ]),
            neg(mul(vec![
                num(5, 1),
                pi(),
                zpow(1),
                powi(r_b(), -1),
                powi(gam(-4, 5), -1),
                powi(gam(2, 5), -2),
            ])),
            mul(vec![r_c(), pi(), zpow(1), powi(gam(-2, 5), -1), powi(gam(1, 5), -2)]),
        ],
        vec![
            neg(mul(vec![pi2(), zpow(-2)])),
            neg(mul(vec![
                num(5, 1),
                add(vec![num(5, 1), mul(vec![num(3, 1), s5()])]),
                pi2(),
                zpow(-1),
                powi(gam(-1, 5), -2),
                powi(gam(2, 5), -1),
            ])),
            mul(vec![
                add(vec![num(-1, 1), mul(vec![num(3, 1), powi(s5(), -1)])]),
                pi2(),
                zpow(-1),
                powi(gam(3, 5), -2),
                powi(gam(4, 5), -1),
            ]),
            mul(vec![
                add(vec![num(1, 1), neg(mul(vec![num(3, 1), powi(s5(), -1)]))]),
                pi2(),
                powi(gam(1, 5), -1),
                powi(gam(2, 5), -2),
            ]),
            mul(vec![
                add(vec![num(1, 1), mul(vec![num(3, 1), powi(s5(), -1)])]),
                pi2(),
                powi(gam(1, 5), -2),
                powi(gam(3, 5), -1),
            ]),
        ],
        vec![
            mul(vec![num(1, 5), g23_3(), zpow(-1)]),
            mul(vec![
                num(1, 10),
                s3(),
                cscpi(2, 15),
                g23_3(),
                powi(gam(2, 5), -1),
                powi(gam(4, 5), -2),
            ]),
            mul(vec![
                num(1, 10),
                s3(),
                cscpi(1, 15),
                g23_3(),
                powi(gam(3, 5), -2),
                powi(gam(4, 5), -1),
            ]),
            mul(vec![
                num(1, 10),
                s3(),
                zpow(1),
                g23_3(),
                secpi(7, 30),
                powi(gam(1, 5), -1),
                powi(gam(2, 5), -2),
            ]),
            neg(mul(vec![
                num(1, 10),
                s3(),
                zpow(1),
                g23_3(),
                secpi(1, 30),
                powi(gam(1, 5), -2),
                powi(gam(3, 5), -1),
            ])),
        ],
        vec![
            neg(mul(vec![num(1, 5), g13_3(), zpow(-2)])),
            neg(mul(vec![
                num(1, 10),
                s3(),
                g13_3(),
                secpi(1, 30),
                zpow(-1),
                powi(gam(2, 5), -1),
                powi(gam(4, 5), -2),
            ])),
            mul(vec![
                num(1, 10),
                s3(),
                g13_3(),
                secpi(7, 30),
                zpow(-1),
                powi(gam(3, 5), -2),
                powi(gam(4, 5), -1),
            ]),
            mul(vec![
                num(1, 10),
                s3(),
                cscpi(1, 15),
                g13_3(),
                powi(gam(1, 5), -1),
                powi(gam(2, 5), -2),
            ]),
            mul(vec![
                num(1, 10),
                s3(),
                cscpi(2, 15),
                g13_3(),
                powi(gam(1, 5), -2),
                powi(gam(3, 5), -1),
            ]),
        ],
    ]
}

/// Family V: the z⁻¹ coefficient of the image of the untwisted unit is this
/// constant times the age-1/3 unit.
pub fn v_unit_image_coeff() -> ConstExpr {
    mul(vec![num(1, 5), powi(gam(2, 3), 3)])
}

/// Family III: the continuation constant c¹ = π·√−1.
pub fn c1_iii() -> ConstExpr {
    mul(vec![ConstExpr::Pi, ConstExpr::I])
}

/// Family IV corollary: prefactor 2π/(√3·Γ(1/3)³) of the correction series
/// f(u) whose leading coefficients repeat the invariant targets.
pub fn ruan_prefactor_iv() -> ConstExpr {
    mul(vec![
        num(2, 1),
        ConstExpr::Pi,
        powi(sqrt(num(3, 1)), -1),
        powi(powi(gam(1, 3), 3), -1),
    ])
}

/// Family IV corollary: coefficients of f(u) at u^{1/3} and u^{4/3} inside
/// the prefactor.
pub fn ruan_series_coeffs_iv() -> Vec<(Rat, Rat)> {
    vec![(rat(1, 3), rint(-2)), (rat(4, 3), rat(3757, 648))]
}
