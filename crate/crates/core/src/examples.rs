//! Holomorphic data and closed forms of the three worked Willmore spheres.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{BiPoly, BiRat, Coeff, FieldVec, Poly, Rat, Var, VecBiRat};
use crate::gram::Ansatz;
use crate::surface::MinimalSurface;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `re + i im` with rational parts.
pub fn cq(re: (i64, i64), im: (i64, i64)) -> Coeff {
    Coeff::gauss(q(re.0, re.1), q(im.0, im.1))
}

/// `c z^k` for any integer `k`.
pub fn zpow(c: Coeff, k: i32) -> Rat {
    if k >= 0 {
        Rat::from_poly(Poly::monomial(c, k as usize, Var::Z))
    } else {
        Rat::new(Poly::constant(c, Var::Z), Poly::monomial(Coeff::one(), (-k) as usize, Var::Z)).unwrap()
    }
}

/// `sum_k c_k (z zb)^k`
pub fn radial(c: &[Coeff]) -> BiPoly {
    BiPoly::from_terms(c.iter().enumerate().map(|(k, c)| ((k as u32, k as u32), c.clone())))
}

fn bp(terms: &[(Coeff, u32, u32)]) -> BiPoly {
    BiPoly::from_terms(terms.iter().map(|(c, a, b)| ((*a, *b), c.clone())))
}

/// First example: a totally isotropic minimal surface in R^6 with ends at 0 and infinity.
pub fn example1_f() -> Vec<Rat> {
    vec![
        zpow(cq((0, 1), (1, 4)), 1),
        zpow(cq((-1, 4), (0, 1)), 1),
        zpow(cq((0, 1), (1, 2)), -1),
        zpow(cq((1, 2), (0, 1)), -1),
        zpow(cq((0, 1), (1, 6)), 2),
        zpow(cq((-1, 6), (0, 1)), 2),
    ]
}

pub fn example1() -> MinimalSurface {
    MinimalSurface::new(example1_f()).expect("conformal data")
}

/// `1 + r^4/4 + 4 r^6/9`
pub fn example1_p() -> BiPoly {
    radial(&[Coeff::one(), Coeff::zero(), Coeff::ratio(1, 4), Coeff::ratio(4, 9)])
}

/// Closed form of the pedal surface at the origin.
pub fn example1_pedal() -> VecBiRat {
    let half_i = cq((0, 1), (1, 2));
    let m_half = Coeff::ratio(-1, 2);
    let a = radial(&[Coeff::one(), Coeff::zero(), Coeff::zero(), Coeff::ratio(1, 9)]);
    let b = radial(&[Coeff::zero(), Coeff::ratio(1, 4), Coeff::ratio(1, 3)]);
    let c = radial(&[Coeff::one(), Coeff::zero(), Coeff::ratio(-1, 12)]);
    let one = Coeff::one();
    let i = Coeff::i();
    let mi = -Coeff::i();
    let comps = vec![
        a.mul(&bp(&[(half_i.clone(), 1, 0), (-half_i.clone(), 0, 1)])),
        a.mul(&bp(&[(m_half.clone(), 1, 0), (m_half.clone(), 0, 1)])),
        b.mul(&bp(&[(mi.clone(), 1, 0), (i.clone(), 0, 1)])),
        b.mul(&bp(&[(one.clone(), 1, 0), (one.clone(), 0, 1)])),
        c.mul(&bp(&[(half_i.clone(), 2, 0), (-half_i, 0, 2)])),
        c.mul(&bp(&[(m_half.clone(), 2, 0), (m_half, 0, 2)])),
    ];
    let p = example1_p();
    FieldVec(comps.into_iter().map(|n| BiRat::ratio(n, &p).unwrap()).collect())
}

/// Reference eight-component polynomial lift of the pedal surface.
pub fn example1_pedal_lift() -> VecBiRat {
    let i = Coeff::i();
    let mi = -Coeff::i();
    let one = Coeff::one();
    let mone = Coeff::int(-1);
    let a = radial(&[Coeff::one(), Coeff::zero(), Coeff::zero(), Coeff::ratio(1, 9)]);
    let b = radial(&[Coeff::zero(), Coeff::ratio(1, 2), Coeff::ratio(2, 3)]);
    let c = radial(&[Coeff::one(), Coeff::zero(), Coeff::ratio(-1, 12)]);
    let comps = vec![
        a.mul(&bp(&[(i.clone(), 1, 0), (mi.clone(), 0, 1)])),
        a.mul(&bp(&[(mone.clone(), 1, 0), (mone.clone(), 0, 1)])),
        b.mul(&bp(&[(mi.clone(), 1, 0), (i.clone(), 0, 1)])),
        b.mul(&bp(&[(one.clone(), 1, 0), (one.clone(), 0, 1)])),
        c.mul(&bp(&[(i.clone(), 2, 0), (mi, 0, 2)])),
        c.mul(&bp(&[(mone.clone(), 2, 0), (mone, 0, 2)])),
        radial(&[
            Coeff::one(),
            Coeff::int(-1),
            Coeff::ratio(-3, 4),
            Coeff::ratio(4, 9),
            Coeff::ratio(-1, 36),
        ]),
        radial(&[Coeff::one(), Coeff::one(), Coeff::ratio(5, 4), Coeff::ratio(4, 9), Coeff::ratio(1, 36)]),
    ];
    FieldVec(comps.into_iter().map(BiRat::from_poly).collect())
}

/// `1 + 4r^2 + r^4/4 + 2r^6/9 + 4r^8/9 + r^10/36 + r^12/81`
pub fn example1_lift_metric() -> BiPoly {
    radial(&[
        Coeff::one(),
        Coeff::int(4),
        Coeff::ratio(1, 4),
        Coeff::ratio(2, 9),
        Coeff::ratio(4, 9),
        Coeff::ratio(1, 36),
        Coeff::ratio(1, 81),
    ])
}

/// Second example: poles of order three at 0 and 1, ordered `(u3, u2, v3, v2, w3, w2)`.
pub fn example2_ansatz() -> Ansatz {
    Ansatz::Poles { poles: vec![(Coeff::zero(), 3), (Coeff::one(), 3)], poly_degree: Some(1) }
}

/// Gram matrix of `(u3, u2, v3, v2, w3, w2)` at `a = 1`.
pub fn example2_gram() -> Vec<Vec<Coeff>> {
    let rows: [[(i64, i64); 6]; 6] = [
        [(0, 1), (0, 1), (-1, 1), (-2, 1), (1, 1), (1, 1)],
        [(0, 1), (0, 1), (2, 1), (5, 2), (1, 1), (-1, 2)],
        [(-1, 1), (2, 1), (0, 1), (0, 1), (1, 1), (-2, 1)],
        [(-2, 1), (5, 2), (0, 1), (0, 1), (-1, 1), (1, 2)],
        [(1, 1), (1, 1), (1, 1), (-1, 1), (0, 1), (0, 1)],
        [(1, 1), (-1, 2), (-2, 1), (1, 2), (0, 1), (0, 1)],
    ];
    rows.iter().map(|r| r.iter().map(|&(n, d)| Coeff::ratio(n, d)).collect()).collect()
}

/// `(z^3 - 1)^3 z^3`
pub fn example3_denominator() -> Poly {
    Poly::from_ints(&[-1, 0, 0, 1], Var::Z).pow(3).shift_up(3)
}

/// Third example: `x_z = Phi / ((z^3 - 1)^3 z^3)` with `deg Phi <= 10`.
pub fn example3_ansatz() -> Ansatz {
    Ansatz::Numerator { denominator: example3_denominator(), degree: 10, eliminate: vec![6, 7, 2] }
}

pub fn e1() -> Vec<Coeff> {
    vec![Coeff::one(), Coeff::i(), Coeff::zero(), Coeff::zero(), Coeff::zero()]
}

pub fn e2() -> Vec<Coeff> {
    vec![Coeff::zero(), Coeff::zero(), Coeff::one(), Coeff::i(), Coeff::zero()]
}

pub fn e5() -> Vec<Coeff> {
    vec![Coeff::zero(), Coeff::zero(), Coeff::zero(), Coeff::zero(), Coeff::one()]
}

fn lin(terms: &[(Coeff, &[Coeff])]) -> Vec<Coeff> {
    (0..5).map(|k| terms.iter().fold(Coeff::zero(), |acc, (c, v)| acc + &(c * &v[k]))).collect()
}

fn conj_vec(v: &[Coeff]) -> Vec<Coeff> {
    v.iter().map(Coeff::conj).collect()
}

/// Coefficients `v_0 ..= v_10` of the reference `Phi`.
pub fn example3_phi() -> Vec<Vec<Coeff>> {
    let (a, b, c) = (e1(), e2(), e5());
    let (ab, bb) = (conj_vec(&a), conj_vec(&b));
    let r30 = Coeff::sqrt(30);
    let zero = vec![Coeff::zero(); 5];
    vec![
        a.clone(),
        zero.clone(),
        zero.clone(),
        lin(&[(Coeff::int(-20), &a), (Coeff::int(-8), &b)]),
        lin(&[(r30.clone(), &c)]),
        bb,
        lin(&[(Coeff::int(-80), &a), (Coeff::int(-20), &b)]),
        lin(&[(&r30 * &Coeff::int(2), &c)]),
        lin(&[(Coeff::ratio(1, 2), &ab)]),
        lin(&[(Coeff::int(10), &b)]),
        zero,
    ]
}

/// Closed form of `F` for the third example.
pub fn example3_f() -> Vec<Rat> {
    let q = Poly::from_ints(&[-1, 0, 0, 1], Var::Z).pow(2);
    let r = |num: &[i64], scale: Coeff, extra: usize| -> Rat {
        let n = Poly::from_ints(num, Var::Z).scale(&scale);
        Rat::new(n, q.shift_up(extra)).unwrap()
    };
    let (a, b, c) = (e1(), e2(), e5());
    let (ab, bb) = (conj_vec(&a), conj_vec(&b));
    let terms: Vec<(Rat, Vec<Coeff>)> = vec![
        (r(&[1, 0, 0, 32], Coeff::ratio(1, 2), 2), a),
        (r(&[1, 0, 0, -2], Coeff::ratio(1, 12), 0), ab),
        (r(&[0, 8, 0, 0, -5], Coeff::one(), 0), b),
        (r(&[1], Coeff::ratio(-1, 6), 0), bb),
        (r(&[0, 0, 1], &Coeff::sqrt(30) * &Coeff::ratio(-1, 2), 0), c),
    ];
    (0..5).map(|k| terms.iter().fold(Rat::zero(Var::Z), |acc, (f, v)| acc.add(&f.scale(&v[k])))).collect()
}

pub fn example3() -> MinimalSurface {
    MinimalSurface::new(example3_f()).expect("conformal data")
}
