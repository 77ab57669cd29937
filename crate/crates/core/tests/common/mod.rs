#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use willmore_core::examples::zpow;
use willmore_core::*;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn small_q() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

pub fn gauss() -> impl Strategy<Value = Coeff> {
    (small_q(), small_q()).prop_map(|(a, b)| Coeff::gauss(a, b))
}

pub fn real_point(n: usize) -> impl Strategy<Value = Vec<Coeff>> {
    prop::collection::vec(small_q().prop_map(Coeff::rational), n)
}

/// Rotation by the rational angle with `tan(theta/2) = t` in the plane `(i, j)`.
fn givens(v: &mut [Coeff], i: usize, j: usize, t: &BigRational) {
    let one = q(1, 1);
    let d = &one + t * t;
    let c = Coeff::rational((&one - t * t) / &d);
    let s = Coeff::rational(q(2, 1) * t / &d);
    let (a, b) = (v[i].clone(), v[j].clone());
    v[i] = &(&c * &a) - &(&s * &b);
    v[j] = &(&s * &a) + &(&c * &b);
}

/// Rotated isotropic frame `O (e_1 + i e_2), O (e_3 + i e_4), O (e_5 + i e_6)`.
pub fn isotropic_frame(angles: &[(usize, usize, BigRational)]) -> Vec<Vec<Coeff>> {
    (0..3)
        .map(|k| {
            let mut v = vec![Coeff::zero(); 6];
            v[2 * k] = Coeff::one();
            v[2 * k + 1] = Coeff::i();
            for (i, j, t) in angles {
                givens(&mut v, *i, *j, t);
            }
            v
        })
        .collect()
}

pub fn angles() -> impl Strategy<Value = Vec<(usize, usize, BigRational)>> {
    prop::collection::vec(
        (0usize..6, 0usize..6, small_q()).prop_filter("distinct axes", |(i, j, _)| i != j),
        0..6,
    )
}

fn combo(frame: &[Vec<Coeff>], c: &[Coeff]) -> Vec<Coeff> {
    (0..6).map(|i| frame.iter().zip(c).fold(Coeff::zero(), |acc, (v, c)| &acc + &(c * &v[i]))).collect()
}

/// `F = u z + w z^2` with `u`, `w` in a totally isotropic subspace of `C^6`.
pub fn quadratic_data(frame: &[Vec<Coeff>], a: &[Coeff], b: &[Coeff]) -> Vec<Rat> {
    let u = combo(frame, a);
    let w = combo(frame, b);
    (0..6).map(|i| zpow(u[i].clone(), 1).add(&zpow(w[i].clone(), 2))).collect()
}

/// Random superconformal quadratic minimal surface in `R^6`; `None` when degenerate.
pub fn quadratic_surface() -> impl Strategy<Value = MinimalSurface> {
    (angles(), prop::collection::vec(gauss(), 3), prop::collection::vec(gauss(), 3)).prop_filter_map(
        "degenerate data",
        |(ang, a, b)| {
            let frame = isotropic_frame(&ang);
            MinimalSurface::new(quadratic_data(&frame, &a, &b)).ok()
        },
    )
}
