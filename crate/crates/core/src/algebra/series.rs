//! Truncated univariate power series `sum c_k t^k`, `k < len`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::Coeff;
use super::rat::series_div;

pub fn mul(a: &[Coeff], b: &[Coeff], len: usize) -> Vec<Coeff> {
    let mut out = vec![Coeff::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

pub fn inv(a: &[Coeff], len: usize) -> Vec<Coeff> {
    series_div(&[Coeff::one()], a, len)
}

pub fn pow_int(a: &[Coeff], k: i32, len: usize) -> Vec<Coeff> {
    let base = if k < 0 { inv(a, len) } else { a[..a.len().min(len)].to_vec() };
    let mut acc = vec![Coeff::zero(); len];
    acc[0] = Coeff::one();
    for _ in 0..k.unsigned_abs() {
        acc = mul(&acc, &base, len);
    }
    acc
}

/// `(1 + u)^(p/q)` for `u(0) = 0`, by the binomial series.
pub fn pow_rational(u: &[Coeff], p: i64, q: i64, len: usize) -> Vec<Coeff> {
    let alpha = BigRational::new(BigInt::from(p), BigInt::from(q));
    let mut acc = vec![Coeff::zero(); len];
    acc[0] = Coeff::one();
    let mut term = acc.clone();
    let mut binom = BigRational::from_integer(BigInt::from(1));
    for n in 1..len {
        let nn = BigRational::from_integer(BigInt::from(n as i64));
        binom = binom * (alpha.clone() - (nn.clone() - BigRational::from_integer(BigInt::from(1)))) / nn;
        term = mul(&term, u, len);
        let c = Coeff::rational(binom.clone());
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += &(&c * t);
        }
    }
    acc
}

/// `f(g(t))` for `g(0) = 0`.
pub fn compose(f: &[Coeff], g: &[Coeff], len: usize) -> Vec<Coeff> {
    let mut out = vec![Coeff::zero(); len];
    let mut pw = vec![Coeff::zero(); len];
    pw[0] = Coeff::one();
    for c in f.iter().take(len) {
        for (o, p) in out.iter_mut().zip(&pw) {
            *o += &(c * p);
        }
        pw = mul(&pw, g, len);
    }
    out
}

/// Compositional inverse of `g = t + O(t^2)`.
pub fn reversion(g: &[Coeff], len: usize) -> Vec<Coeff> {
    // fixed point h = t - (g(h) - h), one correct coefficient per pass
    let mut h = vec![Coeff::zero(); len];
    if len > 1 {
        h[1] = Coeff::one();
    }
    for _ in 0..len {
        let gh = compose(g, &h, len);
        let mut next = h.clone();
        for k in 0..len {
            let ident = if k == 1 { Coeff::one() } else { Coeff::zero() };
            next[k] = &h[k] - &(&gh[k] - &ident);
        }
        h = next;
    }
    h
}
