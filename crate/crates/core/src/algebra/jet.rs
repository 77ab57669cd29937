//! Truncated Taylor series in `(dz, dzb)` at a fixed point, with double-precision coefficients.

use num_complex::Complex64;

use super::bipoly::BiPoly;
use super::birat::BiRat;
use super::coeff::Coeff;
use super::field::DiffField;
use super::AlgebraError;

/// `sum c[i,j] dz^i dzb^j` over `i + j <= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    order: usize,
    c: Vec<Complex64>,
}

#[inline]
fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

fn len(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

impl Jet {
    pub fn zero(order: usize) -> Jet {
        Jet { order, c: vec![Complex64::new(0.0, 0.0); len(order)] }
    }

    pub fn constant(v: Complex64, order: usize) -> Jet {
        let mut j = Jet::zero(order);
        j.c[0] = v;
        j
    }

    /// The coordinate `z` at `p`.
    pub fn z(p: Complex64, order: usize) -> Jet {
        let mut j = Jet::constant(p, order);
        if order > 0 {
            j.c[idx(1, 0)] = Complex64::new(1.0, 0.0);
        }
        j
    }

    /// The coordinate `zb` at `p`.
    pub fn zb(p: Complex64, order: usize) -> Jet {
        let mut j = Jet::constant(p.conj(), order);
        if order > 0 {
            j.c[idx(0, 1)] = Complex64::new(1.0, 0.0);
        }
        j
    }

    /// From Taylor coefficients of a holomorphic function.
    pub fn holomorphic(t: &[Complex64], order: usize) -> Jet {
        let mut j = Jet::zero(order);
        for (k, v) in t.iter().enumerate().take(order + 1) {
            j.c[idx(k, 0)] = *v;
        }
        j
    }

    /// From Taylor coefficients of an antiholomorphic function (in `dzb`).
    pub fn antiholomorphic(t: &[Complex64], order: usize) -> Jet {
        let mut j = Jet::zero(order);
        for (k, v) in t.iter().enumerate().take(order + 1) {
            j.c[idx(0, k)] = *v;
        }
        j
    }

    /// Taylor expansion of `p(z, zb)` on the real slice at `at`.
    pub fn from_bipoly(p: &BiPoly, at: Complex64, order: usize) -> Jet {
        let mut j = Jet::zero(order);
        let atb = at.conj();
        for ((a, b), c) in p.terms() {
            let c = c.to_c64();
            let (a, b) = (*a as usize, *b as usize);
            for i in 0..=a.min(order) {
                let ci = c * binom(a, i) * at.powu((a - i) as u32);
                for k in 0..=b.min(order - i) {
                    j.c[idx(i, k)] += ci * binom(b, k) * atb.powu((b - k) as u32);
                }
            }
        }
        j
    }

    pub fn from_birat(f: &BiRat, at: Complex64, order: usize) -> Result<Jet, AlgebraError> {
        let num = Jet::from_bipoly(f.num(), at, order);
        let (ma, mb) = f.mono();
        let mut den = Jet::from_bipoly(&BiPoly::monomial(Coeff::one(), ma, mb), at, order);
        for (atom, e) in f.atoms() {
            let a = Jet::from_bipoly(atom, at, order);
            for _ in 0..*e {
                den = den.product(&a);
            }
        }
        Ok(num.product(&den.recip()?))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> Complex64 {
        self.c[0]
    }

    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        if i + j > self.order {
            return Complex64::new(0.0, 0.0);
        }
        self.c[idx(i, j)]
    }

    /// `d^(i+j) f / dz^i dzb^j` at the base point.
    pub fn partial(&self, i: usize, j: usize) -> Complex64 {
        self.coeff(i, j) * (factorial(i) * factorial(j))
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let order = order.min(self.order);
        Jet { order, c: self.c[..len(order)].to_vec() }
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn zip(&self, o: &Jet, f: impl Fn(Complex64, Complex64) -> Complex64) -> Jet {
        let order = self.order.min(o.order);
        let n = len(order);
        Jet { order, c: (0..n).map(|k| f(self.c[k], o.c[k])).collect() }
    }

    pub fn mul_c(&self, s: Complex64) -> Jet {
        Jet { order: self.order, c: self.c.iter().map(|v| v * s).collect() }
    }

    fn product(&self, o: &Jet) -> Jet {
        let order = self.order.min(o.order);
        let mut r = Jet::zero(order);
        for d1 in 0..=order {
            for i in 0..=d1 {
                let a = self.c[idx(i, d1 - i)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for d2 in 0..=(order - d1) {
                    for k in 0..=d2 {
                        r.c[idx(i + k, d1 - i + d2 - k)] += a * o.c[idx(k, d2 - k)];
                    }
                }
            }
        }
        r
    }

    /// `(f / f(p) - 1)` times `f(p)`: splits off the constant term.
    fn unit_split(&self) -> (Complex64, Jet) {
        let c0 = self.c[0];
        let mut u = self.mul_c(1.0 / c0);
        u.c[0] = Complex64::new(0.0, 0.0);
        (c0, u)
    }

    /// `f^alpha` via the binomial series, principal branch at the base value.
    pub fn powf(&self, alpha: f64) -> Jet {
        let (c0, u) = self.unit_split();
        let mut acc = Jet::constant(Complex64::new(1.0, 0.0), self.order);
        let mut term = acc.clone();
        let mut binom = 1.0;
        for k in 1..=self.order {
            binom *= (alpha - (k as f64 - 1.0)) / k as f64;
            term = term.product(&u);
            acc = acc.zip(&term.mul_c(Complex64::new(binom, 0.0)), |a, b| a + b);
            // term holds u^k without the binomial factor
        }
        acc.mul_c(c0.powf(alpha))
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    pub fn eval(&self, dz: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for d in 0..=self.order {
            for i in 0..=d {
                acc += self.c[idx(i, d - i)] * dz.powu(i as u32) * dz.conj().powu((d - i) as u32);
            }
        }
        acc
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, t| acc * (n - t) as f64 / (t + 1) as f64)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

impl DiffField for Jet {
    fn plus(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }
    fn minus(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }
    fn times(&self, o: &Self) -> Self {
        self.product(o)
    }
    fn negate(&self) -> Self {
        self.mul_c(Complex64::new(-1.0, 0.0))
    }
    fn scaled(&self, c: &Coeff) -> Self {
        self.mul_c(c.to_c64())
    }
    fn recip(&self) -> Result<Self, AlgebraError> {
        if self.c[0].norm() == 0.0 || !self.c[0].is_finite() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (c0, u) = self.unit_split();
        let mut acc = Jet::constant(Complex64::new(1.0, 0.0), self.order);
        let mut term = acc.clone();
        let neg_u = u.negate();
        for _ in 1..=self.order {
            term = term.product(&neg_u);
            acc = acc.plus(&term);
        }
        Ok(acc.mul_c(1.0 / c0))
    }
    fn d_z(&self) -> Self {
        let order = self.order.saturating_sub(1);
        let mut r = Jet::zero(order);
        if self.order == 0 {
            return r;
        }
        for d in 0..=order {
            for i in 0..=d {
                r.c[idx(i, d - i)] = self.c[idx(i + 1, d - i)] * (i + 1) as f64;
            }
        }
        r
    }
    fn d_zb(&self) -> Self {
        let order = self.order.saturating_sub(1);
        let mut r = Jet::zero(order);
        if self.order == 0 {
            return r;
        }
        for d in 0..=order {
            for i in 0..=d {
                r.c[idx(i, d - i)] = self.c[idx(i, d - i + 1)] * (d - i + 1) as f64;
            }
        }
        r
    }
    fn conjugate(&self) -> Self {
        let mut r = Jet::zero(self.order);
        for d in 0..=self.order {
            for i in 0..=d {
                r.c[idx(i, d - i)] = self.c[idx(d - i, i)].conj();
            }
        }
        r
    }
    fn is_zero(&self) -> bool {
        self.max_abs() <= 1e-12
    }
    fn zero_like(&self) -> Self {
        Jet::zero(self.order)
    }
    fn constant_like(&self, c: &Coeff) -> Self {
        Jet::constant(c.to_c64(), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_of_coordinates() {
        let p = c(0.5, -0.25);
        let z = Jet::z(p, 4);
        let zb = Jet::zb(p, 4);
        let r2 = z.times(&zb);
        assert!((r2.value() - p.norm_sqr()).norm() < 1e-15);
        assert!((r2.d_z().value() - p.conj()).norm() < 1e-15);
        assert!((r2.d_z().d_zb().value() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn reciprocal_and_sqrt() {
        let p = c(0.3, 0.7);
        let z = Jet::z(p, 6);
        let one_plus = z.times(&z.conjugate()).plus(&Jet::constant(c(1.0, 0.0), 6));
        let inv = one_plus.recip().unwrap();
        let prod = inv.times(&one_plus);
        assert!((prod.value() - 1.0).norm() < 1e-14);
        assert!(prod.d_z().max_abs() < 1e-13);
        let s = one_plus.sqrt();
        assert!(s.times(&s).minus(&one_plus).max_abs() < 1e-13);
    }

    #[test]
    fn birat_expansion_matches_arithmetic() {
        let p = c(0.4, -0.9);
        let zj = Jet::z(p, 5);
        let zbj = Jet::zb(p, 5);
        let one = Jet::constant(c(1.0, 0.0), 5);
        let f = BiRat::z().mul(&BiRat::zb()).add(&BiRat::one()).recip().unwrap().mul(&BiRat::z().pow(3));
        let want = zj.times(&zj).times(&zj).times(&zj.times(&zbj).plus(&one).recip().unwrap());
        let got = Jet::from_birat(&f, p, 5).unwrap();
        assert!(got.minus(&want).max_abs() < 1e-13);
    }

    #[test]
    fn conjugate_transposes() {
        let z = Jet::z(c(1.0, 2.0), 3);
        let cz = z.conjugate();
        assert_eq!(cz, Jet::zb(c(1.0, 2.0), 3));
    }
}
