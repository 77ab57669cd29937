//! Univariate rational functions, Laurent expansion, chart inversion and integration.

use std::fmt;

use num_complex::Complex64;

use super::coeff::Coeff;
use super::linsolve;
use super::poly::{Poly, Var};
use super::AlgebraError;

/// A point of the Riemann sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Finite(Coeff),
    Infinity,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(c) => write!(f, "{c}"),
            Point::Infinity => write!(f, "infinity"),
        }
    }
}

/// `sum_j coeffs[j - start] * h^j`, with `h = z - p` (or `1/z` at infinity).
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent {
    pub start: i32,
    pub coeffs: Vec<Coeff>,
}

impl Laurent {
    pub fn coeff(&self, j: i32) -> Coeff {
        if j < self.start {
            return Coeff::zero();
        }
        self.coeffs.get((j - self.start) as usize).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Highest exponent carried.
    pub fn order(&self) -> i32 {
        self.start + self.coeffs.len() as i32 - 1
    }

    pub fn eval_c64(&self, h: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_c64() * h.powi(self.start + k as i32))
            .sum()
    }
}

/// `num / den`; reduced in exact mode, monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct Rat {
    num: Poly,
    den: Poly,
}

impl Rat {
    pub fn new(num: Poly, den: Poly) -> Result<Rat, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let var = num.var();
        let den = den.with_var(var);
        if num.is_zero() {
            return Ok(Rat { num, den: Poly::one(var) });
        }
        let (num, den) = if num.is_exact() && den.is_exact() {
            let g = num.gcd(&den)?;
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        } else {
            (num, den)
        };
        let li = den.lead().inv()?;
        Ok(Rat { num: num.scale(&li), den: den.scale(&li) })
    }

    pub fn from_poly(p: Poly) -> Rat {
        let var = p.var();
        Rat { num: p, den: Poly::one(var) }
    }

    pub fn constant(c: Coeff, var: Var) -> Rat {
        Rat::from_poly(Poly::constant(c, var))
    }

    pub fn zero(var: Var) -> Rat {
        Rat::from_poly(Poly::zero(var))
    }

    /// The coordinate function.
    pub fn x(var: Var) -> Rat {
        Rat::from_poly(Poly::x(var))
    }

    /// `c / (var - p)^k`
    pub fn pole(c: Coeff, p: &Coeff, k: u32, var: Var) -> Rat {
        Rat::new(Poly::constant(c, var), Poly::linear_root(p, var).pow(k)).unwrap()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.num.is_exact() && self.den.is_exact()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, o: &Rat) -> Rat {
        if self.den == o.den {
            return Rat::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Rat::new(n, self.den.mul(&o.den)).unwrap()
    }

    pub fn sub(&self, o: &Rat) -> Rat {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Rat {
        Rat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Rat) -> Rat {
        Rat::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn div(&self, o: &Rat) -> Result<Rat, AlgebraError> {
        if o.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Rat::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn scale(&self, c: &Coeff) -> Rat {
        Rat::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn pow(&self, k: u32) -> Rat {
        Rat { num: self.num.pow(k), den: self.den.pow(k) }
    }

    pub fn derivative(&self) -> Rat {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Rat::new(n, self.den.mul(&self.den)).unwrap()
    }

    /// k-th derivative.
    pub fn nth_derivative(&self, k: usize) -> Rat {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.derivative();
        }
        f
    }

    /// Conjugate coefficients and swap the variable tag.
    pub fn conjugate(&self) -> Rat {
        Rat { num: self.num.conjugate(), den: self.den.conjugate() }
    }

    pub fn to_float(&self) -> Rat {
        Rat { num: self.num.to_float(), den: self.den.to_float() }
    }

    pub fn eval(&self, x: &Coeff) -> Result<Coeff, AlgebraError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::Pole);
        }
        Ok(&self.num.eval(x) / &d)
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        self.num.eval_c64(x) / self.den.eval_c64(x)
    }

    /// `self(a * var + b)`
    pub fn compose_affine(&self, a: &Coeff, b: &Coeff) -> Rat {
        Rat::new(self.num.compose_affine(a, b), self.den.compose_affine(a, b)).unwrap()
    }

    /// Substitutes `var = 1/w`.
    pub fn invert_chart(&self) -> Rat {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let n = self.num.reverse(dn);
        let d = self.den.reverse(dd);
        // f(1/w) = w^(dd - dn) * rev(num) / rev(den)
        if dd >= dn {
            Rat::new(n.shift_up(dd - dn), d).unwrap()
        } else {
            Rat::new(n, d.shift_up(dn - dd)).unwrap()
        }
    }

    /// Laurent coefficients at `p` from the leading order up to `order` inclusive.
    pub fn laurent(&self, p: &Point, order: i32) -> Result<Laurent, AlgebraError> {
        match p {
            Point::Infinity => self.invert_chart().laurent(&Point::Finite(Coeff::zero()), order),
            Point::Finite(p) => {
                if self.is_zero() {
                    return Err(AlgebraError::ZeroFunction);
                }
                let n = self.num.shift(p);
                let d = self.den.shift(p);
                let vn = loose_valuation(&n);
                let vd = loose_valuation(&d);
                let start = vn as i32 - vd as i32;
                if order < start {
                    return Err(AlgebraError::OrderBelowLeading { order, leading: start });
                }
                let len = (order - start + 1) as usize;
                let nc: Vec<Coeff> = n.coeffs()[vn..].to_vec();
                let dc: Vec<Coeff> = d.coeffs()[vd..].to_vec();
                Ok(Laurent { start, coeffs: series_div(&nc, &dc, len) })
            }
        }
    }

    /// Poles (numerical roots of the denominator) with multiplicities grouped by proximity.
    pub fn poles(&self) -> Vec<Complex64> {
        self.den.roots()
    }

    /// Antiderivative. Fails with the logarithmic part when residues are present.
    pub fn integrate(&self) -> Result<Rat, ResidueObstruction> {
        let (rational, log_num, log_den) = hermite(self);
        let max = |p: &Poly| p.coeffs().iter().map(Coeff::abs).fold(0.0, f64::max);
        // float data leaves rounding-level logarithmic parts
        let negligible = !self.is_exact() && max(&log_num) <= 1e-10 * (max(&self.num) / max(&self.den)).max(max(&log_den));
        if log_num.is_zero() || negligible {
            Ok(rational)
        } else {
            Err(ResidueObstruction { log_num, log_den })
        }
    }
}

/// Valuation that treats coefficients below `1e-8` of the largest as zero for float data,
/// where a shift to a rounded root leaves tiny low-order terms.
fn loose_valuation(p: &Poly) -> usize {
    if p.is_exact() {
        return p.valuation().unwrap();
    }
    let scale = p.coeffs().iter().map(Coeff::abs).fold(0.0, f64::max);
    p.coeffs().iter().position(|c| c.abs() > 1e-8 * scale).unwrap()
}

/// The logarithmic remainder `log_num / log_den` left by Hermite reduction.
#[derive(Clone, Debug)]
pub struct ResidueObstruction {
    pub log_num: Poly,
    pub log_den: Poly,
}

/// Power-series division `a / b` to `len` terms (`b[0] != 0`).
pub fn series_div(a: &[Coeff], b: &[Coeff], len: usize) -> Vec<Coeff> {
    let b0i = b[0].inv().expect("series divisor with zero constant term");
    let mut out: Vec<Coeff> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = a.get(k).cloned().unwrap_or_else(Coeff::zero);
        for j in 1..=k.min(b.len().saturating_sub(1)) {
            if !b[j].is_zero() && !out[k - j].is_zero() {
                acc -= &(&b[j] * &out[k - j]);
            }
        }
        out.push(&acc * &b0i);
    }
    out
}

/// Hermite reduction (Horowitz-Ostrogradsky form): `f = (rational)' + log_num/log_den`
/// with `log_den` square-free.
pub fn hermite(f: &Rat) -> (Rat, Poly, Poly) {
    let var = f.var();
    let (q, r) = f.num.divrem(&f.den).unwrap();
    let poly_int = integrate_poly(&q);
    let den = &f.den;
    if r.is_zero() || den.degree() == Some(0) {
        return (Rat::from_poly(poly_int), Poly::zero(var), Poly::one(var));
    }
    let d1 = if den.is_exact() {
        den.gcd(&den.derivative()).unwrap()
    } else {
        float_repeated_part(den)
    };
    let d2 = den.exact_div(&d1).unwrap_or_else(|| den.divrem(&d1).unwrap().0);
    let n1 = d1.degree().unwrap();
    let n2 = d2.degree().unwrap();
    let n = den.degree().unwrap();
    // r = B' d2 - B t + C d1 with t = d2 d1' / d1
    let t = d2.mul(&d1.derivative()).exact_div(&d1).unwrap_or_else(|| d2.mul(&d1.derivative()).divrem(&d1).unwrap().0);
    let mut cols: Vec<Poly> = Vec::new();
    for k in 0..n1 {
        let bk = Poly::monomial(Coeff::one(), k, var);
        cols.push(bk.derivative().mul(&d2).sub(&bk.mul(&t)));
    }
    for k in 0..n2 {
        cols.push(Poly::monomial(Coeff::one(), k, var).mul(&d1));
    }
    let a: Vec<Vec<Coeff>> = (0..n).map(|row| cols.iter().map(|c| c.coeff(row)).collect()).collect();
    let b: Vec<Coeff> = (0..n).map(|row| r.coeff(row)).collect();
    let fam = linsolve::solve(&a, &b, &[]).expect("Hermite system is always solvable");
    let bpoly = Poly::new(fam.particular[..n1].to_vec(), var);
    let cpoly = Poly::new(fam.particular[n1..].to_vec(), var);
    let rational = Rat::from_poly(poly_int).add(&Rat::new(bpoly, d1).unwrap());
    (rational, cpoly, d2)
}

fn integrate_poly(q: &Poly) -> Poly {
    let mut v = vec![Coeff::zero()];
    for (k, c) in q.coeffs().iter().enumerate() {
        v.push(c * &Coeff::ratio(1, k as i64 + 1));
    }
    Poly::new(v, q.var())
}

/// Repeated part of a float polynomial from clustered numerical roots.
fn float_repeated_part(den: &Poly) -> Poly {
    let var = den.var();
    let roots = den.roots();
    let mut used = vec![false; roots.len()];
    let mut out = Poly::one(var);
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut cluster = vec![roots[i]];
        for j in i + 1..roots.len() {
            if !used[j] && (roots[j] - roots[i]).norm() < 1e-6 * roots[i].norm().max(1.0) {
                used[j] = true;
                cluster.push(roots[j]);
            }
        }
        let c: Complex64 = cluster.iter().sum::<Complex64>() / cluster.len() as f64;
        for _ in 1..cluster.len() {
            out = out.mul(&Poly::linear_root(&Coeff::Float(c), var));
        }
    }
    out
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Rat {
        Rat::x(Var::Z)
    }

    #[test]
    fn laurent_geometric() {
        // 1/(z(z-1)) at 0: -1/z - 1 - z - ...
        let f = Rat::new(Poly::one(Var::Z), Poly::from_ints(&[0, -1, 1], Var::Z)).unwrap();
        let l = f.laurent(&Point::Finite(Coeff::zero()), 0).unwrap();
        assert_eq!(l.start, -1);
        assert_eq!(l.coeffs, vec![Coeff::int(-1), Coeff::int(-1)]);
        assert!(f.laurent(&Point::Finite(Coeff::zero()), -2).is_err());
    }

    #[test]
    fn invert_chart_of_square() {
        let f = z().mul(&z());
        let g = f.invert_chart();
        assert_eq!(g, Rat::new(Poly::one(Var::Z), Poly::from_ints(&[0, 0, 1], Var::Z)).unwrap());
    }

    #[test]
    fn integrate_residue_free() {
        // d/dz (1/(z^2 - 1)) = -2z/(z^2-1)^2
        let g = Rat::new(Poly::one(Var::Z), Poly::from_ints(&[-1, 0, 1], Var::Z)).unwrap();
        let f = g.derivative();
        let back = f.integrate().unwrap();
        assert_eq!(back.derivative(), f);
        let log = Rat::new(Poly::one(Var::Z), Poly::from_ints(&[0, 1], Var::Z)).unwrap();
        assert!(log.integrate().is_err());
    }

    #[test]
    fn reduced_form() {
        let f = Rat::new(Poly::from_ints(&[-1, 0, 1], Var::Z), Poly::from_ints(&[-2, 2], Var::Z)).unwrap();
        assert_eq!(f.den(), &Poly::one(Var::Z));
        assert_eq!(f.num(), &Poly::new(vec![Coeff::ratio(1, 2), Coeff::ratio(1, 2)], Var::Z));
    }
}
