//! Univariate polynomials over [`Coeff`].

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::coeff::Coeff;
use super::AlgebraError;

/// Relative coefficient tolerance used for zero tests in floating mode.
pub const EPS_COEF: f64 = 1e-10;

/// The variable a univariate polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z,
    Zb,
}

impl Var {
    pub fn conj(self) -> Var {
        match self {
            Var::Z => Var::Zb,
            Var::Zb => Var::Z,
        }
    }
}

/// Ascending coefficient list; no trailing zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Coeff>,
    var: Var,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Coeff>, var: Var) -> Poly {
        trim(&mut coeffs);
        Poly { coeffs, var }
    }

    pub fn zero(var: Var) -> Poly {
        Poly { coeffs: vec![], var }
    }

    pub fn constant(c: Coeff, var: Var) -> Poly {
        Poly::new(vec![c], var)
    }

    pub fn one(var: Var) -> Poly {
        Poly::constant(Coeff::one(), var)
    }

    /// `c * var^k`
    pub fn monomial(c: Coeff, k: usize, var: Var) -> Poly {
        let mut v = vec![Coeff::zero(); k + 1];
        v[k] = c;
        Poly::new(v, var)
    }

    /// The variable itself.
    pub fn x(var: Var) -> Poly {
        Poly::monomial(Coeff::one(), 1, var)
    }

    /// `var - p`
    pub fn linear_root(p: &Coeff, var: Var) -> Poly {
        Poly::new(vec![-p, Coeff::one()], var)
    }

    /// Builds a polynomial from integer coefficients (ascending).
    pub fn from_ints(c: &[i64], var: Var) -> Poly {
        Poly::new(c.iter().map(|&k| Coeff::int(k)).collect(), var)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Poly {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Coeff {
        self.coeffs.get(k).cloned().unwrap_or_else(Coeff::zero)
    }

    /// `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact())
    }

    pub fn lead(&self) -> Coeff {
        self.coeffs.last().cloned().unwrap_or_else(Coeff::zero)
    }

    /// Order of vanishing at 0.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        Poly::new(v, self.var)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect();
        Poly::new(v, self.var)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect(), var: self.var }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.var);
        }
        let mut v = vec![Coeff::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += &(a * b);
                }
            }
        }
        Poly::new(v, self.var)
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.var);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `var^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Coeff::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(v, self.var)
    }

    pub fn derivative(&self) -> Poly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale_int(k as u32))
            .collect();
        Poly::new(v, self.var)
    }

    pub fn conj_coeffs(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| c.conj()).collect(), var: self.var }
    }

    /// Conjugate as a function: conjugate coefficients and swap the variable tag.
    pub fn conjugate(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| c.conj()).collect(), var: self.var.conj() }
    }

    pub fn eval(&self, x: &Coeff) -> Coeff {
        let mut acc = Coeff::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_c64();
        }
        acc
    }

    /// Float copy with `Complex64` coefficients.
    pub fn to_c64_vec(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.to_c64()).collect()
    }

    pub fn to_float(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.to_float()).collect(), self.var)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().inv().expect("nonzero lead");
        self.scale(&l)
    }

    /// Euclidean division over the coefficient field.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        let dd = d.degree().ok_or(AlgebraError::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Ok((Poly::zero(self.var), self.clone())),
        };
        let li = d.lead().inv()?;
        let mut q = vec![Coeff::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &r[k + dd] * &li;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[k + j] -= &(&c * dc);
                }
            }
            r[k + dd] = Coeff::zero();
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q, self.var), Poly::new(r, self.var)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly, AlgebraError> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient when `d` divides `self` exactly (exact mode).
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Pseudo-remainder `prem(self, d)`.
    fn prem(&self, d: &Poly) -> Poly {
        let (n, m) = (self.degree().unwrap(), d.degree().unwrap());
        let l = d.lead();
        let f = l.pow((n - m + 1) as u32);
        self.scale(&f).rem(d).unwrap()
    }

    /// Monic gcd via the subresultant polynomial remainder sequence. Exact mode only.
    pub fn gcd(&self, o: &Poly) -> Result<Poly, AlgebraError> {
        if !self.is_exact() || !o.is_exact() {
            return Err(AlgebraError::FloatGcd);
        }
        let (mut a, mut b) = if self.degree() >= o.degree() {
            (self.clone(), o.clone())
        } else {
            (o.clone(), self.clone())
        };
        if b.is_zero() {
            return Ok(a.monic());
        }
        let mut g = Coeff::one();
        let mut h = Coeff::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.prem(&b);
            if r.is_zero() {
                return Ok(b.monic());
            }
            if r.degree() == Some(0) {
                return Ok(Poly::one(self.var));
            }
            let div = &g * &h.pow(delta as u32);
            a = b;
            b = r.scale(&div.inv()?);
            g = a.lead();
            h = if delta == 0 {
                h
            } else {
                &g.pow(delta as u32) * &h.pow(delta as u32 - 1).inv()?
            };
        }
    }

    /// Yun square-free factorisation: returns `(f_i, i)` with `self = c * prod f_i^i`.
    pub fn squarefree(&self) -> Result<Vec<(Poly, u32)>, AlgebraError> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp)?;
        let mut b = f.exact_div(&a).unwrap();
        let mut c = fp.exact_div(&a).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let g = b.gcd(&d)?;
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.exact_div(&g).unwrap();
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.exact_div(&g).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    /// Taylor shift: coefficients of `self(p + h)` in `h`.
    pub fn shift(&self, p: &Coeff) -> Poly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * p;
                c[j] += &t;
            }
        }
        Poly::new(c, self.var)
    }

    /// `var^n * self(1/var)` for `n >= degree`.
    pub fn reverse(&self, n: usize) -> Poly {
        let mut v = vec![Coeff::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[n - k] = c.clone();
        }
        Poly::new(v, self.var)
    }

    /// `self(a * var + b)`
    pub fn compose_affine(&self, a: &Coeff, b: &Coeff) -> Poly {
        let lin = Poly::new(vec![b.clone(), a.clone()], self.var);
        let mut acc = Poly::zero(self.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone(), self.var));
        }
        acc
    }

    /// Numerical roots (companion matrix eigenvalues, then Newton polishing).
    pub fn roots(&self) -> Vec<Complex64> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return vec![],
        };
        let c = self.to_c64_vec();
        let lead = c[n];
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..n {
            m[(i, n - 1)] = -c[i] / lead;
        }
        let eig = m.clone().schur().eigenvalues().map(|v| v.iter().copied().collect::<Vec<_>>());
        let mut roots = eig.unwrap_or_else(|| aberth(&c));
        let d = self.derivative().to_c64_vec();
        for r in roots.iter_mut() {
            *r = newton_polish(&c, &d, *r);
        }
        roots
    }
}

fn horner(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
}

fn newton_polish(c: &[Complex64], d: &[Complex64], mut x: Complex64) -> Complex64 {
    for _ in 0..50 {
        let f = horner(c, x);
        let fp = horner(d, x);
        if fp.norm() == 0.0 {
            break;
        }
        let step = f / fp;
        let nx = x - step;
        if !nx.re.is_finite() || !nx.im.is_finite() {
            break;
        }
        let done = step.norm() <= 1e-16 * x.norm().max(1.0);
        x = nx;
        if done {
            break;
        }
    }
    x
}

/// Aberth-Ehrlich iteration, used when the Schur route fails.
fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let d: Vec<Complex64> = c.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
    let radius = 1.0 + c[..n].iter().map(|a| (a / c[n]).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let ratio = horner(c, z[i]) / horner(&d, z[i]);
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn trim(v: &mut Vec<Coeff>) {
    let float = v.iter().any(|c| !c.is_exact());
    if float {
        let scale = v.iter().map(|c| c.abs()).fold(0.0, f64::max);
        while let Some(c) = v.last() {
            if c.is_zero() || c.abs() <= EPS_COEF * scale {
                v.pop();
            } else {
                break;
            }
        }
    } else {
        while matches!(v.last(), Some(c) if c.is_zero()) {
            v.pop();
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let name = match self.var {
            Var::Z => "z",
            Var::Zb => "zb",
        };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{name}")?,
                _ => write!(f, "({c})*{name}^{k}")?,
            }
        }
        Ok(())
    }
}
