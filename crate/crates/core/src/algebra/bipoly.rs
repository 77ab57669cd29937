//! Sparse polynomials in the pair `(z, zb)`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::coeff::Coeff;
use super::poly::{Poly, Var};

/// Terms `c * z^a * zb^b`, sorted by `(a, b)`, without zero coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BiPoly {
    terms: Vec<((u32, u32), Coeff)>,
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly { terms: vec![] }
    }

    pub fn constant(c: Coeff) -> BiPoly {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn one() -> BiPoly {
        BiPoly::constant(Coeff::one())
    }

    pub fn monomial(c: Coeff, a: u32, b: u32) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: vec![((a, b), c)] }
    }

    pub fn z() -> BiPoly {
        BiPoly::monomial(Coeff::one(), 1, 0)
    }

    pub fn zb() -> BiPoly {
        BiPoly::monomial(Coeff::one(), 0, 1)
    }

    /// Builds from arbitrary terms, merging duplicates.
    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), Coeff)>) -> BiPoly {
        let mut m: BTreeMap<(u32, u32), Coeff> = BTreeMap::new();
        for (k, c) in it {
            let e = m.entry(k).or_insert_with(Coeff::zero);
            *e += &c;
        }
        BiPoly { terms: m.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    fn from_sorted(terms: Vec<((u32, u32), Coeff)>) -> BiPoly {
        BiPoly { terms }
    }

    pub fn from_poly(p: &Poly) -> BiPoly {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let key = match p.var() {
                    Var::Z => (k as u32, 0),
                    Var::Zb => (0, k as u32),
                };
                (key, c.clone())
            });
        BiPoly::from_terms(terms)
    }

    pub fn terms(&self) -> &[((u32, u32), Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_exact())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(k, _)| *k == (0, 0))
    }

    /// Coefficient of `z^a zb^b`.
    pub fn coeff(&self, a: u32, b: u32) -> Coeff {
        match self.terms.binary_search_by(|(k, _)| k.cmp(&(a, b))) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Coeff::zero(),
        }
    }

    /// Largest term in the lexicographic `(a, b)` order.
    pub fn lead(&self) -> Option<&((u32, u32), Coeff)> {
        self.terms.last()
    }

    pub fn deg_z(&self) -> u32 {
        self.terms.iter().map(|(k, _)| k.0).max().unwrap_or(0)
    }

    pub fn deg_zb(&self) -> u32 {
        self.terms.iter().map(|(k, _)| k.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(k, _)| k.0 + k.1).max().unwrap_or(0)
    }

    /// Largest monomial `z^a zb^b` dividing every term.
    pub fn monomial_content(&self) -> (u32, u32) {
        if self.terms.is_empty() {
            return (0, 0);
        }
        let a = self.terms.iter().map(|(k, _)| k.0).min().unwrap();
        let b = self.terms.iter().map(|(k, _)| k.1).min().unwrap();
        (a, b)
    }

    /// Divides by `z^a zb^b` (caller guarantees divisibility).
    pub fn div_monomial(&self, a: u32, b: u32) -> BiPoly {
        BiPoly::from_sorted(self.terms.iter().map(|((x, y), c)| ((x - a, y - b), c.clone())).collect())
    }

    pub fn mul_monomial(&self, a: u32, b: u32) -> BiPoly {
        BiPoly::from_sorted(self.terms.iter().map(|((x, y), c)| ((x + a, y + b), c.clone())).collect())
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.merge(o, true)
    }

    fn merge(&self, o: &BiPoly, negate: bool) -> BiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        BiPoly::from_sorted(out)
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly::from_sorted(self.terms.iter().map(|(k, c)| (*k, -c)).collect())
    }

    pub fn scale(&self, s: &Coeff) -> BiPoly {
        if s.is_zero() {
            return BiPoly::zero();
        }
        if s.is_one() {
            return self.clone();
        }
        BiPoly::from_sorted(
            self.terms.iter().map(|(k, c)| (*k, c * s)).filter(|(_, c)| !c.is_zero()).collect(),
        )
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        if self.terms.len() == 1 && self.terms[0].0 == (0, 0) {
            return o.scale(&self.terms[0].1);
        }
        if o.terms.len() == 1 && o.terms[0].0 == (0, 0) {
            return self.scale(&o.terms[0].1);
        }
        let (a0, b0) = self.monomial_content();
        let (a1, b1) = o.monomial_content();
        let wa = (self.deg_z() - a0 + o.deg_z() - a1 + 1) as usize;
        let wb = (self.deg_zb() - b0 + o.deg_zb() - b1 + 1) as usize;
        let mut acc: Vec<Option<Coeff>> = vec![None; wa * wb];
        for ((x, y), c) in &self.terms {
            for ((u, v), d) in &o.terms {
                let idx = (x - a0 + u - a1) as usize * wb + (y - b0 + v - b1) as usize;
                let p = c * d;
                match &mut acc[idx] {
                    Some(e) => *e += &p,
                    slot => *slot = Some(p),
                }
            }
        }
        let mut terms = Vec::new();
        for (idx, c) in acc.into_iter().enumerate() {
            if let Some(c) = c {
                if !c.is_zero() {
                    let a = (idx / wb) as u32 + a0 + a1;
                    let b = (idx % wb) as u32 + b0 + b1;
                    terms.push(((a, b), c));
                }
            }
        }
        BiPoly::from_sorted(terms)
    }

    pub fn pow(&self, k: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn dz(&self) -> BiPoly {
        BiPoly::from_sorted(
            self.terms
                .iter()
                .filter(|(k, _)| k.0 > 0)
                .map(|((a, b), c)| ((a - 1, *b), c.scale_int(*a)))
                .collect(),
        )
    }

    pub fn dzb(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms.iter().filter(|(k, _)| k.1 > 0).map(|((a, b), c)| ((*a, b - 1), c.scale_int(*b))),
        )
    }

    /// Swap `z <-> zb` and conjugate coefficients.
    pub fn conj(&self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|((a, b), c)| ((*b, *a), c.conj())))
    }

    pub fn to_float(&self) -> BiPoly {
        BiPoly::from_sorted(self.terms.iter().map(|(k, c)| (*k, c.to_float())).collect())
    }

    /// Evaluates at independent values of `z` and `zb`.
    pub fn eval2_c64(&self, z: Complex64, zb: Complex64) -> Complex64 {
        let da = self.deg_z() as usize;
        let db = self.deg_zb() as usize;
        let mut pz = Vec::with_capacity(da + 1);
        let mut pzb = Vec::with_capacity(db + 1);
        let mut t = Complex64::new(1.0, 0.0);
        for _ in 0..=da {
            pz.push(t);
            t *= z;
        }
        t = Complex64::new(1.0, 0.0);
        for _ in 0..=db {
            pzb.push(t);
            t *= zb;
        }
        self.terms.iter().map(|((a, b), c)| c.to_c64() * pz[*a as usize] * pzb[*b as usize]).sum()
    }

    /// Real-slice evaluation: `zb = conj(z)`.
    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.eval2_c64(z, z.conj())
    }

    pub fn eval2(&self, z: &Coeff, zb: &Coeff) -> Coeff {
        let mut acc = Coeff::zero();
        let da = self.deg_z();
        let db = self.deg_zb();
        let pz: Vec<Coeff> = (0..=da).map(|k| z.pow(k)).collect();
        let pzb: Vec<Coeff> = (0..=db).map(|k| zb.pow(k)).collect();
        for ((a, b), c) in &self.terms {
            acc += &(&(c * &pz[*a as usize]) * &pzb[*b as usize]);
        }
        acc
    }

    /// Substitutes `zb = c`, leaving a polynomial in `z`.
    pub fn subst_zb(&self, c: &Coeff) -> Poly {
        let da = self.deg_z() as usize;
        let db = self.deg_zb();
        let pw: Vec<Coeff> = (0..=db).map(|k| c.pow(k)).collect();
        let mut v = vec![Coeff::zero(); da + 1];
        for ((a, b), x) in &self.terms {
            v[*a as usize] += &(x * &pw[*b as usize]);
        }
        Poly::new(v, Var::Z)
    }

    /// Substitutes `z = c`, leaving a polynomial in `zb`.
    pub fn subst_z(&self, c: &Coeff) -> Poly {
        let db = self.deg_zb() as usize;
        let da = self.deg_z();
        let pw: Vec<Coeff> = (0..=da).map(|k| c.pow(k)).collect();
        let mut v = vec![Coeff::zero(); db + 1];
        for ((a, b), x) in &self.terms {
            v[*b as usize] += &(x * &pw[*a as usize]);
        }
        Poly::new(v, Var::Zb)
    }

    /// `z^A zb^B * self(1/z, 1/zb)` with `(A, B)` the partial degrees.
    pub fn reverse(&self) -> (BiPoly, (u32, u32)) {
        let (da, db) = (self.deg_z(), self.deg_zb());
        (BiPoly::from_terms(self.terms.iter().map(|((a, b), c)| ((da - a, db - b), c.clone()))), (da, db))
    }

    /// Polynomial in one variable, if the other does not occur.
    pub fn as_univariate(&self) -> Option<Poly> {
        if self.terms.iter().all(|(k, _)| k.1 == 0) {
            let mut v = vec![Coeff::zero(); self.deg_z() as usize + 1];
            for ((a, _), c) in &self.terms {
                v[*a as usize] = c.clone();
            }
            Some(Poly::new(v, Var::Z))
        } else if self.terms.iter().all(|(k, _)| k.0 == 0) {
            let mut v = vec![Coeff::zero(); self.deg_zb() as usize + 1];
            for ((_, b), c) in &self.terms {
                v[*b as usize] = c.clone();
            }
            Some(Poly::new(v, Var::Zb))
        } else {
            None
        }
    }

    /// Scales so that the lexicographically largest term has coefficient 1.
    /// Returns `(normalised, factor)` with `self = factor * normalised`.
    pub fn normalize_lead(&self) -> (BiPoly, Coeff) {
        match self.lead() {
            None => (BiPoly::zero(), Coeff::one()),
            Some((_, c)) => {
                let f = c.clone();
                (self.scale(&f.inv().unwrap()), f)
            }
        }
    }

    /// Exact quotient `self / d` if `d` divides `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        if d.deg_z() > self.deg_z() || d.deg_zb() > self.deg_zb() {
            return None;
        }
        let ((la, lb), lc) = d.lead().unwrap().clone();
        let lci = lc.inv().ok()?;
        let mut rem: BTreeMap<(u32, u32), Coeff> = self.terms.iter().cloned().collect();
        let mut quot: Vec<((u32, u32), Coeff)> = Vec::new();
        while let Some((&(ra, rb), rc)) = rem.iter().next_back() {
            if ra < la || rb < lb {
                return None;
            }
            let q = ((ra - la, rb - lb), rc * &lci);
            for ((a, b), c) in &d.terms {
                let key = (a + q.0 .0, b + q.0 .1);
                let t = c * &q.1;
                let remove = match rem.get_mut(&key) {
                    Some(e) => {
                        *e -= &t;
                        e.is_zero()
                    }
                    None => {
                        rem.insert(key, -t);
                        false
                    }
                };
                if remove {
                    rem.remove(&key);
                }
            }
            // float round-off can leave the cancelled term behind
            rem.remove(&(ra, rb));
            quot.push(q);
        }
        quot.sort_by_key(|x| x.0);
        Some(BiPoly::from_sorted(quot))
    }

    /// Cheap necessary condition for `d | self` (exact mode): divisibility after
    /// fixing one variable at a rational value, tried for each variable `d` involves.
    pub fn may_divide(&self, d: &BiPoly) -> bool {
        if d.deg_z() > self.deg_z() || d.deg_zb() > self.deg_zb() {
            return false;
        }
        if !self.is_exact() || !d.is_exact() {
            return true;
        }
        let probes = [Coeff::ratio(3, 7), Coeff::ratio(-5, 11)];
        if d.deg_z() > 0 {
            if let Some(c) = probes.iter().find(|c| d.subst_zb(c).degree() == Some(d.deg_z() as usize)) {
                if !self.subst_zb(c).rem(&d.subst_zb(c)).map(|r| r.is_zero()).unwrap_or(false) {
                    return false;
                }
            }
        }
        if d.deg_zb() > 0 {
            if let Some(c) = probes.iter().find(|c| d.subst_z(c).degree() == Some(d.deg_zb() as usize)) {
                if !self.subst_z(c).rem(&d.subst_z(c)).map(|r| r.is_zero()).unwrap_or(false) {
                    return false;
                }
            }
        }
        true
    }

    /// Shifts the origin: `self(p + h, pb + hb)` as a polynomial in `(h, hb)`.
    pub fn shift(&self, p: &Coeff, pb: &Coeff) -> BiPoly {
        let da = self.deg_z();
        let db = self.deg_zb();
        let binom = binomials(da.max(db));
        let pz: Vec<Coeff> = (0..=da).map(|k| p.pow(k)).collect();
        let pzb: Vec<Coeff> = (0..=db).map(|k| pb.pow(k)).collect();
        let mut out: Vec<((u32, u32), Coeff)> = Vec::new();
        for ((a, b), c) in &self.terms {
            for i in 0..=*a {
                let ci = &(c * &Coeff::int(binom[*a as usize][i as usize])) * &pz[(a - i) as usize];
                if ci.is_zero() {
                    continue;
                }
                for j in 0..=*b {
                    let cj = &(&ci * &Coeff::int(binom[*b as usize][j as usize])) * &pzb[(b - j) as usize];
                    out.push(((i, j), cj));
                }
            }
        }
        BiPoly::from_terms(out)
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        BiPoly::from_sorted(self.terms.iter().filter(|(k, _)| k.0 + k.1 == d).cloned().collect())
    }

    /// Lowest total degree among the terms.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(k, _)| k.0 + k.1).min()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.abs()).fold(0.0, f64::max)
    }
}

pub(crate) fn binomials(n: u32) -> Vec<Vec<i64>> {
    let n = n as usize;
    let mut t = vec![vec![0i64; n + 1]; n + 1];
    for i in 0..=n {
        t[i][0] = 1;
        for j in 1..=i {
            t[i][j] = t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 };
        }
    }
    t
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, ((a, b), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if *a > 0 {
                write!(f, "*z^{a}")?;
            }
            if *b > 0 {
                write!(f, "*zb^{b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_division() {
        let a = BiPoly::from_terms([((1, 1), Coeff::int(1)), ((0, 0), Coeff::int(2))]);
        let b = BiPoly::from_terms([((2, 0), Coeff::i()), ((0, 3), Coeff::ratio(1, 3))]);
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&a).unwrap(), b);
        assert!(p.may_divide(&a));
        let c = BiPoly::from_terms([((1, 0), Coeff::int(1)), ((0, 1), Coeff::int(1))]);
        assert!(p.exact_div(&c).is_none());
    }

    #[test]
    fn derivative_and_conj() {
        // d/dz (z^2 zb) = 2 z zb
        let f = BiPoly::monomial(Coeff::one(), 2, 1);
        assert_eq!(f.dz(), BiPoly::monomial(Coeff::int(2), 1, 1));
        let g = BiPoly::monomial(Coeff::i(), 2, 0);
        assert_eq!(g.conj(), BiPoly::monomial(-Coeff::i(), 0, 2));
    }

    #[test]
    fn shift_matches_eval() {
        let f = BiPoly::from_terms([((2, 1), Coeff::int(3)), ((0, 2), Coeff::i()), ((1, 0), Coeff::int(-1))]);
        let p = Coeff::ratio(1, 2);
        let s = f.shift(&p, &p);
        let h = Complex64::new(0.1, -0.2);
        let direct = f.eval2_c64(h + 0.5, h.conj() + 0.5);
        let shifted = s.eval2_c64(h, h.conj());
        assert!((direct - shifted).norm() < 1e-14);
    }
}
