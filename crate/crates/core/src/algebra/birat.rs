//! Rational functions in `(z, zb)`.
//!
//! Denominators are kept factored as `z^a zb^b * prod atom_i^e_i`, where each atom is a
//! polynomial without monomial content whose lexicographically largest term has coefficient 1.
//! No bivariate gcd is ever taken: after every operation the numerator is divided by the
//! monomial and by each atom as long as that division is exact. Since the zero test only asks
//! whether the numerator vanishes, a numerator carrying a spurious common factor is harmless.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::bipoly::BiPoly;
use super::coeff::Coeff;
use super::poly::Var;
use super::rat::Rat;
use super::AlgebraError;

pub type Atom = Arc<BiPoly>;

#[derive(Clone, Debug)]
pub struct BiRat {
    num: BiPoly,
    mono: (u32, u32),
    atoms: Vec<(Atom, u32)>,
}

/// Truncated bivariate Laurent data at the origin: exponent pair to coefficient.
pub type Series2 = BTreeMap<(i32, i32), Coeff>;

/// Splits `p` into `c * z^a zb^b * prod atom_i^e_i`.
pub fn split_poly(p: &BiPoly) -> (Coeff, (u32, u32), Vec<(Atom, u32)>) {
    assert!(!p.is_zero(), "split of zero polynomial");
    let mono = p.monomial_content();
    let q = p.div_monomial(mono.0, mono.1);
    if q.is_constant() {
        return (q.coeff(0, 0), mono, vec![]);
    }
    if q.is_exact() {
        if let Some(u) = q.as_univariate() {
            if let Ok(parts) = u.squarefree() {
                let lead = u.lead();
                let atoms = parts.iter().map(|(f, e)| (Arc::new(BiPoly::from_poly(f)), *e)).collect();
                return (lead, mono, atoms);
            }
        }
    }
    let (a, c) = q.normalize_lead();
    (c, mono, vec![(Arc::new(a), 1)])
}

fn same(a: &Atom, b: &Atom) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn push_atom(list: &mut Vec<(Atom, u32)>, a: Atom, e: u32) {
    if e == 0 {
        return;
    }
    match list.iter_mut().find(|(x, _)| same(x, &a)) {
        Some(slot) => slot.1 += e,
        None => list.push((a, e)),
    }
}

impl BiRat {
    pub fn zero() -> BiRat {
        BiRat { num: BiPoly::zero(), mono: (0, 0), atoms: vec![] }
    }

    pub fn one() -> BiRat {
        BiRat::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> BiRat {
        BiRat::from_poly(BiPoly::constant(c))
    }

    pub fn z() -> BiRat {
        BiRat::from_poly(BiPoly::z())
    }

    pub fn zb() -> BiRat {
        BiRat::from_poly(BiPoly::zb())
    }

    pub fn from_poly(p: BiPoly) -> BiRat {
        BiRat { num: p, mono: (0, 0), atoms: vec![] }
    }

    /// `n / d`
    pub fn ratio(n: BiPoly, d: &BiPoly) -> Result<BiRat, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (c, mono, atoms) = split_poly(d);
        Ok(BiRat { num: n.scale(&c.inv()?), mono, atoms }.reduced())
    }

    /// A univariate rational function viewed in `(z, zb)`.
    pub fn from_rat(r: &Rat) -> BiRat {
        BiRat::ratio(BiPoly::from_poly(r.num()), &BiPoly::from_poly(r.den())).expect("nonzero denominator")
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn mono(&self) -> (u32, u32) {
        self.mono
    }

    pub fn atoms(&self) -> &[(Atom, u32)] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.num.is_exact() && self.atoms.iter().all(|(a, _)| a.is_exact())
    }

    pub fn is_polynomial(&self) -> bool {
        self.mono == (0, 0) && self.atoms.is_empty()
    }

    /// Expanded denominator.
    pub fn den_poly(&self) -> BiPoly {
        let mut d = BiPoly::monomial(Coeff::one(), self.mono.0, self.mono.1);
        for (a, e) in &self.atoms {
            d = d.mul(&a.pow(*e));
        }
        d
    }

    fn reduced(mut self) -> BiRat {
        if self.num.is_zero() {
            return BiRat::zero();
        }
        let c = self.num.monomial_content();
        let ka = c.0.min(self.mono.0);
        let kb = c.1.min(self.mono.1);
        if ka > 0 || kb > 0 {
            self.num = self.num.div_monomial(ka, kb);
            self.mono = (self.mono.0 - ka, self.mono.1 - kb);
        }
        let exact = self.num.is_exact();
        for (a, e) in self.atoms.iter_mut() {
            if !exact {
                break;
            }
            while *e > 0 && self.num.may_divide(a) {
                match self.num.exact_div(a) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.atoms.retain(|(_, e)| *e > 0);
        self
    }

    pub fn neg(&self) -> BiRat {
        BiRat { num: self.num.neg(), mono: self.mono, atoms: self.atoms.clone() }
    }

    pub fn scale(&self, c: &Coeff) -> BiRat {
        if c.is_zero() {
            return BiRat::zero();
        }
        BiRat { num: self.num.scale(c), mono: self.mono, atoms: self.atoms.clone() }
    }

    fn same_den(&self, o: &BiRat) -> bool {
        self.mono == o.mono
            && self.atoms.len() == o.atoms.len()
            && self.atoms.iter().all(|(a, e)| o.atoms.iter().any(|(b, f)| e == f && same(a, b)))
    }

    fn combine(&self, o: &BiRat, negate: bool) -> BiRat {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        if self.same_den(o) {
            let num = if negate { self.num.sub(&o.num) } else { self.num.add(&o.num) };
            return BiRat { num, mono: self.mono, atoms: self.atoms.clone() }.reduced();
        }
        let mono = (self.mono.0.max(o.mono.0), self.mono.1.max(o.mono.1));
        let mut atoms = self.atoms.clone();
        for (a, e) in &o.atoms {
            match atoms.iter_mut().find(|(x, _)| same(x, a)) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => atoms.push((a.clone(), *e)),
            }
        }
        let lift = |f: &BiRat| -> BiPoly {
            let mut n = f.num.mul_monomial(mono.0 - f.mono.0, mono.1 - f.mono.1);
            for (a, e) in &atoms {
                let have = f.atoms.iter().find(|(x, _)| same(x, a)).map_or(0, |(_, k)| *k);
                if *e > have {
                    n = n.mul(&a.pow(e - have));
                }
            }
            n
        };
        let (n1, n2) = (lift(self), lift(o));
        let num = if negate { n1.sub(&n2) } else { n1.add(&n2) };
        BiRat { num, mono, atoms }.reduced()
    }

    pub fn add(&self, o: &BiRat) -> BiRat {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &BiRat) -> BiRat {
        self.combine(o, true)
    }

    pub fn mul(&self, o: &BiRat) -> BiRat {
        if self.is_zero() || o.is_zero() {
            return BiRat::zero();
        }
        let mut atoms = self.atoms.clone();
        for (a, e) in &o.atoms {
            push_atom(&mut atoms, a.clone(), *e);
        }
        BiRat {
            num: self.num.mul(&o.num),
            mono: (self.mono.0 + o.mono.0, self.mono.1 + o.mono.1),
            atoms,
        }
        .reduced()
    }

    pub fn recip(&self) -> Result<BiRat, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (c, mono, atoms) = split_poly(&self.num);
        let num = self.den_poly().scale(&c.inv()?);
        Ok(BiRat { num, mono, atoms }.reduced())
    }

    pub fn div(&self, o: &BiRat) -> Result<BiRat, AlgebraError> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, k: u32) -> BiRat {
        let mut acc = BiRat::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn derivative(&self, wrt_z: bool) -> BiRat {
        let dn = |p: &BiPoly| if wrt_z { p.dz() } else { p.dzb() };
        let alpha = if wrt_z { self.mono.0 } else { self.mono.1 };
        if self.is_polynomial() {
            return BiRat::from_poly(dn(&self.num));
        }
        // f = N / (m * prod a_i^e_i):
        // f' = (N' m0 P - alpha N P - m0 N sum e_i a_i' prod_{j != i} a_j) / (m0 m P prod a_i^e_i)
        // with P = prod a_i and m0 the variable when alpha > 0 (else 1).
        let var = if wrt_z { BiPoly::z() } else { BiPoly::zb() };
        let with_var = |p: BiPoly| if alpha > 0 { p.mul(&var) } else { p };
        let full: BiPoly = self.atoms.iter().fold(BiPoly::one(), |acc, (a, _)| acc.mul(a));
        let mut num = with_var(dn(&self.num).mul(&full));
        if alpha > 0 {
            num = num.sub(&self.num.mul(&full).scale(&Coeff::int(alpha as i64)));
        }
        for (i, (a, e)) in self.atoms.iter().enumerate() {
            let da = dn(a);
            if da.is_zero() {
                continue;
            }
            let mut others = da.scale(&Coeff::int(*e as i64));
            for (j, (b, _)) in self.atoms.iter().enumerate() {
                if j != i {
                    others = others.mul(b);
                }
            }
            num = num.sub(&with_var(self.num.mul(&others)));
        }
        let mut mono = self.mono;
        if alpha > 0 {
            if wrt_z {
                mono.0 += 1;
            } else {
                mono.1 += 1;
            }
        }
        let atoms = self.atoms.iter().map(|(a, e)| (a.clone(), e + 1)).collect();
        BiRat { num, mono, atoms }.reduced()
    }

    pub fn dz(&self) -> BiRat {
        self.derivative(true)
    }

    pub fn dzb(&self) -> BiRat {
        self.derivative(false)
    }

    /// Swap `z <-> zb` and conjugate coefficients.
    pub fn conj(&self) -> BiRat {
        let mut num = self.num.conj();
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for (a, e) in &self.atoms {
            let (b, c) = a.conj().normalize_lead();
            num = num.scale(&c.pow(*e).inv().expect("nonzero lead"));
            push_atom(&mut atoms, Arc::new(b), *e);
        }
        BiRat { num, mono: (self.mono.1, self.mono.0), atoms }.reduced()
    }

    pub fn to_float(&self) -> BiRat {
        BiRat {
            num: self.num.to_float(),
            mono: self.mono,
            atoms: self.atoms.iter().map(|(a, e)| (Arc::new(a.to_float()), *e)).collect(),
        }
    }

    pub fn eval2_c64(&self, z: Complex64, zb: Complex64) -> Complex64 {
        let mut d = z.powu(self.mono.0) * zb.powu(self.mono.1);
        for (a, e) in &self.atoms {
            d *= a.eval2_c64(z, zb).powu(*e);
        }
        self.num.eval2_c64(z, zb) / d
    }

    /// Real-slice evaluation.
    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.eval2_c64(z, z.conj())
    }

    pub fn eval2(&self, z: &Coeff, zb: &Coeff) -> Result<Coeff, AlgebraError> {
        let mut d = &z.pow(self.mono.0) * &zb.pow(self.mono.1);
        for (a, e) in &self.atoms {
            d = &d * &a.eval2(z, zb).pow(*e);
        }
        if d.is_zero() {
            return Err(AlgebraError::Pole);
        }
        Ok(&self.num.eval2(z, zb) / &d)
    }

    /// Exact real-slice evaluation.
    pub fn eval(&self, z: &Coeff) -> Result<Coeff, AlgebraError> {
        self.eval2(z, &z.conj())
    }

    /// Substitutes `z = 1/w`, `zb = 1/wb`.
    pub fn invert_chart(&self) -> BiRat {
        if self.is_zero() {
            return BiRat::zero();
        }
        let (rn, (na, nb)) = self.num.reverse();
        let mut up = (self.mono.0, self.mono.1);
        let mut scale = Coeff::one();
        let mut atoms = Vec::new();
        for (a, e) in &self.atoms {
            let (ra, (da, db)) = a.reverse();
            up.0 += e * da;
            up.1 += e * db;
            let (c, mono, parts) = split_poly(&ra);
            debug_assert_eq!(mono, (0, 0));
            scale = &scale * &c.pow(*e);
            for (p, k) in parts {
                push_atom(&mut atoms, p, k * e);
            }
        }
        let num = rn.mul_monomial(up.0, up.1).scale(&scale.inv().unwrap());
        BiRat { num, mono: (na, nb), atoms }.reduced()
    }

    /// Substitutes `z = p + h`, `zb = conj(p) + hb`.
    pub fn translate(&self, p: &Coeff) -> BiRat {
        if p.is_zero() {
            return self.clone();
        }
        let pb = p.conj();
        let mut num = self.num.shift(p, &pb);
        let mut mono = (0, 0);
        let mut atoms = Vec::new();
        let mut factors: Vec<(BiPoly, u32)> = Vec::new();
        if self.mono.0 > 0 {
            factors.push((BiPoly::from_terms([((1, 0), Coeff::one()), ((0, 0), p.clone())]), self.mono.0));
        }
        if self.mono.1 > 0 {
            factors.push((BiPoly::from_terms([((0, 1), Coeff::one()), ((0, 0), pb.clone())]), self.mono.1));
        }
        for (a, e) in &self.atoms {
            factors.push((a.shift(p, &pb), *e));
        }
        for (f, e) in factors {
            let (c, m, parts) = split_poly(&f);
            num = num.scale(&c.pow(e).inv().unwrap());
            mono.0 += m.0 * e;
            mono.1 += m.1 * e;
            for (q, k) in parts {
                push_atom(&mut atoms, q, k * e);
            }
        }
        BiRat { num, mono, atoms }.reduced()
    }

    /// Laurent data at the origin, exact for all terms of total degree `<= order`.
    /// Requires every atom to be nonzero at the origin.
    pub fn series_at_origin(&self, order: i32) -> Result<Series2, AlgebraError> {
        let shift = (self.mono.0 + self.mono.1) as i32;
        let t = order + shift;
        let mut out = Series2::new();
        if t < 0 || self.is_zero() {
            return Ok(out);
        }
        let t = t as usize;
        let mut s = Tri::from_poly(&self.num, t);
        for (a, e) in &self.atoms {
            if a.coeff(0, 0).is_zero() {
                return Err(AlgebraError::Pole);
            }
            let inv = Tri::from_poly(a, t).inverse();
            for _ in 0..*e {
                s = s.mul(&inv);
            }
        }
        for i in 0..=t {
            for j in 0..=(t - i) {
                let c = &s.c[i][j];
                if !c.is_zero() {
                    out.insert((i as i32 - self.mono.0 as i32, j as i32 - self.mono.1 as i32), c.clone());
                }
            }
        }
        Ok(out)
    }

    /// Exact limit at `p` along the real slice, when it exists.
    pub fn limit_at(&self, p: &Coeff) -> Result<Coeff, AlgebraError> {
        let s = self.translate(p).series_at_origin(0)?;
        for ((i, j), c) in &s {
            if (*i, *j) != (0, 0) && i + j <= 0 && !c.is_zero() {
                return Err(AlgebraError::Pole);
            }
        }
        Ok(s.get(&(0, 0)).cloned().unwrap_or_else(Coeff::zero))
    }

    /// Converts a holomorphic function (`d/dzb == 0`) to a univariate one in `z`.
    pub fn to_rat(&self) -> Option<Rat> {
        if !self.dzb().is_zero() {
            return None;
        }
        for k in 1..20 {
            let c = Coeff::ratio(k, 7 + k);
            let d = self.den_poly().subst_zb(&c);
            if d.is_zero() {
                continue;
            }
            let n = self.num.subst_zb(&c);
            return Rat::new(n, d.with_var(Var::Z)).ok();
        }
        None
    }

    /// `self - conj(self) == 0`
    pub fn is_real(&self) -> bool {
        self.sub(&self.conj()).is_zero()
    }

    /// Number of stored terms (numerator plus atoms), a size measure.
    pub fn size(&self) -> usize {
        self.num.len() + self.atoms.iter().map(|(a, _)| a.len()).sum::<usize>()
    }
}

impl PartialEq for BiRat {
    fn eq(&self, o: &BiRat) -> bool {
        self.sub(o).is_zero()
    }
}

impl From<BiPoly> for BiRat {
    fn from(p: BiPoly) -> BiRat {
        BiRat::from_poly(p)
    }
}

impl From<&Rat> for BiRat {
    fn from(r: &Rat) -> BiRat {
        BiRat::from_rat(r)
    }
}

/// Common-denominator form of a vector: `v[i] = nums[i] / den`.
pub fn clear_denominators(v: &[BiRat]) -> (Vec<BiPoly>, BiPoly) {
    let mut mono = (0, 0);
    let mut atoms: Vec<(Atom, u32)> = Vec::new();
    for f in v {
        mono = (mono.0.max(f.mono.0), mono.1.max(f.mono.1));
        for (a, e) in &f.atoms {
            match atoms.iter_mut().find(|(x, _)| same(x, a)) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => atoms.push((a.clone(), *e)),
            }
        }
    }
    let nums = v
        .iter()
        .map(|f| {
            let mut n = f.num.mul_monomial(mono.0 - f.mono.0, mono.1 - f.mono.1);
            for (a, e) in &atoms {
                let have = f.atoms.iter().find(|(x, _)| same(x, a)).map_or(0, |(_, k)| *k);
                if *e > have {
                    n = n.mul(&a.pow(e - have));
                }
            }
            n
        })
        .collect();
    let den = BiRat { num: BiPoly::one(), mono, atoms }.den_poly();
    (nums, den)
}

/// Dense triangular truncated series `c[i][j]`, `i + j <= t`.
struct Tri {
    t: usize,
    c: Vec<Vec<Coeff>>,
}

impl Tri {
    fn zeros(t: usize) -> Tri {
        Tri { t, c: (0..=t).map(|i| vec![Coeff::zero(); t - i + 1]).collect() }
    }

    fn from_poly(p: &BiPoly, t: usize) -> Tri {
        let mut s = Tri::zeros(t);
        for ((a, b), c) in p.terms() {
            let (a, b) = (*a as usize, *b as usize);
            if a + b <= t {
                s.c[a][b] = c.clone();
            }
        }
        s
    }

    fn mul(&self, o: &Tri) -> Tri {
        let t = self.t.min(o.t);
        let mut r = Tri::zeros(t);
        for i in 0..=t {
            for j in 0..=(t - i) {
                let a = &self.c[i][j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..=(t - i - j) {
                    for l in 0..=(t - i - j - k) {
                        let b = &o.c[k][l];
                        if !b.is_zero() {
                            r.c[i + k][j + l] += &(a * b);
                        }
                    }
                }
            }
        }
        r
    }

    fn inverse(&self) -> Tri {
        let t = self.t;
        let a0 = self.c[0][0].inv().expect("unit constant term");
        let mut r = Tri::zeros(t);
        for d in 0..=t {
            for i in 0..=d {
                let j = d - i;
                if d == 0 {
                    r.c[0][0] = a0.clone();
                    continue;
                }
                let mut acc = Coeff::zero();
                for k in 0..=i {
                    for l in 0..=j {
                        if k + l == 0 {
                            continue;
                        }
                        let a = &self.c[k][l];
                        if !a.is_zero() {
                            acc += &(a * &r.c[i - k][j - l]);
                        }
                    }
                }
                r.c[i][j] = -&(&acc * &a0);
            }
        }
        r
    }
}

impl fmt::Display for BiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        let mut first = true;
        if self.mono != (0, 0) {
            write!(f, "z^{}*zb^{}", self.mono.0, self.mono.1)?;
            first = false;
        }
        for (a, e) in &self.atoms {
            if !first {
                f.write_str(" * ")?;
            }
            write!(f, "({a})^{e}")?;
            first = false;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;

    fn zr() -> BiRat {
        BiRat::z()
    }

    #[test]
    fn quotient_rule() {
        // d/dz (z^2 zb / (1 + z zb)) = (2 z zb + z^2 zb^2) / (1 + z zb)^2
        let d = BiPoly::from_terms([((1, 1), Coeff::one()), ((0, 0), Coeff::one())]);
        let f = BiRat::ratio(BiPoly::monomial(Coeff::one(), 2, 1), &d).unwrap();
        let want = BiRat::ratio(
            BiPoly::from_terms([((1, 1), Coeff::int(2)), ((2, 2), Coeff::one())]),
            &d.mul(&d),
        )
        .unwrap();
        assert_eq!(f.dz(), want);
    }

    #[test]
    fn cancellation_and_zero() {
        let a = zr().add(&BiRat::zb()).add(&BiRat::one());
        let f = zr().mul(&a).div(&a).unwrap();
        assert!(f.is_polynomial());
        assert!(f.sub(&zr()).is_zero());
    }

    #[test]
    fn conj_of_holomorphic() {
        let r = Rat::new(Poly::monomial(Coeff::i(), 2, Var::Z), Poly::from_ints(&[6], Var::Z)).unwrap();
        let f = BiRat::from_rat(&r).conj();
        let want = BiRat::from_poly(BiPoly::monomial(-Coeff::i(), 0, 2))
            .scale(&Coeff::ratio(1, 6));
        assert_eq!(f, want);
    }

    #[test]
    fn chart_inversion() {
        let f = zr().mul(&zr());
        let g = f.invert_chart();
        assert_eq!(g.mul(&zr()).mul(&zr()), BiRat::one());
    }

    #[test]
    fn series_and_limit() {
        // (z + zb + z zb) / (z + zb) has no limit at 0; z zb / (1 - z) -> 0
        let n = BiPoly::from_terms([((1, 1), Coeff::one())]);
        let d = BiPoly::from_terms([((0, 0), Coeff::one()), ((1, 0), Coeff::int(-1))]);
        let f = BiRat::ratio(n, &d).unwrap();
        let s = f.series_at_origin(3).unwrap();
        assert_eq!(s.get(&(2, 1)), Some(&Coeff::one()));
        assert_eq!(f.limit_at(&Coeff::zero()).unwrap(), Coeff::zero());
        let g = BiRat::zb().div(&zr()).unwrap();
        assert!(g.limit_at(&Coeff::zero()).is_err());
    }

    #[test]
    fn translate_roundtrip() {
        let f = BiRat::one().div(&zr().sub(&BiRat::one())).unwrap();
        let g = f.translate(&Coeff::one());
        let h = Complex64::new(0.3, 0.1);
        assert!((g.eval_c64(h) - f.eval_c64(h + 1.0)).norm() < 1e-13);
        assert_eq!(g.mono(), (1, 0));
    }

    #[test]
    fn holomorphic_to_rat() {
        let f = zr().mul(&BiRat::zb()).div(&BiRat::zb()).unwrap();
        let r = f.to_rat().unwrap();
        assert_eq!(r, Rat::x(Var::Z));
    }
}
