//! Minimal surfaces `x = F + conj(F)` from rational holomorphic data.

use num_complex::Complex64;

use crate::algebra::{BiRat, Coeff, FieldVec, Point, Poly, Rat, Var, VecBiRat};
use crate::error::{Error, Result};
use crate::numeric::{common_zeros, Sample, SearchOptions};

/// Coordinate chart on the Riemann sphere: `z`, or `w = 1/z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Chart {
    #[default]
    Z,
    W,
}

/// `R^(weight2 / 2) * value`, where `R = 2 x_z . x_zb`.
#[derive(Clone, Debug)]
pub struct WeightedVec {
    pub weight2: i32,
    pub value: VecBiRat,
}

impl WeightedVec {
    pub fn new(weight2: i32, value: VecBiRat) -> WeightedVec {
        WeightedVec { weight2, value }
    }

    /// `d/dz (R^t V) = R^t (t R_z/R V + V_z)`
    pub fn d_z(&self, r: &BiRat) -> Result<WeightedVec> {
        let lz = r.dz().div(r)?.scale(&Coeff::ratio(self.weight2 as i64, 2));
        Ok(WeightedVec::new(self.weight2, self.value.times(&lz).add(&self.value.d_z())))
    }

    pub fn d_zb(&self, r: &BiRat) -> Result<WeightedVec> {
        let lz = r.dzb().div(r)?.scale(&Coeff::ratio(self.weight2 as i64, 2));
        Ok(WeightedVec::new(self.weight2, self.value.times(&lz).add(&self.value.d_zb())))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Numerical value at `z` given `R(z)`.
    pub fn eval_c64(&self, z: Complex64, r: f64) -> Vec<Complex64> {
        let s = r.powf(self.weight2 as f64 / 2.0);
        self.value.eval_c64(z).into_iter().map(|v| v * s).collect()
    }
}

impl PartialEq for WeightedVec {
    fn eq(&self, o: &Self) -> bool {
        self.weight2 == o.weight2 && self.value.dim() == o.value.dim() && self.value.sub(&o.value).is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct MinimalSurface {
    f: Vec<Rat>,
    fp: Vec<Rat>,
    ends: Vec<Point>,
    base_point: Option<Vec<Coeff>>,
    x: VecBiRat,
    x_z: VecBiRat,
}

pub fn rat_dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero(a[0].var());
    for (u, v) in a.iter().zip(b) {
        acc = acc.add(&u.mul(v));
    }
    acc
}

fn degree_bound(f: &[Rat]) -> usize {
    f.iter()
        .map(|r| r.num().degree().unwrap_or(0).max(r.den().degree().unwrap_or(0)))
        .max()
        .unwrap_or(0)
}

/// Distinct finite poles of `fp`, exact when they are Gaussian rationals.
fn finite_poles(fp: &[Rat]) -> Vec<Point> {
    let mut out: Vec<Point> = vec![];
    let mut push = |p: Point| {
        let c = match &p {
            Point::Finite(c) => c.to_c64(),
            Point::Infinity => unreachable!(),
        };
        let dup = out.iter().any(|q| match q {
            Point::Finite(d) => (d.to_c64() - c).norm() <= 1e-9 * c.norm().max(1.0),
            Point::Infinity => false,
        });
        if !dup {
            out.push(p);
        }
    };
    for r in fp {
        let den = r.den();
        if den.degree().unwrap_or(0) == 0 {
            continue;
        }
        let factors = if den.is_exact() { den.squarefree().unwrap_or_default() } else { vec![(den.clone(), 1)] };
        for (fac, _) in factors {
            match fac.degree() {
                Some(1) => {
                    let root = -(&fac.coeff(0) * &fac.coeff(1).inv().expect("linear factor"));
                    push(Point::Finite(root));
                }
                Some(_) => {
                    for z in fac.roots() {
                        let exact = if fac.is_exact() { gaussian_root(&fac, z) } else { None };
                        push(Point::Finite(exact.unwrap_or_else(|| Coeff::float(z.re, z.im))));
                    }
                }
                None => {}
            }
        }
    }
    out
}

/// A Gaussian rational with small denominator near `z` that is an exact root of `p`.
fn gaussian_root(p: &Poly, z: Complex64) -> Option<Coeff> {
    (1..=12i64).find_map(|d| {
        let (re, im) = ((z.re * d as f64).round(), (z.im * d as f64).round());
        if (z.re * d as f64 - re).abs() > 1e-8 || (z.im * d as f64 - im).abs() > 1e-8 || re.abs().max(im.abs()) > 1e12 {
            return None;
        }
        let c = &Coeff::ratio(re as i64, d) + &(&Coeff::i() * &Coeff::ratio(im as i64, d));
        p.eval(&c).is_zero().then_some(c)
    })
}

/// `F'(z) dz` has a pole at infinity iff `deg F' >= -1`.
fn pole_at_infinity(fp: &[Rat]) -> bool {
    fp.iter().any(|r| {
        !r.is_zero() && r.num().degree().unwrap_or(0) as i64 - r.den().degree().unwrap_or(0) as i64 >= -1
    })
}

impl MinimalSurface {
    pub fn new(f: Vec<Rat>) -> Result<MinimalSurface> {
        let n = f.len();
        if n < 3 {
            return Err(Error::AmbientDimension(n));
        }
        let f: Vec<Rat> = f
            .into_iter()
            .map(|r| Rat::new(r.num().clone().with_var(Var::Z), r.den().clone().with_var(Var::Z)).unwrap())
            .collect();
        let fp: Vec<Rat> = f.iter().map(Rat::derivative).collect();
        if fp.iter().all(Rat::is_zero) {
            return Err(Error::ZeroDifferential);
        }
        let c = rat_dot(&fp, &fp);
        if !c.is_zero() {
            return Err(Error::NonConformal(c.to_string()));
        }
        let mut ends = finite_poles(&fp);
        if pole_at_infinity(&fp) {
            ends.push(Point::Infinity);
        }
        let x = FieldVec(
            f.iter().map(|r| BiRat::from_rat(r).add(&BiRat::from_rat(&r.conjugate()))).collect::<Vec<_>>(),
        );
        let x_z = FieldVec::from_rats(&fp);
        Ok(MinimalSurface { f, fp, ends, base_point: None, x, x_z })
    }

    /// Stores a real translation added to `x`.
    pub fn with_base_point(mut self, p: Vec<Coeff>) -> Result<MinimalSurface> {
        if p.len() != self.dim() {
            return Err(Error::Algebra(crate::algebra::AlgebraError::DimensionMismatch));
        }
        self.x = FieldVec(self.x.0.iter().zip(&p).map(|(x, c)| x.add(&BiRat::constant(c.clone()))).collect());
        self.base_point = Some(p);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.f.len()
    }

    pub fn f(&self) -> &[Rat] {
        &self.f
    }

    /// `F'`, equal to `x_z`.
    pub fn f_prime(&self) -> &[Rat] {
        &self.fp
    }

    pub fn ends(&self) -> &[Point] {
        &self.ends
    }

    pub fn base_point(&self) -> Option<&[Coeff]> {
        self.base_point.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        self.f.iter().all(Rat::is_exact)
    }

    pub fn x(&self) -> &VecBiRat {
        &self.x
    }

    pub fn x_z(&self) -> &VecBiRat {
        &self.x_z
    }

    pub fn x_zb(&self) -> VecBiRat {
        self.x_z.conjugate()
    }

    /// `k`-th derivative of `F`.
    pub fn f_derivative(&self, k: usize) -> Vec<Rat> {
        self.f.iter().map(|r| r.nth_derivative(k)).collect()
    }

    /// `R = 2 x_z . x_zb = e^(2w)`.
    pub fn r(&self) -> BiRat {
        self.x_z.edot(&self.x_zb()).scale(&Coeff::int(2))
    }

    /// The same surface in the chart `w = 1/z`.
    pub fn in_chart(&self, chart: Chart) -> MinimalSurface {
        match chart {
            Chart::Z => self.clone(),
            Chart::W => {
                let f = self.f.iter().map(Rat::invert_chart).collect();
                let s = MinimalSurface::new(f).expect("chart change preserves conformality");
                match &self.base_point {
                    Some(p) => s.with_base_point(p.clone()).expect("same dimension"),
                    None => s,
                }
            }
        }
    }

    /// Largest `r` with `F^(j) . F^(k) = 0` for `2 <= j, k <= r + 1`; `None` for all orders.
    pub fn isotropy_order(&self) -> Option<usize> {
        let limit = 2 * degree_bound(&self.f) + 2;
        let mut ders: Vec<Vec<Rat>> = vec![self.f.clone(), self.fp.clone()];
        for r in 1..=limit {
            ders.push(ders.last().unwrap().iter().map(Rat::derivative).collect());
            let top = r + 1;
            for j in 2..=top {
                if !rat_dot(&ders[j], &ders[top]).is_zero() {
                    return Some(r - 1);
                }
            }
        }
        None
    }

    pub fn is_superconformal(&self) -> bool {
        self.isotropy_order().is_none_or(|r| r >= 1)
    }

    /// `Q = x_zz - (x_zz . x_zb / x_z . x_zb) x_z`, weight 0.
    pub fn hopf_q(&self) -> WeightedVec {
        let xzz = self.x_z.d_z();
        let xzb = self.x_zb();
        let coef = xzz.edot(&xzb).div(&self.x_z.edot(&xzb)).expect("immersed somewhere");
        WeightedVec::new(0, xzz.sub(&self.x_z.times(&coef)))
    }

    fn near_end(&self, z: Complex64, chart: Chart) -> bool {
        self.ends.iter().any(|e| match (e, chart) {
            (Point::Finite(c), Chart::Z) => (c.to_c64() - z).norm() < 1e-6,
            (Point::Finite(c), Chart::W) => {
                let c = c.to_c64();
                c.norm() > 0.0 && (1.0 / c - z).norm() < 1e-6
            }
            (Point::Infinity, Chart::Z) => false,
            (Point::Infinity, Chart::W) => z.norm() < 1e-6,
        })
    }

    /// Umbilic points in the chart within `radius`: common zeros of the minors
    /// `F'_i F''_j - F'_j F''_i`. Exact data uses the gcd of the minor numerators.
    pub fn umbilic_locus(&self, chart: Chart, radius: f64, grid: usize) -> Result<Vec<Complex64>> {
        let s = self.in_chart(chart);
        let f2 = s.f_derivative(2);
        let n = s.dim();
        let mut minors = vec![];
        for i in 0..n {
            for j in (i + 1)..n {
                let m = s.fp[i].mul(&f2[j]).sub(&s.fp[j].mul(&f2[i]));
                if !m.is_zero() {
                    minors.push(m);
                }
            }
        }
        if minors.is_empty() {
            return Err(Error::DegenerateSurface);
        }
        let candidates: Vec<Complex64> = if s.is_exact() {
            let mut g: Poly = minors[0].num().clone();
            for m in &minors[1..] {
                g = g.gcd(m.num())?;
            }
            g.roots()
        } else {
            let ders: Vec<(Rat, Rat)> = minors.iter().map(|m| (m.clone(), m.derivative())).collect();
            let zero = Complex64::new(0.0, 0.0);
            let hits = common_zeros(
                |z| {
                    ders.iter()
                        .map(|(m, d)| {
                            let v = m.eval_c64(z);
                            v.is_finite().then(|| Sample { value: v, dz: d.eval_c64(z), dzb: zero })
                        })
                        .collect()
                },
                &SearchOptions { radius, grid, ..Default::default() },
            );
            hits.into_iter().filter(|h| h.converged).map(|h| h.point).collect()
        };
        Ok(candidates.into_iter().filter(|z| z.norm() <= radius && !self.near_end(*z, chart)).collect())
    }
}
