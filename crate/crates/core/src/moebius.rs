//! Moebius invariants of a conformal immersion from any light-cone lift.
//!
//! Work is done with an arbitrary real lift `Z`; the canonical lift is `Y = R^(-1/2) Z` with
//! `R = 2 <Z_z, Z_zb>`. Frame vectors are stored as "values": the true vector is
//! `R^(-1/2) * value`, so products of two values pick up a factor `R^(-1)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::jet::Jet;
use crate::algebra::{BiPoly, BiRat, Coeff, DiffField, FieldVec, VecBiRat};
use crate::error::{Error, Result};
use crate::numeric::{gauss_legendre, numeric_rank, smooth_step, RankInfo};
use crate::surface::{Chart, WeightedVec};

/// `(x, (-1 + x.x)/2, (-1 - x.x)/2)`: a light-cone lift of `x` with weight `-1` against `R`.
pub fn light_cone_lift<F: DiffField>(x: &FieldVec<F>) -> FieldVec<F> {
    let xx = x.edot(x);
    let one = xx.constant_like(&Coeff::one());
    let mut v = x.0.clone();
    v.push(xx.minus(&one).ratio(1, 2));
    v.push(xx.plus(&one).negate().ratio(1, 2));
    FieldVec(v)
}

/// The canonical lift `X = R^(-1/2) (x, (-1 + x.x)/2, (-1 - x.x)/2)` with `R = 2 x_z.x_zb`.
pub fn canonical_lift(x: &VecBiRat) -> Result<WeightedVec> {
    let xz = x.d_z();
    let c = xz.edot(&xz);
    if !c.is_zero() {
        return Err(Error::NonConformal(c.to_string()));
    }
    Ok(WeightedVec::new(-1, light_cone_lift(x)))
}

/// The lift with denominators cleared when the common denominator is real.
pub fn polynomial_lift(x: &VecBiRat) -> VecBiRat {
    let z = light_cone_lift(x);
    let (nums, den) = crate::algebra::birat::clear_denominators(&z.0);
    let d = BiRat::from_poly(den);
    if d.is_real() {
        FieldVec(nums.into_iter().map(BiRat::from_poly).collect())
    } else {
        z
    }
}

/// Frame data computed from a lift `Z` of a conformal immersion.
#[derive(Clone, Debug)]
pub struct Frame<F: DiffField> {
    pub lift: FieldVec<F>,
    pub z_z: FieldVec<F>,
    pub z_zb: FieldVec<F>,
    pub z_zz: FieldVec<F>,
    pub z_zzb: FieldVec<F>,
    /// `R = 2 <Z_z, Z_zb>`
    pub r: F,
    pub r_inv: F,
    /// `<Z_zzb, Z_zzb>`
    q2: F,
    /// Value of the Hopf differential `kappa`.
    pub k: FieldVec<F>,
}

impl<F: DiffField> Frame<F> {
    pub fn from_lift(lift: FieldVec<F>) -> Result<Frame<F>> {
        let z_z = lift.d_z();
        let z_zb = lift.d_zb();
        let z_zz = z_z.d_z();
        let z_zzb = z_z.d_zb();
        let r = z_z.lorentz(&z_zb).ratio(2, 1);
        let r_inv = r.recip().map_err(|_| Error::Invalid("lift is not immersed".into()))?;
        let q2 = z_zzb.lorentz(&z_zzb);
        let mut fr = Frame { lift, z_z, z_zb, z_zz, z_zzb, r, r_inv, q2, k: FieldVec(vec![]) };
        fr.k = fr.project(&fr.z_zz);
        Ok(fr)
    }

    pub fn dim(&self) -> usize {
        self.lift.dim()
    }

    /// Lorentz product of two values, i.e. `R^(-1) <u, v>`.
    pub fn product(&self, u: &FieldVec<F>, v: &FieldVec<F>) -> F {
        u.lorentz(v).times(&self.r_inv)
    }

    /// Orthogonal projection onto the normal bundle `V^perp`, `V = span{Z, Z_z, Z_zb, Z_zzb}`.
    pub fn project(&self, v: &FieldVec<F>) -> FieldVec<F> {
        let zv = self.lift.lorentz(v);
        let two_r = self.r_inv.ratio(2, 1);
        let cz = self.q2.times(&self.r_inv).times(&self.r_inv).ratio(4, 1).times(&zv).plus(&two_r.times(&self.z_zzb.lorentz(v)));
        let c_zzb = two_r.times(&zv);
        let c_z = two_r.times(&self.z_zb.lorentz(v)).negate();
        let c_zb = two_r.times(&self.z_z.lorentz(v)).negate();
        FieldVec::combo(&[
            (&v.0[0].constant_like(&Coeff::one()), v),
            (&cz, &self.lift),
            (&c_zzb, &self.z_zzb),
            (&c_z, &self.z_z),
            (&c_zb, &self.z_zb),
        ])
    }

    /// Normal derivative `D_zb` on a normal value of weight `-1`.
    pub fn d_zb(&self, u: &FieldVec<F>) -> FieldVec<F> {
        let half_l = self.r.d_zb().times(&self.r_inv).ratio(1, 2);
        self.project(&u.d_zb()).sub(&u.times(&half_l))
    }

    /// Normal derivative `D_z` on a normal value of weight `-1`.
    pub fn d_z(&self, u: &FieldVec<F>) -> FieldVec<F> {
        let half_l = self.r.d_z().times(&self.r_inv).ratio(1, 2);
        self.project(&u.d_z()).sub(&u.times(&half_l))
    }

    fn ell(&self) -> (F, F) {
        let lz = self.r.d_z().times(&self.r_inv).ratio(1, 2);
        // R is real, so the zb-derivative of log R is the conjugate
        let lzb = lz.conjugate();
        (lz, lzb)
    }

    /// Values of `Y_z`, `Y_zz`, `Y_zzb`.
    pub fn y_derivatives(&self) -> (FieldVec<F>, FieldVec<F>, FieldVec<F>) {
        let (lz, lzb) = self.ell();
        let yz = self.z_z.sub(&self.lift.times(&lz));
        let c0 = lz.times(&lz).minus(&lz.d_z());
        let yzz = FieldVec::combo(&[
            (&lz.constant_like(&Coeff::one()), &self.z_zz),
            (&lz.ratio(-2, 1), &self.z_z),
            (&c0, &self.lift),
        ]);
        let c1 = lz.times(&lzb).minus(&lz.d_zb());
        let yzzb = FieldVec::combo(&[
            (&lz.constant_like(&Coeff::one()), &self.z_zzb),
            (&lz.negate(), &self.z_zb),
            (&lzb.negate(), &self.z_z),
            (&c1, &self.lift),
        ]);
        (yz, yzz, yzzb)
    }

    /// Schwarzian `s = 4 <Y_zz, Y_zzb>`.
    pub fn schwarzian(&self) -> F {
        let (_, yzz, yzzb) = self.y_derivatives();
        self.product(&yzz, &yzzb).ratio(4, 1)
    }

    /// Value of `N = 2 Y_zzb + 2 <Y_zzb, Y_zzb> Y`.
    pub fn n(&self) -> FieldVec<F> {
        let (_, _, yzzb) = self.y_derivatives();
        let c = self.product(&yzzb, &yzzb).ratio(2, 1);
        yzzb.scaled(&Coeff::int(2)).add(&self.lift.times(&c))
    }

    /// `<kappa, kappa>`
    pub fn kappa_sq(&self) -> F {
        self.product(&self.k, &self.k)
    }

    /// `<kappa, kappa-bar>`
    pub fn kappa_kappabar(&self) -> F {
        self.product(&self.k, &self.k.conjugate())
    }

    /// `D_zb kappa` value.
    pub fn k1(&self) -> FieldVec<F> {
        self.d_zb(&self.k)
    }

    /// Value of `D_zb D_zb kappa + (s-bar/2) kappa`.
    pub fn willmore_residual(&self) -> FieldVec<F> {
        let k2 = self.d_zb(&self.k1());
        let sbar = self.schwarzian().conjugate();
        k2.add(&self.k.times(&sbar.ratio(1, 2)))
    }

    /// `s_zb/2 - 3 <D_z kappa-bar, kappa> - <kappa-bar, D_z kappa>`
    pub fn conformal_gauss(&self) -> F {
        let s = self.schwarzian();
        let dz_kbar = self.k1().conjugate();
        let dz_k = self.d_z(&self.k);
        let kbar = self.k.conjugate();
        s.d_zb().ratio(1, 2).minus(&self.product(&dz_kbar, &self.k).ratio(3, 1)).minus(&self.product(&kbar, &dz_k))
    }

    /// Structure equation `Y_zzb + <kappa, kappa-bar> Y - N/2` (value).
    pub fn structure_residual(&self) -> FieldVec<F> {
        let (_, _, yzzb) = self.y_derivatives();
        yzzb.add(&self.lift.times(&self.kappa_kappabar())).sub(&self.n().scaled(&Coeff::ratio(1, 2)))
    }

    /// `[<Y_z, Y_zb> - 1/2, <Y, N> + 1, <N, N>, <N, Y_z>]`
    pub fn frame_identities(&self) -> [F; 4] {
        let (yz, _, _) = self.y_derivatives();
        let yzb = yz.conjugate();
        let n = self.n();
        let half = self.r.constant_like(&Coeff::ratio(1, 2));
        let one = self.r.constant_like(&Coeff::one());
        [
            self.product(&yz, &yzb).minus(&half),
            self.product(&self.lift, &n).plus(&one),
            self.product(&n, &n),
            self.product(&n, &yz),
        ]
    }

    /// `(mu, eta value, rho)` with `mu-bar = -<kappa,kappa>_zb / <kappa,kappa>` unless `mu` is supplied.
    pub fn mu_eta_rho(&self, mu: Option<F>) -> Result<(F, FieldVec<F>, F)> {
        let mu = match mu {
            Some(m) => m,
            None => {
                let kk = self.kappa_sq();
                if kk.is_zero() {
                    return Err(Error::SuperconformalInput);
                }
                kk.d_zb().divide(&kk)?.negate().conjugate()
            }
        };
        let mubar = mu.conjugate();
        let eta = self.k1().add(&self.k.times(&mubar.ratio(1, 2)));
        let rho = mubar.d_z().minus(&self.kappa_kappabar().ratio(2, 1));
        Ok((mu, eta, rho))
    }

    /// `(Theta_0, Theta_3)` coefficients.
    pub fn theta_forms(&self, rho: &F) -> (F, F) {
        let k1 = self.k1();
        let a = self.product(&k1, &self.k);
        let t0 = a.times(&a).minus(&self.product(&k1, &k1).times(&self.kappa_sq()));
        (t0, rho.times(&self.kappa_sq()))
    }

    /// Value of `eta# = <kappa,kappa> D_zb kappa - <kappa, D_zb kappa> kappa` (weight `-3`).
    pub fn eta_sharp(&self) -> FieldVec<F> {
        let k1 = self.k1();
        k1.times(&self.k.lorentz(&self.k)).sub(&self.k.times(&self.k.lorentz(&k1)))
    }

    /// Ricci identity residual for the normal section `xi`.
    pub fn ricci_residual(&self, xi: &FieldVec<F>) -> FieldVec<F> {
        let dz = |u: &FieldVec<F>| self.project(&u.d_z());
        let dzb = |u: &FieldVec<F>| self.project(&u.d_zb());
        let kbar = self.k.conjugate();
        let a = self.product(xi, &self.k).ratio(2, 1);
        let b = self.product(xi, &kbar).ratio(2, 1);
        dzb(&dz(xi)).sub(&dz(&dzb(xi))).sub(&kbar.times(&a)).add(&self.k.times(&b))
    }
}

/// Taylor jets of every component of `v` at `at`.
pub fn jet_vec(v: &VecBiRat, at: Complex64, order: usize) -> Result<FieldVec<Jet>> {
    Ok(FieldVec(v.0.iter().map(|f| Jet::from_birat(f, at, order)).collect::<std::result::Result<Vec<_>, _>>()?))
}

/// Frame of `x` (Euclidean) computed exactly from a polynomial lift.
pub fn frame_at(x: &VecBiRat) -> Result<Frame<BiRat>> {
    canonical_lift(x)?;
    let fr = Frame::from_lift(polynomial_lift(x))?;
    if fr.k.is_zero() && fr.z_zz.is_zero() {
        return Err(Error::UmbilicDegenerate);
    }
    Ok(fr)
}

/// Frame of `x` at one point, numerically, from jets of order `order`.
pub fn frame_jet(x: &VecBiRat, at: Complex64, order: usize) -> Result<Frame<Jet>> {
    Frame::from_lift(light_cone_lift(&jet_vec(x, at, order)?))
}

/// Frame of the canonical lift `Y` from jets of `x`; its values are true vectors.
pub fn canonical_frame_jet(x: &FieldVec<Jet>) -> Result<Frame<Jet>> {
    let z = light_cone_lift(x);
    let r = z.d_z().lorentz(&z.d_zb()).ratio(2, 1);
    Frame::from_lift(z.times(&r.powf(-0.5)))
}

/// Willmore residual `D_zb D_zb kappa + (s-bar/2) kappa` with weight `-1`.
pub fn willmore_residual(x: &VecBiRat) -> Result<WeightedVec> {
    let fr = frame_at(x)?;
    Ok(WeightedVec::new(-1, fr.willmore_residual()))
}

/// Columns `(X, X_z, X_zb, X_zzb, X_zz, X_zzzb)` of a lift at `p`, from exact Taylor data.
pub fn frame_matrix(lift: &VecBiRat, p: &Coeff) -> Result<Vec<Vec<Coeff>>> {
    let cols = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (2, 0, 2), (2, 1, 2)];
    let mut rows = vec![];
    for f in &lift.0 {
        let s = f.translate(p).series_at_origin(3)?;
        rows.push(
            cols.iter()
                .map(|&(a, b, fac)| s.get(&(a, b)).cloned().unwrap_or_else(Coeff::zero).scale_int(fac))
                .collect(),
        );
    }
    Ok(rows)
}

pub fn to_matrix(rows: &[Vec<Coeff>]) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j].to_c64())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SWillmoreCertificate {
    pub is_s_willmore_near_p: bool,
    pub frame_rank: usize,
    pub rank: RankInfo,
}

/// Rank of the six-column frame matrix at `p`; full rank 6 with a clear gap rules out S-Willmore.
/// Otherwise `kappa` and `D_zb kappa` are tested for proportionality near `p`.
pub fn s_willmore_certificate(x: &VecBiRat, p: &Coeff) -> Result<SWillmoreCertificate> {
    let rows = frame_matrix(&polynomial_lift(x), p)?;
    let rank = numeric_rank(&to_matrix(&rows), 1e-8);
    if rank.rank == 6 && rank.gap > 1e-6 {
        return Ok(SWillmoreCertificate { is_s_willmore_near_p: false, frame_rank: 6, rank });
    }
    let base = p.to_c64();
    let mut parallel = true;
    for k in 0..4 {
        let at = base + Complex64::from_polar(0.05, 0.7 + k as f64 * 1.3);
        let fr = frame_jet(x, at, 6)?;
        let k0: Vec<Complex64> = fr.k.0.iter().map(Jet::value).collect();
        let k1: Vec<Complex64> = fr.k1().0.iter().map(Jet::value).collect();
        let m = DMatrix::from_fn(k0.len(), 2, |i, j| if j == 0 { k0[i] } else { k1[i] });
        if numeric_rank(&m, 1e-8).rank > 1 {
            parallel = false;
        }
    }
    Ok(SWillmoreCertificate { is_s_willmore_near_p: parallel, frame_rank: rank.rank, rank })
}

#[derive(Clone, Debug, PartialEq)]
pub struct XiSample {
    pub point: Complex64,
    /// Unit normal `xi` in `R^(n+1,1)`.
    pub xi: Vec<f64>,
    pub norm: f64,
    /// `|<xi_z, xi_z>|`
    pub conformality: f64,
    /// Sine of the Euclidean angle between `xi_zzb` and `xi`.
    pub harmonic_sin: f64,
}

fn real_part(v: &FieldVec<Jet>) -> FieldVec<Jet> {
    v.add(&v.conjugate()).scaled(&Coeff::ratio(1, 2))
}

fn imag_part(v: &FieldVec<Jet>) -> FieldVec<Jet> {
    v.sub(&v.conjugate()).scaled(&(&Coeff::i() * &Coeff::ratio(-1, 2)))
}

fn values(v: &FieldVec<Jet>) -> Vec<Complex64> {
    v.0.iter().map(Jet::value).collect()
}

/// Unit normal field orthogonal to `Re eta#`, `Im eta#`, sampled along `points` in order.
/// The sign is propagated along the path.
pub fn xi_map(x: &VecBiRat, points: &[Complex64]) -> Result<Vec<XiSample>> {
    xi_map_jets(|p| jet_vec(x, p, XI_ORDER), points)
}

/// Jet order needed by [`xi_map_jets`].
pub const XI_ORDER: usize = 8;

/// [`xi_map`] from jets of order [`XI_ORDER`] of the surface at each point.
pub fn xi_map_jets(jets: impl Fn(Complex64) -> Result<FieldVec<Jet>>, points: &[Complex64]) -> Result<Vec<XiSample>> {
    const ORDER: usize = XI_ORDER;
    let mut out: Vec<XiSample> = Vec::with_capacity(points.len());
    for &p in points {
        let fr = canonical_frame_jet(&jets(p)?)?;
        let sharp = fr.eta_sharp();
        let a = real_part(&sharp);
        let b = imag_part(&sharp);
        let (aa, ab, bb) = (a.lorentz(&a).value().re, a.lorentz(&b).value().re, b.lorentz(&b).value().re);
        let scale = aa.max(bb);
        if scale == 0.0 || (aa * bb - ab * ab) < 1e-12 * scale * scale {
            return Err(Error::RankDrop(format!("{p}")));
        }
        // orthonormalize a, b as fields
        let e1 = a.times(&a.lorentz(&a).powf(-0.5));
        let b1 = b.sub(&e1.times(&b.lorentz(&e1)));
        let e2 = b1.times(&b1.lorentz(&b1).powf(-0.5));
        let dim = fr.dim();
        let mut best: Option<(f64, FieldVec<Jet>)> = None;
        for i in 0..dim {
            let mut c = vec![Jet::zero(ORDER); dim];
            c[i] = Jet::constant(Complex64::new(1.0, 0.0), ORDER);
            let u = fr.project(&FieldVec(c));
            let u = u.sub(&e1.times(&u.lorentz(&e1))).sub(&e2.times(&u.lorentz(&e2)));
            let n = u.lorentz(&u).value().re;
            if best.as_ref().is_none_or(|(m, _)| n > *m) {
                best = Some((n, u));
            }
        }
        let (_, u) = best.expect("nonempty basis");
        let mut xi = u.times(&u.lorentz(&u).powf(-0.5));
        let mut v: Vec<f64> = values(&xi).iter().map(|c| c.re).collect();
        if let Some(prev) = out.last() {
            let dot: f64 = prev.xi.iter().zip(&v).map(|(a, b)| a * b).sum();
            if dot < 0.0 {
                xi = xi.neg();
                v.iter_mut().for_each(|t| *t = -*t);
            }
        }
        let xz = xi.d_z();
        let conformality = xz.lorentz(&xz).value().norm();
        let h: Vec<Complex64> = values(&xz.d_zb());
        let along: Complex64 = xi.d_z().d_zb().lorentz(&xi).value();
        let perp: f64 = h.iter().zip(&v).map(|(h, x)| (h - along * x).norm_sqr()).sum::<f64>().sqrt();
        let total: f64 = h.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let norm = xi.lorentz(&xi).value().re;
        out.push(XiSample {
            point: p,
            xi: v,
            norm,
            conformality,
            harmonic_sin: if total == 0.0 { 0.0 } else { perp / total },
        });
    }
    Ok(out)
}

/// `4 <kappa, kappa-bar>`, the Willmore energy density against `dx dy`.
pub fn energy_density(x: &VecBiRat) -> Result<BiRat> {
    let fr = frame_at(x)?;
    Ok(fr.kappa_kappabar().scale(&Coeff::int(4)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Energy {
    pub w: f64,
    pub over_2pi: f64,
    pub nearest_multiple: i64,
}

fn chart_integral(density: &(dyn Fn(Complex64) -> Result<f64> + Sync), nodes: &(Vec<f64>, Vec<f64>)) -> Result<f64> {
    let (x, w) = nodes;
    // both charts: [-2, 2]^2, weighted by psi(log2 |z|)
    (0..x.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = 0.0;
            for j in 0..x.len() {
                let z = Complex64::new(2.0 * x[i], 2.0 * x[j]);
                let cut = smooth_step(z.norm().log2());
                if cut == 0.0 {
                    continue;
                }
                acc += w[i] * w[j] * 4.0 * cut * density(z)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<f64>>>()
        // fixed summation order keeps results reproducible
        .map(|rows| rows.iter().sum())
}

fn energy_of(w: f64) -> Result<Energy> {
    if !w.is_finite() {
        return Err(Error::NonCompact("quadrature diverged".into()));
    }
    let over = w / (2.0 * std::f64::consts::PI);
    Ok(Energy { w, over_2pi: over, nearest_multiple: over.round() as i64 })
}

/// Willmore energy by two-chart Gauss-Legendre quadrature of `density`.
pub fn willmore_energy_from_density(density: &BiRat, grid: usize) -> Result<Energy> {
    let nodes = gauss_legendre(grid);
    let wz = chart_integral(&|z| Ok(density.eval_c64(z).re), &nodes)?;
    // density transforms as a (1,1)-form: multiply by |dz/dw|^2 = (w wb)^-2
    let inv = density.invert_chart().mul(&BiRat::from_poly(BiPoly::monomial(Coeff::one(), 2, 2)).recip()?);
    let ww = chart_integral(&|z| Ok(inv.eval_c64(z).re), &nodes)?;
    energy_of(wz + ww)
}

/// Willmore energy from jets of the surface in each chart, for data too large to
/// differentiate exactly. `jets(Chart::W, w)` must describe the surface at `z = 1/w`.
pub fn willmore_energy_jets<J>(jets: J, grid: usize) -> Result<Energy>
where
    J: Fn(Chart, Complex64) -> Result<FieldVec<Jet>> + Sync,
{
    let nodes = gauss_legendre(grid);
    let density = |chart: Chart, z: Complex64| -> Result<f64> {
        let fr = canonical_frame_jet(&jets(chart, z)?)?;
        Ok(4.0 * fr.kappa_kappabar().value().re)
    };
    let wz = chart_integral(&|z| density(Chart::Z, z), &nodes)?;
    let ww = chart_integral(&|z| density(Chart::W, z), &nodes)?;
    energy_of(wz + ww)
}

pub fn willmore_energy(x: &VecBiRat, grid: usize) -> Result<Energy> {
    willmore_energy_from_density(&energy_density(x)?, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjoint::minimal_schwarzian;
    use crate::examples::{example1, example1_lift_metric, example1_pedal, example1_pedal_lift};
    use crate::surface::MinimalSurface;

    #[test]
    fn minimal_frame_matches_closed_forms() {
        let s = example1();
        let x = s.x();
        let fr = Frame::from_lift(light_cone_lift(x)).unwrap();
        for id in fr.frame_identities() {
            assert!(id.is_zero());
        }
        assert!(fr.structure_residual().is_zero());
        // s = 2 w_zz - 2 w_z^2 with e^(2w) = R
        assert!(fr.schwarzian().sub(&minimal_schwarzian(&s.r()).unwrap()).is_zero());
        // kappa value (Q, Q.x, -Q.x), Q the normal part of x_zz
        let r = s.r();
        let xz = x.d_z();
        let q = xz.d_z().sub(&xz.times(&r.dz().div(&r).unwrap()));
        let qx = q.edot(x);
        let mut expect = q.0.clone();
        expect.push(qx.clone());
        expect.push(qx.neg());
        assert!(fr.k.sub(&FieldVec(expect)).is_zero());
        // mu* = 2 w_z kills eta and rho
        let (_, eta, rho) = fr.mu_eta_rho(Some(r.dz().div(&r).unwrap())).unwrap();
        assert!(eta.is_zero());
        assert!(rho.is_zero());
        assert!(fr.willmore_residual().is_zero());
        assert!(matches!(fr.mu_eta_rho(None), Err(Error::SuperconformalInput)));
        let (t0, _) = fr.theta_forms(&rho);
        assert!(t0.is_zero());
    }

    #[test]
    fn reference_lift_is_a_multiple_of_ours() {
        let ours = polynomial_lift(&example1_pedal());
        let reference = example1_pedal_lift();
        let n = ours.dim();
        for (k, (a, b)) in ours.0.iter().zip(&reference.0).enumerate() {
            let sign = if k + 2 >= n { -1 } else { 1 };
            assert!(b.sub(&a.scale(&Coeff::ratio(8 * sign, 9))).is_zero(), "component {k}");
        }
        let xz = reference.d_z();
        let metric = xz.lorentz(&xz.conjugate()).scale(&Coeff::ratio(1, 2));
        assert!(metric.sub(&BiRat::from_poly(example1_lift_metric())).is_zero());
    }

    #[test]
    fn frame_matrix_at_origin() {
        let m = frame_matrix(&example1_pedal_lift(), &Coeff::zero()).unwrap();
        let i = Coeff::i;
        let (o, z) = (Coeff::one, Coeff::zero);
        let expect = vec![
            vec![z(), i(), -i(), z(), z(), z()],
            vec![z(), -o(), -o(), z(), z(), z()],
            vec![z(), z(), z(), z(), z(), -i()],
            vec![z(), z(), z(), z(), z(), o()],
            vec![z(), z(), z(), z(), &i() * &Coeff::int(2), z()],
            vec![z(), z(), z(), z(), Coeff::int(-2), z()],
            vec![o(), z(), z(), -o(), z(), z()],
            vec![o(), z(), z(), o(), z(), z()],
        ];
        assert_eq!(m, expect);
        let rank = numeric_rank(&to_matrix(&m), 1e-8);
        assert_eq!(rank.rank, 6);
        assert!(rank.gap > 1e-6);
    }

    #[test]
    fn plane_has_no_energy() {
        let p = MinimalSurface::new(vec![
            crate::examples::zpow(Coeff::one(), 1),
            crate::examples::zpow(Coeff::i(), 1),
            crate::examples::zpow(Coeff::zero(), 0),
        ])
        .unwrap();
        let d = Frame::from_lift(light_cone_lift(p.x())).unwrap().kappa_kappabar();
        assert!(d.is_zero());
        let e = willmore_energy_from_density(&d.scale(&Coeff::int(4)), 16).unwrap();
        assert_eq!(e.nearest_multiple, 0);
        assert!(e.w.abs() < 1e-12);
    }

    #[test]
    fn xi_of_a_surface_in_a_hyperplane_is_constant() {
        use crate::adjoint::pedal_jet;
        use crate::examples::zpow;
        let f = vec![
            zpow(Coeff::one(), 1),
            zpow(Coeff::i(), 1),
            zpow(Coeff::one(), 3),
            zpow(Coeff::i(), 3),
            zpow(Coeff::zero(), 0),
        ];
        let s = MinimalSurface::new(f).unwrap();
        let x0 = [Coeff::ratio(1, 3), Coeff::ratio(1, 5), Coeff::ratio(-1, 7), Coeff::ratio(2, 9), Coeff::zero()];
        let pts: Vec<Complex64> = (0..8).map(|k| Complex64::from_polar(0.4, 0.8 * k as f64)).collect();
        let xs = xi_map_jets(|p| pedal_jet(&s, &x0, p, XI_ORDER), &pts).unwrap();
        for x in &xs {
            assert!((x.norm - 1.0).abs() < 1e-12);
            assert!((x.xi[4].abs() - 1.0).abs() < 1e-9);
            assert!(x.conformality < 1e-9);
        }
    }
}
