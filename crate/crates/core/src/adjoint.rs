//! Adjoint transforms and pedal surfaces of superconformal minimal surfaces.

use num_complex::Complex64;

use crate::algebra::jet::Jet;
use crate::algebra::{BiRat, Coeff, DiffField, FieldVec, Point, Poly, Rat, Var, VecBiRat};
use crate::error::{Error, Result};
use crate::moebius::jet_vec;
use crate::numeric::{common_zeros, Sample, SearchOptions};
use crate::surface::{Chart, MinimalSurface};

#[derive(Clone, Debug, PartialEq)]
pub enum AdjointParam {
    /// Pedal point in `R^n`.
    Pedal(Vec<Coeff>),
    G(Rat),
}

#[derive(Clone, Debug)]
pub struct AdjointSurface {
    pub base: MinimalSurface,
    pub param: AdjointParam,
    pub xhat: VecBiRat,
    pub chart: Chart,
    /// `mu_z - mu^2/2 - s` vanished identically at construction.
    pub riccati_verified: bool,
}

/// `x - ((x.x_zb + gb)/(x_z.x_zb)) x_z - ((x.x_z + g)/(x_z.x_zb)) x_zb`
fn transform<F: DiffField>(x: &FieldVec<F>, x_z: &FieldVec<F>, g: &F) -> Result<FieldVec<F>> {
    let x_zb = x_z.conjugate();
    let h = x_z.edot(&x_zb).recip()?;
    let a = x.edot(&x_zb).plus(&g.conjugate()).times(&h);
    let b = x.edot(x_z).plus(g).times(&h);
    Ok(x.sub(&x_z.times(&a)).sub(&x_zb.times(&b)))
}

/// Taylor jets of the pedal surface at `at`, without forming it exactly.
pub fn pedal_jet(s: &MinimalSurface, x0: &[Coeff], at: Complex64, order: usize) -> Result<FieldVec<Jet>> {
    let x = jet_vec(s.x(), at, order + 1)?;
    let x_z = jet_vec(s.x_z(), at, order + 1)?;
    let p = FieldVec(x0.iter().map(|c| Jet::constant(c.to_c64(), order + 1)).collect::<Vec<_>>());
    let zero = Jet::zero(order + 1);
    Ok(transform(&x.sub(&p), &x_z, &zero)?.add(&p))
}

/// Taylor jets of `adjoint(s, g)` at `at`.
pub fn adjoint_jet(s: &MinimalSurface, g: &Rat, at: Complex64, order: usize) -> Result<FieldVec<Jet>> {
    let x = jet_vec(s.x(), at, order + 1)?;
    let x_z = jet_vec(s.x_z(), at, order + 1)?;
    let gj = Jet::from_birat(&BiRat::from_rat(g), at, order + 1)?;
    transform(&x, &x_z, &gj)
}

/// `g` for the same transform written in `chart`; `g dz` is a `(1,0)`-form, so `g_w = -g(1/w)/w^2`.
pub fn g_in_chart(g: &Rat, chart: Chart) -> Rat {
    match chart {
        Chart::Z => g.clone(),
        Chart::W => {
            let w2 = Rat::new(Poly::constant(Coeff::int(-1), Var::Z), Poly::monomial(Coeff::one(), 2, Var::Z)).expect("nonzero");
            g.invert_chart().mul(&w2)
        }
    }
}

/// Schwarzian of a minimal surface, `2 w_zz - 2 w_z^2` with `e^(2w) = R`.
pub fn minimal_schwarzian(r: &BiRat) -> Result<BiRat> {
    let rz = r.dz();
    let r2 = r.mul(r).recip()?;
    // w_z = R_z / 2R, w_zz = (R_zz R - R_z^2) / 2R^2
    let wzz2 = r.dz().dz().mul(r).sub(&rz.mul(&rz)).mul(&r2);
    let wz2sq = rz.mul(&rz).mul(&r2).scale(&Coeff::ratio(1, 2));
    Ok(wzz2.sub(&wz2sq))
}

/// `theta = mu_z - mu^2/2 - s` for `mu = -2 zeta_z/zeta`, `zeta = 2(x.x_zb + gb) e^(-w)`.
pub fn riccati_residual(s: &MinimalSurface, g: &BiRat) -> Result<BiRat> {
    let r = s.r();
    let l = s.x().edot(&s.x_zb()).add(&g.conj());
    let mu = l.dz().div(&l)?.scale(&Coeff::int(-2)).add(&r.dz().div(&r)?);
    let sch = minimal_schwarzian(&r)?;
    Ok(mu.dz().sub(&mu.mul(&mu).scale(&Coeff::ratio(1, 2))).sub(&sch))
}

fn require_superconformal(s: &MinimalSurface) -> Result<()> {
    if s.is_superconformal() {
        Ok(())
    } else {
        Err(Error::NotSuperconformal)
    }
}

/// The adjoint transform with holomorphic parameter `g`.
pub fn adjoint(s: &MinimalSurface, g: &Rat) -> Result<AdjointSurface> {
    require_superconformal(s)?;
    let gb = BiRat::from_rat(g);
    let xhat = transform(s.x(), s.x_z(), &gb)?;
    let riccati_verified = riccati_residual(s, &gb)?.is_zero();
    Ok(AdjointSurface { base: s.clone(), param: AdjointParam::G(g.clone()), xhat, chart: Chart::Z, riccati_verified })
}

/// Foot of the perpendicular from `x0` to each tangent plane: `x0 + adjoint(x - x0, g = 0)`.
pub fn pedal(s: &MinimalSurface, x0: &[Coeff]) -> Result<AdjointSurface> {
    require_superconformal(s)?;
    if x0.len() != s.dim() {
        return Err(Error::Algebra(crate::algebra::AlgebraError::DimensionMismatch));
    }
    let p = FieldVec(x0.iter().map(|c| BiRat::constant(c.clone())).collect::<Vec<_>>());
    let shifted = s.x().sub(&p);
    let xhat = transform(&shifted, s.x_z(), &BiRat::zero())?.add(&p);
    let riccati_verified = riccati_residual(&shifted_surface(s, x0)?, &BiRat::zero())?.is_zero();
    Ok(AdjointSurface {
        base: s.clone(),
        param: AdjointParam::Pedal(x0.to_vec()),
        xhat,
        chart: Chart::Z,
        riccati_verified,
    })
}

fn shifted_surface(s: &MinimalSurface, x0: &[Coeff]) -> Result<MinimalSurface> {
    let base: Vec<Coeff> = match s.base_point() {
        Some(b) => b.iter().zip(x0).map(|(b, c)| b - c).collect(),
        None => x0.iter().map(|c| -c.clone()).collect(),
    };
    MinimalSurface::new(s.f().to_vec())?.with_base_point(base)
}

/// Limit of the adjoint family as `g -> infinity`: the point `(0, 1, -1)` of the light cone.
pub fn dual_point(s: &MinimalSurface) -> Vec<Coeff> {
    let mut v = vec![Coeff::zero(); s.dim() + 2];
    v[s.dim()] = Coeff::one();
    v[s.dim() + 1] = Coeff::int(-1);
    v
}

/// `g = -xhat . x_z`, the inverse of [`adjoint`].
pub fn recover_g(s: &MinimalSurface, xhat: &VecBiRat) -> Result<Rat> {
    let g = xhat.edot(s.x_z()).neg();
    g.to_rat().ok_or_else(|| Error::Invalid("recovered g is not holomorphic".into()))
}

/// `(xhat_z . xhat_z, xhat_z . x_zb)`; both vanish for a genuine adjoint.
pub fn verify_contact(adj: &AdjointSurface) -> (BiRat, BiRat) {
    let xz = adj.xhat.d_z();
    (xz.edot(&xz), xz.edot(&adj.base.x_zb()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum BranchKind {
    /// Both pedal conditions vanish.
    Branch,
    /// Umbilic point of the base surface.
    Umbilic,
    /// Gauss-Newton stalled at a small but nonzero residual.
    Suspect,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchPoint {
    pub point: Complex64,
    pub kind: BranchKind,
    pub residual: f64,
}

fn pedal_point(adj: &AdjointSurface) -> Result<Vec<Coeff>> {
    match &adj.param {
        AdjointParam::Pedal(p) => Ok(p.clone()),
        AdjointParam::G(_) => Err(Error::Invalid("branch search needs a pedal point".into())),
    }
}

/// Ratio `|p(z)| / sum |c| |z|^deg` of the reduced numerator.
fn relative_numerator(f: &BiRat, z: Complex64) -> f64 {
    let (v, scale) = f.num().terms().iter().fold((Complex64::new(0.0, 0.0), 0.0), |(v, s), ((a, b), c)| {
        let t = c.to_c64() * z.powu(*a) * z.conj().powu(*b);
        (v + t, s + t.norm())
    });
    if scale == 0.0 {
        0.0
    } else {
        v.norm() / scale
    }
}

/// Points where `x_z.(x - x0)` and `x_zz.(x - x0)` vanish together, plus the umbilics.
pub fn branch_locus(adj: &AdjointSurface, chart: Chart, radius: f64, grid: usize) -> Result<Vec<BranchPoint>> {
    pedal_branch_locus(&adj.base, &pedal_point(adj)?, chart, radius, grid)
}

/// [`branch_locus`] from the base surface and pedal point alone.
pub fn pedal_branch_locus(base: &MinimalSurface, x0: &[Coeff], chart: Chart, radius: f64, grid: usize) -> Result<Vec<BranchPoint>> {
    let s = base.in_chart(chart);
    let p = FieldVec(x0.iter().map(|c| BiRat::constant(c.clone())).collect::<Vec<_>>());
    let d = s.x().sub(&p);
    let f = s.x_z().edot(&d);
    let g = s.x_z().d_z().edot(&d);
    let parts: Vec<[BiRat; 3]> = [f.clone(), g.clone()].into_iter().map(|h| [h.dz(), h.dzb(), h]).collect();
    let exclude: Vec<(Complex64, f64)> = s
        .ends()
        .iter()
        .filter_map(|e| match e {
            Point::Finite(c) => Some((c.to_c64(), 1e-3)),
            Point::Infinity => None,
        })
        .collect();
    let hits = common_zeros(
        |z| {
            parts
                .iter()
                .map(|[dz, dzb, h]| {
                    let v = h.eval_c64(z);
                    v.is_finite().then(|| Sample { value: v, dz: dz.eval_c64(z), dzb: dzb.eval_c64(z) })
                })
                .collect()
        },
        &SearchOptions { radius, grid, exclude, ..Default::default() },
    );
    let mut out: Vec<BranchPoint> = hits
        .into_iter()
        .map(|h| {
            let confirmed = h.converged && relative_numerator(&f, h.point) < 1e-8 && relative_numerator(&g, h.point) < 1e-8;
            BranchPoint {
                point: h.point,
                kind: if confirmed { BranchKind::Branch } else { BranchKind::Suspect },
                residual: h.residual,
            }
        })
        .collect();
    match s.umbilic_locus(Chart::Z, radius, grid) {
        Ok(u) => {
            for z in u {
                out.retain(|b| (b.point - z).norm() > 1e-7 * z.norm().max(1.0));
                out.push(BranchPoint { point: z, kind: BranchKind::Umbilic, residual: 0.0 });
            }
        }
        Err(Error::DegenerateSurface) => {}
        Err(e) => return Err(e),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{example1, example1_pedal};

    #[test]
    fn example1_pedal_at_origin_matches_closed_form() {
        let s = example1();
        let adj = pedal(&s, &vec![Coeff::zero(); 6]).unwrap();
        assert!(adj.xhat.sub(&example1_pedal()).is_zero());
        assert!(adj.riccati_verified);
    }

    #[test]
    fn adjoint_jets_agree_in_both_charts() {
        let s = example1();
        let g = Rat::new(Poly::new(vec![Coeff::ratio(1, 2), Coeff::i()], Var::Z), Poly::new(vec![Coeff::int(3), Coeff::one()], Var::Z)).unwrap();
        let exact = adjoint(&s, &g).unwrap().xhat;
        let sw = s.in_chart(Chart::W);
        let gw = g_in_chart(&g, Chart::W);
        for z in [Complex64::new(0.4, 0.3), Complex64::new(-1.2, 0.7)] {
            let want = exact.eval_c64(z);
            let jz = adjoint_jet(&s, &g, z, 0).unwrap();
            let jw = adjoint_jet(&sw, &gw, 1.0 / z, 0).unwrap();
            for k in 0..6 {
                assert!((jz.0[k].value() - want[k]).norm() < 1e-10 * want[k].norm().max(1.0));
                assert!((jw.0[k].value() - want[k]).norm() < 1e-10 * want[k].norm().max(1.0));
            }
        }
    }
}
