//! Ends of minimal surfaces, the immersion behaviour of pedal surfaces there, and the
//! checklist for a pedal surface to close up to a compact Willmore immersion.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::adjoint::{pedal, pedal_branch_locus, BranchKind};
use crate::algebra::{series, AlgebraError, BiRat, Coeff, Laurent, Point, Poly, Rat, Var};
use crate::error::{Error, Result};
use crate::surface::{Chart, MinimalSurface};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndClass {
    ImmersedInterior,
    FlatEnd,
    Branched,
    Unclassified,
}

impl EndClass {
    pub fn name(self) -> &'static str {
        match self {
            EndClass::ImmersedInterior => "immersed_interior",
            EndClass::FlatEnd => "flat_end",
            EndClass::Branched => "branched",
            EndClass::Unclassified => "unclassified",
        }
    }

    pub fn admissible(self) -> bool {
        matches!(self, EndClass::ImmersedInterior | EndClass::FlatEnd)
    }
}

/// `x = 2 Re(v_{-m} z^{-m} + v_{k-m} z^{k-m} + ...)` near the end, in a local coordinate
/// centred there (`1/z` at infinity).
#[derive(Clone, Debug, PartialEq)]
pub struct EndProfile {
    pub location: Point,
    pub m: u32,
    pub k: u32,
    pub v_minus_m: Vec<Coeff>,
    pub v_kminusm: Vec<Coeff>,
    pub residue: Vec<Coeff>,
    pub classification: EndClass,
    /// Coefficients `v_j`, `j = -m ..= k - m`, after re-coordinating away any terms
    /// parallel to `v_{-m}`. `None` when no such terms were present.
    pub normalized: Option<Vec<Vec<Coeff>>>,
}

impl EndProfile {
    pub fn k_minus_m(&self) -> i32 {
        self.k as i32 - self.m as i32
    }
}

fn negligible(c: &Coeff, scale: f64) -> bool {
    if c.is_exact() {
        c.is_zero()
    } else {
        c.abs() <= 1e-9 * scale.max(1e-300)
    }
}

fn vec_scale(v: &[Coeff]) -> f64 {
    v.iter().map(Coeff::abs).fold(0.0, f64::max)
}

fn is_null(v: &[Coeff]) -> bool {
    let s = vec_scale(v);
    v.iter().all(|c| negligible(c, s.max(1.0)))
}

/// `Some(c)` with `v = c w` when `v` is a complex multiple of `w` (`w != 0`).
fn parallel_ratio(v: &[Coeff], w: &[Coeff]) -> Option<Coeff> {
    let piv = (0..w.len()).max_by(|&a, &b| w[a].abs().total_cmp(&w[b].abs()))?;
    let c = &v[piv] * &w[piv].inv().ok()?;
    let scale = vec_scale(v).max(vec_scale(w) * c.abs());
    v.iter().zip(w).all(|(a, b)| negligible(&(a - &(&c * b)), scale)).then_some(c)
}

fn hermitian(a: &[Coeff], b: &[Coeff]) -> Coeff {
    a.iter().zip(b).fold(Coeff::zero(), |acc, (x, y)| acc + &(&x.conj() * y))
}

fn bilinear(a: &[Coeff], b: &[Coeff]) -> Coeff {
    a.iter().zip(b).fold(Coeff::zero(), |acc, (x, y)| acc + &(x * y))
}

fn degree_bound(f: &[Rat]) -> i32 {
    f.iter().map(|r| (r.num().degree().unwrap_or(0) + r.den().degree().unwrap_or(0)) as i32).max().unwrap_or(0)
}

pub fn classify(k_minus_m: i32) -> EndClass {
    match k_minus_m {
        -1 => EndClass::FlatEnd,
        1 => EndClass::ImmersedInterior,
        0 => EndClass::Unclassified,
        _ => EndClass::Branched,
    }
}

pub fn classify_end(profile: &EndProfile) -> EndClass {
    classify(profile.k_minus_m())
}

/// Laurent data of `x_z dz` at `p`, in the coordinate centred at `p`.
fn local_laurent(fp: &[Rat], p: &Point, order: i32) -> Result<Vec<Laurent>> {
    let (fp, at): (Vec<Rat>, Coeff) = match p {
        // x_w = -x_z(1/w) / w^2
        Point::Infinity => {
            let jac = Rat::new(Poly::constant(Coeff::int(-1), Var::Z), Poly::monomial(Coeff::one(), 2, Var::Z))?;
            (fp.iter().map(|r| r.invert_chart().mul(&jac)).collect(), Coeff::zero())
        }
        Point::Finite(c) => (fp.to_vec(), c.clone()),
    };
    let at = Point::Finite(at);
    fp.iter()
        .map(|r| {
            if r.is_zero() {
                return Ok(Laurent { start: order, coeffs: vec![] });
            }
            r.laurent(&at, order).or_else(|e| match e {
                AlgebraError::OrderBelowLeading { leading, .. } => Ok(Laurent { start: leading, coeffs: vec![] }),
                e => Err(e.into()),
            })
        })
        .collect()
}

pub fn analyze_end(s: &MinimalSurface, p: &Point) -> Result<EndProfile> {
    analyze_differential(s.f_prime(), p)
}

/// [`analyze_end`] on raw `x_z` data, which may carry residues.
pub fn analyze_differential(fp: &[Rat], p: &Point) -> Result<EndProfile> {
    let bound = 4 * degree_bound(fp) + 8;
    // first pass only to find the pole order
    let probe = local_laurent(fp, p, 0)?;
    let lead = probe.iter().filter(|l| !l.coeffs.iter().all(Coeff::is_zero)).map(|l| l.start).min();
    let lead = lead.ok_or_else(|| Error::Invalid("not a pole of x_z".into()))?;
    if lead > -1 {
        return Err(Error::Invalid("not a pole of x_z".into()));
    }
    let top = lead + bound;
    let laurent = local_laurent(fp, p, top)?;
    let coeff = |j: i32| -> Vec<Coeff> { laurent.iter().map(|l| l.coeff(j)).collect() };
    let residue = coeff(-1);
    if !is_null(&residue) {
        return Err(Error::ResidueEnd { at: format!("{p}"), residue: residue.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ") });
    }
    if lead == -1 {
        return Err(Error::Invalid("not a pole of x_z".into()));
    }
    let m = -lead - 1;
    // x = 2 Re F with F' = sum a_j h^j, so v_j = a_{j-1} / j
    let v = |j: i32| -> Vec<Coeff> {
        let inv = Coeff::ratio(1, j as i64);
        coeff(j - 1).iter().map(|c| c * &inv).collect()
    };
    let vm = v(-m);
    let mut masked = false;
    let mut second = None;
    let mut ratios = vec![];
    for j in (-m + 1)..=(top + 1) {
        if j == 0 {
            continue;
        }
        let vj = v(j);
        if is_null(&vj) {
            continue;
        }
        match parallel_ratio(&vj, &vm) {
            Some(c) => {
                masked = true;
                ratios.push((j, c));
            }
            None => {
                second = Some((j, vj));
                break;
            }
        }
    }
    let (kmm, vk) = second.ok_or_else(|| Error::DependentLeadingVectors(format!("{p}")))?;
    let normalized = masked.then(|| recoordinate(&v, m, kmm, &ratios));
    let k = (kmm + m) as u32;
    Ok(EndProfile {
        location: p.clone(),
        m: m as u32,
        k,
        v_minus_m: vm,
        v_kminusm: vk,
        residue,
        classification: classify(kmm),
        normalized,
    })
}

/// Expansion in `zt` with `zt^(-m) = z^(-m) (1 + sum c_j z^(j+m))`, which absorbs the terms
/// `c_j v_{-m} z^j` below the first independent exponent.
fn recoordinate(v: &dyn Fn(i32) -> Vec<Coeff>, m: i32, kmm: i32, ratios: &[(i32, Coeff)]) -> Vec<Vec<Coeff>> {
    let len = (kmm + m + 1) as usize;
    let mut u = vec![Coeff::zero(); len];
    for (j, c) in ratios {
        u[(j + m) as usize] = c.clone();
    }
    // zt = z phi(z), phi = (1 + u)^(-1/m)
    let phi = series::pow_rational(&u, -1, m as i64, len);
    let mut g = vec![Coeff::zero(); len + 1];
    g[1..].clone_from_slice(&phi);
    let h = series::reversion(&g, len + 1);
    let psi: Vec<Coeff> = h[1..].to_vec();
    let n = v(-m).len();
    let mut out = vec![vec![Coeff::zero(); n]; len];
    for j in -m..=kmm {
        if j == 0 {
            continue;
        }
        let vj = v(j);
        if is_null(&vj) {
            continue;
        }
        let pw = series::pow_int(&psi, j, len);
        for e in j..=kmm {
            let c = &pw[(e - j) as usize];
            if c.is_zero() {
                continue;
            }
            for (o, x) in out[(e + m) as usize].iter_mut().zip(&vj) {
                *o += &(c * x);
            }
        }
    }
    out
}

/// Leading vector of the pedal surface at the end:
/// `(k/m)(v_{k-m} - (conj(v_{-m}).v_{k-m} / |v_{-m}|^2) v_{-m})`.
pub fn pedal_end_leading(profile: &EndProfile) -> Result<Vec<Coeff>> {
    if parallel_ratio(&profile.v_kminusm, &profile.v_minus_m).is_some() {
        return Err(Error::DependentLeadingVectors(profile.location.to_string()));
    }
    let a = &profile.v_minus_m;
    let b = &profile.v_kminusm;
    let t = &hermitian(a, b) * &hermitian(a, a).inv()?;
    let f = Coeff::ratio(profile.k as i64, profile.m as i64);
    Ok(b.iter().zip(a).map(|(y, x)| &f * &(y - &(&t * x))).collect())
}

/// Conformality residues `(v_{-m}.v_{-m}, v_{-m}.v_{k-m})`.
pub fn profile_residues(profile: &EndProfile) -> (Coeff, Coeff) {
    (bilinear(&profile.v_minus_m, &profile.v_minus_m), bilinear(&profile.v_minus_m, &profile.v_kminusm))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Suspect,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Suspect => "SUSPECT",
        }
    }

    fn worst(self, o: Status) -> Status {
        match (self, o) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Suspect, _) | (_, Status::Suspect) => Status::Suspect,
            _ => Status::Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckItem {
    pub id: &'static str,
    pub status: Status,
    pub witness: Vec<String>,
}

impl CheckItem {
    fn new(id: &'static str) -> CheckItem {
        CheckItem { id, status: Status::Pass, witness: vec![] }
    }

    fn record(&mut self, status: Status, witness: String) {
        self.status = self.status.worst(status);
        self.witness.push(witness);
    }
}

/// A zero of `x_z` off the ends, with the pedal derivative found there.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchOfBase {
    pub location: Point,
    /// `xhat_z` (or `xhat_w` at infinity) at the point.
    pub xhat_derivative: Vec<Coeff>,
}

#[derive(Clone, Debug)]
pub struct ChecklistReport {
    pub items: Vec<CheckItem>,
    pub ends: Vec<EndProfile>,
    pub base_branches: Vec<BranchOfBase>,
}

impl ChecklistReport {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.status == Status::Pass)
    }

    pub fn item(&self, id: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.id == id)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ChecklistOptions {
    pub radius: f64,
    pub grid: usize,
}

impl Default for ChecklistOptions {
    fn default() -> Self {
        ChecklistOptions { radius: 10.0, grid: 200 }
    }
}

fn near(a: Complex64, pts: &[Complex64]) -> bool {
    pts.iter().any(|p| (a - p).norm() < 1e-6 * p.norm().max(1.0))
}

/// Zeros of `x_z` in `C`, and whether `x_w` vanishes at `w = 0` when infinity is not an end.
fn base_branch_points(s: &MinimalSurface) -> Result<(Vec<Complex64>, bool)> {
    let fp: Vec<&Rat> = s.f_prime().iter().filter(|r| !r.is_zero()).collect();
    let finite = if s.is_exact() {
        let mut g: Poly = fp[0].num().clone();
        for r in &fp[1..] {
            g = g.gcd(r.num())?;
        }
        g.roots()
    } else {
        let candidates = fp[0].num().roots();
        candidates
            .into_iter()
            .filter(|z| fp.iter().all(|r| r.eval_c64(*z).norm() < 1e-8 * r.num().coeffs().iter().map(Coeff::abs).fold(1.0, f64::max)))
            .collect()
    };
    let at_infinity = !s.ends().contains(&Point::Infinity)
        && s.in_chart(Chart::W).f_prime().iter().all(|r| r.eval(&Coeff::zero()).is_ok_and(|c| c.is_zero()));
    Ok((finite, at_infinity))
}

/// `xhat_z` at a finite point (or `xhat_w` at `w = 0`).
fn pedal_derivative_at(s: &MinimalSurface, x0: &[Coeff], p: &Point) -> Result<Vec<Coeff>> {
    let (local, at) = match p {
        Point::Infinity => (s.in_chart(Chart::W), Coeff::zero()),
        Point::Finite(c) => (s.clone(), c.clone()),
    };
    let adj = pedal(&local, x0)?;
    adj.xhat
        .d_z()
        .0
        .iter()
        .map(|c| c.limit_at(&at).map_err(Error::from))
        .collect()
}

/// The four conditions under which the pedal surface of `s` at `x0` closes up to a
/// compact conformally immersed Willmore surface.
pub fn check_closed_willmore(s: &MinimalSurface, x0: &[Coeff], opts: &ChecklistOptions) -> Result<ChecklistReport> {
    let mut i1 = CheckItem::new("i1");
    let mut i2 = CheckItem::new("i2");
    let mut i3 = CheckItem::new("i3");
    let mut i4 = CheckItem::new("i4");

    let end_pts: Vec<Complex64> = s
        .ends()
        .iter()
        .filter_map(|e| match e {
            Point::Finite(c) => Some(c.to_c64()),
            Point::Infinity => None,
        })
        .collect();

    // (i1) zeros of x_z are allowed only when the pedal is still immersed there
    let (finite_br, inf_br) = base_branch_points(s)?;
    let finite_br: Vec<Complex64> = finite_br.into_iter().filter(|z| !near(*z, &end_pts)).collect();
    let mut base_branches = vec![];
    let mut br_points: Vec<Point> = finite_br.iter().map(|z| Point::Finite(Coeff::float(z.re, z.im))).collect();
    if s.is_exact() {
        // prefer exact coordinates for rational roots
        br_points = br_points
            .into_iter()
            .map(|p| match &p {
                Point::Finite(c) => {
                    let z = c.to_c64();
                    let rz = Coeff::gauss(approx_rational(z.re), approx_rational(z.im));
                    if s.f_prime().iter().all(|r| r.eval(&rz).is_ok_and(|v| v.is_zero())) {
                        Point::Finite(rz)
                    } else {
                        p
                    }
                }
                Point::Infinity => p,
            })
            .collect();
    }
    if inf_br {
        br_points.push(Point::Infinity);
    }
    for p in &br_points {
        match pedal_derivative_at(s, x0, p) {
            Ok(d) if !is_null(&d) => {
                i1.record(Status::Pass, format!("x_z = 0 at {p}; pedal derivative ({}) is nonzero", join(&d)));
                base_branches.push(BranchOfBase { location: p.clone(), xhat_derivative: d });
            }
            Ok(_) => i1.record(Status::Fail, format!("pedal derivative vanishes at {p}")),
            Err(e) => i1.record(Status::Fail, format!("no pedal limit at {p}: {e}")),
        }
    }

    // (i2) umbilics, away from ends and zeros of x_z
    let mut skip = end_pts.clone();
    skip.extend(finite_br.iter().copied());
    match s.umbilic_locus(Chart::Z, opts.radius, opts.grid) {
        Ok(u) => {
            for z in u.into_iter().filter(|z| !near(*z, &skip)) {
                i2.record(Status::Fail, format!("umbilic at z = {z}"));
            }
        }
        Err(Error::DegenerateSurface) => i2.record(Status::Fail, "x_z and x_zz are everywhere parallel".into()),
        Err(e) => return Err(e),
    }
    let sw = s.in_chart(Chart::W);
    if !s.ends().contains(&Point::Infinity) && !inf_br {
        if let Ok(u) = sw.umbilic_locus(Chart::Z, 1e-3, 8) {
            if u.iter().any(|w| w.norm() < 1e-6) {
                i2.record(Status::Fail, "umbilic at infinity".into());
            }
        }
    }

    // (i3) common zeros of x_z.(x - x0) and x_zz.(x - x0), in both charts
    let wskip: Vec<Complex64> = skip.iter().filter(|z| z.norm() > 0.0).map(|z| 1.0 / z).collect();
    let charts = [(s.clone(), skip.clone(), "z"), (sw.clone(), wskip, "w")];
    let found: Vec<Result<Vec<(String, BranchKind, Complex64, f64)>>> = charts
        .par_iter()
        .map(|(local, skip, name)| {
            let pts = pedal_branch_locus(local, x0, Chart::Z, opts.radius, opts.grid)?;
            Ok(pts
                .into_iter()
                .filter(|b| b.kind != BranchKind::Umbilic && !near(b.point, skip))
                .filter(|b| !(*name == "w" && inf_br && b.point.norm() < 1e-6))
                .map(|b| (name.to_string(), b.kind, b.point, b.residual))
                .collect())
        })
        .collect();
    for r in found {
        for (chart, kind, z, res) in r? {
            let status = if kind == BranchKind::Branch { Status::Fail } else { Status::Suspect };
            i3.record(status, format!("{chart} = {z}: residual {res:.3e}"));
        }
    }

    // (i4) shape of each end
    let profiles: Vec<(Point, Result<EndProfile>)> =
        s.ends().par_iter().map(|p| (p.clone(), analyze_end(s, p))).collect();
    let mut ends = vec![];
    for (p, r) in profiles {
        match r {
            Ok(prof) => {
                let c = prof.classification;
                let st = if c.admissible() { Status::Pass } else { Status::Fail };
                i4.record(st, format!("{p}: m = {}, k - m = {}, {}", prof.m, prof.k_minus_m(), c.name()));
                ends.push(prof);
            }
            Err(e) => i4.record(Status::Fail, format!("{p}: {e}")),
        }
    }

    Ok(ChecklistReport { items: vec![i1, i2, i3, i4], ends, base_branches })
}

fn join(v: &[Coeff]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

fn approx_rational(x: f64) -> num_rational::BigRational {
    let r = num_rational::Ratio::<i64>::approximate_float(x).unwrap_or_else(|| num_rational::Ratio::from_integer(0));
    let r = if (r.to_integer() as f64 - x).abs() < 1e-12 { num_rational::Ratio::from_integer(x.round() as i64) } else { r };
    num_rational::BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

/// Projective limit `[psi_1 : ... : psi_m]` at `p` of univariate sections.
pub fn line_direction_limit(sections: &[Rat], p: &Point) -> Result<Vec<Coeff>> {
    let nonzero: Vec<&Rat> = sections.iter().filter(|r| !r.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZero);
    }
    let mut lead = i32::MAX;
    for r in &nonzero {
        let l = r.laurent(p, i32::MIN / 2).or_else(|e| match e {
            AlgebraError::OrderBelowLeading { leading, .. } => Ok(Laurent { start: leading, coeffs: vec![] }),
            e => Err(e),
        })?;
        lead = lead.min(l.start);
    }
    let lc: Vec<Coeff> = sections
        .iter()
        .map(|r| match r.laurent(p, lead) {
            _ if r.is_zero() => Ok(Coeff::zero()),
            Ok(l) => Ok(l.coeff(lead)),
            Err(AlgebraError::OrderBelowLeading { .. }) => Ok(Coeff::zero()),
            Err(e) => Err(e.into()),
        })
        .collect::<Result<_>>()?;
    normalize_projective(lc)
}

fn normalize_projective(v: Vec<Coeff>) -> Result<Vec<Coeff>> {
    let scale = vec_scale(&v);
    let piv = v.iter().position(|c| !negligible(c, scale)).ok_or(Error::AllZero)?;
    let inv = v[piv].inv()?;
    Ok(v.iter().map(|c| c * &inv).collect())
}

/// Projective limit at `p` of sections depending on `z` and `zb`. The lowest homogeneous
/// parts must be proportional; otherwise the limit depends on the direction of approach.
pub fn line_direction_limit_field(sections: &[BiRat], p: &Coeff) -> Result<Vec<Coeff>> {
    if sections.iter().all(BiRat::is_zero) {
        return Err(Error::AllZero);
    }
    let mut order = -8;
    loop {
        let series: Vec<_> = sections
            .iter()
            .map(|f| f.translate(p).series_at_origin(order))
            .collect::<std::result::Result<_, _>>()?;
        let low = series
            .iter()
            .flat_map(|s| s.iter().filter(|(_, c)| !c.is_zero()).map(|((i, j), _)| i + j))
            .min();
        let Some(low) = low else {
            order += 8;
            if order > 64 {
                return Err(Error::AllZero);
            }
            continue;
        };
        let parts: Vec<Vec<((i32, i32), Coeff)>> = series
            .iter()
            .map(|s| s.iter().filter(|((i, j), c)| i + j == low && !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect())
            .collect();
        let (ri, reference) = parts.iter().enumerate().find(|(_, p)| !p.is_empty()).unwrap();
        let (key, c0) = reference[0].clone();
        let mut out = vec![];
        for (i, part) in parts.iter().enumerate() {
            if i == ri {
                out.push(Coeff::one());
                continue;
            }
            let ci = part.iter().find(|(k, _)| *k == key).map(|(_, c)| c.clone()).unwrap_or_else(Coeff::zero);
            let ratio = &ci * &c0.inv()?;
            let consistent = part.iter().all(|(k, _)| reference.iter().any(|(kk, _)| kk == k))
                && reference.iter().all(|(k, c)| {
                    let got = part.iter().find(|(kk, _)| kk == k).map(|(_, c)| c.clone()).unwrap_or_else(Coeff::zero);
                    let diff = &got - &(&ratio * c);
                    negligible(&diff, c.abs().max(got.abs()))
                });
            if !consistent {
                return Err(Error::Invalid("limit depends on the direction of approach".into()));
            }
            out.push(ratio);
        }
        return normalize_projective(out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{cq, example1, zpow};

    #[test]
    fn example1_ends() {
        let s = example1();
        let a = analyze_end(&s, &Point::Finite(Coeff::zero())).unwrap();
        assert_eq!((a.m, a.k_minus_m()), (1, 1));
        assert_eq!(a.classification, EndClass::ImmersedInterior);
        let b = analyze_end(&s, &Point::Infinity).unwrap();
        assert_eq!((b.m, b.k_minus_m()), (2, -1));
        assert_eq!(b.classification, EndClass::FlatEnd);
        let l = pedal_end_leading(&b).unwrap();
        assert_eq!(l[0], cq((0, 1), (1, 8)));
        assert_eq!(l[1], Coeff::ratio(-1, 8));
        assert!(l[2..].iter().all(Coeff::is_zero));
        let (p, q) = profile_residues(&b);
        assert!(p.is_zero() && q.is_zero());
    }

    #[test]
    fn residue_rejected() {
        // (1, i, 0)/z^2 + (0, 0, 1)/z
        let fp = vec![zpow(Coeff::one(), -2), zpow(Coeff::i(), -2), zpow(Coeff::one(), -1)];
        assert!(matches!(analyze_differential(&fp, &Point::Finite(Coeff::zero())), Err(Error::ResidueEnd { .. })));
    }

    #[test]
    fn masked_direction_is_recoordinated() {
        let e = [Coeff::one(), Coeff::i(), Coeff::zero(), Coeff::zero()];
        let f = [Coeff::zero(), Coeff::zero(), Coeff::one(), Coeff::i()];
        let data: Vec<Rat> =
            (0..4).map(|i| zpow(e[i].clone(), -2).add(&zpow(e[i].clone(), -1)).add(&zpow(f[i].clone(), 1))).collect();
        let s = MinimalSurface::new(data).unwrap();
        let a = analyze_end(&s, &Point::Finite(Coeff::zero())).unwrap();
        assert_eq!((a.m, a.k_minus_m()), (2, 1));
        assert_eq!(a.classification, EndClass::ImmersedInterior);
        let n = a.normalized.unwrap();
        assert_eq!(n[0], e.to_vec());
        assert!(n[1].iter().all(Coeff::is_zero));
        assert_eq!(n[3], f.to_vec());
    }

    #[test]
    fn direction_limits() {
        let z = zpow(Coeff::one(), 1);
        let z2 = zpow(Coeff::one(), 2);
        let o = Point::Finite(Coeff::zero());
        assert_eq!(line_direction_limit(&[z.clone(), z2.clone()], &o).unwrap(), vec![Coeff::one(), Coeff::zero()]);
        let z3 = zpow(Coeff::one(), 3);
        assert_eq!(line_direction_limit(&[z2.clone(), z2.add(&z3)], &o).unwrap(), vec![Coeff::one(), Coeff::one()]);
        assert!(matches!(line_direction_limit(&[Rat::zero(Var::Z)], &o), Err(Error::AllZero)));
        let a = BiRat::z().mul(&BiRat::zb());
        let b = BiRat::z().mul(&BiRat::z());
        assert!(line_direction_limit_field(&[a.clone(), b], &Coeff::zero()).is_err());
        let c = a.scale(&Coeff::int(3)).add(&BiRat::z().pow(3));
        assert_eq!(line_direction_limit_field(&[a, c], &Coeff::zero()).unwrap(), vec![Coeff::one(), Coeff::int(3)]);
    }
}
