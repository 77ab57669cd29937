//! `verify`, `pedal`, `adjoint`, `ends` and `energy`.

use anyhow::{bail, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{json, Value};
use willmore_core::adjoint::{adjoint, g_in_chart, pedal, recover_g, verify_contact, AdjointSurface};
use willmore_core::algebra::jet::Jet;
use willmore_core::algebra::DiffField;
use willmore_core::ends::{analyze_end, check_closed_willmore, ChecklistOptions, EndClass, EndProfile};
use willmore_core::moebius::{
    canonical_frame_jet, frame_at, jet_vec, light_cone_lift, s_willmore_certificate, willmore_energy,
    willmore_energy_jets, Energy, Frame,
};
use willmore_core::numeric::numeric_rank;
use willmore_core::{BiRat, Chart, Coeff, FieldVec, MinimalSurface, Mode, VecBiRat};

use crate::model::{mode_name, Model, Target, Transform};
use crate::report::{Report, Status};
use crate::spec::SurfaceSpec;

pub struct Input {
    pub bytes: Vec<u8>,
}

impl Input {
    pub fn text(&self) -> Result<&str> {
        Ok(std::str::from_utf8(&self.bytes)?)
    }
}

#[derive(Clone, Debug)]
pub struct Opts {
    pub mode: Mode,
    pub chart: Chart,
    pub grid: usize,
    pub radius: f64,
    pub pedal_point: Option<String>,
    pub g: Option<String>,
}

impl Opts {
    fn record(&self, r: &mut Report) {
        r.option("mode", mode_name(self.mode));
        r.option("chart", if self.chart == Chart::Z { "z" } else { "w" });
        r.option("grid", self.grid);
        r.option("radius", self.radius);
        if let Some(p) = &self.pedal_point {
            r.option("pedal_point", p);
        }
        if let Some(g) = &self.g {
            r.option("g", g);
        }
    }
}

/// Parses the spec and builds the base surface; a non-conformal spec is a failed check.
pub(crate) fn load(name: &str, input: &Input, opts: &Opts) -> Result<(Report, Model, Option<MinimalSurface>)> {
    let mut rep = Report::new(name, &input.bytes);
    opts.record(&mut rep);
    let spec = SurfaceSpec::from_json(input.text()?)?;
    let model = Model::load(spec, opts.mode, opts.pedal_point.as_deref(), opts.g.as_deref())?;
    rep.set("transform", model.transform.name());
    let s = match model.surface() {
        Ok(s) => {
            rep.pass("conformal", json!({ "F'.F'": "0", "ends": s.ends().iter().map(|p| p.to_string()).collect::<Vec<_>>() }));
            Some(s)
        }
        Err(e) => {
            rep.fail("conformal", json!({ "error": e.to_string() }));
            None
        }
    };
    Ok((rep, model, s))
}

fn exact_text(f: &BiRat) -> String {
    if f.is_zero() {
        "0".into()
    } else {
        format!("nonzero ({} terms)", f.size())
    }
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn values(v: &FieldVec<Jet>) -> Vec<Complex64> {
    v.0.iter().map(Jet::value).collect()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn isotropy(rep: &mut Report, s: &MinimalSurface, needs_superconformal: bool) -> bool {
    let order = s.isotropy_order();
    let w = json!({
        "order": order.map_or(json!("total"), |o| json!(o)),
        "superconformal": s.is_superconformal(),
    });
    if needs_superconformal && !s.is_superconformal() {
        rep.fail("isotropy", json!({ "error": "surface is not superconformal", "order": w["order"] }));
        false
    } else {
        rep.pass("isotropy", w);
        true
    }
}

fn exact_adjoint(s: &MinimalSurface, t: &Transform) -> willmore_core::Result<AdjointSurface> {
    match t {
        Transform::Pedal(x0) => pedal(s, x0),
        Transform::G(g) => adjoint(s, g),
        Transform::None => unreachable!("no transform"),
    }
}

fn contact_exact(rep: &mut Report, adj: &AdjointSurface) {
    let (conformal, contact) = verify_contact(adj);
    let ok = conformal.is_zero() && contact.is_zero() && adj.riccati_verified;
    let w = json!({
        "xhat_z.xhat_z": exact_text(&conformal),
        "xhat_z.x_zb": exact_text(&contact),
        "riccati": adj.riccati_verified,
        "exact": true,
    });
    rep.check("contact", if ok { Status::Pass } else { Status::Fail }, w);
}

/// Local checks on exact data: Willmore equation, Theta forms and the S-Willmore certificate.
fn local_exact(rep: &mut Report, x: &VecBiRat, minimal: Option<&MinimalSurface>) {
    let fr = match frame_at(x) {
        Ok(fr) => fr,
        Err(e) => {
            rep.fail("willmore", json!({ "error": e.to_string() }));
            return;
        }
    };
    let res = fr.willmore_residual();
    let zero = res.is_zero();
    rep.check(
        "willmore",
        if zero { Status::Pass } else { Status::Fail },
        json!({ "exact": true, "residual": if zero { "0".to_string() } else { "nonzero".into() } }),
    );

    let (t0, _) = fr.theta_forms(&fr.r.zero_like());
    let mut w = json!({
        "exact": true,
        "kappa.kappa": exact_text(&fr.kappa_sq()),
        "theta0": exact_text(&t0),
        "theta0_zb": exact_text(&t0.dzb()),
    });
    let mut ok = t0.dzb().is_zero();
    if let Some(s) = minimal {
        // mu* = R_z / R makes eta and rho vanish on minimal data
        let r = s.r();
        match r.dz().div(&r).map_err(willmore_core::Error::from).and_then(|mu| fr.mu_eta_rho(Some(mu))) {
            Ok((_, eta, rho)) => {
                let (_, t3) = fr.theta_forms(&rho);
                w["eta"] = json!(if eta.is_zero() { "0" } else { "nonzero" });
                w["rho"] = json!(exact_text(&rho));
                w["theta3"] = json!(exact_text(&t3));
                ok &= eta.is_zero() && rho.is_zero();
            }
            Err(e) => {
                w["error"] = json!(e.to_string());
                ok = false;
            }
        }
    }
    rep.check("theta", if ok { Status::Pass } else { Status::Fail }, w);

    let mut cert = None;
    for p in [Coeff::zero(), Coeff::parse("1/3+i/5").expect("literal")] {
        if let Ok(c) = s_willmore_certificate(x, &p) {
            cert = Some((p, c));
            break;
        }
    }
    match cert {
        Some((p, c)) => rep.pass(
            "s_willmore",
            json!({
                "at": p.to_string(),
                "s_willmore_near_p": c.is_s_willmore_near_p,
                "frame_rank": c.frame_rank,
                "gap": c.rank.gap,
            }),
        ),
        None => rep.check("s_willmore", Status::Suspect, json!({ "error": "no regular point for the frame matrix" })),
    }
}

const JET_ORDER: usize = 8;

/// The same checks on jets at sample points, for data too large for exact arithmetic.
fn local_jets(rep: &mut Report, target: &Target) {
    let pts = target.sample_points(12);
    let mut contact = 0.0f64;
    let mut willmore = 0.0f64;
    let mut theta = 0.0f64;
    let mut codazzi = 0.0f64;
    let mut ranks = vec![];
    let mut skipped = 0;
    let transformed = !matches!(target.transform, Transform::None);
    for &z in &pts {
        let Ok(x) = target.jets(Chart::Z, z, JET_ORDER) else {
            skipped += 1;
            continue;
        };
        let Ok(fr) = canonical_frame_jet(&x) else {
            skipped += 1;
            continue;
        };
        if transformed {
            let xz = values(&x.d_z());
            let base_z = jet_vec(target.base.x_z(), z, 0).map(|v| values(&v)).unwrap_or_default();
            let bzb: Vec<Complex64> = base_z.iter().map(|c| c.conj()).collect();
            let n = max_norm(&xz);
            contact = contact.max(dot(&xz, &xz).norm() / (n * n).max(1e-300));
            contact = contact.max(dot(&xz, &bzb).norm() / (n * max_norm(&bzb)).max(1e-300));
        }
        let k = max_norm(&values(&fr.k));
        willmore = willmore.max(max_norm(&values(&fr.willmore_residual())) / k.max(1.0));
        let k1 = values(&fr.k1());
        let (t0, _) = fr.theta_forms(&fr.r.zero_like());
        let scale = (k * max_norm(&k1)).powi(2).max(1.0);
        theta = theta.max(t0.d_zb().value().norm() / scale);
        if !transformed {
            let lf = Frame::from_lift(light_cone_lift(&x));
            if let Ok(lf) = lf {
                let mu = lf.r.d_z().times(&lf.r_inv);
                if let Ok((_, eta, _)) = lf.mu_eta_rho(Some(mu)) {
                    codazzi = codazzi.max(max_norm(&values(&eta)) / max_norm(&values(&lf.k1())).max(1.0));
                }
            }
        }
        let k0 = values(&fr.k);
        let m = DMatrix::from_fn(k0.len(), 2, |i, j| if j == 0 { k0[i] } else { k1[i] });
        ranks.push(numeric_rank(&m, 1e-8).rank);
    }
    let used = pts.len() - skipped;
    let status = |v: f64, tol: f64| if used > 0 && v <= tol { Status::Pass } else { Status::Fail };
    if transformed {
        rep.check("contact", status(contact, 1e-8), json!({ "exact": false, "points": used, "max_relative": contact }));
    }
    rep.check("willmore", status(willmore, 1e-6), json!({ "exact": false, "points": used, "max_relative": willmore }));
    let mut w = json!({ "exact": false, "points": used, "theta0_zb_relative": theta });
    let mut ok = theta <= 1e-6;
    if !transformed {
        w["eta_relative"] = json!(codazzi);
        ok &= codazzi <= 1e-6;
    }
    rep.check("theta", if ok && used > 0 { Status::Pass } else { Status::Fail }, w);
    let parallel = ranks.iter().all(|&r| r <= 1);
    rep.pass("s_willmore", json!({ "exact": false, "points": used, "s_willmore_near_samples": parallel, "ranks": ranks }));
}

fn profile_json(p: &EndProfile) -> Value {
    let vec_text = |v: &[Coeff]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    json!({
        "location": p.location.to_string(),
        "m": p.m,
        "k": p.k,
        "k_minus_m": p.k_minus_m(),
        "classification": p.classification.name(),
        "v_minus_m": vec_text(&p.v_minus_m),
        "v_k_minus_m": vec_text(&p.v_kminusm),
        "residue": vec_text(&p.residue),
    })
}

fn end_status(c: EndClass) -> Status {
    match c {
        EndClass::ImmersedInterior | EndClass::FlatEnd => Status::Pass,
        EndClass::Unclassified => Status::Suspect,
        EndClass::Branched => Status::Fail,
    }
}

fn energy_check(rep: &mut Report, e: willmore_core::Result<Energy>, grid: usize, exact_density: bool) {
    match e {
        Ok(e) => {
            let off = (e.over_2pi - e.nearest_multiple as f64).abs();
            rep.check(
                "energy",
                if off < 1e-2 { Status::Pass } else { Status::Suspect },
                json!({
                    "W": e.w,
                    "W_over_2pi": e.over_2pi,
                    "nearest_multiple": e.nearest_multiple,
                    "grid": grid,
                    "exact_density": exact_density,
                }),
            );
        }
        Err(e) => rep.fail("energy", json!({ "error": e.to_string() })),
    }
}

fn energy_of(target: &Target, adj: Option<&AdjointSurface>, grid: usize) -> (willmore_core::Result<Energy>, bool) {
    if target.small() {
        let x = adj.map_or_else(|| target.base.x().clone(), |a| a.xhat.clone());
        (willmore_energy(&x, grid), true)
    } else {
        (willmore_energy_jets(|c, z| target.jets(c, z, 2), grid), false)
    }
}

pub fn verify(input: &Input, opts: &Opts) -> Result<Report> {
    let (mut rep, model, s) = load("verify", input, opts)?;
    let Some(s) = s else { return Ok(rep) };
    let transformed = !matches!(model.transform, Transform::None);
    if !isotropy(&mut rep, &s, transformed) {
        return Ok(rep);
    }
    let target = Target::new(s.clone(), model.transform.clone());
    let exact = target.small() && opts.mode == Mode::Exact;

    let mut adj = None;
    if transformed && exact {
        match exact_adjoint(&s, &model.transform) {
            Ok(a) => {
                contact_exact(&mut rep, &a);
                local_exact(&mut rep, &a.xhat, None);
                adj = Some(a);
            }
            Err(e) => rep.fail("contact", json!({ "error": e.to_string() })),
        }
    } else if exact {
        local_exact(&mut rep, s.x(), Some(&s));
    } else {
        local_jets(&mut rep, &target);
    }

    match &model.transform {
        Transform::Pedal(x0) => {
            let copts = ChecklistOptions { radius: opts.radius, ..ChecklistOptions::default() };
            match check_closed_willmore(&s, x0, &copts) {
                Ok(cl) => {
                    let names = [("i1", "base_branch_points"), ("i2", "umbilics"), ("i3", "pedal_branch_points"), ("i4", "ends")];
                    for item in &cl.items {
                        let name = names.iter().find(|(i, _)| *i == item.id).map_or(item.id, |(_, n)| n);
                        rep.check(name, item.status.into(), json!({ "condition": item.id, "records": item.witness }));
                    }
                    rep.set("ends", cl.ends.iter().map(profile_json).collect::<Vec<_>>());
                    rep.set(
                        "base_branch_points",
                        cl.base_branches
                            .iter()
                            .map(|b| {
                                json!({
                                    "location": b.location.to_string(),
                                    "xhat_derivative": b.xhat_derivative.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                                })
                            })
                            .collect::<Vec<_>>(),
                    );
                    if cl.pass() {
                        let (e, exact_density) = energy_of(&target, adj.as_ref(), opts.grid);
                        energy_check(&mut rep, e, opts.grid, exact_density);
                    }
                }
                Err(e) => rep.fail("closure", json!({ "error": e.to_string() })),
            }
        }
        Transform::G(_) => rep.set("closure", "branch and end analysis is only available for pedal points"),
        Transform::None => {
            let mut profiles = vec![];
            for p in s.ends() {
                match analyze_end(&s, p) {
                    Ok(prof) => profiles.push(profile_json(&prof)),
                    Err(e) => rep.fail("ends", json!({ "location": p.to_string(), "error": e.to_string() })),
                }
            }
            if profiles.len() == s.ends().len() {
                rep.pass("ends", json!({ "count": profiles.len() }));
            }
            rep.set("ends", profiles);
        }
    }
    Ok(rep)
}

fn chart_of(opts: &Opts) -> &'static str {
    if opts.chart == Chart::Z {
        "z"
    } else {
        "w"
    }
}

fn transform_report(name: &str, input: &Input, opts: &Opts, want_pedal: bool) -> Result<Report> {
    let (mut rep, model, s) = load(name, input, opts)?;
    match (&model.transform, want_pedal) {
        (Transform::Pedal(_), true) | (Transform::G(_), false) => {}
        (_, true) => bail!("pedal needs a pedal point, in the spec or via --pedal-point"),
        (_, false) => bail!("adjoint needs g, in the spec or via --g"),
    }
    let Some(s) = s else { return Ok(rep) };
    if !isotropy(&mut rep, &s, true) {
        return Ok(rep);
    }
    let local = s.in_chart(opts.chart);
    let t = match &model.transform {
        Transform::G(g) => Transform::G(g_in_chart(g, opts.chart)),
        t => t.clone(),
    };
    let adj = match exact_adjoint(&local, &t) {
        Ok(a) => a,
        Err(e) => {
            rep.fail(name, json!({ "error": e.to_string() }));
            return Ok(rep);
        }
    };
    rep.set("chart", chart_of(opts));
    rep.set("xhat", adj.xhat.0.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    contact_exact(&mut rep, &adj);
    // g from the transformed surface; a pedal point x0 corresponds to g = -x0.x_z
    let expected = match &t {
        Transform::G(g) => Some(g.clone()),
        Transform::Pedal(x0) => {
            let p = FieldVec(x0.iter().map(|c| BiRat::constant(c.clone())).collect::<Vec<_>>());
            p.edot(local.x_z()).neg().to_rat()
        }
        Transform::None => None,
    };
    match (recover_g(&local, &adj.xhat), expected) {
        (Ok(g), Some(want)) => {
            let ok = g.sub(&want).is_zero();
            rep.check("recover_g", if ok { Status::Pass } else { Status::Fail }, json!({ "g": g.to_string() }));
        }
        (Err(e), _) => rep.fail("recover_g", json!({ "error": e.to_string() })),
        (Ok(g), None) => rep.fail("recover_g", json!({ "g": g.to_string() })),
    }
    Ok(rep)
}

pub fn pedal_cmd(input: &Input, opts: &Opts) -> Result<Report> {
    transform_report("pedal", input, opts, true)
}

pub fn adjoint_cmd(input: &Input, opts: &Opts) -> Result<Report> {
    transform_report("adjoint", input, opts, false)
}

pub fn ends(input: &Input, opts: &Opts) -> Result<Report> {
    let (mut rep, _, s) = load("ends", input, opts)?;
    let Some(s) = s else { return Ok(rep) };
    let mut profiles = vec![];
    for p in s.ends() {
        let id = format!("end {p}");
        match analyze_end(&s, p) {
            Ok(prof) => {
                let w = profile_json(&prof);
                rep.check(&id, end_status(prof.classification), w.clone());
                profiles.push(w);
            }
            Err(e) => rep.fail(&id, json!({ "error": e.to_string() })),
        }
    }
    if s.ends().is_empty() {
        rep.pass("ends", json!({ "count": 0 }));
    }
    rep.set("ends", profiles);
    Ok(rep)
}

pub fn energy(input: &Input, opts: &Opts) -> Result<Report> {
    let (mut rep, model, s) = load("energy", input, opts)?;
    let Some(s) = s else { return Ok(rep) };
    let transformed = !matches!(model.transform, Transform::None);
    if !isotropy(&mut rep, &s, transformed) {
        return Ok(rep);
    }
    let target = Target::new(s.clone(), model.transform.clone());
    let adj = if transformed && target.small() {
        match exact_adjoint(&s, &model.transform) {
            Ok(a) => Some(a),
            Err(e) => {
                rep.fail("energy", json!({ "error": e.to_string() }));
                return Ok(rep);
            }
        }
    } else {
        None
    };
    let (e, exact_density) = energy_of(&target, adj.as_ref(), opts.grid);
    energy_check(&mut rep, e, opts.grid, exact_density);
    Ok(rep)
}
