//! `gram`: solve the Gram system of an ansatz, realize it and assemble the surface.

use anyhow::Result;
use serde_json::json;
use willmore_core::gram::{
    assemble_surface, build_system, realize, realize_exact, solve_system, to_cmatrix, GramSolution, Pin,
};
use willmore_core::{Coeff, Error};

use crate::commands::Input;
use crate::report::{Report, Status};
use crate::spec::{parse_pins, AnsatzSpec, SurfaceSpec};

fn radicand(vectors: &[Vec<Coeff>]) -> Option<u32> {
    vectors.iter().flatten().find_map(|c| match c {
        Coeff::Exact(s) if !s.b.is_zero() => Some(s.d),
        _ => None,
    })
}

fn text_matrix(m: &[Vec<Coeff>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

/// Report plus the realized surface spec, when the system pins down a nonzero Gram matrix.
pub fn gram(input: &Input, pins_flag: Option<&str>) -> Result<(Report, Option<SurfaceSpec>)> {
    let mut rep = Report::new("gram", &input.bytes);
    let spec = AnsatzSpec::from_json(input.text()?)?;
    let ansatz = spec.ansatz()?;
    let mut pin_specs = spec.pins.clone();
    if let Some(p) = pins_flag {
        rep.option("pins", p);
        pin_specs.extend(parse_pins(p)?);
    }
    let labels = ansatz.labels();
    for p in &pin_specs {
        if p.j >= labels.len() || p.k >= labels.len() {
            anyhow::bail!("pin {},{} refers to a vector outside 0..{}", p.j, p.k, labels.len());
        }
    }
    let pins: Vec<Pin> = AnsatzSpec { pins: pin_specs, ..spec.clone() }.pins()?;
    rep.set("labels", &labels);

    let sys = match build_system(&ansatz) {
        Ok(s) => s,
        Err(e) => {
            rep.fail("system", json!({ "error": e.to_string() }));
            return Ok((rep, None));
        }
    };
    rep.set("free_vectors", sys.free.iter().map(|&j| labels[j].clone()).collect::<Vec<_>>());
    rep.set("equations", sys.equations.len());

    let sol = match solve_system(&sys, &pins) {
        Ok(s) => s,
        Err(Error::Inconsistent(idx)) => {
            let what = sys.with_pins(&pins).describe(idx);
            rep.fail("solve", json!({ "error": "inconsistent constraints", "constraint": what, "equation": idx }));
            return Ok((rep, None));
        }
        Err(e) => {
            rep.fail("solve", json!({ "error": e.to_string() }));
            return Ok((rep, None));
        }
    };
    rep.pass("solve", json!({ "family_dimension": sol.dimension }));

    let lam = sol.particular();
    let table: Vec<_> = sys
        .unknowns
        .iter()
        .zip(lam)
        .filter(|(_, v)| !v.is_zero())
        .map(|(&(a, b), v)| {
            let (j, k) = (sys.free[a], sys.free[b]);
            json!({ "j": j, "k": k, "pair": format!("{}.{}", labels[j], labels[k]), "value": v.to_string() })
        })
        .collect();
    rep.set("lambda", table);
    rep.set(
        "family_directions",
        sol.family.nullspace.iter().map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    );
    rep.set("gram_matrix", text_matrix(&GramSolution::full_matrix(&sys, lam)));

    let free = GramSolution::free_matrix(&sys, lam);
    if free.iter().flatten().all(Coeff::is_zero) {
        rep.set("realization", "Gram matrix vanishes; add pins to select a member of the family");
        return Ok((rep, None));
    }
    let n = spec.ambient_dim;
    let r = match realize(&to_cmatrix(&free), n) {
        Ok(r) => r,
        Err(e) => {
            rep.fail("realization", json!({ "error": e.to_string() }));
            return Ok((rep, None));
        }
    };
    let w = json!({
        "rank": r.rank,
        "signature": r.signature.as_ref().map(|s| json!({ "positive": s.positive, "negative": s.negative, "zero": s.zero })),
        "residual": r.residual,
        "real_span_dim": r.real_span_dim,
        "singular_values": r.singular_values,
    });
    rep.check("realization", if r.residual < 1e-10 { Status::Pass } else { Status::Fail }, w);
    if let Some(s) = r.signature.as_ref().filter(|s| s.positive > 0 && s.negative > 0) {
        rep.set(
            "real_factor",
            format!(
                "indefinite Gram matrix (signature {}, {}): no real B with B B^T = A exists; vectors are complex and their real and imaginary parts span a {}-dimensional real space",
                s.positive, s.negative, r.real_span_dim
            ),
        );
    }

    let exact = match realize_exact(&free, n) {
        Ok(v) => v,
        Err(e) => {
            rep.fail("exact_realization", json!({ "error": e.to_string() }));
            None
        }
    };
    let (vectors, is_exact) = match exact {
        Some(v) => (v, true),
        None => (r.vectors.iter().map(|row| row.iter().map(|c| Coeff::float(c.re, c.im)).collect()).collect(), false),
    };
    rep.set("vectors_exact", is_exact);
    let full = sys.expand(&vectors);
    rep.set("vectors", text_matrix(&full));
    match assemble_surface(&full, &ansatz) {
        Ok(s) => {
            let order = s.isotropy_order();
            rep.pass(
                "assembled",
                json!({
                    "isotropy_order": order.map_or(json!("total"), |o| json!(o)),
                    "ends": s.ends().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                }),
            );
            let desc = spec.description.as_ref().map(|d| format!("realization of: {d}"));
            Ok((rep, Some(SurfaceSpec::from_data(s.f(), radicand(&full), desc))))
        }
        Err(e) => {
            rep.fail("assembled", json!({ "error": e.to_string() }));
            Ok((rep, None))
        }
    }
}
