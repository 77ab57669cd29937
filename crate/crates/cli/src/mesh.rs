//! Two-chart sampling of a surface: an OBJ mesh of three coordinates plus a CSV of all of them.
//!
//! Each chart is an `N x N` polar grid over the closed unit disc (`|z| <= 1`, then
//! `|w| <= 1` with `w = 1/z`). Rings sit at radii `(i + 1/2) / (N - 1/2)`, so the last
//! ring is the unit circle, which both charts therefore contain. Angles are offset by
//! half a step, which keeps samples off the real axis.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde_json::json;
use willmore_core::Chart;

use crate::commands::{load, Input, Opts};
use crate::model::Target;
use crate::report::{sha256_hex, Report, Status};

pub struct Mesh {
    pub obj: String,
    pub csv: String,
    pub vertices: usize,
    pub faces: usize,
    pub non_finite: usize,
}

/// Parses `"1,2,5"` into zero-based coordinate indices valid for dimension `dim`.
pub fn parse_projection(text: &str, dim: usize) -> Result<[usize; 3]> {
    let idx: Vec<usize> = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| anyhow::anyhow!("projection {text:?} is not a list of indices"))?;
    if idx.len() != 3 {
        bail!("projection needs exactly three indices, got {}", idx.len());
    }
    for &i in &idx {
        if i == 0 || i > dim {
            bail!("projection index {i} is outside 1..={dim}");
        }
    }
    Ok([idx[0] - 1, idx[1] - 1, idx[2] - 1])
}

fn param(n: usize, ring: usize, step: usize) -> Complex64 {
    let r = (ring as f64 + 0.5) / (n as f64 - 0.5);
    Complex64::from_polar(r, TAU * (step as f64 + 0.5) / n as f64)
}

pub fn build(target: &Target, n: usize, proj: [usize; 3]) -> Mesh {
    let dim = target.base.dim();
    let mut obj = String::from("# willmore two-chart mesh\n");
    let mut csv = String::from("chart,ring,step,u_re,u_im");
    for k in 1..=dim {
        write!(csv, ",x{k}").unwrap();
    }
    csv.push('\n');
    let mut non_finite = 0;
    for (name, chart) in [("z", Chart::Z), ("w", Chart::W)] {
        writeln!(obj, "# chart {name}").unwrap();
        for ring in 0..n {
            for step in 0..n {
                let u = param(n, ring, step);
                let x = target.value(chart, u);
                if x.iter().any(|v| !v.is_finite()) {
                    non_finite += 1;
                }
                writeln!(obj, "v {} {} {}", x[proj[0]], x[proj[1]], x[proj[2]]).unwrap();
                write!(csv, "{name},{ring},{step},{},{}", u.re, u.im).unwrap();
                for v in &x {
                    write!(csv, ",{v}").unwrap();
                }
                csv.push('\n');
            }
        }
    }
    let mut faces = 0;
    for c in 0..2 {
        let base = c * n * n;
        let id = |ring: usize, step: usize| base + ring * n + step % n + 1;
        for ring in 0..n - 1 {
            for step in 0..n {
                let (a, b, c, d) = (id(ring, step), id(ring, step + 1), id(ring + 1, step + 1), id(ring + 1, step));
                writeln!(obj, "f {a} {b} {c}\nf {a} {c} {d}").unwrap();
                faces += 2;
            }
        }
    }
    Mesh { obj, csv, vertices: 2 * n * n, faces, non_finite }
}

/// Writes `out` (OBJ) and `out` with a `.csv` extension.
pub fn run(input: &Input, opts: &Opts, n: usize, project: &str, out: &Path) -> Result<Report> {
    if n < 2 {
        bail!("mesh needs at least 2 rings per chart, got {n}");
    }
    let (mut rep, model, s) = load("mesh", input, opts)?;
    let proj = parse_projection(project, model.spec.ambient_dim)?;
    rep.option("project", project);
    let Some(s) = s else { return Ok(rep) };
    let target = Target::new(s, model.transform.clone());
    let mesh = build(&target, n, proj);
    let csv_path = out.with_extension("csv");
    std::fs::write(out, &mesh.obj).with_context(|| format!("writing {}", out.display()))?;
    std::fs::write(&csv_path, &mesh.csv).with_context(|| format!("writing {}", csv_path.display()))?;
    rep.set("vertices", mesh.vertices);
    rep.set("faces", mesh.faces);
    rep.set("obj_sha256", sha256_hex(mesh.obj.as_bytes()));
    rep.set("csv_sha256", sha256_hex(mesh.csv.as_bytes()));
    let w = json!({ "vertices": mesh.vertices, "non_finite": mesh.non_finite });
    rep.check("finite", if mesh.non_finite == 0 { Status::Pass } else { Status::Fail }, w);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_bounds() {
        assert_eq!(parse_projection("1,2,5", 6).unwrap(), [0, 1, 4]);
        assert!(parse_projection("1,2,7", 6).is_err());
        assert!(parse_projection("0,1,2", 6).is_err());
        assert!(parse_projection("1,2", 6).is_err());
    }

    #[test]
    fn outer_ring_is_the_unit_circle() {
        for n in [2, 5, 64] {
            assert!((param(n, n - 1, 3 % n).norm() - 1.0).abs() < 1e-15);
            assert!(param(n, 0, 0).norm() > 0.0);
        }
    }
}
