//! A loaded surface spec and numeric access to the surface it describes.

use anyhow::{anyhow, Result};
use num_complex::Complex64;
use willmore_core::adjoint::{adjoint_jet, g_in_chart, pedal_jet};
use willmore_core::algebra::jet::Jet;
use willmore_core::moebius::jet_vec;
use willmore_core::{Chart, Coeff, FieldVec, MinimalSurface, Mode, Point, Rat};

use crate::spec::{point, SurfaceSpec};

/// Past this many stored terms in `x`, checks run on jets at sample points.
pub const EXACT_SIZE_LIMIT: usize = 40;

#[derive(Clone, Debug)]
pub enum Transform {
    None,
    Pedal(Vec<Coeff>),
    G(Rat),
}

impl Transform {
    pub fn name(&self) -> &'static str {
        match self {
            Transform::None => "minimal",
            Transform::Pedal(_) => "pedal",
            Transform::G(_) => "adjoint",
        }
    }
}

pub struct Model {
    pub spec: SurfaceSpec,
    pub data: Vec<Rat>,
    pub transform: Transform,
}

impl Model {
    pub fn load(spec: SurfaceSpec, mode: Mode, pedal_flag: Option<&str>, g_flag: Option<&str>) -> Result<Model> {
        let mut spec = spec;
        if let Some(p) = pedal_flag {
            spec.pedal_point = Some(crate::spec::parse_point(p)?);
            spec.g = None;
        }
        if let Some(g) = g_flag {
            spec.g = Some(crate::spec::parse_g(g)?);
            spec.pedal_point = None;
        }
        let field = spec.field.config(mode)?;
        let data = spec.data(&field)?;
        let transform = match (&spec.pedal_point, &spec.g) {
            (Some(p), _) => {
                let p = point(p, &field)?;
                if p.len() != spec.ambient_dim {
                    return Err(anyhow!("pedal point has {} coordinates, expected {}", p.len(), spec.ambient_dim));
                }
                Transform::Pedal(p)
            }
            (None, Some(g)) => Transform::G(g.to_rat(&field)?),
            (None, None) => Transform::None,
        };
        Ok(Model { spec, data, transform })
    }

    pub fn surface(&self) -> willmore_core::Result<MinimalSurface> {
        MinimalSurface::new(self.data.clone())
    }
}

/// Jets of the surface of interest, in either chart.
pub struct Target {
    pub base: MinimalSurface,
    pub base_w: MinimalSurface,
    pub transform: Transform,
    g_w: Option<Rat>,
}

impl Target {
    pub fn new(base: MinimalSurface, transform: Transform) -> Target {
        let base_w = base.in_chart(Chart::W);
        let g_w = match &transform {
            Transform::G(g) => Some(g_in_chart(g, Chart::W)),
            _ => None,
        };
        Target { base, base_w, transform, g_w }
    }

    /// Exact arithmetic is affordable for this surface.
    pub fn small(&self) -> bool {
        self.base.is_exact() && self.base.x().0.iter().map(|c| c.size()).sum::<usize>() <= EXACT_SIZE_LIMIT
    }

    pub fn jets(&self, chart: Chart, at: Complex64, order: usize) -> willmore_core::Result<FieldVec<Jet>> {
        let s = match chart {
            Chart::Z => &self.base,
            Chart::W => &self.base_w,
        };
        match &self.transform {
            Transform::None => jet_vec(s.x(), at, order),
            Transform::Pedal(x0) => pedal_jet(s, x0, at, order),
            Transform::G(g) => {
                let g = if chart == Chart::Z { g } else { self.g_w.as_ref().expect("set with G") };
                adjoint_jet(s, g, at, order)
            }
        }
    }

    /// The surface at one point of `chart`; non-finite where it is undefined.
    pub fn value(&self, chart: Chart, at: Complex64) -> Vec<f64> {
        let n = self.base.dim();
        match self.jets(chart, at, 0) {
            Ok(v) => v.0.iter().map(|j| j.value().re).collect(),
            Err(_) => vec![f64::NAN; n],
        }
    }

    /// Sample points in the `z` chart kept away from finite ends.
    pub fn sample_points(&self, n: usize) -> Vec<Complex64> {
        let ends: Vec<Complex64> = self
            .base
            .ends()
            .iter()
            .filter_map(|p| match p {
                Point::Finite(c) => Some(c.to_c64()),
                Point::Infinity => None,
            })
            .collect();
        let mut out = vec![];
        let mut k = 0;
        while out.len() < n && k < 50 * n {
            let z = Complex64::from_polar(0.3 + 0.6 * ((k * 7) % 11) as f64 / 11.0, 0.41 + 2.399 * k as f64);
            if ends.iter().all(|e| (z - e).norm() > 0.1) {
                out.push(z);
            }
            k += 1;
        }
        out
    }
}

pub fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Exact => "exact",
        Mode::Float => "float",
    }
}
