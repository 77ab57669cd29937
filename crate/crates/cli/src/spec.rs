//! Input files: surface specs and Gram ansatz specs.
//!
//! Coefficients are exact strings such as `"-1/4"`, `"i/6"` or `"sqrt30/2"`. The
//! four-entry form `[re_num, re_den, im_num, im_den]` is accepted on input as well.
//! Polynomials are coefficient lists in ascending degree.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use willmore_core::gram::{Ansatz, Pin};
use willmore_core::{Coeff, FieldConfig, Mode, Poly, Rat, Var};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffText {
    Text(String),
    Parts([Part; 4]),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Part {
    Int(i64),
    Text(String),
}

impl Part {
    fn text(&self) -> String {
        match self {
            Part::Int(n) => n.to_string(),
            Part::Text(s) => s.clone(),
        }
    }
}

impl CoeffText {
    pub fn parse(&self) -> Result<Coeff> {
        match self {
            CoeffText::Text(s) => Coeff::parse(s).map_err(|e| anyhow!("bad coefficient {s:?}: {e}")),
            CoeffText::Parts(p) => {
                let [rn, rd, inum, id] = p.each_ref().map(Part::text);
                let re = Coeff::parse(&format!("{rn}/{rd}")).map_err(|e| anyhow!("bad real part {rn}/{rd}: {e}"))?;
                let im = Coeff::parse(&format!("{inum}/{id}")).map_err(|e| anyhow!("bad imaginary part {inum}/{id}: {e}"))?;
                Ok(&re + &(&Coeff::i() * &im))
            }
        }
    }

    pub fn from_coeff(c: &Coeff) -> CoeffText {
        CoeffText::Text(c.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatSpec {
    pub numerator: Vec<CoeffText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<Vec<CoeffText>>,
}

impl RatSpec {
    pub fn to_rat(&self, field: &FieldConfig) -> Result<Rat> {
        let num = poly(&self.numerator, field)?;
        let den = match &self.denominator {
            Some(d) => poly(d, field)?,
            None => Poly::one(Var::Z),
        };
        Rat::new(num, den).map_err(|e| anyhow!("bad rational function: {e}"))
    }

    pub fn from_rat(r: &Rat) -> RatSpec {
        let list = |p: &Poly| p.coeffs().iter().map(CoeffText::from_coeff).collect::<Vec<_>>();
        let den = r.den();
        let trivial = den.coeffs().len() == 1 && den.coeffs()[0].is_one();
        RatSpec { numerator: list(r.num()), denominator: (!trivial).then(|| list(den)) }
    }
}

fn coeff(c: &CoeffText, field: &FieldConfig) -> Result<Coeff> {
    let v = c.parse()?;
    if v.is_exact() && !field.admits(&v) {
        bail!("coefficient {v} lies outside the configured field");
    }
    Ok(field.coerce(&v))
}

fn poly(list: &[CoeffText], field: &FieldConfig) -> Result<Poly> {
    Ok(Poly::new(list.iter().map(|c| coeff(c, field)).collect::<Result<_>>()?, Var::Z))
}

pub fn point(list: &[CoeffText], field: &FieldConfig) -> Result<Vec<Coeff>> {
    list.iter().map(|c| coeff(c, field)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    /// Radicand `d` of `Q(i, sqrt d)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt: Option<u32>,
}

impl FieldSpec {
    pub fn config(&self, mode: Mode) -> Result<FieldConfig> {
        FieldConfig::new(mode, self.sqrt).map_err(|e| anyhow!("bad field: {e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub schema_version: u32,
    pub ambient_dim: usize,
    #[serde(default)]
    pub field: FieldSpec,
    /// Holomorphic data `F`, one rational function per coordinate.
    pub data: Vec<RatSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pedal_point: Option<Vec<CoeffText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<RatSpec>,
    /// Free-form chart notes, kept for round trips.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

impl SurfaceSpec {
    pub fn from_json(text: &str) -> Result<SurfaceSpec> {
        let spec: SurfaceSpec = serde_json::from_str(text).context("malformed surface spec")?;
        if spec.schema_version != SCHEMA_VERSION {
            bail!("unsupported schema version {}", spec.schema_version);
        }
        if spec.data.len() != spec.ambient_dim {
            bail!("ambient_dim is {} but {} components are given", spec.ambient_dim, spec.data.len());
        }
        if let Some(p) = &spec.pedal_point {
            if p.len() != spec.ambient_dim {
                bail!("pedal point has {} coordinates, expected {}", p.len(), spec.ambient_dim);
            }
        }
        if spec.pedal_point.is_some() && spec.g.is_some() {
            bail!("give either a pedal point or g, not both");
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes") + "\n"
    }

    pub fn data(&self, field: &FieldConfig) -> Result<Vec<Rat>> {
        self.data.iter().map(|r| r.to_rat(field)).collect()
    }

    pub fn from_data(f: &[Rat], field: Option<u32>, description: Option<String>) -> SurfaceSpec {
        SurfaceSpec {
            schema_version: SCHEMA_VERSION,
            ambient_dim: f.len(),
            field: FieldSpec { sqrt: field },
            data: f.iter().map(RatSpec::from_rat).collect(),
            pedal_point: None,
            g: None,
            chart: None,
            description,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleSpec {
    pub at: CoeffText,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AnsatzShape {
    Poles {
        poles: Vec<PoleSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        poly_degree: Option<u32>,
    },
    Numerator {
        denominator: Vec<CoeffText>,
        degree: usize,
        #[serde(default)]
        eliminate: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PinSpec {
    pub j: usize,
    pub k: usize,
    pub value: CoeffText,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub schema_version: u32,
    pub ambient_dim: usize,
    pub ansatz: AnsatzShape,
    #[serde(default)]
    pub pins: Vec<PinSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

impl AnsatzSpec {
    pub fn from_json(text: &str) -> Result<AnsatzSpec> {
        let spec: AnsatzSpec = serde_json::from_str(text).context("malformed ansatz spec")?;
        if spec.schema_version != SCHEMA_VERSION {
            bail!("unsupported schema version {}", spec.schema_version);
        }
        Ok(spec)
    }

    pub fn ansatz(&self) -> Result<Ansatz> {
        let field = FieldConfig::new(Mode::Exact, None).expect("plain field");
        Ok(match &self.ansatz {
            AnsatzShape::Poles { poles, poly_degree } => Ansatz::Poles {
                poles: poles.iter().map(|p| Ok((coeff(&p.at, &field)?, p.order))).collect::<Result<_>>()?,
                poly_degree: *poly_degree,
            },
            AnsatzShape::Numerator { denominator, degree, eliminate } => {
                Ansatz::Numerator { denominator: poly(denominator, &field)?, degree: *degree, eliminate: eliminate.clone() }
            }
        })
    }

    pub fn pins(&self) -> Result<Vec<Pin>> {
        self.pins.iter().map(|p| Ok(Pin { j: p.j, k: p.k, value: p.value.parse()? })).collect()
    }
}

/// `"1/3, -2/7, 0"`
pub fn parse_point(text: &str) -> Result<Vec<CoeffText>> {
    Ok(text.split(',').map(|s| CoeffText::Text(s.trim().to_string())).collect())
}

/// `"<numerator>[; <denominator>]"`, each a comma-separated ascending coefficient list.
pub fn parse_g(text: &str) -> Result<RatSpec> {
    let mut parts = text.split(';');
    let num = parse_point(parts.next().unwrap_or_default())?;
    let den = parts.next().map(parse_point).transpose()?;
    if parts.next().is_some() {
        bail!("g takes at most one ';'");
    }
    Ok(RatSpec { numerator: num, denominator: den })
}

/// `"j,k=value; j,k=value"`
pub fn parse_pins(text: &str) -> Result<Vec<PinSpec>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (idx, value) = item.split_once('=').ok_or_else(|| anyhow!("pin {item:?} lacks '='"))?;
            let (j, k) = idx.split_once(',').ok_or_else(|| anyhow!("pin {item:?} needs two indices"))?;
            Ok(PinSpec {
                j: j.trim().parse().with_context(|| format!("bad index in {item:?}"))?,
                k: k.trim().parse().with_context(|| format!("bad index in {item:?}"))?,
                value: CoeffText::Text(value.trim().to_string()),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "schema_version": 1,
        "ambient_dim": 3,
        "field": {"sqrt": 30},
        "data": [
            {"numerator": ["0", "1"]},
            {"numerator": ["0", "i"]},
            {"numerator": ["0", [1, 2, "-1", 3]], "denominator": ["sqrt30/2", "1"]}
        ],
        "pedal_point": ["1/3", "0", "-2"]
    }"#;

    #[test]
    fn round_trip_is_exact() {
        let spec = SurfaceSpec::from_json(SAMPLE).unwrap();
        let again = SurfaceSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(spec, again);
        let field = spec.field.config(Mode::Exact).unwrap();
        let a = spec.data(&field).unwrap();
        let b = again.data(&field).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[2].num().coeffs()[1], Coeff::parse("1/2-i/3").unwrap());
    }

    #[test]
    fn serialized_data_reparses_to_the_same_functions() {
        let spec = SurfaceSpec::from_json(SAMPLE).unwrap();
        let field = spec.field.config(Mode::Exact).unwrap();
        let f = spec.data(&field).unwrap();
        let back = SurfaceSpec::from_data(&f, Some(30), None);
        assert_eq!(back.data(&field).unwrap(), f);
    }

    #[test]
    fn foreign_radicands_are_rejected() {
        let text = SAMPLE.replace("\"sqrt\": 30", "\"sqrt\": 2");
        let spec = SurfaceSpec::from_json(&text).unwrap();
        let field = spec.field.config(Mode::Exact).unwrap();
        assert!(spec.data(&field).is_err());
    }

    #[test]
    fn flag_syntax() {
        let g = parse_g("0, 1/2; 1, 0, 1").unwrap();
        assert_eq!(g.numerator.len(), 2);
        assert_eq!(g.denominator.unwrap().len(), 3);
        let pins = parse_pins("0,4=1; 3,5 = -16").unwrap();
        assert_eq!((pins[1].j, pins[1].k), (3, 5));
        assert_eq!(pins[1].value, CoeffText::Text("-16".into()));
        assert!(parse_pins("0=1").is_err());
    }
}

