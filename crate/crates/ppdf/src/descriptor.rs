//! JSON function descriptors.
//!
//! A descriptor is a small JSON object selecting a constructor by `"kind"`
//! plus kind-specific numeric fields; combinators nest descriptors under
//! `"inner"` or `"left"`/`"right"`. Keys are exact: unknown fields are
//! rejected so a typo cannot silently fall back to a default.

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::funcs::{
    self, make_exp_pow, make_f_zeta, make_gaussian, make_hermite_quartic, make_indicator_conv,
    make_inverse_multiquadric, make_linnik, make_m_alpha, make_m_alpha_sq, make_phi, make_wu,
    make_wendland33, mixture, RadialFunction,
};
use crate::measure::{SampledDensity, ScaleMeasure};

/// Parsed function descriptor, ready to build.
#[derive(Debug, Clone)]
pub enum Descriptor {
    Triangle { r: f64 },
    MAlpha { alpha: f64, dim: Option<u32> },
    MAlphaSq { alpha: f64, dim: Option<u32> },
    Wu,
    Phi,
    Hermite4 { a: f64, b: f64 },
    Gaussian { rate: f64, dim: Option<u32> },
    FZeta { r: f64, theta: f64 },
    Scale { inner: Box<Descriptor>, factor: f64 },
    Mixture { inner: Box<Descriptor>, measure: MeasureSpec },
    Product { left: Box<Descriptor>, right: Box<Descriptor> },
    Convolve { left: Box<Descriptor>, right: Box<Descriptor> },
    Linnik { beta: f64 },
    ExpPow { beta: f64 },
    InverseMultiquadric { alpha: f64, beta: f64 },
    Wendland33,
}

/// Scale measure for `mixture`: point masses and/or a tabulated density.
#[derive(Debug, Clone)]
pub struct MeasureSpec {
    pub atoms: Vec<(f64, f64)>,
    pub density: Option<(Vec<f64>, Vec<f64>)>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Descriptor(msg.into())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangleFields {
    r: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphaDimFields {
    alpha: f64,
    dim: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EmptyFields {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AbFields {
    a: f64,
    b: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GaussianFields {
    rate: Option<f64>,
    dim: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FZetaFields {
    r: f64,
    theta: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScaleFields {
    inner: Value,
    factor: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MixtureFields {
    inner: Value,
    #[serde(default)]
    atoms: Vec<(f64, f64)>,
    density: Option<DensityFields>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityFields {
    points: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFields {
    left: Value,
    right: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BetaFields {
    beta: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphaBetaFields {
    alpha: f64,
    beta: f64,
}

fn fields<T: serde::de::DeserializeOwned>(kind: &str, rest: Value) -> Result<T> {
    serde_json::from_value(rest).map_err(|e| bad(format!("kind {kind:?}: {e}")))
}

fn from_value(v: Value) -> Result<Descriptor> {
    let Value::Object(mut map) = v else {
        return Err(bad("descriptor must be a JSON object"));
    };
    let kind = match map.remove("kind") {
        Some(Value::String(s)) => s,
        Some(_) => return Err(bad("\"kind\" must be a string")),
        None => return Err(bad("missing \"kind\" field")),
    };
    let rest = Value::Object(map);
    let d = match kind.as_str() {
        "triangle" => {
            let f: TriangleFields = fields(&kind, rest)?;
            Descriptor::Triangle { r: f.r.unwrap_or(2.0) }
        }
        "m_alpha" => {
            let f: AlphaDimFields = fields(&kind, rest)?;
            Descriptor::MAlpha { alpha: f.alpha, dim: f.dim }
        }
        "m_alpha_sq" => {
            let f: AlphaDimFields = fields(&kind, rest)?;
            Descriptor::MAlphaSq { alpha: f.alpha, dim: f.dim }
        }
        "wu" => {
            let _: EmptyFields = fields(&kind, rest)?;
            Descriptor::Wu
        }
        "phi" => {
            let _: EmptyFields = fields(&kind, rest)?;
            Descriptor::Phi
        }
        "hermite4" => {
            let f: AbFields = fields(&kind, rest)?;
            Descriptor::Hermite4 { a: f.a, b: f.b }
        }
        "gaussian" => {
            let f: GaussianFields = fields(&kind, rest)?;
            Descriptor::Gaussian {
                rate: f.rate.unwrap_or(std::f64::consts::PI),
                dim: f.dim,
            }
        }
        "f_zeta" => {
            let f: FZetaFields = fields(&kind, rest)?;
            Descriptor::FZeta { r: f.r, theta: f.theta }
        }
        "scale" => {
            let f: ScaleFields = fields(&kind, rest)?;
            Descriptor::Scale {
                inner: Box::new(from_value(f.inner)?),
                factor: f.factor,
            }
        }
        "mixture" => {
            let f: MixtureFields = fields(&kind, rest)?;
            if f.atoms.is_empty() && f.density.is_none() {
                return Err(bad("mixture needs \"atoms\" and/or \"density\""));
            }
            Descriptor::Mixture {
                inner: Box::new(from_value(f.inner)?),
                measure: MeasureSpec {
                    atoms: f.atoms,
                    density: f.density.map(|d| (d.points, d.values)),
                },
            }
        }
        "product" | "convolve" => {
            let f: PairFields = fields(&kind, rest)?;
            let left = Box::new(from_value(f.left)?);
            let right = Box::new(from_value(f.right)?);
            if kind == "product" {
                Descriptor::Product { left, right }
            } else {
                Descriptor::Convolve { left, right }
            }
        }
        "linnik" => {
            let f: BetaFields = fields(&kind, rest)?;
            Descriptor::Linnik { beta: f.beta }
        }
        "exp_pow" => {
            let f: BetaFields = fields(&kind, rest)?;
            Descriptor::ExpPow { beta: f.beta }
        }
        "inverse_multiquadric" => {
            let f: AlphaBetaFields = fields(&kind, rest)?;
            Descriptor::InverseMultiquadric { alpha: f.alpha, beta: f.beta }
        }
        "wendland33" => {
            let _: EmptyFields = fields(&kind, rest)?;
            Descriptor::Wendland33
        }
        other => return Err(bad(format!("unknown kind {other:?}"))),
    };
    Ok(d)
}

/// Parse a descriptor from JSON text.
pub fn parse_descriptor(json: &str) -> Result<Descriptor> {
    let v: Value = serde_json::from_str(json).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    from_value(v)
}

impl Descriptor {
    /// Build the function. `dim_override` (from a CLI flag) supplies the
    /// dimension for kinds that accept one and did not set it inline; for
    /// fixed-dimension kinds it must agree with the natural dimension.
    pub fn build(&self, dim_override: Option<u32>) -> Result<RadialFunction> {
        let f = match self {
            Descriptor::Triangle { r } => make_indicator_conv(*r)?,
            Descriptor::MAlpha { alpha, dim } => {
                make_m_alpha(*alpha, dim.or(dim_override).unwrap_or(1))?
            }
            Descriptor::MAlphaSq { alpha, dim } => {
                make_m_alpha_sq(*alpha, dim.or(dim_override).unwrap_or(1))?
            }
            Descriptor::Wu => make_wu()?,
            Descriptor::Phi => make_phi()?,
            Descriptor::Hermite4 { a, b } => make_hermite_quartic(*a, *b)?,
            Descriptor::Gaussian { rate, dim } => {
                make_gaussian(*rate, dim.or(dim_override).unwrap_or(1))?
            }
            Descriptor::FZeta { r, theta } => make_f_zeta(*r, *theta)?,
            Descriptor::Scale { inner, factor } => {
                funcs::scale(&inner.build(dim_override)?, *factor)?
            }
            Descriptor::Mixture { inner, measure } => {
                let base = inner.build(dim_override)?;
                let mut nu = ScaleMeasure::from_atoms(measure.atoms.clone())?;
                if let Some((points, values)) = &measure.density {
                    nu = nu.with_density(SampledDensity::new(points.clone(), values.clone())?)?;
                }
                mixture(&base, &nu)?
            }
            Descriptor::Product { left, right } => {
                funcs::product(&left.build(dim_override)?, &right.build(dim_override)?)?
            }
            Descriptor::Convolve { left, right } => {
                funcs::convolve(&left.build(dim_override)?, &right.build(dim_override)?)?
            }
            Descriptor::Linnik { beta } => make_linnik(*beta)?,
            Descriptor::ExpPow { beta } => make_exp_pow(*beta)?,
            Descriptor::InverseMultiquadric { alpha, beta } => {
                make_inverse_multiquadric(*alpha, *beta)?
            }
            Descriptor::Wendland33 => make_wendland33()?,
        };
        if let Some(d) = dim_override {
            if f.dim() != d {
                return Err(bad(format!(
                    "requested dimension {d} but this descriptor is fixed to dimension {}",
                    f.dim()
                )));
            }
        }
        Ok(f)
    }
}
