//! Polynomial, measure and unitary specifications from the command line.

use std::path::Path;

use dball_core::boundary::{Measure, PointCloud};
use dball_core::maps::Unitary2;
use dball_core::series::parse_poly;
use dball_core::{BivarPoly, Complex64, MultiIndex};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Inline text, or the contents of the file it names.
fn read_spec(arg: &str) -> Result<(String, Option<String>), CliError> {
    let path = Path::new(arg);
    if !arg.trim_start().starts_with('{') && path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        Ok((text, Some(arg.to_string())))
    } else {
        Ok((arg.to_string(), None))
    }
}

fn context(source: &Option<String>) -> String {
    source.as_ref().map(|p| format!("{p}: ")).unwrap_or_default()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TermSpec {
    pub k: u32,
    pub l: u32,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PolySpec {
    pub terms: Vec<TermSpec>,
}

impl PolySpec {
    pub fn from_poly(f: &BivarPoly) -> Self {
        Self { terms: f.terms().map(|(i, c)| TermSpec { k: i.k, l: i.l, re: c.re, im: c.im }).collect() }
    }

    pub fn to_poly(&self) -> BivarPoly {
        let mut f = BivarPoly::zero();
        for t in &self.terms {
            f.add_term(MultiIndex::new(t.k, t.l), Complex64::new(t.re, t.im));
        }
        f
    }
}

/// `--f`: polynomial text such as `1 - 2*z1*z2`, or JSON `{"terms": [{"k":..,"l":..,"re":..,"im":..}]}`.
pub fn parse_poly_arg(arg: &str) -> Result<BivarPoly, CliError> {
    let (text, source) = read_spec(arg)?;
    if text.trim_start().starts_with('{') {
        let spec: PolySpec = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}malformed polynomial JSON: {e}", context(&source))))?;
        return Ok(spec.to_poly());
    }
    parse_poly(text.trim()).map_err(|e| CliError::Input(format!("{}malformed polynomial {:?}: {e}", context(&source), text.trim())))
}

type ComplexPair = [f64; 2];

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MeasureSpec {
    Point { zeta: [ComplexPair; 2] },
    DiagCircle,
    Sphere,
    Cloud { points: Vec<[ComplexPair; 2]>, weights: Option<Vec<f64>> },
}

fn complex(p: ComplexPair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl MeasureSpec {
    pub fn from_name(name: &str) -> Option<Self> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        match name {
            "diag_circle" => Some(Self::DiagCircle),
            "sphere" | "uniform_sphere" => Some(Self::Sphere),
            "point_10" => Some(Self::Point { zeta: [[1.0, 0.0], [0.0, 0.0]] }),
            "point_diag" => Some(Self::Point { zeta: [[h, 0.0], [h, 0.0]] }),
            _ => None,
        }
    }

    pub fn build(&self) -> Result<Measure, CliError> {
        let invalid = |e: dball_core::boundary::MeasureError| CliError::Input(format!("invalid measure: {e}"));
        match self {
            Self::Point { zeta } => Measure::point_mass([complex(zeta[0]), complex(zeta[1])]).map_err(invalid),
            Self::DiagCircle => Ok(Measure::DiagCircle),
            Self::Sphere => Ok(Measure::UniformSphere),
            Self::Cloud { points, weights } => {
                let pts = points.iter().map(|p| [complex(p[0]), complex(p[1])]).collect();
                let cloud = match weights {
                    Some(w) => PointCloud::new(pts, w.clone()),
                    None => PointCloud::uniform(pts),
                };
                cloud.map(Measure::PointCloud).map_err(invalid)
            }
        }
    }

    pub fn from_cloud(cloud: &PointCloud) -> Self {
        Self::Cloud {
            points: cloud.points().iter().map(|p| [[p[0].re, p[0].im], [p[1].re, p[1].im]]).collect(),
            weights: Some(cloud.weights().to_vec()),
        }
    }
}

/// `--measure`: a built-in name, inline JSON, or a JSON file.
pub fn parse_measure_arg(arg: &str) -> Result<(MeasureSpec, Measure), CliError> {
    if let Some(spec) = MeasureSpec::from_name(arg) {
        let m = spec.build()?;
        return Ok((spec, m));
    }
    let (text, source) = read_spec(arg)?;
    if !text.trim_start().starts_with('{') {
        return Err(CliError::Input(format!(
            "unknown measure {arg:?}: expected diag_circle, sphere, point_10, point_diag, JSON, or a JSON file"
        )));
    }
    let spec: MeasureSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}malformed measure JSON: {e}", context(&source))))?;
    let m = spec.build()?;
    Ok((spec, m))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct UnitarySpec {
    pub matrix: [[ComplexPair; 2]; 2],
}

/// `--unitary`: `hadamard`, `identity`, JSON `{"matrix": [[[re,im],[re,im]],[[re,im],[re,im]]]}` or a file.
pub fn parse_unitary_arg(arg: &str) -> Result<Unitary2, CliError> {
    match arg {
        "hadamard" => return Ok(Unitary2::hadamard()),
        "identity" => return Ok(Unitary2::identity()),
        _ => {}
    }
    let (text, source) = read_spec(arg)?;
    let spec: UnitarySpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}malformed unitary JSON: {e}", context(&source))))?;
    let m = spec.matrix;
    Unitary2::new([[complex(m[0][0]), complex(m[0][1])], [complex(m[1][0]), complex(m[1][1])]])
        .map_err(|e| CliError::Input(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_text_and_json() {
        assert_eq!(parse_poly_arg("1 - z1").unwrap(), parse_poly("1-z1").unwrap());
        let json = r#"{"terms": [{"k": 0, "l": 0, "re": 1.0}, {"k": 1, "l": 1, "re": -2.0, "im": 0.0}]}"#;
        assert_eq!(parse_poly_arg(json).unwrap(), parse_poly("1 - 2*z1*z2").unwrap());
        let err = parse_poly_arg("1 - w").unwrap_err().to_string();
        assert!(err.contains("position 4"), "{err}");
    }

    #[test]
    fn measures() {
        assert_eq!(parse_measure_arg("diag_circle").unwrap().1, Measure::DiagCircle);
        let (_, m) = parse_measure_arg(r#"{"type":"point","zeta":[[0,0],[0,1]]}"#).unwrap();
        assert!(matches!(m, Measure::PointMass(_)));
        let (_, c) = parse_measure_arg(r#"{"type":"cloud","points":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#).unwrap();
        assert!(matches!(c, Measure::PointCloud(ref p) if p.len() == 2));
        assert!(parse_measure_arg(r#"{"type":"point","zeta":[[2,0],[0,0]]}"#).is_err());
        assert!(parse_measure_arg("blob").is_err());
    }

    #[test]
    fn unitaries() {
        assert_eq!(parse_unitary_arg("hadamard").unwrap(), Unitary2::hadamard());
        let u = parse_unitary_arg(r#"{"matrix": [[[0,0],[1,0]],[[1,0],[0,0]]]}"#).unwrap();
        assert_eq!(u.entries()[0][1], Complex64::new(1.0, 0.0));
        assert!(parse_unitary_arg(r#"{"matrix": [[[1,0],[1,0]],[[1,0],[0,0]]]}"#).is_err());
    }
}
