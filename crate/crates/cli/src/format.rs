//! JSON field files with exact `"num/den"` coefficients.

use std::path::Path;

use serde::{Deserialize, Serialize};

use hqf_core::characters::Frame;
use hqf_core::poly::{Axis, Monomial, Polynomial3, QuaternionPolyField, VectorPoly};
use hqf_core::quaternion::Quaternion;
use hqf_core::rational::{format_rational, parse_rational, Rational, Vec3};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub e: [u32; 3],
    pub c: String,
}

pub type PolyJson = Vec<Term>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldJson {
    pub alpha: PolyJson,
    pub u: [PolyJson; 3],
}

pub type VecJson = [String; 3];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    pub format_version: u32,
    pub field: FieldJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<[VecJson; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axes: Option<Vec<VecJson>>,
}

pub fn poly_to_json(p: &Polynomial3) -> PolyJson {
    p.terms()
        .map(|(m, c)| Term {
            e: m.0,
            c: format_rational(c),
        })
        .collect()
}

pub fn poly_from_json(p: &PolyJson) -> Result<Polynomial3, CliError> {
    let mut out = Polynomial3::zero();
    for t in p {
        out.add_term(Monomial(t.e), rational(&t.c)?);
    }
    Ok(out)
}

pub fn field_to_json(p: &QuaternionPolyField) -> FieldJson {
    FieldJson {
        alpha: poly_to_json(&p.alpha),
        u: std::array::from_fn(|i| poly_to_json(&p.u.0[i])),
    }
}

pub fn field_from_json(f: &FieldJson) -> Result<QuaternionPolyField, CliError> {
    Ok(QuaternionPolyField::new(
        poly_from_json(&f.alpha)?,
        VectorPoly::new(
            poly_from_json(&f.u[0])?,
            poly_from_json(&f.u[1])?,
            poly_from_json(&f.u[2])?,
        ),
    ))
}

pub fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Format(e.to_string()))
}

pub fn vec_to_json(v: &Vec3) -> VecJson {
    std::array::from_fn(|i| format_rational(&v.0[i]))
}

pub fn vec_from_json(v: &VecJson) -> Result<Vec3, CliError> {
    Ok(Vec3::new(rational(&v[0])?, rational(&v[1])?, rational(&v[2])?))
}

pub fn quaternion_to_json(q: &Quaternion) -> [String; 4] {
    q.components().map(|c| format_rational(&c))
}

pub fn quaternion_from_json(q: &[String; 4]) -> Result<Quaternion, CliError> {
    Ok(Quaternion::from_components([
        rational(&q[0])?,
        rational(&q[1])?,
        rational(&q[2])?,
        rational(&q[3])?,
    ]))
}

/// Comma-separated rationals, e.g. `1/2,-1/3,1/4`.
pub fn parse_vec(s: &str) -> Result<Vec3, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Format(format!("expected three comma-separated rationals, got {s:?}")));
    }
    Ok(Vec3::new(rational(parts[0])?, rational(parts[1])?, rational(parts[2])?))
}

/// Semicolon-separated vectors.
pub fn parse_axes(s: &str) -> Result<Vec<Axis>, CliError> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| Axis::new(parse_vec(p)?).map_err(|e| CliError::Format(e.to_string())))
        .collect()
}

impl FieldFile {
    pub fn new(p: &QuaternionPolyField) -> Self {
        FieldFile {
            format_version: FORMAT_VERSION,
            field: field_to_json(p),
            frame: None,
            axes: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let f: FieldFile =
            serde_json::from_str(text).map_err(|e| CliError::Format(format!("field file: {e}")))?;
        if f.format_version != FORMAT_VERSION {
            return Err(CliError::Format(format!(
                "unsupported format_version {}",
                f.format_version
            )));
        }
        Ok(f)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Format(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("field files serialize")
    }

    pub fn quaternion_field(&self) -> Result<QuaternionPolyField, CliError> {
        field_from_json(&self.field)
    }

    pub fn frame(&self) -> Result<Option<Frame>, CliError> {
        let Some(f) = &self.frame else {
            return Ok(None);
        };
        let [a, b, c] = [vec_from_json(&f[0])?, vec_from_json(&f[1])?, vec_from_json(&f[2])?];
        Frame::new(a, b, c)
            .map(Some)
            .map_err(|e| CliError::Format(e.to_string()))
    }

    pub fn axes(&self) -> Result<Option<Vec<Axis>>, CliError> {
        let Some(axes) = &self.axes else {
            return Ok(None);
        };
        axes.iter()
            .map(|v| Axis::new(vec_from_json(v)?).map_err(|e| CliError::Format(e.to_string())))
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hqf_core::rational::rat;

    fn sample() -> QuaternionPolyField {
        QuaternionPolyField::new(
            Polynomial3::from_int_terms(&[(1, [1, 0, 0]), (-3, [0, 2, 1])]).scale(&rat(2, 3)),
            VectorPoly::new(
                Polynomial3::zero(),
                Polynomial3::from_int_terms(&[(5, [0, 0, 0])]),
                Polynomial3::var(1),
            ),
        )
    }

    #[test]
    fn round_trip() {
        let f = FieldFile::new(&sample());
        let back = FieldFile::parse(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.quaternion_field().unwrap(), sample());
        assert_eq!(back.to_json(), f.to_json());
    }

    #[test]
    fn terms_are_ordered_and_exact() {
        let j = field_to_json(&sample());
        assert_eq!(j.alpha[0].e, [1, 0, 0]);
        assert_eq!(j.alpha[0].c, "2/3");
        assert_eq!(j.alpha[1].c, "-2/1");
    }

    #[test]
    fn rejects_bad_input() {
        let bad_version = r#"{"format_version":2,"field":{"alpha":[],"u":[[],[],[]]}}"#;
        assert!(matches!(FieldFile::parse(bad_version), Err(CliError::Format(_))));
        let negative = r#"{"format_version":1,"field":{"alpha":[{"e":[-1,0,0],"c":"1/1"}],"u":[[],[],[]]}}"#;
        assert!(FieldFile::parse(negative).is_err());
        let bad_coeff = r#"{"format_version":1,"field":{"alpha":[{"e":[1,0,0],"c":"1/0"}],"u":[[],[],[]]}}"#;
        assert!(FieldFile::parse(bad_coeff).unwrap().quaternion_field().is_err());
    }

    #[test]
    fn vectors_and_axes() {
        assert_eq!(parse_vec("1/2, -1/3, 1/4").unwrap(), Vec3::new(rat(1, 2), rat(-1, 3), rat(1, 4)));
        assert_eq!(parse_axes("1,0,0;0,1,0").unwrap().len(), 2);
        assert!(parse_vec("1,2").is_err());
    }
}
