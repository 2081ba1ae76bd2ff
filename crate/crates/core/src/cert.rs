//! Arc certificates (JSON, schema `maxarc/1`) and plain point lists.

use serde::{Deserialize, Serialize};

use crate::arcs::{ArcStats, MaximalArc};
use crate::conic::GeneralConic;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::plane::{Plane, PointSet};

pub const SCHEMA: &str = "maxarc/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub field: FieldSpec,
    /// Free-form description of how the arc was built.
    pub construction: String,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nucleus: Option<String>,
    /// Six coefficients `a,b,c,d,e,f` of `ax²+by²+cz²+dxy+eyz+fxz` per conic.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conics: Vec<[String; 6]>,
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<ArcStats>,
}

impl Certificate {
    pub fn from_arc(arc: &MaximalArc, construction: &str, stats: Option<ArcStats>) -> Certificate {
        let plane = arc.plane();
        let f = plane.field();
        Certificate {
            schema: SCHEMA.into(),
            field: f.spec(),
            construction: construction.into(),
            degree: arc.degree(),
            nucleus: arc.nucleus().map(|n| plane.format_point(n)),
            conics: arc.conics().iter().map(|c| c.coeffs().map(|x| f.format(x))).collect(),
            points: arc.points().iter().map(|i| plane.format_point(plane.point_at(i))).collect(),
            stats,
        }
    }

    pub fn plane(&self) -> Result<Plane> {
        if self.schema != SCHEMA {
            return Err(Error::Parse { what: "certificate schema", input: self.schema.clone() });
        }
        Plane::new(Field::from_spec(&self.field)?)
    }

    /// The listed point set, without any check.
    pub fn point_set(&self, plane: &Plane) -> Result<PointSet> {
        let pts = self.points.iter().map(|s| plane.parse_point(s)).collect::<Result<Vec<_>>>()?;
        Ok(PointSet::from_points(plane, pts))
    }

    /// Rebuilds the arc. When conics are listed, their union with the
    /// nucleus must equal the listed points.
    pub fn to_arc(&self, plane: &Plane) -> Result<MaximalArc> {
        let points = self.point_set(plane)?;
        match (&self.nucleus, self.conics.is_empty()) {
            (Some(n), false) => {
                let f = plane.field();
                let nucleus = plane.parse_point(n)?;
                let conics = self
                    .conics
                    .iter()
                    .map(|c| {
                        let mut coeffs = [crate::field::Elem::ZERO; 6];
                        for (slot, s) in coeffs.iter_mut().zip(c) {
                            *slot = f.parse(s)?;
                        }
                        GeneralConic::new(f, coeffs)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let arc = MaximalArc::from_conics(plane, nucleus, conics)?;
                if *arc.points() != points {
                    return Err(Error::Structure("listed points differ from the conics and nucleus".into()));
                }
                Ok(arc)
            }
            _ => MaximalArc::from_points(plane, points),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        serde_json::from_str(s).map_err(|e| Error::Parse { what: "certificate", input: e.to_string() })
    }
}

/// `x,y,z` per line in exponent notation.
pub fn points_csv(plane: &Plane, points: &PointSet) -> String {
    let f = plane.field();
    let mut out = String::from("x,y,z\n");
    for i in points.iter() {
        let c = plane.point_at(i).coords();
        out.push_str(&format!("{},{},{}\n", f.format(c[0]), f.format(c[1]), f.format(c[2])));
    }
    out
}

/// One point per line, as `(a : b : c)` or `a,b,c`. Blank lines, `#`
/// comments and an `x,y,z` header are skipped.
pub fn parse_point_list(plane: &Plane, text: &str) -> Result<PointSet> {
    let mut pts = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') || line.eq_ignore_ascii_case("x,y,z") {
            continue;
        }
        pts.push(plane.parse_point(line)?);
    }
    Ok(PointSet::from_points(plane, pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{denniston_arc, AdditiveSubgroup};
    use crate::field::Elem;

    #[test]
    fn certificate_round_trip() {
        let f = Field::gf32_distinguished();
        let p = Plane::new(f.clone()).unwrap();
        let arc = denniston_arc(&p, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE, f.generator()])).unwrap();
        let cert = Certificate::from_arc(&arc, "denniston", None);
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        let plane = back.plane().unwrap();
        let rebuilt = back.to_arc(&plane).unwrap();
        assert_eq!(rebuilt, arc);
        assert_eq!(rebuilt.conics().len(), 3);
        let csv = points_csv(&p, arc.points());
        assert_eq!(parse_point_list(&p, &csv).unwrap(), *arc.points());
    }

    #[test]
    fn tampered_points_are_detected() {
        let f = Field::gf32_distinguished();
        let p = Plane::new(f.clone()).unwrap();
        let arc = denniston_arc(&p, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE, f.generator()])).unwrap();
        let mut cert = Certificate::from_arc(&arc, "denniston", None);
        cert.points.pop();
        assert!(cert.to_arc(&p).is_err());
    }
}
