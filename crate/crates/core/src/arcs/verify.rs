//! Line-intersection counting: maximal-arc verification, secant censuses,
//! external lines and dual arcs.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MaximalArc;
use crate::error::{Error, Result};
use crate::plane::{Plane, PointSet, ProjLine};

/// Degree and line histogram of a verified maximal arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcStats {
    pub degree: u32,
    pub points: usize,
    /// intersection size -> number of lines
    pub histogram: BTreeMap<u32, u32>,
}

/// The first reason a point set fails to be a maximal arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcDefect {
    Empty,
    /// A line (first in canonical order) whose intersection size is neither 0 nor `degree`.
    UnevenLine { line: ProjLine, line_index: u32, meets: u32, degree: u32 },
    /// Every line meets in 0 or `degree` points but the size is not `q(d-1)+d`.
    WrongSize { points: usize, degree: u32, expected: usize },
}

impl fmt::Display for ArcDefect {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcDefect::Empty => write!(out, "empty point set"),
            ArcDefect::UnevenLine { line_index, meets, degree, .. } => {
                write!(out, "line #{line_index} meets the set in {meets} points (expected 0 or {degree})")
            }
            ArcDefect::WrongSize { points, degree, expected } => {
                write!(out, "{points} points but a degree-{degree} maximal arc has {expected}")
            }
        }
    }
}

impl From<ArcDefect> for Error {
    fn from(d: ArcDefect) -> Error {
        Error::NotMaximalArc(d.to_string())
    }
}

/// Intersection size of every line with `points`, indexed by canonical line
/// index. Only lines through a point of the set are visited.
pub fn line_counts(plane: &Plane, points: &PointSet) -> Vec<u32> {
    let n = plane.size() as usize;
    let idx = points.to_vec();
    idx.par_chunks(64)
        .fold(
            || vec![0u32; n],
            |mut acc, chunk| {
                for &i in chunk {
                    for l in plane.line_indices_through(plane.point_at(i)) {
                        acc[l as usize] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u32; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Checks that every line meets `points` in 0 or d points and that there are `q(d-1)+d` of them.
pub fn verify_maximal_arc(plane: &Plane, points: &PointSet) -> std::result::Result<ArcStats, ArcDefect> {
    if points.is_empty() {
        return Err(ArcDefect::Empty);
    }
    let counts = line_counts(plane, points);
    let degree = counts.iter().copied().max().unwrap_or(0);
    if let Some(i) = counts.iter().position(|&c| c != 0 && c != degree) {
        return Err(ArcDefect::UnevenLine {
            line: plane.line_at(i as u32),
            line_index: i as u32,
            meets: counts[i],
            degree,
        });
    }
    let q = plane.q() as usize;
    let expected = q * (degree as usize - 1) + degree as usize;
    if points.len() != expected {
        return Err(ArcDefect::WrongSize { points: points.len(), degree, expected });
    }
    let mut histogram = BTreeMap::new();
    for c in counts {
        *histogram.entry(c).or_insert(0) += 1;
    }
    Ok(ArcStats { degree, points: points.len(), histogram })
}

/// Line classification for an arc M and a conic C disjoint from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantCensus {
    /// Lines meeting M.
    pub secants_m: u32,
    /// Lines missing M.
    pub externals_m: u32,
    /// Lines meeting M ∪ C.
    pub secants_union: u32,
    /// Lines meeting C but not M.
    pub c_only: u32,
    /// Lines missing M ∪ C.
    pub externals_union: u32,
}

pub fn secant_census(plane: &Plane, m: &PointSet, c: &PointSet) -> SecantCensus {
    let cm = line_counts(plane, m);
    let cc = line_counts(plane, c);
    let mut s = SecantCensus { secants_m: 0, externals_m: 0, secants_union: 0, c_only: 0, externals_union: 0 };
    for (&a, &b) in cm.iter().zip(&cc) {
        if a > 0 {
            s.secants_m += 1;
        } else {
            s.externals_m += 1;
        }
        if a > 0 || b > 0 {
            s.secants_union += 1;
        } else {
            s.externals_union += 1;
        }
        if a == 0 && b > 0 {
            s.c_only += 1;
        }
    }
    s
}

/// First line in canonical order missing both `m` and `c`.
pub fn find_external_line(plane: &Plane, m: &PointSet, c: &PointSet) -> Result<ProjLine> {
    let mut union = m.clone();
    union.union_with(c);
    let counts = line_counts(plane, &union);
    counts.iter().position(|&x| x == 0).map(|i| plane.line_at(i as u32)).ok_or(Error::NoExternalLine)
}

/// The lines external to a degree-d arc, as a point set of the dual plane
/// (line `[u:v:w]` becomes point `(u:v:w)`). It is a maximal arc of degree q/d.
pub fn dual_arc(arc: &MaximalArc) -> Result<MaximalArc> {
    let plane = arc.plane();
    verify_maximal_arc(plane, arc.points())?;
    let counts = line_counts(plane, arc.points());
    let dual = PointSet::from_indices(
        plane,
        counts.iter().enumerate().filter(|(_, &c)| c == 0).map(|(i, _)| i as u32),
    );
    MaximalArc::from_points(plane, dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{denniston_arc, AdditiveSubgroup};
    use crate::field::{Elem, Field};

    #[test]
    fn denniston_histogram_q32() {
        let f = Field::gf32_distinguished();
        let p = Plane::new(f.clone()).unwrap();
        let arc = denniston_arc(&p, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE, f.generator()])).unwrap();
        let stats = verify_maximal_arc(&p, arc.points()).unwrap();
        assert_eq!(stats.degree, 4);
        assert_eq!(stats.histogram, BTreeMap::from([(0, 232), (4, 825)]));
    }

    #[test]
    fn random_set_is_rejected() {
        let f = Field::new(5).unwrap();
        let p = Plane::new(f).unwrap();
        let set = PointSet::from_indices(&p, (0..100).map(|i| (i * 7) % 1057));
        assert!(matches!(verify_maximal_arc(&p, &set), Err(ArcDefect::UnevenLine { .. })));
        assert_eq!(verify_maximal_arc(&p, &PointSet::empty(&p)), Err(ArcDefect::Empty));
    }

    #[test]
    fn dual_of_q8_denniston_is_hyperoval() {
        let f = Field::new(3).unwrap();
        let p = Plane::new(f.clone()).unwrap();
        let arc = denniston_arc(&p, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE, f.generator()])).unwrap();
        let dual = dual_arc(&arc).unwrap();
        assert_eq!(dual.degree(), 2);
        assert_eq!(dual.len(), 10);
        assert_eq!(verify_maximal_arc(&p, dual.points()).unwrap().degree, 2);
    }
}
