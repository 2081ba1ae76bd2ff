//! Canonical forms, isomorphism tests and automorphism-group orders.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::orbits::{canonical_subgroup, subgroup_stabilizer_pairs};
use super::{maps_between, reference_conic, Collineation};
use crate::arcs::{infinity_data, InfinityKind, MaximalArc};
use crate::conic::{infinity_line, Conic, GeneralConic};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::plane::{Plane, ProjLine, ProjPoint};

/// Normalized position of a proper Mathon 8-arc: nucleus `(0,0,1)`,
/// concurrency point `(0,1,0)`, one subarc with line at infinity `z = 0`
/// and one of its conics equal to the reference conic. The conic list is
/// the lexicographically least over all such normalizations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub conics: Vec<Conic>,
    /// Normalizing maps that reach the least form; equals |Aut(K)|.
    pub attaining: u64,
    pub candidates: u64,
}

impl CanonicalForm {
    pub fn display(&self, f: &Field) -> Vec<String> {
        self.conics.iter().map(|c| c.display(f)).collect()
    }
}

type Key = Vec<[u32; 3]>;

fn conic_key(f: &Field, conics: &[Conic]) -> Key {
    let mut k: Key = conics.iter().map(|c| c.order_key(f)).collect();
    k.sort_unstable();
    k
}

/// Frame map sending `p1 -> e1`, `p2 -> e2`, `n -> e3`.
fn normalizing_frame(f: &Field, p1: ProjPoint, p2: ProjPoint, n: ProjPoint) -> Result<Collineation> {
    Ok(Collineation::from_frame(f, [p1, p2, n])?.inverse(f))
}

/// For a fixed frame, every completion that sends `chosen` to the reference
/// conic; yields the key of the image of `conics` for each.
fn completions(f: &Field, frame: &Collineation, conics: &[GeneralConic], chosen: usize) -> Result<Vec<Key>> {
    let reference = reference_conic(f);
    let src = frame.apply_conic(f, &conics[chosen]).to_adapted(f)?;
    let framed: Vec<GeneralConic> = conics.iter().map(|c| frame.apply_conic(f, c)).collect();
    maps_between(f, &src, &reference)
        .into_iter()
        .map(|s| {
            let imgs: Vec<Conic> =
                framed.iter().map(|c| s.apply_conic(f, c).to_adapted(f)).collect::<Result<_>>()?;
            Ok(conic_key(f, &imgs))
        })
        .collect()
}

fn least(f: &Field, keys: Vec<Key>) -> Result<(Vec<Conic>, u64, u64)> {
    let candidates = keys.len() as u64;
    let best = keys.iter().min().cloned().ok_or_else(|| Error::Structure("no normalizing map".into()))?;
    let attaining = keys.iter().filter(|k| **k == best).count() as u64;
    let conics = best
        .iter()
        .map(|k| Conic::new(f.from_order_key(k[0]), f.from_order_key(k[1]), f.from_order_key(k[2])))
        .collect();
    Ok((conics, attaining, candidates))
}

fn first_other_point(plane: &Plane, line: ProjLine, avoid: ProjPoint) -> ProjPoint {
    plane.points_on_line(line).into_iter().find(|&p| p != avoid).expect("a line has at least 3 points")
}

/// Canonical form of a proper (non-Denniston) Mathon arc of degree 8.
pub fn canonical_form(arc: &MaximalArc) -> Result<CanonicalForm> {
    let plane = arc.plane();
    let f = plane.field();
    let data = infinity_data(arc)?;
    let InfinityKind::Concurrent(center) = data.kind else {
        return Err(Error::Unsupported("canonical_form needs a proper Mathon 8-arc".into()));
    };
    let nucleus = arc.nucleus().ok_or_else(|| Error::Structure("arc has no nucleus".into()))?;
    let jobs: Vec<(usize, usize)> =
        (0..7).flat_map(|s| data.fano.subarcs[s].iter().map(move |&c| (s, c))).collect();
    let keys: Vec<Vec<Key>> = jobs
        .par_iter()
        .map(|&(s, c)| {
            let p = first_other_point(plane, data.lines[s], center);
            let frame = normalizing_frame(f, p, center, nucleus)?;
            completions(f, &frame, &data.fano.conics, c)
        })
        .collect::<Result<_>>()?;
    let (conics, attaining, candidates) = least(f, keys.into_iter().flatten().collect())?;
    Ok(CanonicalForm { conics, attaining, candidates })
}

/// Canonical data of an arc whose conics lie in a single pencil.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DennistonForm {
    /// Canonical subgroup representative, nonzero elements as bit values in exponent order.
    pub subgroup: Vec<u32>,
}

struct PencilFrame {
    nucleus: ProjPoint,
    line: ProjLine,
    /// λ-values after normalizing the pencil to `{F_{α,β,λ}}` with line `z = 0`.
    lambdas: Vec<Elem>,
}

fn pencil_frame(arc: &MaximalArc) -> Result<PencilFrame> {
    let plane = arc.plane();
    let f = plane.field();
    let conics = arc.conics();
    let nucleus = arc.nucleus().ok_or_else(|| Error::Structure("arc has no nucleus".into()))?;
    if conics.len() < 2 {
        return Err(Error::Unsupported("a pencil needs at least two conics".into()));
    }
    let line = infinity_line(plane, &conics[0], &conics[1])?;
    for c in &conics[2..] {
        if infinity_line(plane, &conics[0], c)? != line {
            return Err(Error::Unsupported("conics do not lie in one pencil".into()));
        }
    }
    let pts = plane.points_on_line(line);
    let frame = normalizing_frame(f, pts[0], pts[1], nucleus)?;
    let adapted: Vec<Conic> = conics.iter().map(|c| frame.apply_conic(f, c).to_adapted(f)).collect::<Result<_>>()?;
    if adapted.iter().any(|c| (c.alpha, c.beta) != (adapted[0].alpha, adapted[0].beta)) {
        return Err(Error::Structure("pencil normalization failed".into()));
    }
    Ok(PencilFrame { nucleus, line, lambdas: adapted.iter().map(|c| c.lambda).collect() })
}

/// Canonical form of an arc of Denniston type (all conics in one pencil).
pub fn denniston_canonical_form(arc: &MaximalArc) -> Result<DennistonForm> {
    let f = arc.field();
    let frame = pencil_frame(arc)?;
    crate::arcs::AdditiveSubgroup::from_elements(f, &frame.lambdas)?;
    let subgroup = canonical_subgroup(f, &frame.lambdas).into_iter().map(|e| e.bits()).collect();
    Ok(DennistonForm { subgroup })
}

fn is_denniston_type(arc: &MaximalArc) -> bool {
    arc.conics().len() == 1 || pencil_frame(arc).is_ok()
}

/// Isomorphism of two arcs built from conics: hyperovals, Denniston arcs of
/// any degree, and proper Mathon arcs of degree 8.
pub fn are_isomorphic(a: &MaximalArc, b: &MaximalArc) -> Result<bool> {
    if a.plane() != b.plane() {
        return Err(Error::Unsupported("arcs live in different planes".into()));
    }
    if a.degree() != b.degree() || a.len() != b.len() {
        return Ok(false);
    }
    if a.conics().is_empty() || b.conics().is_empty() {
        return Err(Error::Unsupported("isomorphism test needs the conic decomposition".into()));
    }
    if a.degree() == 2 {
        return Ok(true);
    }
    match (is_denniston_type(a), is_denniston_type(b)) {
        (true, true) => Ok(denniston_canonical_form(a)? == denniston_canonical_form(b)?),
        (false, false) if a.degree() == 8 => Ok(canonical_form(a)? == canonical_form(b)?),
        (false, false) => Err(Error::Unsupported(format!("proper Mathon arcs of degree {}", a.degree()))),
        _ => Ok(false),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismReport {
    pub order: u64,
    pub method: String,
    /// Denniston arcs: pairs (a, l) with a A^(2^l) = A.
    pub field_map_pairs: Option<u64>,
    /// Denniston arcs: |G_A|, counting each field map twice for the
    /// automorphisms of the quadratic extension.
    pub g_a_order: Option<u64>,
    /// Denniston arcs: (q+1)|G_A|.
    pub formula_order: Option<u64>,
    /// Direct count of normalizing maps that fix the arc.
    pub structural_order: Option<u64>,
}

/// Order of the collineation stabilizer of a Denniston or proper Mathon 8-arc.
pub fn automorphism_order(arc: &MaximalArc) -> Result<AutomorphismReport> {
    let plane = arc.plane();
    let f = plane.field();
    if arc.degree() >= 4 && is_denniston_type(arc) {
        let frame = pencil_frame(arc)?;
        let pairs = subgroup_stabilizer_pairs(f, &frame.lambdas);
        let g_a = 2 * pairs;
        let formula = (plane.q() as u64 + 1) * g_a;
        let structural = denniston_structural_count(arc, &frame)?;
        return Ok(AutomorphismReport {
            order: structural,
            method: "pencil normalization count".into(),
            field_map_pairs: Some(pairs),
            g_a_order: Some(g_a),
            formula_order: Some(formula),
            structural_order: Some(structural),
        });
    }
    if arc.degree() == 8 {
        let cf = canonical_form(arc)?;
        return Ok(AutomorphismReport {
            order: cf.attaining,
            method: "canonical form count".into(),
            field_map_pairs: None,
            g_a_order: None,
            formula_order: None,
            structural_order: Some(cf.attaining),
        });
    }
    Err(Error::Unsupported(format!("automorphism order of a degree-{} arc", arc.degree())))
}

/// Counts maps `(p in L -> (0,1,0), conic -> reference)` reaching the least image.
fn denniston_structural_count(arc: &MaximalArc, frame: &PencilFrame) -> Result<u64> {
    let plane = arc.plane();
    let f = plane.field();
    let conics = arc.conics();
    let on_line = plane.points_on_line(frame.line);
    let jobs: Vec<(ProjPoint, usize)> =
        on_line.iter().flat_map(|&p| (0..conics.len()).map(move |c| (p, c))).collect();
    let keys: Vec<Vec<Key>> = jobs
        .par_iter()
        .map(|&(p, c)| {
            let other = first_other_point(plane, frame.line, p);
            let fr = normalizing_frame(f, other, p, frame.nucleus)?;
            completions(f, &fr, conics, c)
        })
        .collect::<Result<_>>()?;
    Ok(least(f, keys.into_iter().flatten().collect())?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{denniston_arc, mathon_exponent_arc, AdditiveSubgroup};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf32() -> (Field, Plane) {
        let f = Field::gf32_distinguished();
        (f.clone(), Plane::new(f).unwrap())
    }

    #[test]
    fn exponent_classes_are_distinct_with_two_automorphisms() {
        let (_, p) = gf32();
        let forms: Vec<CanonicalForm> = [(12, 15, 4), (5, 25, 14), (6, 19, 8)]
            .iter()
            .map(|&klm| canonical_form(&mathon_exponent_arc(&p, klm).unwrap()).unwrap())
            .collect();
        for cf in &forms {
            assert_eq!(cf.candidates, 210);
            assert_eq!(cf.attaining, 2);
        }
        assert_ne!(forms[0], forms[1]);
        assert_ne!(forms[0], forms[2]);
        assert_ne!(forms[1], forms[2]);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let (f, p) = gf32();
        let k = mathon_exponent_arc(&p, (5, 25, 14)).unwrap();
        let base = canonical_form(&k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let g = Collineation::random(&f, &mut rng);
            assert_eq!(canonical_form(&k.transform(&g)).unwrap(), base);
        }
    }

    #[test]
    fn denniston_automorphisms_q32() {
        let (f, p) = gf32();
        let d = denniston_arc(&p, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE, f.generator()])).unwrap();
        let r = automorphism_order(&d).unwrap();
        assert_eq!(r.g_a_order, Some(2));
        assert_eq!(r.formula_order, Some(66));
        assert_eq!(r.structural_order, Some(66));
    }

    #[test]
    fn denniston_arcs_q32_are_isomorphic() {
        let (f, p) = gf32();
        let a = denniston_arc(&p, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE, f.generator()])).unwrap();
        let b = denniston_arc(&p, f.exp(3), &AdditiveSubgroup::span(&[f.exp(4), f.exp(20)])).unwrap();
        assert!(are_isomorphic(&a, &b).unwrap());
    }
}
