//! Maximal arcs: Denniston arcs from additive subgroups, Mathon arcs from
//! closed conic sets, synthetic extension, duality and the Fano structure of
//! degree-8 arcs.

mod extend;
mod structure;
mod verify;

use std::collections::HashMap;
use std::fmt;

use crate::collineation::Collineation;
use crate::conic::{compose, Conic, GeneralConic};
use crate::error::{Error, Result};
use crate::field::{linalg, Elem, Field};
use crate::plane::{Plane, PointSet, ProjPoint};

pub use extend::extend_by_conic;
pub use structure::{elation_involution, fano_decomposition, infinity_data, FanoStructure, InfinityData, InfinityKind};
pub use verify::{
    dual_arc, find_external_line, line_counts, secant_census, verify_maximal_arc, ArcDefect, ArcStats, SecantCensus,
};

/// A GF(2)-subspace of GF(q), stored with 0 included.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdditiveSubgroup {
    elements: Vec<Elem>,
    basis: Vec<Elem>,
}

impl AdditiveSubgroup {
    /// Checks closure under addition; 0 is added if missing.
    pub fn from_elements(f: &Field, elems: &[Elem]) -> Result<AdditiveSubgroup> {
        let mut set: Vec<Elem> = elems.to_vec();
        set.push(Elem::ZERO);
        set.sort();
        set.dedup();
        let basis = independent_basis(&set);
        if 1usize << basis.len() != set.len() {
            let shown: Vec<String> = set.iter().map(|&x| f.format(x)).collect();
            return Err(Error::NotAdditivelyClosed(format!("{{{}}}", shown.join(", "))));
        }
        Ok(AdditiveSubgroup { elements: set, basis })
    }

    /// The span of the given elements.
    pub fn span(elems: &[Elem]) -> AdditiveSubgroup {
        let basis = independent_basis(elems);
        let raw: Vec<u64> = basis.iter().map(|e| e.bits() as u64).collect();
        let mut elements: Vec<Elem> = linalg::span(&raw).into_iter().map(|b| Elem::from_bits(b as u32)).collect();
        elements.sort();
        AdditiveSubgroup { elements, basis }
    }

    /// Elements in bit order, including 0.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements.iter().copied().filter(|x| !x.is_zero())
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

fn independent_basis(elems: &[Elem]) -> Vec<Elem> {
    let mut rows: Vec<u64> = Vec::new();
    let mut basis = Vec::new();
    for &e in elems {
        let mut candidate = rows.clone();
        candidate.push(e.bits() as u64);
        if linalg::rank(&candidate, 32) > rows.len() {
            rows = candidate;
            basis.push(e);
        }
    }
    basis
}

/// A maximal arc with its materialized point set and, when known, the
/// conics and nucleus it was built from.
#[derive(Clone, Debug)]
pub struct MaximalArc {
    plane: Plane,
    degree: u32,
    nucleus: Option<ProjPoint>,
    conics: Vec<GeneralConic>,
    points: PointSet,
}

impl PartialEq for MaximalArc {
    fn eq(&self, other: &Self) -> bool {
        self.plane == other.plane && self.points == other.points
    }
}

impl MaximalArc {
    /// Nucleus together with the points of every conic.
    pub fn from_conics(plane: &Plane, nucleus: ProjPoint, conics: Vec<GeneralConic>) -> Result<MaximalArc> {
        let mut points = PointSet::empty(plane);
        points.insert(plane.point_index(nucleus));
        for c in &conics {
            let s = c.point_set(plane)?;
            if !points.is_disjoint(&s) {
                return Err(Error::ConicIntersects(c.display(plane.field())));
            }
            points.union_with(&s);
        }
        Ok(MaximalArc { plane: plane.clone(), degree: conics.len() as u32 + 1, nucleus: Some(nucleus), conics, points })
    }

    /// A bare point set; the degree is read off the size `q(d-1)+d`.
    pub fn from_points(plane: &Plane, points: PointSet) -> Result<MaximalArc> {
        let q = plane.q() as usize;
        let n = points.len();
        if n == 0 || !(n + q).is_multiple_of(q + 1) {
            return Err(Error::NotMaximalArc(format!("{n} points is not of the form q(d-1)+d")));
        }
        let degree = ((n + q) / (q + 1)) as u32;
        Ok(MaximalArc { plane: plane.clone(), degree, nucleus: None, conics: Vec::new(), points })
    }

    pub fn plane(&self) -> &Plane {
        &self.plane
    }

    pub fn field(&self) -> &Field {
        self.plane.field()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nucleus(&self) -> Option<ProjPoint> {
        self.nucleus
    }

    pub fn conics(&self) -> &[GeneralConic] {
        &self.conics
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The conics as triples when all of them have nucleus `(0,0,1)`.
    pub fn adapted_conics(&self) -> Option<Vec<Conic>> {
        self.conics.iter().map(|c| c.to_adapted(self.field()).ok()).collect()
    }

    /// Image under a collineation.
    pub fn transform(&self, g: &Collineation) -> MaximalArc {
        let f = self.field();
        let points = PointSet::from_points(
            &self.plane,
            self.points.iter().map(|i| g.apply_point(&self.plane, self.plane.point_at(i))),
        );
        MaximalArc {
            plane: self.plane.clone(),
            degree: self.degree,
            nucleus: self.nucleus.map(|n| g.apply_point(&self.plane, n)),
            conics: self.conics.iter().map(|c| g.apply_conic(f, c)).collect(),
            points,
        }
    }
}

/// Why a conic list fails to be a closed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureViolation {
    Empty,
    /// Member `index` has λ = 0 or Tr(αβ) = 0.
    NotAdmissible { index: usize },
    /// Two members share λ.
    SharedLambda { first: usize, second: usize },
    /// The composite of two members is missing from the set.
    MissingComposite { first: usize, second: usize, composite: Conic },
}

impl ClosureViolation {
    pub fn describe(&self, f: &Field) -> String {
        match self {
            ClosureViolation::Empty => "empty conic set".into(),
            ClosureViolation::NotAdmissible { index } => format!("conic #{index} violates Tr(alpha*beta) = 1"),
            ClosureViolation::SharedLambda { first, second } => format!("conics #{first} and #{second} share lambda"),
            ClosureViolation::MissingComposite { first, second, composite } => {
                format!("#{first} + #{second} = ({}) is missing", composite.display(f))
            }
        }
    }
}

impl fmt::Display for ClosureViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self:?}")
    }
}

/// Checks admissibility of every member and closure under ⊕.
pub fn closed_set_check(f: &Field, conics: &[Conic]) -> std::result::Result<(), ClosureViolation> {
    if conics.is_empty() {
        return Err(ClosureViolation::Empty);
    }
    let mut by_lambda: HashMap<Elem, usize> = HashMap::new();
    for (i, c) in conics.iter().enumerate() {
        if !c.is_admissible(f) {
            return Err(ClosureViolation::NotAdmissible { index: i });
        }
        if let Some(&j) = by_lambda.get(&c.lambda) {
            return Err(ClosureViolation::SharedLambda { first: j, second: i });
        }
        by_lambda.insert(c.lambda, i);
    }
    for i in 0..conics.len() {
        for j in i + 1..conics.len() {
            let e = compose(f, &conics[i], &conics[j]).expect("distinct lambdas");
            if by_lambda.get(&e.lambda).map(|&k| conics[k]) != Some(e) {
                return Err(ClosureViolation::MissingComposite { first: i, second: j, composite: e });
            }
        }
    }
    Ok(())
}

fn origin(plane: &Plane) -> ProjPoint {
    plane.point_bits(0, 0, 1).expect("valid point")
}

/// Mathon's arc: nucleus `(0,0,1)` plus the conics of a closed set.
pub fn mathon_arc(plane: &Plane, conics: &[Conic]) -> Result<MaximalArc> {
    let f = plane.field();
    closed_set_check(f, conics).map_err(|v| Error::NotClosed(v.describe(f)))?;
    MaximalArc::from_conics(plane, origin(plane), conics.iter().map(Conic::to_general).collect())
}

/// Denniston's arc `{F_{α,1,λ} : λ ∈ A*}`, of degree |A|.
pub fn denniston_arc(plane: &Plane, alpha: Elem, subgroup: &AdditiveSubgroup) -> Result<MaximalArc> {
    let f = plane.field();
    if f.trace(alpha) != 1 {
        return Err(Error::TraceCondition(format!("Tr({}) = 0", f.show(alpha))));
    }
    if subgroup.len() < 2 {
        return Err(Error::NotAdditivelyClosed("subgroup has no nonzero element".into()));
    }
    let conics: Vec<Conic> = subgroup.nonzero().map(|l| Conic::new(alpha, Elem::ONE, l)).collect();
    mathon_arc(plane, &conics)
}

/// The conics `x² + xy + (w^k + w^l λ + w^m λ³) y² + λ z²` for λ in a subgroup.
pub fn mathon_exponent_conics(f: &Field, klm: (i64, i64, i64), subgroup: &AdditiveSubgroup) -> Vec<Conic> {
    let (k, l, m) = klm;
    let (wk, wl, wm) = (f.exp(k), f.exp(l), f.exp(m));
    subgroup
        .nonzero()
        .map(|lam| {
            let beta = wk + f.mul(wl, lam) + f.mul(wm, f.pow(lam, 3));
            Conic::new(Elem::ONE, beta, lam)
        })
        .collect()
}

/// The subgroup `<1, w, w^9>` used by the GF(32) exponent family.
pub fn exponent_family_subgroup(f: &Field) -> AdditiveSubgroup {
    AdditiveSubgroup::span(&[Elem::ONE, f.exp(1), f.exp(9)])
}

/// Mathon's exponent-family arc over `<1, w, w^9>`.
pub fn mathon_exponent_arc(plane: &Plane, klm: (i64, i64, i64)) -> Result<MaximalArc> {
    let f = plane.field();
    mathon_arc(plane, &mathon_exponent_conics(f, klm, &exponent_family_subgroup(f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf32() -> (Field, Plane) {
        let f = Field::gf32_distinguished();
        (f.clone(), Plane::new(f).unwrap())
    }

    #[test]
    fn subgroup_closure() {
        let (f, _) = gf32();
        let w = f.generator();
        let a = AdditiveSubgroup::from_elements(&f, &[Elem::ZERO, Elem::ONE, w, w + Elem::ONE]).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a.basis().len(), 2);
        assert!(matches!(
            AdditiveSubgroup::from_elements(&f, &[Elem::ONE, w]),
            Err(Error::NotAdditivelyClosed(_))
        ));
        assert_eq!(AdditiveSubgroup::span(&[Elem::ONE, w, f.exp(9)]).len(), 8);
    }

    #[test]
    fn denniston_d1_has_100_points() {
        let (f, p) = gf32();
        let a = AdditiveSubgroup::span(&[Elem::ONE, f.generator()]);
        let arc = denniston_arc(&p, Elem::ONE, &a).unwrap();
        assert_eq!(arc.degree(), 4);
        assert_eq!(arc.len(), 100);
    }

    #[test]
    fn two_element_subgroup_gives_hyperoval() {
        let (f, p) = gf32();
        let arc = denniston_arc(&p, Elem::ONE, &AdditiveSubgroup::span(&[f.exp(7)])).unwrap();
        assert_eq!((arc.degree(), arc.len()), (2, 34));
    }

    #[test]
    fn closure_witnesses() {
        let (f, _) = gf32();
        let a = AdditiveSubgroup::span(&[Elem::ONE, f.exp(1), f.exp(9)]);
        let mut conics: Vec<Conic> = a.nonzero().map(Conic::standard).collect();
        assert_eq!(closed_set_check(&f, &conics), Ok(()));
        let removed = conics.remove(3);
        match closed_set_check(&f, &conics) {
            Err(ClosureViolation::MissingComposite { composite, .. }) => assert_eq!(composite, removed),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(closed_set_check(&f, &[Conic::standard(f.exp(4))]), Ok(()));
    }

    #[test]
    fn exponent_family_is_closed() {
        let (f, p) = gf32();
        for klm in [(12, 15, 4), (5, 25, 14), (6, 19, 8)] {
            let arc = mathon_exponent_arc(&p, klm).unwrap();
            assert_eq!((arc.degree(), arc.len()), (8, 232));
            assert!(arc.adapted_conics().is_some());
        }
        let _ = f;
    }
}
