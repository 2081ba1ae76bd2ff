//! Extension of a Mathon arc of degree d by a disjoint conic to degree 2d.

use super::{closed_set_check, find_external_line, verify_maximal_arc, MaximalArc};
use crate::collineation::Collineation;
use crate::conic::{compose, trace_disjoint, Conic, GeneralConic};
use crate::error::{Error, Result};

/// The unique degree-2d Mathon arc containing `arc` and `conic`.
///
/// The plane is recoordinatized so that the nucleus is `(0,0,1)` and a line
/// external to `arc ∪ conic` is `z = 0`; in that frame every conic is an
/// admissible triple, disjointness is the trace criterion, and the new
/// conics are the composites `C_i ⊕ C`.
pub fn extend_by_conic(arc: &MaximalArc, conic: &GeneralConic) -> Result<MaximalArc> {
    let plane = arc.plane();
    let f = plane.field();
    let nucleus = arc
        .nucleus()
        .filter(|_| !arc.conics().is_empty())
        .ok_or_else(|| Error::Unsupported("extension needs an arc built from conics".into()))?;
    if conic.nucleus(f)? != nucleus {
        return Err(Error::NoCommonNucleus);
    }
    let d = arc.degree();
    if 2 * d >= plane.q() {
        return Err(Error::DegreeTooLarge { degree: d, q: plane.q() });
    }
    let cpts = conic.point_set(plane)?;
    if !arc.points().is_disjoint(&cpts) {
        return Err(Error::ConicIntersects(format!(
            "{} shares {} points with the arc",
            conic.display(f),
            arc.points().intersection_len(&cpts)
        )));
    }
    let line = find_external_line(plane, arc.points(), &cpts)?;
    let on_line = plane.points_on_line(line);
    let frame = Collineation::from_frame(f, [on_line[0], on_line[1], nucleus])?;
    let to_std = frame.inverse(f);
    let adapt = |c: &GeneralConic| to_std.apply_conic(f, c).to_adapted(f);
    let old: Vec<Conic> = arc.conics().iter().map(adapt).collect::<Result<_>>()?;
    let new = adapt(conic)?;
    let mut all = old.clone();
    all.push(new);
    for c in &old {
        if !trace_disjoint(f, c, &new)? {
            return Err(Error::ConicIntersects(format!("trace criterion fails for {}", c.display(f))));
        }
        all.push(compose(f, c, &new)?);
    }
    closed_set_check(f, &all).map_err(|v| Error::NotClosed(v.describe(f)))?;
    let conics: Vec<GeneralConic> = all.iter().map(|c| frame.apply_conic(f, &c.to_general())).collect();
    let out = MaximalArc::from_conics(plane, nucleus, conics)?;
    verify_maximal_arc(plane, out.points())?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{denniston_arc, mathon_arc, AdditiveSubgroup};
    use crate::field::{Elem, Field};
    use crate::plane::Plane;

    #[test]
    fn d1_plus_normalized_theta_conic_gives_the_reference_arc() {
        let f = Field::gf32_distinguished();
        let p = Plane::new(f.clone()).unwrap();
        let d1 = denniston_arc(&p, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE, f.generator()])).unwrap();
        let c = Conic::new(Elem::ONE, f.exp(12), f.exp(25));
        let k = extend_by_conic(&d1, &c.to_general()).unwrap();
        let mut got = k.adapted_conics().unwrap();
        got.sort();
        let mut expected = vec![
            Conic::standard(Elem::ONE),
            Conic::standard(f.exp(1)),
            Conic::standard(f.exp(18)),
            c,
            Conic::new(Elem::ONE, f.exp(6), f.exp(21)),
            Conic::new(Elem::ONE, f.exp(18), f.exp(16)),
            Conic::new(Elem::ONE, f.exp(20), f.exp(9)),
        ];
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(k, mathon_arc(&p, &expected).unwrap());
    }

    #[test]
    fn hyperoval_plus_pencil_conic_is_denniston() {
        let f = Field::gf32_distinguished();
        let p = Plane::new(f.clone()).unwrap();
        let h = denniston_arc(&p, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE])).unwrap();
        let k = extend_by_conic(&h, &Conic::standard(f.exp(5)).to_general()).unwrap();
        let a = AdditiveSubgroup::span(&[Elem::ONE, f.exp(5)]);
        assert_eq!(k, denniston_arc(&p, Elem::ONE, &a).unwrap());
    }

    #[test]
    fn rejects_intersecting_and_oversized() {
        let f = Field::new(3).unwrap();
        let p = Plane::new(f.clone()).unwrap();
        let d = denniston_arc(&p, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE, f.generator()])).unwrap();
        let c = Conic::standard(f.exp(3)).to_general();
        assert!(matches!(extend_by_conic(&d, &c), Err(Error::DegreeTooLarge { .. })));
        let f5 = Field::gf32_distinguished();
        let p5 = Plane::new(f5.clone()).unwrap();
        let d5 = denniston_arc(&p5, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE])).unwrap();
        let meets = Conic::new(Elem::ONE, f5.exp(3), Elem::ONE).to_general();
        assert!(matches!(extend_by_conic(&d5, &meets), Err(Error::ConicIntersects(_))));
    }
}
