//! The Fano-plane structure of degree-8 Mathon arcs, their lines at
//! infinity, and the elation fixing a proper one.

use super::MaximalArc;
use crate::collineation::{Collineation, Mat3};
use crate::conic::{compose_general, infinity_line, GeneralConic};
use crate::error::{Error, Result};
use crate::plane::{ProjLine, ProjPoint};

/// Seven conics (PG(2,2) points) and the seven degree-4 subarcs (PG(2,2) lines).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoStructure {
    pub conics: Vec<GeneralConic>,
    /// Sorted index triples `{i, j, k}` with `C_k = C_i ⊕ C_j`.
    pub subarcs: Vec<[usize; 3]>,
}

impl FanoStructure {
    /// Subarcs containing conic `i`.
    pub fn subarcs_through(&self, i: usize) -> impl Iterator<Item = &[usize; 3]> {
        self.subarcs.iter().filter(move |t| t.contains(&i))
    }

    fn check_fano(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Structure(format!("subarc incidence is not PG(2,2): {m}")));
        if self.subarcs.len() != 7 {
            return bad("expected 7 subarcs");
        }
        for i in 0..7 {
            for j in i + 1..7 {
                let n = self.subarcs.iter().filter(|t| t.contains(&i) && t.contains(&j)).count();
                if n != 1 {
                    return bad("two conics must lie in exactly one subarc");
                }
                let (a, b) = (&self.subarcs[i], &self.subarcs[j]);
                if a.iter().filter(|x| b.contains(x)).count() != 1 {
                    return bad("two subarcs must share exactly one conic");
                }
            }
        }
        Ok(())
    }
}

/// The seven degree-4 Denniston subarcs of a degree-8 arc built from 7 conics.
pub fn fano_decomposition(arc: &MaximalArc) -> Result<FanoStructure> {
    let f = arc.field();
    let conics = arc.conics().to_vec();
    if arc.degree() != 8 || conics.len() != 7 {
        return Err(Error::Structure("fano decomposition needs a degree-8 arc with 7 conics".into()));
    }
    let mut subarcs = Vec::new();
    for i in 0..7 {
        for j in i + 1..7 {
            let e = compose_general(f, &conics[i], &conics[j])?;
            let k = conics
                .iter()
                .position(|c| *c == e)
                .ok_or_else(|| Error::Structure(format!("composite of conics {i} and {j} is not in the arc")))?;
            let mut t = [i, j, k];
            t.sort();
            if !subarcs.contains(&t) {
                subarcs.push(t);
            }
        }
    }
    subarcs.sort();
    let fano = FanoStructure { conics, subarcs };
    fano.check_fano()?;
    Ok(fano)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfinityKind {
    /// All seven subarcs share one line at infinity.
    Denniston(ProjLine),
    /// Seven distinct lines through a common point.
    Concurrent(ProjPoint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityData {
    pub fano: FanoStructure,
    /// Line at infinity of each subarc, in the order of `fano.subarcs`.
    pub lines: Vec<ProjLine>,
    pub kind: InfinityKind,
}

/// Lines at infinity of the seven subarcs and their common point.
pub fn infinity_data(arc: &MaximalArc) -> Result<InfinityData> {
    let plane = arc.plane();
    let fano = fano_decomposition(arc)?;
    let mut lines = Vec::with_capacity(7);
    for &[i, j, k] in &fano.subarcs {
        let c = &fano.conics;
        let l = infinity_line(plane, &c[i], &c[j])?;
        if infinity_line(plane, &c[i], &c[k])? != l {
            return Err(Error::Structure("subarc conics do not share a line at infinity".into()));
        }
        lines.push(l);
    }
    let kind = if lines.iter().all(|&l| l == lines[0]) {
        InfinityKind::Denniston(lines[0])
    } else {
        let mut sorted: Vec<u32> = lines.iter().map(|&l| plane.line_index(l)).collect();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != 7 {
            return Err(Error::Structure("lines at infinity are neither equal nor distinct".into()));
        }
        let c = plane.meet(lines[0], lines[1])?;
        if !lines.iter().all(|&l| plane.incident(c, l)) {
            return Err(Error::Structure("lines at infinity are not concurrent".into()));
        }
        InfinityKind::Concurrent(c)
    };
    Ok(InfinityData { fano, lines, kind })
}

/// The involutory elation with center the concurrency point `c` and axis
/// the line through the nucleus and `c`, which fixes every conic of a
/// proper Mathon 8-arc.
pub fn elation_involution(arc: &MaximalArc) -> Result<Collineation> {
    let plane = arc.plane();
    let f = plane.field();
    let data = infinity_data(arc)?;
    let InfinityKind::Concurrent(center) = data.kind else {
        return Err(Error::Structure("arc is of Denniston type".into()));
    };
    let nucleus = arc.nucleus().ok_or_else(|| Error::Structure("arc has no nucleus".into()))?;
    let axis = plane.join(nucleus, center)?.coords();
    let c = center.coords();
    // polar form B(x, c) = sum of the partial derivatives at c, a multiple ρ of the axis
    let [_, _, _, d, e, g] = data.fano.conics[0].coeffs();
    let polar = [f.mul(d, c[1]) + f.mul(g, c[2]), f.mul(d, c[0]) + f.mul(e, c[2]), f.mul(e, c[1]) + f.mul(g, c[0])];
    let pivot = (0..3).find(|&i| !axis[i].is_zero()).expect("nonzero line");
    let rho = f.div(polar[pivot], axis[pivot])?;
    let qc = data.fano.conics[0].eval(f, c);
    let mu = f.div(rho, qc)?;
    let mut m = Mat3::IDENTITY.0;
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry += f.mul(mu, f.mul(c[i], axis[j]));
        }
    }
    let g = Collineation::linear(f, Mat3(m))?;
    for conic in &data.fano.conics {
        if g.apply_conic(f, conic) != *conic {
            return Err(Error::Structure("elation does not fix every conic".into()));
        }
    }
    Ok(g)
}
