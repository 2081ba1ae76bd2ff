//! Trace-condition solving, the census of conics disjoint from a degree-4
//! Denniston arc, and the resulting classifications.

mod classify;
pub mod formulas;
mod report;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::collineation::theta;
use crate::conic::{compose, Conic};
use crate::error::{Error, Result};
use crate::field::{linalg, Elem, Field};

pub use classify::{
    arc_from_conics, classify_arcs, classify_denniston4, classify_mathon8, count_pencil_4arcs, Denniston4Classification, Mathon8Class,
    Mathon8Classification,
};
pub use report::{reproduce_pg32_report, t_table_csv, CellCount, CensusReport, ClassEntry, GoldenMismatch, TTableRow};

/// Which conic of `D = {C_1, C_k, C_{k+1}}` the map θ sends onto `C_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaCase {
    SendsKPlusOne,
    SendsK,
    FixesOne,
}

impl ThetaCase {
    pub const ALL: [ThetaCase; 3] = [ThetaCase::SendsKPlusOne, ThetaCase::SendsK, ThetaCase::FixesOne];

    /// The λ of the conic sent onto `C_1`.
    pub fn lambda(self, k: Elem) -> Elem {
        match self {
            ThetaCase::SendsKPlusOne => k + Elem::ONE,
            ThetaCase::SendsK => k,
            ThetaCase::FixesOne => Elem::ONE,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ThetaCase::SendsKPlusOne => "C_{k+1} -> C_1",
            ThetaCase::SendsK => "C_k -> C_1",
            ThetaCase::FixesOne => "C_1 -> C_1",
        }
    }
}

/// Which coefficients to use for the trace conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceForm {
    /// Conditions equivalent to disjointness of the image conics from D.
    Disjointness,
    /// The conditions behind the reference `C_1 -> C_1` table, with denominators
    /// `m + k^σ` in place of `(k^σ + m) / k^σ`. Identical to `Disjointness`
    /// in the two other cases.
    Tabulated,
}

/// Two GF(2)-linear conditions `Tr(φ_i t) = 0` on the parameter `t` of θ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceConditionSystem {
    pub k: Elem,
    pub case: ThetaCase,
    pub frob: u32,
    pub form: TraceForm,
    /// `φ_i = A_i + √B_i` where the condition reads `Tr(A_i t + B_i t^2) = 0`.
    pub functionals: [Elem; 2],
    /// θ_t and θ_{t+shift} give the same image arc.
    pub shift: Elem,
}

impl TraceConditionSystem {
    pub fn new(f: &Field, k: Elem, case: ThetaCase, frob: u32, form: TraceForm) -> Result<Self> {
        if k.is_zero() || k == Elem::ONE {
            return Err(Error::DegenerateTraceSystem(format!("k = {} does not give three conics", f.format(k))));
        }
        let frob = frob % f.degree();
        let degenerate = || Error::DegenerateTraceSystem(format!("zero denominator at σ = 2^{frob}"));
        // Tr(c t (s + t)) = Tr((c s + √c) t)
        let linearize = |c: Elem, s: Elem| f.mul(c, s) + f.sqrt(c);
        let (functionals, shift) = match case {
            ThetaCase::SendsK | ThetaCase::SendsKPlusOne => {
                let s = f.inv(f.frobenius(f.sqrt(case.lambda(k)), frob))?;
                let big_l = f.square(s);
                let c1 = f.div(Elem::ONE + k, big_l + k).map_err(|_| degenerate())?;
                let c2 = f.div(k, big_l + k + Elem::ONE).map_err(|_| degenerate())?;
                ([linearize(c1, s), linearize(c2, s)], s)
            }
            ThetaCase::FixesOne => {
                if frob == 0 {
                    return Err(Error::DegenerateTraceSystem(
                        "σ = identity fixes the x-axis pointwise, so C_1 cannot stay fixed".into(),
                    ));
                }
                let ks = f.frobenius(k, frob);
                let mut phi = [Elem::ZERO; 2];
                for (slot, m) in phi.iter_mut().zip([k, k + Elem::ONE]) {
                    let den = ks + m;
                    let c = match form {
                        TraceForm::Disjointness => f.div(f.mul(ks, Elem::ONE + m), den),
                        TraceForm::Tabulated => f.div(Elem::ONE + m, den),
                    }
                    .map_err(|_| degenerate())?;
                    *slot = linearize(c, Elem::ONE);
                }
                (phi, Elem::ONE)
            }
        };
        if functionals[0] == functionals[1] || functionals.iter().any(|x| x.is_zero()) {
            return Err(Error::DegenerateTraceSystem("the two hyperplanes are not distinct".into()));
        }
        Ok(TraceConditionSystem { k, case, frob, form, functionals, shift })
    }

    /// All solutions, ordered by exponent.
    pub fn solve(&self, f: &Field) -> Vec<Elem> {
        let rows = self.functionals.map(|c| f.trace_functional(c));
        let basis = linalg::kernel(&rows, f.degree());
        let mut out: Vec<Elem> = linalg::span(&basis).into_iter().map(|v| Elem::from_bits(v as u32)).collect();
        out.sort_by_key(|&x| f.order_key(x));
        out
    }
}

/// The t-values for which θ maps `D` onto a degree-4 arc through `C_1`
/// whose two other conics are disjoint from `D`.
pub fn solve_t_values(f: &Field, k: Elem, case: ThetaCase, frob: u32, form: TraceForm) -> Result<Vec<Elem>> {
    Ok(TraceConditionSystem::new(f, k, case, frob, form)?.solve(f))
}

/// Matches `t` with `t + shift`, keeping the order in which values first appear.
pub fn pair_t_values(ts: &[Elem], shift: Elem) -> Result<Vec<(Elem, Elem)>> {
    let set: BTreeSet<Elem> = ts.iter().copied().collect();
    let mut used = BTreeSet::new();
    let mut pairs = Vec::with_capacity(ts.len() / 2);
    for &t in ts {
        if used.contains(&t) {
            continue;
        }
        let partner = t + shift;
        if partner == t || !set.contains(&partner) || used.contains(&partner) {
            return Err(Error::Structure("t-value without a partner".into()));
        }
        used.insert(t);
        used.insert(partner);
        pairs.push((t, partner));
    }
    Ok(pairs)
}

/// The standard-pencil conics `C_1, C_k, C_{k+1}`.
pub fn base_arc_conics(f: &Field, k: Elem) -> [Conic; 3] {
    let alpha = crate::collineation::reference_conic(f).alpha;
    [Elem::ONE, k, k + Elem::ONE].map(|l| Conic::new(alpha, Elem::ONE, l))
}

/// Images under θ of the two conics of D other than the one sent to `C_1`.
pub fn extension_conics(f: &Field, k: Elem, case: ThetaCase, frob: u32, t: Elem) -> Result<[Conic; 2]> {
    let lambda = case.lambda(k);
    let g = theta(f, lambda, t, frob)?;
    let others: Vec<Conic> = base_arc_conics(f, k).into_iter().filter(|c| c.lambda != lambda).collect();
    Ok([g.apply_adapted(f, &others[0])?, g.apply_adapted(f, &others[1])?])
}

/// One `(case, σ)` cell of the census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusCell {
    pub case: ThetaCase,
    pub frob: u32,
    pub t_values: Vec<Elem>,
    pub pairs: Vec<(Elem, Elem)>,
    /// Conics from the pair whose arc stays in the pencil of D.
    pub d_conics: Vec<Conic>,
    pub m_conics: Vec<Conic>,
    /// Number of pairs giving a Denniston-type extension.
    pub denniston_pairs: usize,
}

/// Conics with nucleus `(0,0,1)` disjoint from `D = {C_1, C_k, C_{k+1}}`
/// reached by the θ family, split by the type of 8-arc they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicCensus {
    pub k: Elem,
    pub cells: Vec<CensusCell>,
    pub d_conics: BTreeSet<Conic>,
    pub m_conics: BTreeSet<Conic>,
    /// Conics produced by two different pairs or cells. Expected empty.
    pub duplicates: Vec<Conic>,
}

fn census_cell(f: &Field, k: Elem, case: ThetaCase, frob: u32) -> Result<CensusCell> {
    let system = TraceConditionSystem::new(f, k, case, frob, TraceForm::Disjointness)?;
    let t_values = system.solve(f);
    let pairs = pair_t_values(&t_values, system.shift)?;
    let pencil = base_arc_conics(f, k)[0];
    let mut cell = CensusCell {
        case,
        frob,
        t_values,
        pairs: pairs.clone(),
        d_conics: Vec::new(),
        m_conics: Vec::new(),
        denniston_pairs: 0,
    };
    for (a, b) in pairs {
        let mut ca = extension_conics(f, k, case, frob, a)?;
        let mut cb = extension_conics(f, k, case, frob, b)?;
        ca.sort();
        cb.sort();
        if ca != cb {
            return Err(Error::Structure(format!("t = {} and t = {} give different arcs", f.format(a), f.format(b))));
        }
        if ca.iter().all(|c| c.alpha == pencil.alpha && c.beta == pencil.beta) {
            cell.denniston_pairs += 1;
            cell.d_conics.extend(ca);
        } else {
            cell.m_conics.extend(ca);
        }
    }
    Ok(cell)
}

/// Runs every `(case, σ)` cell for `D = {C_1, C_k, C_{k+1}}`.
pub fn disjoint_conic_census(f: &Field, k: Elem) -> Result<ConicCensus> {
    if f.trace(Elem::ONE) != 1 {
        return Err(Error::Unsupported("the census needs an odd extension degree".into()));
    }
    let jobs: Vec<(ThetaCase, u32)> = ThetaCase::ALL
        .iter()
        .flat_map(|&c| (0..f.degree()).map(move |l| (c, l)))
        .filter(|&(c, l)| !(c == ThetaCase::FixesOne && l == 0))
        .collect();
    let cells: Vec<CensusCell> = jobs.par_iter().map(|&(c, l)| census_cell(f, k, c, l)).collect::<Result<_>>()?;
    let mut origin: BTreeMap<Conic, (usize, usize)> = BTreeMap::new();
    let mut duplicates = Vec::new();
    let (mut d_conics, mut m_conics) = (BTreeSet::new(), BTreeSet::new());
    for (ci, cell) in cells.iter().enumerate() {
        for (j, c) in cell.d_conics.iter().chain(&cell.m_conics).enumerate() {
            // two conics per pair
            let tag = (ci, j / 2);
            if let Some(prev) = origin.insert(*c, tag) {
                if prev != tag {
                    duplicates.push(*c);
                }
            }
        }
        d_conics.extend(cell.d_conics.iter().copied());
        m_conics.extend(cell.m_conics.iter().copied());
    }
    Ok(ConicCensus { k, cells, d_conics, m_conics, duplicates })
}

impl ConicCensus {
    /// The proper Mathon 8-arcs containing D, one sorted conic list each.
    pub fn mathon_arcs(&self, f: &Field) -> Result<Vec<Vec<Conic>>> {
        let base = base_arc_conics(f, self.k);
        let mut arcs = BTreeSet::new();
        for c in &self.m_conics {
            let mut conics: Vec<Conic> = base.to_vec();
            conics.push(*c);
            for d in &base {
                conics.push(compose(f, d, c)?);
            }
            conics.sort();
            arcs.insert(conics);
        }
        Ok(arcs.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::Plane;

    fn gf32() -> (Field, Elem) {
        let f = Field::gf32_distinguished();
        let w = f.generator();
        (f, w)
    }

    fn keys(f: &Field, xs: &[Elem]) -> BTreeSet<u32> {
        xs.iter().map(|&x| f.order_key(x)).collect()
    }

    fn exps(f: &Field, e: &[i64]) -> BTreeSet<u32> {
        e.iter().map(|&k| if k < 0 { 0 } else { f.order_key(f.exp(k)) }).collect()
    }

    #[test]
    fn first_table_sigma_one_and_pairs() {
        let (f, w) = gf32();
        let ts = solve_t_values(&f, w, ThetaCase::SendsKPlusOne, 0, TraceForm::Disjointness).unwrap();
        assert_eq!(keys(&f, &ts), exps(&f, &[-1, 8, 22, 21, 11, 30, 6, 15]));
        let shift = TraceConditionSystem::new(&f, w, ThetaCase::SendsKPlusOne, 0, TraceForm::Disjointness)
            .unwrap()
            .shift;
        let pairs: BTreeSet<BTreeSet<u32>> =
            pair_t_values(&ts, shift).unwrap().iter().map(|&(a, b)| keys(&f, &[a, b])).collect();
        let expected: BTreeSet<BTreeSet<u32>> = [[-1, 22], [8, 21], [11, 30], [6, 15]]
            .iter()
            .map(|p| exps(&f, p))
            .collect();
        assert_eq!(pairs, expected);
    }

    #[test]
    fn trace_systems_match_point_set_disjointness() {
        let (f, w) = gf32();
        let p = Plane::new(f.clone()).unwrap();
        let base: Vec<_> = base_arc_conics(&f, w).iter().map(|c| c.point_set(&p).unwrap()).collect();
        for case in ThetaCase::ALL {
            for l in 0..5 {
                if case == ThetaCase::FixesOne && l == 0 {
                    continue;
                }
                let solved: BTreeSet<Elem> =
                    solve_t_values(&f, w, case, l, TraceForm::Disjointness).unwrap().into_iter().collect();
                let oracle: BTreeSet<Elem> = f
                    .elements()
                    .filter(|&t| {
                        extension_conics(&f, w, case, l, t).unwrap().iter().all(|c| {
                            let pts = c.point_set(&p).unwrap();
                            base.iter().all(|b| b.is_disjoint(&pts))
                        })
                    })
                    .collect();
                assert_eq!(solved, oracle, "{case:?} σ=2^{l}");
            }
        }
    }

    #[test]
    fn identity_sigma_rejected_when_c1_is_fixed() {
        let (f, w) = gf32();
        assert!(solve_t_values(&f, w, ThetaCase::FixesOne, 0, TraceForm::Disjointness).is_err());
        assert!(solve_t_values(&f, Elem::ONE, ThetaCase::SendsK, 1, TraceForm::Disjointness).is_err());
    }

    #[test]
    fn census_counts_q32() {
        let (f, w) = gf32();
        let c = disjoint_conic_census(&f, w).unwrap();
        assert_eq!(c.cells.len(), 14);
        assert_eq!(c.d_conics.len(), 28);
        assert_eq!(c.m_conics.len(), 84);
        assert!(c.duplicates.is_empty());
        assert!(c.cells.iter().all(|x| x.denniston_pairs == 1 && x.t_values.len() == 8));
        assert_eq!(c.mathon_arcs(&f).unwrap().len(), 21);
    }
}
