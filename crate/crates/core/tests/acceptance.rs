//! The ten acceptance criteria, one status line each. Run with
//! `cargo test -p maxarc-core --test acceptance`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use maxarc::arcs::{
    closed_set_check, denniston_arc, elation_involution, extend_by_conic, fano_decomposition, infinity_data,
    mathon_exponent_arc, secant_census, verify_maximal_arc, AdditiveSubgroup, InfinityKind, MaximalArc,
};
use maxarc::census::{
    self, arc_from_conics, classify_mathon8, count_pencil_4arcs, disjoint_conic_census, formulas,
    reproduce_pg32_report,
};
use maxarc::collineation::{
    are_isomorphic, automorphism_order, canonical_form, configuration_stabilizer, field_group_orbits,
    subgroup_stabilizer_pairs, Collineation,
};
use maxarc::conic::trace_disjoint;
use maxarc::{Conic, Elem, Field, Plane, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const EXPONENT_TRIPLES: [(i64, i64, i64); 3] = [(12, 15, 4), (5, 25, 14), (6, 19, 8)];

enum Status {
    Pass,
    Fail,
    /// Measured value confirmed by brute force but differing from the stated target.
    Deviation,
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    status: Status,
    detail: String,
}

fn check(ok: bool, detail: String) -> Outcome {
    Outcome { status: if ok { Status::Pass } else { Status::Fail }, detail }
}

fn gf32() -> (Field, Plane) {
    let f = Field::gf32_distinguished();
    (f.clone(), Plane::new(f).unwrap())
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

/// Every additive subgroup of GF(q) other than {0}, as sorted element lists.
fn all_subgroups(f: &Field) -> Vec<AdditiveSubgroup> {
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut frontier: Vec<Vec<Elem>> = vec![vec![]];
    while let Some(basis) = frontier.pop() {
        let span = AdditiveSubgroup::span(&basis);
        for x in f.nonzero().filter(|&x| !span.contains(x)) {
            let mut next = basis.clone();
            next.push(x);
            let s = AdditiveSubgroup::span(&next);
            let mut key: Vec<u32> = s.elements().iter().map(|e| e.bits()).collect();
            key.sort_unstable();
            if found.insert(key) {
                frontier.push(next);
            }
        }
    }
    found
        .into_iter()
        .map(|k| AdditiveSubgroup::span(&k.iter().map(|&b| Elem::from_bits(b)).collect::<Vec<_>>()))
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for h in [3, 4, 5] {
        let f = Field::new(h).unwrap();
        let plane = Plane::new(f.clone()).unwrap();
        let q = plane.q();
        let lines = plane.size();
        let subgroups = all_subgroups(&f);
        let alphas: Vec<Elem> = f.elements().filter(|&a| f.trace(a) == 1).collect();
        let results: Vec<Option<String>> = alphas
            .par_iter()
            .flat_map_iter(|&alpha| subgroups.iter().map(move |a| (alpha, a)))
            .map(|(alpha, a)| {
                let d = a.len() as u32;
                let zeros = (q + 1) * (q / d - 1) + 1;
                let expected = [(0, zeros), (d, lines - zeros)].into_iter().filter(|&(_, n)| n > 0).collect();
                let ok = denniston_arc(&plane, alpha, a)
                    .is_ok_and(|arc| verify_maximal_arc(&plane, arc.points()).is_ok_and(|s| s.histogram == expected));
                (!ok).then(|| format!("q={q} alpha={} |A|={d}", f.format(alpha)))
            })
            .collect();
        checked += results.len();
        failures.extend(results.into_iter().flatten());
    }
    let t = start.elapsed();
    check(
        failures.is_empty() && t < Duration::from_secs(10),
        format!("{checked} (alpha, A) pairs at q = 8, 16, 32; {} failures; {}", failures.len(), secs(t)),
    )
}

fn admissible_conics(f: &Field, plane: &Plane) -> Vec<(Conic, PointSet)> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for l in f.nonzero() {
                let c = Conic::new(a, b, l);
                if c.is_admissible(f) {
                    out.push((c, c.point_set(plane).unwrap()));
                }
            }
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0u64;
    let mut disagreements = 0u64;
    for h in [3, 4, 5] {
        let f = Field::new(h).unwrap();
        let plane = Plane::new(f.clone()).unwrap();
        let conics = admissible_conics(&f, &plane);
        let (n, bad) = (0..conics.len())
            .into_par_iter()
            .map(|i| {
                let (c, cp) = &conics[i];
                let mut n = 0u64;
                let mut bad = 0u64;
                for (d, dp) in &conics[i + 1..] {
                    if c.lambda == d.lambda {
                        continue;
                    }
                    n += 1;
                    if trace_disjoint(&f, c, d).unwrap() != cp.is_disjoint(dp) {
                        bad += 1;
                    }
                }
                (n, bad)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        pairs += n;
        disagreements += bad;
    }
    let f = Field::new(7).unwrap();
    let plane = Plane::new(f.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(128);
    let q = f.order() as u32;
    let mut random = 0u64;
    let mut disjoint = 0u64;
    let random_admissible = |rng: &mut ChaCha8Rng| loop {
        let c = Conic::new(
            Elem::from_bits(rng.gen_range(0..q)),
            Elem::from_bits(rng.gen_range(0..q)),
            Elem::from_bits(rng.gen_range(1..q)),
        );
        if c.is_admissible(&f) {
            return c;
        }
    };
    while random < 10_000 {
        let c = random_admissible(&mut rng);
        let d = random_admissible(&mut rng);
        if c.lambda == d.lambda {
            continue;
        }
        random += 1;
        let oracle = c.point_set(&plane).unwrap().is_disjoint(&d.point_set(&plane).unwrap());
        disjoint += oracle as u64;
        if trace_disjoint(&f, &c, &d).unwrap() != oracle {
            disagreements += 1;
        }
    }
    check(
        disagreements == 0,
        format!(
            "{pairs} exhaustive pairs (q <= 32) + {random} random pairs at q = 128 ({disjoint} disjoint); \
             {disagreements} disagreements; {}",
            secs(start.elapsed())
        ),
    )
}

fn criterion_3() -> Outcome {
    let (f, plane) = gf32();
    let m = denniston_arc(&plane, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE, f.generator()])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let formula = formulas::line_counts(5, 4);
    let mut conics = 0;
    let mut agree = true;
    let mut measured = None;
    while conics < 20 {
        let c = Conic::new(
            Elem::from_bits(rng.gen_range(0..32)),
            Elem::from_bits(rng.gen_range(0..32)),
            Elem::from_bits(rng.gen_range(1..32)),
        );
        let Ok(cp) = c.point_set(&plane) else { continue };
        if !c.is_admissible(&f) || !cp.is_disjoint(m.points()) {
            continue;
        }
        conics += 1;
        let s = secant_census(&plane, m.points(), &cp);
        agree &= s.secants_m as u64 == formula.secants_m
            && s.externals_m as u64 == formula.externals_m
            && s.secants_union as u64 == formula.secants_union
            && s.c_only as u64 == formula.c_only;
        measured.get_or_insert(s);
    }
    let s = measured.unwrap();
    let literal = (s.secants_m, s.externals_m, s.c_only) == (825, 232, 132);
    let detail = format!(
        "brute force over {conics} disjoint conics: secants(M) = {}, externals(M) = {}, C-only = {}, \
         secants(M ∪ C) = {}; stated target for the last is 958, but 957 = 825 + 132 and the closed form \
         (2d-1)q²/2d + (4d-1)q/2d + 1 also gives 957",
        s.secants_m, s.externals_m, s.c_only, s.secants_union
    );
    let status = match (agree && literal, s.secants_union) {
        (true, 958) => Status::Pass,
        (true, 957) => Status::Deviation,
        _ => Status::Fail,
    };
    Outcome { status, detail }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let r = reproduce_pg32_report().unwrap();
    let compared: Vec<_> = r.t_tables.iter().filter(|row| row.golden.is_some()).collect();
    let matched = compared.iter().filter(|row| row.matches_golden == Some(true)).count();
    let pairs_ok = !r.mismatches.iter().any(|m| m.item.starts_with("pairs"));
    let rows_per_case: Vec<usize> = census::ThetaCase::ALL
        .iter()
        .map(|&c| compared.iter().filter(|row| row.case == c).count())
        .collect();
    let t = start.elapsed();
    check(
        matched == 14 && compared.len() == 14 && rows_per_case == [5, 5, 4] && pairs_ok,
        format!(
            "{matched}/14 rows equal as sets (rows per table {rows_per_case:?}); σ = 1 pairing {}; \
             the C_1 -> C_1 table matches its tabulated trace condition, the disjointness condition \
             gives different values there; report {}",
            if pairs_ok { "matches" } else { "differs" },
            secs(t)
        ),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let (f, plane) = gf32();
    let census = disjoint_conic_census(&f, f.generator()).unwrap();
    let arcs = census.mathon_arcs(&f).unwrap();
    let verified = arcs
        .par_iter()
        .filter(|c| verify_maximal_arc(&plane, arc_from_conics(&plane, c).unwrap().points()).is_ok())
        .count();
    let classes = classify_mathon8(&f, false, true).unwrap();
    let mut reps: Vec<MaximalArc> =
        classes.classes.iter().map(|k| arc_from_conics(&plane, &k.conics).unwrap()).collect();
    let mut matched = 0;
    for klm in EXPONENT_TRIPLES {
        let target = mathon_exponent_arc(&plane, klm).unwrap();
        if let Some(i) = reps.iter().position(|a| are_isomorphic(a, &target).unwrap()) {
            reps.remove(i);
            matched += 1;
        }
    }
    let t = start.elapsed();
    check(
        census.d_conics.len() == 28
            && census.m_conics.len() == 84
            && arcs.len() == 21
            && verified == 21
            && classes.classes.len() == 3
            && matched == 3
            && t < Duration::from_secs(60),
        format!(
            "{} D-conics, {} M-conics, {} arcs ({verified} verified), {} classes, {matched}/3 matched to \
             the exponent arcs; {}",
            census.d_conics.len(),
            census.m_conics.len(),
            arcs.len(),
            classes.classes.len(),
            secs(t)
        ),
    )
}

fn criterion_6() -> Outcome {
    let (f, _) = gf32();
    let count = count_pencil_4arcs(&f).unwrap();
    let start = Instant::now();
    let orbits = field_group_orbits(&Field::new(11).unwrap());
    let t = start.elapsed();
    let sizes_ok = orbits.orbits.iter().all(|o| o.size == 11 * 2047);
    let classes = formulas::mathon8_classes(5);
    check(
        count == 155
            && count == 5 * 31 * formulas::denniston4_classes(5).unwrap()
            && orbits.orbits.len() == 31
            && sizes_ok
            && orbits.subspaces == 698_027
            && classes == Some(3)
            && t < Duration::from_secs(300),
        format!(
            "pencil 4-arcs at q = 32: {count}; q = 2^11: {} subspaces in {} orbits, all of size 11·2047: {sizes_ok} \
             ({}); class formula at q = 32: {classes:?}",
            orbits.subspaces,
            orbits.orbits.len(),
            secs(t)
        ),
    )
}

fn criterion_7() -> Outcome {
    let (f, plane) = gf32();
    let d1 = denniston_arc(&plane, Elem::ONE, &AdditiveSubgroup::span(&[Elem::ONE, f.generator()])).unwrap();
    let den = automorphism_order(&d1).unwrap();
    let mathon: Vec<u64> = EXPONENT_TRIPLES
        .iter()
        .map(|&klm| automorphism_order(&mathon_exponent_arc(&plane, klm).unwrap()).unwrap().order)
        .collect();
    let mut g_a = BTreeSet::new();
    let mut stabilizers = Vec::new();
    for h in [5, 7] {
        let f = Field::new(h).unwrap();
        for o in field_group_orbits(&f).orbits {
            let a = o.representative.map(Elem::from_bits);
            g_a.insert((h, 2 * subgroup_stabilizer_pairs(&f, &a)));
        }
        stabilizers.push((h, configuration_stabilizer(&f).len()));
    }
    let g_a_ok = g_a.iter().all(|&(_, n)| n == 2);
    let stab_ok = stabilizers.iter().all(|&(h, n)| n == 2 * h as usize);
    check(
        den.order == 66 && den.formula_order == Some(66) && mathon == [2, 2, 2] && g_a_ok && stab_ok,
        format!(
            "Denniston 4-arc: {} (formula {:?}); Mathon classes: {mathon:?}; |G_A| over all orbits at q = 32, 128: \
             {:?}; configuration stabilizer sizes {stabilizers:?}",
            den.order,
            den.formula_order,
            g_a.iter().map(|&(_, n)| n).collect::<BTreeSet<_>>()
        ),
    )
}

fn criterion_8() -> Outcome {
    let (f, plane) = gf32();
    let census = disjoint_conic_census(&f, f.generator()).unwrap();
    let mut arcs: Vec<MaximalArc> =
        census.mathon_arcs(&f).unwrap().iter().map(|c| arc_from_conics(&plane, c).unwrap()).collect();
    arcs.extend(EXPONENT_TRIPLES.iter().map(|&klm| mathon_exponent_arc(&plane, klm).unwrap()));
    let proper_ok = arcs
        .par_iter()
        .filter(|arc| {
            let Ok(data) = infinity_data(arc) else { return false };
            let distinct: BTreeSet<u32> = data.lines.iter().map(|&l| plane.line_index(l)).collect();
            let Ok(g) = elation_involution(arc) else { return false };
            matches!(data.kind, InfinityKind::Concurrent(_))
                && distinct.len() == 7
                && arc.conics().iter().all(|c| {
                    let img = g.apply_conic(&f, c);
                    img == *c
                        && img.point_set(&plane).unwrap() == c.point_set(&plane).unwrap()
                })
                && arc.transform(&g) == **arc
        })
        .count();
    let three_dim: Vec<AdditiveSubgroup> = all_subgroups(&f).into_iter().filter(|a| a.len() == 8).collect();
    let denniston_ok = three_dim
        .par_iter()
        .filter(|a| {
            let arc = denniston_arc(&plane, Elem::ONE, a).unwrap();
            let data = infinity_data(&arc).unwrap();
            matches!(data.kind, InfinityKind::Denniston(_)) && data.lines.iter().all(|&l| l == data.lines[0])
        })
        .count();
    check(
        proper_ok == arcs.len() && denniston_ok == three_dim.len(),
        format!(
            "{proper_ok}/{} proper 8-arcs with 7 distinct concurrent lines and all conics fixed by the elation; \
             {denniston_ok}/{} degree-8 Denniston arcs with coinciding lines",
            arcs.len(),
            three_dim.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let (f, plane) = gf32();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let two_dim: Vec<AdditiveSubgroup> = all_subgroups(&f).into_iter().filter(|a| a.len() == 4).collect();
    let alphas: Vec<Elem> = f.elements().filter(|&a| f.trace(a) == 1).collect();
    let mut jobs = Vec::new();
    while jobs.len() < 100 {
        let a = &two_dim[rng.gen_range(0..two_dim.len())];
        let alpha = alphas[rng.gen_range(0..alphas.len())];
        let m = denniston_arc(&plane, alpha, a).unwrap();
        let base = m.adapted_conics().unwrap();
        let c = Conic::new(
            Elem::from_bits(rng.gen_range(0..32)),
            Elem::from_bits(rng.gen_range(0..32)),
            Elem::from_bits(rng.gen_range(1..32)),
        );
        if !c.is_admissible(&f) || a.contains(c.lambda) || !base.iter().all(|b| trace_disjoint(&f, b, &c).unwrap()) {
            continue;
        }
        jobs.push((m, c, Collineation::random(&f, &mut rng)));
    }
    let good = jobs
        .par_iter()
        .filter(|(m, c, g)| {
            let Ok(e) = extend_by_conic(&m.transform(g), &g.apply_conic(&f, &c.to_general())) else { return false };
            let back = e.transform(&g.inverse(&f));
            let closed = back.adapted_conics().is_some_and(|cs| closed_set_check(&f, &cs).is_ok());
            let verified = verify_maximal_arc(&plane, e.points()).is_ok();
            let fano = fano_decomposition(&e).unwrap();
            let nucleus = e.nucleus().unwrap();
            let original: BTreeSet<_> = m.transform(g).conics().iter().copied().collect();
            let reextended = fano.subarcs.iter().all(|t| {
                let sub: Vec<_> = t.iter().map(|&i| fano.conics[i]).collect();
                if sub.iter().copied().collect::<BTreeSet<_>>() == original {
                    return true;
                }
                let sub_arc = MaximalArc::from_conics(&plane, nucleus, sub).unwrap();
                (0..7).filter(|i| !t.contains(i)).all(|i| {
                    extend_by_conic(&sub_arc, &fano.conics[i]).is_ok_and(|x| x.points() == e.points())
                })
            });
            closed && verified && reextended
        })
        .count();
    check(
        good == jobs.len(),
        format!("{good}/{} random (M, C) pairs in random frames: closed, verified, and re-extension stable", jobs.len()),
    )
}

fn criterion_10() -> Outcome {
    let (f, plane) = gf32();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let reps: Vec<MaximalArc> = EXPONENT_TRIPLES.iter().map(|&klm| mathon_exponent_arc(&plane, klm).unwrap()).collect();
    let forms: Vec<_> = reps.iter().map(|a| canonical_form(a).unwrap()).collect();
    let gs: Vec<Collineation> = (0..50).map(|_| Collineation::random(&f, &mut rng)).collect();
    let stable = reps
        .iter()
        .zip(&forms)
        .map(|(k, cf)| gs.par_iter().filter(|g| canonical_form(&k.transform(g)).unwrap() == *cf).count())
        .sum::<usize>();
    let distinct = forms.iter().map(|cf| cf.conics.clone()).collect::<BTreeSet<_>>().len();
    check(
        stable == 150 && distinct == 3,
        format!("{stable}/150 transformed representatives keep their form; {distinct} distinct forms for 3 classes"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Denniston verification", criterion_1),
        ("trace criterion vs point-set disjointness", criterion_2),
        ("line counts for M and a disjoint conic", criterion_3),
        ("PG(2,32) t-tables and pairing", criterion_4),
        ("PG(2,32) conic census and classes", criterion_5),
        ("counting formulas", criterion_6),
        ("automorphism orders", criterion_7),
        ("lines at infinity and the elation", criterion_8),
        ("uniqueness of the extension", criterion_9),
        ("canonical-form soundness", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Outcome {
            status: Status::Fail,
            detail: "panicked".into(),
        });
        let label = match outcome.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::Deviation => "DEVIATION",
        };
        println!("criterion {:>2} {label:<9} {name}: {}", i + 1, outcome.detail);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
