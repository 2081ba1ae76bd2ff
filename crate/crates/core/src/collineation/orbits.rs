//! Action of the field maps `x -> a x^(2^l)` on additive subgroups.

use serde::{Deserialize, Serialize};

use crate::field::{Elem, Field};

/// One orbit of 2-dimensional subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceOrbit {
    /// Nonzero elements (bit values) of the first subspace met in enumeration order.
    pub representative: [u32; 3],
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldGroupOrbits {
    pub subspaces: u64,
    pub orbits: Vec<SubspaceOrbit>,
}

/// Partition of all 2-dimensional GF(2)-subspaces of GF(q) into orbits
/// of `{x -> a x^(2^l)}`, by explicit orbit enumeration.
pub fn field_group_orbits(f: &Field) -> FieldGroupOrbits {
    let q = f.order() as usize;
    // a subspace {0, x, y, x+y} is keyed by its two smallest nonzero elements
    let key = |a: u32, b: u32| -> usize {
        let c = a ^ b;
        let mut t = [a, b, c];
        t.sort_unstable();
        t[0] as usize * q + t[1] as usize
    };
    let mut seen = vec![0u64; (q * q).div_ceil(64)];
    let mut orbits = Vec::new();
    let mut subspaces = 0u64;
    for x in 1..q as u32 {
        for y in x + 1..q as u32 {
            if (x ^ y) < y {
                continue;
            }
            subspaces += 1;
            let k = key(x, y);
            if seen[k / 64] >> (k % 64) & 1 == 1 {
                continue;
            }
            let mut size = 0u64;
            for l in 0..f.degree() {
                let (xs, ys) = (f.frobenius(Elem::from_bits(x), l), f.frobenius(Elem::from_bits(y), l));
                for a in f.nonzero() {
                    let k = key(f.mul(a, xs).bits(), f.mul(a, ys).bits());
                    if seen[k / 64] >> (k % 64) & 1 == 0 {
                        seen[k / 64] |= 1 << (k % 64);
                        size += 1;
                    }
                }
            }
            orbits.push(SubspaceOrbit { representative: [x, y, x ^ y], size });
        }
    }
    FieldGroupOrbits { subspaces, orbits }
}

/// Number of pairs `(a, l)` with `a A^(2^l) = A`, for the nonzero part of a subgroup.
pub fn subgroup_stabilizer_pairs(f: &Field, nonzero: &[Elem]) -> u64 {
    let mut target: Vec<Elem> = nonzero.to_vec();
    target.sort();
    let Some(&first) = nonzero.first() else { return 0 };
    let mut count = 0;
    for l in 0..f.degree() {
        let twisted: Vec<Elem> = nonzero.iter().map(|&x| f.frobenius(x, l)).collect();
        let fs = f.frobenius(first, l);
        // a must send first^σ into A
        for &y in &target {
            let a = f.div(y, fs).expect("nonzero");
            let mut img: Vec<Elem> = twisted.iter().map(|&x| f.mul(a, x)).collect();
            img.sort();
            if img == target {
                count += 1;
            }
        }
    }
    count
}

/// Canonical representative of the orbit of a subgroup (given by its
/// nonzero elements) under `x -> a x^(2^l)`: the least, in exponent order,
/// of the sorted images `(A/s)^(2^l)` for `s ∈ A*`.
pub fn canonical_subgroup(f: &Field, nonzero: &[Elem]) -> Vec<Elem> {
    let mut best: Option<Vec<u32>> = None;
    for &s in nonzero {
        let is = f.inv(s).expect("nonzero");
        for l in 0..f.degree() {
            let mut keys: Vec<u32> = nonzero.iter().map(|&x| f.order_key(f.frobenius(f.mul(x, is), l))).collect();
            keys.sort_unstable();
            if best.as_ref().is_none_or(|b| keys < *b) {
                best = Some(keys);
            }
        }
    }
    best.unwrap_or_default().into_iter().map(|k| f.from_order_key(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gf32_has_one_orbit_of_155() {
        let f = Field::new(5).unwrap();
        let o = field_group_orbits(&f);
        assert_eq!(o.subspaces, 155);
        assert_eq!(o.orbits.len(), 1);
        assert_eq!(o.orbits[0].size, 155);
    }

    #[test]
    fn canonical_subgroup_separates_orbits_gf128() {
        let f = Field::new(7).unwrap();
        let o = field_group_orbits(&f);
        // orbit-by-orbit canonical forms are constant and pairwise distinct
        let mut forms = HashSet::new();
        for orbit in &o.orbits {
            let [x, y, z] = orbit.representative.map(Elem::from_bits);
            let c = canonical_subgroup(&f, &[x, y, z]);
            let a = f.exp(17);
            let moved: Vec<Elem> = [x, y, z].iter().map(|&e| f.mul(a, f.frobenius(e, 3))).collect();
            assert_eq!(canonical_subgroup(&f, &moved), c);
            forms.insert(c);
        }
        assert_eq!(forms.len(), o.orbits.len());
        assert_eq!(o.orbits.iter().map(|x| x.size).sum::<u64>(), o.subspaces);
    }

    #[test]
    fn stabilizer_of_span_1_w() {
        let f = Field::gf32_distinguished();
        let w = f.generator();
        assert_eq!(subgroup_stabilizer_pairs(&f, &[Elem::ONE, w, w + Elem::ONE]), 1);
    }
}
