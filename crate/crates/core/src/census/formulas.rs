//! Closed-form counts, as functions of the extension degree `e` (q = 2^e)
//! and the arc degree `d`.

use serde::{Deserialize, Serialize};

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|i| i * i <= n).all(|i| !n.is_multiple_of(i))
}

/// Degree-4 Denniston arcs in the standard pencil: `(q-1)(q-2)/6`.
pub fn pencil_4arcs(e: u32) -> u64 {
    let q = 1u64 << e;
    (q - 1) * (q - 2) / 6
}

/// Size of one orbit of 2-dimensional subgroups: `e(q-1)`.
pub fn denniston4_orbit_size(e: u32) -> u64 {
    e as u64 * ((1u64 << e) - 1)
}

/// Arcs in one class through a fixed conic of the pencil: `3e`.
pub fn denniston4_through_conic(e: u32) -> u64 {
    3 * e as u64
}

/// Number of classes of degree-4 Denniston arcs, `(2^(e-1) - 1) / (3e)`,
/// for `e` prime and `e != 3`.
pub fn denniston4_classes(e: u32) -> Option<u64> {
    if !is_prime(e) || e == 3 {
        return None;
    }
    let num = (1u64 << (e - 1)) - 1;
    let den = 3 * e as u64;
    num.is_multiple_of(den).then_some(num / den)
}

/// Number of classes of proper Mathon 8-arcs,
/// `(N/14) (2^(e-3) - 1) (3eN - 1)`, for `e` prime outside {2, 3, 7}.
pub fn mathon8_classes(e: u32) -> Option<u64> {
    if e == 7 {
        return None;
    }
    let n = denniston4_classes(e)?;
    let num = n * ((1u64 << (e - 3)) - 1) * (3 * e as u64 * n - 1);
    num.is_multiple_of(14).then_some(num / 14)
}

/// Proper Mathon 8-arcs through one degree-4 arc of the pencil with a fixed
/// concurrency point. Each of the `3e - 1` θ cells has `q/8` pairs of
/// t-values, one of Denniston type, and each remaining pair contributes two
/// conics; every 8-arc is counted by its four new conics.
pub fn mathon8_through_4arc(e: u32) -> u64 {
    let q = 1u64 << e;
    let cells = 3 * e as u64 - 1;
    let m_conics = cells * (q / 8 - 1) * 2;
    m_conics / 4
}

/// Line counts for a degree-d Mathon arc M and a disjoint conic C with the same nucleus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCounts {
    pub secants_m: u64,
    pub externals_m: u64,
    pub secants_m_and_c: u64,
    pub c_only: u64,
    pub secants_union: u64,
}

/// The counts from the external-line argument; `d` must divide `q`.
pub fn line_counts(e: u32, d: u64) -> LineCounts {
    let q = 1u64 << e;
    let externals_m = (q + 1) * (q / d - 1) + 1;
    let secants_m = q * q + q + 1 - externals_m;
    let secants_m_and_c = (((q + 1) * (d - 1) + 1) / d - 1) * (q + 1) / 2 + q + 1;
    let c_only = (q + 1) * q / 2 + q + 1 - secants_m_and_c;
    LineCounts { secants_m, externals_m, secants_m_and_c, c_only, secants_union: secants_m + c_only }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(pencil_4arcs(5), 155);
        assert_eq!(denniston4_classes(5), Some(1));
        assert_eq!(denniston4_classes(11), Some(31));
        assert_eq!(denniston4_classes(3), None);
        assert_eq!(denniston4_orbit_size(11), 11 * 2047);
        assert_eq!(mathon8_classes(5), Some(3));
        assert_eq!(mathon8_classes(11), Some(577_065));
        assert_eq!(mathon8_classes(7), None);
        assert_eq!(mathon8_through_4arc(5), 21);
    }

    #[test]
    fn line_counts_q32_d4() {
        let c = line_counts(5, 4);
        assert_eq!((c.secants_m, c.externals_m, c.c_only), (825, 232, 132));
        assert_eq!(c.secants_m_and_c, 429);
        assert_eq!(c.secants_union, 957);
    }

    #[test]
    fn class_formula_matches_orbit_partition() {
        for e in [5u32, 7, 11, 13] {
            let n = denniston4_classes(e).unwrap();
            assert_eq!(n * denniston4_orbit_size(e), pencil_4arcs(e));
        }
    }
}
