//! Dense linear algebra over GF(2) on `u64` bit rows.
//!
//! Vectors have at most 64 coordinates; bit `i` is coordinate `i`.

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in row order.
fn echelon(rows: &mut Vec<u64>, ncols: u32) -> Vec<u32> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let bit = 1u64 << col;
        let Some(p) = (r..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[u64], ncols: u32) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m, ncols).len()
}

/// Basis of `{x : <row, x> = 0 for every row}` inside GF(2)^ncols.
pub fn kernel(rows: &[u64], ncols: u32) -> Vec<u64> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m, ncols);
    let pivot_mask = pivots.iter().fold(0u64, |acc, &c| acc | (1 << c));
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| pivot_mask & (1 << c) == 0) {
        let mut v = 1u64 << free;
        for (row, &pc) in m.iter().zip(&pivots) {
            if row & (1 << free) != 0 {
                v |= 1 << pc;
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `sum_i x_i * columns[i] = target`; returns one solution `x`.
pub fn solve(columns: &[u64], target: u64) -> Option<u64> {
    // Track which input columns make up each reduced vector.
    let mut reduced: Vec<(u64, u64)> = Vec::new();
    for (i, &c) in columns.iter().enumerate() {
        let mut v = c;
        let mut combo = 1u64 << i;
        for &(rv, rc) in &reduced {
            if v & lowest_bit(rv) != 0 {
                v ^= rv;
                combo ^= rc;
            }
        }
        if v != 0 {
            // Keep the basis fully reduced on its pivot bits.
            let lb = lowest_bit(v);
            for entry in reduced.iter_mut() {
                if entry.0 & lb != 0 {
                    entry.0 ^= v;
                    entry.1 ^= combo;
                }
            }
            reduced.push((v, combo));
        }
    }
    let mut t = target;
    let mut x = 0u64;
    for &(rv, rc) in &reduced {
        if t & lowest_bit(rv) != 0 {
            t ^= rv;
            x ^= rc;
        }
    }
    (t == 0).then_some(x)
}

/// All `2^k` elements of the span of `basis` (assumed independent).
pub fn span(basis: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &b in basis {
        let extra: Vec<u64> = out.iter().map(|&v| v ^ b).collect();
        out.extend(extra);
    }
    out
}

fn lowest_bit(v: u64) -> u64 {
    v & v.wrapping_neg()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: u64, b: u64) -> u32 {
        (a & b).count_ones() & 1
    }

    #[test]
    fn kernel_of_two_hyperplanes_in_dim_five() {
        let rows = [0b10110, 0b01011];
        let k = kernel(&rows, 5);
        assert_eq!(k.len(), 3);
        for v in span(&k) {
            assert!(rows.iter().all(|&r| dot(r, v) == 0));
        }
        // brute force: exactly 8 vectors in the intersection
        let count = (0u64..32).filter(|&v| rows.iter().all(|&r| dot(r, v) == 0)).count();
        assert_eq!(count, 8);
    }

    #[test]
    fn kernel_of_dependent_rows() {
        let rows = [0b11, 0b11, 0];
        assert_eq!(kernel(&rows, 2), vec![0b11]);
        assert_eq!(rank(&rows, 2), 1);
    }

    #[test]
    fn solve_finds_combination() {
        let cols = [0b001, 0b011, 0b110];
        let x = solve(&cols, 0b100).unwrap();
        let got = (0..3).filter(|i| x & (1 << i) != 0).fold(0, |acc, i| acc ^ cols[i]);
        assert_eq!(got, 0b100);
        assert_eq!(solve(&[0b01, 0b01], 0b10), None);
    }
}
