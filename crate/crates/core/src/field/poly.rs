//! Small polynomials over GF(2), packed into `u64` (bit i = coefficient of x^i).

use std::fmt;

use crate::error::{Error, Result};

pub(crate) fn degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

pub(crate) fn mulmod(mut a: u64, mut b: u64, modulus: u64) -> u64 {
    let d = degree(modulus).expect("nonzero modulus");
    let top = 1u64 << d;
    let mut r = 0;
    while b != 0 {
        if b & 1 != 0 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    r
}

fn rem(mut a: u64, m: u64) -> u64 {
    let dm = degree(m).expect("nonzero divisor");
    while let Some(da) = degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub(crate) fn is_irreducible(f: u64) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    // x^(2^k) mod f
    let frob = |k: u32| {
        let mut x = rem(0b10, f);
        for _ in 0..k {
            x = mulmod(x, x, f);
        }
        x
    };
    if frob(n) != rem(0b10, f) {
        return false;
    }
    prime_divisors(n as u64).into_iter().all(|p| {
        let g = frob(n / p as u32) ^ rem(0b10, f);
        degree(gcd(f, g)) == Some(0)
    })
}

pub(crate) fn multiplicative_prime_divisors(q_minus_1: u64) -> Vec<u64> {
    prime_divisors(q_minus_1)
}

/// A polynomial relation `sum_i w^{e_i} = 0` over GF(2), used to single out a
/// generator (for instance `w^18 + w + 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    exponents: Vec<u64>,
}

impl Relation {
    /// Terms are collected mod 2, so repeated exponents cancel.
    pub fn new(exponents: impl IntoIterator<Item = u64>) -> Self {
        let mut e: Vec<u64> = exponents.into_iter().collect();
        e.sort_unstable();
        let mut out: Vec<u64> = Vec::with_capacity(e.len());
        for x in e {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        out.reverse();
        Relation { exponents: out }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Parses `"w^18+w+1"` or `"w^18 + w = 1"`; the right-hand side, if any,
    /// is moved to the left.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "relation", input: s.to_string() };
        let mut terms = Vec::new();
        for side in s.split('=') {
            for term in side.split('+') {
                let t: String = term.chars().filter(|c| !c.is_whitespace()).collect();
                match t.as_str() {
                    "0" => {}
                    "1" => terms.push(0),
                    "w" | "x" => terms.push(1),
                    _ => {
                        let exp = t
                            .strip_prefix("w^")
                            .or_else(|| t.strip_prefix("x^"))
                            .ok_or_else(err)?;
                        terms.push(exp.parse::<u64>().map_err(|_| err())?);
                    }
                }
            }
        }
        if s.split('=').count() > 2 {
            return Err(err());
        }
        Ok(Relation::new(terms))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "0 = 0");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "w".to_string(),
                _ => format!("w^{e}"),
            })
            .collect();
        write!(f, "{} = 0", parts.join(" + "))
    }
}
