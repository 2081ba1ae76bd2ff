//! Arithmetic in GF(2^h) in a polynomial basis.
//!
//! A [`Field`] is an immutable, cheaply clonable handle holding the modulus,
//! a distinguished generator and (for `h <= 20`) exp/log tables. Elements are
//! plain bit vectors ([`Elem`]) and all arithmetic goes through the handle.

pub mod linalg;
mod poly;

use std::fmt;
use std::ops::{Add, AddAssign};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use poly::Relation;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 24;
/// Discrete-log tables are built up to this degree.
pub const MAX_TABLE_DEGREE: u32 = 20;

/// Default primitive moduli, lowest weight then smallest value, indexed by degree.
const DEFAULT_MODULI: [u64; 25] = [
    0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x402b,
    0x8003, 0x1002d, 0x20009, 0x40081, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021, 0x100001b,
];

/// An element of GF(2^h); bit i is the coefficient of x^i.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Wraps raw bits without a range check; see [`Field::elem`].
    pub const fn from_bits(bits: u32) -> Elem {
        Elem(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for Elem {
    type Output = Elem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl AddAssign for Elem {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for Elem {
    fn sum<I: Iterator<Item = Elem>>(iter: I) -> Elem {
        iter.fold(Elem::ZERO, |a, b| a + b)
    }
}

struct Inner {
    degree: u32,
    modulus: u64,
    generator: Elem,
    /// exp[k] = g^k for k in 0..2(q-1)
    exp: Vec<u32>,
    /// log[x] = k with g^k = x, for x != 0
    log: Vec<u32>,
    trace_mask: u32,
}

/// The field GF(2^h) together with a fixed modulus and generator.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("degree", &self.inner.degree)
            .field("modulus", &format_args!("{:#x}", self.inner.modulus))
            .field("generator", &format_args!("{:#x}", self.inner.generator.0))
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.degree == other.inner.degree
            && self.inner.modulus == other.inner.modulus
            && self.inner.generator == other.inner.generator
    }
}

impl Eq for Field {}

/// Serialized form of a field: degree, modulus and generator as hex bit strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub h: u32,
    pub irreducible_bits_hex: String,
    pub generator_bits_hex: String,
}

impl Field {
    /// GF(2^degree) over the built-in default modulus, generated by `x`.
    pub fn new(degree: u32) -> Result<Field> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        let modulus = DEFAULT_MODULI[degree as usize];
        let generator = if degree == 1 { Elem::ONE } else { Elem(0b10) };
        Ok(Field { inner: Arc::new(Inner::build(degree, modulus, generator, true)) })
    }

    /// GF(2^degree) over a caller-supplied modulus. The generator is the
    /// smallest primitive element by bit value.
    pub fn with_modulus(degree: u32, modulus: u64) -> Result<Field> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        if poly::degree(modulus) != Some(degree) || !poly::is_irreducible(modulus) {
            return Err(Error::NotIrreducible { modulus, degree });
        }
        let probe = Field { inner: Arc::new(Inner::build(degree, modulus, Elem::ONE, false)) };
        let generator = (1..probe.order() as u32)
            .map(Elem)
            .find(|&x| probe.is_primitive(x))
            .expect("multiplicative group is cyclic");
        Ok(Field { inner: Arc::new(Inner::build(degree, modulus, generator, true)) })
    }

    /// Same field and modulus with a different distinguished generator.
    pub fn with_generator(&self, generator: Elem) -> Result<Field> {
        self.check(generator)?;
        if !self.is_primitive(generator) {
            return Err(Error::NotPrimitive(generator.0));
        }
        Ok(Field { inner: Arc::new(Inner::build(self.degree(), self.modulus(), generator, true)) })
    }

    /// GF(32) with the generator `w` satisfying `w^18 + w = 1`.
    pub fn gf32_distinguished() -> Field {
        let f = Field::new(5).expect("degree 5 is supported");
        let relation = Relation::new([18, 1, 0]);
        let w = f.find_generator_with_relation(&relation).expect("w^18 + w + 1 has a root in GF(32)");
        f.with_generator(w).expect("root is primitive")
    }

    /// Rebuilds a field from its serialized description.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        let parse = |s: &str, what: &'static str| {
            u64::from_str_radix(s.trim_start_matches("0x"), 16)
                .map_err(|_| Error::Parse { what, input: s.to_string() })
        };
        let modulus = parse(&spec.irreducible_bits_hex, "modulus")?;
        let generator = parse(&spec.generator_bits_hex, "generator")?;
        let f = Field::with_modulus(spec.h, modulus)?;
        f.with_generator(Elem(generator as u32))
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            h: self.degree(),
            irreducible_bits_hex: format!("{:#x}", self.modulus()),
            generator_bits_hex: format!("{:#x}", self.generator().0),
        }
    }

    /// Extension degree h.
    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    /// q = 2^h.
    pub fn order(&self) -> u64 {
        1u64 << self.inner.degree
    }

    pub fn modulus(&self) -> u64 {
        self.inner.modulus
    }

    pub fn generator(&self) -> Elem {
        self.inner.generator
    }

    pub fn has_log_table(&self) -> bool {
        !self.inner.log.is_empty()
    }

    /// Checked constructor from raw bits.
    pub fn elem(&self, bits: u32) -> Result<Elem> {
        let e = Elem(bits);
        self.check(e)?;
        Ok(e)
    }

    fn check(&self, x: Elem) -> Result<()> {
        if (x.0 as u64) >> self.degree() != 0 {
            return Err(Error::ElementOutOfRange { bits: x.0, degree: self.degree() });
        }
        Ok(())
    }

    /// All q elements in bit order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order() as u32).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.order() as u32).map(Elem)
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        x + y
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.inner;
        if inner.log.is_empty() {
            return Elem(poly::mulmod(x.0 as u64, y.0 as u64, inner.modulus) as u32);
        }
        let k = inner.log[x.0 as usize] + inner.log[y.0 as usize];
        Elem(inner.exp[k as usize])
    }

    pub fn square(&self, x: Elem) -> Elem {
        self.mul(x, x)
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.is_zero() {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(x, self.order() - 2))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// x^n, with 0^0 = 1.
    pub fn pow(&self, x: Elem, n: u64) -> Elem {
        if n == 0 {
            return Elem::ONE;
        }
        if x.is_zero() {
            return Elem::ZERO;
        }
        let inner = &*self.inner;
        let m = self.order() - 1;
        if !inner.log.is_empty() {
            let k = (inner.log[x.0 as usize] as u64 * (n % m)) % m;
            return Elem(inner.exp[k as usize]);
        }
        let mut base = x.0 as u64;
        let mut e = n;
        let mut r = 1u64;
        while e != 0 {
            if e & 1 != 0 {
                r = poly::mulmod(r, base, inner.modulus);
            }
            base = poly::mulmod(base, base, inner.modulus);
            e >>= 1;
        }
        Elem(r as u32)
    }

    /// The unique square root, x^(2^(h-1)).
    pub fn sqrt(&self, x: Elem) -> Elem {
        self.frobenius(x, self.degree() - 1)
    }

    /// x^(2^l), with l taken mod h.
    pub fn frobenius(&self, x: Elem, l: u32) -> Elem {
        let l = l % self.degree();
        if x.is_zero() || l == 0 {
            return x;
        }
        let inner = &*self.inner;
        if !inner.log.is_empty() {
            let m = self.order() - 1;
            let k = ((inner.log[x.0 as usize] as u64) << l) % m;
            return Elem(inner.exp[k as usize]);
        }
        (0..l).fold(x, |acc, _| self.square(acc))
    }

    /// Absolute trace onto GF(2), returned as 0 or 1.
    pub fn trace(&self, x: Elem) -> u8 {
        ((x.0 & self.inner.trace_mask).count_ones() & 1) as u8
    }

    /// Bit vector of the functional `t -> Tr(c t)` in the polynomial basis.
    pub fn trace_functional(&self, c: Elem) -> u64 {
        (0..self.degree())
            .filter(|&i| self.trace(self.mul(c, Elem(1 << i))) == 1)
            .fold(0u64, |acc, i| acc | (1 << i))
    }

    /// Smallest element (by bits) of trace 1.
    pub fn trace_one_element(&self) -> Elem {
        self.nonzero().find(|&x| self.trace(x) == 1).expect("trace is onto")
    }

    /// A root v of v^2 + v = c, if one exists (iff Tr(c) = 0). The other root is v + 1.
    pub fn solve_quadratic(&self, c: Elem) -> Option<Elem> {
        let cols: Vec<u64> = (0..self.degree())
            .map(|i| {
                let b = Elem(1 << i);
                (self.square(b) + b).0 as u64
            })
            .collect();
        linalg::solve(&cols, c.0 as u64).map(|v| Elem(v as u32))
    }

    pub fn multiplicative_order(&self, x: Elem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut n = self.order() - 1;
        for p in poly::multiplicative_prime_divisors(n) {
            while n.is_multiple_of(p) && self.pow(x, n / p) == Elem::ONE {
                n /= p;
            }
        }
        Some(n)
    }

    pub fn is_primitive(&self, x: Elem) -> bool {
        self.multiplicative_order(x) == Some(self.order() - 1)
    }

    /// Smallest primitive element (by bits) satisfying `relation`.
    pub fn find_generator_with_relation(&self, relation: &Relation) -> Result<Elem> {
        self.nonzero()
            .filter(|&x| self.is_primitive(x))
            .find(|&x| self.eval_relation(relation, x).is_zero())
            .ok_or_else(|| Error::NoGeneratorForRelation(relation.to_string()))
    }

    pub fn eval_relation(&self, relation: &Relation, x: Elem) -> Elem {
        relation.exponents().iter().map(|&e| self.pow(x, e)).sum()
    }

    /// Exponent k in [0, q-2] with generator^k = x.
    pub fn dlog(&self, x: Elem) -> Result<u32> {
        if x.is_zero() {
            return Err(Error::LogOfZero);
        }
        if self.inner.log.is_empty() {
            return Err(Error::NoLogTable(self.degree()));
        }
        Ok(self.inner.log[x.0 as usize])
    }

    /// generator^k.
    pub fn exp(&self, k: i64) -> Elem {
        let m = (self.order() - 1) as i64;
        self.pow(self.generator(), k.rem_euclid(m) as u64)
    }

    /// Sort key giving the exponent order: 0 first, then w^0, w^1, ...
    /// Falls back to bit order when no log table exists.
    pub fn order_key(&self, x: Elem) -> u32 {
        if x.is_zero() {
            0
        } else if self.has_log_table() {
            self.inner.log[x.0 as usize] + 1
        } else {
            x.0
        }
    }

    /// Inverse of [`Field::order_key`].
    pub fn from_order_key(&self, key: u32) -> Elem {
        if key == 0 {
            Elem::ZERO
        } else if self.has_log_table() {
            Elem(self.inner.exp[key as usize - 1])
        } else {
            Elem(key)
        }
    }

    /// Exponent notation: `0`, `1`, `w`, `w^k`; hex when no log table exists.
    pub fn format(&self, x: Elem) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        match self.dlog(x) {
            Ok(0) => "1".to_string(),
            Ok(1) => "w".to_string(),
            Ok(k) => format!("w^{k}"),
            Err(_) => format!("{:#x}", x.0),
        }
    }

    /// Parses sums of terms `0`, `1`, `w`, `w^k`, `w^-k` and hex `0x..`, e.g. `w^3+w+1`.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let err = || Error::Parse { what: "field element", input: s.to_string() };
        let mut acc = Elem::ZERO;
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err());
        }
        for term in text.split('+') {
            let value = match term {
                "0" => Elem::ZERO,
                "1" => Elem::ONE,
                "w" => self.generator(),
                t if t.starts_with("0x") => {
                    let bits = u32::from_str_radix(&t[2..], 16).map_err(|_| err())?;
                    self.elem(bits).map_err(|_| err())?
                }
                t => {
                    let k = t.strip_prefix("w^").ok_or_else(err)?;
                    self.exp(k.parse::<i64>().map_err(|_| err())?)
                }
            };
            acc += value;
        }
        Ok(acc)
    }

    /// Display adapter for one element.
    pub fn show(&self, x: Elem) -> Shown<'_> {
        Shown { field: self, x }
    }
}

pub struct Shown<'a> {
    field: &'a Field,
    x: Elem,
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.x))
    }
}

impl Inner {
    fn build(degree: u32, modulus: u64, generator: Elem, tables: bool) -> Inner {
        let q = 1usize << degree;
        let tables = tables && degree <= MAX_TABLE_DEGREE;
        let (exp, log) = if tables {
            let mut exp = vec![0u32; 2 * (q - 1)];
            let mut log = vec![0u32; q];
            let mut x = 1u64;
            for k in 0..q - 1 {
                exp[k] = x as u32;
                exp[k + q - 1] = x as u32;
                log[x as usize] = k as u32;
                x = poly::mulmod(x, generator.0 as u64, modulus);
            }
            (exp, log)
        } else {
            (Vec::new(), Vec::new())
        };
        // Tr(x^i) by summing Frobenius powers.
        let mut trace_mask = 0u32;
        for i in 0..degree {
            let mut y = 1u64 << i;
            let mut t = 0u64;
            for _ in 0..degree {
                t ^= y;
                y = poly::mulmod(y, y, modulus);
            }
            debug_assert!(t <= 1);
            trace_mask |= (t as u32) << i;
        }
        let inner = Inner { degree, modulus, generator, exp, log, trace_mask };
        if tables {
            // A non-primitive generator would leave gaps in the log table.
            debug_assert!(degree == 1 || inner.exp[1..q - 1].iter().all(|&v| v != 1));
        }
        inner
    }
}
