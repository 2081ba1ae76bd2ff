//! The Desarguesian projective plane PG(2,q).
//!
//! Points and lines are normalized homogeneous triples (first nonzero
//! coordinate equal to 1). Both are ranked by the same canonical index:
//! `(0,0,1) -> 0`, `(0,1,z) -> 1 + m(z)`, `(1,y,z) -> 1 + q + m(y) q + m(z)`
//! where `m` is the field's exponent-order key.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Largest extension degree for which a plane can be materialized.
pub const MAX_PLANE_DEGREE: u32 = 15;

pub type Coords = [Elem; 3];

/// A point `(a : b : c)` in normalized coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Coords);

/// A line `[u : v : w]` in normalized coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine(Coords);

impl ProjPoint {
    pub fn coords(&self) -> Coords {
        self.0
    }
}

impl ProjLine {
    pub fn coords(&self) -> Coords {
        self.0
    }

    /// The point with the same coordinates, for working in the dual plane.
    pub fn dual(&self) -> ProjPoint {
        ProjPoint(self.0)
    }
}

impl ProjPoint {
    /// The line with the same coordinates.
    pub fn dual(&self) -> ProjLine {
        ProjLine(self.0)
    }
}

pub(crate) fn point_from_normalized(c: Coords) -> ProjPoint {
    ProjPoint(c)
}

pub fn dot(f: &Field, a: Coords, b: Coords) -> Elem {
    f.mul(a[0], b[0]) + f.mul(a[1], b[1]) + f.mul(a[2], b[2])
}

pub fn cross(f: &Field, a: Coords, b: Coords) -> Coords {
    [
        f.mul(a[1], b[2]) + f.mul(a[2], b[1]),
        f.mul(a[2], b[0]) + f.mul(a[0], b[2]),
        f.mul(a[0], b[1]) + f.mul(a[1], b[0]),
    ]
}

/// Scales so the first nonzero coordinate is 1.
pub fn normalize(f: &Field, c: Coords) -> Result<Coords> {
    let lead = c.iter().copied().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    if lead == Elem::ONE {
        return Ok(c);
    }
    let s = f.inv(lead)?;
    Ok([f.mul(s, c[0]), f.mul(s, c[1]), f.mul(s, c[2])])
}

/// PG(2,q) over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    field: Field,
}

impl Plane {
    pub fn new(field: Field) -> Result<Plane> {
        if field.degree() > MAX_PLANE_DEGREE {
            return Err(Error::PlaneTooLarge(field.degree()));
        }
        Ok(Plane { field })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order() as u32
    }

    /// q^2 + q + 1, the number of points (and of lines).
    pub fn size(&self) -> u32 {
        let q = self.q();
        q * q + q + 1
    }

    pub fn point(&self, coords: Coords) -> Result<ProjPoint> {
        Ok(ProjPoint(normalize(&self.field, coords)?))
    }

    pub fn line(&self, coords: Coords) -> Result<ProjLine> {
        Ok(ProjLine(normalize(&self.field, coords)?))
    }

    /// Point from raw bits, for tests and fixtures.
    pub fn point_bits(&self, a: u32, b: u32, c: u32) -> Result<ProjPoint> {
        let f = &self.field;
        self.point([f.elem(a)?, f.elem(b)?, f.elem(c)?])
    }

    pub fn line_bits(&self, a: u32, b: u32, c: u32) -> Result<ProjLine> {
        let f = &self.field;
        self.line([f.elem(a)?, f.elem(b)?, f.elem(c)?])
    }

    fn rank(&self, c: Coords) -> u32 {
        let q = self.q();
        let m = |x: Elem| self.field.order_key(x);
        if !c[0].is_zero() {
            1 + q + m(c[1]) * q + m(c[2])
        } else if !c[1].is_zero() {
            1 + m(c[2])
        } else {
            0
        }
    }

    fn unrank(&self, index: u32) -> Coords {
        let q = self.q();
        let e = |k: u32| self.field.from_order_key(k);
        if index == 0 {
            [Elem::ZERO, Elem::ZERO, Elem::ONE]
        } else if index <= q {
            [Elem::ZERO, Elem::ONE, e(index - 1)]
        } else {
            let r = index - 1 - q;
            [Elem::ONE, e(r / q), e(r % q)]
        }
    }

    pub fn point_index(&self, p: ProjPoint) -> u32 {
        self.rank(p.0)
    }

    pub fn line_index(&self, l: ProjLine) -> u32 {
        self.rank(l.0)
    }

    pub fn point_at(&self, index: u32) -> ProjPoint {
        assert!(index < self.size(), "point index {index} out of range");
        ProjPoint(self.unrank(index))
    }

    pub fn line_at(&self, index: u32) -> ProjLine {
        assert!(index < self.size(), "line index {index} out of range");
        ProjLine(self.unrank(index))
    }

    pub fn points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        (0..self.size()).map(|i| self.point_at(i))
    }

    pub fn lines(&self) -> impl Iterator<Item = ProjLine> + '_ {
        (0..self.size()).map(|i| self.line_at(i))
    }

    pub fn incident(&self, p: ProjPoint, l: ProjLine) -> bool {
        dot(&self.field, p.0, l.0).is_zero()
    }

    /// The q+1 normalized solutions of `x . c = 0`, in canonical order.
    fn orthogonal(&self, c: Coords) -> Vec<Coords> {
        let f = &self.field;
        let [u, v, w] = c;
        let mut out = Vec::with_capacity(self.q() as usize + 1);
        if !w.is_zero() {
            // z = (u x + v y) / w
            let iw = f.inv(w).expect("nonzero");
            out.push([Elem::ZERO, Elem::ONE, f.mul(v, iw)]);
            for k in 0..self.q() {
                let y = f.from_order_key(k);
                out.push([Elem::ONE, y, f.mul(u + f.mul(v, y), iw)]);
            }
        } else if !v.is_zero() {
            // y = u x / v, z free
            let y = f.div(u, v).expect("nonzero");
            out.push([Elem::ZERO, Elem::ZERO, Elem::ONE]);
            for k in 0..self.q() {
                out.push([Elem::ONE, y, f.from_order_key(k)]);
            }
        } else {
            out.push([Elem::ZERO, Elem::ZERO, Elem::ONE]);
            for k in 0..self.q() {
                out.push([Elem::ZERO, Elem::ONE, f.from_order_key(k)]);
            }
        }
        out
    }

    pub fn points_on_line(&self, l: ProjLine) -> Vec<ProjPoint> {
        self.orthogonal(l.0).into_iter().map(ProjPoint).collect()
    }

    pub fn lines_through_point(&self, p: ProjPoint) -> Vec<ProjLine> {
        self.orthogonal(p.0).into_iter().map(ProjLine).collect()
    }

    /// Canonical indices of the lines through `p`, in canonical order.
    pub fn line_indices_through(&self, p: ProjPoint) -> impl Iterator<Item = u32> + '_ {
        self.orthogonal(p.0).into_iter().map(|c| self.rank(c))
    }

    /// The line through two distinct points.
    pub fn join(&self, p: ProjPoint, r: ProjPoint) -> Result<ProjLine> {
        self.line(cross(&self.field, p.0, r.0))
    }

    /// The common point of two distinct lines.
    pub fn meet(&self, l: ProjLine, m: ProjLine) -> Result<ProjPoint> {
        self.point(cross(&self.field, l.0, m.0))
    }

    pub fn format_point(&self, p: ProjPoint) -> String {
        let f = &self.field;
        format!("({} : {} : {})", f.show(p.0[0]), f.show(p.0[1]), f.show(p.0[2]))
    }

    pub fn format_line(&self, l: ProjLine) -> String {
        let f = &self.field;
        format!("[{} : {} : {}]", f.show(l.0[0]), f.show(l.0[1]), f.show(l.0[2]))
    }

    /// Parses `(a : b : c)`, `[a : b : c]` or `a,b,c` with element text in each slot.
    pub fn parse_coords(&self, s: &str) -> Result<Coords> {
        let err = || Error::Parse { what: "coordinates", input: s.to_string() };
        let body = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let sep = if body.contains(':') { ':' } else { ',' };
        let parts: Vec<&str> = body.split(sep).collect();
        if parts.len() != 3 {
            return Err(err());
        }
        let mut c = [Elem::ZERO; 3];
        for (slot, part) in c.iter_mut().zip(parts) {
            *slot = self.field.parse(part).map_err(|_| err())?;
        }
        Ok(c)
    }

    pub fn parse_point(&self, s: &str) -> Result<ProjPoint> {
        self.point(self.parse_coords(s)?)
    }

    pub fn parse_line(&self, s: &str) -> Result<ProjLine> {
        self.line(self.parse_coords(s)?)
    }
}

/// A set of points stored as a bitset over canonical indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    bits: Vec<u64>,
    len: usize,
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointSet").field("len", &self.len).finish()
    }
}

impl PointSet {
    pub fn empty(plane: &Plane) -> PointSet {
        PointSet { bits: vec![0; (plane.size() as usize).div_ceil(64)], len: 0 }
    }

    pub fn from_indices(plane: &Plane, indices: impl IntoIterator<Item = u32>) -> PointSet {
        let mut s = PointSet::empty(plane);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn from_points(plane: &Plane, points: impl IntoIterator<Item = ProjPoint>) -> PointSet {
        PointSet::from_indices(plane, points.into_iter().map(|p| plane.point_index(p)))
    }

    /// Returns false if the index was already present.
    pub fn insert(&mut self, index: u32) -> bool {
        let (w, b) = (index as usize / 64, index % 64);
        let fresh = self.bits[w] >> b & 1 == 0;
        if fresh {
            self.bits[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, index: u32) -> bool {
        let (w, b) = (index as usize / 64, index % 64);
        let present = self.bits[w] >> b & 1 == 1;
        if present {
            self.bits[w] &= !(1 << b);
            self.len -= 1;
        }
        present
    }

    pub fn contains(&self, index: u32) -> bool {
        self.bits.get(index as usize / 64).is_some_and(|w| w >> (index % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Indices in increasing (canonical) order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                (word != 0).then(|| {
                    let b = word.trailing_zeros();
                    word &= word - 1;
                    w as u32 * 64 + b
                })
            })
        })
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn intersection_len(&self, other: &PointSet) -> usize {
        self.bits.iter().zip(&other.bits).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &PointSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        self.len = self.bits.iter().map(|w| w.count_ones() as usize).sum();
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}
