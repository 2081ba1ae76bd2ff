//! Semilinear collineations `p -> M p^σ` of PG(2,q) with `σ = x -> x^(2^l)`.

mod canonical;
mod orbits;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::conic::{Conic, GeneralConic};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::plane::{Coords, Plane, ProjLine, ProjPoint};

pub use canonical::{
    are_isomorphic, automorphism_order, canonical_form, denniston_canonical_form, AutomorphismReport,
    CanonicalForm, DennistonForm,
};
pub use orbits::{canonical_subgroup, field_group_orbits, subgroup_stabilizer_pairs, FieldGroupOrbits, SubspaceOrbit};

/// A 3x3 matrix over GF(q), row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[Elem; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([
        [Elem::ONE, Elem::ZERO, Elem::ZERO],
        [Elem::ZERO, Elem::ONE, Elem::ZERO],
        [Elem::ZERO, Elem::ZERO, Elem::ONE],
    ]);

    /// Matrix with the given columns.
    pub fn from_columns(cols: [Coords; 3]) -> Mat3 {
        let mut m = [[Elem::ZERO; 3]; 3];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                m[i][j] = col[i];
            }
        }
        Mat3(m)
    }

    pub fn mul(&self, f: &Field, other: &Mat3) -> Mat3 {
        let mut m = [[Elem::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|k| f.mul(self.0[i][k], other.0[k][j])).sum();
            }
        }
        Mat3(m)
    }

    pub fn apply(&self, f: &Field, v: Coords) -> Coords {
        [0, 1, 2].map(|i| (0..3).map(|k| f.mul(self.0[i][k], v[k])).sum())
    }

    pub fn transpose(&self) -> Mat3 {
        let m = self.0;
        Mat3([0, 1, 2].map(|i| [0, 1, 2].map(|j| m[j][i])))
    }

    /// Entrywise `x -> x^(2^l)`.
    pub fn frobenius(&self, f: &Field, l: u32) -> Mat3 {
        Mat3(self.0.map(|row| row.map(|x| f.frobenius(x, l))))
    }

    fn minor(&self, f: &Field, i: usize, j: usize) -> Elem {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let m = &self.0;
        f.mul(m[r[0]][c[0]], m[r[1]][c[1]]) + f.mul(m[r[0]][c[1]], m[r[1]][c[0]])
    }

    pub fn det(&self, f: &Field) -> Elem {
        (0..3).map(|j| f.mul(self.0[0][j], self.minor(f, 0, j))).sum()
    }

    pub fn inverse(&self, f: &Field) -> Result<Mat3> {
        let d = self.det(f);
        if d.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let id = f.inv(d)?;
        // characteristic 2: the adjugate needs no signs
        Ok(Mat3([0, 1, 2].map(|i| [0, 1, 2].map(|j| f.mul(id, self.minor(f, j, i))))))
    }
}

/// The collineation `p -> matrix * p^(2^frob)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Collineation {
    pub matrix: Mat3,
    pub frob: u32,
}

impl Collineation {
    pub const IDENTITY: Collineation = Collineation { matrix: Mat3::IDENTITY, frob: 0 };

    pub fn new(f: &Field, matrix: Mat3, frob: u32) -> Result<Collineation> {
        if matrix.det(f).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Collineation { matrix, frob: frob % f.degree() })
    }

    pub fn linear(f: &Field, matrix: Mat3) -> Result<Collineation> {
        Collineation::new(f, matrix, 0)
    }

    /// The linear map sending the basis points `e1, e2, e3` to `p1, p2, p3`.
    pub fn from_frame(f: &Field, points: [ProjPoint; 3]) -> Result<Collineation> {
        Collineation::linear(f, Mat3::from_columns(points.map(|p| p.coords())))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, f: &Field, other: &Collineation) -> Collineation {
        Collineation {
            matrix: self.matrix.mul(f, &other.matrix.frobenius(f, self.frob)),
            frob: (self.frob + other.frob) % f.degree(),
        }
    }

    pub fn inverse(&self, f: &Field) -> Collineation {
        let back = (f.degree() - self.frob) % f.degree();
        let inv = self.matrix.inverse(f).expect("collineation matrices are invertible");
        Collineation { matrix: inv.frobenius(f, back), frob: back }
    }

    pub fn is_identity(&self) -> bool {
        if self.frob != 0 {
            return false;
        }
        let m = self.matrix.0;
        let s = m[0][0];
        (0..3).all(|i| (0..3).all(|j| m[i][j] == if i == j { s } else { Elem::ZERO }))
    }

    /// Equality as maps of the plane (matrices up to a scalar).
    pub fn same_map(&self, f: &Field, other: &Collineation) -> bool {
        self.compose(f, &other.inverse(f)).is_identity()
    }

    pub fn apply_coords(&self, f: &Field, p: Coords) -> Coords {
        self.matrix.apply(f, p.map(|x| f.frobenius(x, self.frob)))
    }

    pub fn apply_point(&self, plane: &Plane, p: ProjPoint) -> ProjPoint {
        plane.point(self.apply_coords(plane.field(), p.coords())).expect("invertible map")
    }

    /// Lines map by `(M^-1)^T u^σ`.
    pub fn apply_line(&self, plane: &Plane, l: ProjLine) -> ProjLine {
        let f = plane.field();
        let inv_t = self.matrix.inverse(f).expect("invertible").transpose();
        plane.line(inv_t.apply(f, l.coords().map(|x| f.frobenius(x, self.frob)))).expect("invertible map")
    }

    /// Conic forms map by `(M^-1)^T A^σ M^-1` with `A` upper triangular.
    pub fn apply_conic(&self, f: &Field, c: &GeneralConic) -> GeneralConic {
        let [a, b, cc, d, e, g] = c.coeffs().map(|x| f.frobenius(x, self.frob));
        let z = Elem::ZERO;
        let upper = Mat3([[a, d, g], [z, b, e], [z, z, cc]]);
        let mi = self.matrix.inverse(f).expect("invertible");
        let m = mi.transpose().mul(f, &upper).mul(f, &mi).0;
        GeneralConic::new(f, [m[0][0], m[1][1], m[2][2], m[0][1] + m[1][0], m[1][2] + m[2][1], m[0][2] + m[2][0]])
            .expect("image of a nonzero form")
    }

    /// Image of a nucleus-adapted conic, renormalized when the image is still adapted.
    pub fn apply_adapted(&self, f: &Field, c: &Conic) -> Result<Conic> {
        self.apply_conic(f, &c.to_general()).to_adapted(f)
    }

    pub fn random<R: Rng + ?Sized>(f: &Field, rng: &mut R) -> Collineation {
        let q = f.order() as u32;
        loop {
            let m = Mat3([0; 3].map(|_| [0; 3].map(|_| Elem::from_bits(rng.gen_range(0..q)))));
            if !m.det(f).is_zero() {
                return Collineation { matrix: m, frob: rng.gen_range(0..f.degree()) };
            }
        }
    }

    pub fn to_json(&self, f: &Field) -> CollineationJson {
        CollineationJson {
            matrix: self.matrix.0.map(|row| row.map(|x| format!("{:#x}", x.bits()))),
            frobenius: self.frob,
            field: f.spec(),
        }
    }

    pub fn from_json(f: &Field, j: &CollineationJson) -> Result<Collineation> {
        let mut m = [[Elem::ZERO; 3]; 3];
        for (i, row) in j.matrix.iter().enumerate() {
            for (k, s) in row.iter().enumerate() {
                m[i][k] = f.parse(s)?;
            }
        }
        Collineation::new(f, Mat3(m), j.frobenius)
    }

    pub fn display(&self, f: &Field) -> String {
        let rows: Vec<String> = self
            .matrix
            .0
            .iter()
            .map(|r| format!("[{}, {}, {}]", f.show(r[0]), f.show(r[1]), f.show(r[2])))
            .collect();
        format!("{} sigma=2^{}", rows.join(" "), self.frob)
    }
}

/// Collineation JSON: nine hex element encodings and the Frobenius exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollineationJson {
    pub matrix: [[String; 3]; 3],
    pub frobenius: u32,
    pub field: crate::field::FieldSpec,
}

impl fmt::Display for Mat3 {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            writeln!(out, "{:#x} {:#x} {:#x}", row[0].bits(), row[1].bits(), row[2].bits())?;
        }
        Ok(())
    }
}

/// The map with matrix `[[s,0,0],[t,s,0],[√(st+t²),0,1]]`, `s = 1/(√λ)^σ`,
/// and field automorphism `σ = 2^l`. It fixes `(0,0,1)` and `(0,1,0)` and
/// sends `F_{1,1,λ}` to `F_{1,1,1}`.
pub fn theta(f: &Field, lambda: Elem, t: Elem, l: u32) -> Result<Collineation> {
    if lambda.is_zero() {
        return Err(Error::DegenerateConic("θ needs λ ≠ 0".into()));
    }
    let s = f.inv(f.frobenius(f.sqrt(lambda), l))?;
    let z = Elem::ZERO;
    let r = f.sqrt(f.mul(s, t) + f.square(t));
    Collineation::new(f, Mat3([[s, z, z], [t, s, z], [r, z, Elem::ONE]]), l)
}

/// The reference conic `F_{α0,1,1}` with `α0 = 1` when Tr(1) = 1 and otherwise
/// the smallest element of trace 1.
pub fn reference_conic(f: &Field) -> Conic {
    let a0 = if f.trace(Elem::ONE) == 1 { Elem::ONE } else { f.trace_one_element() };
    Conic::new(a0, Elem::ONE, Elem::ONE)
}

/// Linear maps of the shape `[[a,0,0],[t,b,0],[0,0,1]]` (fixing `(0,0,1)`,
/// `(0,1,0)` and the line `z = 0`) that send `src` onto `dst`. There are two
/// when Tr(αβ) agrees and none otherwise.
pub fn triangular_maps(f: &Field, src: &Conic, dst: &Conic) -> Vec<Mat3> {
    let ok = |c: &Conic| !c.beta.is_zero() && !c.lambda.is_zero();
    if !ok(src) || !ok(dst) {
        return Vec::new();
    }
    let rhs = f.mul(dst.alpha, dst.beta) + f.mul(src.alpha, src.beta);
    let Some(v0) = f.solve_quadratic(rhs) else { return Vec::new() };
    let num = f.mul(src.lambda, src.beta);
    let den = f.mul(dst.beta, dst.lambda);
    let a = f.sqrt(f.div(num, den).expect("nonzero"));
    let b = f.div(f.mul(dst.beta, a), src.beta).expect("nonzero");
    let ib = f.inv(src.beta).expect("nonzero");
    let z = Elem::ZERO;
    [v0, v0 + Elem::ONE]
        .into_iter()
        .map(|v| {
            let t = f.mul(f.mul(a, v), ib);
            // the substitution sends target coordinates to source coordinates
            let back = Mat3([[a, z, z], [t, b, z], [z, z, Elem::ONE]]);
            back.inverse(f).expect("a, b nonzero")
        })
        .collect()
}

/// All collineations with Frobenius part `l` for some l, fixing `(0,0,1)`,
/// `(0,1,0)` and `z = 0`, that send `src` to `dst`.
pub fn maps_between(f: &Field, src: &Conic, dst: &Conic) -> Vec<Collineation> {
    (0..f.degree())
        .flat_map(|l| {
            let s = Conic::new(f.frobenius(src.alpha, l), f.frobenius(src.beta, l), f.frobenius(src.lambda, l));
            triangular_maps(f, &s, dst).into_iter().map(move |m| Collineation { matrix: m, frob: l })
        })
        .collect()
}

/// Stabilizer of the configuration (reference conic, `(0,0,1)`, `(0,1,0)`, `z = 0`).
pub fn configuration_stabilizer(f: &Field) -> Vec<Collineation> {
    let c = reference_conic(f);
    maps_between(f, &c, &c)
}
