//! Conics with a nucleus, the family `F_{α,β,λ}`, the ⊕ composition and pencils.

use std::fmt;


use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::plane::{Coords, Plane, PointSet, ProjLine, ProjPoint};

/// The conic `αx² + xy + βy² + λz² = 0`, with nucleus `(0,0,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conic {
    pub alpha: Elem,
    pub beta: Elem,
    pub lambda: Elem,
}

impl Conic {
    pub const fn new(alpha: Elem, beta: Elem, lambda: Elem) -> Conic {
        Conic { alpha, beta, lambda }
    }

    /// `F_{1,1,λ}`, the conic of the standard pencil with parameter λ.
    pub const fn standard(lambda: Elem) -> Conic {
        Conic::new(Elem::ONE, Elem::ONE, lambda)
    }

    /// Member of the admissible family: λ ≠ 0 and Tr(αβ) = 1.
    pub fn is_admissible(&self, f: &Field) -> bool {
        !self.lambda.is_zero() && f.trace(f.mul(self.alpha, self.beta)) == 1
    }

    pub fn eval(&self, f: &Field, p: Coords) -> Elem {
        let [x, y, z] = p;
        f.mul(self.alpha, f.square(x)) + f.mul(x, y) + f.mul(self.beta, f.square(y)) + f.mul(self.lambda, f.square(z))
    }

    pub fn contains(&self, f: &Field, p: ProjPoint) -> bool {
        self.eval(f, p.coords()).is_zero()
    }

    /// The q+1 points, one on each line through the nucleus.
    pub fn points(&self, plane: &Plane) -> Result<Vec<ProjPoint>> {
        let f = plane.field();
        if self.lambda.is_zero() {
            return Err(Error::DegenerateConic(format!("λ = 0 in {}", self.display(f))));
        }
        let il = f.inv(self.lambda)?;
        let mut out = Vec::with_capacity(plane.q() as usize + 1);
        out.push(plane.point([Elem::ZERO, Elem::ONE, f.sqrt(f.mul(self.beta, il))])?);
        for y in f.elements() {
            let rhs = self.alpha + y + f.mul(self.beta, f.square(y));
            out.push(plane.point([Elem::ONE, y, f.sqrt(f.mul(rhs, il))])?);
        }
        Ok(out)
    }

    pub fn point_set(&self, plane: &Plane) -> Result<PointSet> {
        Ok(PointSet::from_points(plane, self.points(plane)?))
    }

    pub fn to_general(&self) -> GeneralConic {
        GeneralConic { coeffs: [self.alpha, self.beta, self.lambda, Elem::ONE, Elem::ZERO, Elem::ZERO] }
    }

    /// Sort key in exponent order, used for canonical serializations.
    pub fn order_key(&self, f: &Field) -> [u32; 3] {
        [f.order_key(self.alpha), f.order_key(self.beta), f.order_key(self.lambda)]
    }

    /// `alpha=w^a beta=w^b lambda=w^c`
    pub fn display(&self, f: &Field) -> String {
        format!("alpha={} beta={} lambda={}", f.show(self.alpha), f.show(self.beta), f.show(self.lambda))
    }

    /// Equation text, e.g. `x^2 + xy + w^6y^2 + w^21z^2`.
    pub fn equation(&self, f: &Field) -> String {
        let term = |c: Elem, mon: &str| match f.format(c).as_str() {
            "0" => None,
            "1" => Some(mon.to_string()),
            s => Some(format!("{s}{mon}")),
        };
        let parts: Vec<String> = [term(self.alpha, "x^2"), Some("xy".into()), term(self.beta, "y^2"), term(self.lambda, "z^2")]
            .into_iter()
            .flatten()
            .collect();
        format!("{} = 0", parts.join(" + "))
    }

    /// Accepts `alpha=.. beta=.. lambda=..` or a bare triple `a,b,c`.
    pub fn parse(f: &Field, s: &str) -> Result<Conic> {
        let err = || Error::Parse { what: "conic", input: s.to_string() };
        let mut vals = [None; 3];
        if s.contains('=') {
            for part in s.split_whitespace() {
                let (k, v) = part.split_once('=').ok_or_else(err)?;
                let slot = match k {
                    "alpha" => 0,
                    "beta" => 1,
                    "lambda" => 2,
                    _ => return Err(err()),
                };
                vals[slot] = Some(f.parse(v).map_err(|_| err())?);
            }
        } else {
            let body = s.trim().trim_start_matches('(').trim_end_matches(')');
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != 3 {
                return Err(err());
            }
            for (slot, part) in vals.iter_mut().zip(parts) {
                *slot = Some(f.parse(part).map_err(|_| err())?);
            }
        }
        match vals {
            [Some(a), Some(b), Some(l)] => Ok(Conic::new(a, b, l)),
            _ => Err(err()),
        }
    }
}

/// Mathon's composition: `α⊕α' = (αλ+α'λ')/(λ+λ')`, likewise β, and `λ⊕λ' = λ+λ'`.
pub fn compose(f: &Field, c: &Conic, d: &Conic) -> Result<Conic> {
    let lam = c.lambda + d.lambda;
    if lam.is_zero() {
        return Err(Error::EqualLambda(format!("{} and {}", c.display(f), d.display(f))));
    }
    let il = f.inv(lam)?;
    let mix = |x: Elem, y: Elem| f.mul(f.mul(x, c.lambda) + f.mul(y, d.lambda), il);
    Ok(Conic::new(mix(c.alpha, d.alpha), mix(c.beta, d.beta), lam))
}

/// Disjointness criterion: Tr((α⊕α')(β⊕β')) = 1.
pub fn trace_disjoint(f: &Field, c: &Conic, d: &Conic) -> Result<bool> {
    let e = compose(f, c, d)?;
    Ok(f.trace(f.mul(e.alpha, e.beta)) == 1)
}

/// `ax² + by² + cz² + dxy + eyz + fxz = 0`, scaled so the first nonzero
/// cross coefficient in the order (d,e,f) is 1, or the first nonzero square
/// coefficient when all cross terms vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralConic {
    coeffs: [Elem; 6],
}

impl GeneralConic {
    pub fn new(f: &Field, coeffs: [Elem; 6]) -> Result<GeneralConic> {
        let lead = coeffs[3..]
            .iter()
            .chain(&coeffs[..3])
            .copied()
            .find(|x| !x.is_zero())
            .ok_or(Error::ZeroVector)?;
        let s = f.inv(lead)?;
        Ok(GeneralConic { coeffs: coeffs.map(|x| f.mul(s, x)) })
    }

    pub fn coeffs(&self) -> [Elem; 6] {
        self.coeffs
    }

    pub fn eval(&self, f: &Field, p: Coords) -> Elem {
        eval_form(f, &self.coeffs, p)
    }

    pub fn contains(&self, f: &Field, p: ProjPoint) -> bool {
        self.eval(f, p.coords()).is_zero()
    }

    /// The point where all partial derivatives vanish: `(e, f, d)`.
    pub fn nucleus(&self, f: &Field) -> Result<ProjPoint> {
        let [_, _, _, d, e, g] = self.coeffs;
        crate::plane::normalize(f, [e, g, d])
            .map(crate::plane::point_from_normalized)
            .map_err(|_| Error::DegenerateConic("form is a perfect square".into()))
    }

    /// True when the form is irreducible: it has a nucleus not lying on it.
    pub fn is_nondegenerate(&self, f: &Field) -> bool {
        self.nucleus(f).is_ok_and(|n| !self.eval(f, n.coords()).is_zero())
    }

    /// Points via the lines through the nucleus `N`: on the line through `N`
    /// and `P` the unique conic point is `sN + P` with `s² = Q(P)/Q(N)`.
    pub fn points(&self, plane: &Plane) -> Result<Vec<ProjPoint>> {
        let f = plane.field();
        let n = self.nucleus(f)?.coords();
        let qn = self.eval(f, n);
        if qn.is_zero() {
            return Err(Error::DegenerateConic("nucleus lies on the form".into()));
        }
        let iqn = f.inv(qn)?;
        // a line missing the nucleus: a coordinate line with a nonzero entry of n
        let axis = (0..3).find(|&i| !n[i].is_zero()).expect("nonzero nucleus");
        let mut l = [Elem::ZERO; 3];
        l[axis] = Elem::ONE;
        let base = plane.line(l)?;
        plane
            .points_on_line(base)
            .into_iter()
            .map(|p| {
                let pc = p.coords();
                let s = f.sqrt(f.mul(self.eval(f, pc), iqn));
                plane.point([f.mul(s, n[0]) + pc[0], f.mul(s, n[1]) + pc[1], f.mul(s, n[2]) + pc[2]])
            })
            .collect()
    }

    pub fn point_set(&self, plane: &Plane) -> Result<PointSet> {
        Ok(PointSet::from_points(plane, self.points(plane)?))
    }

    /// Divides by the xy coefficient when the nucleus is `(0,0,1)`.
    pub fn to_adapted(&self, f: &Field) -> Result<Conic> {
        let [a, b, c, d, e, g] = self.coeffs;
        if !e.is_zero() || !g.is_zero() || d.is_zero() {
            return Err(Error::DegenerateConic("nucleus is not (0,0,1)".into()));
        }
        let id = f.inv(d)?;
        Ok(Conic::new(f.mul(a, id), f.mul(b, id), f.mul(c, id)))
    }

    pub fn display(&self, f: &Field) -> String {
        let names = ["x^2", "y^2", "z^2", "xy", "yz", "xz"];
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(&c, m)| if c == Elem::ONE { m.to_string() } else { format!("{}{m}", f.show(c)) })
            .collect();
        format!("{} = 0", parts.join(" + "))
    }
}

impl From<Conic> for GeneralConic {
    fn from(c: Conic) -> GeneralConic {
        c.to_general()
    }
}

pub(crate) fn eval_form(f: &Field, q: &[Elem; 6], p: Coords) -> Elem {
    let [x, y, z] = p;
    let [a, b, c, d, e, g] = *q;
    f.mul(a, f.square(x))
        + f.mul(b, f.square(y))
        + f.mul(c, f.square(z))
        + f.mul(d, f.mul(x, y))
        + f.mul(e, f.mul(y, z))
        + f.mul(g, f.mul(x, z))
}

/// Scalar `c` with `cross(q) = c * cross(r)`, where cross = (d, e, f).
fn cross_ratio(f: &Field, q: &[Elem; 6], r: &[Elem; 6]) -> Result<Elem> {
    let (cq, cr) = (&q[3..], &r[3..]);
    let pivot = (0..3).find(|&i| !cr[i].is_zero()).ok_or(Error::NoCommonNucleus)?;
    let c = f.div(cq[pivot], cr[pivot])?;
    if (0..3).all(|i| cq[i] == f.mul(c, cr[i])) {
        Ok(c)
    } else {
        Err(Error::NoCommonNucleus)
    }
}

/// Frame-independent ⊕: scale the forms so their cross terms agree, then
/// take `(Q(n)Q + Q'(n)Q') / (Q(n) + Q'(n))` at the common nucleus `n`.
pub fn compose_general(f: &Field, c: &GeneralConic, d: &GeneralConic) -> Result<GeneralConic> {
    let ratio = cross_ratio(f, &c.coeffs, &d.coeffs)?;
    let dq = d.coeffs.map(|x| f.mul(ratio, x));
    let n = c.nucleus(f)?.coords();
    let (qc, qd) = (eval_form(f, &c.coeffs, n), eval_form(f, &dq, n));
    if (qc + qd).is_zero() {
        return Err(Error::EqualLambda("forms agree at the common nucleus".into()));
    }
    let mut out = [Elem::ZERO; 6];
    for i in 0..6 {
        out[i] = f.mul(qc, c.coeffs[i]) + f.mul(qd, dq[i]);
    }
    GeneralConic::new(f, out)
}

/// The line L such that `Q_C + c Q_D` equals the square of L's linear form
/// (the combination with no cross terms).
pub fn infinity_line(plane: &Plane, c: &GeneralConic, d: &GeneralConic) -> Result<ProjLine> {
    let f = plane.field();
    let ratio = cross_ratio(f, &c.coeffs, &d.coeffs)?;
    let sq: Coords = [0, 1, 2].map(|i| f.sqrt(c.coeffs[i] + f.mul(ratio, d.coeffs[i])));
    plane.line(sq).map_err(|_| Error::DegenerateConic("identical conics have no line at infinity".into()))
}

/// The pencil `{F_{α,β,λ} : λ ∈ GF(q)*}` with nucleus `(0,0,1)` and line at infinity `z = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pencil {
    pub alpha: Elem,
    pub beta: Elem,
}

impl Pencil {
    pub fn new(f: &Field, alpha: Elem, beta: Elem) -> Result<Pencil> {
        if f.trace(f.mul(alpha, beta)) != 1 {
            return Err(Error::TraceCondition(format!(
                "Tr({} * {}) = 0",
                f.show(alpha),
                f.show(beta)
            )));
        }
        Ok(Pencil { alpha, beta })
    }

    /// `{F_{α,1,λ}}`; requires Tr(α) = 1.
    pub fn standard(f: &Field, alpha: Elem) -> Result<Pencil> {
        Pencil::new(f, alpha, Elem::ONE)
    }

    pub fn of(f: &Field, c: &Conic) -> Result<Pencil> {
        Pencil::new(f, c.alpha, c.beta)
    }

    pub fn conic(&self, lambda: Elem) -> Conic {
        Conic::new(self.alpha, self.beta, lambda)
    }

    pub fn contains(&self, c: &Conic) -> bool {
        c.alpha == self.alpha && c.beta == self.beta && !c.lambda.is_zero()
    }

    /// The q-1 conics in bit order of λ.
    pub fn conics<'a>(&'a self, f: &'a Field) -> impl Iterator<Item = Conic> + 'a {
        f.nonzero().map(|l| self.conic(l))
    }

    pub fn nucleus(&self, plane: &Plane) -> ProjPoint {
        plane.point_bits(0, 0, 1).expect("valid point")
    }

    pub fn infinity_line(&self, plane: &Plane) -> ProjLine {
        plane.line_bits(0, 0, 1).expect("valid line")
    }
}

/// Display adapter for `Conic` in the `alpha=.. beta=.. lambda=..` form.
pub struct ShownConic<'a>(pub &'a Field, pub &'a Conic);

impl fmt::Display for ShownConic<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(&self.1.display(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf32() -> (Field, Plane) {
        let f = Field::gf32_distinguished();
        (f.clone(), Plane::new(f).unwrap())
    }

    #[test]
    fn c1_contains_point_on_x_axis() {
        let (f, p) = gf32();
        let c1 = Conic::standard(Elem::ONE);
        assert!(c1.contains(&f, p.point_bits(0, 1, 1).unwrap()));
        let pts = c1.points(&p).unwrap();
        assert_eq!(pts.len(), 33);
        assert!(pts.iter().all(|&x| c1.contains(&f, x)));
        assert!(pts.iter().all(|x| !x.coords()[2].is_zero()));
    }

    #[test]
    fn points_match_exhaustive_scan() {
        let f = Field::new(3).unwrap();
        let p = Plane::new(f.clone()).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for l in f.nonzero() {
                    let c = Conic::new(a, b, l);
                    let mut pts = c.points(&p).unwrap();
                    pts.sort_by_key(|&x| p.point_index(x));
                    let scan: Vec<ProjPoint> = p.points().filter(|&x| c.contains(&f, x)).collect();
                    assert_eq!(pts, scan);
                    let g = c.to_general();
                    let gs = g.point_set(&p).unwrap();
                    assert_eq!(gs, PointSet::from_points(&p, scan));
                }
            }
        }
    }

    #[test]
    fn compose_examples() {
        let (f, _) = gf32();
        let w = f.generator();
        let c = Conic::new(w, f.exp(3), f.exp(7));
        let d = Conic::new(w, f.exp(3), f.exp(11));
        assert_eq!(compose(&f, &c, &d).unwrap(), Conic::new(w, f.exp(3), f.exp(7) + f.exp(11)));
        let e = Conic::new(f.exp(5), f.exp(9), f.exp(2));
        assert_eq!(compose(&f, &c, &e), compose(&f, &e, &c));
        assert!(matches!(compose(&f, &c, &Conic::new(w, w, f.exp(7))), Err(Error::EqualLambda(_))));
        // C_1 ⊕ (1, w^12, w^25) = (1, w^6, w^21)
        let theta = Conic::new(Elem::ONE, f.exp(12), f.exp(25));
        assert_eq!(
            compose(&f, &Conic::standard(Elem::ONE), &theta).unwrap(),
            Conic::new(Elem::ONE, f.exp(6), f.exp(21))
        );
    }

    #[test]
    fn general_compose_agrees_in_adapted_frame() {
        let (f, _) = gf32();
        let c = Conic::new(f.exp(4), f.exp(9), f.exp(13));
        let d = Conic::new(f.exp(1), f.exp(20), f.exp(2));
        let g = compose_general(&f, &c.to_general(), &d.to_general()).unwrap();
        assert_eq!(g.to_adapted(&f).unwrap(), compose(&f, &c, &d).unwrap());
    }

    #[test]
    fn standard_pencil_partitions_the_plane() {
        let (f, p) = gf32();
        let pencil = Pencil::standard(&f, Elem::ONE).unwrap();
        assert_eq!(pencil.conics(&f).count(), 31);
        let mut cover = PointSet::empty(&p);
        for c in pencil.conics(&f) {
            let s = c.point_set(&p).unwrap();
            assert!(cover.is_disjoint(&s));
            cover.union_with(&s);
        }
        cover.insert(p.point_index(pencil.nucleus(&p)));
        for x in p.points_on_line(pencil.infinity_line(&p)) {
            assert!(cover.insert(p.point_index(x)));
        }
        assert_eq!(cover.len(), 1057);
    }

    #[test]
    fn infinity_line_of_standard_conics_is_z_axis() {
        let (f, p) = gf32();
        let a = Conic::standard(f.exp(3)).to_general();
        let b = Conic::standard(f.exp(17)).to_general();
        assert_eq!(infinity_line(&p, &a, &b).unwrap(), p.line_bits(0, 0, 1).unwrap());
    }

    #[test]
    fn nucleus_of_general_form() {
        let (f, _) = gf32();
        let g = GeneralConic::new(&f, [f.exp(1), f.exp(2), f.exp(3), f.exp(4), f.exp(5), f.exp(6)]).unwrap();
        let n = g.nucleus(&f).unwrap().coords();
        // every partial derivative vanishes at n
        let [_, _, _, d, e, h] = g.coeffs();
        assert!((f.mul(d, n[1]) + f.mul(h, n[2])).is_zero());
        assert!((f.mul(d, n[0]) + f.mul(e, n[2])).is_zero());
        assert!((f.mul(e, n[1]) + f.mul(h, n[0])).is_zero());
    }

    #[test]
    fn text_forms() {
        let (f, _) = gf32();
        let c = Conic::new(Elem::ONE, f.exp(6), f.exp(21));
        assert_eq!(c.display(&f), "alpha=1 beta=w^6 lambda=w^21");
        assert_eq!(c.equation(&f), "x^2 + xy + w^6y^2 + w^21z^2 = 0");
        assert_eq!(Conic::parse(&f, &c.display(&f)).unwrap(), c);
        assert_eq!(Conic::parse(&f, "1,w^6,w^21").unwrap(), c);
        assert!(Conic::parse(&f, "alpha=1 beta=2").is_err());
    }

    #[test]
    fn pencil_requires_trace_one() {
        let f = Field::new(4).unwrap();
        assert!(Pencil::standard(&f, Elem::ONE).is_err());
        let a = f.trace_one_element();
        assert!(Pencil::standard(&f, a).is_ok());
    }
}
