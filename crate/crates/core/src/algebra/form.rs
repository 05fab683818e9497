//! Binary forms `Σ c_i x1^(deg-i) x2^i` over an arbitrary scalar ring.

use std::fmt;

use crate::error::{Error, Result};

use super::ring::{ExactField, Field, Ring};
use super::upoly::UPolyRing;

/// Homogeneous polynomial of a fixed degree in two variables. Coefficient
/// `i` multiplies `x1^(degree - i) * x2^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> BinaryForm<R> {
    /// `coeffs` must be nonempty; the degree is `coeffs.len() - 1`.
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree + 1 coefficients");
        BinaryForm { ring, coeffs }
    }

    pub fn from_i64(ring: R, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&x| ring.from_i64(x)).collect();
        Self::new(ring, c)
    }

    pub fn zero(ring: R, degree: usize) -> Self {
        let c = vec![ring.zero(); degree + 1];
        Self::new(ring, c)
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::new(ring, vec![c])
    }

    pub fn one(ring: R) -> Self {
        let c = ring.one();
        Self::constant(ring, c)
    }

    pub fn x1(ring: R) -> Self {
        let c = vec![ring.one(), ring.zero()];
        Self::new(ring, c)
    }

    pub fn x2(ring: R) -> Self {
        let c = vec![ring.zero(), ring.one()];
        Self::new(ring, c)
    }

    /// `a*x1 + b*x2`.
    pub fn linear(ring: R, a: R::Elem, b: R::Elem) -> Self {
        Self::new(ring, vec![a, b])
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R::Elem {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Self::new(self.ring.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| self.ring.neg(a)).collect();
        Self::new(self.ring.clone(), c)
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        let c = self.coeffs.iter().map(|a| self.ring.mul(a, s)).collect();
        Self::new(self.ring.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let r = &self.ring;
        let mut out = vec![r.zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Self::new(r.clone(), out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.ring.clone()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, p1: &R::Elem, p2: &R::Elem) -> R::Elem {
        // Horner in the ratio, carried homogeneously.
        let r = &self.ring;
        let d = self.degree();
        let mut acc = r.zero();
        let mut p2pow = r.one();
        let p1pows: Vec<R::Elem> = {
            let mut v = vec![r.one()];
            for k in 1..=d {
                v.push(r.mul(&v[k - 1], p1));
            }
            v
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = r.add(&acc, &r.mul(c, &r.mul(&p1pows[d - i], &p2pow)));
            p2pow = r.mul(&p2pow, p2);
        }
        acc
    }

    /// `f(xA)` for the row vector `x = (x1, x2)` and `A = [[a11, a12], [a21, a22]]`,
    /// i.e. `x1 ↦ a11 x1 + a21 x2`, `x2 ↦ a12 x1 + a22 x2`.
    pub fn substitute_row(&self, a: &[[R::Elem; 2]; 2]) -> Self {
        let r = self.ring.clone();
        let y1 = Self::linear(r.clone(), a[0][0].clone(), a[1][0].clone());
        let y2 = Self::linear(r.clone(), a[0][1].clone(), a[1][1].clone());
        self.substitute_forms(&y1, &y2)
    }

    /// `f(y1, y2)` for two linear forms.
    pub fn substitute_forms(&self, y1: &Self, y2: &Self) -> Self {
        assert!(y1.degree() == 1 && y2.degree() == 1);
        let d = self.degree();
        let r = self.ring.clone();
        let mut p1 = vec![Self::one(r.clone())];
        let mut p2 = vec![Self::one(r.clone())];
        for k in 1..=d {
            p1.push(p1[k - 1].mul(y1));
            p2.push(p2[k - 1].mul(y2));
        }
        let mut out = Self::zero(r, d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            out = out.add(&p1[d - i].mul(&p2[i]).scale(c));
        }
        out
    }

    pub fn partial_x1(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(self.ring.clone(), 0);
        }
        let c = (0..d)
            .map(|i| self.ring.scale_i64(&self.coeffs[i], (d - i) as i64))
            .collect();
        Self::new(self.ring.clone(), c)
    }

    pub fn partial_x2(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(self.ring.clone(), 0);
        }
        let c = (1..=d)
            .map(|i| self.ring.scale_i64(&self.coeffs[i], i as i64))
            .collect();
        Self::new(self.ring.clone(), c)
    }

    /// Same coefficients pushed through a ring map.
    pub fn map<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> BinaryForm<S> {
        BinaryForm::new(target, self.coeffs.iter().map(f).collect())
    }

    pub fn render_with(&self, v1: &str, v2: &str) -> String {
        let d = self.degree();
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            let mut mono = Vec::new();
            match d - i {
                0 => {}
                1 => mono.push(v1.to_string()),
                e => mono.push(format!("{v1}^{e}")),
            }
            match i {
                0 => {}
                1 => mono.push(v2.to_string()),
                e => mono.push(format!("{v2}^{e}")),
            }
            let cs = self.ring.render(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', ' ']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let mag = if mag.contains(['+', '-', ' ']) {
                format!("({mag})")
            } else {
                mag
            };
            let body = match (mono.is_empty(), mag == "1") {
                (true, _) => mag,
                (false, true) => mono.join("*"),
                (false, false) => format!("{mag}*{}", mono.join("*")),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl<R: Ring> fmt::Display for BinaryForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with("x1", "x2"))
    }
}

/// A point of P¹ stored as a row vector, compared up to scaling.
#[derive(Clone, Debug)]
pub struct ProjPoint<F: Field> {
    field: F,
    coords: [F::Elem; 2],
}

impl<F: Field> ProjPoint<F> {
    pub fn new(field: F, p1: F::Elem, p2: F::Elem) -> Result<Self> {
        if field.is_zero(&p1) && field.is_zero(&p2) {
            return Err(Error::contract("projective point with both coordinates zero"));
        }
        Ok(ProjPoint {
            field,
            coords: [p1, p2],
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coords(&self) -> &[F::Elem; 2] {
        &self.coords
    }

    /// Representative `(a : 1)` or `(1 : 0)`.
    pub fn normalized(&self) -> Self {
        let f = &self.field;
        let [p1, p2] = &self.coords;
        let coords = if f.is_zero(p2) {
            [f.one(), f.zero()]
        } else {
            [f.div(p1, p2).unwrap(), f.one()]
        };
        ProjPoint {
            field: f.clone(),
            coords,
        }
    }

    pub fn render(&self) -> String {
        let n = self.normalized();
        format!("({}:{})", self.field.render(&n.coords[0]), self.field.render(&n.coords[1]))
    }
}

impl<F: Field> PartialEq for ProjPoint<F> {
    fn eq(&self, other: &Self) -> bool {
        let f = &self.field;
        let [a1, a2] = &self.coords;
        let [b1, b2] = &other.coords;
        f.sub(&f.mul(a1, b2), &f.mul(a2, b1)) == f.zero()
    }
}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// ---------------------------------------------------------------------------
// Operations over a field

impl<F: Field> BinaryForm<F> {
    /// Splits `f = x2^k * f~` and returns `(k, f~(x1, 1))` as ascending
    /// univariate coefficients in `x1`. Zero form → `None`.
    pub fn dehomogenize(&self) -> Option<(usize, Vec<F::Elem>)> {
        let k = self.coeffs.iter().position(|c| !self.ring.is_zero(c))?;
        let d = self.degree();
        // coefficient of x1^(d-i) sits at ascending index d - i
        let asc: Vec<F::Elem> = (k..=d).rev().map(|i| self.coeffs[i].clone()).collect();
        // asc[j] = coeff of x1^j, for j = 0..=d-k
        Some((k, asc))
    }

    /// Inverse of `dehomogenize`: `x2^k * x2^(deg g) g(x1/x2)`.
    pub fn rehomogenize(field: F, x2_power: usize, ascending: &[F::Elem]) -> Self {
        let dg = ascending.len().saturating_sub(1);
        let total = dg + x2_power;
        let mut c = vec![field.zero(); total + 1];
        for (j, a) in ascending.iter().enumerate() {
            // x1^j x2^(dg - j + k): index i = total - j
            c[total - j] = a.clone();
        }
        BinaryForm::new(field, c)
    }

    /// `self / other` when the division is exact.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return (self.degree() >= other.degree())
                .then(|| Self::zero(self.ring.clone(), self.degree() - other.degree()));
        }
        let (ka, a) = self.dehomogenize().unwrap();
        let (kb, b) = other.dehomogenize().unwrap();
        if ka < kb || self.degree() < other.degree() {
            return None;
        }
        let ring = UPolyRing::new(self.ring.clone());
        let q = ring.exact_div(&a, &b)?;
        let qdeg = self.degree() - other.degree();
        let out = Self::rehomogenize(self.ring.clone(), ka - kb, &q);
        (out.degree() == qdeg).then_some(out)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Distinct roots of the form defined over the base field, as normalized
    /// projective points in increasing order (`(a:1)` sorted by `a`, then `(1:0)`).
    pub fn rational_roots(&self) -> Vec<ProjPoint<F>>
    where
        F: ExactField,
    {
        let f = self.ring.clone();
        let Some((k, asc)) = self.dehomogenize() else {
            return Vec::new();
        };
        let mut roots = f.rational_roots(&asc);
        roots.sort_by(|a, b| f.cmp_elems(a, b));
        let mut pts: Vec<ProjPoint<F>> = roots
            .into_iter()
            .map(|r| ProjPoint::new(f.clone(), r, f.one()).unwrap())
            .collect();
        if k > 0 {
            pts.push(ProjPoint::new(f.clone(), f.one(), f.zero()).unwrap());
        }
        pts
    }
}

/// Homogeneous gcd of a list of forms over a field, monic in its leading
/// nonzero coefficient. Zero forms are ignored; an all-zero list is an error.
pub fn binary_gcd<F: Field>(forms: &[BinaryForm<F>]) -> Result<BinaryForm<F>> {
    let field = match forms.first() {
        Some(f) => f.ring().clone(),
        None => return Err(Error::DegenerateInput("gcd of an empty list".into())),
    };
    let ring = UPolyRing::new(field.clone());
    let mut x2_power: Option<usize> = None;
    let mut g: Vec<F::Elem> = Vec::new();
    for f in forms {
        let Some((k, asc)) = f.dehomogenize() else {
            continue;
        };
        x2_power = Some(x2_power.map_or(k, |p| p.min(k)));
        g = ring.gcd(&g, &asc);
    }
    match x2_power {
        None => Err(Error::DegenerateInput("gcd of all-zero forms".into())),
        Some(k) => Ok(BinaryForm::rehomogenize(field, k, &g)),
    }
}

/// Homogeneous resultant via the Sylvester determinant, using the formal
/// degrees of both forms. Zero iff the forms share a projective zero over the
/// algebraic closure (a vanishing leading coefficient on both sides counts as
/// a common zero at `(1:0)`).
pub fn resultant<R: Ring>(p: &BinaryForm<R>, q: &BinaryForm<R>) -> R::Elem {
    let r = p.ring();
    let (m, n) = (p.degree(), q.degree());
    let size = m + n;
    if size == 0 {
        return r.one();
    }
    let mut rows = vec![vec![r.zero(); size]; size];
    for k in 0..n {
        for (i, c) in p.coeffs().iter().enumerate() {
            rows[k][k + i] = c.clone();
        }
    }
    for k in 0..m {
        for (i, c) in q.coeffs().iter().enumerate() {
            rows[n + k][k + i] = c.clone();
        }
    }
    super::det::det_laplace(r, &rows)
}

/// Discriminant `b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd` of
/// `a x1³ + b x1²x2 + c x1x2² + d x2³`.
pub fn cubic_discriminant<R: Ring>(f: &BinaryForm<R>) -> Result<R::Elem> {
    if f.degree() != 3 {
        return Err(Error::contract(format!(
            "discriminant needs a cubic, got degree {}",
            f.degree()
        )));
    }
    let r = f.ring();
    let [a, b, c, d] = [f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3)];
    let m = |xs: &[&R::Elem]| xs.iter().fold(r.one(), |acc, x| r.mul(&acc, x));
    let terms = [
        m(&[b, b, c, c]),
        r.scale_i64(&m(&[a, c, c, c]), -4),
        r.scale_i64(&m(&[b, b, b, d]), -4),
        r.scale_i64(&m(&[a, a, d, d]), -27),
        r.scale_i64(&m(&[a, b, c, d]), 18),
    ];
    Ok(r.sum(terms.iter()))
}
