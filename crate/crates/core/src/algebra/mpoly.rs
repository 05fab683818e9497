//! Sparse multivariate polynomials with coefficients in any [`Ring`].

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ring::Ring;

/// Exponent vector, one entry per variable of the ambient ring.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct SparsePoly<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E> SparsePoly<E> {
    pub fn terms(&self) -> &BTreeMap<Monomial, E> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Polynomial ring `R[v_0, ..., v_{n-1}]` with named variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R> {
    coeffs: R,
    names: Arc<Vec<String>>,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(coeffs: R, names: &[&str]) -> Self {
        PolyRing {
            coeffs,
            names: Arc::new(names.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn coeff_ring(&self) -> &R {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, i: usize) -> SparsePoly<R::Elem> {
        let mut m = vec![0; self.nvars()];
        m[i] = 1;
        self.term(m, self.coeffs.one())
    }

    pub fn constant(&self, c: R::Elem) -> SparsePoly<R::Elem> {
        self.term(vec![0; self.nvars()], c)
    }

    pub fn term(&self, mono: Monomial, c: R::Elem) -> SparsePoly<R::Elem> {
        debug_assert_eq!(mono.len(), self.nvars());
        let mut terms = BTreeMap::new();
        if !self.coeffs.is_zero(&c) {
            terms.insert(mono, c);
        }
        SparsePoly { terms }
    }

    pub fn from_terms(&self, raw: impl IntoIterator<Item = (Monomial, R::Elem)>) -> SparsePoly<R::Elem> {
        let mut terms: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (m, c) in raw {
            accumulate(&self.coeffs, &mut terms, m, c);
        }
        SparsePoly { terms }
    }

    pub fn eval(&self, p: &SparsePoly<R::Elem>, point: &[R::Elem]) -> R::Elem {
        let r = &self.coeffs;
        let mut acc = r.zero();
        for (m, c) in &p.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = r.mul(&t, &r.pow(x, e));
                }
            }
            acc = r.add(&acc, &t);
        }
        acc
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, p: &SparsePoly<R::Elem>, mono: &[u32]) -> R::Elem {
        p.terms.get(mono).cloned().unwrap_or_else(|| self.coeffs.zero())
    }
}

pub(crate) fn accumulate<R: Ring>(
    r: &R,
    terms: &mut BTreeMap<Monomial, R::Elem>,
    m: Monomial,
    c: R::Elem,
) {
    if r.is_zero(&c) {
        return;
    }
    match terms.get_mut(&m) {
        Some(existing) => {
            let s = r.add(existing, &c);
            if r.is_zero(&s) {
                terms.remove(&m);
            } else {
                *existing = s;
            }
        }
        None => {
            terms.insert(m, c);
        }
    }
}

pub(crate) fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = SparsePoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        SparsePoly {
            terms: BTreeMap::new(),
        }
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.coeffs.one())
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.coeffs.from_int(n))
    }
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        self.coeffs.from_rational(q).map(|c| self.constant(c))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            accumulate(&self.coeffs, &mut terms, m.clone(), c.clone());
        }
        SparsePoly { terms }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        SparsePoly {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.coeffs.neg(c)))
                .collect(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                accumulate(&self.coeffs, &mut terms, mono_mul(ma, mb), self.coeffs.mul(ca, cb));
            }
        }
        SparsePoly { terms }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }
    fn render(&self, a: &Self::Elem) -> String {
        render_terms(&self.coeffs, &self.names, a.terms.iter().rev())
    }
}

/// Renders `c*v1^e1*...` terms joined by ` + ` / ` - `.
pub(crate) fn render_terms<'a, R: Ring>(
    r: &R,
    names: &[String],
    terms: impl Iterator<Item = (&'a Monomial, &'a R::Elem)>,
) -> String {
    let mut out = String::new();
    for (m, c) in terms {
        let mono: Vec<String> = m
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        let cs = r.render(c);
        let compound = cs.trim_start_matches('-').contains(['+', '-', ' ', '*']);
        let (neg, mag) = if !compound && cs.starts_with('-') {
            (true, cs[1..].to_string())
        } else if compound {
            (false, format!("({cs})"))
        } else {
            (false, cs)
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Rationals;

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let r = PolyRing::new(Rationals, &["a", "b"]);
        let a = r.var(0);
        let b = r.var(1);
        let s = r.add(&a, &b);
        let d = r.sub(&a, &b);
        // (a+b)(a-b) = a^2 - b^2
        let p = r.mul(&s, &d);
        assert_eq!(p.len(), 2);
        assert_eq!(r.render(&p), "a^2 - b^2");
        assert!(r.is_zero(&r.sub(&p, &p)));
    }
}
