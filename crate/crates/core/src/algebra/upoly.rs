//! Dense univariate polynomials over a field.
//!
//! Elements are ascending coefficient vectors with no trailing zeros; the
//! zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ring::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct UPolyRing<F> {
    field: F,
}

impl<F: Field> UPolyRing<F> {
    pub fn new(field: F) -> Self {
        UPolyRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> Vec<F::Elem> {
        self.trim(&mut coeffs);
        coeffs
    }

    pub fn constant(&self, c: F::Elem) -> Vec<F::Elem> {
        self.from_coeffs(vec![c])
    }

    /// The indeterminate `t`.
    pub fn var(&self) -> Vec<F::Elem> {
        vec![self.field.zero(), self.field.one()]
    }

    fn trim(&self, v: &mut Vec<F::Elem>) {
        while v.last().is_some_and(|c| self.field.is_zero(c)) {
            v.pop();
        }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self, a: &[F::Elem]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn eval(&self, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        let f = &self.field;
        a.iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.scale_i64(c, i as i64))
            .collect();
        self.from_coeffs(out)
    }

    pub fn scale(&self, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        self.from_coeffs(a.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn monic(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        match a.last() {
            None => Vec::new(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(a, &inv)
            }
        }
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let db = self.degree(b).expect("division by the zero polynomial");
        let lc_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
        let mut rem: Vec<F::Elem> = a.to_vec();
        if rem.len() <= db {
            return (Vec::new(), rem);
        }
        let mut quot = vec![f.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if f.is_zero(&rem[i]) {
                continue;
            }
            let c = f.mul(&rem[i], &lc_inv);
            let shift = i - db;
            for (j, bj) in b.iter().enumerate() {
                rem[shift + j] = f.sub(&rem[shift + j], &f.mul(&c, bj));
            }
            quot[shift] = c;
        }
        rem.truncate(db);
        (self.from_coeffs(quot), self.from_coeffs(rem))
    }

    pub fn rem(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.divrem(a, b).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
    pub fn exact_div(&self, a: &[F::Elem], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let (q, r) = self.divrem(a, b);
        r.is_empty().then_some(q)
    }

    /// `a^e mod m`.
    pub fn pow_mod(&self, a: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
            e >>= 1;
            if e > 0 {
                base = self.rem(&self.mul(&base, &base), m);
            }
        }
        acc
    }

    /// Product of the distinct irreducible factors (each to power 1).
    pub fn squarefree_part(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        if a.len() <= 1 {
            return self.monic(a);
        }
        let d = self.derivative(a);
        if d.is_empty() {
            // Only possible in characteristic p: a(t) = b(t^p) = b(t)^p over F_p.
            let p = self.field.characteristic() as usize;
            let root: Vec<F::Elem> = a.iter().step_by(p).cloned().collect();
            return self.squarefree_part(&root);
        }
        let g = self.gcd(a, &d);
        let (q, _) = self.divrem(a, &g);
        // q is squarefree in characteristic 0; in characteristic p, factors whose
        // multiplicity is divisible by p hide in g, so recurse on the remainder.
        let rest = self.squarefree_part(&g);
        let common = self.gcd(&q, &rest);
        let (extra, _) = self.divrem(&rest, &common);
        self.monic(&self.mul(&q, &extra))
    }
}

impl<F: Field> Ring for UPolyRing<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        vec![self.field.one()]
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.field.from_int(n))
    }
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        self.field.from_rational(q).map(|c| self.constant(c))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.field;
        let n = a.len().max(b.len());
        let z = f.zero();
        let out = (0..n)
            .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.from_coeffs(out)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|c| self.field.neg(c)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let f = &self.field;
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn render(&self, a: &Self::Elem) -> String {
        if a.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let cs = self.field.render(c);
            parts.push(match i {
                0 => cs,
                1 => format!("{cs}*t"),
                _ => format!("{cs}*t^{i}"),
            });
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{PrimeField, Rationals};

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn gcd_over_q() {
        let r = UPolyRing::new(Rationals);
        // (t-1)(t+1) and (t-1)(t-2)
        let a = r.from_coeffs(qv(&[-1, 0, 1]));
        let b = r.from_coeffs(qv(&[2, -3, 1]));
        assert_eq!(r.gcd(&a, &b), qv(&[-1, 1]));
    }

    #[test]
    fn divrem_reconstructs() {
        let r = UPolyRing::new(PrimeField::new(101).unwrap());
        let a = r.from_coeffs(vec![3, 5, 0, 7, 1]);
        let b = r.from_coeffs(vec![2, 0, 9]);
        let (q, rem) = r.divrem(&a, &b);
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        assert!(rem.len() < b.len());
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        let r = UPolyRing::new(Rationals);
        let lin = r.from_coeffs(qv(&[-2, 1]));
        let quad = r.from_coeffs(qv(&[1, 0, 1]));
        let a = r.mul(&r.pow(&lin, 3), &quad);
        assert_eq!(r.squarefree_part(&a), r.mul(&lin, &quad));

        let f = PrimeField::new(5).unwrap();
        let r5 = UPolyRing::new(f);
        // (t - 1)^5 * (t - 2)
        let a = r5.mul(&r5.pow(&vec![4, 1], 5), &vec![3, 1]);
        assert_eq!(r5.squarefree_part(&a), r5.mul(&vec![4, 1], &vec![3, 1]));
    }
}
