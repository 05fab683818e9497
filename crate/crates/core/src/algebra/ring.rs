//! Scalar domains.
//!
//! A ring is a small context object (`Rationals`, `PrimeField { p }`, ...)
//! and its elements are plain values; all arithmetic goes through the
//! context. This keeps runtime moduli out of the element type.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Ring: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// Image of a rational number, if its denominator is invertible.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn scale_i64(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_i64(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
}

/// Fields over which we can enumerate rational roots and order elements
/// canonically (used for witness listings).
pub trait ExactField: Field {
    /// Distinct roots in the field of a univariate polynomial given by
    /// ascending coefficients. The zero polynomial has no listed roots.
    fn rational_roots(&self, ascending: &[Self::Elem]) -> Vec<Self::Elem>;

    fn cmp_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
}

// ---------------------------------------------------------------------------
// Rationals

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

impl ExactField for Rationals {
    fn rational_roots(&self, ascending: &[BigRational]) -> Vec<BigRational> {
        super::roots::rational_roots_q(ascending)
    }

    fn cmp_elems(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }
}

// ---------------------------------------------------------------------------
// Prime fields

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// F_p for a prime p > 3.
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 {
            return Err(Error::contract(format!(
                "prime field characteristic must exceed 3, got {p}"
            )));
        }
        Self::with_small_char(p)
    }

    /// F_p for any prime, including 2 and 3. Only the bundle statistics use
    /// this; binary-cubic code needs 6 to be invertible.
    pub fn with_small_char(p: u64) -> Result<Self> {
        if p >= 1 << 62 {
            return Err(Error::contract(format!("modulus {p} too large")));
        }
        if !num_prime::nt_funcs::is_prime64(p) {
            return Err(Error::contract(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> u64 {
        v % self.p
    }

    fn pow_u64(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a, self.p);
            }
            a = mulmod(a, a, self.p);
            e >>= 1;
        }
        acc
    }
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("reduced residue fits")
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let num = self.from_int(q.numer());
        let den = self.from_int(q.denom());
        self.inv(&den).map(|d| mulmod(num, d, self.p))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow_u64(*a, self.p - 2))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl ExactField for PrimeField {
    fn rational_roots(&self, ascending: &[u64]) -> Vec<u64> {
        super::roots::roots_fp(self, ascending)
    }

    fn cmp_elems(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }
}

// ---------------------------------------------------------------------------
// Dual numbers

#[derive(Clone, Debug, PartialEq)]
pub struct Dual<E> {
    pub re: E,
    pub eps: E,
}

/// `R[ε]/(ε²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualRing<R> {
    base: R,
}

impl<R: Ring> DualRing<R> {
    pub fn new(base: R) -> Self {
        DualRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn make(&self, re: R::Elem, eps: R::Elem) -> Dual<R::Elem> {
        Dual { re, eps }
    }

    pub fn epsilon(&self) -> Dual<R::Elem> {
        Dual {
            re: self.base.zero(),
            eps: self.base.one(),
        }
    }

    pub fn embed(&self, a: &R::Elem) -> Dual<R::Elem> {
        Dual {
            re: a.clone(),
            eps: self.base.zero(),
        }
    }
}

impl<R: Field> DualRing<R> {
    /// `(a + εb)⁻¹ = a⁻¹ − ε b a⁻²`; defined iff `a` is invertible.
    pub fn inv_unit(&self, x: &Dual<R::Elem>) -> Option<Dual<R::Elem>> {
        let b = &self.base;
        let ai = b.inv(&x.re)?;
        let eps = b.neg(&b.mul(&x.eps, &b.mul(&ai, &ai)));
        Some(Dual { re: ai, eps })
    }
}

impl<R: Ring> Ring for DualRing<R> {
    type Elem = Dual<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.embed(&self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.embed(&self.base.from_int(n))
    }
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        self.base.from_rational(q).map(|a| self.embed(&a))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual {
            re: self.base.add(&a.re, &b.re),
            eps: self.base.add(&a.eps, &b.eps),
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Dual {
            re: self.base.neg(&a.re),
            eps: self.base.neg(&a.eps),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.base;
        Dual {
            re: r.mul(&a.re, &b.re),
            eps: r.add(&r.mul(&a.re, &b.eps), &r.mul(&a.eps, &b.re)),
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.re) && self.base.is_zero(&a.eps)
    }
    fn render(&self, a: &Self::Elem) -> String {
        format!("({} + {}*eps)", self.base.render(&a.re), self.base.render(&a.eps))
    }
}
