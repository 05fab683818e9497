//! Polynomials in the genus parameter `g` with rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::Ring;

/// Element of `Q[g]`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GenusPoly {
    coeffs: Vec<BigRational>,
}

impl GenusPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        GenusPoly { coeffs }
    }

    /// From ascending integer coefficients, e.g. `[2, 1]` is `g + 2`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn int(n: i64) -> Self {
        Self::from_ints(&[n])
    }

    pub fn g() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn zero() -> Self {
        GenusPoly::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, g: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * g + c)
    }

    pub fn eval_int(&self, g: i64) -> BigRational {
        self.eval(&BigRational::from_integer(g.into()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        Self::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        GenusPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * q).collect())
    }
}

impl fmt::Display for GenusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < BigRational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "g".into(),
                _ => format!("g^{i}"),
            };
            match (var.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&var)?,
                (false, false) => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

/// The coefficient ring `Q[g]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenusPolys;

impl Ring for GenusPolys {
    type Elem = GenusPoly;

    fn zero(&self) -> GenusPoly {
        GenusPoly::zero()
    }
    fn one(&self) -> GenusPoly {
        GenusPoly::one()
    }
    fn from_int(&self, n: &BigInt) -> GenusPoly {
        GenusPoly::constant(BigRational::from_integer(n.clone()))
    }
    fn from_rational(&self, q: &BigRational) -> Option<GenusPoly> {
        Some(GenusPoly::constant(q.clone()))
    }
    fn add(&self, a: &GenusPoly, b: &GenusPoly) -> GenusPoly {
        a.add(b)
    }
    fn neg(&self, a: &GenusPoly) -> GenusPoly {
        a.neg()
    }
    fn mul(&self, a: &GenusPoly, b: &GenusPoly) -> GenusPoly {
        a.mul(b)
    }
    fn is_zero(&self, a: &GenusPoly) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &GenusPoly) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_of_g_plus_two() {
        // (g+1)(g+2)/2 at g = 3 is 10
        let n = GenusPoly::from_ints(&[2, 1]);
        let c = n
            .mul(&n.sub(&GenusPoly::one()))
            .scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(c.eval_int(3), BigRational::from_integer(10.into()));
        assert_eq!(c.to_string(), "1/2*g^2+3/2*g+1");
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let a = GenusPoly::g();
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.sub(&a), GenusPoly::zero());
    }
}
