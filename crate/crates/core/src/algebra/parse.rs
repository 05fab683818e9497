//! Text grammar for binary forms: terms `c*x1^a*x2^b` joined by `+`/`-`.
//!
//! Coefficients are integers or `p/q`; whitespace is ignored. Variable names
//! are supplied by the caller (`x1`/`x2` for fiber forms, `t0`/`t1` for base
//! forms).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::form::BinaryForm;
use super::ring::Ring;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn exponent(&mut self) -> Result<usize> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let at = self.pos;
        let e = self.integer()?;
        usize::try_from(e).map_err(|_| Error::Parse {
            offset: at,
            message: "exponent too large".into(),
        })
    }

    fn variable(&mut self, vars: [&str; 2]) -> Option<usize> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        for (i, v) in vars.iter().enumerate() {
            if rest.starts_with(v.as_bytes()) {
                let after = rest.get(v.len()).copied();
                if after.is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    continue;
                }
                self.pos += v.len();
                return Some(i);
            }
        }
        None
    }
}

/// Parses into exponent pairs `(a, b)` with rational coefficients.
pub fn parse_terms(text: &str, vars: [&str; 2]) -> Result<Vec<(BigRational, usize, usize)>> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    if lx.peek().is_none() {
        return lx.err("empty input");
    }
    let mut first = true;
    while lx.peek().is_some() {
        let mut sign = BigInt::one();
        if lx.eat(b'-') {
            sign = -sign;
        } else if !lx.eat(b'+') && !first {
            return lx.err("expected '+' or '-'");
        }
        first = false;

        let mut coeff = BigRational::from_integer(sign);
        let (mut a, mut b) = (0usize, 0usize);
        let mut factors = 0;
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = lx.integer()?;
                    let mut q = BigRational::from_integer(num);
                    if lx.eat(b'/') {
                        let at = lx.pos;
                        let den = lx.integer()?;
                        if den.is_zero() {
                            return Err(Error::Parse {
                                offset: at,
                                message: "zero denominator".into(),
                            });
                        }
                        q /= BigRational::from_integer(den);
                    }
                    coeff *= q;
                }
                Some(_) => match lx.variable(vars) {
                    Some(0) => a += lx.exponent()?,
                    Some(_) => b += lx.exponent()?,
                    None => {
                        return lx.err(format!("expected a number, {} or {}", vars[0], vars[1]))
                    }
                },
                None => return lx.err("unexpected end of input"),
            }
            factors += 1;
            if !lx.eat(b'*') {
                break;
            }
        }
        debug_assert!(factors > 0);
        terms.push((coeff, a, b));
    }
    Ok(terms)
}

/// Parses a homogeneous form. `degree` is required when the text may be the
/// zero polynomial; otherwise it is inferred and, if given, checked.
pub fn parse_form<R: Ring>(ring: &R, text: &str, vars: [&str; 2], degree: Option<usize>) -> Result<BinaryForm<R>> {
    let terms = parse_terms(text, vars)?;
    let nonzero: Vec<_> = terms.iter().filter(|(c, _, _)| !c.is_zero()).collect();
    let deg = match (degree, nonzero.first()) {
        (Some(d), _) => d,
        (None, Some((_, a, b))) => a + b,
        (None, None) => {
            return Err(Error::Parse {
                offset: 0,
                message: "zero form needs an explicit degree".into(),
            })
        }
    };
    let mut coeffs = vec![ring.zero(); deg + 1];
    for (c, a, b) in &terms {
        if c.is_zero() {
            continue;
        }
        if a + b != deg {
            return Err(Error::Parse {
                offset: 0,
                message: format!("term of degree {} in a form of degree {deg}", a + b),
            });
        }
        let v = ring.from_rational(c).ok_or_else(|| Error::Parse {
            offset: 0,
            message: format!("coefficient {c} is not defined in this field"),
        })?;
        coeffs[*b] = ring.add(&coeffs[*b], &v);
    }
    Ok(BinaryForm::new(ring.clone(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{PrimeField, Rationals};

    const X: [&str; 2] = ["x1", "x2"];

    #[test]
    fn grammar_example() {
        let f = parse_form(&Rationals, "3*x1^3 - 1/2*x1*x2^2", X, None).unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f, BinaryForm::new(Rationals, vec![
            BigRational::from_integer(3.into()),
            BigRational::zero(),
            BigRational::new((-1).into(), 2.into()),
            BigRational::zero(),
        ]));
    }

    #[test]
    fn zero_and_repeated_factors() {
        let z = parse_form(&Rationals, "0", X, Some(3)).unwrap();
        assert!(z.is_zero() && z.degree() == 3);
        let f = parse_form(&Rationals, "x1*x1*x2 + 2*3*x2^3", X, None).unwrap();
        assert_eq!(f, BinaryForm::from_i64(Rationals, &[0, 1, 0, 6]));
    }

    #[test]
    fn errors_report_offsets() {
        match parse_form(&Rationals, "x1^2 + y", X, None) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_form(&Rationals, "x1^2 + x2", X, None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_form(&Rationals, "x1 x2", X, None),
            Err(Error::Parse { offset: 3, .. })
        ));
        let f5 = PrimeField::new(5).unwrap();
        assert!(parse_form(&f5, "1/5*x1", X, None).is_err());
    }
}
