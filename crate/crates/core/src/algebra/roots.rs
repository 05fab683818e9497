//! Rational roots of univariate polynomials over Q and F_p.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ring::{PrimeField, Ring};
use super::upoly::UPolyRing;

/// Candidate denominators/numerators above this many divisors are not
/// enumerated; polynomials arising here stay far below it.
const MAX_DIVISORS: usize = 1 << 20;

pub(crate) fn rational_roots_q(ascending: &[BigRational]) -> Vec<BigRational> {
    let ring = UPolyRing::new(super::ring::Rationals);
    let a = ring.from_coeffs(ascending.to_vec());
    if a.len() <= 1 {
        return Vec::new();
    }
    let sf = ring.squarefree_part(&a);
    let mut roots = Vec::new();
    // Factor out t.
    let mut poly = sf.clone();
    if poly[0].is_zero() {
        roots.push(BigRational::zero());
        poly.remove(0);
    }
    if poly.len() <= 1 {
        return roots;
    }
    // Clear denominators.
    let lcm = poly
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let lead = ints.last().unwrap().abs();
    let constant = ints[0].abs();
    let nums = divisors(&constant);
    let dens = divisors(&lead);
    let mut seen = BTreeSet::new();
    for n in &nums {
        for d in &dens {
            for sign in [1i32, -1] {
                let cand = BigRational::new(
                    BigInt::from(n.clone()) * BigInt::from(sign),
                    BigInt::from(d.clone()),
                );
                if seen.insert(cand.clone()) && ring.eval(&poly, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &BigInt) -> Vec<BigUint> {
    let n = n.magnitude().clone();
    if n.is_one() {
        return vec![BigUint::one()];
    }
    let (factors, rest) = num_prime::nt_funcs::factors(n, None);
    let mut divs = vec![BigUint::one()];
    let push_prime = |p: &BigUint, e: usize, divs: &mut Vec<BigUint>| {
        let base = divs.clone();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= p;
            for d in &base {
                divs.push(d * &pk);
            }
        }
    };
    for (p, e) in &factors {
        push_prime(p, *e, &mut divs);
        assert!(divs.len() <= MAX_DIVISORS, "too many divisor candidates");
    }
    // Unfactored cofactors are treated as prime; this can only miss roots,
    // never report a false one, since every candidate is checked exactly.
    if let Some(rest) = rest {
        for c in rest {
            push_prime(&c, 1, &mut divs);
        }
    }
    divs
}

pub(crate) fn roots_fp(field: &PrimeField, ascending: &[u64]) -> Vec<u64> {
    let ring = UPolyRing::new(*field);
    let a = ring.from_coeffs(ascending.to_vec());
    if a.len() <= 1 {
        return Vec::new();
    }
    let p = field.modulus();
    if p <= 1000 {
        return (0..p).filter(|x| ring.eval(&a, x) == 0).collect();
    }
    // gcd with t^p - t isolates the product of distinct linear factors.
    let t = ring.var();
    let tp = ring.pow_mod(&t, p, &a);
    let h = ring.gcd(&a, &ring.sub(&tp, &t));
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    split_linear(&ring, &h, &mut rng, &mut out);
    out.sort_unstable();
    out
}

/// Cantor–Zassenhaus equal-degree splitting for a product of distinct
/// linear factors over F_p, p odd.
fn split_linear(ring: &UPolyRing<PrimeField>, h: &[u64], rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    let f = ring.field();
    match ring.degree(h) {
        None | Some(0) => {}
        Some(1) => {
            let m = ring.monic(h);
            out.push(f.neg(&m[0]));
        }
        Some(_) => {
            let p = f.modulus();
            loop {
                let a = rng.random_range(0..p);
                let shifted = vec![a, 1];
                let pw = ring.pow_mod(&shifted, (p - 1) / 2, h);
                let cand = ring.gcd(h, &ring.sub(&pw, &ring.one()));
                let d = ring.degree(&cand).unwrap_or(0);
                if d > 0 && d < ring.degree(h).unwrap() {
                    let (other, _) = ring.divrem(h, &cand);
                    split_linear(ring, &cand, rng, out);
                    split_linear(ring, &other, rng, out);
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_roots_of_product() {
        // (2t - 3)(t + 5) t (t^2 + 1) = expand by hand via the ring
        let r = UPolyRing::new(super::super::ring::Rationals);
        let a = r.mul(&vec![q(-3, 1), q(2, 1)], &vec![q(5, 1), q(1, 1)]);
        let a = r.mul(&a, &vec![q(0, 1), q(1, 1)]);
        let a = r.mul(&a, &vec![q(1, 1), q(0, 1), q(1, 1)]);
        assert_eq!(rational_roots_q(&a), vec![q(-5, 1), q(0, 1), q(3, 2)]);
    }

    #[test]
    fn roots_over_large_prime() {
        let f = PrimeField::new(1_000_003).unwrap();
        let r = UPolyRing::new(f);
        let roots = [5u64, 77, 999_999];
        let mut poly = r.one();
        for x in roots {
            poly = r.mul(&poly, &vec![f.neg(&x), 1]);
        }
        // times an irreducible-looking quadratic t^2 - 2 if 2 is a non-residue
        poly = r.mul(&poly, &vec![f.neg(&2), 0, 1]);
        let found = roots_fp(&f, &poly);
        for x in roots {
            assert!(found.contains(&x));
        }
        for x in &found {
            assert_eq!(r.eval(&poly, x), 0);
        }
    }
}
