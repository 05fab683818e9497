//! Truncated graded rings presented by generators, weights and rewrite rules,
//! with coefficients in `Q[g]`.
//!
//! A [`GradedClass`] is always stored in normal form: every monomial has
//! weighted degree at most the presentation's bound and no monomial is
//! divisible by the left side of a rule.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};

use super::genus::{GenusPoly, GenusPolys};
use super::mpoly::{accumulate, mono_mul, render_terms, Monomial};

/// Hard cap on single rewrite steps in one reduction; a rule system that
/// needs more does not terminate in practice.
const MAX_REWRITES: usize = 1_000_000;

/// `var^power ↦ rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub var: usize,
    pub power: u32,
    pub rhs: BTreeMap<Monomial, GenusPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RingPresentation {
    names: Vec<String>,
    degrees: Vec<u32>,
    rules: Vec<RewriteRule>,
    bound: u32,
}

impl RingPresentation {
    /// Variables given as `(name, degree)`; degrees must be positive.
    pub fn new(vars: &[(&str, u32)], bound: u32) -> Result<Self> {
        if let Some((n, _)) = vars.iter().find(|(_, d)| *d == 0) {
            return Err(Error::Config(format!("variable {n} has degree 0")));
        }
        Ok(RingPresentation {
            names: vars.iter().map(|(n, _)| n.to_string()).collect(),
            degrees: vars.iter().map(|(_, d)| *d).collect(),
            rules: Vec::new(),
            bound,
        })
    }

    /// Adds `var^power ↦ Σ coeff·monomial`. The right side must be
    /// homogeneous of the same weighted degree and must not contain a
    /// multiple of its own left side.
    pub fn with_rule(mut self, var: &str, power: u32, rhs: &[(GenusPoly, &[(&str, u32)])]) -> Result<Self> {
        let v = self.index(var)?;
        if power == 0 {
            return Err(Error::Config("rule with zero power".into()));
        }
        let lhs_deg = self.degrees[v] * power;
        let mut terms = BTreeMap::new();
        for (c, factors) in rhs {
            let mut m = vec![0; self.names.len()];
            for (name, e) in *factors {
                m[self.index(name)?] += e;
            }
            if self.weighted_degree(&m) != lhs_deg {
                return Err(Error::Config(format!(
                    "rule for {var}^{power} is not homogeneous"
                )));
            }
            if m[v] >= power {
                return Err(Error::Config(format!(
                    "rule for {var}^{power} rewrites to a multiple of itself"
                )));
            }
            accumulate(&GenusPolys, &mut terms, m, c.clone());
        }
        self.rules.push(RewriteRule { var: v, power, rhs: terms });
        Ok(self)
    }

    pub fn with_bound(&self, bound: u32) -> Self {
        RingPresentation {
            bound,
            ..self.clone()
        }
    }

    /// Same generators and bound, no rules.
    pub fn without_rules(&self) -> Self {
        RingPresentation {
            rules: Vec::new(),
            ..self.clone()
        }
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Config(format!("unknown variable {name}")))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn weighted_degree(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.degrees).map(|(e, d)| e * d).sum()
    }

    fn find_rule(&self, m: &[u32]) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| m[r.var] >= r.power)
    }

    /// Rewrites raw terms to normal form and drops terms above the bound.
    pub fn normalize(&self, raw: BTreeMap<Monomial, GenusPoly>) -> Result<BTreeMap<Monomial, GenusPoly>> {
        let mut pending: Vec<(Monomial, GenusPoly)> = raw.into_iter().collect();
        let mut done: BTreeMap<Monomial, GenusPoly> = BTreeMap::new();
        let mut steps = 0usize;
        while let Some((m, c)) = pending.pop() {
            if c.is_zero() || self.weighted_degree(&m) > self.bound {
                continue;
            }
            match self.find_rule(&m) {
                None => accumulate(&GenusPolys, &mut done, m, c),
                Some(rule) => {
                    steps += 1;
                    if steps > MAX_REWRITES {
                        return Err(Error::Config(
                            "rewrite rules do not terminate".into(),
                        ));
                    }
                    let mut rest = m.clone();
                    rest[rule.var] -= rule.power;
                    for (rm, rc) in &rule.rhs {
                        pending.push((mono_mul(&rest, rm), c.mul(rc)));
                    }
                }
            }
        }
        Ok(done)
    }
}

/// Element of a truncated presented graded ring over `Q[g]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedClass {
    pres: Arc<RingPresentation>,
    terms: BTreeMap<Monomial, GenusPoly>,
}

impl GradedClass {
    pub fn zero(pres: &Arc<RingPresentation>) -> Self {
        GradedClass {
            pres: pres.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(pres: &Arc<RingPresentation>, c: GenusPoly) -> Self {
        Self::from_raw(pres, [(vec![0; pres.nvars()], c)]).expect("constants are normal")
    }

    pub fn one(pres: &Arc<RingPresentation>) -> Self {
        Self::constant(pres, GenusPoly::one())
    }

    pub fn var(pres: &Arc<RingPresentation>, name: &str) -> Result<Self> {
        let mut m = vec![0; pres.nvars()];
        m[pres.index(name)?] = 1;
        Self::from_raw(pres, [(m, GenusPoly::one())])
    }

    /// Monomial from `(name, exponent)` pairs with a coefficient.
    pub fn monomial(pres: &Arc<RingPresentation>, c: GenusPoly, factors: &[(&str, u32)]) -> Result<Self> {
        let mut m = vec![0; pres.nvars()];
        for (name, e) in factors {
            m[pres.index(name)?] += e;
        }
        Self::from_raw(pres, [(m, c)])
    }

    /// Builds a class from arbitrary terms, reducing them to normal form.
    pub fn from_raw(
        pres: &Arc<RingPresentation>,
        raw: impl IntoIterator<Item = (Monomial, GenusPoly)>,
    ) -> Result<Self> {
        let mut collected = BTreeMap::new();
        for (m, c) in raw {
            if m.len() != pres.nvars() {
                return Err(Error::contract("monomial length does not match presentation"));
            }
            accumulate(&GenusPolys, &mut collected, m, c);
        }
        Ok(GradedClass {
            pres: pres.clone(),
            terms: pres.normalize(collected)?,
        })
    }

    pub fn presentation(&self) -> &Arc<RingPresentation> {
        &self.pres
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, GenusPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, factors: &[(&str, u32)]) -> Result<GenusPoly> {
        let mut m = vec![0; self.pres.nvars()];
        for (name, e) in factors {
            m[self.pres.index(name)?] += e;
        }
        Ok(self.terms.get(&m).cloned().unwrap_or_default())
    }

    pub fn constant_term(&self) -> GenusPoly {
        self.terms
            .get(&vec![0; self.pres.nvars()])
            .cloned()
            .unwrap_or_default()
    }

    fn check_same(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres,
            "classes from different presentations"
        );
    }

    fn rebuild(&self, raw: BTreeMap<Monomial, GenusPoly>) -> Self {
        GradedClass {
            pres: self.pres.clone(),
            terms: self.pres.normalize(raw).expect("presentation rules validated on construction"),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&GenusPolys, &mut terms, m.clone(), c.clone());
        }
        GradedClass {
            pres: self.pres.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        GradedClass {
            pres: self.pres.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &GenusPoly) -> Self {
        let raw = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), x.mul(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        GradedClass {
            pres: self.pres.clone(),
            terms: raw,
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&GenusPoly::int(n))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let bound = self.pres.bound;
        let mut raw = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = self.pres.weighted_degree(ma);
            for (mb, cb) in &other.terms {
                if da + self.pres.weighted_degree(mb) > bound {
                    continue;
                }
                accumulate(&GenusPolys, &mut raw, mono_mul(ma, mb), ca.mul(cb));
            }
        }
        self.rebuild(raw)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.pres), |acc, _| acc.mul(self))
    }

    /// Normal form with respect to the presentation's rules. Stored classes
    /// are already normal, so this is the identity on them; it exists for
    /// reinterpreting a class under a presentation with more rules.
    pub fn reduce(&self) -> Self {
        self.rebuild(self.terms.clone())
    }

    /// Re-reads this class in another presentation with the same generators,
    /// applying that presentation's rules and bound.
    pub fn reinterpret(&self, target: &Arc<RingPresentation>) -> Result<Self> {
        if target.names != self.pres.names || target.degrees != self.pres.degrees {
            return Err(Error::contract("presentations have different generators"));
        }
        Self::from_raw(target, self.terms.clone())
    }

    /// Drops all terms of weighted degree above `bound`.
    pub fn truncate(&self, bound: u32) -> Self {
        GradedClass {
            pres: self.pres.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.pres.weighted_degree(m) <= bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of weighted degree `k`.
    pub fn part(&self, k: u32) -> Self {
        GradedClass {
            pres: self.pres.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.pres.weighted_degree(m) == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Inverse of `1 + t` up to weighted degree `bound`, by the geometric series.
    pub fn series_inverse(&self, bound: u32) -> Result<Self> {
        if self.constant_term() != GenusPoly::one() {
            return Err(Error::InvalidUnit(format!(
                "constant term is {}, expected 1",
                self.constant_term()
            )));
        }
        let one = Self::one(&self.pres);
        let tail = self.sub(&one).truncate(bound);
        let neg_tail = tail.neg();
        let mut acc = one.clone();
        let mut power = one;
        // tail has no constant term, so tail^k vanishes past degree `bound`.
        for _ in 0..bound {
            power = power.mul(&neg_tail).truncate(bound);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.truncate(bound))
    }

    /// Degree-lowering map `a + b·v ↦ b` for a fiber variable `v` whose
    /// exponent is at most 1 everywhere.
    pub fn pushforward(&self, fiber_var: &str) -> Result<Self> {
        let v = self.pres.index(fiber_var)?;
        let mut raw = BTreeMap::new();
        for (m, c) in &self.terms {
            match m[v] {
                0 => {}
                1 => {
                    let mut rest = m.clone();
                    rest[v] = 0;
                    raw.insert(rest, c.clone());
                }
                e => {
                    return Err(Error::contract(format!(
                        "pushforward needs {fiber_var} to appear linearly, found power {e}"
                    )))
                }
            }
        }
        Ok(GradedClass {
            pres: self.pres.clone(),
            terms: raw,
        })
    }

    /// Ring map sending generator `name` to `images[name]`; generators not
    /// listed map to the same-named generator of `target`.
    pub fn substitute(&self, target: &Arc<RingPresentation>, images: &[(&str, GradedClass)]) -> Result<Self> {
        let mut var_images = Vec::with_capacity(self.pres.nvars());
        for name in &self.pres.names {
            let img = match images.iter().find(|(n, _)| n == name) {
                Some((_, c)) => {
                    c.check_same(&GradedClass::zero(target));
                    c.clone()
                }
                None => GradedClass::var(target, name)?,
            };
            var_images.push(img);
        }
        let mut acc = GradedClass::zero(target);
        for (m, c) in &self.terms {
            let mut t = GradedClass::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&var_images[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Evaluates every coefficient at `g = value`.
    pub fn instantiate(&self, value: i64) -> Self {
        let g = BigRational::from_integer(value.into());
        GradedClass {
            pres: self.pres.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), GenusPoly::constant(c.eval(&g))))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Terms that do not involve `var`.
    pub fn without_var(&self, var: &str) -> Result<Self> {
        let v = self.pres.index(var)?;
        Ok(GradedClass {
            pres: self.pres.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m[v] == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Higher degree first, then by exponent vector.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            self.pres
                .weighted_degree(a)
                .cmp(&self.pres.weighted_degree(b))
                .then_with(|| b.cmp(a))
        });
        f.write_str(&render_terms(&GenusPolys, &self.pres.names, terms.into_iter()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres() -> Arc<RingPresentation> {
        let p = RingPresentation::new(
            &[("c1", 1), ("c2", 2), ("mu1", 1), ("gamma1", 1), ("gamma2", 2)],
            3,
        )
        .unwrap()
        .with_rule(
            "mu1",
            2,
            &[(GenusPoly::int(1), &[("c1", 1), ("mu1", 1)]), (GenusPoly::int(-1), &[("c2", 1)])],
        )
        .unwrap();
        Arc::new(p)
    }

    fn v(p: &Arc<RingPresentation>, n: &str) -> GradedClass {
        GradedClass::var(p, n).unwrap()
    }

    #[test]
    fn cube_of_mu_reduces_by_hand_oracle() {
        let p = pres();
        let mu = v(&p, "mu1");
        let c1 = v(&p, "c1");
        let c2 = v(&p, "c2");
        // μ³ = μ·(c1 μ − c2) = c1(c1 μ − c2) − c2 μ = (c1² − c2) μ − c1 c2
        let expected = c1.mul(&c1).sub(&c2).mul(&mu).sub(&c1.mul(&c2));
        assert_eq!(mu.pow(3), expected);
        assert_eq!(mu.pow(3).reduce(), mu.pow(3));
    }

    #[test]
    fn truncation_examples() {
        let p = Arc::new(pres().with_bound(2));
        let one = GradedClass::one(&p);
        let g1 = v(&p, "gamma1");
        let g2 = v(&p, "gamma2");
        let full = Arc::new(pres().with_bound(4));
        let g1f = v(&full, "gamma1");
        let g2f = v(&full, "gamma2");
        let x = GradedClass::one(&full).add(&g1f).add(&g1f.mul(&g2f));
        assert_eq!(x.truncate(2), GradedClass::one(&full).add(&g1f));
        let prod = one.add(&g1).mul(&one.add(&g2));
        assert_eq!(prod, one.add(&g1).add(&g2));
    }

    #[test]
    fn self_referential_rule_rejected() {
        let p = RingPresentation::new(&[("x", 1), ("y", 1)], 3).unwrap();
        let err = p
            .with_rule("x", 2, &[(GenusPoly::int(1), &[("x", 2)])])
            .unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn cyclic_rules_detected() {
        // x^2 -> x y and y^2 -> x y: x^2 y -> x y^2 -> x^2 y -> ...
        let p = RingPresentation::new(&[("x", 1), ("y", 1)], 5)
            .unwrap()
            .with_rule("x", 2, &[(GenusPoly::int(1), &[("x", 1), ("y", 1)])])
            .unwrap()
            .with_rule("y", 2, &[(GenusPoly::int(1), &[("x", 1), ("y", 1)])])
            .unwrap();
        let p = Arc::new(p);
        let err = GradedClass::monomial(&p, GenusPoly::one(), &[("x", 2), ("y", 1)]).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn inverse_of_one_plus_c1() {
        let p = pres();
        let c1 = v(&p, "c1");
        let one = GradedClass::one(&p);
        let inv = one.add(&c1).series_inverse(2).unwrap();
        assert_eq!(inv, one.sub(&c1).add(&c1.mul(&c1)));
        assert_eq!(one.series_inverse(2).unwrap(), one);
        assert!(matches!(c1.series_inverse(2), Err(Error::InvalidUnit(_))));
    }

    #[test]
    fn pushforward_rejects_non_normal() {
        let p = Arc::new(pres().without_rules());
        let mu = v(&p, "mu1");
        assert!(mu.mul(&mu).pushforward("mu1").is_err());
        assert_eq!(GradedClass::one(&p).pushforward("mu1").unwrap(), GradedClass::zero(&p));
        assert_eq!(mu.pushforward("mu1").unwrap(), GradedClass::one(&p));
    }
}
