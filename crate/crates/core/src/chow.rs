//! Equivariant Chern class computation of the class of the singular locus
//! and the Picard group of the stack of trigonal curves.
//!
//! All classes live in one truncated graded ring over `Q[g]` whose
//! generators are listed in [`GENERATORS`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{smith_normal_form, GenusPoly, GradedClass, IntMatrix, RingPresentation};
use crate::error::{Error, Result};

pub const GENERATORS: [(&str, u32); 12] = [
    ("delta1", 1),
    ("delta2", 2),
    ("gamma1", 1),
    ("gamma2", 2),
    ("sigma1", 1),
    ("sigma2", 2),
    ("xi", 1),
    ("nu1", 1),
    ("c1", 1),
    ("c2", 2),
    ("mu1", 1),
    ("tau", 1),
];

fn int(n: i64) -> GenusPoly {
    GenusPoly::int(n)
}

/// `g + k`.
fn g_plus(k: i64) -> GenusPoly {
    GenusPoly::from_ints(&[k, 1])
}

fn half(p: &GenusPoly) -> GenusPoly {
    p.scale(&BigRational::new(1.into(), 2.into()))
}

/// Generators only, no relations.
pub fn free_presentation(bound: u32) -> Arc<RingPresentation> {
    Arc::new(RingPresentation::new(&GENERATORS, bound).expect("generator degrees are positive"))
}

/// Generators with `xi^2 ↦ −sigma1·xi − sigma2` and `mu1^2 ↦ c1·mu1 − c2`.
pub fn standard_presentation(bound: u32) -> Arc<RingPresentation> {
    let p = RingPresentation::new(&GENERATORS, bound)
        .and_then(|p| {
            p.with_rule(
                "xi",
                2,
                &[(int(-1), &[("sigma1", 1), ("xi", 1)]), (int(-1), &[("sigma2", 1)])],
            )
        })
        .and_then(|p| {
            p.with_rule(
                "mu1",
                2,
                &[(int(1), &[("c1", 1), ("mu1", 1)]), (int(-1), &[("c2", 1)])],
            )
        })
        .expect("standard rules are homogeneous");
    Arc::new(p)
}

fn var(pres: &Arc<RingPresentation>, name: &str) -> GradedClass {
    GradedClass::var(pres, name).expect("generator exists")
}

/// Total Chern class of `V ⊗ L` truncated at degree 2, where `V` has rank `n`
/// and Chern classes `e1, e2`, and `L` is a line bundle with first Chern
/// class `t`.
pub fn chern_of_twisted_trivial(
    n: &GenusPoly,
    e1: &GradedClass,
    e2: &GradedClass,
    t: &GradedClass,
) -> Result<GradedClass> {
    let pres = e1.presentation();
    if pres.bound() > 2 {
        return Err(Error::Unsupported(format!(
            "twisted Chern classes are only implemented up to degree 2, bound is {}",
            pres.bound()
        )));
    }
    let one = GradedClass::one(pres);
    let c1 = e1.add(&t.scale(n));
    let n_minus_1 = n.sub(&GenusPoly::one());
    let binom = half(&n.mul(&n_minus_1));
    let c2 = e2
        .add(&e1.mul(t).scale(&n_minus_1))
        .add(&t.mul(t).scale(&binom));
    Ok(one.add(&c1).add(&c2))
}

/// The same expansion without the degree guard, used where a degree-3
/// ambient bound is needed but only the degree-2 formula is wanted.
fn twisted_c2(n: &GenusPoly, e1: &GradedClass, e2: &GradedClass, t: &GradedClass) -> GradedClass {
    let n_minus_1 = n.sub(&GenusPoly::one());
    let binom = half(&n.mul(&n_minus_1));
    e2.add(&e1.mul(t).scale(&n_minus_1))
        .add(&t.mul(t).scale(&binom))
}

/// `c(O(−1)^{g+2})` with the `gamma` classes as Chern roots twisted by `−xi`.
pub fn chern_twisted_gamma(pres: &Arc<RingPresentation>) -> Result<GradedClass> {
    chern_of_twisted_trivial(
        &g_plus(2),
        &var(pres, "gamma1"),
        &var(pres, "gamma2"),
        &var(pres, "xi").neg(),
    )
}

/// `c(E') = c(O(−1)^{g+2})^{-1} · (1 + delta1 + delta2)`.
pub fn chern_e_prime(pres: &Arc<RingPresentation>) -> Result<GradedClass> {
    let inv = chern_twisted_gamma(pres)?.series_inverse(pres.bound())?;
    let delta = GradedClass::one(pres)
        .add(&var(pres, "delta1"))
        .add(&var(pres, "delta2"));
    Ok(inv.mul(&delta))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WClasses {
    /// `c3` of the rank 3 representation, before reduction.
    pub c3: GradedClass,
    /// Reduced class of the locus upstairs on the projective line.
    pub tilde: GradedClass,
    /// Pushforward along the projective line.
    pub w: GradedClass,
}

/// Class of `W` computed in `pres`, which must have bound at least 3.
pub fn class_of_w_in(pres: &Arc<RingPresentation>) -> Result<WClasses> {
    if pres.bound() < 3 {
        return Err(Error::contract("the class of W needs bound at least 3"));
    }
    let c1 = var(pres, "c1");
    let c2 = var(pres, "c2");
    let mu = var(pres, "mu1");
    let nu = var(pres, "nu1");
    let t = c1.neg().add(&mu.scale_int(2));
    let rank2 = twisted_c2(&int(2), &c1, &c2, &t);
    let line = c1.neg().add(&nu).add(&mu.scale_int(3));
    let c3 = rank2.mul(&line);
    let tilde = c3.reduce();
    let w = pushforward_p1(&tilde, "mu1")?;
    Ok(WClasses { c3, tilde, w })
}

pub fn class_of_w() -> Result<WClasses> {
    class_of_w_in(&standard_presentation(3))
}

/// Pushforward along a projective line bundle with fiber class `fiber_var`.
pub fn pushforward_p1(class: &GradedClass, fiber_var: &str) -> Result<GradedClass> {
    class.pushforward(fiber_var)
}

/// A degree 1 class `delta1·d + gamma1·c + sigma1·s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeClass {
    pub delta1: GenusPoly,
    pub gamma1: GenusPoly,
    pub sigma1: GenusPoly,
}

impl LatticeClass {
    pub fn new(delta1: GenusPoly, gamma1: GenusPoly, sigma1: GenusPoly) -> Self {
        LatticeClass {
            delta1,
            gamma1,
            sigma1,
        }
    }

    pub fn from_class(c: &GradedClass) -> Result<Self> {
        let pres = c.presentation();
        let mut out = LatticeClass::new(GenusPoly::zero(), GenusPoly::zero(), GenusPoly::zero());
        for (m, coeff) in c.terms() {
            let nonzero: Vec<usize> = (0..m.len()).filter(|&i| m[i] > 0).collect();
            let name = match nonzero.as_slice() {
                [i] if m[*i] == 1 => pres.names()[*i].as_str(),
                _ => {
                    return Err(Error::InternalConsistency(format!(
                        "class {c} is not a combination of delta1, gamma1, sigma1"
                    )))
                }
            };
            match name {
                "delta1" => out.delta1 = coeff.clone(),
                "gamma1" => out.gamma1 = coeff.clone(),
                "sigma1" => out.sigma1 = coeff.clone(),
                other => {
                    return Err(Error::InternalConsistency(format!(
                        "unexpected generator {other} in degree 1 class"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Integer coordinates at a given genus.
    pub fn at(&self, g: i64) -> Result<[BigInt; 3]> {
        let conv = |p: &GenusPoly, what: &str| {
            let v = p.eval_int(g);
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::InternalConsistency(format!(
                    "{what} coefficient {v} is not integral at g = {g}"
                )))
            }
        };
        Ok([
            conv(&self.delta1, "delta1")?,
            conv(&self.gamma1, "gamma1")?,
            conv(&self.sigma1, "sigma1")?,
        ])
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})*delta1 + ({})*gamma1 + ({})*sigma1",
            self.delta1, self.gamma1, self.sigma1
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct YClasses {
    /// Class upstairs, reduced by the relation for `xi`.
    pub tilde: GradedClass,
    pub y: LatticeClass,
}

/// Pullback images of `nu1`, `c1`, `c2`.
pub fn pullback_table(pres: &Arc<RingPresentation>) -> Result<[(&'static str, GradedClass); 3]> {
    let xi = var(pres, "xi");
    let nu = xi.scale_int(-2).sub(&var(pres, "sigma1"));
    let ce = chern_e_prime(pres)?;
    Ok([("nu1", nu), ("c1", ce.part(1)), ("c2", ce.part(2))])
}

pub fn class_of_y_in(pres: &Arc<RingPresentation>) -> Result<YClasses> {
    let w = class_of_w()?.w.reinterpret(pres)?;
    let table = pullback_table(pres)?;
    let tilde = w.substitute(pres, &table)?;
    let pushed = pushforward_p1(&tilde, "xi")?;
    Ok(YClasses {
        tilde,
        y: LatticeClass::from_class(&pushed)?,
    })
}

pub fn class_of_y() -> Result<YClasses> {
    class_of_y_in(&standard_presentation(2))
}

/// Image in the character group of the one-parameter subgroup, as a
/// multiple of `tau`.
pub fn restriction_to_gm(c: &LatticeClass) -> GenusPoly {
    c.gamma1.mul(&g_plus(2)).sub(&c.sigma1.scale(&BigRational::from_integer(2.into())))
}

/// Coordinates of `q1` in `(delta1, gamma1, sigma1)`.
pub fn q1(g: i64) -> [BigInt; 3] {
    if g.is_odd() {
        [BigInt::zero(), BigInt::from(2), BigInt::from(g + 2)]
    } else {
        [BigInt::zero(), BigInt::one(), BigInt::from((g + 2) / 2)]
    }
}

/// Integers `(a, b)` with `c = a·delta1 + b·q1` at genus `g`.
pub fn kernel_coordinates(c: &LatticeClass, g: i64) -> Result<(BigInt, BigInt)> {
    let [d, gm, s] = c.at(g)?;
    let [_, qg, qs] = q1(g);
    let (b, r) = gm.div_rem(&qg);
    if !r.is_zero() || &b * &qs != s {
        return Err(Error::NotInKernel(format!(
            "{d}*delta1 + {gm}*gamma1 + {s}*sigma1 is not an integer combination of delta1 and q1 at g = {g}"
        )));
    }
    Ok((d, b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardGroup {
    pub free_rank: usize,
    /// Orders of the nontrivial cyclic factors.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for PicardGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".into()),
            r => parts.push(format!("ℤ^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("ℤ/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("⊕"))
        }
    }
}

/// Structure of `Z^2 / <(a, b)>`.
pub fn quotient_group(a: &BigInt, b: &BigInt) -> PicardGroup {
    let m = IntMatrix::new(vec![vec![a.clone()], vec![b.clone()]]);
    let snf = smith_normal_form(&m);
    let rank = snf.diag.iter().filter(|d| !d.is_zero()).count();
    PicardGroup {
        free_rank: 2 - rank,
        torsion: snf.diag.into_iter().filter(|d| d.abs() > BigInt::one()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardRow {
    pub g: i64,
    pub a: BigInt,
    pub b: BigInt,
    pub group: PicardGroup,
}

fn check_genus(g: i64) -> Result<()> {
    if g < 2 {
        return Err(Error::contract(format!("genus must be at least 2, got {g}")));
    }
    Ok(())
}

pub fn picard_row(y: &LatticeClass, g: i64) -> Result<PicardRow> {
    check_genus(g)?;
    let (a, b) = kernel_coordinates(y, g)?;
    let group = quotient_group(&a, &b);
    Ok(PicardRow { g, a, b, group })
}

pub fn picard_group(g: i64) -> Result<PicardGroup> {
    Ok(picard_row(&class_of_y()?.y, g)?.group)
}

/// Rows for `from..=to`, in increasing genus.
pub fn picard_table(from: i64, to: i64) -> Result<Vec<PicardRow>> {
    check_genus(from)?;
    let y = class_of_y()?.y;
    (from..=to)
        .into_par_iter()
        .map(|g| picard_row(&y, g))
        .collect()
}

/// The three-case congruence table.
pub fn expected_picard(g: i64) -> PicardGroup {
    let torsion = if g % 9 == 3 {
        vec![BigInt::from(9)]
    } else if g % 3 == 0 {
        vec![BigInt::from(3)]
    } else {
        vec![]
    };
    PicardGroup {
        free_rank: 1,
        torsion,
    }
}

/// The displayed class upstairs, transcribed term by term: the part without
/// `xi` followed by the `xi` coefficient.
pub fn printed_y_tilde(pres: &Arc<RingPresentation>) -> Result<GradedClass> {
    let g2 = g_plus(2);
    let terms: Vec<(GenusPoly, &[(&str, u32)])> = vec![
        (int(-5), &[("gamma1", 2)]),
        (int(1), &[("gamma1", 1), ("delta1", 1)]),
        (int(2), &[("gamma1", 1), ("sigma1", 1)]),
        (int(9), &[("gamma2", 1)]),
        (int(4), &[("delta1", 2)]),
        (int(2), &[("delta1", 1), ("sigma1", 1)]),
        (int(-9), &[("delta2", 1)]),
        (half(&g2.mul(&GenusPoly::from_ints(&[73, 19]))), &[("sigma2", 1)]),
        (g_plus(15), &[("gamma1", 1), ("xi", 1)]),
        (g_plus(6).neg(), &[("delta1", 1), ("xi", 1)]),
        (half(&g2.mul(&g_plus(15))).neg(), &[("sigma1", 1), ("xi", 1)]),
    ];
    let mut acc = GradedClass::zero(pres);
    for (c, m) in terms {
        acc = acc.add(&GradedClass::monomial(pres, c, m)?);
    }
    Ok(acc)
}

/// A coefficient where the computed class differs from the displayed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deviation {
    pub monomial: String,
    pub computed: GenusPoly,
    pub printed: GenusPoly,
}

impl Deviation {
    /// Same magnitude, opposite sign.
    pub fn is_sign_flip(&self) -> bool {
        self.computed == self.printed.neg()
    }
}

/// All coefficients of `computed` and `printed` that differ.
pub fn deviations(computed: &GradedClass, printed: &GradedClass) -> Vec<Deviation> {
    let diff = computed.sub(printed);
    let pres = computed.presentation();
    diff.terms()
        .keys()
        .map(|m| {
            let single = GradedClass::from_raw(pres, [(m.clone(), GenusPoly::one())])
                .expect("monomial of a normal class is normal");
            Deviation {
                monomial: single.to_string(),
                computed: computed.terms().get(m).cloned().unwrap_or_default(),
                printed: printed.terms().get(m).cloned().unwrap_or_default(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(c: &[i64]) -> GenusPoly {
        GenusPoly::from_ints(c)
    }

    fn mono(p: &Arc<RingPresentation>, c: GenusPoly, f: &[(&str, u32)]) -> GradedClass {
        GradedClass::monomial(p, c, f).unwrap()
    }

    #[test]
    fn class_of_w_matches_lemma() {
        let w = class_of_w().unwrap();
        let p = w.w.presentation().clone();
        let expected = mono(&p, int(4), &[("c1", 2)])
            .add(&mono(&p, int(-9), &[("c2", 1)]))
            .add(&mono(&p, int(2), &[("c1", 1), ("nu1", 1)]));
        assert_eq!(w.w, expected);
        let inner = expected.mul(&var(&p, "mu1"));
        let tilde = mono(&p, int(-3), &[("c1", 1), ("c2", 1)])
            .add(&mono(&p, int(-3), &[("c2", 1), ("nu1", 1)]))
            .add(&inner);
        assert_eq!(w.tilde, tilde);
    }

    #[test]
    fn w_at_origin() {
        let w = class_of_w().unwrap().w;
        let p = w.presentation().clone();
        let zero = GradedClass::zero(&p);
        let s = w.substitute(&p, &[("nu1", zero.clone()), ("c1", zero)]).unwrap();
        assert_eq!(s, mono(&p, int(-9), &[("c2", 1)]));
    }

    #[test]
    fn twisted_trivial_examples() {
        let p = free_presentation(2);
        let c = chern_twisted_gamma(&p).unwrap();
        let g2 = gp(&[2, 1]);
        let expected = GradedClass::one(&p)
            .add(&var(&p, "gamma1"))
            .add(&mono(&p, g2.neg(), &[("xi", 1)]))
            .add(&var(&p, "gamma2"))
            .add(&mono(&p, gp(&[-1, -1]), &[("gamma1", 1), ("xi", 1)]))
            .add(&mono(&p, half(&gp(&[2, 3, 1])), &[("xi", 2)]));
        assert_eq!(c, expected);

        let z = GradedClass::zero(&p);
        let e = chern_of_twisted_trivial(&int(5), &var(&p, "c1"), &var(&p, "c2"), &z).unwrap();
        assert_eq!(e, GradedClass::one(&p).add(&var(&p, "c1")).add(&var(&p, "c2")));
        let line = chern_of_twisted_trivial(&int(1), &z, &z, &var(&p, "xi")).unwrap();
        assert_eq!(line, GradedClass::one(&p).add(&var(&p, "xi")));

        let p3 = free_presentation(3);
        let err = chern_twisted_gamma(&p3).unwrap_err();
        assert_eq!(err.kind(), "unsupported");
    }

    #[test]
    fn e_prime_displays() {
        let p = standard_presentation(2);
        let c = chern_e_prime(&p).unwrap();
        let expected1 = var(&p, "delta1")
            .sub(&var(&p, "gamma1"))
            .add(&mono(&p, gp(&[2, 1]), &[("xi", 1)]));
        assert_eq!(c.part(1), expected1);
        let b = half(&gp(&[6, 5, 1]));
        let expected2 = var(&p, "delta2")
            .sub(&mono(&p, int(1), &[("gamma1", 1), ("delta1", 1)]))
            .add(&mono(&p, int(1), &[("gamma1", 2)]))
            .sub(&var(&p, "gamma2"))
            .add(&mono(&p, b.neg(), &[("sigma2", 1)]))
            .add(&mono(&p, gp(&[2, 1]), &[("delta1", 1), ("xi", 1)]))
            .add(&mono(&p, gp(&[-3, -1]), &[("gamma1", 1), ("xi", 1)]))
            .add(&mono(&p, b.neg(), &[("sigma1", 1), ("xi", 1)]));
        assert_eq!(c.part(2), expected2);
        let at0 = c.instantiate(0).part(1);
        assert_eq!(at0, expected1.instantiate(0));
        assert_eq!(at0.coeff(&[("xi", 1)]).unwrap(), int(2));
    }

    #[test]
    fn pushforward_examples() {
        let p = standard_presentation(2);
        let one = GradedClass::one(&p);
        assert!(pushforward_p1(&one, "mu1").unwrap().is_zero());
        assert_eq!(pushforward_p1(&var(&p, "mu1"), "mu1").unwrap(), one);
        let c = var(&p, "sigma1").mul(&var(&p, "xi")).add(&var(&p, "sigma2"));
        assert_eq!(pushforward_p1(&c, "xi").unwrap(), var(&p, "sigma1"));
    }

    #[test]
    fn class_of_y_coefficients() {
        let y = class_of_y().unwrap().y;
        assert_eq!(y.gamma1, gp(&[15, 1]));
        assert_eq!(y.delta1, gp(&[-6, -1]));
        assert_eq!(y.sigma1, half(&gp(&[30, 17, 1])));
        assert!(restriction_to_gm(&y).is_zero());
    }

    #[test]
    fn restriction_examples() {
        let d = LatticeClass::new(int(1), int(0), int(0));
        assert!(restriction_to_gm(&d).is_zero());
        let gm = LatticeClass::new(int(0), int(1), int(0));
        assert_eq!(restriction_to_gm(&gm), gp(&[2, 1]));
        for g in [2, 3, 4, 7] {
            let [_, a, b] = q1(g);
            let c = LatticeClass::new(int(0), GenusPoly::constant(a.into()), GenusPoly::constant(b.into()));
            assert!(restriction_to_gm(&c).eval_int(g).is_zero());
        }
    }

    #[test]
    fn kernel_coordinate_examples() {
        let d = LatticeClass::new(int(1), int(0), int(0));
        assert_eq!(kernel_coordinates(&d, 5).unwrap(), (1.into(), 0.into()));
        let q = LatticeClass::new(int(0), int(2), int(7));
        assert_eq!(kernel_coordinates(&q, 5).unwrap(), (0.into(), 1.into()));
        let y = class_of_y().unwrap().y;
        assert_eq!(kernel_coordinates(&y, 3).unwrap(), ((-9).into(), 9.into()));
        assert_eq!(kernel_coordinates(&y, 4).unwrap(), ((-10).into(), 19.into()));
        let bad = LatticeClass::new(int(0), int(1), int(0));
        assert_eq!(kernel_coordinates(&bad, 3).unwrap_err().kind(), "not_in_kernel");
    }

    #[test]
    fn picard_spot_values() {
        assert_eq!(picard_group(2).unwrap().to_string(), "ℤ");
        assert_eq!(picard_group(3).unwrap().to_string(), "ℤ⊕ℤ/9");
        assert_eq!(picard_group(6).unwrap().to_string(), "ℤ⊕ℤ/3");
        assert_eq!(picard_group(12).unwrap().to_string(), "ℤ⊕ℤ/9");
        assert!(picard_group(1).is_err());
    }

    #[test]
    fn displayed_y_tilde_deviations() {
        let p = standard_presentation(2);
        let y = class_of_y_in(&p).unwrap();
        let devs = deviations(&y.tilde, &printed_y_tilde(&p).unwrap());
        let names: Vec<&str> = devs.iter().map(|d| d.monomial.as_str()).collect();
        assert_eq!(devs.len(), 3, "{names:?}");
        let find = |m: &str| devs.iter().find(|d| d.monomial == m).unwrap();
        assert!(find("delta1*sigma1").is_sign_flip());
        assert!(find("sigma1*xi").is_sign_flip());
        let s2 = find("sigma2");
        assert_eq!(s2.computed, half(&gp(&[38, 21, 1])));
        assert_eq!(s2.printed, half(&gp(&[146, 111, 19])));
    }
}
