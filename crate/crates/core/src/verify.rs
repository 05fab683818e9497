//! The acceptance checks, runnable from tests and from the command line.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::mpoly::PolyRing;
use crate::algebra::{
    cubic_discriminant, BinaryForm, GenusPoly, GradedClass, Matrix, PrimeField, Rationals, Ring,
    RingPresentation,
};
use crate::bundle::{
    codim_probe, degenerate_at_rational_point, exhaustive_probe, kernel_dims, random_matrix_with,
    splitting_type, LinearMatrix,
};
use crate::chow;
use crate::cover::{algebra_to_form, form_to_algebra, section_space_dim, smooth_check, TrigonalDatum};
use crate::cubic::{act_hg, in_w, mat_det, DualCubic, HgElement, Mat2};
use crate::error::{Error, Result};

/// `(key, title, budget in seconds)`.
pub const CHECKS: [(&str, &str, u64); 9] = [
    ("class-w", "class of W", 1),
    ("chern", "Chern class displays", 1),
    ("picard", "Picard groups for 2 <= g <= 200", 10),
    ("class-y", "coefficients of [Y_g]", 1),
    ("miranda", "cubic forms and cubic algebras", 30),
    ("singularity", "singularity criterion", 10),
    ("splitting", "splitting types", 30),
    ("codim", "degeneracy statistics", 60),
    ("sections", "section space dimension", 1),
];

pub const SEED: u64 = 20_240_917;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub index: usize,
    pub key: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {}. {} ({:.2}s / {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.index,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

type CheckResult = std::result::Result<String, String>;

fn timed(key: &str, body: impl FnOnce() -> CheckResult) -> Result<CheckOutcome> {
    let (index, &(key, title, budget)) = CHECKS
        .iter()
        .enumerate()
        .find(|(_, c)| c.0 == key)
        .ok_or_else(|| Error::Config(format!("unknown check {key}")))?;
    let start = Instant::now();
    let res = body();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget);
    let (mut passed, mut detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > budget {
        passed = false;
        detail = format!("over time budget; {detail}");
    }
    Ok(CheckOutcome {
        index: index + 1,
        key,
        title,
        passed,
        detail,
        elapsed,
        budget,
    })
}

pub fn run_check(key: &str) -> Result<CheckOutcome> {
    let body: fn() -> CheckResult = match key {
        "class-w" => || class_w_body(&chow::standard_presentation(3)),
        "chern" => chern_body,
        "picard" => picard_body,
        "class-y" => class_y_body,
        "miranda" => miranda_body,
        "singularity" => singularity_body,
        "splitting" => splitting_body,
        "codim" => codim_body,
        "sections" => sections_body,
        other => return Err(Error::Config(format!("unknown check {other}"))),
    };
    timed(key, body)
}

/// Runs the checks named in `only`, or all of them, in table order.
pub fn run_all(only: Option<&[String]>) -> Result<Vec<CheckOutcome>> {
    if let Some(keys) = only {
        for k in keys {
            if !CHECKS.iter().any(|c| c.0 == k) {
                return Err(Error::Config(format!("unknown check {k}")));
            }
        }
    }
    CHECKS
        .iter()
        .filter(|c| only.is_none_or(|keys| keys.iter().any(|k| k == c.0)))
        .map(|c| run_check(c.0))
        .collect()
}

/// The class of W check against an arbitrary presentation, so that a
/// broken rewrite rule can be shown to fail.
pub fn check_class_w_in(pres: &Arc<RingPresentation>) -> Result<CheckOutcome> {
    let pres = pres.clone();
    timed("class-w", move || class_w_body(&pres))
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn build(pres: &Arc<RingPresentation>, terms: &[(GenusPoly, &[(&str, u32)])]) -> std::result::Result<GradedClass, String> {
    let mut acc = GradedClass::zero(pres);
    for (c, m) in terms {
        acc = acc.add(&lib(GradedClass::monomial(pres, c.clone(), m))?);
    }
    Ok(acc)
}

fn expect_eq(what: &str, got: &GradedClass, want: &GradedClass) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn gp(c: &[i64]) -> GenusPoly {
    GenusPoly::from_ints(c)
}

fn half(c: &[i64]) -> GenusPoly {
    gp(c).scale(&BigRational::new(1.into(), 2.into()))
}

fn class_w_body(pres: &Arc<RingPresentation>) -> CheckResult {
    let w = lib(chow::class_of_w_in(pres))?;
    let mu_part = [
        (gp(&[4]), &[("c1", 2), ("mu1", 1)][..]),
        (gp(&[-9]), &[("c2", 1), ("mu1", 1)]),
        (gp(&[2]), &[("c1", 1), ("nu1", 1), ("mu1", 1)]),
    ];
    let mut tilde_terms = vec![
        (gp(&[-3]), &[("c1", 1), ("c2", 1)][..]),
        (gp(&[-3]), &[("c2", 1), ("nu1", 1)]),
    ];
    tilde_terms.extend(mu_part.iter().cloned());
    let tilde = build(pres, &tilde_terms)?;
    expect_eq("intermediate class", &w.tilde, &tilde)?;
    let final_w = build(
        pres,
        &[
            (gp(&[4]), &[("c1", 2)]),
            (gp(&[-9]), &[("c2", 1)]),
            (gp(&[2]), &[("c1", 1), ("nu1", 1)]),
        ],
    )?;
    expect_eq("class of W", &w.w, &final_w)?;
    Ok(format!("[W] = {}", w.w))
}

fn chern_body() -> CheckResult {
    let free = chow::free_presentation(2);
    let c = lib(chow::chern_twisted_gamma(&free))?;
    let want = build(
        &free,
        &[
            (gp(&[1]), &[]),
            (gp(&[1]), &[("gamma1", 1)]),
            (gp(&[-2, -1]), &[("xi", 1)]),
            (gp(&[1]), &[("gamma2", 1)]),
            (gp(&[-1, -1]), &[("gamma1", 1), ("xi", 1)]),
            (half(&[2, 3, 1]), &[("xi", 2)]),
        ],
    )?;
    expect_eq("c(O(-1)^(g+2))", &c, &want)?;

    let inv = lib(c.series_inverse(2))?;
    let want_inv = build(
        &free,
        &[
            (gp(&[1]), &[]),
            (gp(&[-1]), &[("gamma1", 1)]),
            (gp(&[2, 1]), &[("xi", 1)]),
            (gp(&[1]), &[("gamma1", 2)]),
            (gp(&[-1]), &[("gamma2", 1)]),
            (gp(&[-3, -1]), &[("gamma1", 1), ("xi", 1)]),
            (half(&[6, 5, 1]), &[("xi", 2)]),
        ],
    )?;
    expect_eq("inverse", &inv, &want_inv)?;

    let e = lib(chow::chern_e_prime(&free))?;
    let want_e = build(
        &free,
        &[
            (gp(&[1]), &[]),
            (gp(&[1]), &[("delta1", 1)]),
            (gp(&[-1]), &[("gamma1", 1)]),
            (gp(&[2, 1]), &[("xi", 1)]),
            (gp(&[1]), &[("delta2", 1)]),
            (gp(&[-1]), &[("delta1", 1), ("gamma1", 1)]),
            (gp(&[1]), &[("gamma1", 2)]),
            (gp(&[-1]), &[("gamma2", 1)]),
            (gp(&[2, 1]), &[("delta1", 1), ("xi", 1)]),
            (gp(&[-3, -1]), &[("gamma1", 1), ("xi", 1)]),
            (half(&[6, 5, 1]), &[("xi", 2)]),
        ],
    )?;
    expect_eq("c(E') before the relation", &e, &want_e)?;

    let std = chow::standard_presentation(2);
    let reduced = lib(chow::chern_e_prime(&std))?;
    let b = half(&[-6, -5, -1]);
    let want_r = build(
        &std,
        &[
            (gp(&[1]), &[]),
            (gp(&[1]), &[("delta1", 1)]),
            (gp(&[-1]), &[("gamma1", 1)]),
            (gp(&[2, 1]), &[("xi", 1)]),
            (gp(&[1]), &[("delta2", 1)]),
            (gp(&[-1]), &[("delta1", 1), ("gamma1", 1)]),
            (gp(&[1]), &[("gamma1", 2)]),
            (gp(&[-1]), &[("gamma2", 1)]),
            (b.clone(), &[("sigma2", 1)]),
            (gp(&[2, 1]), &[("delta1", 1), ("xi", 1)]),
            (gp(&[-3, -1]), &[("gamma1", 1), ("xi", 1)]),
            (b, &[("sigma1", 1), ("xi", 1)]),
        ],
    )?;
    expect_eq("c(E') after the relation", &reduced, &want_r)?;
    Ok("four displays match as identities in Q[g]".into())
}

fn picard_body() -> CheckResult {
    let rows = lib(chow::picard_table(2, 200))?;
    for row in &rows {
        let g = row.g;
        let want_b = if g % 2 == 1 { (g + 15) / 2 } else { g + 15 };
        if row.a.abs() != BigInt::from(g + 6) || row.b.abs() != BigInt::from(want_b) {
            return Err(format!("g = {g}: coordinates ({}, {})", row.a, row.b));
        }
        if row.group != chow::expected_picard(g) {
            return Err(format!("g = {g}: got {}, expected {}", row.group, chow::expected_picard(g)));
        }
    }
    let spot: Vec<String> = [2usize, 3, 6, 12]
        .iter()
        .map(|&g| format!("g={}: {}", g, rows[g - 2].group))
        .collect();
    let want = ["g=2: ℤ", "g=3: ℤ⊕ℤ/9", "g=6: ℤ⊕ℤ/3", "g=12: ℤ⊕ℤ/9"];
    if spot != want {
        return Err(format!("spot values {spot:?}"));
    }
    Ok(format!("{} genera agree; {}", rows.len(), spot.join(", ")))
}

fn class_y_body() -> CheckResult {
    let y = lib(chow::class_of_y())?.y;
    if y.gamma1 != gp(&[15, 1]) {
        return Err(format!("gamma1 coefficient {}", y.gamma1));
    }
    if y.delta1 != gp(&[-6, -1]) {
        return Err(format!("delta1 coefficient {}", y.delta1));
    }
    let mag = half(&[30, 17, 1]);
    if y.sigma1 != mag && y.sigma1 != mag.neg() {
        return Err(format!("sigma1 coefficient {}", y.sigma1));
    }
    let r = chow::restriction_to_gm(&y);
    if !r.is_zero() {
        return Err(format!("restriction to Gm is {r}, not 0"));
    }
    Ok(format!("[Y_g] = {y}; restriction 0"))
}

fn random_cubic<R: Ring>(r: &R, rng: &mut ChaCha8Rng) -> BinaryForm<R> {
    let c: Vec<i64> = (0..4).map(|_| rng.random_range(-50..=50)).collect();
    BinaryForm::from_i64(r.clone(), &c)
}

fn miranda_body() -> CheckResult {
    let ring = PolyRing::new(Rationals, &["a", "b", "c", "d"]);
    let f = BinaryForm::new(ring.clone(), (0..4).map(|i| ring.var(i)).collect());
    let alg = lib(form_to_algebra(&f))?;
    let bad = alg
        .associators()
        .into_iter()
        .filter(|(_, v)| v.iter().any(|x| !ring.is_zero(x)))
        .count();
    if bad > 0 {
        return Err(format!("{bad} symbolic associators are nonzero"));
    }
    let td = alg.trace_form_det();
    let disc = lib(cubic_discriminant(&f))?;
    // the ratio at the b²c² term fixes κ
    let mono = vec![0, 2, 2, 0];
    let kappa = ring.coeff(&td, &mono) / ring.coeff(&disc, &mono);
    if ring.sub(&td, &ring.mul(&ring.constant(kappa.clone()), &disc)) != ring.zero() {
        return Err("trace form determinant is not a constant multiple of the discriminant".into());
    }
    if kappa != BigRational::from_integer(1.into()) {
        return Err(format!("kappa = {kappa}, pinned value is 1"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let fp = PrimeField::new(101).expect("101 is prime");
    for i in 0..200 {
        let f = random_cubic(&Rationals, &mut rng);
        if lib(algebra_to_form(&lib(form_to_algebra(&f))?))? != f {
            return Err(format!("roundtrip failed over Q at sample {i}"));
        }
        let f = random_cubic(&fp, &mut rng);
        if lib(algebra_to_form(&lib(form_to_algebra(&f))?))? != f {
            return Err(format!("roundtrip failed over F_101 at sample {i}"));
        }
    }
    Ok("27 associators vanish over Q[a,b,c,d]; kappa = 1; 400 roundtrips".into())
}

fn random_mat2(f: &PrimeField, rng: &mut ChaCha8Rng, invertible: bool) -> Mat2<u64> {
    loop {
        let p = f.modulus();
        let m = [
            [rng.random_range(0..p), rng.random_range(0..p)],
            [rng.random_range(0..p), rng.random_range(0..p)],
        ];
        if !invertible || !f.is_zero(&mat_det(f, &m)) {
            return m;
        }
    }
}

fn random_form(f: &PrimeField, deg: usize, rng: &mut ChaCha8Rng) -> BinaryForm<PrimeField> {
    let p = f.modulus();
    BinaryForm::new(*f, (0..=deg).map(|_| rng.random_range(0..p)).collect())
}

/// A dual cubic that lies in W by construction: `f = l²m`, `g = l·q`.
fn member_of_w(f: &PrimeField, rng: &mut ChaCha8Rng) -> DualCubic<PrimeField> {
    let p = f.modulus();
    let (p1, p2) = loop {
        let pt = (rng.random_range(0..p), rng.random_range(0..p));
        if pt != (0, 0) {
            break pt;
        }
    };
    let l = BinaryForm::linear(*f, p2, f.neg(&p1));
    let cubic = l.mul(&l).mul(&random_form(f, 1, rng));
    let g = l.mul(&random_form(f, 2, rng));
    DualCubic::new(cubic, g).expect("degree 3")
}

fn singularity_body() -> CheckResult {
    let q = Rationals;
    for t in -10i64..=10 {
        let f = BinaryForm::from_i64(q, &[0, 1, 0, -t * t]);
        let g = BinaryForm::from_i64(q, &[0, 0, 0, 2 * t]);
        let v = in_w(&lib(DualCubic::new(f, g))?);
        if v.in_w != (t == 0) {
            return Err(format!("t = {t}: in_W = {}", v.in_w));
        }
        if t == 0 {
            let w = v.witness().map(|p| p.render()).unwrap_or_default();
            if w != "(0:1)" {
                return Err(format!("witness at t = 0 is {w}"));
            }
        }
    }

    let tf = |c: &[i64]| BinaryForm::from_i64(q, c);
    let datum = lib(TrigonalDatum::new(
        2,
        2,
        [tf(&[0, 0, 1]), tf(&[1, 0, 0]), tf(&[0, 0, 0]), tf(&[0, 0, -1])],
    ))?;
    let verdict = lib(smooth_check(&datum))?;
    if verdict.singular_points.len() != 1 || verdict.unlisted {
        return Err(format!("datum has {} singular points", verdict.singular_points.len()));
    }
    let sp = &verdict.singular_points[0];
    let found = format!("{} over {}", sp.fiber.render(), sp.render_base());

    let fp = PrimeField::new(101).expect("101 is prime");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut members = 0;
    for i in 0..200 {
        let v = if i % 2 == 0 {
            member_of_w(&fp, &mut rng)
        } else {
            lib(DualCubic::new(random_form(&fp, 3, &mut rng), random_form(&fp, 3, &mut rng)))?
        };
        let u = rng.random_range(1..101);
        let h = lib(HgElement::new(
            fp,
            u,
            random_mat2(&fp, &mut rng, true),
            random_mat2(&fp, &mut rng, false),
        ))?;
        let before = in_w(&v).in_w;
        let after = in_w(&lib(act_hg(&h, &v))?).in_w;
        if before != after {
            return Err(format!("W membership changed under the group at sample {i}"));
        }
        members += before as usize;
    }
    Ok(format!("singular only at t = 0; datum: {found}; 200 group actions, {members} members"))
}

fn random_invertible(f: &PrimeField, n: usize, rng: &mut ChaCha8Rng) -> Matrix<PrimeField> {
    let p = f.modulus();
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(0..p)).collect())
            .collect();
        let m = Matrix::from_rows(*f, rows);
        if m.rank() == n {
            return m;
        }
    }
}

fn predicted_kernel_dims(split: &[u32], t_max: usize) -> Vec<usize> {
    (0..=t_max)
        .map(|t| split.iter().map(|&m| (t as i64 - m as i64 + 1).max(0) as usize).sum())
        .collect()
}

fn splitting_body() -> CheckResult {
    let fp = PrimeField::new(101).expect("101 is prime");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut summary = Vec::new();
    for (r, d) in [(1usize, 1usize), (2, 2), (2, 4), (2, 6)] {
        let mut done = 0;
        let mut attempts = 0;
        while done < 100 {
            attempts += 1;
            if attempts > 10_000 {
                return Err(format!("too few nondegenerate samples for ({r},{d})"));
            }
            let l = random_matrix_with(r, d, fp, &mut rng);
            if !l.is_nondegenerate() {
                continue;
            }
            let s = lib(splitting_type(&l))?;
            if s.iter().sum::<u32>() as usize != d {
                return Err(format!("({r},{d}): splitting {s:?} does not sum to d"));
            }
            let k = kernel_dims(&l, d + 1);
            if k != predicted_kernel_dims(&s, d + 1) {
                return Err(format!("({r},{d}): kernel dimensions {k:?} disagree with {s:?}"));
            }
            let a = random_invertible(&fp, r + d, &mut rng);
            let b = random_invertible(&fp, d, &mut rng);
            let c = random_mat2(&fp, &mut rng, true);
            let moved: LinearMatrix<PrimeField> = lib(l.transform(&a, &b, &c))?;
            let s2 = lib(splitting_type(&moved))?;
            if s2 != s {
                return Err(format!("({r},{d}): {s:?} became {s2:?} under the group"));
            }
            done += 1;
        }
        summary.push(format!("({r},{d})"));
    }
    Ok(format!("100 matrices each for {}", summary.join(" ")))
}

fn brute_force_count(p: u64) -> u64 {
    let f = PrimeField::with_small_char(p).expect("prime");
    let mut count = 0;
    for idx in 0..p.pow(4) {
        let digits = [idx / p.pow(3), (idx / p.pow(2)) % p, (idx / p) % p, idx % p];
        let l = LinearMatrix::from_coeffs(f, 1, 1, vec![vec![(digits[0], digits[1])], vec![(digits[2], digits[3])]])
            .expect("well-formed");
        count += degenerate_at_rational_point(&l) as u64;
    }
    count
}

fn codim_body() -> CheckResult {
    let mut parts = Vec::new();
    for p in [3u64, 5] {
        let rep = lib(exhaustive_probe(1, 1, p, false))?;
        let brute = brute_force_count(p);
        if rep.degenerate != brute {
            return Err(format!("F_{p}: exhaustive {} vs brute force {brute}", rep.degenerate));
        }
        parts.push(format!("F_{p}: {brute}/{}", rep.trials));
    }
    let trials = 100_000;
    let f11 = lib(codim_probe(2, 4, 11, trials, SEED, false))?.degenerate_fraction();
    let f23 = lib(codim_probe(2, 4, 23, trials, SEED, false))?.degenerate_fraction();
    let ratio = f11 / f23;
    let expected = (23.0f64 / 11.0).powi(2);
    let within = ratio > 0.0 && ratio / expected <= 2.0 && expected / ratio <= 2.0;
    let msg = format!(
        "{}; fractions {f11:.5} (p=11), {f23:.5} (p=23), ratio {ratio:.3} vs {expected:.3}",
        parts.join(", ")
    );
    if within {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn sections_body() -> CheckResult {
    for g in 2i64..=200 {
        let m = (g + 2) / 2;
        let s = lib(section_space_dim(m, g + 2 - m))?;
        if s.dim != 2 * g + 8 {
            return Err(format!("g = {g}: dimension {}", s.dim));
        }
        if s.matches_printed {
            return Err(format!("g = {g}: unexpectedly equals the printed rank"));
        }
    }
    Ok("dimension 2g+8 for 2 <= g <= 200; differs from the printed rank 2g+4 by 4".into())
}
