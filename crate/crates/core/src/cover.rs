//! Triple covers: the binary cubic ↔ cubic algebra dictionary, pointwise
//! fiber types, and the global smoothness check for data over P¹.

use num_rational::BigRational;

use crate::algebra::form::{resultant, BinaryForm, ProjPoint};
use crate::algebra::ring::{ExactField, Field, Ring};
use crate::algebra::upoly::UPolyRing;
use crate::algebra::{binary_gcd, cubic_discriminant};
use crate::cubic::{in_w, DualCubic};
use crate::error::{Error, Result};

/// Rank-3 commutative algebra on the basis `(1, ω, θ)` with `tr ω = tr θ = 0`.
/// `ww`, `wt`, `tt` are `ω²`, `ωθ`, `θ²` as coordinates in `(1, ω, θ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicAlgebra<R: Ring> {
    ring: R,
    ww: [R::Elem; 3],
    wt: [R::Elem; 3],
    tt: [R::Elem; 3],
}

impl<R: Ring> CubicAlgebra<R> {
    /// Validates the trace-zero condition and associativity.
    pub fn new(ring: R, ww: [R::Elem; 3], wt: [R::Elem; 3], tt: [R::Elem; 3]) -> Result<Self> {
        let alg = CubicAlgebra { ring, ww, wt, tt };
        alg.validate()?;
        Ok(alg)
    }

    /// `k ⊕ F` with `F² = 0`.
    pub fn square_zero(ring: R) -> Self {
        let z = || [ring.zero(), ring.zero(), ring.zero()];
        CubicAlgebra {
            ww: z(),
            wt: z(),
            tt: z(),
            ring,
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn ww(&self) -> &[R::Elem; 3] {
        &self.ww
    }

    pub fn wt(&self) -> &[R::Elem; 3] {
        &self.wt
    }

    pub fn tt(&self) -> &[R::Elem; 3] {
        &self.tt
    }

    pub fn validate(&self) -> Result<()> {
        let r = &self.ring;
        let [t1, t2] = self.basis_traces();
        if !r.is_zero(&t1) || !r.is_zero(&t2) {
            return Err(Error::contract(format!(
                "basis is not trace-zero: tr(w) = {}, tr(t) = {}",
                r.render(&t1),
                r.render(&t2)
            )));
        }
        let bad = self.associators().into_iter().find(|(_, v)| !v.iter().all(|c| r.is_zero(c)));
        if let Some(((i, j, k), _)) = bad {
            return Err(Error::contract(format!(
                "structure constants are not associative on basis triple ({i}, {j}, {k})"
            )));
        }
        Ok(())
    }

    /// Traces of multiplication by `ω` and by `θ`.
    pub fn basis_traces(&self) -> [R::Elem; 2] {
        let r = &self.ring;
        [r.add(&self.ww[1], &self.wt[2]), r.add(&self.wt[1], &self.tt[2])]
    }

    fn basis_product(&self, i: usize, j: usize) -> [R::Elem; 3] {
        let r = &self.ring;
        let e = |k: usize| {
            let mut v = [r.zero(), r.zero(), r.zero()];
            v[k] = r.one();
            v
        };
        match (i.min(j), i.max(j)) {
            (0, k) => e(k),
            (1, 1) => self.ww.clone(),
            (1, 2) => self.wt.clone(),
            _ => self.tt.clone(),
        }
    }

    pub fn mul(&self, x: &[R::Elem; 3], y: &[R::Elem; 3]) -> [R::Elem; 3] {
        let r = &self.ring;
        let mut out = [r.zero(), r.zero(), r.zero()];
        for i in 0..3 {
            if r.is_zero(&x[i]) {
                continue;
            }
            for j in 0..3 {
                if r.is_zero(&y[j]) {
                    continue;
                }
                let c = r.mul(&x[i], &y[j]);
                let p = self.basis_product(i, j);
                for k in 0..3 {
                    out[k] = r.add(&out[k], &r.mul(&c, &p[k]));
                }
            }
        }
        out
    }

    /// `(e_i e_j) e_k − e_i (e_j e_k)` for all 27 basis triples.
    pub fn associators(&self) -> Vec<((usize, usize, usize), [R::Elem; 3])> {
        let r = &self.ring;
        let mut out = Vec::with_capacity(27);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let ek = self.basis_product(0, k);
                    let ei = self.basis_product(0, i);
                    let left = self.mul(&self.basis_product(i, j), &ek);
                    let right = self.mul(&ei, &self.basis_product(j, k));
                    let diff = [r.sub(&left[0], &right[0]), r.sub(&left[1], &right[1]), r.sub(&left[2], &right[2])];
                    out.push(((i, j, k), diff));
                }
            }
        }
        out
    }

    /// Trace of multiplication by `x`.
    pub fn trace(&self, x: &[R::Elem; 3]) -> R::Elem {
        let r = &self.ring;
        let [t1, t2] = self.basis_traces();
        r.sum([r.scale_i64(&x[0], 3), r.mul(&x[1], &t1), r.mul(&x[2], &t2)].iter())
    }

    /// Determinant of the Gram matrix `tr(e_i e_j)`.
    pub fn trace_form_det(&self) -> R::Elem {
        let r = &self.ring;
        let gram: Vec<Vec<R::Elem>> = (0..3)
            .map(|i| (0..3).map(|j| self.trace(&self.basis_product(i, j))).collect())
            .collect();
        crate::algebra::det::det_laplace(r, &gram)
    }
}

/// Algebra attached to `a x1³ + b x1²x2 + c x1x2² + d x2³`.
///
/// On `(1, ω̃, θ̃)`: `ω̃θ̃ = −ad`, `ω̃² = −ac + bω̃ − aθ̃`, `θ̃² = −bd + dω̃ − cθ̃`;
/// then `ω = ω̃ − b/3`, `θ = θ̃ + c/3` are trace-zero.
pub fn form_to_algebra<R: Ring>(f: &BinaryForm<R>) -> Result<CubicAlgebra<R>> {
    if f.degree() != 3 {
        return Err(Error::contract(format!("expected a cubic, got degree {}", f.degree())));
    }
    let r = f.ring().clone();
    let third = r
        .from_rational(&BigRational::new(1.into(), 3.into()))
        .ok_or_else(|| Error::contract("3 must be invertible"))?;
    let [a, b, c, d] = [f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3)];
    let z = r.zero();
    let neg = |x: &R::Elem| r.neg(x);
    let old_ww = [neg(&r.mul(a, c)), b.clone(), neg(a)];
    let old_wt = [neg(&r.mul(a, d)), z.clone(), z.clone()];
    let old_tt = [neg(&r.mul(b, d)), d.clone(), neg(c)];
    let tilde = CubicAlgebra {
        ring: r.clone(),
        ww: old_ww,
        wt: old_wt,
        tt: old_tt,
    };

    // new basis in old coordinates
    let sw = r.mul(b, &third);
    let st = r.mul(c, &third);
    let w = [neg(&sw), r.one(), z.clone()];
    let t = [st.clone(), z.clone(), r.one()];
    // old coordinates -> new: 1 = 1, ω̃ = ω + b/3, θ̃ = θ − c/3
    let back = |x: [R::Elem; 3]| -> [R::Elem; 3] {
        let c0 = r.add(&r.add(&x[0], &r.mul(&x[1], &sw)), &r.neg(&r.mul(&x[2], &st)));
        [c0, x[1].clone(), x[2].clone()]
    };
    let ww = back(tilde.mul(&w, &w));
    let wt = back(tilde.mul(&w, &t));
    let tt = back(tilde.mul(&t, &t));
    Ok(CubicAlgebra { ring: r, ww, wt, tt })
}

/// Inverse dictionary: the cubic map `F → det F`, `x ↦ x ∧ x²`, in the dual
/// coordinates of `(ω, θ)` with `ω ∧ θ ↦ 1`.
pub fn algebra_to_form<R: Ring>(alg: &CubicAlgebra<R>) -> Result<BinaryForm<R>> {
    alg.validate()?;
    let r = &alg.ring;
    let (ww, wt, tt) = (&alg.ww, &alg.wt, &alg.tt);
    let coeffs = vec![
        r.neg(&ww[2]),
        r.sub(&ww[1], &r.scale_i64(&wt[2], 2)),
        r.sub(&r.scale_i64(&wt[1], 2), &tt[2]),
        tt[1].clone(),
    ];
    Ok(BinaryForm::new(r.clone(), coeffs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberType {
    Etale,
    NodeLike,
    /// Reserved for datum-level classification; never returned pointwise.
    CuspLike,
    TriplePoint,
    NonGorenstein,
}

impl FiberType {
    pub fn as_str(&self) -> &'static str {
        match self {
            FiberType::Etale => "etale",
            FiberType::NodeLike => "node_like",
            FiberType::CuspLike => "cusp_like",
            FiberType::TriplePoint => "triple_point",
            FiberType::NonGorenstein => "non_gorenstein",
        }
    }
}

pub fn fiber_type<F: Field>(f: &BinaryForm<F>) -> Result<FiberType> {
    if f.is_zero() {
        return Ok(FiberType::NonGorenstein);
    }
    if !f.ring().is_zero(&cubic_discriminant(f)?) {
        return Ok(FiberType::Etale);
    }
    let h = binary_gcd(&[f.partial_x1(), f.partial_x2()])?;
    Ok(match h.degree() {
        1 => FiberType::NodeLike,
        2 => FiberType::TriplePoint,
        d => {
            return Err(Error::InternalConsistency(format!(
                "zero discriminant but gcd of partials has degree {d}"
            )))
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaroniData {
    pub g: i64,
    pub maroni: i64,
    pub stratum_codim: i64,
    pub in_vhat: bool,
}

pub fn genus_and_maroni(m: i64, n: i64) -> Result<MaroniData> {
    if m < 0 || m > n {
        return Err(Error::contract(format!("need 0 <= m <= n, got ({m}, {n})")));
    }
    let g = m + n - 2;
    Ok(MaroniData {
        g,
        maroni: m - 2,
        stratum_codim: if m < n { n - m - 1 } else { 0 },
        in_vhat: 3 * m >= g + 2 && 3 * n >= g + 2,
    })
}

/// Degrees `(2m−n, m, n, 2n−m)` of the coefficients `φ0..φ3`.
pub fn phi_degrees(m: i64, n: i64) -> [i64; 4] {
    [2 * m - n, m, n, 2 * n - m]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpace {
    pub degrees: [i64; 4],
    pub dim: i64,
    pub g: i64,
    /// `2g + 4`, the rank quoted in the literature.
    pub printed_rank: i64,
    pub matches_printed: bool,
}

/// `h⁰(Sym³E ⊗ det E^∨)` for `E = O(m) ⊕ O(n)`.
pub fn section_space_dim(m: i64, n: i64) -> Result<SectionSpace> {
    let info = genus_and_maroni(m, n)?;
    let degrees = phi_degrees(m, n);
    let dim = degrees.iter().map(|d| (d + 1).max(0)).sum();
    let printed_rank = 2 * info.g + 4;
    Ok(SectionSpace {
        degrees,
        dim,
        g: info.g,
        printed_rank,
        matches_printed: dim == printed_rank,
    })
}

/// `(m, n, φ0..φ3)`: the cubic `Σ φ_i x1^{3−i} x2^i` with `φ_i` a form in
/// `(t0, t1)` of degree `(2m−n, m, n, 2n−m)_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigonalDatum<F: Field> {
    m: i64,
    n: i64,
    phi: [BinaryForm<F>; 4],
}

impl<F: Field> TrigonalDatum<F> {
    /// A coefficient of negative prescribed degree must be the zero form (of
    /// any degree); it is stored as the zero form of degree 0.
    pub fn new(m: i64, n: i64, phi: [BinaryForm<F>; 4]) -> Result<Self> {
        genus_and_maroni(m, n)?;
        let field = phi[0].ring().clone();
        let degrees = phi_degrees(m, n);
        let mut out = Vec::with_capacity(4);
        for (i, (form, &d)) in phi.into_iter().zip(&degrees).enumerate() {
            if form.ring() != &field {
                return Err(Error::contract("coefficients over different fields"));
            }
            if d < 0 {
                if !form.is_zero() {
                    return Err(Error::contract(format!(
                        "phi{i} has negative prescribed degree {d} and must vanish"
                    )));
                }
                out.push(BinaryForm::zero(field.clone(), 0));
            } else if form.degree() as i64 != d {
                return Err(Error::contract(format!(
                    "phi{i} must have degree {d}, got {}",
                    form.degree()
                )));
            } else {
                out.push(form);
            }
        }
        let phi: [BinaryForm<F>; 4] = out.try_into().expect("four coefficients");
        Ok(TrigonalDatum { m, n, phi })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn phi(&self) -> &[BinaryForm<F>; 4] {
        &self.phi
    }

    pub fn field(&self) -> &F {
        self.phi[0].ring()
    }

    pub fn genus(&self) -> i64 {
        self.m + self.n - 2
    }

    fn declared(&self, i: usize) -> Option<usize> {
        let d = phi_degrees(self.m, self.n)[i];
        (d >= 0).then_some(d as usize)
    }

    /// The cubic over `k[t]` in the chart `t0 = 1`, `t = t1`.
    pub fn affine_cubic(&self) -> BinaryForm<UPolyRing<F>> {
        let ring = UPolyRing::new(self.field().clone());
        let coeffs = (0..4)
            .map(|i| match self.declared(i) {
                // φ(1, t): coefficient of t0^{d-j} t1^j is the t^j coefficient
                Some(_) => ring.from_coeffs(self.phi[i].coeffs().to_vec()),
                None => ring.zero(),
            })
            .collect();
        BinaryForm::new(ring, coeffs)
    }

    /// `(f_t, ∂F/∂t)` at an affine base point `t0 = 1, t1 = t`.
    pub fn fiber_at(&self, t: &F::Elem) -> DualCubic<F> {
        let fld = self.field().clone();
        let ring = UPolyRing::new(fld.clone());
        let cubic = self.affine_cubic();
        let f = cubic.map(fld.clone(), |c| ring.eval(c, t));
        let g = cubic.map(fld, |c| ring.eval(&ring.derivative(c), t));
        DualCubic::new(f, g).expect("cubics")
    }

    /// `(f, ∂F/∂s)` at `s = 0` in the chart `t1 = 1`, `s = t0`.
    pub fn fiber_at_infinity(&self) -> DualCubic<F> {
        let fld = self.field().clone();
        let pick = |i: usize, back: usize| match self.declared(i) {
            Some(d) if d >= back => self.phi[i].coeff(d - back).clone(),
            _ => fld.zero(),
        };
        let f = BinaryForm::new(fld.clone(), (0..4).map(|i| pick(i, 0)).collect());
        let g = BinaryForm::new(fld.clone(), (0..4).map(|i| pick(i, 1)).collect());
        DualCubic::new(f, g).expect("cubics")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint<F: Field> {
    /// Base point in `(t0 : t1)`.
    pub base: ProjPoint<F>,
    pub fiber: ProjPoint<F>,
}

impl<F: Field> SingularPoint<F> {
    /// `(1:t)` or `(0:1)`.
    pub fn render_base(&self) -> String {
        let f = self.base.field();
        let [t0, t1] = self.base.coords();
        if f.is_zero(t0) {
            "(0:1)".into()
        } else {
            format!("(1:{})", f.render(&f.div(t1, t0).expect("t0 nonzero")))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothVerdict<F: Field> {
    pub smooth: bool,
    /// Singular points with both coordinates rational, base chart `t0 = 1`
    /// first (sorted by `t`), then the point at infinity.
    pub singular_points: Vec<SingularPoint<F>>,
    /// Singular over every base point (the eliminant vanishes identically).
    pub everywhere_singular: bool,
    /// Some singular point is not defined over the base field.
    pub unlisted: bool,
}

pub fn smooth_check<F: ExactField>(datum: &TrigonalDatum<F>) -> Result<SmoothVerdict<F>> {
    if datum.phi.iter().all(|p| p.is_zero()) {
        return Err(Error::NonGorensteinEverywhere(
            "the cubic vanishes identically".into(),
        ));
    }
    let fld = datum.field().clone();
    let ring = UPolyRing::new(fld.clone());
    let cubic = datum.affine_cubic();
    let a = cubic.partial_x1();
    let b = cubic.partial_x2();
    let c = cubic.map(ring.clone(), |p| ring.derivative(p));

    // For fixed t, Res(A, (x1 + λx2)B + μC) vanishes for all (λ, μ) iff A ≡ 0
    // or A, B, C share a zero. It has total degree 2 in (λ, μ), so this grid
    // of six values determines it.
    const GRID: [(i64, i64); 6] = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)];
    let lin = |l: i64| {
        BinaryForm::linear(ring.clone(), ring.one(), ring.constant(fld.from_i64(l)))
    };
    let eliminant = |p: &BinaryForm<UPolyRing<F>>, q: &BinaryForm<UPolyRing<F>>| {
        GRID.iter().fold(Vec::new(), |acc, &(l, mu)| {
            let comb = lin(l).mul(q).add(&c.scale(&ring.constant(fld.from_i64(mu))));
            ring.gcd(&acc, &resultant(p, &comb))
        })
    };
    let g = ring.gcd(&eliminant(&a, &b), &eliminant(&b, &a));

    let mut verdict = SmoothVerdict {
        smooth: true,
        singular_points: Vec::new(),
        everywhere_singular: false,
        unlisted: false,
    };
    if g.is_empty() {
        verdict.smooth = false;
        verdict.everywhere_singular = true;
        return Ok(verdict);
    }
    if ring.degree(&g) > Some(0) {
        verdict.smooth = false;
        let roots = fld.rational_roots(&g);
        if ring.degree(&ring.squarefree_part(&g)) != Some(roots.len()) {
            verdict.unlisted = true;
        }
        for t in roots {
            let w = in_w(&datum.fiber_at(&t));
            if !w.in_w {
                return Err(Error::InternalConsistency(format!(
                    "eliminant root t = {} is not a singular fiber",
                    fld.render(&t)
                )));
            }
            if w.witnesses.is_empty() {
                verdict.unlisted = true;
            }
            let base = ProjPoint::new(fld.clone(), fld.one(), t)?;
            for fiber in w.witnesses {
                verdict.singular_points.push(SingularPoint {
                    base: base.clone(),
                    fiber,
                });
            }
        }
    }
    let w = in_w(&datum.fiber_at_infinity());
    if w.in_w {
        verdict.smooth = false;
        if w.witnesses.is_empty() {
            verdict.unlisted = true;
        }
        let base = ProjPoint::new(fld.clone(), fld.zero(), fld.one())?;
        for fiber in w.witnesses {
            verdict.singular_points.push(SingularPoint {
                base: base.clone(),
                fiber,
            });
        }
    }
    Ok(verdict)
}
