//! Binary cubics under `GL2` and under `H = Gm ⋉ GL2(k[ε])`, the map β and
//! the singularity locus `W`.
//!
//! Points are row vectors. `GL2` acts on forms by `f ↦ det(A)⁻¹ f(xA)` and on
//! points by `p ↦ p A⁻¹`.

use crate::algebra::form::{binary_gcd, BinaryForm, ProjPoint};
use crate::algebra::ring::{ExactField, Field};
use crate::error::{Error, Result};

/// Row-major 2×2 matrix, `[[a11, a12], [a21, a22]]`.
pub type Mat2<E> = [[E; 2]; 2];

pub fn mat_identity<F: Field>(f: &F) -> Mat2<F::Elem> {
    [[f.one(), f.zero()], [f.zero(), f.one()]]
}

pub fn mat_zero<F: Field>(f: &F) -> Mat2<F::Elem> {
    [[f.zero(), f.zero()], [f.zero(), f.zero()]]
}

pub fn mat_mul<F: Field>(f: &F, a: &Mat2<F::Elem>, b: &Mat2<F::Elem>) -> Mat2<F::Elem> {
    let e = |i: usize, j: usize| f.add(&f.mul(&a[i][0], &b[0][j]), &f.mul(&a[i][1], &b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_add<F: Field>(f: &F, a: &Mat2<F::Elem>, b: &Mat2<F::Elem>) -> Mat2<F::Elem> {
    let e = |i: usize, j: usize| f.add(&a[i][j], &b[i][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_scale<F: Field>(f: &F, s: &F::Elem, a: &Mat2<F::Elem>) -> Mat2<F::Elem> {
    let e = |i: usize, j: usize| f.mul(s, &a[i][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_det<F: Field>(f: &F, a: &Mat2<F::Elem>) -> F::Elem {
    f.sub(&f.mul(&a[0][0], &a[1][1]), &f.mul(&a[0][1], &a[1][0]))
}

pub fn mat_trace<F: Field>(f: &F, a: &Mat2<F::Elem>) -> F::Elem {
    f.add(&a[0][0], &a[1][1])
}

pub fn mat_inverse<F: Field>(f: &F, a: &Mat2<F::Elem>) -> Result<Mat2<F::Elem>> {
    let d = f
        .inv(&mat_det(f, a))
        .ok_or_else(|| Error::contract("singular 2x2 matrix"))?;
    Ok([
        [f.mul(&a[1][1], &d), f.neg(&f.mul(&a[0][1], &d))],
        [f.neg(&f.mul(&a[1][0], &d)), f.mul(&a[0][0], &d)],
    ])
}

pub fn mat_from_i64<F: Field>(f: &F, a: [[i64; 2]; 2]) -> Mat2<F::Elem> {
    [
        [f.from_i64(a[0][0]), f.from_i64(a[0][1])],
        [f.from_i64(a[1][0]), f.from_i64(a[1][1])],
    ]
}

/// `det(A)⁻¹ f(xA)`.
pub fn act_gl2<F: Field>(a: &Mat2<F::Elem>, f: &BinaryForm<F>) -> Result<BinaryForm<F>> {
    let field = f.ring();
    let dinv = field
        .inv(&mat_det(field, a))
        .ok_or_else(|| Error::contract("act_gl2 needs an invertible matrix"))?;
    Ok(f.substitute_row(a).scale(&dinv))
}

/// `(∂f/∂x1, ∂f/∂x2)`.
pub fn jacobian<F: Field>(f: &BinaryForm<F>) -> (BinaryForm<F>, BinaryForm<F>) {
    (f.partial_x1(), f.partial_x2())
}

/// `f + εg` with `f`, `g` binary cubics.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCubic<F: Field> {
    f: BinaryForm<F>,
    g: BinaryForm<F>,
}

impl<F: Field> DualCubic<F> {
    pub fn new(f: BinaryForm<F>, g: BinaryForm<F>) -> Result<Self> {
        if f.degree() != 3 || g.degree() != 3 {
            return Err(Error::contract(format!(
                "dual cubic needs two cubics, got degrees {} and {}",
                f.degree(),
                g.degree()
            )));
        }
        if f.ring() != g.ring() {
            return Err(Error::contract("dual cubic parts live over different fields"));
        }
        Ok(DualCubic { f, g })
    }

    pub fn f(&self) -> &BinaryForm<F> {
        &self.f
    }

    pub fn g(&self) -> &BinaryForm<F> {
        &self.g
    }

    pub fn field(&self) -> &F {
        self.f.ring()
    }
}

/// `(u, A + εB)` in `Gm ⋉ GL2(k[ε])`.
#[derive(Clone, Debug, PartialEq)]
pub struct HgElement<F: Field> {
    field: F,
    u: F::Elem,
    a: Mat2<F::Elem>,
    b: Mat2<F::Elem>,
}

impl<F: Field> HgElement<F> {
    pub fn new(field: F, u: F::Elem, a: Mat2<F::Elem>, b: Mat2<F::Elem>) -> Result<Self> {
        if field.is_zero(&u) {
            return Err(Error::contract("Gm component must be nonzero"));
        }
        if field.is_zero(&mat_det(&field, &a)) {
            return Err(Error::contract("det(A) must be nonzero"));
        }
        Ok(HgElement { field, u, a, b })
    }

    pub fn identity(field: F) -> Self {
        HgElement {
            u: field.one(),
            a: mat_identity(&field),
            b: mat_zero(&field),
            field,
        }
    }

    pub fn u(&self) -> &F::Elem {
        &self.u
    }

    pub fn a(&self) -> &Mat2<F::Elem> {
        &self.a
    }

    pub fn b(&self) -> &Mat2<F::Elem> {
        &self.b
    }

    /// `(u, A, B)·(u', A', B') = (uu', AA', BA' + u·AB')`.
    ///
    /// The `Gm` factor scales the ε-part of the right operand, which is what
    /// makes this associative and compatible with [`act_hg`].
    pub fn multiply(&self, other: &Self) -> Self {
        let f = &self.field;
        let u = f.mul(&self.u, &other.u);
        let a = mat_mul(f, &self.a, &other.a);
        let b = mat_add(
            f,
            &mat_mul(f, &self.b, &other.a),
            &mat_scale(f, &self.u, &mat_mul(f, &self.a, &other.b)),
        );
        HgElement {
            field: f.clone(),
            u,
            a,
            b,
        }
    }

    /// `(u⁻¹, A⁻¹, −u⁻¹ A⁻¹ B A⁻¹)`.
    pub fn inverse(&self) -> Self {
        let f = &self.field;
        let ui = f.inv(&self.u).expect("u is a unit");
        let ai = mat_inverse(f, &self.a).expect("A is invertible");
        let b = mat_scale(f, &f.neg(&ui), &mat_mul(f, &mat_mul(f, &ai, &self.b), &ai));
        HgElement {
            field: f.clone(),
            u: ui,
            a: ai,
            b,
        }
    }
}

pub fn hg_multiply<F: Field>(h1: &HgElement<F>, h2: &HgElement<F>) -> HgElement<F> {
    h1.multiply(h2)
}

/// `det(A+εB)⁻¹ (f(xA) + ε(xB·J_f(xA) + u·g(xA)))`, where
/// `det(A+εB)⁻¹ = det(A)⁻¹ (1 − ε tr(A⁻¹B))`.
pub fn act_hg<F: Field>(h: &HgElement<F>, v: &DualCubic<F>) -> Result<DualCubic<F>> {
    let f = &h.field;
    if f != v.field() {
        return Err(Error::contract("group element and cubic over different fields"));
    }
    let ai = mat_inverse(f, &h.a)?;
    let dinv = f.inv(&mat_det(f, &h.a)).expect("checked invertible");
    let tr = mat_trace(f, &mat_mul(f, &ai, &h.b));

    let fa = v.f.substitute_row(&h.a);
    let (j1, j2) = jacobian(&v.f);
    let (j1a, j2a) = (j1.substitute_row(&h.a), j2.substitute_row(&h.a));
    // xB = (b11 x1 + b21 x2, b12 x1 + b22 x2)
    let xb1 = BinaryForm::linear(f.clone(), h.b[0][0].clone(), h.b[1][0].clone());
    let xb2 = BinaryForm::linear(f.clone(), h.b[0][1].clone(), h.b[1][1].clone());
    let deriv = xb1.mul(&j1a).add(&xb2.mul(&j2a));
    let ga = v.g.substitute_row(&h.a).scale(&h.u);
    let eps_part = deriv.add(&ga);

    // (d⁻¹ − ε d⁻¹ tr)(fa + ε e) = d⁻¹ fa + ε d⁻¹ (e − tr·fa)
    let new_f = fa.scale(&dinv);
    let new_g = eps_part.sub(&fa.scale(&tr)).scale(&dinv);
    DualCubic::new(new_f, new_g)
}

/// `(g(p), ∂1f(p), ∂2f(p))`.
pub fn beta<F: Field>(p: &ProjPoint<F>, v: &DualCubic<F>) -> (F::Elem, F::Elem, F::Elem) {
    let [p1, p2] = p.coords();
    let (j1, j2) = jacobian(&v.f);
    (v.g.eval(p1, p2), j1.eval(p1, p2), j2.eval(p1, p2))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WVerdict<F: Field> {
    pub in_w: bool,
    /// Rational points where `J_f` and `g` vanish together, sorted.
    pub witnesses: Vec<ProjPoint<F>>,
}

impl<F: Field> WVerdict<F> {
    pub fn witness(&self) -> Option<&ProjPoint<F>> {
        self.witnesses.first()
    }
}

/// Membership of `f + εg` in `W`: `f = 0`, or `∂1f`, `∂2f`, `g` share a
/// projective zero over the algebraic closure.
pub fn in_w<F: ExactField>(v: &DualCubic<F>) -> WVerdict<F> {
    let field = v.field().clone();
    if v.f.is_zero() {
        let witnesses = if v.g.is_zero() {
            // every point qualifies; report (0:1)
            vec![ProjPoint::new(field.clone(), field.zero(), field.one()).unwrap()]
        } else {
            v.g.rational_roots()
        };
        return WVerdict {
            in_w: true,
            witnesses,
        };
    }
    let (j1, j2) = jacobian(&v.f);
    let h = binary_gcd(&[j1, j2]).expect("f is nonzero, so some partial is nonzero");
    let common = if v.g.is_zero() {
        h
    } else {
        binary_gcd(&[h, v.g.clone()]).expect("inputs are nonzero")
    };
    if common.degree() == 0 {
        return WVerdict {
            in_w: false,
            witnesses: Vec::new(),
        };
    }
    WVerdict {
        in_w: true,
        witnesses: common.rational_roots(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{Rationals, Ring};

    fn q3(c: [i64; 4]) -> BinaryForm<Rationals> {
        BinaryForm::from_i64(Rationals, &c)
    }

    #[test]
    fn gl2_examples() {
        let q = Rationals;
        let f = q3([1, 0, 0, 0]);
        assert_eq!(act_gl2(&mat_identity(&q), &f).unwrap(), f);
        // diag(t, 1) at t = 5: det = 5, f(xA) = 125 x1³
        let a = mat_from_i64(&q, [[5, 0], [0, 1]]);
        assert_eq!(act_gl2(&a, &f).unwrap(), q3([25, 0, 0, 0]));
        let swap = mat_from_i64(&q, [[0, 1], [1, 0]]);
        assert_eq!(act_gl2(&swap, &q3([0, 1, 0, 0])).unwrap(), q3([0, 0, -1, 0]));
        let sing = mat_from_i64(&q, [[1, 2], [2, 4]]);
        assert!(act_gl2(&sing, &f).is_err());
    }

    #[test]
    fn hg_examples() {
        let q = Rationals;
        let v = DualCubic::new(q3([1, 2, 3, 4]), q3([0, 1, 0, -1])).unwrap();
        assert_eq!(act_hg(&HgElement::identity(q), &v).unwrap(), v);
        let alpha = HgElement::new(q, q.from_i64(7), mat_identity(&q), mat_zero(&q)).unwrap();
        let out = act_hg(&alpha, &v).unwrap();
        assert_eq!(out.f(), v.f());
        assert_eq!(out.g(), &v.g().scale(&q.from_i64(7)));
        // B = [[0,0],[1,0]]: xB = (x2, 0), so the ε-part is x2 · 3x1²
        let b = mat_from_i64(&q, [[0, 0], [1, 0]]);
        let h = HgElement::new(q, q.one(), mat_identity(&q), b).unwrap();
        let w = DualCubic::new(q3([1, 0, 0, 0]), q3([0, 0, 0, 0])).unwrap();
        let out = act_hg(&h, &w).unwrap();
        assert_eq!(out.f(), &q3([1, 0, 0, 0]));
        assert_eq!(out.g(), &q3([0, 3, 0, 0]));
    }

    #[test]
    fn semidirect_examples() {
        let q = Rationals;
        let b = mat_from_i64(&q, [[1, 2], [3, 4]]);
        let u = HgElement::new(q, q.from_i64(5), mat_identity(&q), mat_zero(&q)).unwrap();
        let n = HgElement::new(q, q.one(), mat_identity(&q), b.clone()).unwrap();
        let prod = u.multiply(&n);
        assert_eq!(prod.b(), &mat_scale(&q, &q.from_i64(5), &b));
        assert_eq!(prod.u(), &q.from_i64(5));
        let h = HgElement::new(q, q.from_i64(3), mat_from_i64(&q, [[2, 1], [1, 1]]), b).unwrap();
        assert_eq!(h.multiply(&h.inverse()), HgElement::identity(q));
        assert_eq!(h.inverse().multiply(&h), HgElement::identity(q));
    }

    #[test]
    fn jacobian_examples() {
        let (a, b) = jacobian(&q3([1, 0, 0, 0]));
        assert_eq!((a, b), (BinaryForm::from_i64(Rationals, &[3, 0, 0]), BinaryForm::from_i64(Rationals, &[0, 0, 0])));
        let (a, b) = jacobian(&q3([0, 1, 0, 0]));
        assert_eq!((a, b), (BinaryForm::from_i64(Rationals, &[0, 2, 0]), BinaryForm::from_i64(Rationals, &[1, 0, 0])));
        let (a, b) = jacobian(&q3([1, 0, 0, 1]));
        assert_eq!((a, b), (BinaryForm::from_i64(Rationals, &[3, 0, 0]), BinaryForm::from_i64(Rationals, &[0, 0, 3])));
    }

    #[test]
    fn beta_examples() {
        let q = Rationals;
        let v = DualCubic::new(q3([0, 1, 0, 0]), q3([0, 0, 0, 0])).unwrap();
        let p10 = ProjPoint::new(q, q.one(), q.zero()).unwrap();
        let p01 = ProjPoint::new(q, q.zero(), q.one()).unwrap();
        assert_eq!(beta(&p10, &v), (q.zero(), q.zero(), q.one()));
        assert_eq!(beta(&p01, &v), (q.zero(), q.zero(), q.zero()));
    }

    #[test]
    fn w_examples() {
        let node = DualCubic::new(q3([0, 1, 0, 0]), q3([0, 0, 0, 0])).unwrap();
        let v = in_w(&node);
        assert!(v.in_w);
        assert_eq!(v.witness().unwrap().render(), "(0:1)");
        // x2(x1 - x2)(x1 + x2) = x1²x2 - x2³
        let etale = DualCubic::new(q3([0, 1, 0, -1]), q3([3, 1, 4, 1])).unwrap();
        assert!(!in_w(&etale).in_w);
        let moved = DualCubic::new(q3([0, 1, 0, 0]), q3([0, 0, 0, 1])).unwrap();
        assert!(!in_w(&moved).in_w);
        // g = x1³ vanishes at (0:1) too, so this one is in W
        let stays = DualCubic::new(q3([0, 1, 0, 0]), q3([1, 0, 0, 0])).unwrap();
        assert!(in_w(&stays).in_w);
        let zero = DualCubic::new(q3([0, 0, 0, 0]), q3([0, 0, 0, 0])).unwrap();
        assert_eq!(in_w(&zero).witness().unwrap().render(), "(0:1)");
    }
}
