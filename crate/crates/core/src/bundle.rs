//! Matrices of linear forms on P¹ as presentations `O(−1)^d → O^{r+d}` of
//! bundles: degeneracy, splitting type, and finite-field statistics.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::det::{det_bareiss, maximal_minors, row_subsets};
use crate::algebra::form::BinaryForm;
use crate::algebra::linalg::Matrix;
use crate::algebra::ring::{Field, PrimeField};
use crate::algebra::upoly::UPolyRing;
use crate::cubic::Mat2;
use crate::error::{Error, Result};

/// Above this many columns, minors switch from memoized Laplace to Bareiss.
const LAPLACE_MAX_D: usize = 8;

/// Exhaustive enumeration refuses more matrices than this.
const EXHAUSTIVE_LIMIT: u128 = 50_000_000;

/// `(r+d) × d` matrix of linear forms.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMatrix<F: Field> {
    field: F,
    r: usize,
    d: usize,
    entries: Vec<Vec<BinaryForm<F>>>,
}

impl<F: Field> LinearMatrix<F> {
    pub fn new(field: F, r: usize, d: usize, entries: Vec<Vec<BinaryForm<F>>>) -> Result<Self> {
        if r == 0 || d == 0 {
            return Err(Error::contract("r and d must be positive"));
        }
        if entries.len() != r + d || entries.iter().any(|row| row.len() != d) {
            return Err(Error::contract(format!("expected a {}x{d} matrix", r + d)));
        }
        for row in &entries {
            for e in row {
                if e.degree() != 1 || e.ring() != &field {
                    return Err(Error::contract("entries must be linear forms over the given field"));
                }
            }
        }
        Ok(LinearMatrix { field, r, d, entries })
    }

    /// Entry `(i, j)` is `c[i][j].0 · x1 + c[i][j].1 · x2`.
    pub fn from_coeffs(field: F, r: usize, d: usize, c: Vec<Vec<(F::Elem, F::Elem)>>) -> Result<Self> {
        let entries = c
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|(a, b)| BinaryForm::linear(field.clone(), a, b))
                    .collect()
            })
            .collect();
        Self::new(field, r, d, entries)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[Vec<BinaryForm<F>>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &BinaryForm<F> {
        &self.entries[i][j]
    }

    /// All `d × d` minors as forms of degree `d`, rows in lexicographic order.
    pub fn minors(&self) -> Vec<BinaryForm<F>> {
        let d = self.d;
        self.minors_dehomogenized()
            .into_iter()
            .map(|asc| match asc.len() {
                0 => BinaryForm::zero(self.field.clone(), d),
                n => BinaryForm::rehomogenize(self.field.clone(), d + 1 - n, &asc),
            })
            .collect()
    }

    /// Minors with `x2 = 1`, ascending in `x1`; degree `d` is implicit.
    fn minors_dehomogenized(&self) -> Vec<Vec<F::Elem>> {
        let ring = UPolyRing::new(self.field.clone());
        // a x1 + b x2 ↦ b + a x1
        let m: Vec<Vec<Vec<F::Elem>>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| ring.from_coeffs(vec![e.coeff(1).clone(), e.coeff(0).clone()]))
                    .collect()
            })
            .collect();
        if self.d <= LAPLACE_MAX_D {
            maximal_minors(&ring, &m).into_iter().map(|(_, v)| v).collect()
        } else {
            row_subsets(self.r + self.d, self.d)
                .into_iter()
                .map(|sel| {
                    let sub: Vec<Vec<Vec<F::Elem>>> = sel.iter().map(|&i| m[i].clone()).collect();
                    det_bareiss(&ring, &sub, |a, b| {
                        ring.exact_div(a, b).expect("Bareiss quotients are exact")
                    })
                })
                .collect()
        }
    }

    /// Rank `d` at every point of P¹ over the algebraic closure: the minors
    /// have no common projective zero.
    pub fn is_nondegenerate(&self) -> bool {
        let ring = UPolyRing::new(self.field.clone());
        let minors = self.minors_dehomogenized();
        // (1:0) is a common zero iff no minor reaches degree d in x1
        if !minors.iter().any(|m| m.len() == self.d + 1) {
            return false;
        }
        let mut g: Vec<F::Elem> = Vec::new();
        for m in &minors {
            g = ring.gcd(&g, m);
            if g.len() == 1 {
                return true;
            }
        }
        g.len() == 1
    }

    /// `h⁰(E^∨(t))` for `E = coker`: the kernel dimension of
    /// `H⁰(O(t))^{r+d} → H⁰(O(t+1))^d`, `s ↦ sᵀL`.
    pub fn dual_sections(&self, t: usize) -> usize {
        let f = &self.field;
        let (n, d) = (self.r + self.d, self.d);
        let mut m = Matrix::zeros(f.clone(), d * (t + 2), n * (t + 1));
        for i in 0..n {
            for j in 0..d {
                let e = &self.entries[i][j];
                let (a, b) = (e.coeff(0), e.coeff(1));
                for k in 0..=t {
                    let col = i * (t + 1) + k;
                    // x1^{t-k} x2^k · (a x1 + b x2)
                    let r0 = j * (t + 2) + k;
                    m.set(r0, col, f.add(m.get(r0, col), a));
                    m.set(r0 + 1, col, f.add(m.get(r0 + 1, col), b));
                }
            }
        }
        n * (t + 1) - m.rank()
    }

    /// `(A, B, C)·L = A · L(xC) · B⁻¹`.
    pub fn transform(&self, a: &Matrix<F>, b: &Matrix<F>, c: &Mat2<F::Elem>) -> Result<Self> {
        let f = &self.field;
        let (n, d) = (self.r + self.d, self.d);
        if a.rows() != n || a.cols() != n || b.rows() != d || b.cols() != d {
            return Err(Error::contract("transform matrices have the wrong size"));
        }
        if f.is_zero(&a.det()?) {
            return Err(Error::contract("A must be invertible"));
        }
        if f.is_zero(&crate::cubic::mat_det(f, c)) {
            return Err(Error::contract("C must be invertible"));
        }
        let binv = b.inverse()?;
        let sub: Vec<Vec<BinaryForm<F>>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.substitute_row(c)).collect())
            .collect();
        let zero = || BinaryForm::zero(f.clone(), 1);
        let mut left = vec![vec![zero(); d]; n];
        for (i, row) in left.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                for (k, sub_row) in sub.iter().enumerate() {
                    *slot = slot.add(&sub_row[j].scale(a.get(i, k)));
                }
            }
        }
        let mut out = vec![vec![zero(); d]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                for k in 0..d {
                    *slot = slot.add(&left[i][k].scale(binv.get(k, j)));
                }
            }
        }
        Self::new(f.clone(), self.r, d, out)
    }
}

pub fn degeneracy_check<F: Field>(l: &LinearMatrix<F>) -> bool {
    l.is_nondegenerate()
}

/// Kernel dimensions `k(0..=t_max)`.
pub fn kernel_dims<F: Field>(l: &LinearMatrix<F>, t_max: usize) -> Vec<usize> {
    (0..=t_max).map(|t| l.dual_sections(t)).collect()
}

/// Splitting type `m1 ≤ … ≤ m_r` of the cokernel, from the jumps of
/// `k(t) = Σ max(0, t − m_i + 1)`.
pub fn splitting_type<F: Field>(l: &LinearMatrix<F>) -> Result<Vec<u32>> {
    if !l.is_nondegenerate() {
        return Err(Error::contract("splitting type needs a nondegenerate matrix"));
    }
    let mut out = Vec::with_capacity(l.r);
    let mut prev_k = 0usize;
    let mut prev_jump = 0usize;
    for t in 0..=l.d {
        let k = l.dual_sections(t);
        // jump = #{i : m_i ≤ t}
        let jump = k - prev_k;
        for _ in prev_jump..jump {
            out.push(t as u32);
        }
        if jump == l.r {
            break;
        }
        prev_k = k;
        prev_jump = jump;
    }
    if out.len() != l.r || out.iter().map(|&m| m as usize).sum::<usize>() != l.d {
        return Err(Error::InternalConsistency(format!(
            "kernel dimensions gave splitting {out:?} for r = {}, d = {}",
            l.r, l.d
        )));
    }
    Ok(out)
}

/// Uniform coefficients in `F_p`, drawn from `rng`.
pub fn random_matrix_with<R: Rng>(r: usize, d: usize, field: PrimeField, rng: &mut R) -> LinearMatrix<PrimeField> {
    let p = field.modulus();
    let c = (0..r + d)
        .map(|_| (0..d).map(|_| (rng.random_range(0..p), rng.random_range(0..p))).collect())
        .collect();
    LinearMatrix::from_coeffs(field, r, d, c).expect("well-formed dimensions")
}

pub fn random_matrix(r: usize, d: usize, field: PrimeField, seed: u64) -> LinearMatrix<PrimeField> {
    random_matrix_with(r, d, field, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Generator for trial `index` of a probe seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProbeReport {
    pub trials: u64,
    pub degenerate: u64,
    /// Splitting types among nondegenerate samples (empty if not requested).
    pub histogram: BTreeMap<Vec<u32>, u64>,
}

impl ProbeReport {
    pub fn degenerate_fraction(&self) -> f64 {
        self.degenerate as f64 / self.trials as f64
    }

    fn merge(mut self, other: ProbeReport) -> ProbeReport {
        self.trials += other.trials;
        self.degenerate += other.degenerate;
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self
    }

    fn single(l: &LinearMatrix<PrimeField>, histogram: bool) -> ProbeReport {
        let mut rep = ProbeReport {
            trials: 1,
            ..Default::default()
        };
        if !l.is_nondegenerate() {
            rep.degenerate = 1;
        } else if histogram {
            let s = splitting_type(l).expect("nondegenerate");
            rep.histogram.insert(s, 1);
        }
        rep
    }

    /// Most frequent splitting type (ties broken by the smaller type).
    pub fn mode(&self) -> Option<&Vec<u32>> {
        self.histogram
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
            .map(|(k, _)| k)
    }
}

/// Samples `trials` matrices; trial `i` uses [`trial_rng`]`(seed, i)`, so the
/// report does not depend on scheduling.
pub fn codim_probe(r: usize, d: usize, p: u64, trials: u64, seed: u64, histogram: bool) -> Result<ProbeReport> {
    if trials == 0 {
        return Err(Error::contract("trials must be at least 1"));
    }
    let field = PrimeField::with_small_char(p)?;
    Ok((0..trials)
        .into_par_iter()
        .map(|i| {
            let l = random_matrix_with(r, d, field, &mut trial_rng(seed, i));
            ProbeReport::single(&l, histogram)
        })
        .reduce(ProbeReport::default, ProbeReport::merge))
}

/// Every matrix in `M_{r,d}(F_p)`, in lexicographic coefficient order.
pub fn exhaustive_probe(r: usize, d: usize, p: u64, histogram: bool) -> Result<ProbeReport> {
    let field = PrimeField::with_small_char(p)?;
    let ncoef = 2 * (r + d) * d;
    let total = (p as u128).checked_pow(ncoef as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT);
    let Some(total) = total else {
        return Err(Error::Unsupported(format!(
            "exhaustive enumeration of {p}^{ncoef} matrices is too large"
        )));
    };
    Ok((0..total as u64)
        .into_par_iter()
        .map(|mut idx| {
            let mut digits = vec![0u64; ncoef];
            for slot in digits.iter_mut().rev() {
                *slot = idx % p;
                idx /= p;
            }
            let c = (0..r + d)
                .map(|i| (0..d).map(|j| (digits[2 * (i * d + j)], digits[2 * (i * d + j) + 1])).collect())
                .collect();
            let l = LinearMatrix::from_coeffs(field, r, d, c).expect("well-formed dimensions");
            ProbeReport::single(&l, histogram)
        })
        .reduce(ProbeReport::default, ProbeReport::merge))
}

/// Brute-force degeneracy over the base field: some `F_p`-point of P¹ where
/// the evaluated matrix has rank below `d`. Agrees with
/// [`LinearMatrix::is_nondegenerate`] when every common zero is rational,
/// e.g. for `d = 1`.
pub fn degenerate_at_rational_point(l: &LinearMatrix<PrimeField>) -> bool {
    let f = *l.field();
    let p = f.modulus();
    let points = (0..p).map(|a| (a, 1)).chain(std::iter::once((1, 0)));
    for (p1, p2) in points {
        let rows = l
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&p1, &p2)).collect())
            .collect();
        if Matrix::from_rows(f, rows).rank() < l.d {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn lm(r: usize, d: usize, c: &[&[(u64, u64)]]) -> LinearMatrix<PrimeField> {
        LinearMatrix::from_coeffs(fp(), r, d, c.iter().map(|row| row.to_vec()).collect()).unwrap()
    }

    fn euler2() -> LinearMatrix<PrimeField> {
        lm(2, 2, &[&[(1, 0), (0, 0)], &[(0, 1), (0, 0)], &[(0, 0), (1, 0)], &[(0, 0), (0, 1)]])
    }

    #[test]
    fn degeneracy_examples() {
        assert!(degeneracy_check(&euler2()));
        let repeated = lm(2, 2, &[&[(1, 0), (1, 0)], &[(0, 1), (0, 1)], &[(0, 0), (0, 0)], &[(0, 0), (0, 0)]]);
        assert!(!degeneracy_check(&repeated));
        let shared = lm(1, 1, &[&[(1, 0)], &[(1, 0)]]);
        assert!(!degeneracy_check(&shared));
        assert!(degenerate_at_rational_point(&shared));
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting_type(&euler2()).unwrap(), vec![1, 1]);
        let staircase = lm(2, 2, &[&[(1, 0), (0, 0)], &[(0, 1), (1, 0)], &[(0, 0), (0, 1)], &[(0, 0), (0, 0)]]);
        assert_eq!(splitting_type(&staircase).unwrap(), vec![0, 2]);
        // brute-force kernel dimensions: O ⊕ O(2) gives k(t) = (t+1) + max(0, t-1)
        assert_eq!(kernel_dims(&staircase, 4), vec![1, 2, 4, 6, 8]);
    }

    #[test]
    fn minors_are_forms_of_degree_d() {
        let m = euler2().minors();
        assert_eq!(m.len(), 6);
        assert!(m.iter().all(|f| f.degree() == 2));
        // rows (0, 2): x1 · x1
        assert_eq!(m[1], BinaryForm::from_i64(fp(), &[1, 0, 0]));
    }

    #[test]
    fn random_matrix_is_deterministic() {
        let f5 = PrimeField::new(5).unwrap();
        let a = random_matrix(1, 1, f5, 42);
        assert_eq!(a, random_matrix(1, 1, f5, 42));
        assert!(a.entries().iter().flatten().all(|e| e.coeffs().iter().all(|&c| c < 5)));
    }

    #[test]
    fn exhaustive_small_counts() {
        // pairs of dependent linear forms: p⁴ − (p²−1)(p²−p)
        assert_eq!(exhaustive_probe(1, 1, 3, false).unwrap().degenerate, 33);
        assert_eq!(exhaustive_probe(1, 1, 5, false).unwrap().degenerate, 145);
        assert!(exhaustive_probe(2, 4, 101, false).is_err());
    }

    #[test]
    fn probe_is_reproducible() {
        let a = codim_probe(2, 2, 7, 300, 9, true).unwrap();
        let b = codim_probe(2, 2, 7, 300, 9, true).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trials, 300);
        assert_eq!(a.histogram.values().sum::<u64>() + a.degenerate, 300);
    }
}
