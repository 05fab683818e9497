//! Determinants over arbitrary commutative rings.

use std::collections::HashMap;

use super::ring::Ring;

/// Laplace expansion along columns, memoized on the set of rows used so far.
pub fn det_laplace<R: Ring>(r: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "determinant of a non-square matrix");
    assert!(n < 64, "matrix too large for Laplace expansion");
    let all = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    minor_on(r, m, all, &mut memo)
}

/// Determinant of the rows in `mask` against the first `popcount(mask)` columns.
fn minor_on<R: Ring>(
    r: &R,
    m: &[Vec<R::Elem>],
    mask: u64,
    memo: &mut HashMap<u64, R::Elem>,
) -> R::Elem {
    let k = mask.count_ones() as usize;
    if k == 0 {
        return r.one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    // Expand along column k-1 over the chosen rows, in increasing order.
    let col = k - 1;
    let mut acc = r.zero();
    let mut pos = 0usize;
    for i in 0..m.len() {
        if mask & (1 << i) == 0 {
            continue;
        }
        let e = &m[i][col];
        if !r.is_zero(e) {
            let sub = minor_on(r, m, mask & !(1 << i), memo);
            let term = r.mul(e, &sub);
            // sign of moving row `pos` to the bottom of a k-row block
            acc = if (k - 1 - pos).is_multiple_of(2) {
                r.add(&acc, &term)
            } else {
                r.sub(&acc, &term)
            };
        }
        pos += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// All maximal minors of a tall `rows × d` matrix, keyed by increasing row
/// indices (lexicographic order). Shares one memo table across minors.
pub fn maximal_minors<R: Ring>(r: &R, m: &[Vec<R::Elem>]) -> Vec<(Vec<usize>, R::Elem)> {
    let rows = m.len();
    let d = m.first().map_or(0, Vec::len);
    assert!(rows >= d && rows < 64);
    let mut memo = HashMap::new();
    row_subsets(rows, d)
        .into_iter()
        .map(|sel| {
            let mask = sel.iter().fold(0u64, |acc, &i| acc | (1 << i));
            let v = minor_on(r, m, mask, &mut memo);
            (sel, v)
        })
        .collect()
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn row_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Fraction-free Bareiss elimination. `exact_div(a, b)` must return `a / b`
/// whenever the quotient exists in the ring, which Bareiss guarantees.
pub fn det_bareiss<R: Ring>(
    r: &R,
    m: &[Vec<R::Elem>],
    exact_div: impl Fn(&R::Elem, &R::Elem) -> R::Elem,
) -> R::Elem {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return r.one();
    }
    let mut a: Vec<Vec<R::Elem>> = m.to_vec();
    let mut negate = false;
    let mut prev = r.one();
    for k in 0..n - 1 {
        if r.is_zero(&a[k][k]) {
            let Some(p) = (k + 1..n).find(|&i| !r.is_zero(&a[i][k])) else {
                return r.zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = r.sub(&r.mul(&a[i][j], &a[k][k]), &r.mul(&a[i][k], &a[k][j]));
                a[i][j] = exact_div(&v, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        r.neg(&d)
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Rationals;
    use num_rational::BigRational;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect()
    }

    #[test]
    fn laplace_matches_bareiss() {
        let q = Rationals;
        let m = mat(&[&[2, -1, 0, 3], &[1, 4, 2, 0], &[0, 5, -3, 1], &[7, 0, 1, 1]]);
        let a = det_laplace(&q, &m);
        let b = det_bareiss(&q, &m, |x, y| x / y);
        assert_eq!(a, b);
        // independent oracle value
        assert_eq!(a, BigRational::from_integer(405.into()));
    }

    #[test]
    fn minors_of_tall_matrix() {
        let q = Rationals;
        let m = mat(&[&[1, 0], &[0, 1], &[2, 3]]);
        let minors = maximal_minors(&q, &m);
        let vals: Vec<i64> = minors
            .iter()
            .map(|(_, v)| v.to_integer().try_into().unwrap())
            .collect();
        assert_eq!(vals, vec![1, 3, -2]);
        assert_eq!(minors[2].0, vec![1, 2]);
    }
}
