//! Small dense helpers shared by the geometric kernels.

use nalgebra::{DMatrix, DVector};

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Modified Gram-Schmidt with one reorthogonalization pass. Returns the
/// orthonormal vectors together with the norms of the residuals (the diagonal
/// of R), so that their product is the k-volume of the parallelotope.
pub(crate) fn gram_schmidt(vectors: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    let mut diag = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let r = norm(&w);
        diag.push(r);
        if r > 0.0 {
            w.iter_mut().for_each(|x| *x /= r);
        }
        basis.push(w);
    }
    (basis, diag)
}

/// Numerical rank: vectors whose residual against the span so far is at most
/// `tol` (relative to their own norm) are skipped.
pub(crate) fn rank(vectors: &[Vec<f64>], tol: f64) -> usize {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= c * qi);
            }
        }
        let r = norm(&w);
        if r > tol * norm(v) {
            basis.push(w.into_iter().map(|x| x / r).collect());
        }
    }
    basis.len()
}

/// Orthonormal basis of the orthogonal complement of the row span of `rows`
/// (rows assumed orthonormal). Deterministic: completes with the coordinate
/// vectors in order of largest residual.
pub(crate) fn orthonormal_complement(rows: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = rows.to_vec();
    let mut out = Vec::with_capacity(n.saturating_sub(rows.len()));
    while basis.len() < n {
        let mut best: Option<(f64, Vec<f64>)> = None;
        for i in 0..n {
            let mut w = vec![0.0; n];
            w[i] = 1.0;
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(&w, q);
                    for (wi, qi) in w.iter_mut().zip(q) {
                        *wi -= c * qi;
                    }
                }
            }
            let r = norm(&w);
            if best.as_ref().map_or(true, |(b, _)| r > *b + 1e-12) {
                best = Some((r, w));
            }
        }
        let (r, mut w) = best.expect("n > 0");
        w.iter_mut().for_each(|x| *x /= r);
        basis.push(w.clone());
        out.push(w);
    }
    out
}

pub(crate) fn rows_to_matrix(rows: &[Vec<f64>], n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j])
}

pub(crate) fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// Symmetric matrix function via eigendecomposition.
pub(crate) fn sym_apply(m: &DMatrix<f64>, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let d = DVector::from_iterator(eig.eigenvalues.len(), eig.eigenvalues.iter().map(|&l| f(l)));
    &eig.eigenvectors * DMatrix::from_diagonal(&d) * eig.eigenvectors.transpose()
}

/// Spectral norm of a symmetric matrix.
pub(crate) fn sym_spectral_norm(m: &DMatrix<f64>) -> f64 {
    let sym = (m + m.transpose()) * 0.5;
    sym.symmetric_eigen().eigenvalues.iter().fold(0.0_f64, |a, l| a.max(l.abs()))
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Determinant of the square matrix with the given rows, by Gaussian
/// elimination with partial pivoting.
pub(crate) fn det_rows(rows: &[&[f64]]) -> f64 {
    let n = rows.len();
    let mut a: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs())).expect("n > 0");
        let p = a[piv * n + col];
        if p == 0.0 {
            return 0.0;
        }
        if piv != col {
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
            }
            det = -det;
        }
        det *= p;
        for i in col + 1..n {
            let f = a[i * n + col] / p;
            if f != 0.0 {
                for j in col..n {
                    a[i * n + j] -= f * a[col * n + j];
                }
            }
        }
    }
    det
}

/// Generalized cross product of `n - 1` vectors in R^n: the vector `c` with
/// `<c, x> = det[rows; x]`.
pub(crate) fn cofactor_vector(rows: &[&[f64]], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in 0..n {
        e.iter_mut().for_each(|x| *x = 0.0);
        e[i] = 1.0;
        let mut full: Vec<&[f64]> = rows.to_vec();
        full.push(&e);
        out[i] = det_rows(&full);
    }
    out
}

/// Calls `f` on every k-subset of `0..m` in lexicographic order.
pub(crate) fn for_each_subset(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerated() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        let mut count = 0;
        for_each_subset(5, 0, |_| count += 1);
        assert_eq!(count, 1);
        let mut count = 0;
        for_each_subset(5, 5, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn complement_is_orthonormal() {
        let rows = vec![vec![1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt(), 0.0]];
        let c = orthonormal_complement(&rows, 3);
        assert_eq!(c.len(), 2);
        for v in &c {
            assert!((norm(v) - 1.0).abs() < 1e-12);
            assert!(dot(v, &rows[0]).abs() < 1e-12);
        }
        assert!(dot(&c[0], &c[1]).abs() < 1e-12);
    }

    #[test]
    fn determinants() {
        let a = [2.0, 0.0, 1.0];
        let b = [1.0, 3.0, 0.0];
        let c = [0.0, 1.0, 4.0];
        assert!((det_rows(&[&a, &b, &c]) - 25.0).abs() < 1e-12);
        let cof = cofactor_vector(&[&a, &b], 3);
        assert!((dot(&cof, &c) - 25.0).abs() < 1e-12);
        assert_eq!(det_rows(&[&a, &a, &c]), 0.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(12, 4), 495.0);
        assert_eq!(binomial(3, 4), 0.0);
    }
}
