//! Dense symmetric eigensolver and small vector helpers.
//!
//! The solver is the classical two-phase scheme: Householder reduction to
//! tridiagonal form, then implicit QL with Wilkinson-style shifts on the
//! tridiagonal matrix, accumulating rotations into the eigenvector matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Maximum QL sweeps spent on a single eigenvalue before giving up.
const MAX_SWEEPS: usize = 60;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// `y += alpha * x`.
#[inline]
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Entrywise product.
pub fn hadamard(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// Eigendecomposition of a dense symmetric matrix.
pub struct SymmetricEigen {
    pub n: usize,
    /// Eigenvalues, descending.
    pub values: Vec<f64>,
    /// Row `i` (entries `i*n .. (i+1)*n`) is the unit eigenvector for `values[i]`.
    pub vectors: Vec<f64>,
}

impl SymmetricEigen {
    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.n..(i + 1) * self.n]
    }
}

/// Full eigendecomposition of the symmetric row-major `n × n` matrix `a`.
///
/// Only the lower triangle is read. Output is normalized for reproducibility:
/// eigenvalues descending, the first entry of each eigenvector with magnitude
/// above `1e-9` made positive, and vectors within a cluster of numerically
/// equal eigenvalues ordered lexicographically (descending).
pub fn symmetric_eigen(a: &[f64], n: usize) -> Result<SymmetricEigen> {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    if n == 0 {
        return Ok(SymmetricEigen { n, values: Vec::new(), vectors: Vec::new() });
    }
    if n == 1 {
        return Ok(SymmetricEigen { n, values: vec![a[0]], vectors: vec![1.0] });
    }
    let mut v = a.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut v, &mut d, &mut e, n);
    // Eigenvectors end up as columns of `v`; QL rotates pairs of columns, so
    // work on the transpose to keep those updates contiguous.
    let mut w = transpose(&v, n);
    tql2(&mut w, &mut d, &mut e, n)?;
    Ok(normalize(n, d, w))
}

fn transpose(a: &[f64], n: usize) -> Vec<f64> {
    let mut t = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = a[i * n + j];
        }
    }
    t
}

fn tred2(v: &mut [f64], d: &mut [f64], e: &mut [f64], n: usize) {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
                v[at(j, i)] = 0.0;
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in &mut e[..i] {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in j + 1..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit QL on the tridiagonal `(d, e)`. `w` holds eigenvectors as rows.
fn tql2(w: &mut [f64], d: &mut [f64], e: &mut [f64], n: usize) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_SWEEPS {
                    return Err(Error::NoConvergence { index: l });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in &mut d[l + 2..n] {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = w.split_at_mut((i + 1) * n);
                    let wi = &mut lo[i * n..];
                    let wi1 = &mut hi[..n];
                    for k in 0..n {
                        let t = wi1[k];
                        wi1[k] = s * wi[k] + c * t;
                        wi[k] = c * wi[k] - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

fn lex_desc(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match y.total_cmp(x) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn normalize(n: usize, values: Vec<f64>, rows: Vec<f64>) -> SymmetricEigen {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut vals: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut vecs: Vec<Vec<f64>> = order
        .iter()
        .map(|&i| {
            let mut v = rows[i * n..(i + 1) * n].to_vec();
            if let Some(&first) = v.iter().find(|x| x.abs() > 1e-9) {
                if first < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
            }
            v
        })
        .collect();

    let gap = 1e-9 * vals[0].abs().max(vals[n - 1].abs()).max(1.0);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && vals[end - 1] - vals[end] <= gap {
            end += 1;
        }
        if end - start > 1 {
            vecs[start..end].sort_by(|a, b| lex_desc(a, b));
            // Keep the eigenvalue multiset descending; within a cluster the
            // assignment is immaterial at this tolerance.
            let mut block: Vec<f64> = vals[start..end].to_vec();
            block.sort_by(|a, b| b.total_cmp(a));
            vals[start..end].copy_from_slice(&block);
        }
        start = end;
    }
    SymmetricEigen { n, values: vals, vectors: vecs.concat() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn check(a: &[f64], n: usize) -> SymmetricEigen {
        let eig = symmetric_eigen(a, n).unwrap();
        for i in 0..n {
            let v = eig.vector(i);
            assert_abs_diff_eq!(norm2(v), 1.0, epsilon = 1e-12);
            for r in 0..n {
                let av: f64 = (0..n).map(|c| a[r * n + c] * v[c]).sum();
                assert_abs_diff_eq!(av, eig.values[i] * v[r], epsilon = 1e-10);
            }
            for j in 0..i {
                assert_abs_diff_eq!(dot(v, eig.vector(j)), 0.0, epsilon = 1e-12);
            }
        }
        for i in 1..n {
            assert!(eig.values[i - 1] >= eig.values[i]);
        }
        eig
    }

    #[test]
    fn two_by_two() {
        let eig = check(&[2.0, 1.0, 1.0, 2.0], 2);
        assert_abs_diff_eq!(eig.values[0], 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[1], 1.0, epsilon = 1e-14);
        assert!(eig.vector(0)[0] > 0.0);
    }

    #[test]
    fn diagonal_and_trivial_sizes() {
        let eig = check(&[1.0, 0.0, 0.0, 0.0, -2.0, 0.0, 0.0, 0.0, 5.0], 3);
        assert_eq!(eig.values, vec![5.0, 1.0, -2.0]);
        assert_eq!(symmetric_eigen(&[4.0], 1).unwrap().values, vec![4.0]);
        assert!(symmetric_eigen(&[], 0).unwrap().values.is_empty());
    }

    #[test]
    fn dense_random_matrix() {
        let n = 37;
        let mut a = vec![0.0; n * n];
        let mut x: u64 = 12345;
        for i in 0..n {
            for j in 0..=i {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let val = (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
                a[i * n + j] = val;
                a[j * n + i] = val;
            }
        }
        let eig = check(&a, n);
        let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
        assert_abs_diff_eq!(eig.values.iter().sum::<f64>(), trace, epsilon = 1e-10);
    }
}
