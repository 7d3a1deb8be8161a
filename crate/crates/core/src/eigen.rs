//! Dense symmetric eigensolvers.
//!
//! Cyclic Jacobi is the primary solver; it also yields eigenvectors. For
//! eigenvalues of larger matrices there is a Householder tridiagonalisation
//! followed by implicit QL, which is O(n³) with a much smaller constant.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EigenError {
    #[error("matrix data has length {len}, expected {n}x{n}")]
    Shape { n: usize, len: usize },
    #[error("matrix is not symmetric at ({row}, {col}): {a} vs {b}")]
    NotSymmetric { row: usize, col: usize, a: f64, b: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off})")]
    JacobiNoConvergence { sweeps: usize, off: f64 },
    #[error("QL iteration did not converge for eigenvalue {index}")]
    QlNoConvergence { index: usize },
}

/// Entrywise symmetry tolerance accepted on input.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius norm is below `tol·(1 + ‖A‖_F)`.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions {
            tol: 1e-12,
            max_sweeps: 64,
        }
    }
}

impl JacobiOptions {
    /// Tighter stopping threshold used when re-verifying near-ties.
    pub fn tight() -> Self {
        JacobiOptions {
            tol: 1e-14,
            max_sweeps: 64,
        }
    }
}

/// Eigenvalues (ascending) and, column `k` of `vectors`, the matching unit
/// eigenvectors stored row-major.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        let n = self.values.len();
        (0..n).map(|i| self.vectors[i * n + k]).collect()
    }
}

fn check(a: &[f64], n: usize) -> Result<(), EigenError> {
    if a.len() != n * n {
        return Err(EigenError::Shape { n, len: a.len() });
    }
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (a[i * n + j], a[j * n + i]);
            if (x - y).abs() > SYMMETRY_TOLERANCE || x.is_nan() || y.is_nan() {
                return Err(EigenError::NotSymmetric { row: i, col: j, a: x, b: y });
            }
        }
    }
    Ok(())
}

fn frobenius(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    s.sqrt()
}

/// Eigenvalues of a symmetric `n×n` row-major matrix, ascending, by cyclic
/// Jacobi rotations.
pub fn symmetric_eigenvalues(a: &[f64], n: usize) -> Result<Vec<f64>, EigenError> {
    jacobi(a, n, JacobiOptions::default(), false).map(|e| e.values)
}

pub fn symmetric_eigenvalues_with(
    a: &[f64],
    n: usize,
    opts: JacobiOptions,
) -> Result<Vec<f64>, EigenError> {
    jacobi(a, n, opts, false).map(|e| e.values)
}

/// Eigenvalues and eigenvectors by cyclic Jacobi.
pub fn symmetric_eigen(a: &[f64], n: usize) -> Result<Eigen, EigenError> {
    jacobi(a, n, JacobiOptions::default(), true)
}

fn jacobi(a: &[f64], n: usize, opts: JacobiOptions, want_vectors: bool) -> Result<Eigen, EigenError> {
    check(a, n)?;
    let mut a = a.to_vec();
    let mut v = if want_vectors {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        v
    } else {
        Vec::new()
    };
    let threshold = opts.tol * (1.0 + frobenius(&a));
    let mut sweeps = 0;
    loop {
        let off = off_norm(&a, n);
        if off < threshold {
            break;
        }
        if sweeps == opts.max_sweeps {
            return Err(EigenError::JacobiNoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, n, p, q, c, s);
                if want_vectors {
                    for k in 0..n {
                        let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = if want_vectors {
        let mut sorted = vec![0.0; n * n];
        for (col, &src) in order.iter().enumerate() {
            for k in 0..n {
                sorted[k * n + col] = v[k * n + src];
            }
        }
        sorted
    } else {
        Vec::new()
    };
    Ok(Eigen { values, vectors })
}

/// Applies `A ← Jᵀ A J` for the rotation in the `(p, q)` plane that zeroes
/// `A[p][q]`.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let apq = a[p * n + q];
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let np = c * akp - s * akq;
        let nq = s * akp + c * akq;
        a[k * n + p] = np;
        a[p * n + k] = np;
        a[k * n + q] = nq;
        a[q * n + k] = nq;
    }
    a[p * n + p] = c * c * app - 2.0 * c * s * apq + s * s * aqq;
    a[q * n + q] = s * s * app + 2.0 * c * s * apq + c * c * aqq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
}

/// Eigenvalues (ascending) via Householder reduction to tridiagonal form and
/// implicit QL with Wilkinson-style shifts.
pub fn tridiagonal_ql_eigenvalues(a: &[f64], n: usize) -> Result<Vec<f64>, EigenError> {
    check(a, n)?;
    let (mut diag, mut off) = householder_tridiagonal(a.to_vec(), n);
    implicit_ql(&mut diag, &mut off)?;
    diag.sort_by(f64::total_cmp);
    Ok(diag)
}

/// Returns the diagonal and the sub-diagonal (padded with a trailing zero).
fn householder_tridiagonal(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[i * n + k] * a[i * n + k]).sum::<f64>().sqrt();
        diag[k] = a[k * n + k];
        if norm == 0.0 {
            off[k] = 0.0;
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in k + 1..n {
            v[i] = a[i * n + k];
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = (k + 1..n).map(|i| v[i] * v[i]).sum();
        if vnorm2 == 0.0 {
            off[k] = x0;
            continue;
        }
        let beta = 2.0 / vnorm2;
        // p = beta·A22·v
        for i in k + 1..n {
            let row = &a[i * n + k + 1..i * n + n];
            let dot: f64 = row.iter().zip(&v[k + 1..n]).map(|(x, y)| x * y).sum();
            w[i] = beta * dot;
        }
        let pv: f64 = (k + 1..n).map(|i| w[i] * v[i]).sum();
        let kk = 0.5 * beta * pv;
        for i in k + 1..n {
            w[i] -= kk * v[i];
        }
        for i in k + 1..n {
            let (vi, wi) = (v[i], w[i]);
            let row = &mut a[i * n + k + 1..i * n + n];
            for (j, x) in row.iter_mut().enumerate() {
                let j = j + k + 1;
                *x -= vi * w[j] + wi * v[j];
            }
        }
        off[k] = alpha;
    }
    if n >= 2 {
        diag[n - 2] = a[(n - 2) * n + n - 2];
        off[n - 2] = a[(n - 1) * n + n - 2];
    }
    if n >= 1 {
        diag[n - 1] = a[(n - 1) * n + n - 1];
    }
    (diag, off)
}

fn implicit_ql(d: &mut [f64], e: &mut [f64]) -> Result<(), EigenError> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(EigenError::QlNoConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn k2_spectrum() {
        let ev = symmetric_eigenvalues(&[0.0, 1.0, 1.0, 0.0], 2).unwrap();
        assert!(close(&ev, &[-1.0, 1.0], 1e-12));
    }

    #[test]
    fn k3_spectrum() {
        let a = [0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0];
        let ev = symmetric_eigenvalues(&a, 3).unwrap();
        assert!(close(&ev, &[-1.0, -1.0, 2.0], 1e-12));
    }

    #[test]
    fn pentagon_spectrum_matches_circulant_formula() {
        let n = 5;
        let mut a = vec![0.0; 25];
        for i in 0..n {
            let j = (i + 1) % n;
            a[i * n + j] = 1.0;
            a[j * n + i] = 1.0;
        }
        let mut want: Vec<f64> = (0..n)
            .map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
            .collect();
        want.sort_by(f64::total_cmp);
        let got = symmetric_eigenvalues(&a, n).unwrap();
        assert!(close(&got, &want, 1e-12), "{got:?}");
    }

    #[test]
    fn rejects_asymmetric_and_misshapen() {
        assert!(matches!(
            symmetric_eigenvalues(&[0.0, 1.0, 0.5, 0.0], 2),
            Err(EigenError::NotSymmetric { .. })
        ));
        assert!(matches!(symmetric_eigenvalues(&[0.0; 3], 2), Err(EigenError::Shape { .. })));
    }

    #[test]
    fn sweep_cap_reports_non_convergence() {
        let a = [2.0, 1.0, 1.0, 1.0, 3.0, 1.0, 1.0, 1.0, 4.0];
        let opts = JacobiOptions { tol: 1e-12, max_sweeps: 0 };
        assert!(matches!(
            symmetric_eigenvalues_with(&a, 3, opts),
            Err(EigenError::JacobiNoConvergence { .. })
        ));
    }

    #[test]
    fn eigenvectors_satisfy_residual() {
        let a = [2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0];
        let e = symmetric_eigen(&a, 3).unwrap();
        for k in 0..3 {
            let v = e.vector(k);
            for i in 0..3 {
                let av: f64 = (0..3).map(|j| a[i * 3 + j] * v[j]).sum();
                assert!((av - e.values[k] * v[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn trivial_orders() {
        assert_eq!(symmetric_eigenvalues(&[3.5], 1).unwrap(), vec![3.5]);
        assert_eq!(tridiagonal_ql_eigenvalues(&[3.5], 1).unwrap(), vec![3.5]);
        let ev = tridiagonal_ql_eigenvalues(&[0.0, 1.0, 1.0, 0.0], 2).unwrap();
        assert!(close(&ev, &[-1.0, 1.0], 1e-14));
    }

    fn symmetric_from(entries: &[f64], n: usize) -> Vec<f64> {
        let mut a = vec![0.0; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                a[i * n + j] = entries[k];
                a[j * n + i] = entries[k];
                k += 1;
            }
        }
        a
    }

    proptest! {
        // Two independent routes must agree on the spectrum.
        #[test]
        fn jacobi_agrees_with_ql(n in 1usize..24, seed in prop::collection::vec(-5.0f64..5.0, 300)) {
            let a = symmetric_from(&seed, n);
            let j = symmetric_eigenvalues(&a, n).unwrap();
            let q = tridiagonal_ql_eigenvalues(&a, n).unwrap();
            let scale = 1.0 + frobenius(&a);
            prop_assert!(close(&j, &q, 1e-10 * scale), "{:?} vs {:?}", j, q);
            let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
            prop_assert!((j.iter().sum::<f64>() - trace).abs() < 1e-9 * scale);
        }
    }
}
