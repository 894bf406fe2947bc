//! Dense real symmetric eigenvalues by cyclic Jacobi rotations.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { n, data: alloc::vec![0.0; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&mut self, s: f64) {
        self.data.iter_mut().for_each(|v| *v *= s);
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    acc += self.get(i, j) * self.get(i, j);
                }
            }
        }
        acc.sqrt()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

#[derive(Debug, Clone)]
pub struct JacobiOutcome {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub sweeps: usize,
    pub off_norm: f64,
}

/// Eigenvalues of a symmetric matrix; iterates full cyclic sweeps until the
/// off-diagonal Frobenius norm is below `off_tol`.
pub fn jacobi_eigenvalues(mut a: SymmetricMatrix, off_tol: f64, max_sweeps: usize) -> Result<JacobiOutcome> {
    if a.max_asymmetry() > 0.0 {
        return Err(Error::Domain("jacobi_eigenvalues: matrix is not symmetric"));
    }
    let n = a.n;
    let mut sweeps = 0;
    let mut off = a.off_diagonal_norm();
    while off >= off_tol {
        if sweeps == max_sweeps {
            return Err(Error::Convergence { what: "Jacobi sweeps", discrepancy: off });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    if arp == 0.0 && arq == 0.0 {
                        continue;
                    }
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a.set(r, p, new_rp);
                    a.set(p, r, new_rp);
                    a.set(r, q, new_rq);
                    a.set(q, r, new_rq);
                }
            }
        }
        sweeps += 1;
        off = a.off_diagonal_norm();
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eigenvalues.sort_by(|x, y| x.total_cmp(y));
    Ok(JacobiOutcome { eigenvalues, sweeps, off_norm: off })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let mut m = SymmetricMatrix::zeros(2);
        m.set(0, 0, 2.0);
        m.set(1, 1, -1.0);
        m.set(0, 1, 0.5);
        m.set(1, 0, 0.5);
        let out = jacobi_eigenvalues(m, 1e-14, 30).unwrap();
        let disc = (1.5f64 * 1.5 + 0.25).sqrt();
        assert!((out.eigenvalues[0] - (0.5 - disc)).abs() < 1e-15);
        assert!((out.eigenvalues[1] - (0.5 + disc)).abs() < 1e-15);
    }

    #[test]
    fn tridiagonal_known_spectrum() {
        // tridiag(-1, 2, -1) has eigenvalues 2 − 2cos(jπ/(n+1))
        let n = 12;
        let mut m = SymmetricMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 2.0);
            if i + 1 < n {
                m.set(i, i + 1, -1.0);
                m.set(i + 1, i, -1.0);
            }
        }
        let out = jacobi_eigenvalues(m, 1e-13, 50).unwrap();
        for (j, ev) in out.eigenvalues.iter().enumerate() {
            let want = 2.0 - 2.0 * ((j + 1) as f64 * core::f64::consts::PI / (n + 1) as f64).cos();
            assert!((ev - want).abs() < 1e-12, "{ev} vs {want}");
        }
        assert!(out.off_norm < 1e-13);
    }

    #[test]
    fn rejects_asymmetric() {
        let mut m = SymmetricMatrix::zeros(2);
        m.set(0, 1, 1.0);
        assert!(jacobi_eigenvalues(m, 1e-13, 10).is_err());
    }
}
