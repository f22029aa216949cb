//! Dense symmetric eigenvalues (cyclic Jacobi), dense solves and
//! Sylvester-inertia counts for periodic tridiagonal matrices.

use crate::error::{Result, WaveError};

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..i {
                m = m.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        m
    }
}

/// Eigenvalues (ascending) of a symmetric matrix by the cyclic Jacobi method.
pub fn symmetric_eigenvalues(m: &Matrix) -> Result<Vec<f64>> {
    Ok(jacobi(m, false)?.0)
}

/// Eigenvalues and column eigenvectors, sorted ascending.
pub fn symmetric_eigen(m: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let (vals, vecs) = jacobi(m, true)?;
    Ok((vals, vecs.expect("vectors requested")))
}

fn jacobi(m: &Matrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Matrix>)> {
    let n = m.n;
    let mut a = m.clone();
    let mut v = want_vectors.then(|| Matrix::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 }));
    let scale: f64 = a.data.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
            let vals = idx.iter().map(|&i| a.get(i, i)).collect();
            let vecs = v.map(|v| Matrix::from_fn(n, |r, c| v.get(r, idx[c])));
            return Ok((vals, vecs));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let tau = (aqq - app) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, c * vkp - s * vkq);
                        v.set(k, q, s * vkp + c * vkq);
                    }
                }
            }
        }
    }
    Err(WaveError::NonConvergence("Jacobi sweeps exhausted".into()))
}

/// Solve `m x = rhs` by Gaussian elimination with partial pivoting.
pub fn solve(m: &Matrix, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = m.n;
    let mut a = m.data.clone();
    let mut b = rhs.to_vec();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs())).unwrap();
        if a[p * n + k] == 0.0 {
            return Err(WaveError::NonConvergence("singular matrix".into()));
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            b.swap(k, p);
        }
        let piv = a[k * n + k];
        for i in k + 1..n {
            let f = a[i * n + k] / piv;
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                a[i * n + j] -= f * a[k * n + j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i * n + j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i * n + i];
    }
    Ok(x)
}

/// Symmetric periodic tridiagonal matrix: `diag[i]`, `off[i]` couples
/// `i` and `i + 1 (mod n)`, so `off[n - 1]` is the corner entry.
#[derive(Debug, Clone)]
pub struct CyclicTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl CyclicTridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn to_dense(&self) -> Matrix {
        let n = self.len();
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, self.diag[i]);
            let j = (i + 1) % n;
            m.set(i, j, m.get(i, j) + self.off[i]);
            m.set(j, i, m.get(j, i) + self.off[i]);
        }
        m
    }

    /// Number of eigenvalues strictly below `mu` (Sylvester inertia of
    /// `A - mu I` from symmetric elimination in natural order).
    pub fn count_below(&self, mu: f64) -> usize {
        let n = self.len();
        if n < 3 {
            let vals = symmetric_eigenvalues(&self.to_dense()).unwrap_or_default();
            return vals.iter().filter(|&&v| v < mu).count();
        }
        let tiny = f64::EPSILON * self.norm_bound();
        let mut count = 0;
        let mut d = self.diag[0] - mu;
        let mut e = self.off[n - 1]; // coupling of the current row with row n-1
        let mut last = self.diag[n - 1] - mu;
        for i in 0..n - 2 {
            if d == 0.0 {
                d = tiny;
            }
            if d < 0.0 {
                count += 1;
            }
            let b = self.off[i];
            let next_d = self.diag[i + 1] - mu - b * b / d;
            let carry = if i + 1 == n - 2 { self.off[n - 2] } else { 0.0 };
            let next_e = carry - b * e / d;
            last -= e * e / d;
            d = next_d;
            e = next_e;
        }
        // row n-2 couples to n-1 through e
        if d == 0.0 {
            d = tiny;
        }
        if d < 0.0 {
            count += 1;
        }
        last -= e * e / d;
        if last < 0.0 {
            count += 1;
        }
        count
    }

    /// Gershgorin interval.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = self.off[i].abs() + self.off[(i + n - 1) % n].abs();
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn norm_bound(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(1.0)
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection on the inertia count.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        lo -= 1.0;
        hi += 1.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The `m` smallest eigenvalues.
    pub fn lowest(&self, m: usize) -> Vec<f64> {
        (0..m.min(self.len())).map(|k| self.eigenvalue(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_on_known_spectrum() {
        // periodic second difference: eigenvalues 2 - 2 cos(2 pi k / n)
        let n = 12;
        let m = Matrix::from_fn(n, |i, j| {
            if i == j {
                2.0
            } else if (i + 1) % n == j || (j + 1) % n == i {
                -1.0
            } else {
                0.0
            }
        });
        let vals = symmetric_eigenvalues(&m).unwrap();
        let mut exact: Vec<f64> =
            (0..n).map(|k| 2.0 - 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos()).collect();
        exact.sort_by(f64::total_cmp);
        for (a, b) in vals.iter().zip(&exact) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvectors_satisfy_equation() {
        let m = Matrix::from_fn(5, |i, j| 1.0 / (1.0 + i as f64 + j as f64));
        let (vals, vecs) = symmetric_eigen(&m).unwrap();
        for c in 0..5 {
            let v: Vec<f64> = (0..5).map(|r| vecs.get(r, c)).collect();
            let mv = m.mul_vec(&v);
            for r in 0..5 {
                assert!((mv[r] - vals[c] * v[r]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn solve_roundtrip() {
        let m = Matrix::from_fn(4, |i, j| if i == j { 4.0 } else { 1.0 / (1.0 + (i + 2 * j) as f64) });
        let x = [1.0, -2.0, 0.5, 3.0];
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn cyclic_inertia_matches_dense() {
        let n = 9;
        let t = CyclicTridiagonal {
            diag: (0..n).map(|i| (i as f64 * 0.7).sin() * 3.0).collect(),
            off: (0..n).map(|i| 0.5 + (i as f64 * 1.3).cos()).collect(),
        };
        let dense = symmetric_eigenvalues(&t.to_dense()).unwrap();
        for k in 0..n {
            assert!((t.eigenvalue(k) - dense[k]).abs() < 1e-11, "k={k}");
        }
        for mu in [-4.0, -1.0, 0.0, 0.3, 2.5] {
            assert_eq!(t.count_below(mu), dense.iter().filter(|&&v| v < mu).count());
        }
    }
}
