use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use super::hamiltonian::DiscretizedHamiltonian;
use super::solve::EigenResult;
use crate::error::{Error, Result};

/// Default cap on the number of grid points accepted by [`solve_dense`].
pub const DEFAULT_DENSE_LIMIT: usize = 1200;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n);
        for i in 0..n {
            a[(i, i)] = ONE;
        }
        a
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("matrix rows must all have length n".into()));
        }
        Ok(DenseMatrix { n, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    fn norm_1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Householder reduction to upper Hessenberg form: A = Z H Z^H.
fn hessenberg(a: &mut DenseMatrix, z: &mut DenseMatrix) {
    let n = a.n;
    for k in 0..n.saturating_sub(2) {
        let tail: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let norm = (tail + x0.norm_sqr()).sqrt();
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        // v = x + e^{i arg x0} ‖x‖ e1, P = I - 2 v v^H / (v^H v)
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] += phase * norm;
        let vv: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        let beta = 2.0 / vv;

        // A <- P A
        for j in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(t, vt)| vt.conj() * a[(k + 1 + t, j)]).sum();
            let s = s * beta;
            for (t, vt) in v.iter().enumerate() {
                a[(k + 1 + t, j)] -= vt * s;
            }
        }
        // A <- A P, Z <- Z P
        for m in [&mut *a, &mut *z] {
            for i in 0..n {
                let s: Complex64 = v.iter().enumerate().map(|(t, vt)| m[(i, k + 1 + t)] * vt).sum();
                let s = s * beta;
                for (t, vt) in v.iter().enumerate() {
                    m[(i, k + 1 + t)] -= s * vt.conj();
                }
            }
        }
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
}

/// Rotation G = [[c, s], [-s̄, c]] with G (a, b)ᵀ = (ρ, 0)ᵀ.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let rho = a.norm().hypot(b.norm());
    if rho == 0.0 {
        (1.0, ZERO)
    } else if a.norm() == 0.0 {
        (0.0, b.conj() / b.norm())
    } else {
        (a.norm() / rho, (a / a.norm()) * b.conj() / rho)
    }
}

/// Schur form T = Z^H A Z by single-shift complex QR; returns the number
/// of sweeps used.
fn schur(h: &mut DenseMatrix, z: &mut DenseMatrix) -> Result<usize> {
    let n = h.n;
    if n == 0 {
        return Ok(0);
    }
    let max_iter = 50 * n;
    let anorm = h.norm_1().max(f64::MIN_POSITIVE);
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(n);

    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut scale = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if scale == 0.0 {
                scale = anorm;
            }
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * scale {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > max_iter {
            return Err(Error::QrStall { iterations: total });
        }

        let shift = if since_deflation.is_multiple_of(10) {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.25 * h[(hi, hi - 1)].norm())
        } else {
            let (a, b, c, d) = (h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
            let half = 0.5 * (a - d);
            let disc = (half * half + b * c).sqrt();
            let m = 0.5 * (a + d);
            let (r1, r2) = (m + disc, m - disc);
            if (r1 - d).norm() <= (r2 - d).norm() {
                r1
            } else {
                r2
            }
        };

        for k in lo..=hi {
            h[(k, k)] -= shift;
        }
        rot.clear();
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let (x, y) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = c * x + s * y;
                h[(k + 1, j)] = -s.conj() * x + c * y;
            }
            h[(k + 1, k)] = ZERO;
            rot.push((c, s));
        }
        for (off, &(c, s)) in rot.iter().enumerate() {
            let k = lo + off;
            for i in 0..=(k + 1) {
                let (x, y) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = c * x + s.conj() * y;
                h[(i, k + 1)] = -s * x + c * y;
            }
            for i in 0..n {
                let (x, y) = (z[(i, k)], z[(i, k + 1)]);
                z[(i, k)] = c * x + s.conj() * y;
                z[(i, k + 1)] = -s * x + c * y;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(total)
}

/// Eigenvalue with its eigenvector.
pub type EigenPair = (Complex64, Vec<Complex64>);

/// Eigenpairs of a general complex matrix, unsorted. Eigenvectors are
/// scaled to unit max-modulus.
pub fn dense_eigen(a: &DenseMatrix) -> Result<(Vec<EigenPair>, usize)> {
    let n = a.n;
    let mut t = a.clone();
    let mut z = DenseMatrix::identity(n);
    hessenberg(&mut t, &mut z);
    let sweeps = schur(&mut t, &mut z)?;

    let small = f64::EPSILON * t.norm_1().max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        // (T - λ) x = 0 with x_k = 1, solved upward
        let mut x = vec![ZERO; n];
        x[k] = ONE;
        for j in (0..k).rev() {
            let s: Complex64 = (j + 1..=k).map(|m| t[(j, m)] * x[m]).sum();
            let mut den = t[(j, j)] - lambda;
            if den.norm() < small {
                den = Complex64::new(small, 0.0);
            }
            x[j] = -s / den;
        }
        let mut v: Vec<Complex64> = (0..n).map(|i| (0..=k).map(|m| z[(i, m)] * x[m]).sum()).collect();
        let peak = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if peak > 0.0 && peak.is_finite() {
            v.iter_mut().for_each(|c| *c /= peak);
        }
        out.push((lambda, v));
    }
    Ok((out, sweeps))
}

pub fn solve_dense(h: &DiscretizedHamiltonian) -> Result<Vec<EigenResult>> {
    solve_dense_with(h, DEFAULT_DENSE_LIMIT)
}

/// Full spectrum of the Dirichlet operator, sorted by real part.
pub fn solve_dense_with(h: &DiscretizedHamiltonian, max_points: usize) -> Result<Vec<EigenResult>> {
    let n = h.grid.n_points();
    if n > max_points {
        return Err(Error::SizeGuard { n, max: max_points });
    }
    let (pairs, sweeps) = dense_eigen(&h.to_dense())?;
    let mut out: Vec<EigenResult> = pairs
        .into_iter()
        .map(|(lambda, v)| {
            let hv = h.matvec(&v);
            let peak = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let res = hv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - lambda * b).norm())
                .fold(0.0, f64::max)
                / peak.max(f64::MIN_POSITIVE);
            let mut eigenvector = Vec::with_capacity(v.len() + 2);
            eigenvector.push(ZERO);
            eigenvector.extend(v);
            eigenvector.push(ZERO);
            let edge = ((super::DEFAULT_BUFFER * eigenvector.len() as f64).ceil() as usize).max(1);
            let len = eigenvector.len();
            let outer = eigenvector[..edge]
                .iter()
                .chain(&eigenvector[len - edge..])
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            let weight = outer / peak.max(f64::MIN_POSITIVE);
            EigenResult {
                eigenvalue: lambda,
                eigenvector,
                residual: res,
                iterations: sweeps,
                shift: lambda,
                boundary_weight: weight,
                localized: weight <= 1e-3,
            }
        })
        .collect();
    out.sort_by(|a, b| a.eigenvalue.re.total_cmp(&b.eigenvalue.re));
    Ok(out)
}
