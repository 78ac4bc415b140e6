use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hamiltonian::DiscretizedHamiltonian;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Fraction of the grid excluded at each end by [`residual`].
pub const DEFAULT_BUFFER: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetedOptions {
    /// Residual at which the iteration stops; raised to a round-off floor
    /// of 32 ε_mach ‖H‖∞ when that is larger.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// Largest accepted max|v| over the outer 5% of the grid relative to
    /// max|v|; eigenvectors above it are flagged as not localized.
    pub localization_threshold: f64,
    pub exec: Execution,
}

impl Default for TargetedOptions {
    fn default() -> Self {
        TargetedOptions {
            tol: 1e-10,
            max_iter: 200,
            seed: 42,
            localization_threshold: 1e-3,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub eigenvalue: Complex64,
    /// Samples on the full grid, zero at the Dirichlet ends.
    pub eigenvector: Vec<Complex64>,
    /// ‖Hv - λv‖∞ / ‖v‖∞.
    pub residual: f64,
    pub iterations: usize,
    /// Shift actually used (the target, possibly nudged off a singular point).
    pub shift: Complex64,
    /// max|v| over the outer 5% at each end divided by max|v|.
    pub boundary_weight: f64,
    pub localized: bool,
}

impl EigenResult {
    pub fn distance_to(&self, target: Complex64) -> f64 {
        (self.eigenvalue - target).norm()
    }

    /// True when the result should not be read as confirming `target`.
    pub fn flagged(&self, target: Complex64, max_distance: f64) -> bool {
        !self.localized || self.distance_to(target) > max_distance
    }
}

/// ‖Hψ - Eψ‖∞ over interior nodes outside a `buffer` fraction at each end,
/// divided by ‖ψ‖∞. `psi` holds full-grid samples.
pub fn residual(psi: &[Complex64], energy: Complex64, h: &DiscretizedHamiltonian, buffer: f64) -> f64 {
    let n = psi.len();
    let hpsi = h.apply_full(psi);
    let skip = ((buffer * n as f64).ceil() as usize).max(1);
    let norm = psi.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if norm == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0f64;
    for j in skip..n.saturating_sub(skip) {
        if j == 0 || j + 1 >= n {
            continue;
        }
        worst = worst.max((hpsi[j - 1] - energy * psi[j]).norm());
    }
    worst / norm
}

/// LU factors of a shifted tridiagonal matrix with partial pivoting.
struct TridiagLu {
    dl: Vec<Complex64>,
    d: Vec<Complex64>,
    du: Vec<Complex64>,
    du2: Vec<Complex64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(h: &DiscretizedHamiltonian, shift: Complex64) -> Result<Self> {
        let m = h.dim();
        let mut dl = h.lower().to_vec();
        let mut d: Vec<Complex64> = h.diag.iter().map(|z| z - shift).collect();
        let mut du = h.upper().to_vec();
        let mut du2 = vec![Complex64::new(0.0, 0.0); m.saturating_sub(2)];
        let mut swapped = vec![false; m.saturating_sub(1)];
        for i in 0..m.saturating_sub(1) {
            if d[i].l1_norm() >= dl[i].l1_norm() {
                if d[i] == Complex64::new(0.0, 0.0) {
                    return Err(Error::ShiftSingular { shift });
                }
                let f = dl[i] / d[i];
                dl[i] = f;
                d[i + 1] -= f * du[i];
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let t = du[i];
                du[i] = d[i + 1];
                d[i + 1] = t - f * d[i + 1];
                if i + 2 < m {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if m > 0 && d[m - 1] == Complex64::new(0.0, 0.0) {
            return Err(Error::ShiftSingular { shift });
        }
        Ok(TridiagLu {
            dl,
            d,
            du,
            du2,
            swapped,
        })
    }

    fn solve(&self, b: &mut [Complex64]) {
        let m = self.d.len();
        for i in 0..m.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            let t = b[i];
            b[i + 1] -= self.dl[i] * t;
        }
        for i in (0..m).rev() {
            let mut acc = b[i];
            if i + 1 < m {
                acc -= self.du[i] * b[i + 1];
            }
            if i + 2 < m {
                acc -= self.du2[i] * b[i + 2];
            }
            b[i] = acc / self.d[i];
        }
    }
}

fn max_norm(v: &[Complex64]) -> (usize, f64) {
    v.iter()
        .enumerate()
        .map(|(i, z)| (i, z.norm()))
        .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best })
}

fn boundary_weight(v: &[Complex64]) -> f64 {
    let n = v.len();
    let edge = ((DEFAULT_BUFFER * n as f64).ceil() as usize).clamp(1, n);
    let (_, peak) = max_norm(v);
    if peak == 0.0 {
        return 0.0;
    }
    let outer = v[..edge]
        .iter()
        .chain(&v[n - edge..])
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    outer / peak
}

fn rayleigh(v: &[Complex64], hv: &[Complex64], symmetric: bool) -> Complex64 {
    if symmetric {
        // the bilinear quotient is stationary for complex symmetric H
        let num: Complex64 = v.iter().zip(hv).map(|(a, b)| a * b).sum();
        let den: Complex64 = v.iter().map(|a| a * a).sum();
        let scale: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        if den.norm() > 1e-8 * scale {
            return num / den;
        }
    }
    let num: Complex64 = v.iter().zip(hv).map(|(a, b)| a.conj() * b).sum();
    let den: f64 = v.iter().map(|a| a.norm_sqr()).sum();
    num / den
}

fn inverse_iteration(h: &DiscretizedHamiltonian, shift: Complex64, opts: &TargetedOptions) -> Result<EigenResult> {
    let m = h.dim();
    let lu = TridiagLu::factor(h, shift)?;
    let tol = opts.tol.max(32.0 * f64::EPSILON * h.norm_inf());
    let symmetric = h.is_symmetric();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v: Vec<Complex64> = (0..m)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();

    let mut best: Option<(f64, Complex64)> = None;
    for it in 1..=opts.max_iter {
        lu.solve(&mut v);
        let (k, peak) = max_norm(&v);
        if !(peak.is_finite() && peak > 0.0) {
            return Err(Error::NonFinite("inverse iteration"));
        }
        let pivot = v[k];
        v.iter_mut().for_each(|z| *z /= pivot);

        let hv = h.matvec(&v);
        let lambda = rayleigh(&v, &hv, symmetric);
        let res = hv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - lambda * b).norm())
            .fold(0.0, f64::max);
        if best.is_none_or(|(r, _)| res < r) {
            best = Some((res, lambda));
        }
        if res <= tol {
            let mut eigenvector = Vec::with_capacity(m + 2);
            eigenvector.push(Complex64::new(0.0, 0.0));
            eigenvector.extend_from_slice(&v);
            eigenvector.push(Complex64::new(0.0, 0.0));
            let weight = boundary_weight(&eigenvector);
            return Ok(EigenResult {
                eigenvalue: lambda,
                eigenvector,
                residual: res,
                iterations: it,
                shift,
                boundary_weight: weight,
                localized: weight <= opts.localization_threshold,
            });
        }
    }
    let (best_residual, best_eigenvalue) = best.unwrap_or((f64::INFINITY, shift));
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        best_residual,
        best_eigenvalue,
    })
}

/// Shifted inverse iteration for each target; targets run concurrently
/// under the parallel policy and results keep the target order.
pub fn solve_targeted(
    h: &DiscretizedHamiltonian,
    targets: &[Complex64],
    opts: &TargetedOptions,
) -> Vec<Result<EigenResult>> {
    par::map(opts.exec, targets, |&target| {
        if !(target.re.is_finite() && target.im.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite target {target}")));
        }
        match inverse_iteration(h, target, opts) {
            Err(Error::ShiftSingular { .. }) => inverse_iteration(h, target + Complex64::new(1e-8, 1e-8), opts),
            other => other,
        }
    })
}
