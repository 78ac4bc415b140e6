use num_complex::Complex64;

use super::grid::Grid;
use crate::contour::Contour;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::potentials::Potential;

/// Smallest admissible |ξ'| on the grid.
pub const METRIC_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// ξ' ≡ 1: the plain three-point Laplacian.
    Flat,
    /// -(1/ξ') d/dx (1/ξ') d/dx with 1/ξ' at nodes and half-steps.
    Curved,
}

/// Three-point operator on the interior nodes 1..n-1 of a grid.
///
/// Row `i` acts on node `i + 1`: `sub[i]` couples to the left neighbour,
/// `sup[i]` to the right one. `sub[0]` and `sup[m - 1]` couple to the
/// Dirichlet ends; they are kept so that full-grid samples (with non-zero end
/// values) can be fed to [`DiscretizedHamiltonian::apply_full`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedHamiltonian {
    pub sub: Vec<Complex64>,
    pub diag: Vec<Complex64>,
    pub sup: Vec<Complex64>,
    pub grid: Grid,
    pub metric: Metric,
}

impl DiscretizedHamiltonian {
    /// Dimension of the Dirichlet operator.
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// H[i][i-1] of the Dirichlet operator.
    pub fn lower(&self) -> &[Complex64] {
        &self.sub[1..]
    }

    /// H[i][i+1] of the Dirichlet operator.
    pub fn upper(&self) -> &[Complex64] {
        &self.sup[..self.sup.len() - 1]
    }

    pub fn is_symmetric(&self) -> bool {
        self.max_asymmetry() == 0.0
    }

    /// max |H_ij - H_ji|.
    pub fn max_asymmetry(&self) -> f64 {
        self.lower()
            .iter()
            .zip(self.upper())
            .map(|(l, u)| (l - u).norm())
            .fold(0.0, f64::max)
    }

    /// max_i Σ_j |H_ij|.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim())
            .map(|i| {
                let mut s = self.diag[i].norm();
                if i > 0 {
                    s += self.sub[i].norm();
                }
                if i + 1 < self.dim() {
                    s += self.sup[i].norm();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// H v for an interior vector (Dirichlet ends are zero).
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let m = self.dim();
        assert_eq!(v.len(), m, "matvec dimension mismatch");
        (0..m)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc += self.sub[i] * v[i - 1];
                }
                if i + 1 < m {
                    acc += self.sup[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// (Hψ)_j at every interior node j for samples on the full grid,
    /// end values included.
    pub fn apply_full(&self, psi: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(psi.len(), self.grid.n_points(), "apply_full expects full-grid samples");
        (0..self.dim())
            .map(|i| self.sub[i] * psi[i] + self.diag[i] * psi[i + 1] + self.sup[i] * psi[i + 2])
            .collect()
    }

    /// Dense copy of the Dirichlet operator, row-major.
    pub fn to_dense(&self) -> super::DenseMatrix {
        let m = self.dim();
        let mut a = super::DenseMatrix::zeros(m);
        for i in 0..m {
            a[(i, i)] = self.diag[i];
            if i > 0 {
                a[(i, i - 1)] = self.sub[i];
            }
            if i + 1 < m {
                a[(i, i + 1)] = self.sup[i];
            }
        }
        a
    }
}

pub fn build_hamiltonian<P, C>(potential: &P, contour: &C, grid: &Grid) -> Result<DiscretizedHamiltonian>
where
    P: Potential + ?Sized,
    C: Contour + ?Sized,
{
    build_hamiltonian_with(potential, contour, grid, Execution::default())
}

pub fn build_hamiltonian_with<P, C>(
    potential: &P,
    contour: &C,
    grid: &Grid,
    exec: Execution,
) -> Result<DiscretizedHamiltonian>
where
    P: Potential + ?Sized,
    C: Contour + ?Sized,
{
    let n = grid.n_points();
    let m = grid.interior();
    let h = grid.h();

    // 1/ξ' at the nodes (index j) and at the half-steps j + ½
    let metric_at = |x: f64| -> Result<Complex64> {
        let d = contour.contour_derivative(x);
        if d.norm().is_nan() || d.norm() < METRIC_FLOOR {
            return Err(Error::MetricVanishing { x, modulus: d.norm() });
        }
        Ok(d.inv())
    };
    let nodes: Vec<Complex64> = (0..n).map(|j| metric_at(grid.x(j))).collect::<Result<_>>()?;
    let halves: Vec<Complex64> = (0..n - 1)
        .map(|j| metric_at(grid.x(j) + 0.5 * h))
        .collect::<Result<_>>()?;

    let potential_values: Vec<Result<Complex64>> =
        par::map_range(exec, m, |i| potential.eval(contour.map_point(grid.x(i + 1))));
    let diag_v: Vec<Complex64> = potential_values.into_iter().collect::<Result<_>>()?;

    let one = Complex64::new(1.0, 0.0);
    let flat = nodes.iter().chain(&halves).all(|g| *g == one);
    let inv_h2 = 1.0 / (h * h);

    let mut sub = Vec::with_capacity(m);
    let mut diag = Vec::with_capacity(m);
    let mut sup = Vec::with_capacity(m);
    for (i, v) in diag_v.into_iter().enumerate() {
        let j = i + 1;
        if flat {
            sub.push(Complex64::new(-inv_h2, 0.0));
            diag.push(v + 2.0 * inv_h2);
            sup.push(Complex64::new(-inv_h2, 0.0));
        } else {
            let g = nodes[j] * inv_h2;
            let (left, right) = (halves[j - 1], halves[j]);
            sub.push(-g * left);
            diag.push(v + g * (left + right));
            sup.push(-g * right);
        }
    }

    Ok(DiscretizedHamiltonian {
        sub,
        diag,
        sup,
        grid: *grid,
        metric: if flat { Metric::Flat } else { Metric::Curved },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contour::{ArchContour, RealLine, ShiftedLine};
    use crate::potentials::{FnPotential, PoschlTellerParams};

    #[test]
    fn free_laplacian_row() {
        let grid = Grid::new(-1.0, 1.0, 21).unwrap();
        let zero = FnPotential(|_z: Complex64| Complex64::new(0.0, 0.0));
        let h = build_hamiltonian(&zero, &RealLine, &grid).unwrap();
        assert_eq!(h.metric, Metric::Flat);
        let row = (h.sub[5], h.diag[5], h.sup[5]);
        assert!((row.0.re + 100.0).abs() < 1e-9 && row.0.im == 0.0);
        assert!((row.1.re - 200.0).abs() < 1e-9 && row.1.im == 0.0);
        assert!((row.2.re + 100.0).abs() < 1e-9 && row.2.im == 0.0);
    }

    #[test]
    fn shifted_line_rpt_is_complex_symmetric() {
        let p = PoschlTellerParams::new(3.5, 1.5, 0.3).unwrap();
        let grid = Grid::new(-12.0, 12.0, 3001).unwrap();
        let h = build_hamiltonian(&p, &ShiftedLine::new(0.3).unwrap(), &grid).unwrap();
        assert_eq!(h.max_asymmetry(), 0.0);
        assert!(h.is_symmetric());
        let first = h.upper()[0];
        assert!(h.upper().iter().chain(h.lower()).all(|z| *z == first));
    }

    #[test]
    fn curved_stencil_on_a_straight_arch_limit() {
        // a curved contour still annihilates constants away from the potential
        let arch = ArchContour::new(0.5).unwrap();
        let grid = Grid::new(-4.0, 4.0, 201).unwrap();
        let zero = FnPotential(|_z: Complex64| Complex64::new(0.0, 0.0));
        let h = build_hamiltonian(&zero, &arch, &grid).unwrap();
        assert_eq!(h.metric, Metric::Curved);
        let ones = vec![Complex64::new(1.0, 0.0); grid.n_points()];
        for z in h.apply_full(&ones) {
            assert!(z.norm() < 1e-8);
        }
    }

    #[test]
    fn sequential_and_parallel_builds_agree() {
        let p = PoschlTellerParams::new(3.5, 1.5, 0.3).unwrap();
        let grid = Grid::new(-12.0, 12.0, 1001).unwrap();
        let line = ShiftedLine::new(0.3).unwrap();
        let a = build_hamiltonian_with(&p, &line, &grid, Execution::Sequential).unwrap();
        let b = build_hamiltonian_with(&p, &line, &grid, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn singular_potential_surfaces() {
        let p = PoschlTellerParams::new(3.5, 1.5, 0.3).unwrap();
        let grid = Grid::new(-1.0, 1.0, 11).unwrap();
        let err = build_hamiltonian(&p, &RealLine, &grid).unwrap_err();
        assert!(matches!(err, Error::SingularPoint { .. }));
    }

    #[test]
    fn vanishing_metric_is_rejected() {
        struct Pinched;
        impl Contour for Pinched {
            fn map_point(&self, x: f64) -> Complex64 {
                Complex64::new(x * x * x, 0.0)
            }
            fn contour_derivative(&self, x: f64) -> Complex64 {
                Complex64::new(3.0 * x * x, 0.0)
            }
        }
        let grid = Grid::new(-1.0, 1.0, 11).unwrap();
        let zero = FnPotential(|_z: Complex64| Complex64::new(0.0, 0.0));
        let err = build_hamiltonian(&zero, &Pinched, &grid).unwrap_err();
        assert!(matches!(err, Error::MetricVanishing { .. }));
    }
}
