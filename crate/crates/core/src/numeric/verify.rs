use num_complex::Complex64;

use super::grid::Grid;
use super::hamiltonian::{build_hamiltonian_with, DiscretizedHamiltonian};
use super::solve::{residual, solve_targeted, EigenResult, TargetedOptions, DEFAULT_BUFFER};
use crate::contour::{AnyContour, Contour};
use crate::error::{Error, Result};
use crate::par;
use crate::potentials::{pt_defect, EckartParams, HulthenParams, PoschlTellerParams, Potential};
use crate::spectra::{
    eckart_spectrum, eckart_wavefunction, hulthen_spectrum, hulthen_wavefunction, rpt_spectrum, rpt_wavefunction,
    Exclusion, Family, JacobiConvention, Level, QuantumNumbers, Spectrum,
};

/// Accepted band for the observed residual order log₂(r_h / r_{h/2}).
pub const ORDER_RANGE: (f64, f64) = (1.8, 2.2);

/// Residuals below this are round-off dominated and give no order.
const ORDER_FLOOR: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyParams {
    Eckart(EckartParams),
    PoschlTeller(PoschlTellerParams),
    Hulthen(HulthenParams),
}

impl FamilyParams {
    pub fn family(&self) -> Family {
        match self {
            FamilyParams::Eckart(_) => Family::Eckart,
            FamilyParams::PoschlTeller(_) => Family::PoschlTeller,
            FamilyParams::Hulthen(_) => Family::Hulthen,
        }
    }

    pub fn potential(&self) -> &dyn Potential {
        match self {
            FamilyParams::Eckart(p) => p,
            FamilyParams::PoschlTeller(p) => p,
            FamilyParams::Hulthen(p) => p,
        }
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        match self {
            FamilyParams::Eckart(p) => eckart_spectrum(p),
            FamilyParams::PoschlTeller(p) => Ok(rpt_spectrum(p)),
            FamilyParams::Hulthen(p) => hulthen_spectrum(p),
        }
    }

    /// Analytic eigenfunction of `level` sampled at the contour images of
    /// `xs` (in order).
    pub fn wavefunction(
        &self,
        level: &Level,
        contour: &AnyContour,
        xs: &[f64],
        convention: JacobiConvention,
    ) -> Result<Vec<Complex64>> {
        let points = || xs.iter().map(|&x| contour.map_point(x)).collect::<Vec<_>>();
        match self {
            FamilyParams::Eckart(p) => eckart_wavefunction(p, level, &points(), convention),
            FamilyParams::PoschlTeller(p) => rpt_wavefunction(p, level, &points()),
            FamilyParams::Hulthen(p) => match contour {
                AnyContour::Arch(arch) => hulthen_wavefunction(p, level, arch, xs),
                _ => Err(Error::InvalidParameter(
                    "Hulthén eigenfunctions are transported onto the arch contour only".into(),
                )),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub tol_energy: f64,
    pub tol_imag: f64,
    pub solver: TargetedOptions,
    /// Combine the h and h/2 eigenvalues as (4λ_{h/2} - λ_h)/3.
    pub richardson: bool,
    pub buffer: f64,
    pub convention: JacobiConvention,
    /// Require the residual order to fall inside [`ORDER_RANGE`].
    pub check_order: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            tol_energy: 1e-6,
            tol_imag: 1e-7,
            solver: TargetedOptions::default(),
            richardson: true,
            buffer: DEFAULT_BUFFER,
            convention: JacobiConvention::Doubled,
            check_order: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelReport {
    pub qn: QuantumNumbers,
    pub energy: f64,
    /// Reported eigenvalue (extrapolated when both grids converged).
    pub lambda: Option<Complex64>,
    pub lambda_coarse: Option<Complex64>,
    pub lambda_fine: Option<Complex64>,
    /// |λ - E|, infinite when no eigenvalue was found.
    pub abs_err: f64,
    pub residual_coarse: Option<f64>,
    pub residual_fine: Option<f64>,
    pub order: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub localized: bool,
    pub errors: Vec<String>,
    pub pass: bool,
}

impl LevelReport {
    pub fn imag(&self) -> f64 {
        self.lambda.map_or(f64::INFINITY, |l| l.im.abs())
    }

    /// Residual of the analytic eigenfunction on the requested grid.
    pub fn residual(&self) -> Option<f64> {
        self.residual_coarse
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub family: Family,
    pub grid: Grid,
    pub levels: Vec<LevelReport>,
    pub excluded: Vec<Exclusion>,
    pub pt_defect: Option<f64>,
    pub errors: Vec<String>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn max_abs_err(&self) -> f64 {
        self.levels.iter().map(|l| l.abs_err).fold(0.0, f64::max)
    }

    /// (qn, observed order) for every level with a measurable order.
    pub fn orders(&self) -> Vec<(QuantumNumbers, f64)> {
        self.levels.iter().filter_map(|l| l.order.map(|o| (l.qn, o))).collect()
    }
}

/// (4λ_{h/2} - λ_h)/3 for a second-order scheme.
pub fn richardson(coarse: Complex64, fine: Complex64) -> Complex64 {
    (4.0 * fine - coarse) / 3.0
}

/// (∫ψ² ξ' dx, ∫|ψ|² dx) by the trapezoid rule over the grid parameter.
pub fn pt_norm<C: Contour + ?Sized>(psi: &[Complex64], grid: &Grid, contour: &C) -> (Complex64, f64) {
    let h = grid.h();
    let n = psi.len().min(grid.n_points());
    let mut bilinear = Complex64::new(0.0, 0.0);
    let mut modulus = 0.0;
    for (i, p) in psi.iter().take(n).enumerate() {
        let w = if i == 0 || i + 1 == n { 0.5 * h } else { h };
        bilinear += w * p * p * contour.contour_derivative(grid.x(i));
        modulus += w * p.norm_sqr();
    }
    (bilinear, modulus)
}

fn order_of(coarse: f64, fine: f64) -> Option<f64> {
    if coarse > ORDER_FLOOR && fine > ORDER_FLOOR {
        Some((coarse / fine).log2())
    } else {
        None
    }
}

struct GridPair {
    coarse: DiscretizedHamiltonian,
    fine: DiscretizedHamiltonian,
}

fn verify_level(
    params: &FamilyParams,
    contour: &AnyContour,
    pair: &GridPair,
    level: &Level,
    coarse: &Result<EigenResult>,
    fine: Option<&Result<EigenResult>>,
    cfg: &VerifyConfig,
) -> LevelReport {
    let mut errors = Vec::new();
    let e = Complex64::new(level.energy, 0.0);

    let lambda_coarse = coarse.as_ref().ok().map(|r| r.eigenvalue);
    let lambda_fine = fine.and_then(|r| r.as_ref().ok()).map(|r| r.eigenvalue);
    for r in std::iter::once(coarse).chain(fine) {
        if let Err(err) = r {
            errors.push(err.to_string());
        }
    }
    let converged = coarse.is_ok() && fine.is_none_or(|r| r.is_ok());
    let localized =
        coarse.as_ref().is_ok_and(|r| r.localized) && fine.is_none_or(|r| r.as_ref().is_ok_and(|r| r.localized));
    let iterations =
        coarse.as_ref().map_or(0, |r| r.iterations) + fine.map_or(0, |r| r.as_ref().map_or(0, |r| r.iterations));
    let lambda = match (lambda_coarse, lambda_fine) {
        (Some(c), Some(f)) if cfg.richardson => Some(richardson(c, f)),
        (_, Some(f)) => Some(f),
        (c, None) => c,
    };
    let abs_err = lambda.map_or(f64::INFINITY, |l| (l - e).norm());

    let mut wave_residual = |h: &DiscretizedHamiltonian| -> Option<f64> {
        match params.wavefunction(level, contour, &h.grid.xs(), cfg.convention) {
            Ok(psi) => Some(residual(&psi, e, h, cfg.buffer)),
            Err(err) => {
                errors.push(format!("wave function: {err}"));
                None
            }
        }
    };
    let residual_coarse = wave_residual(&pair.coarse);
    let residual_fine = wave_residual(&pair.fine);
    let order = match (residual_coarse, residual_fine) {
        (Some(c), Some(f)) => order_of(c, f),
        _ => None,
    };

    let order_ok = !cfg.check_order
        || match order {
            Some(o) => (ORDER_RANGE.0..=ORDER_RANGE.1).contains(&o),
            // both residuals already at round-off level
            None => residual_coarse.is_some_and(|r| r <= ORDER_FLOOR),
        };
    let imag = lambda.map_or(f64::INFINITY, |l| l.im.abs());
    let pass =
        converged && localized && abs_err <= cfg.tol_energy && imag <= cfg.tol_imag && order_ok && errors.is_empty();

    LevelReport {
        qn: level.qn,
        energy: level.energy,
        lambda,
        lambda_coarse,
        lambda_fine,
        abs_err,
        residual_coarse,
        residual_fine,
        order,
        iterations,
        converged,
        localized,
        errors,
        pass,
    }
}

/// Enumerate the analytic spectrum, confirm every level with targeted
/// solves on `grid` and its refinement, and measure the eigenfunction
/// residuals. Failures are collected into the report.
pub fn verify_family(
    params: &FamilyParams,
    contour: &AnyContour,
    grid: &Grid,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let mut report = VerificationReport {
        family: params.family(),
        grid: *grid,
        levels: Vec::new(),
        excluded: Vec::new(),
        pt_defect: None,
        errors: Vec::new(),
        pass: false,
    };

    let spectrum = match params.spectrum() {
        Ok(s) => s,
        Err(err) => {
            report.errors.push(err.to_string());
            return report;
        }
    };
    report.excluded = spectrum.excluded.clone();

    match pt_defect(params.potential(), contour, &grid.xs()) {
        Ok(d) => report.pt_defect = Some(d),
        Err(err) => report.errors.push(format!("pt defect: {err}")),
    }

    let exec = cfg.solver.exec;
    let fine_grid = grid.refined();
    let (coarse, fine) = par::join(
        exec,
        || build_hamiltonian_with(params.potential(), contour, grid, exec),
        || build_hamiltonian_with(params.potential(), contour, &fine_grid, exec),
    );
    let pair = match (coarse, fine) {
        (Ok(coarse), Ok(fine)) => GridPair { coarse, fine },
        (Err(err), _) | (_, Err(err)) => {
            report.errors.push(format!("hamiltonian: {err}"));
            return report;
        }
    };

    let targets: Vec<Complex64> = spectrum.levels.iter().map(|l| Complex64::new(l.energy, 0.0)).collect();
    let coarse_results = solve_targeted(&pair.coarse, &targets, &cfg.solver);
    let fine_results = if cfg.richardson {
        Some(solve_targeted(&pair.fine, &targets, &cfg.solver))
    } else {
        None
    };

    let indices: Vec<usize> = (0..spectrum.levels.len()).collect();
    report.levels = par::map(exec, &indices, |&i| {
        verify_level(
            params,
            contour,
            &pair,
            &spectrum.levels[i],
            &coarse_results[i],
            fine_results.as_ref().map(|f| &f[i]),
            cfg,
        )
    });
    report.pass = report.errors.is_empty() && report.levels.iter().all(|l| l.pass);
    report
}
