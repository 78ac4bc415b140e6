//! Closed-form discrete spectra and eigenfunctions of the three families.
//!
//! Eckart (B = iβ, D = A - N - 1 > 0):
//!   E_N = -D² + β²/D²,  ψ = (y-1)^u (y+1)^v P_N^{(2u,2v)}(y),  y = coth r,
//!   u = D/2 - iβ/(2D),  v = D/2 + iβ/(2D).
//!
//! Regularized Pöschl-Teller, generalized parities σ, τ = ±1:
//!   E = -(2N + 1 + σα + τβ)²  for 2N + 1 < -σα - τβ,
//!   ψ = sinh^{τβ+½} r · cosh^{σα+½} r · P_N^{(τβ,σα)}(cosh 2r).
//!
//! Hulthén on the arch, s = σα + 2n + 1:
//!   τβ = (C - s²)/(2s),  κ = -(s² + C)/(2s) > 0,  E = C + ¼(s - C/s)² = κ².

use num_complex::Complex64;

use crate::contour::{continuous_pow, transport_wavefunction, ArchContour, ArchMap, Contour, LiouvilleMap};
use crate::error::{Error, Result};
use crate::potentials::{EckartParams, HulthenParams, PoschlTellerParams};
use crate::special::{jacobi_p_hyp, HypergeometricReduction, ZMap};

/// Range boundaries closer than this are treated as degenerate and excluded.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Largest imaginary energy part tolerated under real couplings.
pub const REAL_ENERGY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Eckart,
    PoschlTeller,
    Hulthen,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Eckart => "eckart",
            Family::PoschlTeller => "rpt",
            Family::Hulthen => "hulthen",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Minus,
    Plus,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Minus, Parity::Plus];

    pub fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }

    pub fn from_sign(x: f64) -> Parity {
        if x < 0.0 {
            Parity::Minus
        } else {
            Parity::Plus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Parity::Plus => '+',
            Parity::Minus => '-',
        }
    }
}

/// (family, N, σ, τ). Eckart levels carry σ = τ = + and ignore them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    pub family: Family,
    pub n: usize,
    pub sigma: Parity,
    pub tau: Parity,
}

impl QuantumNumbers {
    pub fn eckart(n: usize) -> Self {
        QuantumNumbers {
            family: Family::Eckart,
            n,
            sigma: Parity::Plus,
            tau: Parity::Plus,
        }
    }

    pub fn poschl_teller(sigma: Parity, tau: Parity, n: usize) -> Self {
        QuantumNumbers {
            family: Family::PoschlTeller,
            n,
            sigma,
            tau,
        }
    }

    pub fn hulthen(sigma: Parity, tau: Parity, n: usize) -> Self {
        QuantumNumbers {
            family: Family::Hulthen,
            n,
            sigma,
            tau,
        }
    }
}

impl std::fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.family {
            Family::Eckart => write!(f, "eckart N={}", self.n),
            fam => write!(
                f,
                "{} ({},{},{})",
                fam.name(),
                self.sigma.symbol(),
                self.tau.symbol(),
                self.n
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevelAux {
    /// u + v = A - N - 1.
    Eckart {
        u: Complex64,
        v: Complex64,
    },
    /// 2μ = τβ + ½, 2ν = σα + ½.
    PoschlTeller {
        two_mu: f64,
        two_nu: f64,
        kappa: f64,
    },
    Hulthen {
        s: f64,
        tau_beta: f64,
        kappa: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub aux: LevelAux,
}

impl Level {
    /// Asymptotic decay rate: κ for Pöschl-Teller and Hulthén, u + v for Eckart.
    pub fn kappa(&self) -> f64 {
        match self.aux {
            LevelAux::Eckart { u, v } => (u + v).re,
            LevelAux::PoschlTeller { kappa, .. } | LevelAux::Hulthen { kappa, .. } => kappa,
        }
    }

    /// The terminating Gauss equation behind this level (none for Hulthén,
    /// whose eigenfunctions come from the Pöschl-Teller parent).
    pub fn reduction(&self) -> Option<HypergeometricReduction> {
        let n = self.qn.n as f64;
        let one = Complex64::new(1.0, 0.0);
        match self.aux {
            LevelAux::Eckart { u, v } => Some(HypergeometricReduction {
                a: 2.0 * (u + v) + 1.0 + n,
                b: -n * one,
                c: 1.0 + 2.0 * u,
                map: ZMap::CothHalf,
            }),
            LevelAux::PoschlTeller { two_mu, two_nu, .. } => Some(HypergeometricReduction {
                a: (two_mu + two_nu + n) * one,
                b: -n * one,
                c: (two_mu + 0.5) * one,
                map: ZMap::SinhSquared,
            }),
            LevelAux::Hulthen { .. } => None,
        }
    }
}

/// A level candidate dropped during enumeration, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct Exclusion {
    pub qn: QuantumNumbers,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Spectrum {
    pub levels: Vec<Level>,
    pub excluded: Vec<Exclusion>,
}

impl Spectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn find(&self, qn: QuantumNumbers) -> Option<&Level> {
        self.levels.iter().find(|l| l.qn == qn)
    }

    /// Number of levels with the given generalized parities.
    pub fn count(&self, sigma: Parity, tau: Parity) -> usize {
        self.levels
            .iter()
            .filter(|l| l.qn.sigma == sigma && l.qn.tau == tau)
            .count()
    }
}

// ---------------------------------------------------------------------------
// Eckart
// ---------------------------------------------------------------------------

/// Which parameter pair feeds the Eckart Jacobi polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JacobiConvention {
    /// (2u, 2v): forced by c = 1 + 2u, a + b = 2u + 2v + 1.
    #[default]
    Doubled,
    /// (u/2, v/2): the alternative printed form, kept for arbitration.
    Halved,
}

fn eckart_level(beta: f64, n: usize, d: f64) -> Result<Level> {
    let u = Complex64::new(0.5 * d, -0.5 * beta / d);
    let v = Complex64::new(0.5 * d, 0.5 * beta / d);
    let closed = -d * d + beta * beta / (d * d);
    // 4u² = -2B - E and 4v² = 2B - E give E = -2(u² + v²)
    let from_aux = -2.0 * (u * u + v * v);
    if from_aux.im.abs() > REAL_ENERGY_TOL * closed.abs().max(1.0) {
        return Err(Error::InternalConsistency(format!(
            "Eckart N={n}: energy picked up imaginary part {}",
            from_aux.im
        )));
    }
    Ok(Level {
        qn: QuantumNumbers::eckart(n),
        energy: closed,
        aux: LevelAux::Eckart { u, v },
    })
}

pub fn eckart_spectrum(p: &EckartParams) -> Result<Spectrum> {
    let mut out = Spectrum::default();
    for n in 0usize.. {
        let d = p.a() - n as f64 - 1.0;
        if d > BOUNDARY_TOL {
            out.levels.push(eckart_level(p.beta(), n, d)?);
        } else {
            if d.abs() <= BOUNDARY_TOL {
                out.excluded.push(Exclusion {
                    qn: QuantumNumbers::eckart(n),
                    reason: "u + v = A - N - 1 vanishes (normalizability boundary)".into(),
                });
            }
            break;
        }
    }
    Ok(out)
}

fn eckart_uv(level: &Level) -> Result<(Complex64, Complex64)> {
    match level.aux {
        LevelAux::Eckart { u, v } => Ok((u, v)),
        _ => Err(Error::InvalidParameter(format!("{} is not an Eckart level", level.qn))),
    }
}

/// (coth r, coth r - 1, coth r + 1) without cancellation in the tails.
fn coth_shifted(r: Complex64) -> (Complex64, Complex64, Complex64) {
    if r.re >= 0.0 {
        let e = (-2.0 * r).exp();
        let d = 1.0 - e;
        ((1.0 + e) / d, 2.0 * e / d, 2.0 / d)
    } else {
        let e = (2.0 * r).exp();
        let d = 1.0 - e;
        (-(1.0 + e) / d, -2.0 / d, -2.0 * e / d)
    }
}

/// ψ(r) = (y-1)^u (y+1)^v P_N(y) with y = coth r, unnormalized.
pub fn eckart_wavefunction(
    _p: &EckartParams,
    level: &Level,
    points: &[Complex64],
    convention: JacobiConvention,
) -> Result<Vec<Complex64>> {
    let (u, v) = eckart_uv(level)?;
    let (pa, pb) = match convention {
        JacobiConvention::Doubled => (2.0 * u, 2.0 * v),
        JacobiConvention::Halved => (0.5 * u, 0.5 * v),
    };
    let mut ys = Vec::with_capacity(points.len());
    let mut minus = Vec::with_capacity(points.len());
    let mut plus = Vec::with_capacity(points.len());
    for &r in points {
        if r.sinh().norm() < crate::potentials::DEFAULT_SINGULAR_FLOOR {
            return Err(Error::SingularPoint {
                at: r,
                modulus: r.sinh().norm(),
            });
        }
        let (y, ym, yp) = coth_shifted(r);
        ys.push(y);
        minus.push(ym);
        plus.push(yp);
    }
    let fu = continuous_pow(&minus, u)?;
    let fv = continuous_pow(&plus, v)?;
    ys.iter()
        .zip(fu.iter().zip(&fv))
        .map(|(&y, (a, b))| Ok(a * b * jacobi_p_hyp(level.qn.n, pa, pb, y)?))
        .collect()
}

/// E_N - E_{N-1} = (2D + 1)(1 + β²/(D²(D+1)²)), D = A - N - 1.
pub fn eckart_spacing(p: &EckartParams, n: usize) -> Result<f64> {
    let d = p.a() - n as f64 - 1.0;
    if n == 0 || d <= BOUNDARY_TOL {
        return Err(Error::OutOfRange(format!(
            "spacing needs levels N = {n} and N - 1 below the bound A - 1 = {}",
            p.a() - 1.0
        )));
    }
    let b2 = p.beta() * p.beta();
    Ok((2.0 * d + 1.0) * (1.0 + b2 / (d * d * (d + 1.0) * (d + 1.0))))
}

// ---------------------------------------------------------------------------
// Pöschl-Teller
// ---------------------------------------------------------------------------

pub fn rpt_spectrum(p: &PoschlTellerParams) -> Spectrum {
    let mut out = Spectrum::default();
    for sigma in Parity::BOTH {
        for tau in Parity::BOTH {
            let bound = -sigma.sign() * p.alpha() - tau.sign() * p.beta();
            for n in 0usize.. {
                let kappa = bound - 2.0 * n as f64 - 1.0;
                let qn = QuantumNumbers::poschl_teller(sigma, tau, n);
                if kappa > BOUNDARY_TOL {
                    out.levels.push(Level {
                        qn,
                        energy: -kappa * kappa,
                        aux: LevelAux::PoschlTeller {
                            two_mu: tau.sign() * p.beta() + 0.5,
                            two_nu: sigma.sign() * p.alpha() + 0.5,
                            kappa,
                        },
                    });
                } else {
                    if kappa.abs() <= BOUNDARY_TOL {
                        out.excluded.push(Exclusion {
                            qn,
                            reason: "2N + 1 = -σα - τβ (normalizability boundary)".into(),
                        });
                    }
                    break;
                }
            }
        }
    }
    out
}

/// χ(r) = sinh^{τβ+½} r · cosh^{σα+½} r · P_n^{(τβ,σα)}(cosh 2r) along a
/// sample sequence.
pub fn pt_eigenfunction(tau_beta: f64, sigma_alpha: f64, n: usize, rs: &[Complex64]) -> Result<Vec<Complex64>> {
    let sinh: Vec<Complex64> = rs.iter().map(|r| r.sinh()).collect();
    let cosh: Vec<Complex64> = rs.iter().map(|r| r.cosh()).collect();
    let fs = continuous_pow(&sinh, Complex64::new(tau_beta + 0.5, 0.0))?;
    let fc = continuous_pow(&cosh, Complex64::new(sigma_alpha + 0.5, 0.0))?;
    let (pa, pb) = (Complex64::new(tau_beta, 0.0), Complex64::new(sigma_alpha, 0.0));
    rs.iter()
        .zip(fs.iter().zip(&fc))
        .map(|(r, (a, b))| Ok(a * b * jacobi_p_hyp(n, pa, pb, (2.0 * r).cosh())?))
        .collect()
}

pub fn rpt_wavefunction(p: &PoschlTellerParams, level: &Level, points: &[Complex64]) -> Result<Vec<Complex64>> {
    if level.qn.family != Family::PoschlTeller {
        return Err(Error::InvalidParameter(format!(
            "{} is not a Pöschl-Teller level",
            level.qn
        )));
    }
    let tau_beta = level.qn.tau.sign() * p.beta();
    let sigma_alpha = level.qn.sigma.sign() * p.alpha();
    pt_eigenfunction(tau_beta, sigma_alpha, level.qn.n, points)
}

/// E = -(2N + 1 + σα + τβ)² for complex couplings; the flag reports whether
/// the energy stays real within 1e-12.
pub fn rpt_real_energy_condition(
    alpha: Complex64,
    beta: Complex64,
    sigma: Parity,
    tau: Parity,
    n: usize,
) -> (bool, Complex64) {
    let w = 2.0 * n as f64 + 1.0 + sigma.sign() * alpha + tau.sign() * beta;
    let e = -(w * w);
    (e.im.abs() <= REAL_ENERGY_TOL, e)
}

// ---------------------------------------------------------------------------
// Hulthén
// ---------------------------------------------------------------------------

pub fn hulthen_spectrum(p: &HulthenParams) -> Result<Spectrum> {
    let c = p.c();
    let mut out = Spectrum::default();
    for sigma in Parity::BOTH {
        for n in 0usize..100_000 {
            let s = sigma.sign() * p.alpha() + 2.0 * n as f64 + 1.0;
            if s.abs() <= BOUNDARY_TOL {
                out.excluded.push(Exclusion {
                    qn: QuantumNumbers::hulthen(sigma, Parity::Plus, n),
                    reason: Error::DegenerateS {
                        sigma: sigma.sign() as i8,
                        n,
                    }
                    .to_string(),
                });
                continue;
            }
            // s grows with n: once s > 0 and s² + C > 0 every later κ is negative
            if s > 0.0 && s * s + c > 0.0 {
                break;
            }
            let tau_beta = (c - s * s) / (2.0 * s);
            let kappa = -(s * s + c) / (2.0 * s);
            let qn = QuantumNumbers::hulthen(sigma, Parity::from_sign(tau_beta), n);
            if kappa <= BOUNDARY_TOL {
                if kappa.abs() <= BOUNDARY_TOL {
                    out.excluded.push(Exclusion {
                        qn,
                        reason: "κ vanishes (normalizability boundary)".into(),
                    });
                }
                continue;
            }
            if tau_beta.abs() <= BOUNDARY_TOL {
                out.excluded.push(Exclusion {
                    qn,
                    reason: "τβ = 0 has no positive β".into(),
                });
                continue;
            }
            let energy = c + 0.25 * (s - c / s).powi(2);
            if (energy - kappa * kappa).abs() > 1e-12 * energy.abs().max(1.0) {
                return Err(Error::InternalConsistency(format!(
                    "Hulthén {qn}: E = {energy} differs from κ² = {}",
                    kappa * kappa
                )));
            }
            out.levels.push(Level {
                qn,
                energy,
                aux: LevelAux::Hulthen { s, tau_beta, kappa },
            });
        }
    }
    Ok(out)
}

/// The shifted-line Pöschl-Teller problem that the arch map carries onto
/// the given Hulthén level.
pub fn hulthen_parent(p: &HulthenParams, level: &Level, epsilon: f64) -> Result<PoschlTellerParams> {
    match level.aux {
        LevelAux::Hulthen { tau_beta, .. } => PoschlTellerParams::new(p.alpha(), tau_beta.abs(), epsilon),
        _ => Err(Error::InvalidParameter(format!("{} is not a Hulthén level", level.qn))),
    }
}

/// Ψ(ξ(x)) = χ(r)/√r'(ξ) on the arch, unnormalized.
pub fn hulthen_wavefunction(
    p: &HulthenParams,
    level: &Level,
    arch: &ArchContour,
    xs: &[f64],
) -> Result<Vec<Complex64>> {
    let (tau_beta, kappa) = match level.aux {
        LevelAux::Hulthen { tau_beta, kappa, .. } => (tau_beta, kappa),
        _ => return Err(Error::InvalidParameter(format!("{} is not a Hulthén level", level.qn))),
    };
    if kappa <= 0.0 {
        return Err(Error::OutOfRange(format!("{} has κ = {kappa} <= 0", level.qn)));
    }
    let sigma_alpha = level.qn.sigma.sign() * p.alpha();
    let map = LiouvilleMap::new(ArchMap, kappa);
    let xis: Vec<Complex64> = xs.iter().map(|&x| arch.map_point(x)).collect();
    // evaluate χ at the exact shifted-line preimages rather than the
    // round-tripped asinh values
    let base: Vec<Complex64> = xs.iter().map(|&x| arch.base_point(x)).collect();
    transport_wavefunction(
        |_rs| pt_eigenfunction(tau_beta, sigma_alpha, level.qn.n, &base),
        &map,
        &xis,
    )
}
