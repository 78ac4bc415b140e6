//! Complex integration paths, the Liouville change of variables, and
//! branch-continuous complex powers along sample sequences.
//!
//! Both regularizing paths are PT-symmetric, ξ(-x) = -ξ(x)*:
//!
//! - [`ShiftedLine`]: ξ(x) = x - iε.
//! - [`ArchContour`]: the image of the shifted line under
//!   sinh(x - iε) = -i e^{iξ}, i.e. ξ = v - iu with
//!   v = arctan(tanh x / tan ε) and u = ½ ln(sinh² x + sin² ε).
//!
//! The arch lives in the strip |Re ξ| < π/2 - ε and runs off to -i∞ at
//! both ends; its apex sits at ξ(0) = i ln(1/sin ε).

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::potentials::Potential;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A parametrized path x ↦ ξ(x) with an analytic derivative.
pub trait Contour: Sync {
    fn map_point(&self, x: f64) -> Complex64;
    fn contour_derivative(&self, x: f64) -> Complex64;
}

/// The undeformed real axis, for textbook checks.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RealLine;

impl Contour for RealLine {
    fn map_point(&self, x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }
    fn contour_derivative(&self, _x: f64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
}

fn check_epsilon(epsilon: f64) -> Result<f64> {
    if epsilon > 0.0 && epsilon < FRAC_PI_2 {
        Ok(epsilon)
    } else {
        Err(Error::InvalidParameter(format!(
            "contour epsilon = {epsilon} must lie in (0, pi/2)"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedLine {
    epsilon: f64,
}

impl ShiftedLine {
    pub fn new(epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon).map(|epsilon| ShiftedLine { epsilon })
    }

    /// Shift in (0, π). The Eckart potential stays regular on the whole
    /// range, unlike Pöschl-Teller which needs ε < π/2.
    pub fn wide(epsilon: f64) -> Result<Self> {
        if epsilon > 0.0 && epsilon < PI {
            Ok(ShiftedLine { epsilon })
        } else {
            Err(Error::InvalidParameter(format!(
                "line shift epsilon = {epsilon} must lie in (0, pi)"
            )))
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

impl Contour for ShiftedLine {
    fn map_point(&self, x: f64) -> Complex64 {
        Complex64::new(x, -self.epsilon)
    }
    fn contour_derivative(&self, _x: f64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArchContour {
    epsilon: f64,
}

/// ln cosh x without overflow.
fn ln_cosh(x: f64) -> f64 {
    let ax = x.abs();
    ax - LN_2 + (-2.0 * ax).exp().ln_1p()
}

impl ArchContour {
    pub fn new(epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon).map(|epsilon| ArchContour { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// u(x) = ½ ln(sinh² x + sin² ε).
    fn u(&self, x: f64) -> f64 {
        if x.abs() < 1.0 {
            0.5 * (x.sinh().powi(2) + self.epsilon.sin().powi(2)).ln()
        } else {
            // sinh² x + sin² ε = cosh² x - cos² ε
            let ratio = self.epsilon.cos() / x.cosh();
            ln_cosh(x) + 0.5 * (-(ratio * ratio)).ln_1p()
        }
    }

    /// v(x) = arctan(tanh x / tan ε).
    fn v(&self, x: f64) -> f64 {
        (x.tanh() / self.epsilon.tan()).atan()
    }

    /// The underlying shifted-line coordinate r = x - iε.
    pub fn base_point(&self, x: f64) -> Complex64 {
        Complex64::new(x, -self.epsilon)
    }
}

impl Contour for ArchContour {
    fn map_point(&self, x: f64) -> Complex64 {
        Complex64::new(self.v(x), -self.u(x))
    }
    /// ξ'(x) = -i coth(x - iε).
    fn contour_derivative(&self, x: f64) -> Complex64 {
        -I * coth(self.base_point(x))
    }
}

/// Any of the supported paths, for call sites that pick one at runtime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnyContour {
    Real(RealLine),
    Line(ShiftedLine),
    Arch(ArchContour),
}

impl Contour for AnyContour {
    fn map_point(&self, x: f64) -> Complex64 {
        match self {
            AnyContour::Real(c) => c.map_point(x),
            AnyContour::Line(c) => c.map_point(x),
            AnyContour::Arch(c) => c.map_point(x),
        }
    }
    fn contour_derivative(&self, x: f64) -> Complex64 {
        match self {
            AnyContour::Real(c) => c.contour_derivative(x),
            AnyContour::Line(c) => c.contour_derivative(x),
            AnyContour::Arch(c) => c.contour_derivative(x),
        }
    }
}

pub fn map_point<C: Contour + ?Sized>(contour: &C, x: f64) -> Complex64 {
    contour.map_point(x)
}

pub fn contour_derivative<C: Contour + ?Sized>(contour: &C, x: f64) -> Complex64 {
    contour.contour_derivative(x)
}

/// coth z, stable for large |Re z|.
pub fn coth(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return -coth(-z);
    }
    let e = (-2.0 * z).exp();
    (1.0 + e) / (1.0 - e)
}

/// tanh z, stable for large |Re z|.
pub fn tanh(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return -tanh(-z);
    }
    let e = (-2.0 * z).exp();
    (1.0 - e) / (1.0 + e)
}

// ---------------------------------------------------------------------------
// Liouville change of variables
// ---------------------------------------------------------------------------

/// An invertible coordinate map r = r(ξ) with three analytic derivatives.
pub trait CoordinateMap: Sync {
    fn r(&self, xi: Complex64) -> Complex64;
    /// (r', r'', r''').
    fn derivatives(&self, xi: Complex64) -> [Complex64; 3];
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IdentityMap;

impl CoordinateMap for IdentityMap {
    fn r(&self, xi: Complex64) -> Complex64 {
        xi
    }
    fn derivatives(&self, _xi: Complex64) -> [Complex64; 3] {
        [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]
    }
}

/// r(ξ) = scale · ξ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearMap {
    pub scale: Complex64,
}

impl CoordinateMap for LinearMap {
    fn r(&self, xi: Complex64) -> Complex64 {
        self.scale * xi
    }
    fn derivatives(&self, _xi: Complex64) -> [Complex64; 3] {
        [self.scale, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]
    }
}

/// asinh through the right half-plane, where ln(z + √(1+z²)) does not cancel.
fn asinh(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        -(-z).asinh()
    } else {
        z.asinh()
    }
}

/// The arch map sinh r = -i e^{iξ}, inverted on the principal asinh sheet
/// (valid while |Im r| < π/2, i.e. for every admissible ε).
///
/// With t = tanh r: r' = i t, r'' = -t(1 - t²), r''' = i t (1 - t²)(3t² - 1).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ArchMap;

impl CoordinateMap for ArchMap {
    fn r(&self, xi: Complex64) -> Complex64 {
        asinh(-I * (I * xi).exp())
    }
    fn derivatives(&self, xi: Complex64) -> [Complex64; 3] {
        let t = tanh(self.r(xi));
        let sech2 = 1.0 - t * t;
        [I * t, -t * sech2, I * t * sech2 * (3.0 * t * t - 1.0)]
    }
}

/// A coordinate map together with the decay rate κ of the base problem
/// [-d²/dr² + W(r)] χ = -κ² χ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiouvilleMap<M> {
    pub map: M,
    pub kappa: f64,
    /// Relative threshold for the finite-difference derivative cross-check;
    /// `None` disables the check.
    pub derivative_check: Option<f64>,
    pub floor: f64,
}

impl<M: CoordinateMap> LiouvilleMap<M> {
    pub fn new(map: M, kappa: f64) -> Self {
        LiouvilleMap {
            map,
            kappa,
            derivative_check: Some(1e-6),
            floor: crate::potentials::DEFAULT_SINGULAR_FLOOR,
        }
    }

    pub fn without_derivative_check(mut self) -> Self {
        self.derivative_check = None;
        self
    }

    /// Analytic derivatives, verified against nested central differences
    /// when the check is enabled.
    pub fn checked_derivatives(&self, xi: Complex64) -> Result<[Complex64; 3]> {
        let d = self.map.derivatives(xi);
        if d[0].norm() < self.floor {
            return Err(Error::SingularPoint {
                at: xi,
                modulus: d[0].norm(),
            });
        }
        if let Some(threshold) = self.derivative_check {
            let step = 1e-4;
            let plus = xi + step;
            let minus = xi - step;
            let dp = self.map.derivatives(plus);
            let dm = self.map.derivatives(minus);
            let fd = [
                (self.map.r(plus) - self.map.r(minus)) / (2.0 * step),
                (dp[0] - dm[0]) / (2.0 * step),
                (dp[1] - dm[1]) / (2.0 * step),
            ];
            let scale = d[0].norm();
            for (order, (an, num)) in d.iter().zip(fd.iter()).enumerate() {
                let rel_err = (an - num).norm() / an.norm().max(scale);
                if rel_err > threshold {
                    return Err(Error::DerivativeInconsistency {
                        order: order + 1,
                        rel_err,
                    });
                }
            }
        }
        Ok(d)
    }
}

/// V(ξ) - E = r'² {W[r(ξ)] + κ²} + ¾ (r''/r')² - ½ (r'''/r').
pub fn liouville_potential<W, M>(base: &W, map: &LiouvilleMap<M>, xi: Complex64) -> Result<Complex64>
where
    W: Potential + ?Sized,
    M: CoordinateMap,
{
    let [r1, r2, r3] = map.checked_derivatives(xi)?;
    let w = base.eval(map.map.r(xi))?;
    let k2 = map.kappa * map.kappa;
    let ratio = r2 / r1;
    let value = r1 * r1 * (w + k2) + 0.75 * ratio * ratio - 0.5 * (r3 / r1);
    ensure_finite(value, "liouville_potential")
}

/// Ψ(ξ) = χ[r(ξ)] / √r'(ξ), with the root continued along the sample order.
///
/// `chi` receives the whole sequence r(ξ_i) so that it can keep its own
/// complex powers branch-continuous.
pub fn transport_wavefunction<M, F>(chi: F, map: &LiouvilleMap<M>, xis: &[Complex64]) -> Result<Vec<Complex64>>
where
    M: CoordinateMap,
    F: FnOnce(&[Complex64]) -> Result<Vec<Complex64>>,
{
    let rs: Vec<Complex64> = xis.iter().map(|&xi| map.map.r(xi)).collect();
    let mut r1 = Vec::with_capacity(xis.len());
    for &xi in xis {
        let d = map.map.derivatives(xi)[0];
        if d.norm() < map.floor {
            return Err(Error::SingularPoint {
                at: xi,
                modulus: d.norm(),
            });
        }
        r1.push(d);
    }
    let chi_values = chi(&rs)?;
    if chi_values.len() != xis.len() {
        return Err(Error::InvalidParameter(format!(
            "chi returned {} values for {} samples",
            chi_values.len(),
            xis.len()
        )));
    }
    let inv_root = continuous_pow(&r1, Complex64::new(-0.5, 0.0))?;
    Ok(chi_values.iter().zip(inv_root).map(|(c, s)| c * s).collect())
}

// ---------------------------------------------------------------------------
// Branch continuity
// ---------------------------------------------------------------------------

/// Largest admissible change of arg between neighbouring samples.
pub const MAX_PHASE_STEP: f64 = FRAC_PI_2;

/// log z along a sequence: principal value at the first sample, then the
/// imaginary part is unwrapped sample to sample.
pub fn continuous_log(values: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(values.len());
    let mut prev_arg = 0.0;
    for (i, z) in values.iter().enumerate() {
        if *z == Complex64::new(0.0, 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::SingularPoint {
                at: *z,
                modulus: z.norm(),
            });
        }
        let principal = z.arg();
        let arg = if i == 0 {
            principal
        } else {
            let mut step = principal - prev_arg;
            step -= (step / (2.0 * PI)).round() * 2.0 * PI;
            if step.abs() > MAX_PHASE_STEP {
                return Err(Error::BranchDiscontinuity {
                    index: i - 1,
                    jump: step,
                });
            }
            prev_arg + step
        };
        prev_arg = arg;
        out.push(Complex64::new(z.norm().ln(), arg));
    }
    Ok(out)
}

/// z^p along a sequence with the branch of [`continuous_log`].
pub fn continuous_pow(values: &[Complex64], exponent: Complex64) -> Result<Vec<Complex64>> {
    Ok(continuous_log(values)?
        .into_iter()
        .map(|l| (exponent * l).exp())
        .collect())
}
