//! The three potential families, evaluated at arbitrary complex coordinates.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::contour::Contour;
use crate::error::{ensure_finite, Error, Result};

/// Default modulus floor for |sinh r|, |cosh r| and |1 - e^{2iξ}|.
pub const DEFAULT_SINGULAR_FLOOR: f64 = 1e-12;

/// Anything that can be evaluated pointwise along a contour.
pub trait Potential: Sync {
    fn eval(&self, z: Complex64) -> Result<Complex64>;
}

/// Adapter for closure-defined test potentials.
pub struct FnPotential<F>(pub F);

impl<F> Potential for FnPotential<F>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        ensure_finite((self.0)(z), "test potential")
    }
}

fn check_floor(value: Complex64, at: Complex64, floor: f64) -> Result<Complex64> {
    let modulus = value.norm();
    if modulus < floor || !modulus.is_finite() {
        Err(Error::SingularPoint { at, modulus })
    } else {
        Ok(value)
    }
}

fn check_floor_param(floor: f64) -> Result<f64> {
    if floor.is_finite() && floor >= 0.0 {
        Ok(floor)
    } else {
        Err(Error::InvalidParameter(format!(
            "singularity floor {floor} must be finite and non-negative"
        )))
    }
}

/// Eckart model A(A-1)/sinh² r - 2iβ coth r, i.e. the coupling B = iβ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EckartParams {
    a: f64,
    beta: f64,
    epsilon: f64,
    floor: f64,
}

impl EckartParams {
    pub fn new(a: f64, beta: f64, epsilon: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::InvalidParameter(format!("Eckart A = {a} must be finite")));
        }
        if !beta.is_finite() {
            return Err(Error::InvalidParameter(format!("Eckart beta = {beta} must be finite")));
        }
        if !(epsilon > 0.0 && epsilon < PI) {
            return Err(Error::InvalidParameter(format!(
                "Eckart epsilon = {epsilon} must lie in (0, pi)"
            )));
        }
        Ok(EckartParams {
            a,
            beta,
            epsilon,
            floor: DEFAULT_SINGULAR_FLOOR,
        })
    }

    pub fn with_singular_floor(mut self, floor: f64) -> Result<Self> {
        self.floor = check_floor_param(floor)?;
        Ok(self)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

pub fn eval_eckart(p: &EckartParams, r: Complex64) -> Result<Complex64> {
    let s = check_floor(r.sinh(), r, p.floor)?;
    let value = p.a * (p.a - 1.0) / (s * s) - Complex64::new(0.0, 2.0 * p.beta) * r.cosh() / s;
    ensure_finite(value, "eval_eckart")
}

impl Potential for EckartParams {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        eval_eckart(self, z)
    }
}

/// Regularized Pöschl-Teller (β² - 1/4)/sinh² r - (α² - 1/4)/cosh² r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoschlTellerParams {
    alpha: f64,
    beta: f64,
    epsilon: f64,
    floor: f64,
}

impl PoschlTellerParams {
    pub fn new(alpha: f64, beta: f64, epsilon: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must be positive")));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("beta = {beta} must be positive")));
        }
        if !(epsilon > 0.0 && epsilon < FRAC_PI_2) {
            return Err(Error::InvalidParameter(format!(
                "epsilon = {epsilon} must lie in (0, pi/2)"
            )));
        }
        Ok(PoschlTellerParams {
            alpha,
            beta,
            epsilon,
            floor: DEFAULT_SINGULAR_FLOOR,
        })
    }

    pub fn with_singular_floor(mut self, floor: f64) -> Result<Self> {
        self.floor = check_floor_param(floor)?;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

pub fn eval_rpt(p: &PoschlTellerParams, r: Complex64) -> Result<Complex64> {
    let s = check_floor(r.sinh(), r, p.floor)?;
    let c = check_floor(r.cosh(), r, p.floor)?;
    let value = (p.beta * p.beta - 0.25) / (s * s) - (p.alpha * p.alpha - 0.25) / (c * c);
    ensure_finite(value, "eval_rpt")
}

impl Potential for PoschlTellerParams {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        eval_rpt(self, z)
    }
}

/// Hulthén-type potential A/(1 - e^{2iξ})² + B/(1 - e^{2iξ}) with
/// A = 1 - α² and B = C - A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HulthenParams {
    alpha: f64,
    c: f64,
    floor: f64,
}

impl HulthenParams {
    pub fn new(alpha: f64, c: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must be positive")));
        }
        if !c.is_finite() {
            return Err(Error::InvalidParameter(format!("C = {c} must be finite")));
        }
        Ok(HulthenParams {
            alpha,
            c,
            floor: DEFAULT_SINGULAR_FLOOR,
        })
    }

    pub fn with_singular_floor(mut self, floor: f64) -> Result<Self> {
        self.floor = check_floor_param(floor)?;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    /// C = A + B.
    pub fn c(&self) -> f64 {
        self.c
    }
    /// A = 1 - α².
    pub fn coupling_a(&self) -> f64 {
        1.0 - self.alpha * self.alpha
    }
    /// B = C - A.
    pub fn coupling_b(&self) -> f64 {
        self.c - self.coupling_a()
    }
}

pub fn eval_hulthen(p: &HulthenParams, xi: Complex64) -> Result<Complex64> {
    let w = (Complex64::new(0.0, 2.0) * xi).exp();
    let d = check_floor(Complex64::new(1.0, 0.0) - w, xi, p.floor)?;
    let value = p.coupling_a() / (d * d) + p.coupling_b() / d;
    ensure_finite(value, "eval_hulthen")
}

impl Potential for HulthenParams {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        eval_hulthen(self, z)
    }
}

/// max over samples of |V(ξ(-x)) - conj V(ξ(x))|.
pub fn pt_defect<P, C>(potential: &P, contour: &C, xs: &[f64]) -> Result<f64>
where
    P: Potential + ?Sized,
    C: Contour + ?Sized,
{
    let mut worst = 0.0f64;
    for &x in xs {
        let plus = potential.eval(contour.map_point(x))?;
        let minus = potential.eval(contour.map_point(-x))?;
        worst = worst.max((minus - plus.conj()).norm());
    }
    Ok(worst)
}
