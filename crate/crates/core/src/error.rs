use num_complex::Complex64;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("Pochhammer denominator (c)_k vanishes at k = {k} before the series terminates")]
    PoleInC { k: usize },
    #[error("Jacobi recurrence coefficient vanishes at degree {degree}")]
    DegenerateRecurrence { degree: usize },
    #[error("evaluation at {at} hits a singularity (modulus {modulus:e} below floor)")]
    SingularPoint { at: Complex64, modulus: f64 },
    #[error("analytic and finite-difference map derivatives disagree: order {order}, relative error {rel_err:e}")]
    DerivativeInconsistency { order: usize, rel_err: f64 },
    #[error("phase jump of {jump:.3} rad between samples {index} and {next}", next = index + 1)]
    BranchDiscontinuity { index: usize, jump: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quantum number out of range: {0}")]
    OutOfRange(String),
    #[error("Hulthén enumeration hit s = σα + 2n + 1 = 0 (sigma = {sigma}, n = {n})")]
    DegenerateS { sigma: i8, n: usize },
    #[error("internal consistency violated: {0}")]
    InternalConsistency(String),
    #[error("contour metric |ξ'| = {modulus:e} vanishes at x = {x}")]
    MetricVanishing { x: f64, modulus: f64 },
    #[error("inverse iteration did not converge after {iterations} iterations (best residual {best_residual:e}, estimate {best_eigenvalue})")]
    NoConvergence {
        iterations: usize,
        best_residual: f64,
        best_eigenvalue: Complex64,
    },
    #[error("shifted matrix is singular at shift {shift}")]
    ShiftSingular { shift: Complex64 },
    #[error("dense eigensolver limited to dimension {max}, got {n}")]
    SizeGuard { n: usize, max: usize },
    #[error("QR iteration stalled after {iterations} iterations")]
    QrStall { iterations: usize },
    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),
}

pub(crate) fn ensure_finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}
