//! Complex-parameter special functions.
//!
//! Only the terminating branch of the Gauss series is implemented: every
//! bound state of the three families corresponds to a polynomial ₂F₁, so no
//! analytic continuation of the general function is ever needed.

use num_complex::Complex64;

use crate::ddouble::Cdd;
use crate::error::{ensure_finite, Error, Result};

/// Relative/absolute comparison thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            relative: 1e-10,
            absolute: 1e-13,
        }
    }
}

impl Tolerance {
    pub fn close(&self, a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= self.absolute + self.relative * a.norm().max(b.norm())
    }
}

/// Which coordinate substitution produced the hypergeometric argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZMap {
    /// z = (1 - coth r)/2, used for the Eckart model.
    CothHalf,
    /// z = sinh² r with the series in -z, used for Pöschl-Teller.
    SinhSquared,
    /// z = (1 - y)/2, the plain Jacobi argument.
    JacobiArgument,
}

/// Parameters of a Gauss equation obtained from one of the reductions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricReduction {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub map: ZMap,
}

impl HypergeometricReduction {
    /// Degree of the terminating polynomial, if `b` is a non-positive
    /// integer within `tol`.
    pub fn termination_degree(&self, tol: f64) -> Option<usize> {
        let n = -self.b.re;
        if self.b.im.abs() <= tol && n > -tol && (n - n.round()).abs() <= tol {
            Some(n.round() as usize)
        } else {
            None
        }
    }

    /// Evaluate the terminating series at the (already mapped) argument.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let n = self
            .termination_degree(1e-9)
            .ok_or_else(|| Error::InvalidParameter(format!("b = {} does not terminate", self.b)))?;
        // the series is symmetric in (a, b); b carries the termination
        gauss2f1_terminating(n, self.a, self.c, z)
    }
}

/// Rising factorial (a)_k = a(a+1)...(a+k-1).
pub fn pochhammer(a: Complex64, k: usize) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (a + j as f64))
}

/// ₂F₁(-N, b; c; z) summed over its N+1 terms.
pub fn gauss2f1_terminating(n: usize, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    let sum = terminating_sum(n, b.into(), c.into(), z.into())?;
    ensure_finite(sum.to_c64(), "gauss2f1_terminating")
}

// Terms and partial sums are carried in double-double arithmetic: near the
// oscillatory region of the Jacobi polynomials the terms exceed the sum by
// up to seven orders of magnitude, which a plain f64 sum cannot absorb.
fn terminating_sum(n: usize, b: Cdd, c: Cdd, z: Cdd) -> Result<Cdd> {
    let one = Cdd::real(1.0);
    let nf = Cdd::real(n as f64);
    let mut sum = one;
    let mut term = one;
    for k in 0..n {
        let kf = Cdd::real(k as f64);
        let ck = c + kf;
        if ck.is_zero() {
            return Err(Error::PoleInC { k });
        }
        term = term * ((b + kf) * (kf - nf) / (ck * (kf + one))) * z;
        sum = sum + term;
    }
    Ok(sum)
}

/// Jacobi polynomial through its hypergeometric representation
/// P_n^{(a,b)}(y) = (a+1)_n / n! · ₂F₁(-n, n+a+b+1; a+1; (1-y)/2).
///
/// The series parameters and argument are formed in double-double as well,
/// since the series amplifies their rounding by the same factor.
pub fn jacobi_p_hyp(n: usize, a: Complex64, b: Complex64, y: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let one = Complex64::new(1.0, 0.0);
    let (ad, bd) = (Cdd::from(a), Cdd::from(b));
    let upper = ad + bd + Cdd::real(n as f64 + 1.0);
    let lower = ad + Cdd::real(1.0);
    let z = (Cdd::real(1.0) - Cdd::from(y)) * Cdd::real(0.5);
    let series = terminating_sum(n, upper, lower, z)?.to_c64();
    let prefactor = (0..n).fold(one, |acc, j| acc * (a + (j as f64 + 1.0)) / (j as f64 + 1.0));
    ensure_finite(prefactor * series, "jacobi_p_hyp")
}

/// Jacobi polynomial through the three-term recurrence in the degree.
///
/// Run in double-double: for complex a, b the recurrence can cancel almost
/// as badly as the series does.
pub fn jacobi_p_rec(n: usize, a: Complex64, b: Complex64, y: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let (a, b, y) = (Cdd::from(a), Cdd::from(b), Cdd::from(y));
    let [one, two] = [Cdd::real(1.0), Cdd::real(2.0)];
    let p1 = ((a - b) + (a + b + two) * y) * Cdd::real(0.5);
    if n == 1 {
        return ensure_finite(p1.to_c64(), "jacobi_p_rec");
    }
    let ab = a + b;
    let (mut prev, mut cur) = (one, p1);
    for k in 2..=n {
        let kf = Cdd::real(k as f64);
        let s = ab + two * kf;
        let lead = two * kf * (ab + kf) * (s - two);
        if lead.is_zero() {
            return Err(Error::DegenerateRecurrence { degree: k });
        }
        let mid = (s - one) * (s * (s - two) * y + a * a - b * b);
        let tail = two * (a + kf - one) * (b + kf - one) * s;
        let next = (mid * cur - tail * prev) / lead;
        prev = cur;
        cur = next;
    }
    ensure_finite(cur.to_c64(), "jacobi_p_rec")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(2.5, 0.0), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(1.0, 0.0), 4), c(24.0, 0.0));
        assert_eq!(pochhammer(c(-2.0, 0.0), 3), c(0.0, 0.0));
        assert_eq!(pochhammer(c(2.5, 0.0), 2), c(8.75, 0.0));
    }

    #[test]
    fn gauss_series_examples() {
        let any = c(0.3, -1.7);
        assert_eq!(gauss2f1_terminating(0, any, any, any).unwrap(), c(1.0, 0.0));
        assert_eq!(
            gauss2f1_terminating(3, c(1.5, 2.0), c(0.5, 0.1), c(0.0, 0.0)).unwrap(),
            c(1.0, 0.0)
        );
        let v = gauss2f1_terminating(1, c(2.0, 0.0), c(3.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((v - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn gauss_series_reports_pole() {
        // (c)_k hits zero at k = 2 for c = -2, before termination at N = 4
        let err = gauss2f1_terminating(4, c(1.0, 0.0), c(-2.0, 0.0), c(0.3, 0.0)).unwrap_err();
        assert_eq!(err, Error::PoleInC { k: 2 });
        // termination first: N = 2 never reaches (c)_2
        assert!(gauss2f1_terminating(2, c(1.0, 0.0), c(-2.0, 0.0), c(0.3, 0.0)).is_ok());
    }

    #[test]
    fn jacobi_examples() {
        let z = c(0.0, 0.0);
        let any = c(1.3, -0.2);
        assert_eq!(jacobi_p_hyp(0, any, any, any).unwrap(), c(1.0, 0.0));
        assert_eq!(jacobi_p_rec(0, any, any, any).unwrap(), c(1.0, 0.0));
        assert!((jacobi_p_hyp(1, z, z, c(0.3, 0.0)).unwrap() - c(0.3, 0.0)).norm() < 1e-15);
        assert!((jacobi_p_rec(1, z, z, c(0.3, 0.0)).unwrap() - c(0.3, 0.0)).norm() < 1e-15);
        assert!((jacobi_p_hyp(2, z, c(0.7, 0.0), c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let (a, b, y) = (c(1.2, -0.4), c(0.7, 0.0), c(2.0, 1.0));
        let h = jacobi_p_hyp(6, a, b, y).unwrap();
        let r = jacobi_p_rec(6, a, b, y).unwrap();
        assert!((h - r).norm() / h.norm() < 1e-10, "{h} vs {r}");
    }

    #[test]
    fn legendre_limit_matches_table() {
        // P_3^{(0,0)}(y) = (5y³ - 3y)/2
        let y = c(0.4, 0.25);
        let exact = (5.0 * y * y * y - 3.0 * y) * 0.5;
        let z = c(0.0, 0.0);
        assert!((jacobi_p_hyp(3, z, z, y).unwrap() - exact).norm() < 1e-14);
        assert!((jacobi_p_rec(3, z, z, y).unwrap() - exact).norm() < 1e-14);
    }

    #[test]
    fn recurrence_reports_degenerate_coefficient() {
        // a + b = -2 makes 2k(k+a+b)(2k+a+b-2) vanish at k = 2
        let err = jacobi_p_rec(3, c(-1.0, 0.0), c(-1.0, 0.0), c(0.5, 0.0)).unwrap_err();
        assert_eq!(err, Error::DegenerateRecurrence { degree: 2 });
    }

    #[test]
    fn reduction_termination_degree() {
        let r = HypergeometricReduction {
            a: c(3.0, 0.0),
            b: c(-2.0, 1e-14),
            c: c(1.5, 0.3),
            map: ZMap::JacobiArgument,
        };
        assert_eq!(r.termination_degree(1e-12), Some(2));
        let r2 = HypergeometricReduction { b: c(-1.5, 0.0), ..r };
        assert_eq!(r2.termination_degree(1e-12), None);
        assert!(r2.evaluate(c(0.1, 0.0)).is_err());
    }

    fn complex_in(radius: f64) -> impl Strategy<Value = Complex64> {
        (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
    }

    /// Distance from the poles of either route: (a+1)_k denominators and the
    /// leading recurrence coefficients.
    fn pole_distance(n: usize, a: Complex64, b: Complex64) -> f64 {
        let mut d = f64::INFINITY;
        for k in 0..n {
            d = d.min((a + 1.0 + k as f64).norm());
        }
        for k in 2..=n {
            let kf = k as f64;
            d = d.min((a + b + kf).norm()).min((a + b + 2.0 * kf - 2.0).norm());
        }
        d
    }

    proptest! {
        #[test]
        fn hypergeometric_and_recurrence_routes_agree(
            n in 0usize..=15,
            a in complex_in(5.0),
            b in complex_in(5.0),
            y in complex_in(5.0),
        ) {
            prop_assume!(pole_distance(n, a, b) > 0.05);
            let h = jacobi_p_hyp(n, a, b, y).unwrap();
            let r = jacobi_p_rec(n, a, b, y).unwrap();
            prop_assert!((h - r).norm() / (1.0 + h.norm()) <= 1e-10, "n={} h={} r={}", n, h, r);
        }

        #[test]
        fn pochhammer_splits(a in complex_in(6.0), j in 0usize..8, k in 0usize..8) {
            let whole = pochhammer(a, j + k);
            let split = pochhammer(a, j) * pochhammer(a + j as f64, k);
            prop_assert!((whole - split).norm() <= 1e-13 * whole.norm().max(1e-300) + 1e-300);
        }

        #[test]
        fn terminating_series_is_polynomial_of_degree_n(
            n in 0usize..8,
            b in complex_in(3.0),
            c0 in complex_in(3.0),
            z0 in complex_in(0.8),
            step in 0.05f64..0.2,
        ) {
            prop_assume!((0..n).all(|k| (c0 + k as f64).norm() > 0.1));
            // (N+1)-th forward difference on N+2 equispaced points annihilates a degree-N polynomial
            let pts: Vec<Complex64> = (0..n + 2)
                .map(|i| gauss2f1_terminating(n, b, c0, z0 + step * i as f64).unwrap())
                .collect();
            let mut diff = pts.clone();
            for _ in 0..=n {
                diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
            }
            let scale = pts.iter().map(|p| p.norm()).fold(1.0, f64::max);
            prop_assert!(diff[0].norm() <= 1e-9 * scale * 2f64.powi(n as i32 + 1));
        }
    }
}
