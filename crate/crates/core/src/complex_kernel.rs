//! Branch-cut-safe complex powers and scalar bracketing/refinement.
//!
//! Every fractional exponent in the crate goes through [`principal_power`]
//! or through the polar route [`PolarForm::power`]; both use the principal
//! argument in `(-pi, pi]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Iteration cap for [`refine_root`].
pub const MAX_REFINE_ITERATIONS: usize = 200;

/// Default absolute tolerance for [`refine_root`].
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// Principal argument of `z`, mapped into `(-pi, pi]`.
///
/// `atan2` returns `-pi` for a negative real with a negative-zero imaginary
/// part; that value is folded onto `+pi`.
pub fn principal_arg(z: Complex64) -> f64 {
    let arg = z.im.atan2(z.re);
    if arg <= -PI {
        PI
    } else {
        arg
    }
}

/// `exp(a * (ln|z| + i Arg z))` with `Arg z` in `(-pi, pi]`.
pub fn principal_power(z: Complex64, a: f64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        if a > 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(Error::Domain(format!("0 raised to non-positive power {a}")));
    }
    let modulus = z.re.hypot(z.im);
    let arg = principal_arg(z);
    Ok(Complex64::from_polar(modulus.powf(a), a * arg))
}

/// Polar form of `1 - rho - i sigma = r e^{-i theta}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarForm {
    pub r: f64,
    pub theta: f64,
}

impl PolarForm {
    /// `(1 - rho - i sigma)^a` evaluated as `r^a e^{-i a theta}`.
    ///
    /// Off the cut this is identical to [`principal_power`]. On the cut
    /// (`sigma = 0`, `rho > 1`) it takes the `sigma -> 0+` side.
    pub fn power(&self, a: f64) -> Complex64 {
        Complex64::from_polar(self.r.powf(a), -a * self.theta)
    }

    /// `1 - rho - i sigma` rebuilt from the polar pair.
    pub fn base(&self) -> Complex64 {
        Complex64::from_polar(self.r, -self.theta)
    }
}

/// Polar decomposition of `1 - rho - i sigma`.
///
/// `theta = atan2(sigma, 1 - rho)`, so that `r cos theta = 1 - rho` and
/// `r sin theta = sigma`. On the cut (`sigma = 0`, `rho > 1`) `theta = pi`.
pub fn polar_decompose(rho: f64, sigma: f64) -> Result<PolarForm> {
    let x = 1.0 - rho;
    if x == 0.0 && sigma == 0.0 {
        return Err(Error::SingularPoint);
    }
    let r = x.hypot(sigma);
    let mut theta = sigma.atan2(x);
    if theta <= -PI {
        theta = PI;
    }
    Ok(PolarForm { r, theta })
}

/// A sign-change interval of a real function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Uniformly sample `f` on `[lo, hi]` with `steps` sub-intervals and return
/// every adjacent pair that changes sign, in ascending order.
pub fn bracket_scan<F>(f: F, lo: f64, hi: f64, steps: usize) -> Vec<Bracket>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) || steps < 2 {
        return Vec::new();
    }
    let h = (hi - lo) / steps as f64;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| if i == steps { hi } else { lo + i as f64 * h })
        .collect();
    bracket_samples(f, &grid)
}

/// Bracketing over an arbitrary ascending grid.
///
/// Non-finite samples are skipped: a pair is only considered when both of
/// its ends are finite. A sample that is exactly zero is attributed to the
/// interval on its left (or to the first interval when it is the first
/// sample), so an exact hit is reported once.
pub fn bracket_samples<F>(f: F, grid: &[f64]) -> Vec<Bracket>
where
    F: Fn(f64) -> f64,
{
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for i in 0..grid.len().saturating_sub(1) {
        let (fa, fb) = (values[i], values[i + 1]);
        if !fa.is_finite() || !fb.is_finite() {
            continue;
        }
        let change = if fb == 0.0 {
            true
        } else if fa == 0.0 {
            i == 0
        } else {
            (fa < 0.0) != (fb < 0.0)
        };
        if change {
            out.push(Bracket {
                lo: grid[i],
                hi: grid[i + 1],
                f_lo: fa,
                f_hi: fb,
            });
        }
    }
    out
}

/// Brent's method on a sign-change bracket.
///
/// Each step takes inverse quadratic interpolation or a secant step when it
/// stays well inside the bracket, and bisects otherwise. The returned
/// abscissa never leaves `[bracket.lo, bracket.hi]`.
pub fn refine_root<F>(f: F, bracket: Bracket, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("root tolerance {tol}")));
    }
    if !(bracket.lo < bracket.hi) {
        return Err(Error::InvalidParameter(format!(
            "empty bracket [{}, {}]",
            bracket.lo, bracket.hi
        )));
    }
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if (fa < 0.0) == (fb < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "no sign change on [{}, {}]",
            bracket.lo, bracket.hi
        )));
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_REFINE_ITERATIONS {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b.clamp(bracket.lo, bracket.hi));
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }

        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
        if !fb.is_finite() {
            // fall back to a plain bisection step on the current bracket
            b = a + 0.5 * (c - a);
            fb = f(b);
            if !fb.is_finite() {
                break;
            }
        }
    }
    Err(Error::NonConvergence {
        lo: bracket.lo,
        hi: bracket.hi,
        iterations: MAX_REFINE_ITERATIONS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn principal_power_examples() {
        let one = principal_power(c(1.0, 0.0), 0.5).unwrap();
        assert!((one - c(1.0, 0.0)).norm() < 1e-15);
        let i = principal_power(c(-1.0, 0.0), 0.5).unwrap();
        assert!((i - c(0.0, 1.0)).norm() < 1e-15);
        let m1 = principal_power(c(0.0, 1.0), 2.0).unwrap();
        assert!((m1 - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn negative_zero_imaginary_sits_on_upper_side_of_cut() {
        let z = principal_power(c(-4.0, -0.0), 0.5).unwrap();
        assert!((z - c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_base() {
        assert_eq!(principal_power(c(0.0, 0.0), 1.5).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            principal_power(c(0.0, 0.0), 0.0),
            Err(Error::Domain(_))
        ));
        assert!(principal_power(c(0.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn polar_examples() {
        let p = polar_decompose(0.0, 0.0).unwrap();
        assert_eq!((p.r, p.theta), (1.0, 0.0));
        let p = polar_decompose(1.0, 1.0).unwrap();
        assert!((p.r - 1.0).abs() < 1e-15);
        assert!((p.theta - PI / 2.0).abs() < 1e-15);
        let p = polar_decompose(2.0, 0.0).unwrap();
        assert_eq!(p.r, 1.0);
        assert_eq!(p.theta, PI);
        let p = polar_decompose(2.0, -0.0).unwrap();
        assert_eq!(p.theta, PI);
        assert_eq!(polar_decompose(1.0, 0.0), Err(Error::SingularPoint));
    }

    #[test]
    fn bracket_examples() {
        let b = bracket_scan(|x| x - 0.5, 0.0, 1.0, 10);
        assert_eq!(b.len(), 1);
        assert!(b[0].contains(0.5));

        assert!(bracket_scan(|x| x * x + 1.0, -1.0, 1.0, 10).is_empty());

        let b = bracket_scan(f64::sin, 1.0, 7.0, 100);
        assert_eq!(b.len(), 2);
        assert!(b[0].contains(PI));
        assert!(b[1].contains(2.0 * PI));
    }

    #[test]
    fn bracket_skips_non_finite_samples() {
        let b = bracket_scan(|x| if x.abs() < 0.05 { f64::NAN } else { x }, -1.0, 1.0, 10);
        assert!(b.is_empty());
        let b = bracket_scan(|x| 1.0 / x, -1.0, 1.05, 41);
        // pole crossing is still a sign change between finite samples
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn refine_examples() {
        let f = |x: f64| x - 0.5;
        let b = bracket_scan(f, 0.0, 1.0, 3)[0];
        assert!((refine_root(f, b, 1e-12).unwrap() - 0.5).abs() < 1e-12);

        let g = |x: f64| x * x * x - 2.0;
        let b = Bracket { lo: 1.0, hi: 2.0, f_lo: g(1.0), f_hi: g(2.0) };
        assert!((refine_root(g, b, 1e-12).unwrap() - 1.259921049894873).abs() < 1e-10);

        let b = Bracket { lo: 1.0, hi: 2.0, f_lo: 1f64.cos(), f_hi: 2f64.cos() };
        assert!((refine_root(f64::cos, b, 1e-12).unwrap() - PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn refine_rejects_bad_input() {
        let b = Bracket { lo: 0.0, hi: 1.0, f_lo: 1.0, f_hi: 2.0 };
        assert!(refine_root(|x| x + 1.0, b, 1e-12).is_err());
        let b = Bracket { lo: 0.0, hi: 1.0, f_lo: -1.0, f_hi: 1.0 };
        assert!(refine_root(|x| x - 0.5, b, 0.0).is_err());
    }

    #[test]
    fn refine_reports_failure_when_interior_is_undefined() {
        let f = |x: f64| if x == 0.0 || x == 1.0 { x - 0.5 } else { f64::NAN };
        let b = Bracket { lo: 0.0, hi: 1.0, f_lo: -0.5, f_hi: 0.5 };
        assert!(matches!(refine_root(f, b, 1e-12), Err(Error::NonConvergence { .. })));
    }

    proptest! {
        #[test]
        fn conjugation_symmetry(re in -10.0f64..10.0, im in 1e-6f64..10.0, a in -3.0f64..3.0, flip in any::<bool>()) {
            let z = c(re, if flip { -im } else { im });
            let lhs = principal_power(z.conj(), a).unwrap();
            let rhs = principal_power(z, a).unwrap().conj();
            prop_assert!((lhs - rhs).norm() <= 1e-13 * rhs.norm().max(1.0));
        }

        #[test]
        fn unit_and_zero_exponents(re in -10.0f64..10.0, im in -10.0f64..10.0) {
            prop_assume!(re.hypot(im) > 1e-8);
            let z = c(re, im);
            prop_assert!((principal_power(z, 1.0).unwrap() - z).norm() <= 1e-15 * z.norm().max(1.0));
            prop_assert!((principal_power(z, 0.0).unwrap() - c(1.0, 0.0)).norm() <= 1e-15);
        }

        #[test]
        fn polar_reconstructs_input(rho in -10.0f64..10.0, sigma in -10.0f64..10.0) {
            prop_assume!((rho - 1.0).hypot(sigma) > 1e-6);
            let p = polar_decompose(rho, sigma).unwrap();
            prop_assert!(p.r >= 0.0);
            prop_assert!(p.theta > -PI && p.theta <= PI);
            let z = p.base();
            let target = c(1.0 - rho, -sigma);
            prop_assert!((z - target).norm() <= 1e-14 * target.norm());
        }

        #[test]
        fn refine_stays_inside_bracket(root in -5.0f64..5.0, width in 1e-3f64..4.0, cubic in any::<bool>()) {
            let f = move |x: f64| if cubic { (x - root).powi(3) + 0.1 * (x - root) } else { (x - root).tanh() };
            let lo = root - width * 0.3;
            let hi = root + width * 0.7;
            let b = Bracket { lo, hi, f_lo: f(lo), f_hi: f(hi) };
            let x = refine_root(f, b, 1e-12).unwrap();
            prop_assert!(b.contains(x));
            prop_assert!((x - root).abs() < 1e-9);
        }
    }
}
