//! Closed-form locus kernels in the dimensionless `(rho, sigma)` plane.
//!
//! Write `z = (1 - rho) - i sigma = r e^{-i theta}` and
//! `Omega = z^{2(alpha-1)/alpha}`. The vanishing of `M22` (or `M11`) at the
//! product `k_alpha d` reduces to
//!
//! ```text
//! cos(q) cosh(p) = +- (1 - |Omega|^2) / |1 - Omega|^2
//! sin(q) sinh(p) = +- 2 Im(Omega)   / |1 - Omega|^2
//! ```
//!
//! with `q - i p = 2 k_alpha d z^{1/alpha}`. Eliminating `q` gives a quadratic
//! in `sinh^2 p` whose nonnegative root is `tau`; the `n`-th branch of the
//! arccos fixes `q = Q_n`, which in turn fixes `k_alpha d = H_n`. The scalar
//! `S_n = asinh(sqrt(tau)) - Q_n tan(theta/alpha)` vanishes on the locus; the
//! complex residual `S~_n` (or `C~_n`) is used to validate each root.
//!
//! All powers of `z` go through [`PolarForm::power`], so on the cut
//! (`sigma = 0`, `rho > 1`) the kernels take the `sigma -> 0+` side.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use crate::complex_kernel::{polar_decompose, PolarForm};
use crate::error::{Error, Result};
use crate::medium::LevyIndex;

/// Tolerance for arccos arguments that drift just past `+-1`.
pub const ACOS_CLAMP: f64 = 1e-12;
/// Smallest accepted `|1 - Omega|^2`.
pub const OMEGA_DENOM_FLOOR: f64 = 1e-14;
/// Smallest accepted `|cos(theta/alpha)|`.
pub const COS_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        })
    }
}

/// Spectral singularity (`M22 = 0`) or coherent perfect absorption (`M11 = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocusKind {
    Ss,
    Cpa,
}

impl LocusKind {
    /// Sign of sigma on which this kind of locus lives.
    pub fn sigma_sign(self) -> f64 {
        match self {
            LocusKind::Ss => 1.0,
            LocusKind::Cpa => -1.0,
        }
    }
}

impl fmt::Display for LocusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocusKind::Ss => "ss",
            LocusKind::Cpa => "cpa",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocusParams {
    pub rho: f64,
    pub sigma: f64,
    pub alpha: LevyIndex,
    pub n: i32,
    pub branch: Branch,
}

impl LocusParams {
    pub fn new(rho: f64, sigma: f64, alpha: LevyIndex, n: i32, branch: Branch) -> Result<Self> {
        if rho == 1.0 && sigma == 0.0 {
            return Err(Error::SingularPoint);
        }
        if rho == 0.0 && sigma == 0.0 {
            return Err(Error::InvalidParameter("(rho, sigma) = (0, 0) is the free particle".into()));
        }
        if !rho.is_finite() || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!("non-finite point ({rho}, {sigma})")));
        }
        Ok(Self { rho, sigma, alpha, n, branch })
    }
}

/// Every intermediate quantity at one `(rho, sigma, alpha, n, branch)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocusKernel {
    pub omega: Complex64,
    pub p: f64,
    pub q: f64,
    pub tau: f64,
    pub q_branch: f64,
    pub h: f64,
    pub residual_s: Complex64,
    pub residual_scalar: f64,
}

/// A complex residual together with the magnitude scale of its two terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub value: Complex64,
    pub scale: f64,
}

impl Residual {
    /// `|value| / (|term1| + |term2|)`.
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.value.norm() / self.scale
        } else {
            f64::INFINITY
        }
    }
}

/// `(1 - |Omega|^2)/|1 - Omega|^2` and `2 Im Omega / |1 - Omega|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct OmegaRatios {
    re: f64,
    im: f64,
}

fn omega_from_polar(polar: &PolarForm, alpha: f64) -> Complex64 {
    polar.power(2.0 * (alpha - 1.0) / alpha)
}

fn omega_ratios(omega: Complex64) -> Result<OmegaRatios> {
    let denom = (Complex64::new(1.0, 0.0) - omega).norm_sqr();
    if denom <= OMEGA_DENOM_FLOOR {
        return Err(Error::SingularDenominator(format!("|1 - Omega|^2 = {denom:e}")));
    }
    Ok(OmegaRatios {
        re: (1.0 - omega.norm_sqr()) / denom,
        im: 2.0 * omega.im / denom,
    })
}

/// Nonnegative root of `x^2 + B x - C = 0` with `B = 1 - a^2 - b^2`, `C = b^2`.
fn tau_from_ratios(ratios: OmegaRatios) -> f64 {
    let b_coef = 1.0 - ratios.re * ratios.re - ratios.im * ratios.im;
    let c_coef = ratios.im * ratios.im;
    let disc = (b_coef * b_coef + 4.0 * c_coef).sqrt();
    if b_coef > 0.0 {
        2.0 * c_coef / (b_coef + disc)
    } else {
        (disc - b_coef) / 2.0
    }
}

/// `Omega = [(1-rho)^2 + sigma^2]^{(alpha-1)/alpha} e^{-2i(alpha-1)theta/alpha}`.
pub fn omega(rho: f64, sigma: f64, alpha: LevyIndex) -> Result<Complex64> {
    let polar = polar_decompose(rho, sigma)?;
    Ok(omega_from_polar(&polar, alpha.value()))
}

/// Admissible root of the quadratic in `sinh^2 p`.
pub fn tau(rho: f64, sigma: f64, alpha: LevyIndex) -> Result<f64> {
    Ok(tau_from_ratios(omega_ratios(omega(rho, sigma, alpha)?)?))
}

/// `p = 2 kd r^{1/alpha} sin(theta/alpha)`, `q = 2 kd r^{1/alpha} cos(theta/alpha)`.
pub fn p_and_q(rho: f64, sigma: f64, alpha: LevyIndex, kd: f64) -> Result<(f64, f64)> {
    let polar = polar_decompose(rho, sigma)?;
    let a = alpha.value();
    let amp = 2.0 * kd * polar.r.powf(1.0 / a);
    let phase = polar.theta / a;
    Ok((amp * phase.sin(), amp * phase.cos()))
}

fn q_from_ratios(ratios: OmegaRatios, tau: f64, n: i32, branch: Branch) -> Result<f64> {
    let mut arg = ratios.re / (1.0 + tau).sqrt();
    if arg.abs() > 1.0 + ACOS_CLAMP || !arg.is_finite() {
        return Err(Error::Domain(format!("arccos argument {arg} outside [-1, 1]")));
    }
    arg = arg.clamp(-1.0, 1.0);
    Ok(PI * n as f64 + branch.sign() * arg.acos())
}

/// `Q_n = pi n +- arccos[ (1-|Omega|^2)/|1-Omega|^2 / sqrt(1 + tau) ]`.
pub fn q_branch(rho: f64, sigma: f64, alpha: LevyIndex, n: i32, branch: Branch) -> Result<f64> {
    let ratios = omega_ratios(omega(rho, sigma, alpha)?)?;
    q_from_ratios(ratios, tau_from_ratios(ratios), n, branch)
}

fn h_from_q(polar: &PolarForm, alpha: f64, q: f64) -> Result<f64> {
    let cos = (polar.theta / alpha).cos();
    if cos.abs() < COS_FLOOR {
        return Err(Error::SingularDenominator(format!("cos(theta/alpha) = {cos:e}")));
    }
    Ok(q / (2.0 * polar.r.powf(1.0 / alpha) * cos))
}

/// `H_n = Q_n / (2 r^{1/alpha} cos(theta/alpha))`, the product `k_alpha d` on the locus.
pub fn h_branch(rho: f64, sigma: f64, alpha: LevyIndex, n: i32, branch: Branch) -> Result<f64> {
    let polar = polar_decompose(rho, sigma)?;
    let q = q_branch(rho, sigma, alpha, n, branch)?;
    h_from_q(&polar, alpha.value(), q)
}

/// Intermediate state shared by the scalar and complex residuals.
struct Core {
    polar: PolarForm,
    omega: Complex64,
    tau: f64,
    q: f64,
    tan: f64,
}

fn core(rho: f64, sigma: f64, alpha: f64, n: i32, branch: Branch) -> Result<Core> {
    let polar = polar_decompose(rho, sigma)?;
    let omega = omega_from_polar(&polar, alpha);
    let ratios = omega_ratios(omega)?;
    let tau = tau_from_ratios(ratios);
    let q = q_from_ratios(ratios, tau, n, branch)?;
    let tan = (polar.theta / alpha).tan();
    Ok(Core { polar, omega, tau, q, tan })
}

/// `S_n = asinh(sqrt(tau)) - Q_n tan(theta/alpha)`.
pub fn ss_scalar(rho: f64, sigma: f64, alpha: LevyIndex, n: i32, branch: Branch) -> Result<f64> {
    let c = core(rho, sigma, alpha.value(), n, branch)?;
    Ok(c.tau.sqrt().asinh() - c.q * c.tan)
}

/// Scalar for the absorbing locus: `asinh(sqrt(tau)) + Q_n tan(theta/alpha)`.
///
/// Equal to `ss_scalar(rho, -sigma)` off the cut.
pub fn cpa_scalar(rho: f64, sigma: f64, alpha: LevyIndex, n: i32, branch: Branch) -> Result<f64> {
    let c = core(rho, sigma, alpha.value(), n, branch)?;
    Ok(c.tau.sqrt().asinh() + c.q * c.tan)
}

/// Scalar locus function for the given kind.
pub fn locus_scalar(kind: LocusKind, rho: f64, sigma: f64, alpha: LevyIndex, n: i32, branch: Branch) -> Result<f64> {
    match kind {
        LocusKind::Ss => ss_scalar(rho, sigma, alpha, n, branch),
        LocusKind::Cpa => cpa_scalar(rho, sigma, alpha, n, branch),
    }
}

/// `e^{-i s 2H z^{1/a}} (1 + z^{(a-1)/a})^2 - e^{+i s 2H z^{1/a}} (1 - z^{(a-1)/a})^2`
/// with `s = +1` for SS and `s = -1` for CPA.
fn tilde_residual(polar: &PolarForm, alpha: f64, h: f64, sign: f64) -> Result<Residual> {
    let one = Complex64::new(1.0, 0.0);
    let root = polar.power(1.0 / alpha);
    let w = polar.power((alpha - 1.0) / alpha);
    let phase = Complex64::new(0.0, -sign * 2.0 * h) * root;
    if phase.re.abs() > crate::scattering::EXP_GUARD {
        return Err(Error::Overflow(phase.re.abs()));
    }
    let term1 = phase.exp() * (one + w) * (one + w);
    let term2 = (-phase).exp() * (one - w) * (one - w);
    let value = term1 - term2;
    let scale = term1.norm() + term2.norm();
    if !value.re.is_finite() || !value.im.is_finite() || !scale.is_finite() {
        return Err(Error::Overflow(phase.re.abs()));
    }
    Ok(Residual { value, scale })
}

fn residual_for(kind: LocusKind, rho: f64, sigma: f64, alpha: LevyIndex, n: i32, branch: Branch) -> Result<Residual> {
    let a = alpha.value();
    let c = core(rho, sigma, a, n, branch)?;
    let h = h_from_q(&c.polar, a, c.q)?;
    let sign = match kind {
        LocusKind::Ss => 1.0,
        LocusKind::Cpa => -1.0,
    };
    tilde_residual(&c.polar, a, h, sign)
}

/// Complex SS residual `S~_n` with `H = H_n(rho, sigma, alpha)`.
pub fn ss_residual(rho: f64, sigma: f64, alpha: LevyIndex, n: i32, branch: Branch) -> Result<Residual> {
    residual_for(LocusKind::Ss, rho, sigma, alpha, n, branch)
}

/// Complex CPA residual `C~_n`: `S~_n` with the exponential signs swapped.
pub fn cpa_residual(rho: f64, sigma: f64, alpha: LevyIndex, n: i32, branch: Branch) -> Result<Residual> {
    residual_for(LocusKind::Cpa, rho, sigma, alpha, n, branch)
}

/// Complex residual for the given kind.
pub fn locus_residual(kind: LocusKind, rho: f64, sigma: f64, alpha: LevyIndex, n: i32, branch: Branch) -> Result<Residual> {
    residual_for(kind, rho, sigma, alpha, n, branch)
}

/// All kernels at one point, using the SS residual.
pub fn locus_kernel(params: &LocusParams) -> Result<LocusKernel> {
    let a = params.alpha.value();
    let c = core(params.rho, params.sigma, a, params.n, params.branch)?;
    let h = h_from_q(&c.polar, a, c.q)?;
    let (_, q) = p_and_q(params.rho, params.sigma, params.alpha, h)?;
    let residual = tilde_residual(&c.polar, a, h, 1.0)?;
    Ok(LocusKernel {
        omega: c.omega,
        p: c.tau.sqrt().asinh(),
        q,
        tau: c.tau,
        q_branch: c.q,
        h,
        residual_s: residual.value,
        residual_scalar: c.tau.sqrt().asinh() - c.q * c.tan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_kernel::principal_power;
    use proptest::prelude::*;

    fn a(x: f64) -> LevyIndex {
        LevyIndex::new(x).unwrap()
    }

    fn z(rho: f64, sigma: f64) -> Complex64 {
        Complex64::new(1.0 - rho, -sigma)
    }

    #[test]
    fn omega_examples() {
        let w = omega(0.3, 0.7, LevyIndex::two()).unwrap();
        assert!((w - z(0.3, 0.7)).norm() < 1e-15);
        assert!((omega(0.0, 0.0, a(1.3)).unwrap() - 1.0).norm() < 1e-15);
        let w = omega(0.0, 1.0, a(1.5)).unwrap();
        assert!((w - Complex64::new(1.091_123_635_971_721, -0.629_960_524_947_436_6)).norm() < 1e-14, "{w}");
        assert_eq!(omega(1.0, 0.0, a(1.5)), Err(Error::SingularPoint));
    }

    #[test]
    fn tau_examples() {
        // real Omega = w in (0, 1): ratio (1+w)/(1-w) > 1, tau = 4w/(1-w)^2
        let t = tau(0.5, 0.0, LevyIndex::two()).unwrap();
        assert!((t - 8.0).abs() < 1e-13, "{t}");
        // real Omega = w in (-1, 0) (cut side at alpha = 2): ratio in (0, 1), tau = 0
        let t = tau(1.5, 0.0, LevyIndex::two()).unwrap();
        assert!(t.abs() < 1e-30, "{t}");
        // real Omega > 1 (rho < 0): |ratio| > 1 gives tau = ratio^2 - 1
        let t = tau(-1.0, 0.0, LevyIndex::two()).unwrap();
        let ratio: f64 = (1.0 - 4.0) / 1.0;
        assert!((t - (ratio * ratio - 1.0)).abs() < 1e-14);
        let t = tau(0.5, 0.5, LevyIndex::two()).unwrap();
        assert!((t - 4.828_427_124_746_19).abs() < 1e-13, "{t}");
        assert!(tau(0.0, 0.0, LevyIndex::two()).is_err());
    }

    #[test]
    fn p_and_q_examples() {
        let (p, q) = p_and_q(0.4, 0.0, a(1.6), 1.5).unwrap();
        assert_eq!(p, 0.0);
        assert!((q - 3.0 * 0.6f64.powf(1.0 / 1.6)).abs() < 1e-15);

        let (p, q) = p_and_q(1.0, 1.0, a(1.7), 2.0).unwrap();
        assert!((p - 4.0 * (PI / 3.4).sin()).abs() < 1e-15);
        assert!((q - 4.0 * (PI / 3.4).cos()).abs() < 1e-15);

        let (p, q) = p_and_q(0.0, 1.0, LevyIndex::two(), 1.0).unwrap();
        assert!((p - 0.910_179_721_124_454_7).abs() < 1e-14, "{p}");
        assert!((q - 2.197_368_226_935_62).abs() < 1e-14, "{q}");
    }

    #[test]
    fn q_branch_examples() {
        // sigma -> 0, rho = 1 - eps: Omega -> 0, ratio -> 1, tau -> 0
        let q = q_branch(1.0 - 1e-9, 0.0, LevyIndex::two(), 0, Branch::Plus).unwrap();
        assert!(q.abs() < 1e-4);
        let q = q_branch(0.5, 0.5, LevyIndex::two(), 2, Branch::Minus).unwrap();
        assert!((q - 5.139_467_566_777_166).abs() < 1e-12, "{q}");
    }

    #[test]
    fn h_branch_examples() {
        let q = q_branch(0.3, 0.0, a(1.4), 3, Branch::Minus).unwrap();
        let h = h_branch(0.3, 0.0, a(1.4), 3, Branch::Minus).unwrap();
        assert!((h - q / (2.0 * 0.7f64.powf(1.0 / 1.4))).abs() < 1e-14);
        let h = h_branch(0.5, 0.5, LevyIndex::two(), 2, Branch::Minus).unwrap();
        assert!((h - 3.307_731_788_972_423).abs() < 1e-12, "{h}");
    }

    #[test]
    fn no_zero_on_real_axis_below_one() {
        // theta = 0 leaves asinh(sqrt(tau)) with tau = 4 Omega / (1 - Omega)^2 > 0
        for rho in [-2.0, -0.5, 0.3, 0.5, 0.9] {
            for alpha in [1.2, 1.5, 2.0] {
                let w = omega(rho, 0.0, a(alpha)).unwrap().re;
                let s = ss_scalar(rho, 0.0, a(alpha), 2, Branch::Minus).unwrap();
                let expect = (4.0 * w / ((1.0 - w) * (1.0 - w))).sqrt().asinh();
                assert!((s - expect).abs() < 1e-12 * expect.max(1.0), "{rho} {alpha}");
                assert!(s > 0.0);
            }
        }
    }

    #[test]
    fn single_sign_change_along_sigma() {
        let f = |s: f64| ss_scalar(0.0, s, LevyIndex::two(), 2, Branch::Minus).unwrap();
        let grid: Vec<f64> = (0..=10_000).map(|i| 0.01 + 0.99 * i as f64 / 10_000.0).collect();
        let changes = grid.windows(2).filter(|w| (f(w[0]) < 0.0) != (f(w[1]) < 0.0)).count();
        assert_eq!(changes, 1);
    }

    #[test]
    fn frozen_crossing_at_rho_zero() {
        let f = |s: f64| ss_scalar(0.0, s, LevyIndex::two(), 2, Branch::Minus).unwrap();
        let brackets = crate::complex_kernel::bracket_scan(f, 0.01, 1.0, 1000);
        assert_eq!(brackets.len(), 1);
        let root = crate::complex_kernel::refine_root(f, brackets[0], 1e-14).unwrap();
        assert!((root - 0.879_023_806_233_302_3).abs() < 1e-12, "{root}");
        let res = ss_residual(0.0, root, LevyIndex::two(), 2, Branch::Minus).unwrap();
        assert!(res.relative() < 1e-8, "{}", res.relative());
    }

    /// Standard-QM form written directly in `sqrt(z)`.
    fn quadratic_reduction(rho: f64, sigma: f64, h: f64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let s = z(rho, sigma).sqrt();
        let e = (Complex64::new(0.0, -2.0 * h) * s).exp();
        e * (one + s) * (one + s) - (one - s) * (one - s) / e
    }

    #[test]
    fn alpha_two_matches_quadratic_reduction() {
        for i in 0..20 {
            for j in 0..20 {
                let rho = -2.0 + 2.9 * i as f64 / 19.0;
                let sigma = 0.05 + 2.0 * j as f64 / 19.0;
                for n in 1..=3 {
                    let h = h_branch(rho, sigma, LevyIndex::two(), n, Branch::Minus).unwrap();
                    let ours = ss_residual(rho, sigma, LevyIndex::two(), n, Branch::Minus).unwrap();
                    let other = quadratic_reduction(rho, sigma, h);
                    assert!((ours.value - other).norm() <= 1e-12 * ours.scale.max(1.0), "{rho} {sigma} {n}");
                }
            }
        }
    }

    #[test]
    fn unsquared_reduction_does_not_vanish_on_locus() {
        let one = Complex64::new(1.0, 0.0);
        let sigma = 0.879_023_806_233_302_3;
        let h = h_branch(0.0, sigma, LevyIndex::two(), 2, Branch::Minus).unwrap();
        let s = z(0.0, sigma).sqrt();
        let e = (Complex64::new(0.0, -2.0 * h) * s).exp();
        let t1 = e * (one + s);
        let t2 = (one - s) / e;
        assert!((t1 - t2).norm() / (t1.norm() + t2.norm()) > 1e-2);
        assert!(quadratic_reduction(0.0, sigma, h).norm() < 1e-10);
    }

    #[test]
    fn plus_branch_stays_away_from_zero() {
        let mut worst = f64::INFINITY;
        for i in 0..50 {
            for j in 0..50 {
                let rho = -1.0 + 1.95 * i as f64 / 49.0;
                let sigma = 0.01 + 1.99 * j as f64 / 49.0;
                for n in 1..=4 {
                    if let Ok(r) = ss_residual(rho, sigma, LevyIndex::two(), n, Branch::Plus) {
                        worst = worst.min(r.relative());
                    }
                }
            }
        }
        assert!(worst > 1e-3, "{worst}");
    }

    #[test]
    fn cpa_scalar_mirrors_ss_scalar() {
        for (rho, sigma) in [(0.2, 0.3), (-1.0, 1.5), (0.9, 0.01)] {
            let s = ss_scalar(rho, sigma, a(1.7), 3, Branch::Minus).unwrap();
            let c = cpa_scalar(rho, -sigma, a(1.7), 3, Branch::Minus).unwrap();
            assert_eq!(s, c);
        }
    }

    #[test]
    fn kernel_bundle_is_consistent() {
        let p = LocusParams::new(0.2, 0.4, a(1.6), 2, Branch::Minus).unwrap();
        let k = locus_kernel(&p).unwrap();
        assert!((k.q - k.q_branch).abs() < 1e-12);
        assert!(k.tau >= 0.0 && k.p >= 0.0);
        assert!(k.h > 0.0);
        assert!(LocusParams::new(1.0, 0.0, a(1.6), 2, Branch::Minus).is_err());
        assert!(LocusParams::new(0.0, 0.0, a(1.6), 2, Branch::Minus).is_err());
    }

    proptest! {
        #[test]
        fn bridge_identity(rho in -5.0f64..3.0, sigma in -5.0f64..5.0, alpha in 1.0001f64..=2.0, kd in 0.01f64..20.0) {
            prop_assume!((rho - 1.0).hypot(sigma) > 1e-6 && sigma != 0.0);
            let (p, q) = p_and_q(rho, sigma, a(alpha), kd).unwrap();
            let expect = 2.0 * kd * principal_power(z(rho, sigma), 1.0 / alpha).unwrap();
            prop_assert!((Complex64::new(q, -p) - expect).norm() <= 1e-12 * expect.norm().max(1.0));
        }

        #[test]
        fn omega_consistency(rho in -5.0f64..3.0, sigma in -5.0f64..5.0, alpha in 1.0001f64..=2.0) {
            prop_assume!((rho - 1.0).hypot(sigma) > 1e-6 && sigma != 0.0);
            let w = omega(rho, sigma, a(alpha)).unwrap();
            let expect = principal_power(z(rho, sigma), 2.0 * (alpha - 1.0) / alpha).unwrap();
            prop_assert!((w - expect).norm() <= 1e-13 * expect.norm().max(1.0));
            let one = Complex64::new(1.0, 0.0);
            prop_assume!((one - w).norm_sqr() > 1e-6);
            let ratio = (one + w) / (one - w);
            let denom = (one - w).norm_sqr();
            let scale = ratio.norm().max(1.0);
            prop_assert!((ratio.re - (1.0 - w.norm_sqr()) / denom).abs() <= 1e-13 * scale);
            prop_assert!((ratio.im - 2.0 * w.im / denom).abs() <= 1e-13 * scale);
        }

        #[test]
        fn conjugation_symmetry(rho in -5.0f64..3.0, sigma in 1e-4f64..5.0, alpha in 1.0001f64..=2.0) {
            prop_assume!((rho - 1.0).hypot(sigma) > 1e-3);
            let t1 = tau(rho, sigma, a(alpha));
            let t2 = tau(rho, -sigma, a(alpha));
            if let (Ok(t1), Ok(t2)) = (t1, t2) {
                prop_assert!((t1 - t2).abs() <= 1e-13 * t1.max(1.0));
            }
            let w1 = omega(rho, sigma, a(alpha)).unwrap();
            let w2 = omega(rho, -sigma, a(alpha)).unwrap();
            prop_assert!((w2 - w1.conj()).norm() <= 1e-13 * w1.norm().max(1.0));
        }

        #[test]
        fn cpa_residual_mirrors_ss_residual(rho in -3.0f64..0.99, sigma in 1e-3f64..3.0, alpha in 1.01f64..=2.0, n in 1i32..6) {
            let s = ss_residual(rho, sigma, a(alpha), n, Branch::Minus);
            let c = cpa_residual(rho, -sigma, a(alpha), n, Branch::Minus);
            if let (Ok(s), Ok(c)) = (s, c) {
                prop_assert!((c.value.norm() - s.value.norm()).abs() <= 1e-10 * s.scale.max(1.0));
                prop_assert!((c.value - s.value.conj()).norm() <= 1e-10 * s.scale.max(1.0));
            }
        }
    }
}
