//! Unit system and the fractional plane-wave dispersion.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::complex_kernel::principal_power;
use crate::error::{Error, Result};

/// Relative threshold below which `E - V` (or `kappa`) counts as zero.
pub const DEGENERACY_EPS: f64 = 1e-12;

/// Reduced Planck constant, J s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Electron rest mass, kg.
pub const ELECTRON_MASS_SI: f64 = 9.109_383_701_5e-31;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT_SI: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum UnitMode {
    /// hbar = 1, 2m = 1.
    #[default]
    Natural,
    /// SI units.
    Physical,
}

impl fmt::Display for UnitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitMode::Natural => f.write_str("natural"),
            UnitMode::Physical => f.write_str("physical"),
        }
    }
}

/// Action, mass and characteristic-velocity scales.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    hbar: f64,
    mass: f64,
    u: f64,
    mode: UnitMode,
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::natural()
    }
}

impl UnitSystem {
    /// hbar = 1, m = 1/2, u = 1.
    pub fn natural() -> Self {
        Self { hbar: 1.0, mass: 0.5, u: 1.0, mode: UnitMode::Natural }
    }

    /// Natural units with a different characteristic velocity.
    pub fn natural_with_velocity(u: f64) -> Result<Self> {
        check_positive("u", u)?;
        Ok(Self { u, ..Self::natural() })
    }

    /// SI electron with u = 1e-5 c.
    pub fn physical() -> Self {
        Self {
            hbar: HBAR_SI,
            mass: ELECTRON_MASS_SI,
            u: 1.0e-5 * SPEED_OF_LIGHT_SI,
            mode: UnitMode::Physical,
        }
    }

    /// Arbitrary physical scales. Natural mode pins hbar and mass, so only
    /// `u` is taken from the arguments in that case.
    pub fn new(mode: UnitMode, hbar: f64, mass: f64, u: f64) -> Result<Self> {
        match mode {
            UnitMode::Natural => Self::natural_with_velocity(u),
            UnitMode::Physical => {
                check_positive("hbar", hbar)?;
                check_positive("mass", mass)?;
                check_positive("u", u)?;
                Ok(Self { hbar, mass, u, mode })
            }
        }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn mode(&self) -> UnitMode {
        self.mode
    }
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {value}")))
    }
}

/// Lévy index, restricted to `1 < alpha <= 2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct LevyIndex(f64);

impl LevyIndex {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 1.0 && alpha <= 2.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidParameter(format!("Levy index must satisfy 1 < alpha <= 2, got {alpha}")))
        }
    }

    /// The standard-QM value.
    pub fn two() -> Self {
        Self(2.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for LevyIndex {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<LevyIndex> for f64 {
    fn from(a: LevyIndex) -> f64 {
        a.0
    }
}

impl fmt::Display for LevyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Complex rectangular barrier `V_r + i V_i` on `(-d, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierSpec {
    pub v_r: f64,
    pub v_i: f64,
    pub d: f64,
}

impl BarrierSpec {
    pub fn new(v_r: f64, v_i: f64, d: f64) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidParameter(format!("barrier half-width must be positive, got {d}")));
        }
        if !v_r.is_finite() || !v_i.is_finite() {
            return Err(Error::InvalidParameter("barrier height must be finite".into()));
        }
        Ok(Self { v_r, v_i, d })
    }

    pub fn potential(&self) -> Complex64 {
        Complex64::new(self.v_r, self.v_i)
    }
}

/// `D_alpha = u^(2 - alpha) / (alpha m^(alpha - 1))`.
pub fn diffusion_coefficient(units: &UnitSystem, alpha: LevyIndex) -> f64 {
    diffusion_formula(units.u, units.mass, alpha.value())
}

fn diffusion_formula(u: f64, mass: f64, alpha: f64) -> f64 {
    u.powf(2.0 - alpha) / (alpha * mass.powf(alpha - 1.0))
}

fn energy_scale(units: &UnitSystem, alpha: LevyIndex) -> f64 {
    diffusion_coefficient(units, alpha) * units.hbar.powf(alpha.value())
}

/// Outside wave number `(E / (D_alpha hbar^alpha))^(1/alpha)`.
pub fn k_alpha(energy: f64, alpha: LevyIndex, units: &UnitSystem) -> Result<f64> {
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::Domain(format!("energy must be positive, got {energy}")));
    }
    Ok((energy / energy_scale(units, alpha)).powf(1.0 / alpha.value()))
}

/// Inverse of [`k_alpha`]: `E = D_alpha hbar^alpha k^alpha`.
pub fn energy_from_k(k: f64, alpha: LevyIndex, units: &UnitSystem) -> f64 {
    energy_scale(units, alpha) * k.powf(alpha.value())
}

/// Inside wave number, principal branch of `((E - V) / (D_alpha hbar^alpha))^(1/alpha)`.
pub fn kappa_alpha(energy: f64, potential: Complex64, alpha: LevyIndex, units: &UnitSystem) -> Result<Complex64> {
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::Domain(format!("energy must be positive, got {energy}")));
    }
    let gap = Complex64::new(energy, 0.0) - potential;
    if gap.norm() < DEGENERACY_EPS * energy {
        return Err(Error::DegenerateBarrier { gap: gap.norm(), threshold: DEGENERACY_EPS });
    }
    principal_power(gap / energy_scale(units, alpha), 1.0 / alpha.value())
}

/// The mismatch factor and the two combinations that enter the transfer matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaOmega {
    pub eta: Complex64,
    pub omega_plus: Complex64,
    pub omega_minus: Complex64,
}

/// `eta = (k / kappa)^(alpha - 1)`, `omega_pm = (eta^2 +- 1) / (2 eta)`.
///
/// `omega_minus` is evaluated as `(eta - 1)(eta + 1) / (2 eta)` so that it
/// keeps full relative accuracy when `eta` is close to one.
pub fn eta_omega(k: f64, kappa: Complex64, alpha: LevyIndex) -> Result<EtaOmega> {
    if kappa.norm() < DEGENERACY_EPS * k.abs() || kappa.norm() == 0.0 {
        return Err(Error::DegenerateBarrier { gap: kappa.norm(), threshold: DEGENERACY_EPS });
    }
    let eta = principal_power(Complex64::new(k, 0.0) / kappa, alpha.value() - 1.0)?;
    let one = Complex64::new(1.0, 0.0);
    let omega_plus = (eta * eta + one) / (2.0 * eta);
    let omega_minus = (eta - one) * (eta + one) / (2.0 * eta);
    Ok(EtaOmega { eta, omega_plus, omega_minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(x: f64) -> LevyIndex {
        LevyIndex::new(x).unwrap()
    }

    #[test]
    fn levy_index_bounds() {
        assert!(LevyIndex::new(1.0).is_err());
        assert!(LevyIndex::new(2.0).is_ok());
        assert!(LevyIndex::new(2.0000001).is_err());
        assert!(LevyIndex::new(f64::NAN).is_err());
    }

    #[test]
    fn natural_units_pin_hbar_and_mass() {
        let u = UnitSystem::new(UnitMode::Natural, 7.0, 3.0, 2.0).unwrap();
        assert_eq!(u.hbar(), 1.0);
        assert_eq!(u.mass(), 0.5);
        assert_eq!(u.u(), 2.0);
        assert!(UnitSystem::new(UnitMode::Physical, -1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn diffusion_examples() {
        let nat = UnitSystem::natural();
        assert!((diffusion_coefficient(&nat, LevyIndex::two()) - 1.0).abs() < 1e-15);
        let u5 = UnitSystem::natural_with_velocity(5.0).unwrap();
        assert!((diffusion_coefficient(&u5, LevyIndex::two()) - 1.0).abs() < 1e-15);

        // edge of the formula, outside the admissible Levy range
        assert_eq!(diffusion_formula(3.0, 1.0, 1.0), 3.0);

        let d = diffusion_coefficient(&nat, a(1.5));
        assert!((d - 0.9428090415820634).abs() < 1e-15);
    }

    #[test]
    fn k_alpha_examples() {
        let nat = UnitSystem::natural();
        assert!((k_alpha(4.0, LevyIndex::two(), &nat).unwrap() - 2.0).abs() < 1e-15);

        // D_1.5 = 1 needs u^0.5 / (1.5 m^0.5) = 1; with m = 1/2 that is u = 1.125
        let u = UnitSystem::natural_with_velocity(1.125).unwrap();
        assert!((diffusion_coefficient(&u, a(1.5)) - 1.0).abs() < 1e-14);
        assert!((k_alpha(8.0, a(1.5), &u).unwrap() - 4.0).abs() < 1e-13);

        let k = k_alpha(1.0, a(1.8), &nat).unwrap();
        assert!((k - 1.018_654_596_505_382).abs() < 1e-14, "{k}");
        assert!(k_alpha(0.0, a(1.8), &nat).is_err());
        assert!(k_alpha(-1.0, a(1.8), &nat).is_err());
    }

    #[test]
    fn kappa_examples() {
        let nat = UnitSystem::natural();
        let two = LevyIndex::two();
        let k = k_alpha(3.0, a(1.3), &nat).unwrap();
        let kap = kappa_alpha(3.0, Complex64::new(0.0, 0.0), a(1.3), &nat).unwrap();
        assert!((kap - Complex64::new(k, 0.0)).norm() < 1e-15);

        let kap = kappa_alpha(1.0, Complex64::new(2.0, 0.0), two, &nat).unwrap();
        assert!((kap - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        let kap = kappa_alpha(1.0, Complex64::new(1.0, 1.0), two, &nat).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((kap - Complex64::new(h, -h)).norm() < 1e-15);

        assert!(matches!(
            kappa_alpha(1.0, Complex64::new(1.0, 0.0), two, &nat),
            Err(Error::DegenerateBarrier { .. })
        ));
    }

    #[test]
    fn eta_omega_examples() {
        let r = eta_omega(2.0, Complex64::new(2.0, 0.0), a(1.7)).unwrap();
        assert!((r.eta - 1.0).norm() < 1e-15);
        assert!((r.omega_plus - 1.0).norm() < 1e-15);
        assert!(r.omega_minus.norm() < 1e-15);

        let r = eta_omega(1.0, Complex64::new(0.0, 1.0), LevyIndex::two()).unwrap();
        assert!((r.eta - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!(r.omega_plus.norm() < 1e-15);
        assert!((r.omega_minus - Complex64::new(0.0, -1.0)).norm() < 1e-15);

        assert!(eta_omega(1.0, Complex64::new(0.0, 0.0), a(1.5)).is_err());
    }

    #[test]
    fn alpha_two_is_square_root() {
        let nat = UnitSystem::natural();
        for e in [0.1, 1.0, 10.0, 100.0] {
            let k = k_alpha(e, LevyIndex::two(), &nat).unwrap();
            assert!((k - f64::sqrt(e)).abs() <= 1e-14 * f64::sqrt(e));
        }
    }

    proptest! {
        #[test]
        fn omega_identity(k in 0.01f64..10.0, re in -10.0f64..10.0, im in -10.0f64..10.0, alpha in 1.0001f64..=2.0) {
            let kappa = Complex64::new(re, im);
            prop_assume!(kappa.norm() > 1e-3);
            let r = eta_omega(k, kappa, a(alpha)).unwrap();
            let id = r.omega_plus * r.omega_plus - r.omega_minus * r.omega_minus;
            let scale = (r.omega_plus.norm_sqr()).max(1.0);
            prop_assert!((id - 1.0).norm() <= 1e-12 * scale);
        }

        #[test]
        fn unit_circle_eta(phi in -3.0f64..3.0) {
            let eta = Complex64::from_polar(1.0, phi);
            let one = Complex64::new(1.0, 0.0);
            let wp = (eta * eta + one) / (2.0 * eta);
            let wm = (eta - one) * (eta + one) / (2.0 * eta);
            prop_assert!((wp - phi.cos()).norm() < 1e-14);
            prop_assert!((wm - Complex64::new(0.0, phi.sin())).norm() < 1e-14);
        }

        #[test]
        fn k_alpha_monotone(e1 in 1e-3f64..100.0, de in 1e-6f64..10.0, alpha in 1.0001f64..=2.0) {
            let nat = UnitSystem::natural();
            let k1 = k_alpha(e1, a(alpha), &nat).unwrap();
            let k2 = k_alpha(e1 + de, a(alpha), &nat).unwrap();
            prop_assert!(k2 > k1);
        }

        #[test]
        fn kappa_conjugation(e in 0.01f64..10.0, vr in -5.0f64..5.0, vi in 1e-3f64..5.0, alpha in 1.0001f64..=2.0) {
            let nat = UnitSystem::natural();
            let v = Complex64::new(vr, vi);
            let k1 = kappa_alpha(e, v.conj(), a(alpha), &nat).unwrap();
            let k2 = kappa_alpha(e, v, a(alpha), &nat).unwrap().conj();
            prop_assert!((k1 - k2).norm() <= 1e-13 * k2.norm().max(1.0));
        }
    }
}
