//! Transfer matrix of the complex rectangular barrier and the scattering
//! amplitudes derived from it.
//!
//! With `x = 2 kappa d` the diagonal elements are
//!
//! ```text
//! M11 = [cos x + i w+ sin x] e^{-2ikd}
//! M22 = [cos x - i w+ sin x] e^{+2ikd}
//! ```
//!
//! and `M12 = -M21 = -i w- sin x`, with `eta = (k/kappa)^{alpha-1}` and
//! `w-` as returned by [`eta_omega`]. That sign on the off-diagonal pair makes
//! `alpha = 2` coincide with the standard barrier matrix for amplitudes of
//! `e^{+ikx}` and `e^{-ikx}`; the diagonal does not depend on it.
//!
//! The diagonal is evaluated in the factored form
//! `cos x + i w+ sin x = [(eta+1)^2 e^{ix} - (eta-1)^2 e^{-ix}] / (4 eta)`,
//! which avoids cancelling two large exponentials.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::medium::{eta_omega, k_alpha, kappa_alpha, BarrierSpec, LevyIndex, UnitSystem};

/// Largest `|Im(2 kappa d)|` accepted before `e^{|Im x|}` is treated as overflow.
pub const EXP_GUARD: f64 = 700.0;

/// `|M22| < SS_SIGNAL_REL * max(|M11|, 1)` is reported as a spectral singularity.
pub const SS_SIGNAL_REL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferMatrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl TransferMatrix {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self { m11: one, m12: zero, m21: zero, m22: one }
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Magnitude of the larger of the two products entering [`Self::det`].
    pub fn det_scale(&self) -> f64 {
        (self.m11 * self.m22).norm().max((self.m12 * self.m21).norm())
    }

    /// Element-wise matrix product `self * rhs`.
    pub fn compose(&self, rhs: &TransferMatrix) -> TransferMatrix {
        TransferMatrix {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }

    pub fn max_abs_diff(&self, other: &TransferMatrix) -> f64 {
        [
            (self.m11 - other.m11).norm(),
            (self.m12 - other.m12).norm(),
            (self.m21 - other.m21).norm(),
            (self.m22 - other.m22).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Transfer matrix at energy `energy` for the barrier.
pub fn transfer_matrix(
    energy: f64,
    barrier: &BarrierSpec,
    alpha: LevyIndex,
    units: &UnitSystem,
) -> Result<TransferMatrix> {
    let potential = barrier.potential();
    if potential.re == 0.0 && potential.im == 0.0 {
        k_alpha(energy, alpha, units)?;
        return Ok(TransferMatrix::identity());
    }
    let k = k_alpha(energy, alpha, units)?;
    let kappa = kappa_alpha(energy, potential, alpha, units)?;
    let eo = eta_omega(k, kappa, alpha)?;
    let d = barrier.d;

    let x = 2.0 * kappa * d;
    if x.im.abs() > EXP_GUARD {
        return Err(Error::Overflow(x.im.abs()));
    }
    let i = Complex64::i();
    let e_in = (i * x).exp();
    let e_out = (-i * x).exp();
    let one = Complex64::new(1.0, 0.0);
    let plus_sq = (eo.eta + one) * (eo.eta + one);
    let minus_sq = (eo.eta - one) * (eo.eta - one);
    let quarter_inv_eta = 1.0 / (4.0 * eo.eta);
    let phase = Complex64::from_polar(1.0, 2.0 * k * d);

    let m11 = (plus_sq * e_in - minus_sq * e_out) * quarter_inv_eta * phase.conj();
    let m22 = (plus_sq * e_out - minus_sq * e_in) * quarter_inv_eta * phase;
    let sin_x = (e_in - e_out) / (2.0 * i);
    let m12 = -i * eo.omega_minus * sin_x;
    let m21 = -m12;
    Ok(TransferMatrix { m11, m12, m21, m22 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringAmplitudes {
    pub t: Complex64,
    pub r_left: Complex64,
    pub r_right: Complex64,
    pub transmission: f64,
    pub reflection_left: f64,
    pub reflection_right: f64,
}

/// Result of [`amplitudes`]: either finite amplitudes or the divergent case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ScatteringOutcome {
    Regular(ScatteringAmplitudes),
    /// `M22` vanished to within the signal threshold: T and R diverge.
    SpectralSingularity { m22_relative: f64 },
}

impl ScatteringOutcome {
    pub fn regular(&self) -> Option<&ScatteringAmplitudes> {
        match self {
            ScatteringOutcome::Regular(a) => Some(a),
            ScatteringOutcome::SpectralSingularity { .. } => None,
        }
    }
}

/// `t = 1/M22`, `r_left = -M21/M22`, `r_right = M12/M22`.
pub fn amplitudes(m: &TransferMatrix) -> ScatteringOutcome {
    let m22_relative = m.m22.norm() / m.m11.norm().max(1.0);
    if m22_relative < SS_SIGNAL_REL {
        return ScatteringOutcome::SpectralSingularity { m22_relative };
    }
    let t = m.m22.inv();
    let r_left = -m.m21 / m.m22;
    let r_right = m.m12 / m.m22;
    ScatteringOutcome::Regular(ScatteringAmplitudes {
        t,
        r_left,
        r_right,
        transmission: t.norm_sqr(),
        reflection_left: r_left.norm_sqr(),
        reflection_right: r_right.norm_sqr(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowStatus {
    Ok {
        transmission: f64,
        reflection_left: f64,
        reflection_right: f64,
    },
    SpectralSingularity {
        m22_relative: f64,
    },
    Error {
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub energy: f64,
    #[serde(flatten)]
    pub status: RowStatus,
}

/// Transmission and reflection coefficients along an energy grid.
///
/// Per-point failures become [`RowStatus::Error`] rows; the scan itself only
/// fails on an invalid grid. Rows come back in grid order.
pub fn scan_coefficients(
    energies: &[f64],
    barrier: &BarrierSpec,
    alpha: LevyIndex,
    units: &UnitSystem,
) -> Result<Vec<CoefficientRow>> {
    if energies.is_empty() {
        return Err(Error::InvalidParameter("empty energy grid".into()));
    }
    if energies.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter("energy grid must be strictly ascending".into()));
    }
    Ok(energies
        .par_iter()
        .map(|&energy| {
            let status = match transfer_matrix(energy, barrier, alpha, units) {
                Ok(m) => match amplitudes(&m) {
                    ScatteringOutcome::Regular(a) => RowStatus::Ok {
                        transmission: a.transmission,
                        reflection_left: a.reflection_left,
                        reflection_right: a.reflection_right,
                    },
                    ScatteringOutcome::SpectralSingularity { m22_relative } => {
                        RowStatus::SpectralSingularity { m22_relative }
                    }
                },
                Err(e) => RowStatus::Error { message: e.to_string() },
            };
            CoefficientRow { energy, status }
        })
        .collect())
}

/// `n` equally spaced energies on `[emin, emax]`.
pub fn linear_grid(emin: f64, emax: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![emin],
        _ => {
            let h = (emax - emin) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { emax } else { emin + i as f64 * h })
                .collect()
        }
    }
}
