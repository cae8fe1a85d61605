//! Unit conventions: lengths in nm, energies in eV, wave numbers in nm⁻¹.
//!
//! Every conversion between energies and squared wave numbers goes through
//! [`HBAR2_OVER_2M`], i.e. the free-electron mass is used on every edge.

use crate::error::{Error, Result};

/// ħ²/2mₑ in eV·nm².
pub const HBAR2_OVER_2M: f64 = 0.038_099_8;

/// Electron wave number in nm⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WaveNumber(pub f64);

impl WaveNumber {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<f64> for WaveNumber {
    fn from(k: f64) -> Self {
        WaveNumber(k)
    }
}

pub fn ev_to_k(energy_ev: f64) -> Result<WaveNumber> {
    if energy_ev <= 0.0 || !energy_ev.is_finite() {
        return Err(Error::NegativeEnergy(energy_ev));
    }
    Ok(WaveNumber((energy_ev / HBAR2_OVER_2M).sqrt()))
}

pub fn k_to_ev(k: WaveNumber) -> f64 {
    HBAR2_OVER_2M * k.0 * k.0
}

/// Potential energy in eV to the squared-wave-number scale V = U/(ħ²/2m), nm⁻².
pub fn ev_to_inverse_nm2(energy_ev: f64) -> f64 {
    energy_ev / HBAR2_OVER_2M
}

/// Energy of a bound state with decay constant κ (nm⁻¹): E = −(ħ²/2m)κ².
pub fn kappa_to_ev(kappa: f64) -> f64 {
    -HBAR2_OVER_2M * kappa * kappa
}
