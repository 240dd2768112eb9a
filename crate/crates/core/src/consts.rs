//! Physical constants (CODATA 2018 exact SI values) and unit helpers.

use serde::{Deserialize, Serialize};

/// Elementary charge [C].
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Reduced Planck constant [J s].
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant [J/K].
pub const K_B: f64 = 1.380_649e-23;

/// Reference temperature at which stability factors are quoted [K].
pub const T_REF: f64 = 298.0;

/// One year of 365.25 days, in seconds.
pub const YEAR_S: f64 = 365.25 * 24.0 * 3600.0;

pub const NM: f64 = 1e-9;
pub const MT: f64 = 1e-3;
pub const NS: f64 = 1e-9;

/// Thermal voltage kT/q at the given temperature [V].
pub fn thermal_voltage(temperature: f64) -> f64 {
    K_B * temperature / E_CHARGE
}

/// Bundle of the constants used by the closed-form magnetics models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub e: f64,
    pub hbar: f64,
    pub k_b: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            e: E_CHARGE,
            hbar: HBAR,
            k_b: K_B,
        }
    }
}
