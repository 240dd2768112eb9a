//! Charge-based IGZO-FET model.
//!
//! The channel current follows the EKV interpolation
//! `I = W·i_spec·[F((vp - vs)/Ut) - F((vp - vd)/Ut)]` with
//! `F(x) = ln²(1 + e^{x/2})` and pinch-off voltage `vp = (vg - vt_eff)/n`,
//! which gives an exponential subthreshold branch of the configured swing
//! and a square-law drift branch. Drain-induced barrier lowering lowers the
//! threshold by `dibl·|vds|`. Above threshold the channel mobility grows
//! as `(1 + vov/1 V)^γ` (power-law mobility of disordered oxide channels),
//! where `vov` is the softplus-smoothed gate overdrive from the source side.
//! The drift branch is capped smoothly at `i_on_per_um·W`. The threshold only ever enters as `vg - vt`, so a shift
//! of `v_t_lin` translates the whole curve family rigidly along `vg`.

use serde::{Deserialize, Serialize};

use super::finfet::FetEval;
use crate::consts::{thermal_voltage, T_REF};
use crate::error::{ensure_positive, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IgzoFetModel {
    pub v_t_lin: f64,
    /// Subthreshold swing [V/decade].
    pub subthreshold_swing: f64,
    /// Specific current per unit width [A/µm].
    pub i_spec_per_um: f64,
    /// Drive ceiling per unit width [A/µm].
    pub i_on_per_um: f64,
    /// Threshold lowering per volt of |vds| [V/V].
    pub dibl: f64,
    pub width_um: f64,
    pub channel_length_nm: f64,
    /// Sharpness of the transition into the drive ceiling.
    pub smoothing: f64,
    /// Exponent γ of the overdrive-dependent mobility factor.
    pub mobility_exponent: f64,
}

/// Overdrive scale of the mobility factor [V].
const V_MU: f64 = 1.0;

fn softplus(y: f64) -> f64 {
    y.max(0.0) + (-y.abs()).exp().ln_1p()
}

fn sigmoid(y: f64) -> f64 {
    if y >= 0.0 {
        1.0 / (1.0 + (-y).exp())
    } else {
        let e = y.exp();
        e / (1.0 + e)
    }
}

/// EKV interpolation function and its derivative.
fn ekv(x: f64) -> (f64, f64) {
    let sp = softplus(0.5 * x);
    (sp * sp, sp * sigmoid(0.5 * x))
}

impl IgzoFetModel {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("igzo.subthreshold_swing", self.subthreshold_swing)?;
        ensure_positive("igzo.i_spec_per_um", self.i_spec_per_um)?;
        ensure_positive("igzo.i_on_per_um", self.i_on_per_um)?;
        ensure_positive("igzo.width_um", self.width_um)?;
        ensure_positive("igzo.channel_length_nm", self.channel_length_nm)?;
        ensure_positive("igzo.smoothing", self.smoothing)?;
        if !(self.mobility_exponent >= 0.0 && self.mobility_exponent.is_finite()) {
            return Err(Error::param("igzo.mobility_exponent", "must be >= 0"));
        }
        if !(self.dibl >= 0.0 && self.dibl < 1.0) {
            return Err(Error::param("igzo.dibl", "must lie in [0, 1)"));
        }
        let n = self.slope_factor();
        if n < 1.0 {
            return Err(Error::param(
                "igzo.subthreshold_swing",
                format!("below the thermal limit (slope factor {n:.3})"),
            ));
        }
        Ok(())
    }

    pub fn slope_factor(&self) -> f64 {
        self.subthreshold_swing / (thermal_voltage(T_REF) * std::f64::consts::LN_10)
    }

    pub fn with_vt_shift(&self, shift: f64) -> Self {
        Self {
            v_t_lin: self.v_t_lin + shift,
            ..self.clone()
        }
    }

    pub fn with_width(&self, width_um: f64) -> Self {
        Self {
            width_um,
            ..self.clone()
        }
    }

    pub fn eval(&self, vg: f64, vd: f64, vs: f64) -> FetEval {
        let ut = thermal_voltage(T_REF);
        let n = self.slope_factor();
        let vds = vd - vs;
        let sgn = if vds > 0.0 {
            1.0
        } else if vds < 0.0 {
            -1.0
        } else {
            0.0
        };
        let vp = (vg - self.v_t_lin + self.dibl * vds.abs()) / n;
        let scale = self.width_um * self.i_spec_per_um;
        let (fa, dfa) = ekv((vp - vs) / ut);
        let (fb, dfb) = ekv((vp - vd) / ut);
        let i0 = scale * (fa - fb);
        let di_dvp = scale / ut * (dfa - dfb);
        let dvp_dvds = self.dibl * sgn / n;
        let mut di_dvg = di_dvp / n;
        let mut di_dvd = scale / ut * dfb + di_dvp * dvp_dvds;
        let mut di_dvs = -scale / ut * dfa - di_dvp * dvp_dvds;

        // Mobility factor, referenced to the lower (source-side) terminal.
        let nut = n * ut;
        let x = (vg - self.v_t_lin - vs.min(vd)) / nut;
        let ov = nut * softplus(x);
        let g = self.mobility_exponent;
        let mu = (1.0 + ov / V_MU).powf(g);
        let dmu = g * (1.0 + ov / V_MU).powf(g - 1.0) / V_MU * sigmoid(x);
        let (dmu_dvd, dmu_dvs) = if vs <= vd { (0.0, -dmu) } else { (-dmu, 0.0) };
        let i = i0 * mu;
        di_dvg = di_dvg * mu + i0 * dmu;
        di_dvd = di_dvd * mu + i0 * dmu_dvd;
        di_dvs = di_dvs * mu + i0 * dmu_dvs;

        let c = self.i_on_per_um * self.width_um;
        let m = self.smoothing;
        let base = c.powf(m) + i.abs().powf(m);
        let k = c / base.powf(1.0 / m);
        let dk = c.powf(m + 1.0) * base.powf(-1.0 - 1.0 / m);
        FetEval {
            i: i * k,
            di_dvg: dk * di_dvg,
            di_dvd: dk * di_dvd,
            di_dvs: dk * di_dvs,
        }
    }

    /// Current per unit width at (vgs, vds) [A/µm].
    pub fn current_density(&self, v_gs: f64, v_ds: f64) -> f64 {
        self.eval(v_gs, v_ds, 0.0).i / self.width_um
    }
}

pub fn igzo_current(model: &IgzoFetModel, v_gs: f64, v_ds: f64) -> f64 {
    model.eval(v_gs, v_ds, 0.0).i
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn m() -> IgzoFetModel {
        IgzoFetModel {
            v_t_lin: -0.06,
            subthreshold_swing: 0.12,
            i_spec_per_um: 2e-7,
            i_on_per_um: 5e-5,
            dibl: 0.1,
            width_um: 0.1,
            channel_length_nm: 25.0,
            smoothing: 2.0,
            mobility_exponent: 0.8,
        }
    }

    #[test]
    fn zero_at_zero_vds() {
        for vg in [-1.0, 0.0, 0.5, 2.0] {
            assert_eq!(igzo_current(&m(), vg, 0.0), 0.0);
        }
    }

    #[test]
    fn rigid_threshold_translation() {
        let a = m();
        let b = a.with_vt_shift(0.12);
        for vg in [-0.5, 0.0, 0.3, 1.0, 1.8] {
            for vds in [0.05, 0.6, 1.8] {
                assert_relative_eq!(
                    igzo_current(&b, vg, vds),
                    igzo_current(&a, vg - 0.12, vds),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn subthreshold_swing_is_honored() {
        let f = IgzoFetModel {
            dibl: 0.0,
            i_on_per_um: 1.0,
            ..m()
        };
        let i1 = igzo_current(&f, -1.2, 1.0);
        let i2 = igzo_current(&f, -1.2 + f.subthreshold_swing, 1.0);
        assert_relative_eq!(i2 / i1, 10.0, max_relative = 1e-3);
    }

    #[test]
    fn drive_ceiling() {
        let f = m();
        assert!(igzo_current(&f, 10.0, 5.0) < 5e-5 * 0.1);
    }

    #[test]
    fn analytic_derivatives() {
        let f = m();
        let h = 1e-7;
        for &(vg, vd, vs) in &[(1.8, 0.3, 0.0), (0.0, 1.2, 0.1), (0.2, 0.05, 0.3), (1.0, 0.7, 0.69)] {
            let e = f.eval(vg, vd, vs);
            let c = |dg: f64, dd: f64, ds: f64| {
                (f.eval(vg + dg, vd + dd, vs + ds).i - f.eval(vg - dg, vd - dd, vs - ds).i) / (2.0 * h)
            };
            assert_relative_eq!(e.di_dvg, c(h, 0.0, 0.0), epsilon = 1e-12, max_relative = 1e-5);
            assert_relative_eq!(e.di_dvd, c(0.0, h, 0.0), epsilon = 1e-12, max_relative = 1e-5);
            assert_relative_eq!(e.di_dvs, c(0.0, 0.0, h), epsilon = 1e-12, max_relative = 1e-5);
        }
    }
}
