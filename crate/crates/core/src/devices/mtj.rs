use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MtjState {
    P,
    AP,
}

/// Bias-independent MTJ resistor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MtjModel {
    /// Resistance-area product [Ω·µm²].
    pub ra: f64,
    /// Tunneling magnetoresistance [%].
    pub tmr: f64,
    /// Junction diameter [nm].
    pub d_mtj: f64,
    pub state: MtjState,
}

impl MtjModel {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("mtj.ra", self.ra)?;
        ensure_positive("mtj.d_mtj", self.d_mtj)?;
        if !(self.tmr >= 0.0) {
            return Err(crate::error::Error::param("mtj.tmr", "must be >= 0"));
        }
        Ok(())
    }

    pub fn r_p(&self) -> f64 {
        let r_um = 0.5 * self.d_mtj * 1e-3;
        self.ra / (std::f64::consts::PI * r_um * r_um)
    }

    pub fn r_ap(&self) -> f64 {
        self.r_p() * (1.0 + self.tmr / 100.0)
    }

    pub fn in_state(&self, state: MtjState) -> Self {
        Self { state, ..*self }
    }
}

pub fn mtj_resistance(model: &MtjModel) -> f64 {
    match model.state {
        MtjState::P => model.r_p(),
        MtjState::AP => model.r_ap(),
    }
}

/// TMR seen through a series selector resistance [%].
pub fn effective_tmr(r_p: f64, tmr: f64, r_sel: f64) -> f64 {
    if r_sel.is_infinite() {
        return 0.0;
    }
    tmr * r_p / (r_p + r_sel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn m(ra: f64, tmr: f64, state: MtjState) -> MtjModel {
        MtjModel {
            ra,
            tmr,
            d_mtj: 63.0,
            state,
        }
    }

    #[test]
    fn reference_resistances() {
        // 11 Ω·µm² over a disc of radius 31.5 nm.
        let hand = 11.0 / (std::f64::consts::PI * 0.0315 * 0.0315);
        assert_relative_eq!(mtj_resistance(&m(11.0, 86.0, MtjState::P)), hand, max_relative = 1e-14);
        assert!((hand - 3529.0).abs() < 1.0);
        assert_relative_eq!(
            mtj_resistance(&m(11.0, 86.0, MtjState::AP)),
            hand * 1.86,
            max_relative = 1e-14
        );
        assert_eq!(m(11.0, 0.0, MtjState::P).r_p(), m(11.0, 0.0, MtjState::AP).r_ap());
    }

    #[test]
    fn dilution_limits() {
        assert_eq!(effective_tmr(5e3, 86.0, 0.0), 86.0);
        assert_eq!(effective_tmr(5e3, 86.0, f64::INFINITY), 0.0);
        let rp = m(500.0, 200.0, MtjState::P).r_p();
        let t = effective_tmr(rp, 200.0, 186e3);
        assert!((t - 92.5).abs() < 1.0, "{t}");
    }
}
