//! Two-terminal BEOL selector diodes.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiodeKind {
    TunnelSymmetric,
    SchottkyAsymmetric,
}

/// Junction law plus an optional series resistance. Positive `v` is the
/// orientation that conducts during a read.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiodeModel {
    pub kind: DiodeKind,
    pub i_0: f64,
    pub v_0_fwd: f64,
    /// Reverse-branch voltage scale; ignored for the tunnel diode.
    pub v_0_rev: f64,
    pub r_series: f64,
    /// Ohmic perimeter leakage; ignored for the tunnel diode.
    pub perimeter_leak_g: f64,
}

impl DiodeModel {
    pub fn tunnel(i_0: f64, v_0: f64, r_series: f64) -> Self {
        Self {
            kind: DiodeKind::TunnelSymmetric,
            i_0,
            v_0_fwd: v_0,
            v_0_rev: v_0,
            r_series,
            perimeter_leak_g: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("diode.i_0", self.i_0)?;
        ensure_positive("diode.v_0_fwd", self.v_0_fwd)?;
        if !(self.r_series >= 0.0) {
            return Err(Error::param("diode.r_series", "must be >= 0"));
        }
        if self.kind == DiodeKind::SchottkyAsymmetric {
            ensure_positive("diode.v_0_rev", self.v_0_rev)?;
            if !(self.perimeter_leak_g >= 0.0) {
                return Err(Error::param("diode.perimeter_leak_g", "must be >= 0"));
            }
            if self.v_0_fwd >= self.v_0_rev {
                return Err(Error::param("diode.v_0_rev", "must exceed v_0_fwd for rectification"));
            }
        }
        Ok(())
    }

    /// Intrinsic junction current and conductance at junction voltage `v`.
    pub fn junction(&self, v: f64) -> (f64, f64) {
        match self.kind {
            DiodeKind::TunnelSymmetric => {
                // Odd by construction: evaluate on |v| and restore the sign.
                let a = v.abs() / self.v_0_fwd;
                let i = 2.0 * self.i_0 * a.sinh();
                let g = 2.0 * self.i_0 * a.cosh() / self.v_0_fwd;
                (i.copysign(v), g)
            }
            DiodeKind::SchottkyAsymmetric => {
                let ef = (v / self.v_0_fwd).exp_m1();
                let er = (-v / self.v_0_rev).exp_m1();
                let i = self.i_0 * (ef - er) + self.perimeter_leak_g * v;
                let g = self.i_0 * ((v / self.v_0_fwd).exp() / self.v_0_fwd + (-v / self.v_0_rev).exp() / self.v_0_rev)
                    + self.perimeter_leak_g;
                (i, g)
            }
        }
    }

    /// Terminal current and conductance, with the series resistance
    /// resolved by a safeguarded Newton iteration on the junction voltage.
    pub fn eval(&self, v: f64) -> (f64, f64) {
        if self.r_series == 0.0 {
            return self.junction(v);
        }
        let rs = self.r_series;
        // h(vj) = vj + rs·I(vj) - v is increasing; the root lies between 0 and v.
        let (mut lo, mut hi) = if v >= 0.0 { (0.0, v) } else { (v, 0.0) };
        let tol = 1e-16 * (1.0 + v.abs());
        let h_at = |vj: f64| {
            let (i, g) = self.junction(vj);
            (vj + rs * i - v, 1.0 + rs * g)
        };
        // Newton safeguarded by bisection whenever a step would leave the
        // bracket or fails to halve it.
        let mut vj = 0.5 * (lo + hi);
        let (mut dx_old, mut dx) = (hi - lo, hi - lo);
        let (mut h, mut dh) = h_at(vj);
        for _ in 0..200 {
            if h == 0.0 {
                break;
            }
            if h > 0.0 {
                hi = vj;
            } else {
                lo = vj;
            }
            let leaves = ((vj - hi) * dh - h) * ((vj - lo) * dh - h) > 0.0;
            if leaves || (2.0 * h).abs() > (dx_old * dh).abs() {
                dx_old = dx;
                dx = 0.5 * (hi - lo);
                vj = lo + dx;
            } else {
                dx_old = dx;
                dx = h / dh;
                vj -= dx;
            }
            if dx.abs() <= tol {
                break;
            }
            (h, dh) = h_at(vj);
        }
        let (ij, g) = self.junction(vj);
        // Take the current from whichever side is less sensitive to the
        // residual error in vj.
        let i = if rs * g < 1.0 { ij } else { (v - vj) / rs };
        (i, g / (1.0 + rs * g))
    }
}

pub fn diode_current(model: &DiodeModel, v: f64) -> f64 {
    model.eval(v).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn schottky() -> DiodeModel {
        DiodeModel {
            kind: DiodeKind::SchottkyAsymmetric,
            i_0: 1e-9,
            v_0_fwd: 0.2,
            v_0_rev: 0.5,
            r_series: 0.0,
            perimeter_leak_g: 1e-9,
        }
    }

    #[test]
    fn tunnel_is_odd_and_zero_at_origin() {
        for rs in [0.0, 5e3] {
            let d = DiodeModel::tunnel(1e-8, 0.25, rs);
            assert_eq!(diode_current(&d, 0.5), -diode_current(&d, -0.5));
            assert_eq!(diode_current(&d, 0.0), 0.0);
        }
    }

    #[test]
    fn schottky_rectifies() {
        let d = schottky();
        assert_eq!(diode_current(&d, 0.0), 0.0);
        for k in 0..=18 {
            let v = 0.2 + 0.1 * k as f64;
            assert!(diode_current(&d, v) > diode_current(&d, -v).abs());
        }
    }

    #[test]
    fn series_resistance_consistent() {
        let mut d = schottky();
        d.r_series = 20e3;
        for v in [-1.0, 0.1, 0.6, 1.5] {
            let (i, g) = d.eval(v);
            let vj = v - i * d.r_series;
            assert_relative_eq!(d.junction(vj).0, i, max_relative = 1e-10, epsilon = 1e-20);
            let h = 1e-6;
            let fd = (diode_current(&d, v + h) - diode_current(&d, v - h)) / (2.0 * h);
            assert_relative_eq!(g, fd, max_relative = 1e-5);
        }
    }

    #[test]
    fn rectification_requires_slower_reverse_branch() {
        let mut d = schottky();
        d.v_0_rev = 0.1;
        assert!(d.validate().is_err());
    }
}
