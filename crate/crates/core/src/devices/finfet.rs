//! Smooth square-law/linear FinFET surrogate with process corners.
//!
//! Per fin, with overdrive `vov = vgs - vt`:
//! `I = isat·(vov/vref)²·tanh(vref·vds / (vdsat·vov))`, zero for `vov <= 0`.
//! The drain/source roles follow the sign of `vds`, so the model is odd in
//! `vds` under terminal exchange.

use serde::{Deserialize, Serialize};

use super::Corner;
use crate::error::{ensure_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CornerTable {
    pub ss: f64,
    pub tt: f64,
    pub ff: f64,
}

impl CornerTable {
    pub fn get(&self, c: Corner) -> f64 {
        match c {
            Corner::Ss => self.ss,
            Corner::Tt => self.tt,
            Corner::Ff => self.ff,
        }
    }

    pub fn set(&mut self, c: Corner, v: f64) {
        match c {
            Corner::Ss => self.ss = v,
            Corner::Tt => self.tt = v,
            Corner::Ff => self.ff = v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinFetModel {
    /// Per-fin current at `vref` overdrive, deep saturation [A].
    pub i_sat_per_fin: CornerTable,
    pub v_t: f64,
    /// Overdrive at which `i_sat_per_fin` is quoted [V].
    pub v_ref: f64,
    /// Drain voltage scale of the linear-to-saturation transition at `vref` [V].
    pub v_dsat: f64,
    pub nf: u32,
    pub nfin: u32,
}

/// Current and its partial derivatives with respect to the terminal voltages.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FetEval {
    /// Drain-to-source current.
    pub i: f64,
    pub di_dvg: f64,
    pub di_dvd: f64,
    pub di_dvs: f64,
}

impl FinFetModel {
    pub fn validate(&self) -> Result<()> {
        for c in Corner::ALL {
            ensure_positive("finfet.i_sat_per_fin", self.i_sat_per_fin.get(c))?;
        }
        ensure_positive("finfet.v_ref", self.v_ref)?;
        ensure_positive("finfet.v_dsat", self.v_dsat)?;
        if self.nf == 0 || self.nfin == 0 {
            return Err(Error::param("finfet.nf/nfin", "must be >= 1"));
        }
        let t = self.i_sat_per_fin;
        if !(t.ss < t.tt && t.tt < t.ff) {
            return Err(Error::param(
                "finfet.i_sat_per_fin",
                "corners must satisfy ss < tt < ff",
            ));
        }
        Ok(())
    }

    pub fn with_fins(&self, nf: u32, nfin: u32) -> Self {
        Self {
            nf,
            nfin,
            ..self.clone()
        }
    }

    pub fn fins(&self) -> f64 {
        (self.nf * self.nfin) as f64
    }

    /// Small-signal linear-region conductance per fin at `vref` overdrive [S].
    pub fn g_lin_per_fin(&self, corner: Corner) -> f64 {
        self.i_sat_per_fin.get(corner) / self.v_dsat
    }

    /// Current from drain to source and its derivatives.
    pub fn eval(&self, corner: Corner, vg: f64, vd: f64, vs: f64) -> FetEval {
        if vd >= vs {
            self.eval_forward(corner, vg, vd, vs)
        } else {
            let r = self.eval_forward(corner, vg, vs, vd);
            FetEval {
                i: -r.i,
                di_dvg: -r.di_dvg,
                di_dvd: -r.di_dvs,
                di_dvs: -r.di_dvd,
            }
        }
    }

    fn eval_forward(&self, corner: Corner, vg: f64, vd: f64, vs: f64) -> FetEval {
        let vov = vg - vs - self.v_t;
        if vov <= 0.0 {
            return FetEval::default();
        }
        let n = self.fins();
        let isat = self.i_sat_per_fin.get(corner);
        let u = vov / self.v_ref;
        let s = isat * u * u;
        let x = (vd - vs) / (self.v_dsat * u);
        let th = x.tanh();
        let (d_ov, d_ds) = if x > 40.0 {
            (2.0 * s / vov, 0.0)
        } else {
            let sech2 = 1.0 - th * th;
            (s / vov * (2.0 * th - x * sech2), s * sech2 / (self.v_dsat * u))
        };
        FetEval {
            i: n * s * th,
            di_dvg: n * d_ov,
            di_dvd: n * d_ds,
            di_dvs: -n * (d_ov + d_ds),
        }
    }
}

pub fn finfet_current(model: &FinFetModel, v_gs: f64, v_ds: f64, corner: Corner) -> f64 {
    model.eval(corner, v_gs, v_ds, 0.0).i
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn m() -> FinFetModel {
        FinFetModel {
            i_sat_per_fin: CornerTable {
                ss: 9e-5,
                tt: 1.3e-4,
                ff: 1.9e-4,
            },
            v_t: 0.45,
            v_ref: 0.35,
            v_dsat: 0.3,
            nf: 1,
            nfin: 1,
        }
    }

    #[test]
    fn cut_off_below_threshold() {
        assert_eq!(finfet_current(&m(), 0.45, 0.5, Corner::Tt), 0.0);
        assert_eq!(finfet_current(&m(), 0.0, 0.5, Corner::Ff), 0.0);
    }

    #[test]
    fn scales_with_fin_count() {
        let a = finfet_current(&m(), 0.8, 0.3, Corner::Tt);
        let b = finfet_current(&m().with_fins(3, 4), 0.8, 0.3, Corner::Tt);
        assert_relative_eq!(b, 12.0 * a, max_relative = 1e-15);
    }

    #[test]
    fn saturates_at_isat() {
        let i = finfet_current(&m(), 0.8, 50.0, Corner::Ss);
        assert_relative_eq!(i, 9e-5, max_relative = 1e-12);
    }

    #[test]
    fn source_drain_exchange() {
        let f = m();
        let a = f.eval(Corner::Tt, 1.0, 0.3, 0.1);
        let b = f.eval(Corner::Tt, 1.0, 0.1, 0.3);
        assert_relative_eq!(a.i, -b.i, max_relative = 1e-15);
    }

    #[test]
    fn analytic_derivatives() {
        let f = m();
        let h = 1e-7;
        for &(vg, vd, vs) in &[(0.9, 0.3, 0.05), (0.8, 0.02, 0.1), (0.6, 0.7, 0.12), (1.2, 0.0, 0.0)] {
            let e = f.eval(Corner::Tt, vg, vd, vs);
            let fd = |dg: f64, dd: f64, ds: f64| {
                (f.eval(Corner::Tt, vg + dg, vd + dd, vs + ds).i - f.eval(Corner::Tt, vg - dg, vd - dd, vs - ds).i)
                    / (2.0 * h)
            };
            assert_relative_eq!(e.di_dvg, fd(h, 0.0, 0.0), epsilon = 1e-9, max_relative = 1e-5);
            assert_relative_eq!(e.di_dvd, fd(0.0, h, 0.0), epsilon = 1e-9, max_relative = 1e-5);
            assert_relative_eq!(e.di_dvs, fd(0.0, 0.0, h), epsilon = 1e-9, max_relative = 1e-5);
        }
    }

    #[test]
    fn corner_order_enforced() {
        let mut f = m();
        f.validate().unwrap();
        f.i_sat_per_fin.ss = 2e-4;
        assert!(f.validate().is_err());
    }
}
