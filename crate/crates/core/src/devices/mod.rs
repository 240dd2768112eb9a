//! Compact I–V models of every circuit element.

pub mod diode;
pub mod finfet;
pub mod igzo;
pub mod mtj;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use diode::{diode_current, DiodeKind, DiodeModel};
pub use finfet::{finfet_current, CornerTable, FetEval, FinFetModel};
pub use igzo::{igzo_current, IgzoFetModel};
pub use mtj::{effective_tmr, mtj_resistance, MtjModel, MtjState};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Corner {
    Ss,
    Tt,
    Ff,
}

impl Corner {
    pub const ALL: [Corner; 3] = [Corner::Ss, Corner::Tt, Corner::Ff];

    pub fn as_str(self) -> &'static str {
        match self {
            Corner::Ss => "ss",
            Corner::Tt => "tt",
            Corner::Ff => "ff",
        }
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Corner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ss" => Ok(Corner::Ss),
            "tt" => Ok(Corner::Tt),
            "ff" => Ok(Corner::Ff),
            _ => Err(Error::param("corner", format!("expected ss|tt|ff, got `{s}`"))),
        }
    }
}

/// A read-path selector device.
#[derive(Debug, Clone, PartialEq)]
pub enum Selector {
    FinFet { model: FinFetModel, corner: Corner },
    Igzo(IgzoFetModel),
    Diode(DiodeModel),
}

/// Operating point of a selector: terminal voltage across it and, for
/// three-terminal devices, the gate-to-source voltage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasPoint {
    pub v: f64,
    pub v_gs: f64,
}

impl Selector {
    pub fn current(&self, bias: BiasPoint) -> f64 {
        match self {
            Selector::FinFet { model, corner } => model.eval(*corner, bias.v_gs, bias.v, 0.0).i,
            Selector::Igzo(m) => m.eval(bias.v_gs, bias.v, 0.0).i,
            Selector::Diode(d) => d.eval(bias.v).0,
        }
    }
}

/// Chord resistance V/I of a selector at its operating point [Ω].
pub fn selector_equivalent_resistance(sel: &Selector, bias: BiasPoint) -> Result<f64> {
    let i = sel.current(bias);
    if bias.v == 0.0 {
        return Err(Error::Domain("secant resistance undefined at zero bias".into()));
    }
    if i == 0.0 || !i.is_finite() {
        return Err(Error::Domain(format!(
            "selector resistance diverges at V = {} V",
            bias.v
        )));
    }
    Ok(bias.v / i)
}

#[derive(Debug, Clone, Serialize)]
pub struct IvRow {
    pub v: f64,
    pub i: f64,
}

/// Sweeps `v` over `grid`. For transistors `v` is the gate-source voltage at
/// drain-source voltage `v_ds`; for diodes it is the terminal voltage.
pub fn iv_sweep(sel: &Selector, grid: &[f64], v_ds: f64) -> Vec<IvRow> {
    grid.iter()
        .map(|&v| {
            let bias = match sel {
                Selector::Diode(_) => BiasPoint { v, v_gs: 0.0 },
                _ => BiasPoint { v: v_ds, v_gs: v },
            };
            IvRow {
                v,
                i: sel.current(bias),
            }
        })
        .collect()
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![lo];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_selector_secant() {
        // A diode with a dominant series resistor approaches that resistor.
        let d = DiodeModel::tunnel(1.0, 1e-3, 1e6);
        let r = selector_equivalent_resistance(&Selector::Diode(d), BiasPoint { v: 1.0, v_gs: 0.0 }).unwrap();
        assert!((r - 1e6).abs() / 1e6 < 1e-3);
    }

    #[test]
    fn tunnel_secant_decreases_with_bias() {
        let s = Selector::Diode(DiodeModel::tunnel(1e-8, 0.25, 0.0));
        let r: Vec<f64> = [0.2, 0.5, 1.0, 2.0]
            .iter()
            .map(|&v| selector_equivalent_resistance(&s, BiasPoint { v, v_gs: 0.0 }).unwrap())
            .collect();
        assert!(r.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn divergent_when_off() {
        let m = FinFetModel {
            i_sat_per_fin: CornerTable {
                ss: 1e-5,
                tt: 2e-5,
                ff: 3e-5,
            },
            v_t: 0.4,
            v_ref: 0.4,
            v_dsat: 0.2,
            nf: 1,
            nfin: 1,
        };
        let s = Selector::FinFet {
            model: m,
            corner: Corner::Tt,
        };
        assert!(selector_equivalent_resistance(&s, BiasPoint { v: 0.5, v_gs: 0.0 }).is_err());
    }
}
