//! Reduced circuit models of one array column for the write DC solve and
//! the precharge-and-discharge read transient.

mod read;
mod sense;
mod write;

pub use read::{build_read_array, build_read_array_unrolled, ReadCircuit, TAG_COLUMN, TAG_REST, TAG_SELECTOR};
pub use sense::{
    read_energy_breakdown, sense, sense_with, waveform_rows, EnergyBreakdown, SenseOptions, SenseReport, SenseRun,
    WaveRow,
};
pub use write::{build_write_path, write_current, WriteCase, WriteResult};

use serde::{Deserialize, Serialize};

use crate::devices::{CornerTable, DiodeKind, DiodeModel, FinFetModel, IgzoFetModel, MtjState};
use crate::error::{ensure_positive, Error, Result};
use crate::magnetics::MtjStack;
use crate::techmodel::{CellLayout, ConfigId, TechNode};

/// Write-transistor fingers and fins per finger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fins {
    pub nf: u32,
    pub nfin: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WriteParams {
    pub v_write: f64,
    pub gate_overdrive: f64,
    /// SOT track resistance [Ω].
    pub r_sot: f64,
    /// Return-line resistance as a multiple of the bitline resistance.
    pub return_ratio: f64,
    pub fins_fv: Fins,
    pub fins_rv: Fins,
    pub fins_1t1r1t: Fins,
    pub fins_vga: Fins,
    pub fins_1t1d1r: Fins,
}

impl WriteParams {
    pub fn fins(&self, c: ConfigId) -> Fins {
        match c {
            ConfigId::TwoT1rFv => self.fins_fv,
            ConfigId::TwoT1rRv => self.fins_rv,
            ConfigId::OneT1r1t => self.fins_1t1r1t,
            ConfigId::OneT1r1tVga => self.fins_vga,
            ConfigId::OneT1d1r => self.fins_1t1d1r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectorKind {
    /// FEOL read transistor of 2T1R.
    Finfet,
    /// BEOL IGZO-FET of 1T1R1T.
    Igzo,
    Tunnel,
    Schottky,
}

impl SelectorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SelectorKind::Finfet => "finfet",
            SelectorKind::Igzo => "igzo",
            SelectorKind::Tunnel => "tunnel",
            SelectorKind::Schottky => "schottky",
        }
    }

    /// Natural selector of a configuration (diode cells default to tunnel).
    pub fn default_for(c: ConfigId) -> Self {
        match c {
            ConfigId::TwoT1rFv | ConfigId::TwoT1rRv => SelectorKind::Finfet,
            ConfigId::OneT1r1t | ConfigId::OneT1r1tVga => SelectorKind::Igzo,
            ConfigId::OneT1d1r => SelectorKind::Tunnel,
        }
    }

    fn fits(self, c: ConfigId) -> bool {
        match c {
            ConfigId::TwoT1rFv | ConfigId::TwoT1rRv => self == SelectorKind::Finfet,
            ConfigId::OneT1r1t | ConfigId::OneT1r1tVga => self == SelectorKind::Igzo,
            ConfigId::OneT1d1r => matches!(self, SelectorKind::Tunnel | SelectorKind::Schottky),
        }
    }
}

impl std::str::FromStr for SelectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "finfet" => Ok(SelectorKind::Finfet),
            "igzo" => Ok(SelectorKind::Igzo),
            "tunnel" => Ok(SelectorKind::Tunnel),
            "schottky" => Ok(SelectorKind::Schottky),
            _ => Err(Error::param(
                "selector",
                format!("expected finfet|igzo|tunnel|schottky, got `{s}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReadParams {
    /// Read-line capacitance per cell on the column [F].
    pub line_cap_per_cell: f64,
    /// Sense-amplifier and column-mux loading [F].
    pub c_periph: f64,
    /// Fraction of the SOT track in the read path.
    pub sot_share: f64,
    /// Fins of the 2T1R read transistor.
    pub rdt_fins: Fins,
    /// Selected read wordline level of the 2T1R read transistor [V].
    pub rdt_wordline: f64,
    /// Drain-junction leakage of one unselected 2T1R read transistor [S].
    pub rdt_junction_g: f64,
    /// IGZO-FET as measured (slightly negative threshold).
    pub igzo: IgzoFetModel,
    pub tunnel: DiodeModel,
    pub schottky: DiodeModel,
    pub sense_threshold: f64,
    /// Sensing window [s].
    pub window: f64,
}

/// Every calibrated model and array-level parameter the simulators consume.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayModels {
    pub tech: TechNode,
    pub layout: CellLayout,
    pub stack: MtjStack,
    /// Per-fin FinFET surrogate shared by write and 2T1R read transistors.
    pub finfet: FinFetModel,
    pub write: WriteParams,
    pub read: ReadParams,
}

impl Default for ArrayModels {
    fn default() -> Self {
        crate::calibrate::frozen::models()
    }
}

impl ArrayModels {
    pub fn validate(&self) -> Result<()> {
        self.tech.validate()?;
        self.layout.validate()?;
        self.stack.validate()?;
        self.finfet.validate()?;
        ensure_positive("write.v_write", self.write.v_write)?;
        ensure_positive("write.r_sot", self.write.r_sot)?;
        if !(self.write.gate_overdrive >= 0.0 && self.write.return_ratio >= 0.0) {
            return Err(Error::param("write", "gate_overdrive and return_ratio must be >= 0"));
        }
        let r = &self.read;
        ensure_positive("read.line_cap_per_cell", r.line_cap_per_cell)?;
        ensure_positive("read.sense_threshold", r.sense_threshold)?;
        ensure_positive("read.window", r.window)?;
        ensure_positive("read.rdt_wordline", r.rdt_wordline)?;
        if !(r.c_periph >= 0.0 && r.rdt_junction_g >= 0.0 && r.sot_share > 0.0 && r.sot_share <= 1.0) {
            return Err(Error::param(
                "read",
                "c_periph, rdt_junction_g >= 0 and sot_share in (0, 1] required",
            ));
        }
        r.igzo.validate()?;
        r.tunnel.validate()?;
        r.schottky.validate()?;
        if r.tunnel.kind != DiodeKind::TunnelSymmetric || r.schottky.kind != DiodeKind::SchottkyAsymmetric {
            return Err(Error::param(
                "read.tunnel/schottky",
                "diode kinds do not match their slots",
            ));
        }
        Ok(())
    }
}

/// Per-fin FinFET surrogate parameters for the write path (nf/nfin set per cell).
pub fn finfet_per_fin(isat: CornerTable, v_t: f64, v_dsat: f64, v_gate: f64) -> FinFetModel {
    FinFetModel {
        i_sat_per_fin: isat,
        v_t,
        v_ref: v_gate - v_t,
        v_dsat,
        nf: 1,
        nfin: 1,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReadCase {
    pub config: ConfigId,
    pub rows: u32,
    pub cols: u32,
    pub v_read: f64,
    pub ra: f64,
    pub tmr: f64,
    pub selector: SelectorKind,
    /// Shift applied to the IGZO threshold [V]; ignored by other selectors.
    pub vt_shift: f64,
    /// Overrides the calibrated line capacitance when set [F/cell].
    pub line_cap_per_cell: Option<f64>,
    pub unselected_state: MtjState,
    /// Overrides the calibrated sensing threshold when set [V].
    pub sense_threshold: Option<f64>,
}

impl ReadCase {
    pub fn new(config: ConfigId, selector: SelectorKind, v_read: f64, ra: f64, tmr: f64) -> Self {
        Self {
            config,
            rows: 128,
            cols: 128,
            v_read,
            ra,
            tmr,
            selector,
            vt_shift: 0.0,
            line_cap_per_cell: None,
            unselected_state: MtjState::P,
            sense_threshold: None,
        }
    }

    pub fn with_vt_shift(mut self, s: f64) -> Self {
        self.vt_shift = s;
        self
    }

    pub fn with_rows(mut self, rows: u32) -> Self {
        self.rows = rows;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::param("rows/cols", "must be >= 1"));
        }
        ensure_positive("v_read", self.v_read)?;
        ensure_positive("ra", self.ra)?;
        if !(self.tmr >= 0.0) {
            return Err(Error::param("tmr", "must be >= 0"));
        }
        if let Some(c) = self.line_cap_per_cell {
            ensure_positive("line_cap_per_cell", c)?;
        }
        if let Some(s) = self.sense_threshold {
            ensure_positive("sense_threshold", s)?;
        }
        if self.config == ConfigId::OneT1r1tVga {
            return Err(Error::param(
                "config",
                "read performance of 1T1R1T-VGA is not modeled for lack of device data",
            ));
        }
        if !self.selector.fits(self.config) {
            return Err(Error::param(
                "selector",
                format!("{} cannot read a {} cell", self.selector.as_str(), self.config),
            ));
        }
        Ok(())
    }
}

/// The five read design points of the reference 128×128 array.
pub fn reference_read_points() -> Vec<(&'static str, ReadCase)> {
    vec![
        (
            "2T1R",
            ReadCase::new(ConfigId::TwoT1rRv, SelectorKind::Finfet, 0.7, 20.0, 86.0),
        ),
        (
            "1T1R1T -Vt",
            ReadCase::new(ConfigId::OneT1r1t, SelectorKind::Igzo, 1.8, 500.0, 200.0),
        ),
        (
            "1T1R1T +Vt",
            ReadCase::new(ConfigId::OneT1r1t, SelectorKind::Igzo, 1.4, 700.0, 110.0).with_vt_shift(POSITIVE_VT_SHIFT),
        ),
        (
            "1T1D1R tunnel",
            ReadCase::new(ConfigId::OneT1d1r, SelectorKind::Tunnel, 2.1, 100.0, 200.0),
        ),
        (
            "1T1D1R Schottky",
            ReadCase::new(ConfigId::OneT1d1r, SelectorKind::Schottky, 1.6, 100.0, 150.0),
        ),
    ]
}

/// Rigid threshold shift turning the measured −60 mV IGZO-FET into a +60 mV one.
pub const POSITIVE_VT_SHIFT: f64 = 0.12;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn read_case_rejects_mismatched_selectors() {
        assert!(ReadCase::new(ConfigId::OneT1d1r, SelectorKind::Igzo, 1.6, 100.0, 150.0)
            .validate()
            .is_err());
        assert!(
            ReadCase::new(ConfigId::OneT1r1tVga, SelectorKind::Igzo, 1.6, 100.0, 150.0)
                .validate()
                .is_err()
        );
        for (_, c) in reference_read_points() {
            c.validate().unwrap();
        }
    }

    #[test]
    fn selector_names_round_trip() {
        for s in [
            SelectorKind::Finfet,
            SelectorKind::Igzo,
            SelectorKind::Tunnel,
            SelectorKind::Schottky,
        ] {
            assert_eq!(s.as_str().parse::<SelectorKind>().unwrap(), s);
        }
        for c in ConfigId::ALL {
            assert!(SelectorKind::default_for(c).fits(c));
        }
    }

    #[test]
    fn default_models_validate() {
        ArrayModels::default().validate().unwrap();
    }
}
