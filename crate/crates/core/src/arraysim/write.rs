use serde::{Deserialize, Serialize};

use super::ArrayModels;
use crate::circuit::{solve_dc, Circuit, Waveform, GROUND};
use crate::consts::T_REF;
use crate::devices::Corner;
use crate::error::{ensure_positive, Error, Result};
use crate::magnetics::{critical_current, IcForm, TAU_WRITE_NS};
use crate::techmodel::{bitline_resistance, ConfigId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WriteCase {
    pub config: ConfigId,
    pub rows: u32,
    pub corner: Corner,
    /// Overrides the calibrated write voltage when set [V].
    pub v_write: Option<f64>,
    /// Overrides the calibrated gate overdrive when set [V].
    pub gate_overdrive: Option<f64>,
    /// Write pulse width [ns].
    pub tau_write: f64,
}

impl WriteCase {
    pub fn new(config: ConfigId, rows: u32, corner: Corner) -> Self {
        Self {
            config,
            rows,
            corner,
            v_write: None,
            gate_overdrive: None,
            tau_write: TAU_WRITE_NS,
        }
    }
}

/// Farthest-cell write path: driver supply, bitline, write transistor, SOT
/// track and return line. The cell current is the current of `rsot`.
pub fn build_write_path(case: &WriteCase, m: &ArrayModels) -> Result<Circuit> {
    let v_write = case.v_write.unwrap_or(m.write.v_write);
    let overdrive = case.gate_overdrive.unwrap_or(m.write.gate_overdrive);
    ensure_positive("v_write", v_write)?;
    if !(overdrive >= 0.0) {
        return Err(Error::param("gate_overdrive", "must be >= 0"));
    }
    let r_bl = bitline_resistance(case.config, case.rows, &m.tech, &m.layout)?;
    let fins = m.write.fins(case.config);
    let fet = m.finfet.with_fins(fins.nf, fins.nfin);

    let mut c = Circuit::new();
    let drv = c.node("wbl");
    let wwl = c.node("wwl");
    let d = c.node("d");
    let s = c.node("s");
    c.vsource("vwrite", "supply", drv, GROUND, Waveform::Dc(v_write));
    c.vsource("vwwl", "supply", wwl, GROUND, Waveform::Dc(v_write + overdrive));
    c.resistor("rbl", "wire", drv, d, r_bl);
    c.finfet("wrt", "transistor", d, wwl, s, fet, case.corner, 1.0);
    if m.write.return_ratio > 0.0 {
        let r = c.node("ret");
        c.resistor("rsot", "sot", s, r, m.write.r_sot);
        c.resistor("rret", "wire", r, GROUND, m.write.return_ratio * r_bl);
    } else {
        c.resistor("rsot", "sot", s, GROUND, m.write.r_sot);
    }
    Ok(c)
}

#[derive(Debug, Clone, Serialize)]
pub struct WriteResult {
    pub config: ConfigId,
    pub rows: u32,
    pub corner: Corner,
    pub r_bl_ohm: f64,
    pub i_cell: f64,
    /// (retention label, Δ at 298 K, required I_c [A], met)
    pub targets: Vec<(String, f64, f64, bool)>,
}

/// Solves the write path and checks the cell current against the nominal
/// switching current of each retention target.
pub fn write_current(case: &WriteCase, m: &ArrayModels) -> Result<WriteResult> {
    let ckt = build_write_path(case, m)?;
    let dc = solve_dc(&ckt)?;
    let k = ckt.element("rsot").expect("rsot");
    let i_cell = dc.currents[k];
    let mut targets = Vec::new();
    for (label, tau_ret) in crate::magnetics::retention_targets() {
        let d = crate::magnetics::delta_from_retention(&crate::magnetics::RetentionSpec::llc(tau_ret))?.1;
        let ic = critical_current(case.tau_write, &m.stack.with_delta(d), T_REF, IcForm::Thermal)?;
        targets.push((label.to_string(), d, ic, i_cell >= ic));
    }
    Ok(WriteResult {
        config: case.config,
        rows: case.rows,
        corner: case.corner,
        r_bl_ohm: bitline_resistance(case.config, case.rows, &m.tech, &m.layout)?,
        i_cell,
        targets,
    })
}
