//! Flat CSV row types for every emitted table, plus SVG charts.
//!
//! Column headers carry their SI unit as a suffix (`_a`, `_s`, `_j`, `_ohm`,
//! `_v`, `_um2`) and are stable across versions.

pub mod svg;

use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::explorer::{PpaRecord, ReadRecord, WritabilityRow};

pub fn csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    std::fs::write(path, csv_string(rows)?)?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ReadRow {
    pub config: String,
    pub selector: String,
    pub rows: u32,
    pub v_read_v: f64,
    pub ra_ohm_um2: f64,
    pub tmr_pct: f64,
    pub vt_shift_v: f64,
    pub feasible: bool,
    pub sm_peak_v: f64,
    pub latency_s: Option<f64>,
    pub r_sel_ohm: f64,
    pub tmr_eff_pct: f64,
    pub i_dchg_a: f64,
    pub sigma_i_sneak_a: f64,
    pub dchg_to_sneak: f64,
    pub e_column_j: f64,
    pub e_selector_j: f64,
    pub e_rest_j: f64,
    pub e_total_j: f64,
    pub error: Option<String>,
}

impl From<&ReadRecord> for ReadRow {
    fn from(r: &ReadRecord) -> Self {
        Self {
            config: r.config.to_string(),
            selector: r.selector.as_str().into(),
            rows: r.rows,
            v_read_v: r.v_read,
            ra_ohm_um2: r.ra,
            tmr_pct: r.tmr,
            vt_shift_v: r.vt_shift,
            feasible: r.feasible,
            sm_peak_v: r.sm_peak,
            latency_s: r.latency_s,
            r_sel_ohm: r.r_sel,
            tmr_eff_pct: r.tmr_eff,
            i_dchg_a: r.i_dchg,
            sigma_i_sneak_a: r.sigma_i_sneak,
            dchg_to_sneak: r.ratio,
            e_column_j: r.energy.column_overhead,
            e_selector_j: r.energy.selector,
            e_rest_j: r.energy.rest,
            e_total_j: r.energy.total,
            error: r.error.clone(),
        }
    }
}

/// Long-form writability table: one row per (config, rows, retention target).
#[derive(Debug, Clone, Serialize)]
pub struct WritabilityCsvRow {
    pub config: String,
    pub rows: u32,
    pub corner: String,
    pub r_bl_ohm: f64,
    pub i_cell_a: f64,
    pub retention: String,
    pub i_c_required_a: f64,
    pub met: bool,
}

pub fn writability_rows(rows: &[WritabilityRow]) -> Vec<WritabilityCsvRow> {
    rows.iter()
        .flat_map(|w| {
            w.targets.iter().map(move |(label, ic, met)| WritabilityCsvRow {
                config: w.config.to_string(),
                rows: w.rows,
                corner: w.corner.as_str().into(),
                r_bl_ohm: w.r_bl_ohm,
                i_cell_a: w.i_cell,
                retention: label.clone(),
                i_c_required_a: *ic,
                met: *met,
            })
        })
        .collect()
}

/// One row per configuration and evaluated read point; configurations
/// without a read point get a single row with empty read columns.
#[derive(Debug, Clone, Serialize)]
pub struct PpaCsvRow {
    pub config: String,
    pub area_um2: f64,
    pub i_cell_ss_a: f64,
    pub i_cell_tt_a: f64,
    pub i_cell_ff_a: f64,
    pub attainable_retention: Option<String>,
    pub read_point: Option<String>,
    pub v_read_v: Option<f64>,
    pub feasible: Option<bool>,
    pub sm_peak_v: Option<f64>,
    pub latency_s: Option<f64>,
    pub e_column_j: Option<f64>,
    pub e_selector_j: Option<f64>,
    pub e_rest_j: Option<f64>,
    pub e_total_j: Option<f64>,
    pub column_share: Option<f64>,
    pub energy_vs_2t1r: Option<f64>,
}

pub fn ppa_rows(records: &[PpaRecord]) -> Vec<PpaCsvRow> {
    let mut out = Vec::new();
    for p in records {
        let base = PpaCsvRow {
            config: p.config.to_string(),
            area_um2: p.area_um2,
            i_cell_ss_a: p.i_cell.ss,
            i_cell_tt_a: p.i_cell.tt,
            i_cell_ff_a: p.i_cell.ff,
            attainable_retention: p.attainable_retention.clone(),
            read_point: None,
            v_read_v: None,
            feasible: None,
            sm_peak_v: None,
            latency_s: None,
            e_column_j: None,
            e_selector_j: None,
            e_rest_j: None,
            e_total_j: None,
            column_share: None,
            energy_vs_2t1r: None,
        };
        if p.reads.is_empty() {
            out.push(base);
            continue;
        }
        for r in &p.reads {
            out.push(PpaCsvRow {
                read_point: Some(r.label.into()),
                v_read_v: Some(r.v_read),
                feasible: Some(r.feasible),
                sm_peak_v: Some(r.sm_peak),
                latency_s: r.latency_s,
                e_column_j: Some(r.energy.column_overhead),
                e_selector_j: Some(r.energy.selector),
                e_rest_j: Some(r.energy.rest),
                e_total_j: Some(r.energy.total),
                column_share: Some(r.energy.column_share()),
                energy_vs_2t1r: Some(r.energy_vs_2t1r),
                ..base.clone()
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        a: f64,
        b: Option<f64>,
    }

    #[test]
    fn csv_header_and_empty_option() {
        let s = csv_string(&[Row { a: 1.5, b: None }, Row { a: 2.0, b: Some(3.0) }]).unwrap();
        assert_eq!(s, "a,b\n1.5,\n2.0,3.0\n");
    }
}
