//! Subcommand bodies. Each returns its artifacts without touching the
//! filesystem; `main` writes them only after the whole command succeeded.

use anyhow::{bail, Context, Result};
use serde::Serialize;
use sotmram_core::arraysim::{reference_read_points, sense_with, waveform_rows, ReadCase, SelectorKind, SenseOptions};
use sotmram_core::calibrate::calibrate_all;
use sotmram_core::config::RunConfig;
use sotmram_core::devices::{iv_sweep, linspace, Corner, Selector};
use sotmram_core::explorer::{
    min_v_read, ppa_summary, read_design_space, reference_design_space, writability_vs_rows, DEFAULT_ROWS,
};
use sotmram_core::magnetics::{ic_curve, log_grid, retention_table, retention_targets, RetentionSpec};
use sotmram_core::report::svg::{self, Axes};
use sotmram_core::report::{ppa_rows, writability_rows, ReadRow};
use sotmram_core::techmodel::{area_table, roadmap_budget, via_report, ConfigId, SramRoadmapEntry};

use crate::output::Artifacts;
use crate::{Cli, Cmd, DevicesCmd};

pub fn run(cli: &Cli, cfg: &RunConfig) -> Result<Artifacts> {
    match &cli.cmd {
        Cmd::Area => area(cfg),
        Cmd::Profile { roadmap } => {
            let entries: Vec<SramRoadmapEntry> = match roadmap {
                Some(p) => {
                    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                    serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
                }
                None => cfg.roadmap.clone(),
            };
            let mut a = Artifacts::default();
            a.table("profile", &roadmap_budget(&entries)?)?;
            Ok(a)
        }
        Cmd::Retention => retention(cfg),
        Cmd::Switching {
            tau_min,
            tau_max,
            points,
        } => switching(cfg, *tau_min, *tau_max, *points),
        Cmd::Write { rows, corner, cell } => write(cli, cfg, rows, *corner, cell),
        Cmd::Read {
            cell,
            selector,
            vread,
            ra,
            tmr,
            vt_shift,
            rows,
            stride,
        } => {
            let sel = selector.unwrap_or_else(|| SelectorKind::default_for(*cell));
            let mut case = reference_read_points()
                .into_iter()
                .map(|p| p.1)
                .find(|c| c.config == *cell && c.selector == sel)
                .unwrap_or_else(|| ReadCase::new(*cell, sel, 1.0, 100.0, 150.0));
            case.selector = sel;
            case.v_read = vread.unwrap_or(case.v_read);
            case.ra = ra.unwrap_or(case.ra);
            case.tmr = tmr.unwrap_or(case.tmr);
            case.vt_shift = vt_shift.unwrap_or(case.vt_shift);
            case.rows = rows.unwrap_or(case.rows);
            read(cfg, &case, *stride)
        }
        Cmd::Sweep { rows } => sweep(cli, cfg, *rows),
        Cmd::Calibrate => {
            let (models, report) = calibrate_all(&cfg.models)?;
            let mut a = Artifacts::default();
            let fitted = RunConfig { models, ..cfg.clone() };
            a.document("fitted_config", &fitted)?;
            a.document("calibration_report", &report)?;
            Ok(a)
        }
        Cmd::Devices {
            cmd: DevicesCmd::DumpIv { points },
        } => dump_iv(cfg, *points),
    }
}

fn area(cfg: &RunConfig) -> Result<Artifacts> {
    let m = &cfg.models;
    let rows = area_table(&m.tech, &m.layout);
    let mut a = Artifacts::default();
    a.chart(
        "area",
        svg::stacked_bars(
            &Axes::new("Bitcell area", "", "area [um2]"),
            &["area"],
            &rows
                .iter()
                .map(|r| (r.config.to_string(), vec![r.area_um2]))
                .collect::<Vec<_>>(),
        ),
    );
    a.table("area", &rows)?;
    a.table("via", &via_report(&cfg.via_stack, &m.tech)?)?;
    Ok(a)
}

fn retention(cfg: &RunConfig) -> Result<Artifacts> {
    let r = &cfg.retention;
    let mut a = Artifacts::default();
    a.table("retention", &retention_table(r.error_rate, r.tau_0, r.t_op, r.t_ref)?)?;
    Ok(a)
}

/// Δ at the reference temperature for every retention target.
fn target_deltas(cfg: &RunConfig) -> Result<Vec<(&'static str, f64)>> {
    let r = &cfg.retention;
    retention_targets()
        .into_iter()
        .map(|(label, tau_ret)| {
            let spec = RetentionSpec {
                tau_ret,
                error_rate: r.error_rate,
                tau_0: r.tau_0,
                t_op: r.t_op,
                t_ref: r.t_ref,
            };
            Ok((label, sotmram_core::magnetics::delta_from_retention(&spec)?.1))
        })
        .collect()
}

fn switching(cfg: &RunConfig, lo: f64, hi: f64, n: usize) -> Result<Artifacts> {
    if !(lo > 0.0 && hi > lo && n >= 2) {
        bail!("switching grid needs 0 < tau_min < tau_max and at least two points");
    }
    let targets = target_deltas(cfg)?;
    let deltas: Vec<f64> = targets.iter().map(|t| t.1).collect();
    let rows = ic_curve(&log_grid(lo, hi, n), &deltas, &cfg.models.stack)?;
    let series = targets
        .iter()
        .map(|(label, d)| {
            let pts = rows
                .iter()
                .filter(|r| r.delta == *d)
                .map(|r| (r.tau_ns, r.ic_ua))
                .collect();
            (format!("{label} (delta {d:.1})"), pts)
        })
        .collect::<Vec<_>>();
    let mut a = Artifacts::default();
    a.table("switching", &rows)?;
    a.chart(
        "switching",
        svg::lines(
            &Axes::new("Critical switching current", "pulse width [ns]", "I_c [uA]").log_x(),
            &series,
        ),
    );
    Ok(a)
}

#[derive(Serialize)]
struct CellCurrentRow {
    config: String,
    corner: String,
    rows: u32,
    r_bl_ohm: f64,
    i_cell_a: f64,
}

fn write(cli: &Cli, cfg: &RunConfig, rows: &[u32], corner: Corner, cells: &[ConfigId]) -> Result<Artifacts> {
    let m = &cfg.models;
    let configs: Vec<ConfigId> = if cells.is_empty() {
        ConfigId::ALL.to_vec()
    } else {
        cells.to_vec()
    };
    let rows_list: Vec<u32> = if rows.is_empty() {
        DEFAULT_ROWS.to_vec()
    } else {
        rows.to_vec()
    };
    let mut table = Vec::new();
    for k in Corner::ALL {
        for w in writability_vs_rows(&configs, &[128], k, m, cli.jobs)? {
            table.push(CellCurrentRow {
                config: w.config.to_string(),
                corner: k.as_str().into(),
                rows: w.rows,
                r_bl_ohm: w.r_bl_ohm,
                i_cell_a: w.i_cell,
            });
        }
    }
    let sweep = writability_vs_rows(&configs, &rows_list, corner, m, cli.jobs)?;
    let mut series: Vec<(String, Vec<(f64, f64)>)> = configs
        .iter()
        .map(|c| {
            let pts = sweep
                .iter()
                .filter(|w| w.config == *c)
                .map(|w| (w.rows as f64, w.i_cell * 1e6))
                .collect();
            (c.to_string(), pts)
        })
        .collect();
    if let Some(first) = sweep.first() {
        let (lo, hi) = (
            *rows_list.iter().min().unwrap() as f64,
            *rows_list.iter().max().unwrap() as f64,
        );
        for (label, ic, _) in &first.targets {
            series.push((format!("I_c {label}"), vec![(lo, ic * 1e6), (hi, ic * 1e6)]));
        }
    }
    let mut a = Artifacts::default();
    a.table("write_128", &table)?;
    a.table("writability", &writability_rows(&sweep))?;
    a.chart(
        "writability",
        svg::lines(
            &Axes::new(&format!("Cell current ({})", corner.as_str()), "rows", "I_cell [uA]").log_x(),
            &series,
        ),
    );
    Ok(a)
}

fn read(cfg: &RunConfig, case: &ReadCase, stride: usize) -> Result<Artifacts> {
    let run = sense_with(case, &cfg.models, &SenseOptions::default())?;
    let wave = waveform_rows(&run, stride);
    let record = sotmram_core::explorer::ReadRecord::from_report(case, &run.report);
    let ns = |t: f64| t * 1e9;
    let mut a = Artifacts::default();
    a.table("read", &[ReadRow::from(&record)])?;
    a.table("waveform", &wave)?;
    a.chart(
        "read_voltage",
        svg::lines(
            &Axes::new("Sense node", "t [ns]", "V [V]"),
            &[
                ("P".into(), wave.iter().map(|w| (ns(w.t_s), w.v_sense_p_v)).collect()),
                ("AP".into(), wave.iter().map(|w| (ns(w.t_s), w.v_sense_ap_v)).collect()),
                ("SM".into(), wave.iter().map(|w| (ns(w.t_s), w.sm_v)).collect()),
            ],
        ),
    );
    a.chart(
        "read_current",
        svg::lines(
            &Axes::new("Discharge and sneak current (P)", "t [ns]", "I [uA]"),
            &[
                (
                    "i_dchg".into(),
                    wave.iter().map(|w| (ns(w.t_s), w.i_dchg_p_a * 1e6)).collect(),
                ),
                (
                    "-sum i_sneak".into(),
                    wave.iter().map(|w| (ns(w.t_s), -w.i_sneak_p_a * 1e6)).collect(),
                ),
            ],
        ),
    );
    Ok(a)
}

#[derive(Serialize)]
struct ReferenceRow {
    point: String,
    min_feasible_v_read_v: Option<f64>,
    v_read_v: f64,
    ra_ohm_um2: f64,
    tmr_pct: f64,
    vt_shift_v: f64,
    feasible: bool,
    sm_peak_v: f64,
    latency_s: Option<f64>,
    r_sel_ohm: f64,
    tmr_eff_pct: f64,
    i_dchg_a: f64,
    dchg_to_sneak: f64,
    e_column_j: f64,
    e_selector_j: f64,
    e_rest_j: f64,
    e_total_j: f64,
}

fn sweep(cli: &Cli, cfg: &RunConfig, rows: Option<u32>) -> Result<Artifacts> {
    let m = &cfg.models;
    let mut a = Artifacts::default();
    match &cfg.sweep {
        Some(grid) => {
            let mut g = grid.clone();
            if let Some(r) = rows {
                g.rows = vec![r];
            }
            let records = read_design_space(&g, m, cli.jobs)?;
            let best: Vec<ReadRow> = min_v_read(&records).values().map(ReadRow::from).collect();
            a.table("sweep", &records.iter().map(ReadRow::from).collect::<Vec<_>>())?;
            a.table("min_v_read", &best)?;
        }
        None => {
            let refs = reference_design_space(m, cli.jobs)?;
            let rows: Vec<ReferenceRow> = refs
                .iter()
                .map(|r| {
                    let x = &r.reference;
                    ReferenceRow {
                        point: r.label.into(),
                        min_feasible_v_read_v: r.min_v_read,
                        v_read_v: x.v_read,
                        ra_ohm_um2: x.ra,
                        tmr_pct: x.tmr,
                        vt_shift_v: x.vt_shift,
                        feasible: x.feasible,
                        sm_peak_v: x.sm_peak,
                        latency_s: x.latency_s,
                        r_sel_ohm: x.r_sel,
                        tmr_eff_pct: x.tmr_eff,
                        i_dchg_a: x.i_dchg,
                        dchg_to_sneak: x.ratio,
                        e_column_j: x.energy.column_overhead,
                        e_selector_j: x.energy.selector,
                        e_rest_j: x.energy.rest,
                        e_total_j: x.energy.total,
                    }
                })
                .collect();
            a.table("design_space", &rows)?;
        }
    }
    let ppa = ppa_summary(&ConfigId::ALL, m, cli.jobs)?;
    let reads: Vec<_> = ppa.iter().flat_map(|p| p.reads.iter()).collect();
    a.chart(
        "read_energy",
        svg::stacked_bars(
            &Axes::new("Read energy breakdown", "", "E [fJ]"),
            &["column overhead", "selector", "rest"],
            &reads
                .iter()
                .map(|r| {
                    let e = &r.energy;
                    (
                        r.label.to_string(),
                        vec![e.column_overhead * 1e15, e.selector * 1e15, e.rest * 1e15],
                    )
                })
                .collect::<Vec<_>>(),
        ),
    );
    a.chart(
        "latency_energy",
        svg::scatter(
            &Axes::new("Read latency and energy", "latency [ns]", "E [fJ]").log_x(),
            &reads
                .iter()
                .map(|r| {
                    (
                        r.label.to_string(),
                        r.latency_s.unwrap_or(f64::NAN) * 1e9,
                        r.energy.total * 1e15,
                    )
                })
                .collect::<Vec<_>>(),
        ),
    );
    a.table("ppa", &ppa_rows(&ppa))?;
    a.document("ppa_detail", &ppa)?;
    Ok(a)
}

#[derive(Serialize)]
struct IvCsvRow {
    device: String,
    v_ds_v: Option<f64>,
    v_v: f64,
    i_a: f64,
}

fn dump_iv(cfg: &RunConfig, n: usize) -> Result<Artifacts> {
    if n < 2 {
        bail!("need at least two points");
    }
    let r = &cfg.models.read;
    let write_gate = cfg.models.write.v_write + cfg.models.write.gate_overdrive;
    let curves: Vec<(String, Selector, Vec<f64>, Option<f64>)> = vec![
        (
            "finfet_per_fin_tt".into(),
            Selector::FinFet {
                model: cfg.models.finfet.clone(),
                corner: Corner::Tt,
            },
            linspace(0.0, write_gate, n),
            Some(cfg.models.write.v_write),
        ),
        (
            "igzo".into(),
            Selector::Igzo(r.igzo.clone()),
            linspace(-1.0, 2.0, n),
            Some(0.05),
        ),
        (
            "igzo".into(),
            Selector::Igzo(r.igzo.clone()),
            linspace(-1.0, 2.0, n),
            Some(1.8),
        ),
        (
            "igzo_vt_shifted".into(),
            Selector::Igzo(r.igzo.with_vt_shift(sotmram_core::arraysim::POSITIVE_VT_SHIFT)),
            linspace(-1.0, 2.0, n),
            Some(1.8),
        ),
        (
            "tunnel".into(),
            Selector::Diode(r.tunnel.clone()),
            linspace(-2.5, 2.5, n),
            None,
        ),
        (
            "schottky".into(),
            Selector::Diode(r.schottky.clone()),
            linspace(-2.5, 2.5, n),
            None,
        ),
    ];
    let mut rows = Vec::new();
    let mut series = Vec::new();
    for (name, sel, grid, vds) in &curves {
        let iv = iv_sweep(sel, grid, vds.unwrap_or(0.0));
        let label = match vds {
            Some(v) => format!("{name} vds={v}"),
            None => name.clone(),
        };
        series.push((label, iv.iter().map(|p| (p.v, p.i.abs())).collect::<Vec<_>>()));
        rows.extend(iv.into_iter().map(|p| IvCsvRow {
            device: name.clone(),
            v_ds_v: *vds,
            v_v: p.v,
            i_a: p.i,
        }));
    }
    let mut a = Artifacts::default();
    a.table("iv", &rows)?;
    a.chart(
        "iv",
        svg::lines(&Axes::new("Device I-V", "V [V]", "|I| [A]").log_y(), &series),
    );
    Ok(a)
}
