//! Fitters that pin the free model parameters to the reference array data.
//!
//! Every fitter is deterministic: fixed starting points, fixed iteration
//! budgets and no randomness. `frozen` holds the result of running
//! [`calibrate_all`] once, so normal runs need not refit.

pub mod frozen;
pub mod lm;

use serde::Serialize;

use crate::arraysim::{
    reference_read_points, sense, write_current, ArrayModels, ReadCase, SelectorKind, SenseReport, WriteCase,
};
use crate::devices::{Corner, CornerTable, DiodeKind, DiodeModel, IgzoFetModel};
use crate::error::{Error, Result};
use crate::techmodel::{CellLayout, ConfigId, TechNode};
use lm::{levenberg_marquardt, LmOptions};

/// Bitline resistance of the farthest cell at 128 rows [Ω].
pub const BL_TARGETS: [(ConfigId, f64); 4] = [
    (ConfigId::TwoT1rRv, 1700.0),
    (ConfigId::OneT1r1t, 1400.0),
    (ConfigId::OneT1r1tVga, 1400.0),
    (ConfigId::OneT1d1r, 870.0),
];

/// Write cell current at 128 rows [A].
pub const ICELL_TARGETS: [(ConfigId, Corner, f64); 12] = [
    (ConfigId::TwoT1rRv, Corner::Ss, 115e-6),
    (ConfigId::TwoT1rRv, Corner::Tt, 124e-6),
    (ConfigId::TwoT1rRv, Corner::Ff, 130e-6),
    (ConfigId::OneT1r1t, Corner::Ss, 140e-6),
    (ConfigId::OneT1r1t, Corner::Tt, 152e-6),
    (ConfigId::OneT1r1t, Corner::Ff, 159e-6),
    (ConfigId::OneT1r1tVga, Corner::Ss, 135e-6),
    (ConfigId::OneT1r1tVga, Corner::Tt, 147e-6),
    (ConfigId::OneT1r1tVga, Corner::Ff, 156e-6),
    (ConfigId::OneT1d1r, Corner::Ss, 115e-6),
    (ConfigId::OneT1d1r, Corner::Tt, 134e-6),
    (ConfigId::OneT1d1r, Corner::Ff, 154e-6),
];

/// Cell-current ratios that the write fit must also honor:
/// (numerator, denominator, corner, ratio).
pub const ICELL_RATIO_TARGETS: [(ConfigId, ConfigId, Corner, f64); 2] = [
    (ConfigId::OneT1d1r, ConfigId::TwoT1rRv, Corner::Tt, 134.0 / 124.0),
    (ConfigId::OneT1r1t, ConfigId::TwoT1rRv, Corner::Ss, 140.0 / 115.0),
];

/// One reference read design point with the metrics it reported.
#[derive(Debug, Clone, Serialize)]
pub struct ReadTarget {
    pub label: &'static str,
    pub case: ReadCase,
    pub r_sel: f64,
    pub tmr_eff: f64,
    pub i_dchg: f64,
    pub ratio: f64,
    pub sm: f64,
}

pub fn read_targets() -> Vec<ReadTarget> {
    let vals = [
        (3.4e3, 75.0, 25e-6, 58.0, 0.107),
        (186e3, 101.0, 0.83e-6, 2.1, 0.102),
        (338e3, 56.0, 0.66e-6, 16.0, 0.108),
        (361e3, 56.0, 4.0e-6, 1.1, 0.099),
        (197e3, 44.0, 4.5e-6, 3.1, 0.104),
    ];
    reference_read_points()
        .into_iter()
        .zip(vals)
        .map(|((label, case), (r_sel, tmr_eff, i_dchg, ratio, sm))| ReadTarget {
            label,
            case,
            r_sel,
            tmr_eff,
            i_dchg,
            ratio,
            sm,
        })
        .collect()
}

fn targets_for(sel: SelectorKind) -> Vec<ReadTarget> {
    read_targets().into_iter().filter(|t| t.case.selector == sel).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct BitlineFit {
    pub ohm_per_nm: f64,
    /// (config, model [Ω], target [Ω], relative error)
    pub rows: Vec<(ConfigId, f64, f64, f64)>,
    pub max_rel_error: f64,
}

/// Single Ω/nm constant minimizing the worst relative error over the
/// tabulated bitline resistances. For a model `k·aᵢ` against targets `tᵢ`
/// the minimax constant balances the extreme quotients qᵢ = tᵢ/aᵢ:
/// k = 2·q_min·q_max / (q_min + q_max).
pub fn fit_bitline(tech: &TechNode, layout: &CellLayout) -> Result<BitlineFit> {
    let len = |c: ConfigId| 128.0 * layout.dims(c).width_cpp as f64 * tech.cpp;
    let q: Vec<f64> = BL_TARGETS.iter().map(|&(c, t)| t / len(c)).collect();
    let lo = q.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = q.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let k = 2.0 * lo * hi / (lo + hi);
    let rows: Vec<_> = BL_TARGETS
        .iter()
        .map(|&(c, t)| {
            let r = k * len(c);
            (c, r, t, r / t - 1.0)
        })
        .collect();
    let max_rel_error = rows.iter().map(|r| r.3.abs()).fold(0.0, f64::max);
    Ok(BitlineFit {
        ohm_per_nm: k,
        rows,
        max_rel_error,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FinFetFit {
    pub i_sat_per_fin: CornerTable,
    pub v_t: f64,
    pub v_dsat: f64,
    pub return_ratio: f64,
    /// (config, corner, model [A], target [A], relative error)
    pub icell: Vec<(ConfigId, Corner, f64, f64, f64)>,
    /// Model ratio minus target ratio for each ratio target.
    pub ratio_errors: Vec<f64>,
}

fn with_write_params(m: &ArrayModels, isat: CornerTable, v_t: f64, v_dsat: f64, k_ret: f64) -> ArrayModels {
    let mut out = m.clone();
    let v_gate = m.write.v_write + m.write.gate_overdrive;
    out.finfet = crate::arraysim::finfet_per_fin(isat, v_t, v_dsat, v_gate);
    out.write.return_ratio = k_ret;
    out
}

fn icells(m: &ArrayModels) -> Result<Vec<f64>> {
    ICELL_TARGETS
        .iter()
        .map(|&(c, k, _)| Ok(write_current(&WriteCase::new(c, 128, k), m)?.i_cell))
        .collect()
}

/// Fits the per-corner per-fin drive, the threshold and the return-line
/// ratio to the write cell currents, with the knee voltage held at `v_dsat`.
pub fn calibrate_finfet(m: &ArrayModels, v_dsat: f64) -> Result<FinFetFit> {
    calibrate_finfet_with(m, v_dsat, None)
}

/// As [`calibrate_finfet`], optionally holding the threshold at `v_t`.
pub fn calibrate_finfet_with(m: &ArrayModels, v_dsat: f64, v_t: Option<f64>) -> Result<FinFetFit> {
    let v_gate = m.write.v_write + m.write.gate_overdrive;
    let unpack = |p: &[f64]| {
        let isat = CornerTable {
            ss: p[0].exp(),
            tt: p[1].exp(),
            ff: p[2].exp(),
        };
        match v_t {
            Some(vt) => (isat, vt, p[3]),
            None => (isat, p[3], p[4]),
        }
    };
    let resid = |p: &[f64]| -> Result<Vec<f64>> {
        let (isat, vt, k) = unpack(p);
        if !(vt > 0.0 && vt < v_gate - 0.05 && k >= 0.0) {
            return Err(Error::param("finfet fit", "outside bounds"));
        }
        let mm = with_write_params(m, isat, vt, v_dsat, k);
        mm.finfet.validate()?;
        let i = icells(&mm)?;
        let mut r: Vec<f64> = i.iter().zip(ICELL_TARGETS.iter()).map(|(a, t)| a / t.2 - 1.0).collect();
        for &(num, den, k, ratio) in &ICELL_RATIO_TARGETS {
            let pos = |c| {
                ICELL_TARGETS
                    .iter()
                    .position(|t| t.0 == c && t.1 == k)
                    .expect("tabulated")
            };
            r.push(i[pos(num)] / i[pos(den)] - ratio);
        }
        Ok(r)
    };
    let mut best: Option<lm::LmResult> = None;
    for vt0 in [0.25, 0.35, 0.45] {
        let mut p0 = vec![(1e-4f64).ln(), (1.4e-4f64).ln(), (2e-4f64).ln(), vt0, 0.5];
        if v_t.is_some() {
            p0.remove(3);
        }
        match levenberg_marquardt(resid, &p0, &LmOptions::default()) {
            Ok(r) if best.as_ref().is_none_or(|b| r.cost < b.cost) => best = Some(r),
            _ => {}
        }
    }
    let best = best.ok_or_else(|| Error::Calibration {
        fit: "finfet",
        reason: "no starting point converged".into(),
    })?;
    let (isat, v_t, return_ratio) = unpack(&best.params);
    let mm = with_write_params(m, isat, v_t, v_dsat, return_ratio);
    let i = icells(&mm)?;
    let icell = ICELL_TARGETS
        .iter()
        .zip(&i)
        .map(|(&(c, k, t), &a)| (c, k, a, t, a / t - 1.0))
        .collect();
    Ok(FinFetFit {
        i_sat_per_fin: isat,
        v_t,
        v_dsat,
        return_ratio,
        icell,
        ratio_errors: best.residuals[ICELL_TARGETS.len()..].to_vec(),
    })
}

impl FinFetFit {
    pub fn apply(&self, m: &ArrayModels) -> ArrayModels {
        with_write_params(m, self.i_sat_per_fin, self.v_t, self.v_dsat, self.return_ratio)
    }

    pub fn max_icell_error(&self) -> f64 {
        self.icell.iter().map(|r| r.4.abs()).fold(0.0, f64::max)
    }
}

/// Achieved and reference metrics of one read design point.
#[derive(Debug, Clone, Serialize)]
pub struct ReadFitRow {
    pub label: &'static str,
    pub r_sel: (f64, f64),
    pub i_dchg: (f64, f64),
    pub ratio: (f64, f64),
    pub sm: (f64, f64),
}

#[derive(Debug, Clone, Serialize)]
pub struct SelectorFit {
    pub selector: SelectorKind,
    pub params: Vec<(&'static str, f64)>,
    pub rows: Vec<ReadFitRow>,
    pub cost: f64,
}

/// Residual weights (log-space) for R_sel, i_dchg, the sneak ratio and SM.
const W_RSEL: f64 = 6.0;
const W_IDCHG: f64 = 3.0;
const W_RATIO: f64 = 2.0;
const W_SM: f64 = 3.0;
/// The fitted SM peak must clear the sense threshold by this factor, so every
/// reference point has a defined latency.
const SM_FLOOR: f64 = 1.03;

fn read_residuals(
    m: &ArrayModels,
    targets: &[ReadTarget],
    out: &mut Vec<f64>,
) -> Result<(Vec<ReadFitRow>, Vec<SenseReport>)> {
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for t in targets {
        let r = sense(&t.case, m)?;
        out.push(W_RSEL * (r.r_sel / t.r_sel).ln());
        out.push(W_IDCHG * (r.i_dchg / t.i_dchg).ln());
        out.push(W_RATIO * (r.ratio / t.ratio).ln());
        out.push(W_SM * (r.sm_peak / t.sm).ln());
        let floor = SM_FLOOR * t.case.sense_threshold.unwrap_or(m.read.sense_threshold);
        out.push(10.0 * (floor / r.sm_peak).ln().max(0.0));
        rows.push(ReadFitRow {
            label: t.label,
            r_sel: (r.r_sel, t.r_sel),
            i_dchg: (r.i_dchg, t.i_dchg),
            ratio: (r.ratio, t.ratio),
            sm: (r.sm_peak, t.sm),
        });
        reports.push(r);
    }
    Ok((rows, reports))
}

/// Generic selector fit: `build` maps the parameter vector onto a model set.
fn fit_selector<B>(
    m: &ArrayModels,
    selector: SelectorKind,
    names: &[&'static str],
    p0: &[f64],
    build: B,
    extra: &dyn Fn(&ArrayModels, &[SenseReport]) -> Vec<f64>,
) -> Result<(ArrayModels, SelectorFit)>
where
    B: Fn(&ArrayModels, &[f64]) -> Result<ArrayModels>,
{
    let targets = targets_for(selector);
    let resid = |p: &[f64]| -> Result<Vec<f64>> {
        let mm = build(m, p)?;
        let mut out = Vec::new();
        let (_, reports) = read_residuals(&mm, &targets, &mut out)?;
        out.extend(extra(&mm, &reports));
        Ok(out)
    };
    let opts = LmOptions {
        max_iter: 60,
        ftol: 1e-8,
        xtol: 1e-8,
        fd_step: 1e-4,
        ..LmOptions::default()
    };
    let best = levenberg_marquardt(resid, p0, &opts)?;
    let mm = build(m, &best.params)?;
    let mut scratch = Vec::new();
    let (rows, _) = read_residuals(&mm, &targets, &mut scratch)?;
    let fit = SelectorFit {
        selector,
        params: names.iter().cloned().zip(best.params.iter().cloned()).collect(),
        rows,
        cost: best.cost,
    };
    Ok((mm, fit))
}

/// IGZO-FET leakage floor at v_gs = 0 for the as-measured device [A/µm].
pub const IGZO_OFF_MIN_PER_UM: f64 = 700e-9;
/// IGZO-FET drive bound [A/µm].
pub const IGZO_ON_MAX_PER_UM: f64 = 100e-6;
/// Drain bias at which the leakage floor and the drive bound are checked [V].
pub const IGZO_REF_VDS: f64 = 1.8;
/// Gate bias at which the drive bound is checked [V].
pub const IGZO_ON_VGS: f64 = 2.0;

/// Largest latency ratio between the two 1T1R1T read points.
pub const IGZO_LATENCY_SPREAD: f64 = 1.55;

/// One-sided penalties keeping the IGZO-FET inside its reported ON/OFF envelope.
fn igzo_envelope(g: &IgzoFetModel) -> Vec<f64> {
    let off = g.current_density(0.0, IGZO_REF_VDS);
    let on = g.current_density(IGZO_ON_VGS, IGZO_REF_VDS);
    vec![
        10.0 * (IGZO_OFF_MIN_PER_UM * 1.02 / off).ln().max(0.0),
        10.0 * (on / (IGZO_ON_MAX_PER_UM * 0.98)).ln().max(0.0),
    ]
}

/// Fits the IGZO-FET specific current, swing, drive ceiling, DIBL and
/// mobility exponent to both 1T1R1T read points, holding the measured
/// −60 mV threshold and the ON/OFF envelope.
pub fn calibrate_igzo(m: &ArrayModels) -> Result<(ArrayModels, SelectorFit)> {
    let g = &m.read.igzo;
    let p0 = [
        g.i_spec_per_um.ln(),
        g.subthreshold_swing,
        g.i_on_per_um.ln(),
        g.dibl,
        g.mobility_exponent,
        g.smoothing.ln(),
    ];
    let build = |m: &ArrayModels, p: &[f64]| {
        let mut mm = m.clone();
        mm.read.igzo = IgzoFetModel {
            i_spec_per_um: p[0].exp(),
            subthreshold_swing: p[1],
            i_on_per_um: p[2].exp(),
            dibl: p[3],
            mobility_exponent: p[4],
            smoothing: p[5].exp(),
            ..m.read.igzo.clone()
        };
        mm.read.igzo.validate()?;
        Ok(mm)
    };
    let (mm, mut fit) = fit_selector(
        m,
        SelectorKind::Igzo,
        &[
            "ln_i_spec_per_um",
            "subthreshold_swing",
            "ln_i_on_per_um",
            "dibl",
            "mobility_exponent",
            "ln_smoothing",
        ],
        &p0,
        build,
        &|mm, reports| {
            let mut r = igzo_envelope(&mm.read.igzo);
            // Both points share one line capacitance, so their latencies
            // must be close enough to fit one band.
            let lat = |k: usize| reports[k].latency.unwrap_or(reports[k].t_sm_peak);
            r.push(
                10.0 * ((lat(1) / lat(0)).max(lat(0) / lat(1)) / IGZO_LATENCY_SPREAD)
                    .ln()
                    .max(0.0),
            );
            r
        },
    )?;
    let g = &mm.read.igzo;
    fit.params = vec![
        ("i_spec_per_um", g.i_spec_per_um),
        ("subthreshold_swing", g.subthreshold_swing),
        ("i_on_per_um", g.i_on_per_um),
        ("dibl", g.dibl),
        ("mobility_exponent", g.mobility_exponent),
        ("smoothing", g.smoothing),
    ];
    Ok((mm, fit))
}

const TUNNEL_RATIO_MARGIN: f64 = 0.98;

pub fn calibrate_tunnel(m: &ArrayModels) -> Result<(ArrayModels, SelectorFit)> {
    let d = &m.read.tunnel;
    let p0 = [d.i_0.ln(), d.v_0_fwd.ln(), d.r_series.max(1.0).ln()];
    let build = |m: &ArrayModels, p: &[f64]| {
        let mut mm = m.clone();
        mm.read.tunnel = DiodeModel::tunnel(p[0].exp(), p[1].exp(), p[2].exp());
        mm.read.tunnel.validate()?;
        Ok(mm)
    };
    // The symmetric diode is the least selective cell: its sneak ratio is
    // kept under that of the leaky IGZO point of `m`.
    let ceiling = TUNNEL_RATIO_MARGIN * sense(&targets_for(SelectorKind::Igzo)[0].case, m)?.ratio;
    let (mm, mut fit) = fit_selector(
        m,
        SelectorKind::Tunnel,
        &["ln_i_0", "ln_v_0", "ln_r_series"],
        &p0,
        build,
        &|_, r| vec![30.0 * (r[0].ratio / ceiling).ln().max(0.0)],
    )?;
    let t = &mm.read.tunnel;
    fit.params = vec![("i_0", t.i_0), ("v_0", t.v_0_fwd), ("r_series", t.r_series)];
    Ok((mm, fit))
}

/// Fits the Schottky diode saturation current, forward slope, perimeter
/// leakage and series resistance. The reverse slope is held: with a single
/// reverse operating point it is not separable from the perimeter leakage.
pub fn calibrate_schottky(m: &ArrayModels) -> Result<(ArrayModels, SelectorFit)> {
    let d = &m.read.schottky;
    let p0 = [
        d.i_0.ln(),
        d.v_0_fwd.ln(),
        d.perimeter_leak_g.ln(),
        d.r_series.max(1.0).ln(),
    ];
    let build = |m: &ArrayModels, p: &[f64]| {
        let mut mm = m.clone();
        mm.read.schottky = DiodeModel {
            kind: DiodeKind::SchottkyAsymmetric,
            i_0: p[0].exp(),
            v_0_fwd: p[1].exp(),
            v_0_rev: m.read.schottky.v_0_rev,
            r_series: p[3].exp(),
            perimeter_leak_g: p[2].exp(),
        };
        mm.read.schottky.validate()?;
        Ok(mm)
    };
    let (mm, mut fit) = fit_selector(
        m,
        SelectorKind::Schottky,
        &["ln_i_0", "ln_v_0_fwd", "ln_perimeter_leak_g", "ln_r_series"],
        &p0,
        build,
        &|_, _| Vec::new(),
    )?;
    let s = &mm.read.schottky;
    fit.params = vec![
        ("i_0", s.i_0),
        ("v_0_fwd", s.v_0_fwd),
        ("perimeter_leak_g", s.perimeter_leak_g),
        ("r_series", s.r_series),
    ];
    Ok((mm, fit))
}

/// Fits the 2T1R read transistor: the shared FinFET knee voltage (the write
/// fit is redone for every trial value), the read wordline level and the
/// drain-junction leakage of unselected read transistors.
pub fn calibrate_rdt(m: &ArrayModels) -> Result<(ArrayModels, FinFetFit, SelectorFit)> {
    let p0 = [m.finfet.v_dsat.ln(), m.read.rdt_wordline, m.read.rdt_junction_g.ln()];
    let build = |m: &ArrayModels, p: &[f64]| -> Result<ArrayModels> {
        if !(p[1] > 0.5 && p[1] < 1.5 && p[0].exp() > 0.02 && p[0].exp() < 3.0) {
            return Err(Error::param("rdt fit", "outside bounds"));
        }
        let fit = calibrate_finfet(m, p[0].exp())?;
        let mut mm = fit.apply(m);
        mm.read.rdt_wordline = p[1];
        mm.read.rdt_junction_g = p[2].exp();
        Ok(mm)
    };
    let (mm, mut fit) = fit_selector(
        m,
        SelectorKind::Finfet,
        &["ln_v_dsat", "rdt_wordline", "ln_rdt_junction_g"],
        &p0,
        build,
        &|_, _| Vec::new(),
    )?;
    let ff = calibrate_finfet(m, mm.finfet.v_dsat)?;
    fit.params = vec![
        ("v_dsat", mm.finfet.v_dsat),
        ("rdt_wordline", mm.read.rdt_wordline),
        ("rdt_junction_g", mm.read.rdt_junction_g),
    ];
    Ok((mm, ff, fit))
}

/// IGZO read latency band [s].
pub const IGZO_LATENCY_BAND: (f64, f64) = (3e-9, 5e-9);

#[derive(Debug, Clone, Serialize)]
pub struct LineCapFit {
    pub line_cap_per_cell: f64,
    /// Latency of each IGZO reference point after the fit [s].
    pub latencies: Vec<(&'static str, Option<f64>)>,
}

/// Scales the per-cell line capacitance so the IGZO latencies sit
/// geometrically centred in [`IGZO_LATENCY_BAND`]. Latency of the lumped
/// column is proportional to the line capacitance, so one rescale suffices;
/// a second pass absorbs the residual from the sampled crossing time.
pub fn calibrate_line_cap(m: &ArrayModels) -> Result<(ArrayModels, LineCapFit)> {
    let targets = targets_for(SelectorKind::Igzo);
    let centre = (IGZO_LATENCY_BAND.0 * IGZO_LATENCY_BAND.1).sqrt();
    let mut mm = m.clone();
    for _ in 0..2 {
        let mut log_sum = 0.0;
        for t in &targets {
            let r = sense(&t.case, &mm)?;
            let lat = r.latency.ok_or_else(|| Error::Calibration {
                fit: "line_cap",
                reason: format!("{} never reaches the sense threshold", t.label),
            })?;
            log_sum += lat.ln();
        }
        let mean = (log_sum / targets.len() as f64).exp();
        mm.read.line_cap_per_cell *= centre / mean;
    }
    let latencies = targets
        .iter()
        .map(|t| Ok((t.label, sense(&t.case, &mm)?.latency)))
        .collect::<Result<_>>()?;
    Ok((
        mm.clone(),
        LineCapFit {
            line_cap_per_cell: mm.read.line_cap_per_cell,
            latencies,
        },
    ))
}

/// Everything [`calibrate_all`] fitted.
#[derive(Debug, Clone, Serialize)]
pub struct CalibrationReport {
    pub bitline: BitlineFit,
    pub finfet: FinFetFit,
    pub selectors: Vec<SelectorFit>,
    pub line_cap: LineCapFit,
}

/// Runs every fitter in dependency order, starting from `m`: bitline,
/// write FinFET with the 2T1R read transistor, IGZO, the diodes (the tunnel
/// fit reads the IGZO result) and finally the line capacitance.
pub fn calibrate_all(m: &ArrayModels) -> Result<(ArrayModels, CalibrationReport)> {
    let bitline = fit_bitline(&m.tech, &m.layout)?;
    let mut mm = m.clone();
    mm.tech.bl_resistance_per_length = bitline.ohm_per_nm;
    let (mm, finfet, rdt) = calibrate_rdt(&mm)?;
    let (mm, igzo) = calibrate_igzo(&mm)?;
    let (mm, tunnel) = calibrate_tunnel(&mm)?;
    let (mm, schottky) = calibrate_schottky(&mm)?;
    let (mm, line_cap) = calibrate_line_cap(&mm)?;
    Ok((
        mm,
        CalibrationReport {
            bitline,
            finfet,
            selectors: vec![rdt, igzo, tunnel, schottky],
            line_cap,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimax_bitline_balances_the_extreme_errors() {
        let fit = fit_bitline(&TechNode::n7(), &CellLayout::default()).unwrap();
        let lo = fit.rows.iter().map(|r| r.3).fold(f64::INFINITY, f64::min);
        let hi = fit.rows.iter().map(|r| r.3).fold(f64::NEG_INFINITY, f64::max);
        assert!((lo + hi).abs() < 1e-12);
    }

    #[test]
    fn one_read_target_per_reference_point() {
        let t = read_targets();
        assert_eq!(t.len(), reference_read_points().len());
        assert_eq!(targets_for(SelectorKind::Igzo).len(), 2);
    }
}
