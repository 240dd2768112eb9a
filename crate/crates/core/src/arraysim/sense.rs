//! Precharge-and-discharge sensing: P/AP transients, sensing margin,
//! latency, sneak currents and read energy.

use serde::Serialize;

use super::read::{build_read_array, build_read_array_unrolled, ReadCircuit, TAG_COLUMN, TAG_REST, TAG_SELECTOR};
use super::{ArrayModels, ReadCase};
use crate::circuit::{transient, ElementKind, TranOptions, TransientResult};
use crate::devices::{effective_tmr, MtjModel, MtjState};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct SenseOptions {
    /// Output grid spacing shared by the P and AP runs [s].
    pub dt_out: f64,
    /// Per-step node-voltage change limit [V].
    pub dv_max: f64,
    /// Use the explicit per-row column instead of the lumped one.
    pub unrolled: bool,
}

impl Default for SenseOptions {
    fn default() -> Self {
        Self {
            dt_out: 2e-12,
            dv_max: 5e-4,
            unrolled: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct EnergyBreakdown {
    /// Line restore, line wire and unselected-cell energy [J].
    pub column_overhead: f64,
    /// Selected selector [J].
    pub selector: f64,
    /// Selected MTJ and SOT track [J].
    pub rest: f64,
    pub total: f64,
    /// Charge drawn to restore the line plus inhibit-supply energy [J].
    pub supply: f64,
}

impl EnergyBreakdown {
    pub fn column_share(&self) -> f64 {
        self.column_overhead / self.total
    }

    fn mean(a: &Self, b: &Self) -> Self {
        let m = |x: f64, y: f64| 0.5 * (x + y);
        Self {
            column_overhead: m(a.column_overhead, b.column_overhead),
            selector: m(a.selector, b.selector),
            rest: m(a.rest, b.rest),
            total: m(a.total, b.total),
            supply: m(a.supply, b.supply),
        }
    }
}

/// Energy absorbed per group over [0, t]. The line is assumed to be
/// restored to V_read afterwards, which costs ½·C·ΔV² in the restore path
/// on top of what the discharge dissipated.
pub fn read_energy_breakdown(rc: &ReadCircuit, res: &TransientResult, t: f64) -> EnergyBreakdown {
    let mut e = EnergyBreakdown::default();
    let v_at = |node: usize| res.interpolate(t, |k| res.voltages[k][node]);
    for (i, el) in rc.circuit.elements.iter().enumerate() {
        let absorbed = res.interpolate(t, |k| res.energy[k][i]);
        match &el.kind {
            ElementKind::Capacitor { c } => {
                let v0 = rc
                    .precharged
                    .iter()
                    .find(|p| p.0 == el.nodes[0])
                    .map(|p| p.1)
                    .unwrap_or(rc.v_read);
                let v = v_at(el.nodes[0]) - v_at(el.nodes[1]);
                let dv = v0 - v;
                e.column_overhead += 0.5 * c * dv * dv;
                e.supply += c * v0 * dv;
            }
            ElementKind::VSource { .. } => {
                if rc.inhibit.contains(&i) {
                    e.supply -= absorbed;
                }
            }
            _ => match el.tag.as_str() {
                TAG_SELECTOR => e.selector += absorbed,
                TAG_REST => e.rest += absorbed,
                TAG_COLUMN => e.column_overhead += absorbed,
                _ => {}
            },
        }
    }
    e.total = e.column_overhead + e.selector + e.rest;
    e
}

#[derive(Debug, Clone, Serialize)]
pub struct SenseReport {
    pub feasible: bool,
    /// First time SM reaches the threshold [s].
    pub latency: Option<f64>,
    /// Instant at which currents, R_sel and energy are sampled [s].
    pub t_sample: f64,
    pub sm_peak: f64,
    pub t_sm_peak: f64,
    /// Selected-cell current in the P run at `t_sample` [A].
    pub i_dchg: f64,
    /// Net current leaving the line through unselected cells [A];
    /// negative when it flows into the line.
    pub sigma_i_sneak: f64,
    /// |i_dchg / Σi_sneak|.
    pub ratio: f64,
    /// Secant selector resistance at `t_sample` [Ω].
    pub r_sel: f64,
    pub r_p: f64,
    pub tmr_eff: f64,
    pub v_sense_p: f64,
    pub v_sense_ap: f64,
    /// Mean of the P and AP breakdowns [J].
    pub energy: EnergyBreakdown,
    pub energy_balance_error: f64,
    pub max_kcl_residual: f64,
}

/// Both transients of one sense operation.
#[derive(Debug, Clone)]
pub struct SenseRun {
    pub report: SenseReport,
    pub p: (ReadCircuit, TransientResult),
    pub ap: (ReadCircuit, TransientResult),
    pub sm: Vec<f64>,
}

fn run(case: &ReadCase, m: &ArrayModels, state: MtjState, o: &SenseOptions) -> Result<(ReadCircuit, TransientResult)> {
    let rc = if o.unrolled {
        build_read_array_unrolled(case, m, state)?
    } else {
        build_read_array(case, m, state)?
    };
    let mut t = TranOptions::new(m.read.window, o.dt_out);
    t.dv_max = o.dv_max;
    t.initial = rc.precharged.clone();
    let res = transient(&rc.circuit, &t)?;
    Ok((rc, res))
}

pub fn sense(case: &ReadCase, m: &ArrayModels) -> Result<SenseReport> {
    Ok(sense_with(case, m, &SenseOptions::default())?.report)
}

pub fn sense_with(case: &ReadCase, m: &ArrayModels, o: &SenseOptions) -> Result<SenseRun> {
    m.validate()?;
    let threshold = case.sense_threshold.unwrap_or(m.read.sense_threshold);
    let (rp, p) = run(case, m, MtjState::P, o)?;
    let (rap, ap) = run(case, m, MtjState::AP, o)?;
    let sense_p = p.node_trace(rp.sense);
    let sense_ap = ap.node_trace(rap.sense);
    let sm: Vec<f64> = sense_p.iter().zip(&sense_ap).map(|(a, b)| (a - b).abs()).collect();

    let (k_peak, sm_peak) = sm.iter().enumerate().fold(
        (0, f64::NEG_INFINITY),
        |acc, (k, &v)| if v > acc.1 { (k, v) } else { acc },
    );
    let latency = sm.iter().position(|&v| v >= threshold).map(|k| {
        if k == 0 {
            p.time[0]
        } else {
            let (s0, s1) = (sm[k - 1], sm[k]);
            let (t0, t1) = (p.time[k - 1], p.time[k]);
            t0 + (threshold - s0) / (s1 - s0) * (t1 - t0)
        }
    });
    let t_sample = latency.unwrap_or(p.time[k_peak]);

    let at = |res: &TransientResult, f: &dyn Fn(usize) -> f64| res.interpolate(t_sample, f);
    let i_dchg = at(&p, &|k| p.currents[k][rp.selector]);
    let sigma_i_sneak = at(&p, &|k| rp.sneak.iter().map(|&e| p.currents[k][e]).sum());
    let (na, nb) = rp.selector_nodes;
    let v_sel = at(&p, &|k| p.voltages[k][na] - p.voltages[k][nb]);
    let r_sel = v_sel / i_dchg;
    let r_p = MtjModel {
        ra: case.ra,
        tmr: case.tmr,
        d_mtj: m.stack.d_mtj,
        state: MtjState::P,
    }
    .r_p();
    let energy = EnergyBreakdown::mean(
        &read_energy_breakdown(&rp, &p, t_sample),
        &read_energy_breakdown(&rap, &ap, t_sample),
    );
    let report = SenseReport {
        feasible: latency.is_some(),
        latency,
        t_sample,
        sm_peak,
        t_sm_peak: p.time[k_peak],
        i_dchg,
        sigma_i_sneak,
        ratio: if sigma_i_sneak == 0.0 {
            f64::INFINITY
        } else {
            (i_dchg / sigma_i_sneak).abs()
        },
        r_sel,
        r_p,
        tmr_eff: effective_tmr(r_p, case.tmr, r_sel),
        v_sense_p: at(&p, &|k| sense_p[k]),
        v_sense_ap: at(&ap, &|k| sense_ap[k]),
        energy,
        energy_balance_error: p.stats.energy_balance_error().max(ap.stats.energy_balance_error()),
        max_kcl_residual: p.stats.max_residual.max(ap.stats.max_residual),
    };
    Ok(SenseRun {
        report,
        p: (rp, p),
        ap: (rap, ap),
        sm,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct WaveRow {
    pub t_s: f64,
    pub v_sense_p_v: f64,
    pub v_sense_ap_v: f64,
    pub sm_v: f64,
    pub i_dchg_p_a: f64,
    pub i_sneak_p_a: f64,
    pub i_dchg_ap_a: f64,
    pub i_sneak_ap_a: f64,
}

/// Waveform table of a sense run, decimated to every `stride`-th point.
pub fn waveform_rows(run: &SenseRun, stride: usize) -> Vec<WaveRow> {
    let (rp, p) = &run.p;
    let (rap, ap) = &run.ap;
    (0..p.time.len())
        .step_by(stride.max(1))
        .map(|k| WaveRow {
            t_s: p.time[k],
            v_sense_p_v: p.voltages[k][rp.sense],
            v_sense_ap_v: ap.voltages[k][rap.sense],
            sm_v: run.sm[k],
            i_dchg_p_a: p.currents[k][rp.selector],
            i_sneak_p_a: rp.sneak.iter().map(|&e| p.currents[k][e]).sum(),
            i_dchg_ap_a: ap.currents[k][rap.selector],
            i_sneak_ap_a: rap.sneak.iter().map(|&e| ap.currents[k][e]).sum(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arraysim::reference_read_points;

    #[test]
    fn parallel_state_discharges_faster() {
        let m = ArrayModels::default();
        let (_, case) = &reference_read_points()[4];
        let run = sense_with(case, &m, &SenseOptions::default()).unwrap();
        assert!(run.sm.iter().all(|v| *v >= -1e-9));
        assert!(run.report.v_sense_p < run.report.v_sense_ap);
        let e = run.report.energy;
        assert!((e.column_overhead + e.selector + e.rest - e.total).abs() <= 1e-12 * e.total);
        assert!(waveform_rows(&run, 10).len() < run.sm.len());
    }
}
