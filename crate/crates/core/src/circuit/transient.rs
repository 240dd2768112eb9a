//! Backward-Euler transient analysis.
//!
//! Steps are shortened on Newton failure and whenever a node moves by more
//! than `dv_max` in one step; the latter bounds the energy-balance defect of
//! the implicit scheme, which is `½·C·Δv²` per capacitor per step.

use nalgebra::DVector;

use super::dc::{dc_state, newton, NewtonOptions};
use super::mna::{Branch, Mode, System};
use super::{Circuit, ElementKind, NodeId, Waveform, GROUND};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TranOptions {
    pub t_stop: f64,
    /// Spacing of the recorded output grid [s].
    pub dt_out: f64,
    pub dt_init: f64,
    pub dt_min: f64,
    pub dt_max: f64,
    /// Largest node-voltage change accepted in one step [V].
    pub dv_max: f64,
    pub newton: NewtonOptions,
    /// Nodes held at the given voltage for the initial operating point.
    pub initial: Vec<(NodeId, f64)>,
}

impl TranOptions {
    pub fn new(t_stop: f64, dt_out: f64) -> Self {
        Self {
            t_stop,
            dt_out,
            dt_init: dt_out / 100.0,
            dt_min: 1e-21,
            dt_max: dt_out,
            dv_max: 5e-4,
            newton: NewtonOptions {
                vntol: None,
                ..NewtonOptions::default()
            },
            initial: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TranStats {
    pub accepted: usize,
    pub rejected: usize,
    pub newton_iterations: usize,
    /// Largest KCL residual over all accepted steps [A].
    pub max_residual: f64,
    /// Energy delivered by sources over the run [J].
    pub source_energy: f64,
    /// Energy dissipated in resistive elements [J].
    pub dissipated_energy: f64,
    /// Exact change of capacitor energy ½·C·v² [J].
    pub stored_energy_change: f64,
}

impl TranStats {
    /// |delivered − dissipated − stored| relative to the larger energy flow.
    pub fn energy_balance_error(&self) -> f64 {
        let defect = self.source_energy - self.dissipated_energy - self.stored_energy_change;
        let scale = self
            .source_energy
            .abs()
            .max(self.dissipated_energy.abs())
            .max(self.stored_energy_change.abs());
        if scale == 0.0 {
            0.0
        } else {
            defect.abs() / scale
        }
    }
}

#[derive(Debug, Clone)]
pub struct TransientResult {
    pub node_names: Vec<String>,
    pub element_names: Vec<String>,
    pub element_tags: Vec<String>,
    pub time: Vec<f64>,
    /// Node voltages per output point, ground first.
    pub voltages: Vec<Vec<f64>>,
    /// Element currents per output point.
    pub currents: Vec<Vec<f64>>,
    /// Cumulative energy absorbed by each element per output point [J].
    pub energy: Vec<Vec<f64>>,
    pub stats: TranStats,
}

impl TransientResult {
    pub fn node(&self, name: &str) -> Option<usize> {
        self.node_names.iter().position(|n| n == name)
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.element_names.iter().position(|n| n == name)
    }

    pub fn node_trace(&self, node: usize) -> Vec<f64> {
        self.voltages.iter().map(|v| v[node]).collect()
    }

    pub fn current_trace(&self, elem: usize) -> Vec<f64> {
        self.currents.iter().map(|c| c[elem]).collect()
    }

    /// Linear interpolation of a per-point quantity at time `t`.
    pub fn interpolate(&self, t: f64, f: impl Fn(usize) -> f64) -> f64 {
        let n = self.time.len();
        if t <= self.time[0] {
            return f(0);
        }
        if t >= self.time[n - 1] {
            return f(n - 1);
        }
        let k = self.time.partition_point(|&x| x <= t) - 1;
        let (t0, t1) = (self.time[k], self.time[k + 1]);
        let w = (t - t0) / (t1 - t0);
        f(k) * (1.0 - w) + f(k + 1) * w
    }
}

fn record(out: &mut TransientResult, t: f64, v: Vec<f64>, br: &[Branch], energy: &[f64]) {
    out.time.push(t);
    out.voltages.push(v);
    out.currents.push(br.iter().map(|b| b.i).collect());
    out.energy.push(energy.to_vec());
}

fn stored(circuit: &Circuit, v: &[f64]) -> f64 {
    circuit
        .elements
        .iter()
        .map(|e| match e.kind {
            ElementKind::Capacitor { c } => {
                let u = v[e.nodes[0]] - v[e.nodes[1]];
                0.5 * c * u * u
            }
            _ => 0.0,
        })
        .sum()
}

pub fn transient(circuit: &Circuit, opts: &TranOptions) -> Result<TransientResult> {
    circuit.validate()?;
    if !(opts.t_stop > 0.0 && opts.dt_out > 0.0 && opts.dt_init > 0.0 && opts.dv_max > 0.0) {
        return Err(Error::param(
            "transient",
            "t_stop, dt_out, dt_init and dv_max must be > 0",
        ));
    }

    // Initial operating point with clamped nodes; the clamp sources are dropped.
    let mut clamped = circuit.clone();
    for (k, &(node, v)) in opts.initial.iter().enumerate() {
        if node == GROUND || node >= circuit.node_count() {
            return Err(Error::param("transient.initial", "invalid node"));
        }
        clamped.vsource(&format!("__ic{k}"), "", node, GROUND, Waveform::Dc(v));
    }
    let (x_ic, _, _) = dc_state(&clamped, &opts.newton)?;
    let sys = System::new(circuit, opts.newton.gmin);
    let mut x = DVector::zeros(sys.dim);
    // Clamp sources come last, so the original unknowns are a prefix.
    for k in 0..sys.dim {
        x[k] = x_ic[k];
    }
    let mut v_prev = sys.voltages(&x);
    let br0 = sys.branches(&x, Mode::Dc);

    let n_out = (opts.t_stop / opts.dt_out).round() as usize;
    let mut out = TransientResult {
        node_names: circuit.node_names().to_vec(),
        element_names: circuit.elements.iter().map(|e| e.name.clone()).collect(),
        element_tags: circuit.elements.iter().map(|e| e.tag.clone()).collect(),
        time: Vec::with_capacity(n_out + 1),
        voltages: Vec::with_capacity(n_out + 1),
        currents: Vec::with_capacity(n_out + 1),
        energy: Vec::with_capacity(n_out + 1),
        stats: TranStats::default(),
    };
    let mut energy = vec![0.0; circuit.elements.len()];
    record(&mut out, 0.0, v_prev.clone(), &br0, &energy);
    let e_stored0 = stored(circuit, &v_prev);

    let mut marks: Vec<f64> = (1..=n_out).map(|k| k as f64 * opts.dt_out).collect();
    marks.extend(
        circuit
            .breakpoints()
            .into_iter()
            .filter(|&b| b > 0.0 && b < opts.t_stop),
    );
    marks.sort_by(f64::total_cmp);
    marks.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * opts.dt_out);

    let mut t = 0.0;
    let mut dt = opts.dt_init.min(opts.dt_max);
    let mut mi = 0;
    while mi < marks.len() {
        let target = marks[mi];
        let (step, lands) = if t + dt >= target * (1.0 - 1e-12) {
            (target - t, true)
        } else {
            (dt, false)
        };
        let t_new = if lands { target } else { t + step };
        let mode = Mode::Euler {
            dt: step,
            prev: &v_prev,
        };
        match newton(&sys, x.clone(), t_new, mode, &opts.newton) {
            Ok(o) => {
                let v_new = sys.voltages(&o.x);
                let dv = v_new.iter().zip(&v_prev).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                if dv > opts.dv_max && step > opts.dt_min * 2.0 {
                    out.stats.rejected += 1;
                    dt = step / 2.0;
                    continue;
                }
                let br = sys.branches(&o.x, mode);
                for (e, b) in energy.iter_mut().zip(&br) {
                    *e += b.p * step;
                }
                out.stats.accepted += 1;
                out.stats.newton_iterations += o.iterations;
                out.stats.max_residual = out.stats.max_residual.max(o.residual);
                x = o.x;
                t = t_new;
                if lands {
                    if (target / opts.dt_out - (target / opts.dt_out).round()).abs() < 1e-6 {
                        record(&mut out, t, v_new.clone(), &br, &energy);
                    }
                    mi += 1;
                }
                v_prev = v_new;
                if dv < 0.5 * opts.dv_max && !lands {
                    dt = (step * 1.5).min(opts.dt_max);
                } else if lands {
                    dt = dt.max(step).min(opts.dt_max);
                }
            }
            Err(Error::NonConvergence { .. }) | Err(Error::Singular) => {
                out.stats.rejected += 1;
                dt = step / 2.0;
                if dt < opts.dt_min {
                    return Err(Error::StepUnderflow { time: t, dt });
                }
            }
            Err(e) => return Err(e),
        }
        if dt < opts.dt_min {
            return Err(Error::StepUnderflow { time: t, dt });
        }
    }

    let mut src = 0.0;
    let mut diss = 0.0;
    for (e, el) in energy.iter().zip(&circuit.elements) {
        match el.kind {
            ElementKind::VSource { .. } => src -= e,
            ElementKind::Capacitor { .. } => {}
            _ => diss += e,
        }
    }
    out.stats.source_energy = src;
    out.stats.dissipated_energy = diss;
    out.stats.stored_energy_change = stored(circuit, &v_prev) - e_stored0;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rc_discharge_matches_exponential() {
        let (r, c, v0) = (10e3, 1e-15, 1.0);
        let tau = r * c;
        let mut ckt = Circuit::new();
        let n = ckt.node("n");
        let s = ckt.node("s");
        ckt.vsource("vs", "", s, GROUND, Waveform::Dc(0.0));
        ckt.capacitor("c", "", n, GROUND, c);
        ckt.resistor("r", "", n, s, r);
        let mut o = TranOptions::new(2.0 * tau, tau / 100.0);
        o.initial = vec![(n, v0)];
        let res = transient(&ckt, &o).unwrap();
        let k = res.time.iter().position(|&t| (t - tau).abs() < 1e-6 * tau).unwrap();
        let v = res.voltages[k][n];
        assert_relative_eq!(v, v0 * (-1.0f64).exp(), max_relative = 5e-3);
        assert!(res.stats.energy_balance_error() < 1e-3);
    }
}
