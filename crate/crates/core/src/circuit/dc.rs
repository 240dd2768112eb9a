use nalgebra::DVector;

use super::mna::{Mode, System};
use super::{Circuit, NodeId, Waveform};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub max_iter: usize,
    /// Absolute KCL tolerance [A].
    pub abstol: f64,
    /// KCL tolerance relative to the current magnitude incident at a node.
    pub reltol: f64,
    /// Largest node-voltage update per iteration [V].
    pub max_step: f64,
    /// Shunt conductance from every node to ground [S].
    pub gmin: f64,
    /// When set, convergence also needs every node's estimated voltage error below this [V].
    pub vntol: Option<f64>,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            max_iter: 100,
            abstol: 1e-12,
            reltol: 1e-9,
            max_step: 0.3,
            gmin: 1e-16,
            vntol: Some(1e-12),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DcResult {
    pub node_names: Vec<String>,
    /// Node voltages, ground first.
    pub voltages: Vec<f64>,
    /// Element terminal currents (first to second terminal, drain to source).
    pub currents: Vec<f64>,
    pub iterations: usize,
    /// Largest KCL residual at any non-ground node [A].
    pub max_residual: f64,
}

impl DcResult {
    pub fn v(&self, node: &str) -> Option<f64> {
        self.node_names.iter().position(|n| n == node).map(|k| self.voltages[k])
    }
}

pub(crate) struct NewtonOutcome {
    pub x: DVector<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Returns (converged, largest node residual, worst node row).
fn converged(sys: &System, a: &super::mna::Assembly, opts: &NewtonOptions) -> (bool, f64, usize) {
    let mut ok = true;
    let (mut worst, mut worst_k, mut worst_ratio) = (0.0f64, 0, 0.0f64);
    for k in 0..sys.nn {
        let r = a.f[k].abs();
        let tol = opts.abstol + opts.reltol * a.scale[k];
        if r > tol {
            ok = false;
        }
        if r / tol > worst_ratio {
            worst_ratio = r / tol;
            worst_k = k;
        }
        worst = worst.max(r);
    }
    for b in sys.nn..sys.dim {
        if a.f[b].abs() > 1e-12 {
            ok = false;
        }
    }
    (ok, worst, worst_k)
}

pub(crate) fn newton(
    sys: &System,
    mut x: DVector<f64>,
    t: f64,
    mode: Mode,
    opts: &NewtonOptions,
) -> Result<NewtonOutcome> {
    let mut last = (f64::INFINITY, 0);
    for it in 0..=opts.max_iter {
        let a = sys.assemble(&x, t, mode);
        if a.f.iter().any(|v| !v.is_finite()) {
            break;
        }
        let (ok, worst, wk) = converged(sys, &a, opts);
        last = (worst, wk);
        // Voltage error estimate |f|/J_kk per node.
        let settled = |tol: f64| (0..sys.nn).all(|k| a.f[k].abs() <= tol * a.j[(k, k)].abs());
        if ok && (sys.linear || opts.vntol.is_none_or(settled)) {
            return Ok(NewtonOutcome {
                x,
                iterations: it,
                residual: worst,
            });
        }
        if it == opts.max_iter {
            break;
        }
        let dx = a.j.lu().solve(&(-&a.f)).ok_or(Error::Singular)?;
        let big = dx.iter().take(sys.nn).fold(0.0f64, |m, d| m.max(d.abs()));
        let k = if big > opts.max_step && !sys.linear {
            opts.max_step / big
        } else {
            1.0
        };
        x.axpy(k, &dx, 1.0);
    }
    Err(Error::NonConvergence {
        iterations: opts.max_iter,
        worst_node: sys.circuit.node_name(last.1 + 1).to_string(),
        residual: last.0,
    })
}

pub(crate) fn dc_state(circuit: &Circuit, opts: &NewtonOptions) -> Result<(DVector<f64>, usize, f64)> {
    circuit.validate()?;
    let mut sys = System::new(circuit, opts.gmin);
    let x0 = DVector::zeros(sys.dim);
    match newton(&sys, x0.clone(), 0.0, Mode::Dc, opts) {
        Ok(o) => Ok((o.x, o.iterations, o.residual)),
        Err(Error::NonConvergence { .. }) | Err(Error::Singular) => {
            // Source stepping from the all-zero solution.
            let mut x = x0;
            let mut total = 0;
            let mut res = 0.0;
            for k in 1..=10 {
                sys.src_scale = k as f64 / 10.0;
                let o = newton(&sys, x, 0.0, Mode::Dc, opts)?;
                total += o.iterations;
                res = o.residual;
                x = o.x;
            }
            Ok((x, total, res))
        }
        Err(e) => Err(e),
    }
}

/// DC operating point with capacitors open.
pub fn solve_dc(circuit: &Circuit) -> Result<DcResult> {
    solve_dc_opts(circuit, &NewtonOptions::default())
}

pub fn solve_dc_opts(circuit: &Circuit, opts: &NewtonOptions) -> Result<DcResult> {
    let (x, iterations, max_residual) = dc_state(circuit, opts)?;
    let sys = System::new(circuit, opts.gmin);
    Ok(DcResult {
        node_names: circuit.node_names().to_vec(),
        voltages: sys.voltages(&x),
        currents: sys.branches(&x, Mode::Dc).iter().map(|b| b.i).collect(),
        iterations,
        max_residual,
    })
}

/// DC operating point with the listed nodes held at fixed voltages.
/// Currents of the clamping sources are not reported.
pub fn solve_dc_clamped(circuit: &Circuit, clamps: &[(NodeId, f64)], opts: &NewtonOptions) -> Result<DcResult> {
    let mut c = circuit.clone();
    for (k, &(node, v)) in clamps.iter().enumerate() {
        c.vsource(&format!("__clamp{k}"), "", node, super::GROUND, Waveform::Dc(v));
    }
    let mut r = solve_dc_opts(&c, opts)?;
    r.currents.truncate(circuit.elements.len());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GROUND;
    use crate::devices::DiodeModel;
    use approx::assert_relative_eq;

    #[test]
    fn divider_is_exact_in_one_iteration() {
        let mut c = Circuit::new();
        let a = c.node("a");
        let m = c.node("m");
        c.vsource("v", "", a, GROUND, Waveform::Dc(1.2));
        c.resistor("r1", "", a, m, 3e3);
        c.resistor("r2", "", m, GROUND, 1e3);
        let r = solve_dc(&c).unwrap();
        assert_relative_eq!(r.v("m").unwrap(), 0.3, max_relative = 1e-12);
        assert_eq!(r.iterations, 1);
        // Source current flows from + through the source: negative when delivering.
        assert_relative_eq!(r.currents[0], -1.2 / 4e3, max_relative = 1e-12);
    }

    #[test]
    fn clamped_node_is_held() {
        let mut c = Circuit::new();
        let a = c.node("a");
        let m = c.node("m");
        c.vsource("v", "", a, GROUND, Waveform::Dc(1.0));
        c.resistor("r1", "", a, m, 1e3);
        c.resistor("r2", "", m, GROUND, 1e3);
        let r = solve_dc_clamped(&c, &[(m, 0.8)], &NewtonOptions::default()).unwrap();
        assert_relative_eq!(r.v("m").unwrap(), 0.8, max_relative = 1e-12);
        assert_eq!(r.currents.len(), 3);
    }

    #[test]
    fn stiff_diode_converges_by_damping() {
        let mut c = Circuit::new();
        let a = c.node("a");
        let k = c.node("k");
        c.vsource("v", "", a, GROUND, Waveform::Dc(5.0));
        c.resistor("r", "", a, k, 10.0);
        let d = DiodeModel::tunnel(1e-14, 0.0259, 0.0);
        c.diode("d", "", k, GROUND, d, 1.0);
        let r = solve_dc(&c).unwrap();
        assert!(r.max_residual < 1e-9);
        assert!(r.v("k").unwrap() > 0.5 && r.v("k").unwrap() < 1.0);
    }
}
