//! Residual and Jacobian assembly for the nodal equations.

use nalgebra::{DMatrix, DVector};

use super::{Circuit, ElementKind, NodeId, GROUND};

/// How capacitors are treated.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Mode<'a> {
    /// Open circuit.
    Dc,
    /// Backward-Euler companion with step `dt` from node voltages `prev`.
    Euler { dt: f64, prev: &'a [f64] },
}

pub(crate) struct System<'a> {
    pub circuit: &'a Circuit,
    /// Non-ground node count.
    pub nn: usize,
    /// Branch-current row of each voltage source, indexed by element.
    pub branch: Vec<Option<usize>>,
    pub dim: usize,
    pub gmin: f64,
    /// Multiplier on every source value, used for source stepping.
    pub src_scale: f64,
    /// No nonlinear devices: Newton steps need no limiting.
    pub linear: bool,
}

pub(crate) struct Assembly {
    pub f: DVector<f64>,
    pub j: DMatrix<f64>,
    /// Sum of |current| incident at each non-ground node, for relative tolerances.
    pub scale: Vec<f64>,
}

/// Terminal current (first terminal to second, drain to source) and the
/// power the element absorbs.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Branch {
    pub i: f64,
    pub p: f64,
}

impl<'a> System<'a> {
    pub fn new(circuit: &'a Circuit, gmin: f64) -> Self {
        let nn = circuit.node_count() - 1;
        let mut next = nn;
        let branch = circuit
            .elements
            .iter()
            .map(|e| {
                e.is_source().then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Self {
            circuit,
            nn,
            branch,
            dim: next,
            gmin,
            src_scale: 1.0,
            linear: circuit.elements.iter().all(|e| {
                matches!(
                    e.kind,
                    ElementKind::Resistor { .. } | ElementKind::Capacitor { .. } | ElementKind::VSource { .. }
                )
            }),
        }
    }

    /// Node voltages including ground at index 0.
    pub fn voltages(&self, x: &DVector<f64>) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.nn + 1);
        v.push(0.0);
        v.extend(x.iter().take(self.nn));
        v
    }

    fn row(node: NodeId) -> Option<usize> {
        (node != GROUND).then(|| node - 1)
    }

    pub fn assemble(&self, x: &DVector<f64>, t: f64, mode: Mode) -> Assembly {
        let v = self.voltages(x);
        let mut f = DVector::zeros(self.dim);
        let mut j = DMatrix::zeros(self.dim, self.dim);
        let mut scale = vec![0.0; self.nn];

        for k in 0..self.nn {
            f[k] += self.gmin * v[k + 1];
            j[(k, k)] += self.gmin;
        }

        // Two-terminal stamp: current `i` from a to b, conductance `g`.
        let two =
            |f: &mut DVector<f64>, j: &mut DMatrix<f64>, scale: &mut [f64], a: NodeId, b: NodeId, i: f64, g: f64| {
                let (ra, rb) = (Self::row(a), Self::row(b));
                if let Some(r) = ra {
                    f[r] += i;
                    scale[r] += i.abs();
                    j[(r, r)] += g;
                    if let Some(c) = rb {
                        j[(r, c)] -= g;
                    }
                }
                if let Some(r) = rb {
                    f[r] -= i;
                    scale[r] += i.abs();
                    j[(r, r)] += g;
                    if let Some(c) = ra {
                        j[(r, c)] -= g;
                    }
                }
            };

        for (ei, e) in self.circuit.elements.iter().enumerate() {
            let n = &e.nodes;
            match &e.kind {
                ElementKind::Resistor { r } => {
                    let g = 1.0 / r;
                    two(&mut f, &mut j, &mut scale, n[0], n[1], g * (v[n[0]] - v[n[1]]), g);
                }
                ElementKind::Capacitor { c } => {
                    if let Mode::Euler { dt, prev } = mode {
                        let g = c / dt;
                        let dv = (v[n[0]] - v[n[1]]) - (prev[n[0]] - prev[n[1]]);
                        two(&mut f, &mut j, &mut scale, n[0], n[1], g * dv, g);
                    }
                }
                ElementKind::Diode { model, m } => {
                    let (i, g) = model.eval(v[n[0]] - v[n[1]]);
                    two(&mut f, &mut j, &mut scale, n[0], n[1], m * i, m * g);
                }
                ElementKind::VSource { wave } => {
                    let b = self.branch[ei].expect("source branch");
                    let i = x[b];
                    if let Some(r) = Self::row(n[0]) {
                        f[r] += i;
                        j[(r, b)] += 1.0;
                        j[(b, r)] += 1.0;
                    }
                    if let Some(r) = Self::row(n[1]) {
                        f[r] -= i;
                        j[(r, b)] -= 1.0;
                        j[(b, r)] -= 1.0;
                    }
                    f[b] = v[n[0]] - v[n[1]] - self.src_scale * wave.value(t);
                }
                ElementKind::FinFet { .. } | ElementKind::Igzo { .. } => {
                    let (d, g, s) = (n[0], n[1], n[2]);
                    let ev = match &e.kind {
                        ElementKind::FinFet { model, corner, .. } => model.eval(*corner, v[g], v[d], v[s]),
                        ElementKind::Igzo { model, .. } => model.eval(v[g], v[d], v[s]),
                        _ => unreachable!(),
                    };
                    let m = match e.kind {
                        ElementKind::FinFet { m, .. } | ElementKind::Igzo { m, .. } => m,
                        _ => unreachable!(),
                    };
                    let i = m * ev.i;
                    let dd = [(d, m * ev.di_dvd), (g, m * ev.di_dvg), (s, m * ev.di_dvs)];
                    for (node, sign) in [(d, 1.0), (s, -1.0)] {
                        if let Some(r) = Self::row(node) {
                            f[r] += sign * i;
                            scale[r] += i.abs();
                            for &(u, du) in &dd {
                                if let Some(c) = Self::row(u) {
                                    j[(r, c)] += sign * du;
                                }
                            }
                        }
                    }
                }
            }
        }
        Assembly { f, j, scale }
    }

    /// Per-element terminal current and absorbed power at a solution point.
    pub fn branches(&self, x: &DVector<f64>, mode: Mode) -> Vec<Branch> {
        let v = self.voltages(x);
        self.circuit
            .elements
            .iter()
            .enumerate()
            .map(|(ei, e)| {
                let n = &e.nodes;
                let vab = v[n[0]] - v[n[1]];
                let i = match &e.kind {
                    ElementKind::Resistor { r } => vab / r,
                    ElementKind::Capacitor { c } => match mode {
                        Mode::Euler { dt, prev } => c / dt * (vab - (prev[n[0]] - prev[n[1]])),
                        Mode::Dc => 0.0,
                    },
                    ElementKind::Diode { model, m } => m * model.eval(vab).0,
                    ElementKind::VSource { .. } => x[self.branch[ei].expect("source branch")],
                    ElementKind::FinFet { model, corner, m } => m * model.eval(*corner, v[n[1]], v[n[0]], v[n[2]]).i,
                    ElementKind::Igzo { model, m } => m * model.eval(v[n[1]], v[n[0]], v[n[2]]).i,
                };
                let p = match e.kind {
                    ElementKind::FinFet { .. } | ElementKind::Igzo { .. } => (v[n[0]] - v[n[2]]) * i,
                    _ => vab * i,
                };
                Branch { i, p }
            })
            .collect()
    }
}
