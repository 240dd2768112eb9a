//! Small nonlinear circuit simulator: netlist, modified nodal analysis,
//! damped Newton DC and backward-Euler transient.

mod dc;
mod mna;
mod transient;

pub use dc::{solve_dc, solve_dc_clamped, DcResult, NewtonOptions};
pub use transient::{transient, TranOptions, TranStats, TransientResult};

use crate::devices::{Corner, DiodeModel, FinFetModel, IgzoFetModel};
use crate::error::{Error, Result};

pub type NodeId = usize;

/// The reference node.
pub const GROUND: NodeId = 0;

#[derive(Debug, Clone, PartialEq)]
pub enum Waveform {
    Dc(f64),
    /// Piecewise-linear (time, value) points, held flat outside their span.
    Pwl(Vec<(f64, f64)>),
}

impl Waveform {
    pub fn value(&self, t: f64) -> f64 {
        match self {
            Waveform::Dc(v) => *v,
            Waveform::Pwl(pts) => {
                let first = pts[0];
                if t <= first.0 {
                    return first.1;
                }
                for w in pts.windows(2) {
                    let ((t0, v0), (t1, v1)) = (w[0], w[1]);
                    if t <= t1 {
                        return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
                    }
                }
                pts[pts.len() - 1].1
            }
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self {
            Waveform::Dc(_) => Vec::new(),
            Waveform::Pwl(p) => p.iter().map(|x| x.0).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ElementKind {
    /// Terminals (a, b).
    Resistor { r: f64 },
    /// Terminals (a, b).
    Capacitor { c: f64 },
    /// Terminals (plus, minus).
    VSource { wave: Waveform },
    /// Terminals (anode, cathode); `m` identical devices in parallel.
    Diode { model: DiodeModel, m: f64 },
    /// Terminals (drain, gate, source).
    FinFet { model: FinFetModel, corner: Corner, m: f64 },
    /// Terminals (drain, gate, source).
    Igzo { model: IgzoFetModel, m: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub name: String,
    /// Free-form group label used for energy accounting.
    pub tag: String,
    pub kind: ElementKind,
    pub nodes: Vec<NodeId>,
}

impl Element {
    pub fn is_source(&self) -> bool {
        matches!(self.kind, ElementKind::VSource { .. })
    }

    pub fn is_capacitor(&self) -> bool {
        matches!(self.kind, ElementKind::Capacitor { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    node_names: Vec<String>,
    pub elements: Vec<Element>,
}

impl Default for Circuit {
    fn default() -> Self {
        Self::new()
    }
}

impl Circuit {
    pub fn new() -> Self {
        Self {
            node_names: vec!["0".into()],
            elements: Vec::new(),
        }
    }

    /// Returns the node with this name, creating it if needed. `"0"` is ground.
    pub fn node(&mut self, name: &str) -> NodeId {
        if let Some(i) = self.find_node(name) {
            return i;
        }
        self.node_names.push(name.to_string());
        self.node_names.len() - 1
    }

    pub fn find_node(&self, name: &str) -> Option<NodeId> {
        self.node_names.iter().position(|n| n == name)
    }

    pub fn node_name(&self, id: NodeId) -> &str {
        &self.node_names[id]
    }

    pub fn node_count(&self) -> usize {
        self.node_names.len()
    }

    pub fn node_names(&self) -> &[String] {
        &self.node_names
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.name == name)
    }

    pub fn add(&mut self, name: &str, tag: &str, kind: ElementKind, nodes: &[NodeId]) -> usize {
        self.elements.push(Element {
            name: name.to_string(),
            tag: tag.to_string(),
            kind,
            nodes: nodes.to_vec(),
        });
        self.elements.len() - 1
    }

    pub fn resistor(&mut self, name: &str, tag: &str, a: NodeId, b: NodeId, r: f64) -> usize {
        self.add(name, tag, ElementKind::Resistor { r }, &[a, b])
    }

    pub fn capacitor(&mut self, name: &str, tag: &str, a: NodeId, b: NodeId, c: f64) -> usize {
        self.add(name, tag, ElementKind::Capacitor { c }, &[a, b])
    }

    pub fn vsource(&mut self, name: &str, tag: &str, p: NodeId, n: NodeId, wave: Waveform) -> usize {
        self.add(name, tag, ElementKind::VSource { wave }, &[p, n])
    }

    pub fn diode(&mut self, name: &str, tag: &str, a: NodeId, k: NodeId, model: DiodeModel, m: f64) -> usize {
        self.add(name, tag, ElementKind::Diode { model, m }, &[a, k])
    }

    #[allow(clippy::too_many_arguments)]
    pub fn finfet(
        &mut self,
        name: &str,
        tag: &str,
        d: NodeId,
        g: NodeId,
        s: NodeId,
        model: FinFetModel,
        corner: Corner,
        m: f64,
    ) -> usize {
        self.add(name, tag, ElementKind::FinFet { model, corner, m }, &[d, g, s])
    }

    pub fn igzo(
        &mut self,
        name: &str,
        tag: &str,
        d: NodeId,
        g: NodeId,
        s: NodeId,
        model: IgzoFetModel,
        m: f64,
    ) -> usize {
        self.add(name, tag, ElementKind::Igzo { model, m }, &[d, g, s])
    }

    pub fn sources(&self) -> impl Iterator<Item = (usize, &Element)> {
        self.elements.iter().enumerate().filter(|(_, e)| e.is_source())
    }

    pub(crate) fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self
            .elements
            .iter()
            .filter_map(|e| match &e.kind {
                ElementKind::VSource { wave } => Some(wave.breakpoints()),
                _ => None,
            })
            .flatten()
            .collect();
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        if !self.elements.iter().any(Element::is_source) {
            return Err(Error::InvalidCircuit("no voltage source".into()));
        }
        let mut names = std::collections::HashSet::new();
        for e in &self.elements {
            if !names.insert(e.name.as_str()) {
                return Err(Error::InvalidCircuit(format!("duplicate element name `{}`", e.name)));
            }
            let arity = match e.kind {
                ElementKind::FinFet { .. } | ElementKind::Igzo { .. } => 3,
                _ => 2,
            };
            if e.nodes.len() != arity || e.nodes.iter().any(|&k| k >= n) {
                return Err(Error::InvalidCircuit(format!(
                    "element `{}` has invalid terminals",
                    e.name
                )));
            }
            let bad = |what: &str| Error::InvalidCircuit(format!("element `{}`: {what}", e.name));
            match &e.kind {
                ElementKind::Resistor { r } if !(*r > 0.0 && r.is_finite()) => {
                    return Err(bad("resistance must be > 0"))
                }
                ElementKind::Capacitor { c } if !(*c > 0.0 && c.is_finite()) => {
                    return Err(bad("capacitance must be > 0"))
                }
                ElementKind::Diode { m, .. } | ElementKind::FinFet { m, .. } | ElementKind::Igzo { m, .. }
                    if !(*m > 0.0 && m.is_finite()) =>
                {
                    return Err(bad("multiplicity must be > 0"))
                }
                ElementKind::VSource { wave: Waveform::Pwl(p) }
                    if p.is_empty() || p.windows(2).any(|w| !(w[0].0 < w[1].0)) =>
                {
                    return Err(bad("PWL times must be non-empty and ascending"))
                }
                _ => {}
            }
        }
        // Every node must reach ground through element terminals.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.elements {
            let a = find(&mut parent, e.nodes[0]);
            for &k in &e.nodes[1..] {
                let b = find(&mut parent, k);
                parent[b] = a;
            }
        }
        let g = find(&mut parent, GROUND);
        for k in 1..n {
            if find(&mut parent, k) != g {
                return Err(Error::InvalidCircuit(format!(
                    "node `{}` is not connected to ground",
                    self.node_names[k]
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_floating_and_sourceless() {
        let mut c = Circuit::new();
        let a = c.node("a");
        c.resistor("r", "", a, GROUND, 1.0);
        assert!(c.validate().is_err());
        let b = c.node("b");
        c.vsource("v", "", a, GROUND, Waveform::Dc(1.0));
        let _ = b;
        assert!(matches!(c.validate(), Err(Error::InvalidCircuit(_))));
    }

    #[test]
    fn pwl_interpolates() {
        let w = Waveform::Pwl(vec![(0.0, 0.0), (1.0, 2.0)]);
        assert_eq!(w.value(-1.0), 0.0);
        assert_eq!(w.value(0.5), 1.0);
        assert_eq!(w.value(3.0), 2.0);
    }
}
