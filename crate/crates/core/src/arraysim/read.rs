//! Read-column netlists.
//!
//! The sense line (RL for transistor-selected cells, SL for 1T1D1R) starts
//! precharged to V_read and discharges through the selected cell. Cells on
//! unselected rows load the line: gate-off transistors leak into the line
//! ground, while unselected diode rows are inhibited by holding their read
//! wordline at V_read, so their current flows back into the line.

use super::{ArrayModels, ReadCase, SelectorKind};
use crate::circuit::{Circuit, NodeId, Waveform, GROUND};
use crate::devices::{MtjModel, MtjState};
use crate::error::Result;
use crate::techmodel::bitline_resistance;

pub const TAG_COLUMN: &str = "column";
pub const TAG_SELECTOR: &str = "selector";
pub const TAG_REST: &str = "rest";
const TAG_CAP: &str = "line_cap";
const TAG_BIAS: &str = "bias";

#[derive(Debug, Clone)]
pub struct ReadCircuit {
    pub circuit: Circuit,
    /// Sense node.
    pub sense: NodeId,
    /// Every capacitor-loaded line node and its precharge voltage.
    pub precharged: Vec<(NodeId, f64)>,
    /// Selected-cell selector element.
    pub selector: usize,
    /// Terminals across which the selector voltage is taken.
    pub selector_nodes: (NodeId, NodeId),
    /// Elements whose first-terminal current leaves the line through unselected cells.
    pub sneak: Vec<usize>,
    /// Sources holding inhibited wordlines.
    pub inhibit: Vec<usize>,
    pub v_read: f64,
}

struct Ctx<'a> {
    case: &'a ReadCase,
    m: &'a ArrayModels,
    r_mtj_sel: f64,
    r_mtj_unsel: f64,
    r_sot: f64,
}

impl Ctx<'_> {
    /// Adds one cell (or `mult` identical cells in parallel) hanging from
    /// `line`, returning (selector element, selector terminals, first element).
    fn cell(
        &self,
        c: &mut Circuit,
        name: &str,
        line: NodeId,
        selected: bool,
        mult: f64,
        rwl0: Option<NodeId>,
        rwl_on: NodeId,
    ) -> (usize, (NodeId, NodeId), usize) {
        let tag_sel = if selected { TAG_SELECTOR } else { TAG_COLUMN };
        let tag_rest = if selected { TAG_REST } else { TAG_COLUMN };
        let r_mtj = if selected { self.r_mtj_sel } else { self.r_mtj_unsel } / mult;
        let r_sot = self.r_sot / mult;
        let a = c.node(&format!("{name}.a"));
        let b = c.node(&format!("{name}.b"));
        match self.case.selector {
            SelectorKind::Finfet | SelectorKind::Igzo => {
                let gate = if selected { rwl_on } else { GROUND };
                let sel = match self.case.selector {
                    SelectorKind::Finfet => {
                        let f = &self.m.read.rdt_fins;
                        let model = self.m.finfet.with_fins(f.nf, f.nfin);
                        c.finfet(
                            &format!("{name}.sel"),
                            tag_sel,
                            line,
                            gate,
                            a,
                            model,
                            crate::devices::Corner::Tt,
                            mult,
                        )
                    }
                    _ => {
                        let model = self.m.read.igzo.with_vt_shift(self.case.vt_shift);
                        c.igzo(&format!("{name}.sel"), tag_sel, line, gate, a, model, mult)
                    }
                };
                c.resistor(&format!("{name}.mtj"), tag_rest, a, b, r_mtj);
                c.resistor(&format!("{name}.sot"), tag_rest, b, GROUND, r_sot);
                (sel, (line, a), sel)
            }
            SelectorKind::Tunnel | SelectorKind::Schottky => {
                let model = match self.case.selector {
                    SelectorKind::Tunnel => self.m.read.tunnel.clone(),
                    _ => self.m.read.schottky.clone(),
                };
                let first = c.resistor(&format!("{name}.sot"), tag_rest, line, a, r_sot);
                c.resistor(&format!("{name}.mtj"), tag_rest, a, b, r_mtj);
                let wl = if selected {
                    GROUND
                } else {
                    rwl0.expect("inhibit wordline")
                };
                let sel = c.diode(&format!("{name}.sel"), tag_sel, b, wl, model, mult);
                (sel, (b, wl), first)
            }
        }
    }
}

fn context<'a>(case: &'a ReadCase, m: &'a ArrayModels, state: MtjState) -> Ctx<'a> {
    let mtj = MtjModel {
        ra: case.ra,
        tmr: case.tmr,
        d_mtj: m.stack.d_mtj,
        state,
    };
    let r_of = |s| crate::devices::mtj_resistance(&mtj.in_state(s));
    Ctx {
        case,
        m,
        r_mtj_sel: r_of(state),
        r_mtj_unsel: r_of(case.unselected_state),
        r_sot: m.read.sot_share * m.write.r_sot,
    }
}

fn common(case: &ReadCase, m: &ArrayModels, c: &mut Circuit) -> (NodeId, Option<NodeId>, Vec<usize>) {
    let rwl_on = c.node("rwl");
    let v_rwl = if case.selector == SelectorKind::Finfet {
        m.read.rdt_wordline
    } else {
        case.v_read
    };
    c.vsource("vrwl", TAG_BIAS, rwl_on, GROUND, Waveform::Dc(v_rwl));
    let mut inhibit = Vec::new();
    let rwl0 = if matches!(case.selector, SelectorKind::Tunnel | SelectorKind::Schottky) && case.rows > 1 {
        let n = c.node("rwl_inh");
        inhibit.push(c.vsource("vinh", TAG_COLUMN, n, GROUND, Waveform::Dc(case.v_read)));
        Some(n)
    } else {
        None
    };
    (rwl_on, rwl0, inhibit)
}

/// Lumped column: one capacitive sense node, the line resistance in series
/// with the selected (farthest) cell and the `rows - 1` unselected cells
/// aggregated into a single scaled branch.
pub fn build_read_array(case: &ReadCase, m: &ArrayModels, state: MtjState) -> Result<ReadCircuit> {
    case.validate()?;
    let ctx = context(case, m, state);
    let c_cell = case.line_cap_per_cell.unwrap_or(m.read.line_cap_per_cell);
    let mut c = Circuit::new();
    let (rwl_on, rwl0, inhibit) = common(case, m, &mut c);
    let rl = c.node("rl");
    c.capacitor(
        "cline",
        TAG_CAP,
        rl,
        GROUND,
        case.rows as f64 * c_cell + m.read.c_periph,
    );
    let far = c.node("far");
    let r_line = bitline_resistance(case.config, case.rows, &m.tech, &m.layout)?;
    c.resistor("rline", TAG_COLUMN, rl, far, r_line);
    let (selector, selector_nodes, _) = ctx.cell(&mut c, "cell", far, true, 1.0, rwl0, rwl_on);
    let mut sneak = Vec::new();
    if case.rows > 1 {
        let n = (case.rows - 1) as f64;
        let (_, _, first) = ctx.cell(&mut c, "unsel", rl, false, n, rwl0, rwl_on);
        sneak.push(first);
        if case.selector == SelectorKind::Finfet && m.read.rdt_junction_g > 0.0 {
            sneak.push(c.resistor(
                "unsel.junction",
                TAG_COLUMN,
                rl,
                GROUND,
                1.0 / (n * m.read.rdt_junction_g),
            ));
        }
    }
    Ok(ReadCircuit {
        circuit: c,
        sense: rl,
        precharged: vec![(rl, case.v_read)],
        selector,
        selector_nodes,
        sneak,
        inhibit,
        v_read: case.v_read,
    })
}

/// Explicit column with one line segment, line capacitance and cell per row.
/// Row 1 is nearest the sense amplifier; the selected cell is the last row.
pub fn build_read_array_unrolled(case: &ReadCase, m: &ArrayModels, state: MtjState) -> Result<ReadCircuit> {
    case.validate()?;
    let ctx = context(case, m, state);
    let c_cell = case.line_cap_per_cell.unwrap_or(m.read.line_cap_per_cell);
    let mut c = Circuit::new();
    let (rwl_on, rwl0, inhibit) = common(case, m, &mut c);
    let rl = c.node("rl");
    let mut precharged = vec![(rl, case.v_read)];
    if m.read.c_periph > 0.0 {
        c.capacitor("cperiph", TAG_CAP, rl, GROUND, m.read.c_periph);
    }
    let r_seg = bitline_resistance(case.config, 1, &m.tech, &m.layout)?;
    let mut prev = rl;
    let mut sneak = Vec::new();
    let mut selected = None;
    for k in 1..=case.rows {
        let node = c.node(&format!("l{k}"));
        c.resistor(&format!("rseg{k}"), TAG_COLUMN, prev, node, r_seg);
        c.capacitor(&format!("c{k}"), TAG_CAP, node, GROUND, c_cell);
        precharged.push((node, case.v_read));
        let sel = k == case.rows;
        let (s, sn, first) = ctx.cell(&mut c, &format!("cell{k}"), node, sel, 1.0, rwl0, rwl_on);
        if sel {
            selected = Some((s, sn));
        } else {
            sneak.push(first);
            if case.selector == SelectorKind::Finfet && m.read.rdt_junction_g > 0.0 {
                sneak.push(c.resistor(
                    &format!("cell{k}.junction"),
                    TAG_COLUMN,
                    node,
                    GROUND,
                    1.0 / m.read.rdt_junction_g,
                ));
            }
        }
        prev = node;
    }
    let (selector, selector_nodes) = selected.expect("rows >= 1");
    Ok(ReadCircuit {
        circuit: c,
        sense: rl,
        precharged,
        selector,
        selector_nodes,
        sneak,
        inhibit,
        v_read: case.v_read,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arraysim::reference_read_points;

    #[test]
    fn unrolled_column_has_one_node_per_row() {
        let m = ArrayModels::default();
        for (_, case) in reference_read_points() {
            let case = case.with_rows(8);
            let lumped = build_read_array(&case, &m, MtjState::P).unwrap();
            let unrolled = build_read_array_unrolled(&case, &m, MtjState::P).unwrap();
            assert!(unrolled.circuit.node_count() > lumped.circuit.node_count());
            assert!(lumped.precharged.iter().any(|p| p.0 == lumped.sense));
            lumped.circuit.validate().unwrap();
            unrolled.circuit.validate().unwrap();
        }
    }
}
