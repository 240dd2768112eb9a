//! Calibrated parameter set shipped as the default model.

use crate::arraysim::{finfet_per_fin, ArrayModels, Fins, ReadParams, WriteParams};
use crate::devices::{CornerTable, DiodeKind, DiodeModel, IgzoFetModel};
use crate::magnetics::MtjStack;
use crate::techmodel::{CellLayout, TechNode};

pub const ISAT_SS: f64 = 2.635277e-4;
pub const ISAT_TT: f64 = 3.920409e-4;
pub const ISAT_FF: f64 = 5.738300e-4;
pub const FINFET_VT: f64 = 0.5288668;
pub const FINFET_VDSAT: f64 = 2.078066;
pub const RETURN_RATIO: f64 = 0.5147948;

pub fn models() -> ArrayModels {
    let isat = CornerTable {
        ss: ISAT_SS,
        tt: ISAT_TT,
        ff: ISAT_FF,
    };
    let f = |nf, nfin| Fins { nf, nfin };
    ArrayModels {
        tech: TechNode::n7(),
        layout: CellLayout::default(),
        stack: MtjStack::scaled(),
        finfet: finfet_per_fin(isat, FINFET_VT, FINFET_VDSAT, 0.8),
        write: WriteParams {
            v_write: 0.7,
            gate_overdrive: 0.1,
            r_sot: 660.0,
            return_ratio: RETURN_RATIO,
            fins_fv: f(3, 3),
            fins_rv: f(3, 3),
            fins_1t1r1t: f(2, 6),
            fins_vga: f(2, 5),
            fins_1t1d1r: f(1, 4),
        },
        read: ReadParams {
            line_cap_per_cell: 5.827761e-17,
            c_periph: 0.0,
            sot_share: 0.5,
            rdt_fins: f(1, 1),
            rdt_wordline: 1.128320,
            rdt_junction_g: 1.145141e-8,
            igzo: IgzoFetModel {
                v_t_lin: -0.06,
                subthreshold_swing: 0.05912962,
                i_spec_per_um: 5.968987e-9,
                i_on_per_um: 1.791297e-5,
                dibl: 0.2511995,
                width_um: 0.1,
                channel_length_nm: 25.0,
                smoothing: 2.376727,
                mobility_exponent: 2.167887,
            },
            tunnel: DiodeModel::tunnel(8.475212e-9, 0.2585244, 0.0529452),
            schottky: DiodeModel {
                kind: DiodeKind::SchottkyAsymmetric,
                i_0: 2.814547e-9,
                v_0_fwd: 0.04720235,
                v_0_rev: 0.4,
                r_series: 119710.4,
                perimeter_leak_g: 0.0,
            },
            sense_threshold: 0.1,
            window: 10e-9,
        },
    }
}
