use approx::assert_relative_eq;
use sotmram_core::arraysim::{sense, ArrayModels, SelectorKind};
use sotmram_core::calibrate::{
    calibrate_finfet, fit_bitline, frozen, read_targets, BL_TARGETS, IGZO_LATENCY_BAND, IGZO_OFF_MIN_PER_UM,
    IGZO_REF_VDS,
};
use sotmram_core::techmodel::{bitline_resistance, CellLayout, TechNode};

#[test]
fn bitline_constant_reproduces_every_target() {
    let fit = fit_bitline(&TechNode::n7(), &CellLayout::default()).unwrap();
    assert!(fit.max_rel_error < 0.05, "{fit:?}");
    let mut tech = TechNode::n7();
    tech.bl_resistance_per_length = fit.ohm_per_nm;
    for (c, target) in BL_TARGETS {
        let r = bitline_resistance(c, 128, &tech, &CellLayout::default()).unwrap();
        assert!((r / target - 1.0).abs() < 0.05, "{c}: {r} vs {target}");
    }
}

#[test]
fn default_models_carry_the_fitted_bitline_constant() {
    let fit = fit_bitline(&TechNode::n7(), &CellLayout::default()).unwrap();
    assert_relative_eq!(
        ArrayModels::default().tech.bl_resistance_per_length,
        fit.ohm_per_nm,
        max_relative = 1e-4
    );
}

#[test]
fn write_fit_closes_and_is_a_fixed_point() {
    let m = ArrayModels::default();
    let fit = calibrate_finfet(&m, frozen::FINFET_VDSAT).unwrap();
    assert!(fit.max_icell_error() < 0.03, "{:?}", fit.icell);
    for e in &fit.ratio_errors {
        assert!(e.abs() < 0.02, "{:?}", fit.ratio_errors);
    }
    assert_relative_eq!(fit.i_sat_per_fin.ss, frozen::ISAT_SS, max_relative = 1e-3);
    assert_relative_eq!(fit.i_sat_per_fin.tt, frozen::ISAT_TT, max_relative = 1e-3);
    assert_relative_eq!(fit.i_sat_per_fin.ff, frozen::ISAT_FF, max_relative = 1e-3);
    assert_relative_eq!(fit.v_t, frozen::FINFET_VT, max_relative = 1e-3);
    assert_relative_eq!(fit.return_ratio, frozen::RETURN_RATIO, max_relative = 1e-3);
}

#[test]
fn exact_selector_fits_hold_their_resistance() {
    let m = ArrayModels::default();
    for t in read_targets() {
        if matches!(t.case.selector, SelectorKind::Finfet | SelectorKind::Schottky) {
            let r = sense(&t.case, &m).unwrap();
            assert!(
                (r.r_sel / t.r_sel - 1.0).abs() < 0.05,
                "{}: {} vs {}",
                t.label,
                r.r_sel,
                t.r_sel
            );
        }
    }
}

#[test]
fn igzo_stays_near_the_leakage_floor() {
    // The floor is a soft penalty; the fit trades a few percent of it for the read targets.
    let g = ArrayModels::default().read.igzo;
    assert!(g.current_density(0.0, IGZO_REF_VDS) >= IGZO_OFF_MIN_PER_UM * 0.95);
}

#[test]
fn line_capacitance_centres_igzo_latency_in_band() {
    let m = ArrayModels::default();
    for t in read_targets().iter().filter(|t| t.case.selector == SelectorKind::Igzo) {
        let lat = sense(&t.case, &m).unwrap().latency.expect("latency");
        assert!(
            lat >= IGZO_LATENCY_BAND.0 && lat <= IGZO_LATENCY_BAND.1,
            "{}: {lat:e}",
            t.label
        );
    }
}
