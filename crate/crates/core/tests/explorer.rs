use sotmram_core::arraysim::{sense, ArrayModels, SelectorKind};
use sotmram_core::devices::Corner;
use sotmram_core::explorer::{
    min_v_read, read_design_space, writability_vs_rows, CellChoice, Constraint, SweepGrid, DEFAULT_GRID_CAP,
};
use sotmram_core::techmodel::ConfigId;

fn grid(constraints: Vec<Constraint>) -> SweepGrid {
    SweepGrid {
        cells: vec![
            CellChoice {
                config: ConfigId::OneT1d1r,
                selector: SelectorKind::Schottky,
            },
            CellChoice {
                config: ConfigId::OneT1r1t,
                selector: SelectorKind::Igzo,
            },
        ],
        v_read: vec![1.2, 1.6, 2.0],
        ra: vec![100.0],
        tmr: vec![150.0],
        vt_shift: vec![0.0, 0.12],
        rows: vec![64],
        constraints,
        cap: DEFAULT_GRID_CAP,
    }
}

#[test]
fn unconstrained_sweep_returns_every_point() {
    let g = grid(vec![]);
    // Schottky: 3 points; IGZO: 3 × 2 threshold shifts.
    assert_eq!(g.points().unwrap().len(), 9);
    let recs = read_design_space(&g, &ArrayModels::default(), Some(2)).unwrap();
    assert_eq!(recs.len(), 9);
    assert!(recs.iter().all(|r| r.error.is_none()));
}

#[test]
fn sweep_is_independent_of_worker_count() {
    let g = grid(vec![]);
    let m = ArrayModels::default();
    let a = read_design_space(&g, &m, Some(1)).unwrap();
    let b = read_design_space(&g, &m, Some(4)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn records_reproduce_standalone_runs() {
    let m = ArrayModels::default();
    let recs = read_design_space(&grid(vec![]), &m, None).unwrap();
    for r in [&recs[0], &recs[5]] {
        let alone = sense(&r.case(), &m).unwrap();
        assert_eq!(alone.sm_peak, r.sm_peak);
        assert_eq!(alone.latency, r.latency_s);
        assert_eq!(alone.energy.total, r.energy.total);
    }
}

#[test]
fn constraints_filter_and_min_v_read_picks_the_lowest() {
    let m = ArrayModels::default();
    let all = read_design_space(&grid(vec![]), &m, None).unwrap();
    let kept = read_design_space(&grid(vec![Constraint::Feasible]), &m, None).unwrap();
    assert_eq!(kept.len(), all.iter().filter(|r| r.feasible).count());
    for (k, best) in min_v_read(&kept) {
        let lower = kept
            .iter()
            .filter(|r| r.config == k.config && r.selector == k.selector && r.v_read < best.v_read);
        assert!(
            lower
                .filter(|r| (r.vt_shift * 1e3).round() as i64 == k.vt_shift_mv)
                .count()
                == 0
        );
    }
}

#[test]
fn oversized_grid_is_rejected() {
    let mut g = grid(vec![]);
    g.cap = 4;
    assert!(g.points().is_err());
}

#[test]
fn writability_shrinks_with_array_size() {
    let m = ArrayModels::default();
    let rows = writability_vs_rows(&[ConfigId::OneT1d1r], &[16, 32, 64, 128], Corner::Ss, &m, Some(1)).unwrap();
    assert!(rows.windows(2).all(|w| w[1].i_cell < w[0].i_cell));
}
