use approx::assert_relative_eq;
use sotmram_core::arraysim::{reference_read_points, sense_with, ArrayModels, SenseOptions};
use sotmram_core::circuit::{solve_dc, transient, Circuit, TranOptions, Waveform, GROUND};
use sotmram_core::devices::{diode_current, DiodeModel};

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn rc_discharge_at_one_time_constant() {
    for (r, c) in [(1e3, 1e-12), (200e3, 5e-15), (10.0, 1e-9)] {
        let tau = r * c;
        let mut ckt = Circuit::new();
        let n = ckt.node("n");
        ckt.capacitor("c", "", n, GROUND, c);
        ckt.resistor("r", "", n, GROUND, r);
        let s = ckt.node("s");
        ckt.vsource("vs", "", s, GROUND, Waveform::Dc(0.0));
        ckt.resistor("rs", "", s, GROUND, 1.0);
        let mut o = TranOptions::new(1.5 * tau, tau / 200.0);
        o.initial = vec![(n, 1.2)];
        let res = transient(&ckt, &o).unwrap();
        let v = res.interpolate(tau, |k| res.voltages[k][n]);
        assert_relative_eq!(v, 1.2 * (-1.0f64).exp(), max_relative = 5e-3);
        assert!(res.stats.energy_balance_error() < 1e-3);
    }
}

#[test]
fn diode_resistor_dc_matches_bisection() {
    let m = ArrayModels::default();
    let models = [
        DiodeModel::tunnel(1e-9, 0.1, 0.0),
        DiodeModel {
            r_series: 0.0,
            ..m.read.schottky.clone()
        },
        m.read.tunnel.clone(),
        m.read.schottky.clone(),
    ];
    for d in &models {
        for (v, r) in [(0.5, 1e3), (1.6, 1e5), (2.1, 50e3), (-1.0, 10e3)] {
            let mut ckt = Circuit::new();
            let a = ckt.node("a");
            let k = ckt.node("k");
            ckt.vsource("v", "", a, GROUND, Waveform::Dc(v));
            ckt.resistor("r", "", a, k, r);
            ckt.diode("d", "", k, GROUND, d.clone(), 1.0);
            let dc = solve_dc(&ckt).unwrap_or_else(|e| panic!("{d:?} {v} {r}: {e}"));
            let vk = dc.voltages[k];
            let exact = bisect(|x| (v - x) / r - diode_current(d, x), v.min(0.0), v.max(0.0));
            assert!((vk - exact).abs() <= 1e-9, "{vk} vs {exact} at v={v}, r={r}");
        }
    }
}

#[test]
fn lumped_and_unrolled_columns_agree_at_eight_rows() {
    let m = ArrayModels::default();
    for (label, case) in reference_read_points() {
        let case = case.with_rows(8);
        let lumped = sense_with(&case, &m, &SenseOptions::default()).unwrap().report;
        let unrolled = sense_with(
            &case,
            &m,
            &SenseOptions {
                unrolled: true,
                ..SenseOptions::default()
            },
        )
        .unwrap()
        .report;
        assert_relative_eq!(lumped.sm_peak, unrolled.sm_peak, max_relative = 1e-2);
        let e = (lumped.i_dchg / unrolled.i_dchg - 1.0).abs();
        assert!(e <= 1e-2, "{label}: i_dchg differs by {e:e}");
    }
}

#[test]
fn halving_the_output_step_barely_moves_the_margin() {
    let m = ArrayModels::default();
    for (_, case) in reference_read_points() {
        let coarse = sense_with(&case, &m, &SenseOptions::default()).unwrap().report;
        let fine = sense_with(
            &case,
            &m,
            &SenseOptions {
                dt_out: 1e-12,
                dv_max: 2.5e-4,
                ..SenseOptions::default()
            },
        )
        .unwrap()
        .report;
        assert_relative_eq!(coarse.sm_peak, fine.sm_peak, max_relative = 2e-3);
    }
}

#[test]
fn read_transients_conserve_energy() {
    let m = ArrayModels::default();
    for (label, case) in reference_read_points() {
        let run = sense_with(&case, &m, &SenseOptions::default()).unwrap();
        for res in [&run.p.1, &run.ap.1] {
            let e = res.stats.energy_balance_error();
            assert!(e < 1e-3, "{label}: energy balance error {e:e}");
        }
    }
}
