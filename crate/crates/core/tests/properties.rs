use proptest::prelude::*;
use sotmram_core::arraysim::ArrayModels;
use sotmram_core::consts::T_REF;
use sotmram_core::devices::{diode_current, finfet_current, igzo_current, Corner, DiodeKind, DiodeModel};
use sotmram_core::magnetics::{
    critical_current, delta_from_retention, retention_from_delta, IcForm, MtjStack, RetentionSpec,
};

fn stack() -> impl Strategy<Value = MtjStack> {
    (
        20.0..120.0f64,
        10.0..120.0f64,
        30.0..200.0f64,
        1.0..10.0f64,
        50.0..500.0f64,
        0.0..0.6f64,
        0.5..3.0f64,
        0.05..0.6f64,
        0.1..5.0f64,
    )
        .prop_map(
            |(d_mtj, delta, w_extra, d_sot, b_k, bx_frac, d_fl, theta_sh, tau_d)| MtjStack {
                d_mtj,
                delta,
                w_sot: d_mtj + w_extra,
                d_sot,
                b_k,
                b_x: bx_frac * b_k / std::f64::consts::SQRT_2,
                tmr: 100.0,
                ra: 10.0,
                d_fl,
                theta_sh,
                m_s: None,
                tau_d,
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn switching_current_forms_agree(s in stack(), tau in 0.05..2000.0f64, temp in 250.0..400.0f64) {
        let a = critical_current(tau, &s, temp, IcForm::Material).unwrap();
        let b = critical_current(tau, &s, temp, IcForm::Thermal).unwrap();
        prop_assert!(a > 0.0);
        prop_assert!((a / b - 1.0).abs() <= 1e-12, "material {a:e} thermal {b:e}");
    }
}

proptest! {
    #[test]
    fn retention_round_trip(log_tau in -3.0..9.0f64, log_f in -12.0..-1.0f64, t_op in 300.0..400.0f64) {
        let spec = RetentionSpec {
            tau_ret: 10f64.powf(log_tau),
            error_rate: 10f64.powf(log_f),
            tau_0: 1e-9,
            t_op,
            t_ref: T_REF,
        };
        let (d, dr) = delta_from_retention(&spec).unwrap();
        let back = retention_from_delta(d, spec.error_rate, spec.tau_0).unwrap();
        prop_assert!((back / spec.tau_ret - 1.0).abs() < 1e-9);
        prop_assert!((dr / d - t_op / T_REF).abs() < 1e-12);
    }

    #[test]
    fn tunnel_diode_is_exactly_odd(v in -3.0..3.0f64, i0 in 1e-12..1e-6f64, v0 in 0.05..1.0f64, rs in 0.0..1e6f64) {
        let d = DiodeModel::tunnel(i0, v0, rs);
        prop_assert_eq!(diode_current(&d, -v), -diode_current(&d, v));
    }

    #[test]
    fn schottky_rectifies(v in 0.05..3.0f64, i0 in 1e-12..1e-6f64, vf in 0.03..0.3f64, extra in 0.01..1.0f64, rs in 0.0..1e6f64) {
        let d = DiodeModel {
            kind: DiodeKind::SchottkyAsymmetric,
            i_0: i0,
            v_0_fwd: vf,
            v_0_rev: vf + extra,
            r_series: rs,
            perimeter_leak_g: 0.0,
        };
        let fwd = diode_current(&d, v);
        let rev = diode_current(&d, -v);
        prop_assert!(fwd > 0.0 && rev < 0.0);
        prop_assert!(fwd > rev.abs());
    }

    #[test]
    fn diodes_are_monotone(a in -3.0..3.0f64, dv in 1e-3..1.0f64) {
        let m = ArrayModels::default();
        for d in [&m.read.tunnel, &m.read.schottky] {
            prop_assert!(diode_current(d, a + dv) > diode_current(d, a));
        }
    }

    #[test]
    fn igzo_is_monotone_and_off_at_zero_vds(vgs in -1.0..3.0f64, vds in 0.0..2.5f64, dv in 1e-3..0.5f64) {
        let g = ArrayModels::default().read.igzo;
        prop_assert_eq!(igzo_current(&g, vgs, 0.0), 0.0);
        prop_assert!(igzo_current(&g, vgs + dv, vds) >= igzo_current(&g, vgs, vds));
        prop_assert!(igzo_current(&g, vgs, vds + dv) > igzo_current(&g, vgs, vds));
    }

    #[test]
    fn igzo_threshold_shift_is_rigid(vgs in -1.0..3.0f64, vds in -2.0..2.0f64, shift in -0.3..0.3f64) {
        let g = ArrayModels::default().read.igzo;
        let a = igzo_current(&g.with_vt_shift(shift), vgs + shift, vds);
        let b = igzo_current(&g, vgs, vds);
        prop_assert!((a - b).abs() <= 1e-9 * b.abs() + 1e-24, "{a:e} vs {b:e}");
    }

    #[test]
    fn finfet_is_monotone(vgs in 0.0..1.5f64, vds in 0.0..1.5f64, dv in 1e-3..0.5f64) {
        let m = ArrayModels::default();
        for k in Corner::ALL {
            prop_assert!(finfet_current(&m.finfet, vgs + dv, vds, k) >= finfet_current(&m.finfet, vgs, vds, k));
            prop_assert!(finfet_current(&m.finfet, vgs, vds + dv, k) >= finfet_current(&m.finfet, vgs, vds, k));
        }
        prop_assert!(finfet_current(&m.finfet, vgs, vds, Corner::Ff) >= finfet_current(&m.finfet, vgs, vds, Corner::Ss));
    }
}
