//! Thermal stability, retention statistics and the macrospin SOT
//! critical-current model.

use serde::{Deserialize, Serialize};

use crate::consts::{PhysicalConstants, MT, NM, T_REF, YEAR_S};
use crate::error::{ensure_positive, Error, Result};

/// τ_D fitted so that a 10 ns pulse at the 0.1 s retention target needs
/// exactly the lowest simulated bitcell current (115 µA) with the scaled
/// (73 nm, θ_SH = 0.3) SOT track. See [`calibrate_tau_d`].
pub const DEFAULT_TAU_D_NS: f64 = 1.034_385_436;

/// MTJ and SOT-track parameters, in the units of the device table
/// (nm, mT, %, Ω·µm², A/m, ns).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MtjStack {
    pub d_mtj: f64,
    /// Thermal stability factor at [`T_REF`].
    pub delta: f64,
    pub w_sot: f64,
    pub d_sot: f64,
    pub b_k: f64,
    pub b_x: f64,
    pub tmr: f64,
    pub ra: f64,
    pub d_fl: f64,
    pub theta_sh: f64,
    /// Saturation magnetization; derived from `delta` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_s: Option<f64>,
    pub tau_d: f64,
}

impl MtjStack {
    /// Hardware-calibrated reference stack (wide SOT track, moderate θ_SH).
    pub fn reference() -> Self {
        Self {
            d_mtj: 63.0,
            delta: 40.0,
            w_sot: 99.0,
            d_sot: 3.5,
            b_k: 219.0,
            b_x: 25.0,
            tmr: 86.0,
            ra: 11.0,
            d_fl: 1.0,
            theta_sh: 0.158,
            m_s: None,
            tau_d: DEFAULT_TAU_D_NS,
        }
    }

    /// Track narrowed to a 10 nm margin over the MTJ and θ_SH at the β-W limit.
    pub fn scaled() -> Self {
        Self {
            w_sot: 73.0,
            theta_sh: 0.3,
            ..Self::reference()
        }
    }

    pub fn with_delta(&self, delta: f64) -> Self {
        Self {
            delta,
            m_s: None,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (n, v) in [
            ("stack.d_mtj", self.d_mtj),
            ("stack.delta", self.delta),
            ("stack.w_sot", self.w_sot),
            ("stack.d_sot", self.d_sot),
            ("stack.b_k", self.b_k),
            ("stack.b_x", self.b_x),
            ("stack.ra", self.ra),
            ("stack.d_fl", self.d_fl),
            ("stack.theta_sh", self.theta_sh),
            ("stack.tau_d", self.tau_d),
        ] {
            ensure_positive(n, v)?;
        }
        if self.b_x >= self.b_k {
            return Err(Error::param("stack.b_x", "must be below b_k"));
        }
        if self.theta_sh > 1.0 {
            return Err(Error::param("stack.theta_sh", "must lie in (0, 1]"));
        }
        if !(self.tmr >= 0.0) {
            return Err(Error::param("stack.tmr", "must be >= 0"));
        }
        if let Some(ms) = self.m_s {
            ensure_positive("stack.m_s", ms)?;
            let d = delta_from_stack(self.b_k, ms, self.d_fl, self.d_mtj, T_REF);
            if ((d - self.delta) / self.delta).abs() > 1e-9 {
                return Err(Error::param(
                    "stack.m_s",
                    format!("inconsistent with delta = {} (m_s implies {d:.6})", self.delta),
                ));
            }
        }
        Ok(())
    }

    /// M_s, either as configured or derived from Δ at [`T_REF`].
    pub fn m_s(&self) -> f64 {
        self.m_s
            .unwrap_or_else(|| m_s_from_delta(self.delta, self.b_k, self.d_fl, self.d_mtj, T_REF))
    }
}

impl Default for MtjStack {
    fn default() -> Self {
        Self::scaled()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RetentionSpec {
    /// Retention time [s].
    pub tau_ret: f64,
    /// Tolerated failure fraction F/N_bits.
    pub error_rate: f64,
    /// Inverse attempt frequency [s].
    pub tau_0: f64,
    /// Operating temperature [K].
    pub t_op: f64,
    /// Temperature Δ is renormalized to [K].
    pub t_ref: f64,
}

impl RetentionSpec {
    pub fn llc(tau_ret: f64) -> Self {
        Self {
            tau_ret,
            error_rate: 1e-6,
            tau_0: 1e-9,
            t_op: 353.0,
            t_ref: T_REF,
        }
    }

    fn validate(&self) -> Result<()> {
        ensure_positive("retention.tau_0", self.tau_0)?;
        ensure_positive("retention.t_op", self.t_op)?;
        ensure_positive("retention.t_ref", self.t_ref)?;
        if !(self.error_rate > 0.0 && self.error_rate < 1.0) {
            return Err(Error::param("retention.error_rate", "must lie in (0, 1)"));
        }
        if !(self.tau_ret > self.tau_0) {
            return Err(Error::param("retention.tau_ret", "must exceed tau_0"));
        }
        Ok(())
    }
}

/// The five LLC-oriented retention targets, labelled.
pub fn retention_targets() -> Vec<(&'static str, f64)> {
    vec![
        ("0.1 s", 0.1),
        ("1 s", 1.0),
        ("10 s", 10.0),
        ("100 s", 100.0),
        ("10 yrs", 10.0 * YEAR_S),
    ]
}

/// Returns (Δ at t_op, Δ renormalized to t_ref).
pub fn delta_from_retention(spec: &RetentionSpec) -> Result<(f64, f64)> {
    spec.validate()?;
    // ln(1 - F) without cancellation for tiny F.
    let inner = -(spec.tau_0 / spec.tau_ret) * (-spec.error_rate).ln_1p();
    if !(inner > 0.0 && inner.is_finite()) {
        return Err(Error::Domain(format!("retention argument {inner:e} is not positive")));
    }
    let delta = -inner.ln();
    Ok((delta, delta * spec.t_op / spec.t_ref))
}

/// Inverse of [`delta_from_retention`] for Δ at the operating temperature.
pub fn retention_from_delta(delta_at_t_op: f64, error_rate: f64, tau_0: f64) -> Result<f64> {
    ensure_positive("delta", delta_at_t_op)?;
    ensure_positive("tau_0", tau_0)?;
    if !(error_rate > 0.0 && error_rate < 1.0) {
        return Err(Error::param("error_rate", "must lie in (0, 1)"));
    }
    Ok(-tau_0 * (-error_rate).ln_1p() * delta_at_t_op.exp())
}

#[derive(Debug, Clone, Serialize)]
pub struct RetentionRow {
    pub retention: String,
    pub tau_ret_s: f64,
    pub delta_t_op: f64,
    pub delta_t_ref: f64,
}

pub fn retention_table(error_rate: f64, tau_0: f64, t_op: f64, t_ref: f64) -> Result<Vec<RetentionRow>> {
    retention_targets()
        .into_iter()
        .map(|(label, tau_ret)| {
            let spec = RetentionSpec {
                tau_ret,
                error_rate,
                tau_0,
                t_op,
                t_ref,
            };
            let (d, dr) = delta_from_retention(&spec)?;
            Ok(RetentionRow {
                retention: label.to_string(),
                tau_ret_s: tau_ret,
                delta_t_op: d,
                delta_t_ref: dr,
            })
        })
        .collect()
}

/// Free-layer energy barrier over k_B·T. Inputs in mT, A/m, nm, nm, K.
pub fn delta_from_stack(b_k: f64, m_s: f64, d_fl: f64, d_mtj: f64, temperature: f64) -> f64 {
    let k = PhysicalConstants::default().k_b;
    let r = 0.5 * d_mtj * NM;
    (b_k * MT) * m_s / 2.0 * std::f64::consts::PI * r * r * (d_fl * NM) / (k * temperature)
}

pub fn m_s_from_delta(delta: f64, b_k: f64, d_fl: f64, d_mtj: f64, temperature: f64) -> f64 {
    let k = PhysicalConstants::default().k_b;
    let r = 0.5 * d_mtj * NM;
    delta * k * temperature * 2.0 / ((b_k * MT) * std::f64::consts::PI * r * r * (d_fl * NM))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IcForm {
    /// Evaluated from M_s, B_k and B_x.
    Material,
    /// Evaluated from Δ.
    Thermal,
}

/// sqrt(1 + (π τ_D / τ)²), both in ns.
pub fn pulse_factor(tau_ns: f64, tau_d_ns: f64) -> f64 {
    (std::f64::consts::PI * tau_d_ns / tau_ns).hypot(1.0)
}

/// Critical SOT switching current [A] for a write pulse of `tau_ns`.
///
/// In the material form M_s comes from [`MtjStack::m_s`]; with M_s derived at
/// the same `temperature` the two forms agree to rounding.
pub fn critical_current(tau_ns: f64, stack: &MtjStack, temperature: f64, form: IcForm) -> Result<f64> {
    ensure_positive("tau", tau_ns)?;
    let c = PhysicalConstants::default();
    let pf = pulse_factor(tau_ns, stack.tau_d);
    let (w, d) = (stack.w_sot * NM, stack.d_sot * NM);
    let i = match form {
        IcForm::Material => {
            let ms = stack
                .m_s
                .unwrap_or_else(|| m_s_from_delta(stack.delta, stack.b_k, stack.d_fl, stack.d_mtj, temperature));
            2.0 * c.e * ms * (stack.d_fl * NM) * w * d / (c.hbar * stack.theta_sh)
                * (stack.b_k * MT / 2.0 - stack.b_x * MT / std::f64::consts::SQRT_2)
        }
        IcForm::Thermal => {
            let dm = stack.d_mtj * NM;
            8.0 * c.e * c.k_b * temperature * w * d * stack.delta
                / (std::f64::consts::PI * c.hbar * stack.theta_sh * dm * dm)
                * (1.0 - std::f64::consts::SQRT_2 * stack.b_x / stack.b_k)
        }
    };
    Ok(i * pf)
}

#[derive(Debug, Clone, Serialize)]
pub struct IcRow {
    pub tau_ns: f64,
    pub delta: f64,
    pub ic_ua: f64,
}

pub fn ic_curve(tau_grid_ns: &[f64], deltas: &[f64], stack: &MtjStack) -> Result<Vec<IcRow>> {
    if tau_grid_ns.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::param("tau_grid", "must be strictly ascending"));
    }
    let mut rows = Vec::with_capacity(tau_grid_ns.len() * deltas.len());
    for &delta in deltas {
        let s = stack.with_delta(delta);
        for &tau in tau_grid_ns {
            rows.push(IcRow {
                tau_ns: tau,
                delta,
                ic_ua: critical_current(tau, &s, T_REF, IcForm::Thermal)? * 1e6,
            });
        }
    }
    Ok(rows)
}

/// Log-spaced pulse widths from `lo` to `hi` ns inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Largest Δ (at [`T_REF`]) switchable by `i_available` amperes in `tau_ns`.
pub fn max_delta_for_current(i_available: f64, tau_ns: f64, stack: &MtjStack) -> Result<f64> {
    ensure_positive("i_available", i_available)?;
    let unit = critical_current(tau_ns, &stack.with_delta(1.0), T_REF, IcForm::Thermal)?;
    Ok(i_available / unit)
}

/// τ_D [ns] making I_c(`tau_ns`, `delta`) equal `i_target`.
pub fn calibrate_tau_d(i_target: f64, tau_ns: f64, delta: f64, stack: &MtjStack) -> Result<f64> {
    let s = MtjStack {
        tau_d: 0.0,
        ..stack.with_delta(delta)
    };
    let base = critical_current(tau_ns, &s, T_REF, IcForm::Thermal)?;
    let p = i_target / base;
    if p < 1.0 {
        return Err(Error::Calibration {
            fit: "tau_d",
            reason: format!("target {i_target:e} A is below the long-pulse asymptote {base:e} A"),
        });
    }
    Ok(tau_ns / std::f64::consts::PI * (p * p - 1.0).sqrt())
}

/// Write pulse width used throughout the writability analysis [ns].
pub const TAU_WRITE_NS: f64 = 10.0;
