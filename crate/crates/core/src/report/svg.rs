//! Minimal SVG charts: line plots, labelled scatter plots and stacked bars.
//! Output is deterministic for identical input.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone)]
pub struct Axes {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_scale: Scale,
    pub y_scale: Scale,
}

impl Axes {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            x_scale: Scale::Linear,
            y_scale: Scale::Linear,
        }
    }

    pub fn log_x(mut self) -> Self {
        self.x_scale = Scale::Log;
        self
    }

    pub fn log_y(mut self) -> Self {
        self.y_scale = Scale::Log;
        self
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e4 || v.abs() < 1e-2 {
        format!("{v:.1e}")
    } else {
        format!("{}", (v * 1000.0).round() / 1000.0)
    }
}

struct Map {
    lo: f64,
    hi: f64,
    scale: Scale,
    a: f64,
    b: f64,
}

impl Map {
    fn new(vals: impl Iterator<Item = f64>, scale: Scale, a: f64, b: f64) -> Self {
        let ok = |v: &f64| v.is_finite() && (scale == Scale::Linear || *v > 0.0);
        let (mut lo, mut hi) = vals
            .filter(ok)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
        if !lo.is_finite() {
            (lo, hi) = if scale == Scale::Log { (1.0, 10.0) } else { (0.0, 1.0) };
        }
        if scale == Scale::Log {
            lo = 10f64.powf(lo.log10().floor());
            hi = 10f64.powf(hi.log10().ceil());
            if lo == hi {
                hi = lo * 10.0;
            }
        } else {
            if lo == hi {
                let d = if lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
                lo -= d;
                hi += d;
            }
            if lo > 0.0 && lo < 0.3 * hi {
                lo = 0.0;
            }
        }
        Self { lo, hi, scale, a, b }
    }

    fn t(&self, v: f64) -> f64 {
        match self.scale {
            Scale::Linear => (v - self.lo) / (self.hi - self.lo),
            Scale::Log => (v.log10() - self.lo.log10()) / (self.hi.log10() - self.lo.log10()),
        }
    }

    fn at(&self, v: f64) -> f64 {
        self.a + (self.b - self.a) * self.t(v)
    }

    fn ticks(&self) -> Vec<f64> {
        match self.scale {
            Scale::Log => {
                let (l, h) = (self.lo.log10().round() as i32, self.hi.log10().round() as i32);
                (l..=h).map(|e| 10f64.powi(e)).collect()
            }
            Scale::Linear => (0..=5)
                .map(|k| self.lo + (self.hi - self.lo) * k as f64 / 5.0)
                .collect(),
        }
    }
}

fn frame(out: &mut String, axes: &Axes, xm: &Map, ym: &Map, x_ticks: bool) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = write!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = write!(
        out,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        (LEFT + W - RIGHT) / 2.0,
        esc(&axes.title)
    );
    let (x0, x1, y0, y1) = (LEFT, W - RIGHT, H - BOTTOM, TOP);
    let _ = write!(
        out,
        r#"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    );
    if x_ticks {
        for t in xm.ticks() {
            let x = xm.at(t);
            let _ = write!(
                out,
                r#"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{}" stroke="black"/>"#,
                y0 + 5.0
            );
            let _ = write!(
                out,
                r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#,
                y0 + 18.0,
                fmt_tick(t)
            );
        }
    }
    for t in ym.ticks() {
        let y = ym.at(t);
        let _ = write!(
            out,
            r#"<line x1="{}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/>"#,
            x0 - 5.0
        );
        let _ = write!(
            out,
            r##"<line x1="{x0}" y1="{y:.2}" x2="{x1}" y2="{y:.2}" stroke="#ddd"/>"##
        );
        let _ = write!(
            out,
            r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            y + 4.0,
            fmt_tick(t)
        );
    }
    let _ = write!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        H - 15.0,
        esc(&axes.x_label)
    );
    let _ = write!(
        out,
        r#"<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">{1}</text>"#,
        (y0 + y1) / 2.0,
        esc(&axes.y_label)
    );
}

fn legend(out: &mut String, names: &[&str]) {
    for (k, n) in names.iter().enumerate() {
        let y = TOP + 10.0 + 18.0 * k as f64;
        let x = W - RIGHT + 12.0;
        let _ = write!(
            out,
            r#"<rect x="{x}" y="{}" width="12" height="12" fill="{}"/><text x="{}" y="{}">{}</text>"#,
            y - 10.0,
            PALETTE[k % PALETTE.len()],
            x + 18.0,
            y,
            esc(n)
        );
    }
}

/// One polyline per series.
pub fn lines(axes: &Axes, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let xm = Map::new(
        series.iter().flat_map(|s| s.1.iter().map(|p| p.0)),
        axes.x_scale,
        LEFT,
        W - RIGHT,
    );
    let ym = Map::new(
        series.iter().flat_map(|s| s.1.iter().map(|p| p.1)),
        axes.y_scale,
        H - BOTTOM,
        TOP,
    );
    let mut out = String::new();
    frame(&mut out, axes, &xm, &ym, true);
    for (k, (_, pts)) in series.iter().enumerate() {
        let path: Vec<String> = pts
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", xm.at(x), ym.at(y)))
            .collect();
        let _ = write!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            path.join(" "),
            PALETTE[k % PALETTE.len()]
        );
    }
    let names: Vec<&str> = series.iter().map(|s| s.0.as_str()).collect();
    legend(&mut out, &names);
    out.push_str("</svg>\n");
    out
}

/// Labelled points, one colour per point.
pub fn scatter(axes: &Axes, points: &[(String, f64, f64)]) -> String {
    let xm = Map::new(points.iter().map(|p| p.1), axes.x_scale, LEFT, W - RIGHT);
    let ym = Map::new(points.iter().map(|p| p.2), axes.y_scale, H - BOTTOM, TOP);
    let mut out = String::new();
    frame(&mut out, axes, &xm, &ym, true);
    for (k, (_, x, y)) in points.iter().enumerate() {
        if x.is_finite() && y.is_finite() {
            let _ = write!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="5" fill="{}"/>"#,
                xm.at(*x),
                ym.at(*y),
                PALETTE[k % PALETTE.len()]
            );
        }
    }
    let names: Vec<&str> = points.iter().map(|p| p.0.as_str()).collect();
    legend(&mut out, &names);
    out.push_str("</svg>\n");
    out
}

/// Stacked bars: `bars` holds (category, one value per stack component).
pub fn stacked_bars(axes: &Axes, stacks: &[&str], bars: &[(String, Vec<f64>)]) -> String {
    let totals = bars.iter().map(|b| b.1.iter().sum::<f64>());
    let xm = Map::new([0.0, bars.len() as f64].into_iter(), Scale::Linear, LEFT, W - RIGHT);
    let ym = Map::new(totals.chain([0.0]), Scale::Linear, H - BOTTOM, TOP);
    let mut out = String::new();
    frame(&mut out, axes, &xm, &ym, false);
    let slot = (W - RIGHT - LEFT) / bars.len().max(1) as f64;
    for (k, (label, vals)) in bars.iter().enumerate() {
        let x = LEFT + slot * (k as f64 + 0.2);
        let mut acc = 0.0;
        for (j, v) in vals.iter().enumerate() {
            let (ya, yb) = (ym.at(acc), ym.at(acc + v));
            let _ = write!(
                out,
                r#"<rect x="{x:.2}" y="{yb:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                slot * 0.6,
                (ya - yb).max(0.0),
                PALETTE[j % PALETTE.len()]
            );
            acc += v;
        }
        let _ = write!(
            out,
            r#"<text x="{:.2}" y="{}" text-anchor="middle" font-size="10">{}</text>"#,
            x + slot * 0.3,
            H - BOTTOM + 16.0,
            esc(label)
        );
    }
    legend(&mut out, stacks);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_are_well_formed_and_deterministic() {
        let axes = Axes::new("t", "x", "y <1>").log_y();
        let s = vec![("a".to_string(), vec![(1.0, 1e-6), (2.0, 1e-4)])];
        let a = lines(&axes, &s);
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
        assert!(a.contains("y &lt;1&gt;"));
        assert_eq!(a, lines(&axes, &s));
    }

    #[test]
    fn stacked_bar_heights_add_up() {
        let axes = Axes::new("e", "", "J");
        let s = stacked_bars(&axes, &["a", "b"], &[("x".into(), vec![1.0, 3.0])]);
        assert_eq!(s.matches("<rect x=").count(), 1 + 2 + 2);
    }

    #[test]
    fn degenerate_ranges_do_not_panic() {
        let axes = Axes::new("t", "x", "y");
        scatter(&axes, &[("p".into(), 1.0, 1.0)]);
        scatter(&axes, &[]);
        lines(&axes.clone().log_x(), &[("n".into(), vec![(0.0, f64::NAN)])]);
    }
}
