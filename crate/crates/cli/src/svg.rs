//! Deterministic SVG line plots of traced loci.

use std::fmt::Write;

use fracloci::solver::CurveTrace;
use fracloci::LocusKind;

use crate::envelope::CommandSpec;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
/// Vertical extent is capped so one steep branch does not flatten the rest.
const SIGMA_CAP: f64 = 5.0;
const PALETTE: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

pub fn title(command: &CommandSpec) -> String {
    match command {
        CommandSpec::Trace(t) => {
            let what = match t.kind {
                LocusKind::Ss => "Spectral singularity loci",
                LocusKind::Cpa => "CPA loci",
            };
            match &t.recipe {
                Some(r) => format!("{what} ({r})"),
                None => what.to_string(),
            }
        }
        other => other.name().to_string(),
    }
}

/// Step from {1, 2, 5} x 10^k giving roughly `target` intervals.
fn nice_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    let m = raw / mag;
    let f = if m < 1.5 {
        1.0
    } else if m < 3.5 {
        2.0
    } else if m < 7.5 {
        5.0
    } else {
        10.0
    };
    f * mag
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = nice_step(hi - lo, 6.0);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn label(x: f64) -> String {
    let s = format!("{:.3}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn frame(curves: &[CurveTrace]) -> Frame {
    let mut x0 = f64::INFINITY;
    let mut x1 = f64::NEG_INFINITY;
    let mut y0: f64 = 0.0;
    let mut y1: f64 = 0.0;
    for c in curves {
        x0 = x0.min(c.meta.settings.rho_min);
        x1 = x1.max(c.meta.settings.rho_max);
        for p in &c.points {
            y0 = y0.min(p.sigma.max(-SIGMA_CAP));
            y1 = y1.max(p.sigma.min(SIGMA_CAP));
        }
    }
    if !x0.is_finite() || !x1.is_finite() || x0 >= x1 {
        x0 = -2.0;
        x1 = 1.0;
    }
    if y1 - y0 <= 0.0 {
        y0 = -1.0;
        y1 = 1.0;
    }
    let pad = 0.05 * (y1 - y0);
    Frame { x0, x1: x1.max(1.0), y0: y0 - if y0 < 0.0 { pad } else { 0.0 }, y1: y1 + if y1 > 0.0 { pad } else { 0.0 } }
}

pub fn plot(curves: &[CurveTrace], title: &str) -> String {
    let f = frame(curves);
    let mut s = String::new();
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<defs><clipPath id="plot"><rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}"/></clipPath></defs>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#, LEFT + plot_w / 2.0, escape(title));

    for x in ticks(f.x0, f.x1) {
        let px = f.px(x);
        let _ = writeln!(s, r##"<line x1="{px:.2}" y1="{TOP}" x2="{px:.2}" y2="{:.2}" stroke="#e6e6e6"/>"##, HEIGHT - BOTTOM);
        let _ = writeln!(s, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, HEIGHT - BOTTOM + 18.0, label(x));
    }
    for y in ticks(f.y0, f.y1) {
        let py = f.py(y);
        let _ = writeln!(s, r##"<line x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#e6e6e6"/>"##, LEFT + plot_w);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 8.0, py + 4.0, label(y));
    }
    let _ = writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#);
    if f.y0 < 0.0 && f.y1 > 0.0 {
        let py = f.py(0.0);
        let _ = writeln!(s, r#"<line x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="black" stroke-dasharray="4 3"/>"#, LEFT + plot_w);
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">ρ = V_r / E</text>"#, LEFT + plot_w / 2.0, HEIGHT - 16.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">σ = V_i / E</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    let _ = writeln!(s, r#"<g clip-path="url(#plot)" fill="none" stroke-width="1.6">"#);
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for seg in &c.meta.segments {
            let pts = &c.points[seg[0]..seg[1]];
            if pts.is_empty() {
                continue;
            }
            let mut d = String::new();
            for p in pts {
                let _ = write!(d, "{:.2},{:.2} ", f.px(p.rho), f.py(p.sigma.clamp(-4.0 * SIGMA_CAP, 4.0 * SIGMA_CAP)));
            }
            let _ = writeln!(s, r#"<polyline stroke="{color}" points="{}"/>"#, d.trim_end());
        }
    }
    let _ = writeln!(s, "</g>");

    let lx = WIDTH - RIGHT + 16.0;
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = TOP + 12.0 + 20.0 * i as f64;
        let _ = writeln!(s, r#"<line x1="{lx}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="2"/>"#, lx + 22.0);
        let branch = if c.meta.branch == fracloci::Branch::Plus { " (+)" } else { "" };
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}">α={}, n={}{branch}</text>"#,
            lx + 28.0,
            y + 4.0,
            c.meta.alpha.value(),
            c.meta.n
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
