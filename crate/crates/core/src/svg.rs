//! Static SVG figures: the unit sphere and sampled bisectors.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::bisector::BisectorTrace;
use crate::norm::Norm;
use crate::vec2::Vec2;

pub const VIEWBOX: f64 = 1000.0;
pub const SPHERE_SAMPLES: usize = 720;

struct Chart {
    scale: f64,
}

impl Chart {
    fn map(&self, p: Vec2) -> (f64, f64) {
        let c = VIEWBOX / 2.0;
        (c + p.u * self.scale, c - p.w * self.scale)
    }
}

fn polyline(chart: &Chart, pts: impl Iterator<Item = Vec2>) -> String {
    pts.map(|p| {
        let (x, y) = chart.map(p);
        format!("{x:.3},{y:.3}")
    })
    .collect::<Vec<_>>()
    .join(" ")
}

/// Renders the unit sphere (720-point polygon) and each trace: a polyline
/// through the root midpoints plus a thick stroke over every wide root.
pub fn render(n: &Norm, traces: &[BisectorTrace]) -> String {
    let sphere: Vec<Vec2> =
        (0..SPHERE_SAMPLES).map(|k| n.unit_point(2.0 * PI * k as f64 / SPHERE_SAMPLES as f64)).collect();
    let extent = sphere
        .iter()
        .copied()
        .chain(traces.iter().flat_map(|t| t.roots.iter().flat_map(|r| [r.lo(t.x), r.hi(t.x)])))
        .map(|p| p.u.abs().max(p.w.abs()))
        .fold(1e-12, f64::max);
    let chart = Chart { scale: 0.45 * VIEWBOX / extent };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {v} {v}" width="{v}" height="{v}">"#,
        v = VIEWBOX
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (ox, oy) = chart.map(Vec2::ZERO);
    let _ = writeln!(
        out,
        r##"<g stroke="#bbb" stroke-width="1"><line x1="0" y1="{oy:.3}" x2="{v}" y2="{oy:.3}"/><line x1="{ox:.3}" y1="0" x2="{ox:.3}" y2="{v}"/></g>"##,
        v = VIEWBOX
    );
    let _ = writeln!(
        out,
        r##"<polygon class="sphere" fill="none" stroke="#222" stroke-width="2" points="{}"/>"##,
        polyline(&chart, sphere.into_iter())
    );
    for (i, t) in traces.iter().enumerate() {
        let _ = writeln!(out, r#"<g class="bisector" data-index="{i}">"#);
        let _ = writeln!(
            out,
            r##"<polyline fill="none" stroke="#c03" stroke-width="2" points="{}"/>"##,
            polyline(&chart, t.midpoints())
        );
        for r in t.roots.iter().filter(|r| r.width() > 1e-9) {
            let ((x1, y1), (x2, y2)) = (chart.map(r.lo(t.x)), chart.map(r.hi(t.x)));
            let _ = writeln!(
                out,
                r##"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#f69" stroke-width="4"/>"##
            );
        }
        let ((x1, y1), (x2, y2)) = (chart.map(t.x), chart.map(-t.x));
        let _ = writeln!(out, r##"<circle cx="{x1:.3}" cy="{y1:.3}" r="5" fill="#06c"/>"##);
        let _ = writeln!(out, r##"<circle cx="{x2:.3}" cy="{y2:.3}" r="5" fill="#06c"/>"##);
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}
