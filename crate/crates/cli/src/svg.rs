//! Standalone SVG figures on a fixed 800×600 canvas.

use std::fmt::Write;

use horoslab::tangency::TangencyPoint;
use horoslab::{Direction, ProfileSample};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

/// Linear map from data coordinates to the canvas (y flipped).
#[derive(Debug, Clone, Copy)]
struct Frame {
    x0: f64,
    y0: f64,
    sx: f64,
    sy: f64,
}

impl Frame {
    fn fit(xs: (f64, f64), ys: (f64, f64), equal: bool) -> Frame {
        let span = |(lo, hi): (f64, f64)| if hi > lo { hi - lo } else { lo.abs().max(1.0) };
        let (w, h) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
        let (mut sx, mut sy) = (w / span(xs), h / span(ys));
        if equal {
            sx = sx.min(sy);
            sy = sx;
        }
        // centre the data box inside the plotting area
        let x0 = xs.0 - (w / sx - span(xs)) / 2.0;
        let y0 = ys.0 - (h / sy - span(ys)) / 2.0;
        Frame { x0, y0, sx, sy }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) * self.sx
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) * self.sy
    }
}

fn header(title: &str) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{MARGIN}\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\">{}</text>",
        escape(title)
    );
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn bounds(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    vals.filter(|v| v.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn polyline(points: impl Iterator<Item = (f64, f64)>, f: &Frame) -> String {
    points.map(|(x, y)| format!("{:.2},{:.2}", f.px(x), f.py(y))).collect::<Vec<_>>().join(" ")
}

/// Profile curve in the `(x, z)` half-plane with the rotation axis, the
/// horocycles through each vertical tangency and an arrow per tangency.
pub fn profile(samples: &[ProfileSample], tangencies: &[TangencyPoint], title: &str) -> String {
    let xs = bounds(samples.iter().map(|p| p.x).chain([0.0]));
    let zs = bounds(samples.iter().map(|p| p.z).chain(tangencies.iter().map(|t| t.height)));
    let f = Frame::fit(xs, (0.0f64.min(zs.0), zs.1), true);
    let mut s = header(title);
    s.push_str("<g id=\"horosphere-boundary\">\n");
    let _ = writeln!(
        s,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#999\" stroke-width=\"1\"/>",
        MARGIN,
        f.py(0.0),
        WIDTH - MARGIN,
        f.py(0.0)
    );
    s.push_str("</g>\n<g id=\"axis\">\n");
    let _ = writeln!(
        s,
        "<line x1=\"{0:.2}\" y1=\"{1:.2}\" x2=\"{0:.2}\" y2=\"{2:.2}\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>",
        f.px(0.0),
        f.py(0.0),
        MARGIN
    );
    s.push_str("</g>\n<g id=\"horocycles\">\n");
    for t in tangencies {
        let _ = writeln!(
            s,
            "<line class=\"horocycle\" x1=\"{MARGIN:.2}\" y1=\"{y:.2}\" x2=\"{r:.2}\" y2=\"{y:.2}\" stroke=\"#2ca02c\" stroke-width=\"1\"/>",
            y = f.py(t.height),
            r = WIDTH - MARGIN
        );
    }
    s.push_str("</g>\n<g id=\"profile\">\n");
    let _ = writeln!(
        s,
        "<polyline class=\"profile\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"{}\"/>",
        polyline(samples.iter().map(|p| (p.x, p.z)), &f)
    );
    s.push_str("</g>\n<g id=\"tangencies\">\n");
    for t in tangencies {
        let (cx, cy) = (f.px(t.x), f.py(t.height));
        let dir = if t.direction == Direction::Up { -1.0 } else { 1.0 };
        let _ = writeln!(s, "<circle class=\"tangency\" cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"4\" fill=\"#d62728\"/>");
        let tip = cy + dir * 24.0;
        let _ = writeln!(
            s,
            "<line x1=\"{cx:.2}\" y1=\"{cy:.2}\" x2=\"{cx:.2}\" y2=\"{tip:.2}\" stroke=\"#d62728\" stroke-width=\"2\"/>"
        );
        let _ = writeln!(
            s,
            "<polygon class=\"arrow\" points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\" fill=\"#d62728\"/>",
            cx - 5.0,
            tip - dir * 8.0,
            cx + 5.0,
            tip - dir * 8.0,
            cx,
            tip
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// One polyline of minimal area against volume per family; winners are
/// marked with filled circles in their family's colour.
pub fn sweep(series: &[(String, Vec<(f64, f64)>)], winners: &[(String, f64, f64)], title: &str) -> String {
    let xs = bounds(series.iter().flat_map(|(_, p)| p.iter().map(|q| q.0)));
    let ys = bounds(series.iter().flat_map(|(_, p)| p.iter().map(|q| q.1)));
    let f = Frame::fit(xs, (0.0f64.min(ys.0), ys.1), false);
    let colour = |name: &str| {
        let i = series.iter().position(|(n, _)| n == name).unwrap_or(0);
        PALETTE[i % PALETTE.len()]
    };
    let mut s = header(title);
    let _ = writeln!(
        s,
        "<g id=\"frame\"><line x1=\"{m:.2}\" y1=\"{b:.2}\" x2=\"{r:.2}\" y2=\"{b:.2}\" stroke=\"black\"/><line x1=\"{m:.2}\" y1=\"{b:.2}\" x2=\"{m:.2}\" y2=\"{m:.2}\" stroke=\"black\"/>",
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">volume</text><text x=\"10\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">area</text></g>",
        WIDTH / 2.0,
        HEIGHT - 15.0,
        HEIGHT / 2.0
    );
    s.push_str("<g id=\"families\">\n");
    for (i, (name, pts)) in series.iter().enumerate() {
        let c = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            s,
            "<polyline class=\"family\" data-family=\"{}\" fill=\"none\" stroke=\"{c}\" stroke-width=\"2\" points=\"{}\"/>",
            escape(name),
            polyline(pts.iter().copied(), &f)
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"{c}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            WIDTH - MARGIN - 180.0,
            MARGIN + 16.0 * i as f64,
            escape(name)
        );
    }
    s.push_str("</g>\n<g id=\"winners\">\n");
    for (name, v, a) in winners {
        let _ = writeln!(
            s,
            "<circle class=\"winner\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"{}\" stroke=\"black\"/>",
            f.px(*v),
            f.py(*a),
            colour(name)
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_tangency_list_draws_curve_only() {
        let fp = horoslab::FamilyParams::new(horoslab::Regime::EqualOne, 1.0, -0.3).unwrap();
        let samples = horoslab::profile_polyline(&fp, -1.0, 1.0, 20, 1e-10).unwrap();
        let svg = profile(&samples, &[], "curve");
        assert_eq!(svg.matches("class=\"profile\"").count(), 1);
        assert_eq!(svg.matches("class=\"horocycle\"").count(), 0);
        assert!(svg.starts_with("<?xml") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn one_polyline_per_family() {
        let series = vec![("a".to_string(), vec![(1.0, 2.0), (2.0, 3.0)]), ("b".to_string(), vec![(1.0, 1.0)])];
        let svg = sweep(&series, &[("b".into(), 1.0, 1.0)], "sweep");
        assert_eq!(svg.matches("class=\"family\"").count(), 2);
        assert_eq!(svg.matches("class=\"winner\"").count(), 1);
    }
}
