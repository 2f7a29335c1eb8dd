//! SVG rendering of a certified planar drawing.

use std::fmt::Write as _;

use affine_cover::{Graph, Realization};

const SIZE: f64 = 480.0;

/// Clip the line through `p`, `q` to the box `[lo, hi]` (Liang–Barsky on the
/// parameter range of the whole line).
fn clip(p: [f64; 2], q: [f64; 2], lo: [f64; 2], hi: [f64; 2]) -> Option<([f64; 2], [f64; 2])> {
    let d = [q[0] - p[0], q[1] - p[1]];
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for i in 0..2 {
        if d[i].abs() < 1e-12 {
            if p[i] < lo[i] || p[i] > hi[i] {
                return None;
            }
            continue;
        }
        let (a, b) = ((lo[i] - p[i]) / d[i], (hi[i] - p[i]) / d[i]);
        t0 = t0.max(a.min(b));
        t1 = t1.min(a.max(b));
    }
    (t0 <= t1).then(|| ([p[0] + t0 * d[0], p[1] + t0 * d[1]], [p[0] + t1 * d[0], p[1] + t1 * d[1]]))
}

/// Lines clipped to the vertex bounding box grown by 10% on every side,
/// edges on top, then vertices labelled 1-based.
pub fn render(g: &Graph, r: &Realization) -> String {
    let pts: Vec<[f64; 2]> = r.positions.iter().map(|p| {
        let c = p.to_f64();
        [c[0], c[1]]
    }).collect();
    let (mut lo, mut hi) = ([0.0f64; 2], [1.0f64; 2]);
    if !pts.is_empty() {
        for i in 0..2 {
            lo[i] = pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min);
            hi[i] = pts.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max);
        }
    }
    for i in 0..2 {
        let span = (hi[i] - lo[i]).max(1.0);
        lo[i] -= span * 0.1;
        hi[i] += span * 0.1;
    }
    let scale = SIZE / (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let (w, h) = ((hi[0] - lo[0]) * scale, (hi[1] - lo[1]) * scale);
    let tx = |p: [f64; 2]| ((p[0] - lo[0]) * scale, (hi[1] - p[1]) * scale);
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for l in &r.lines {
        let (p, q) = (l.p.to_f64(), l.q.to_f64());
        if let Some((a, b)) = clip([p[0], p[1]], [q[0], q[1]], lo, hi) {
            let ((x1, y1), (x2, y2)) = (tx(a), tx(b));
            writeln!(s, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="silver" stroke-width="1"/>"#).unwrap();
        }
    }
    for (u, v) in g.edges() {
        let ((x1, y1), (x2, y2)) = (tx(pts[u]), tx(pts[v]));
        writeln!(s, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="2"/>"#).unwrap();
    }
    for (i, &p) in pts.iter().enumerate() {
        let (x, y) = tx(p);
        writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#).unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="11">{}</text>"#, x + 5.0, y - 5.0, i + 1).unwrap();
    }
    s.push_str("</svg>\n");
    s
}
