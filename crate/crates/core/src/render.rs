//! SVG rendering of an instance with optional explored arcs and paths.

use std::fmt::Write as _;

use crate::geometry::{Point, ProblemInstance};

const PALETTE: [&str; 6] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

#[derive(Debug, Clone, Default)]
pub struct Overlay {
    /// Thin arcs, e.g. every connection the search tried successfully.
    pub arcs: Vec<(Point, Point)>,
    /// Labelled bold polylines.
    pub paths: Vec<(String, Vec<Point>)>,
}

fn px(p: Point, size: f64, margin: f64) -> (f64, f64) {
    let s = size - 2.0 * margin;
    (margin + p.x * s, margin + (1.0 - p.y) * s)
}

fn star(cx: f64, cy: f64, r: f64) -> String {
    (0..10)
        .map(|i| {
            let rad = if i % 2 == 0 { r } else { r * 0.45 };
            let a = std::f64::consts::PI * (i as f64 / 5.0 - 0.5);
            format!("{:.2},{:.2}", cx + rad * a.cos(), cy + rad * a.sin())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders a `size`-pixel square picture of the unit workspace.
pub fn render_svg(instance: &ProblemInstance, overlay: &Overlay, size: f64) -> String {
    let margin = 12.0;
    let dot = if instance.len() > 3000 { 0.8 } else { 1.5 };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let (x0, y0) = px(Point::new(0.0, 1.0), size, margin);
    let side = size - 2.0 * margin;
    let _ = writeln!(
        out,
        r#"<rect x="{x0}" y="{y0}" width="{side}" height="{side}" fill="white" stroke="black"/>"#
    );

    out.push_str(r##"<g stroke="#888" stroke-width="2" stroke-linecap="round">"##);
    for seg in instance.obstacles() {
        let (ax, ay) = px(seg.a, size, margin);
        let (bx, by) = px(seg.b, size, margin);
        let _ = write!(
            out,
            r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}"/>"#
        );
    }
    out.push_str("</g>\n");

    if !overlay.arcs.is_empty() {
        out.push_str(r##"<g stroke="#4a90d9" stroke-width="0.4" stroke-opacity="0.6">"##);
        for &(a, b) in &overlay.arcs {
            let (ax, ay) = px(a, size, margin);
            let (bx, by) = px(b, size, margin);
            let _ = write!(
                out,
                r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}"/>"#
            );
        }
        out.push_str("</g>\n");
    }

    out.push_str(r#"<g fill="black">"#);
    for &p in instance.locations() {
        let (x, y) = px(p, size, margin);
        let _ = write!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{dot}"/>"#);
    }
    out.push_str("</g>\n");

    for (i, (label, path)) in overlay.paths.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = path
            .iter()
            .map(|&p| {
                let (x, y) = px(p, size, margin);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2.5"/>"#,
            pts.join(" ")
        );
        let ly = margin + 14.0 + 14.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{ly:.2}" font-size="12" font-family="sans-serif" fill="{color}">{}</text>"#,
            margin + 6.0,
            escape(label)
        );
    }

    let (sx, sy) = px(instance.point(instance.start()), size, margin);
    let _ = writeln!(
        out,
        r##"<circle cx="{sx:.2}" cy="{sy:.2}" r="6" fill="#2ca02c" stroke="black"/>"##
    );
    let (gx, gy) = px(instance.point(instance.goal()), size, margin);
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#ffd700" stroke="black"/>"##,
        star(gx, gy, 8.0)
    );
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{LocationId, Segment};

    #[test]
    fn renders_all_elements() {
        let inst = ProblemInstance::new(
            vec![
                Point::new(0.1, 0.1),
                Point::new(0.9, 0.9),
                Point::new(0.5, 0.2),
            ],
            LocationId(0),
            LocationId(1),
            vec![Segment::new(Point::new(0.4, 0.4), Point::new(0.6, 0.6)).unwrap()],
        )
        .unwrap();
        let overlay = Overlay {
            arcs: vec![(Point::new(0.1, 0.1), Point::new(0.5, 0.2))],
            paths: vec![(
                "a<b".into(),
                vec![
                    Point::new(0.1, 0.1),
                    Point::new(0.5, 0.2),
                    Point::new(0.9, 0.9),
                ],
            )],
        };
        let svg = render_svg(&inst, &overlay, 200.0);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("a&lt;b"));
        assert!(svg.contains("<polygon"));
        // y is flipped: start (0.1, 0.1) lands near the bottom.
        assert!(svg.contains(r#"cx="29.60" cy="170.40" r="6""#));
    }
}
