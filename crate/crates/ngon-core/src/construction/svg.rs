//! SVG 1.1 drawings of a constructed polygon.

use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Vertices drawn when the polygon is too large to show whole.
    pub max_vertices: usize,
    /// Width and height in pixels.
    pub size: u32,
    /// Magnification about the centre of the view.
    pub zoom: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            max_vertices: 64,
            size: 800,
            zoom: 1.0,
        }
    }
}

/// Polygons up to this many sides are drawn whole.
pub const FULL_LIMIT: u32 = 257;

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Draws the first vertices of a regular `n`-gon. For `n <= 257` every vertex
/// is expected and the closed polygon is drawn; otherwise the view is the arc
/// sector spanned by the given vertices.
pub fn emit_svg(n: u32, vertices: &[(f64, f64)], opts: &SvgOptions) -> String {
    let full = n <= FULL_LIMIT;
    let shown = if full {
        vertices
    } else {
        &vertices[..vertices.len().min(opts.max_vertices)]
    };
    // View box in drawing coordinates (y up), flipped on output.
    let (cx, cy, half) = if full {
        (0.0, 0.0, 1.1)
    } else {
        let xs = shown.iter().map(|v| v.0);
        let ys = shown.iter().map(|v| v.1);
        let (x0, x1) = xs.fold((f64::MAX, f64::MIN), |(a, b), x| (a.min(x), b.max(x)));
        let (y0, y1) = ys.fold((f64::MAX, f64::MIN), |(a, b), y| (a.min(y), b.max(y)));
        let half = ((x1 - x0).max(y1 - y0) / 2.0).max(1e-9) * 1.15;
        ((x0 + x1) / 2.0, (y0 + y1) / 2.0, half)
    };
    let half = half / opts.zoom;
    let stroke = half / 300.0;
    let dot = if full { half / 120.0 } else { half / 80.0 };
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="{1} {2} {3} {3}">"#,
        opts.size,
        num(cx - half),
        num(-cy - half),
        num(2.0 * half)
    );
    let _ = writeln!(s, "<title>regular {n}-gon</title>");
    if full {
        let _ = writeln!(
            s,
            r#"<circle cx="0.000000" cy="0.000000" r="1.000000" fill="none" stroke="gray" stroke-width="{}"/>"#,
            num(stroke)
        );
    } else if let (Some(a), Some(b)) = (shown.first(), shown.last()) {
        let _ = writeln!(
            s,
            r#"<path d="M {} {} A 1.000000 1.000000 0 0 0 {} {}" fill="none" stroke="gray" stroke-width="{}"/>"#,
            num(a.0),
            num(-a.1),
            num(b.0),
            num(-b.1),
            num(stroke)
        );
    }
    let pts: Vec<String> = shown.iter().map(|v| format!("{},{}", num(v.0), num(-v.1))).collect();
    let tag = if full { "polygon" } else { "polyline" };
    let _ = writeln!(
        s,
        r#"<{tag} points="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
        pts.join(" "),
        num(stroke)
    );
    for (i, v) in shown.iter().enumerate() {
        let fill = if i == 0 { "red" } else { "black" };
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
            num(v.0),
            num(-v.1),
            num(dot)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ngon(n: u32, k: usize) -> Vec<(f64, f64)> {
        (0..k)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                (a.cos(), a.sin())
            })
            .collect()
    }

    #[test]
    fn seventeen_vertices_from_unit_point() {
        let svg = emit_svg(17, &ngon(17, 17), &SvgOptions::default());
        assert_eq!(svg.matches(r#"fill="black"/>"#).count() + svg.matches(r#"fill="red"/>"#).count(), 17);
        assert!(svg.contains(r#"<circle cx="1.000000" cy="0.000000""#));
        assert!(svg.contains("<polygon "));
    }

    #[test]
    fn sector_spans_requested_vertices() {
        let opts = SvgOptions {
            max_vertices: 64,
            ..Default::default()
        };
        let svg = emit_svg(65537, &ngon(65537, 100), &opts);
        assert!(svg.contains("<polyline "));
        assert_eq!(svg.matches("<circle ").count(), 64);
        let last = ngon(65537, 64)[63];
        assert!(svg.contains(&format!("{} {}\" fill", num(last.0), num(-last.1))));
    }

    #[test]
    fn deterministic_and_no_negative_zero() {
        let v = ngon(5, 5);
        let a = emit_svg(5, &v, &SvgOptions::default());
        assert_eq!(a, emit_svg(5, &v, &SvgOptions::default()));
        assert!(!a.contains("-0.000000"));
    }
}
