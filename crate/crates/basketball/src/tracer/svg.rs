use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use super::TraceResult;

const SIZE: f64 = 480.0;
const DISC: f64 = 200.0;

fn xy(z: Complex64, r0: f64) -> (f64, f64) {
    (SIZE / 2.0 + DISC * z.re / r0, SIZE / 2.0 - DISC * z.im / r0)
}

/// Picture of the traced basketball on the unit-normalised disc.
pub fn svg_string(tr: &TraceResult) -> String {
    let r0 = tr.radius;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        s,
        r##"<circle cx="{c}" cy="{c}" r="{DISC}" fill="none" stroke="#888" stroke-width="0.8"/>"##,
        c = SIZE / 2.0
    );
    for b in &tr.branches {
        let (colour, width) = if b.start_leaf % 2 == 1 { ("#1f4fbf", 2.5) } else { ("#c0392b", 1.0) };
        let pts: Vec<String> = b
            .polyline
            .iter()
            .map(|&z| {
                let (x, y) = xy(z, r0);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline class="leaf-{}-{}" points="{}" fill="none" stroke="{colour}" stroke-width="{width}"/>"#,
            b.start_leaf,
            b.end_leaf,
            pts.join(" ")
        );
    }
    for v in &tr.vertices {
        let (x, y) = xy(v.position, r0);
        let fill = if v.is_root { "#000" } else { "#fff" };
        let _ = writeln!(s, r##"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="3" fill="{fill}" stroke="#000"/>"##);
    }
    let m = 4 * tr.n();
    for k in 0..m {
        let phi = k as f64 * std::f64::consts::PI * 2.0 / m as f64;
        let (x, y) = xy(Complex64::from_polar(1.08 * r0, phi), r0);
        let _ = writeln!(
            s,
            r#"<text class="leaf" x="{x:.3}" y="{y:.3}" font-size="11" text-anchor="middle" dominant-baseline="middle">{k}</text>"#
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn render_svg(tr: &TraceResult, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, svg_string(tr))
}
