//! Polygon figures: dashed circumcircle, thin unit chords, bold `t` chords
//! with direction arrows.

use std::fmt::Write;

use mahvol_core::polygons::{polygon_vertices, SignedPolygon};

pub const CANVAS: f64 = 500.0;
pub const DRAWN_RADIUS: f64 = 200.0;
const UNIT_STROKE: f64 = 1.5;
const T_STROKE: f64 = 4.5;

pub fn file_name(m: u32, n: u32, t: f64, index: usize) -> String {
    format!("polygon_m{m}_n{n}_t{t}_{index}.svg")
}

pub fn render(sp: &SignedPolygon) -> String {
    let p = &sp.polygon;
    let (m, n) = (p.params.m(), p.params.n());
    let c = CANVAS / 2.0;
    let scale = DRAWN_RADIUS / p.radius;
    let path = polygon_vertices(p);
    let pts: Vec<(f64, f64)> = path
        .iter()
        .map(|v| (c + scale * v.re, c - scale * v.im))
        .collect();

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(
        s,
        r#"<title>m={m} n={n} t={} sigma={:.6} eta={:.6} tau={:.6} h={} {}</title>"#,
        p.params.t(),
        sp.root.sigma(),
        p.eta.radians(),
        p.tau.radians(),
        p.winding_h,
        if p.same_direction { "same direction" } else { "opposite directions" }
    );
    s.push_str(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="black"/></marker></defs>"#,
    );
    s.push('\n');
    let _ = writeln!(
        s,
        r#"<circle class="circumcircle" cx="{c}" cy="{c}" r="{DRAWN_RADIUS}" fill="none" stroke="gray" stroke-dasharray="6 4"/>"#
    );
    let _ = writeln!(s, r#"<circle class="center" cx="{c}" cy="{c}" r="2" fill="gray"/>"#);

    let mut d = String::new();
    for (i, (x, y)) in pts.iter().take(pts.len() - 1).enumerate() {
        let _ = write!(d, "{}{x:.4} {y:.4} ", if i == 0 { "M " } else { "L " });
    }
    d.push('Z');
    let _ = writeln!(
        s,
        r##"<path class="outline" d="{d}" fill="#4a90d9" fill-opacity="0.08" fill-rule="evenodd" stroke="none"/>"##
    );

    for (i, w) in pts.windows(2).enumerate() {
        let (class, width) = if i < n as usize { ("unit", UNIT_STROKE) } else { ("t", T_STROKE) };
        let _ = writeln!(
            s,
            r#"<line class="{class}" x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="black" stroke-width="{width}" marker-end="url(#arrow)"/>"#,
            w[0].0, w[0].1, w[1].0, w[1].1
        );
    }
    s.push_str("</svg>\n");
    s
}
