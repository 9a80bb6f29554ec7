//! SVG diagram of a polygon, the chord lines defining a hit's endpoints and
//! the hit segment itself.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use polypi_core::catalog::Catalog;

use crate::report::{Endpoint, HitRecord};

/// SVG user units per unit of length.
const SCALE: f64 = 100.0;

type Xy = (f64, f64);

fn num(v: f64) -> String {
    let r = (v * 1000.0).round() / 1000.0;
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

/// Maps catalog coordinates to SVG user space (y points down).
fn to_svg(p: (f64, f64)) -> (f64, f64) {
    (p.0 * SCALE, -p.1 * SCALE)
}

struct Bounds {
    min: (f64, f64),
    max: (f64, f64),
}

impl Bounds {
    fn new() -> Self {
        Bounds {
            min: (f64::INFINITY, f64::INFINITY),
            max: (f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn add(&mut self, p: (f64, f64)) {
        self.min = (self.min.0.min(p.0), self.min.1.min(p.1));
        self.max = (self.max.0.max(p.0), self.max.1.max(p.1));
    }
}

/// Segment of chord `(i, j)` long enough to show its vertices and every
/// listed point on it.
fn chord_segment(vertices: &[(f64, f64)], chord: [u32; 2], on_line: &[(f64, f64)]) -> ((f64, f64), (f64, f64)) {
    let a = vertices[chord[0] as usize];
    let b = vertices[chord[1] as usize];
    let d = (b.0 - a.0, b.1 - a.1);
    let len2 = d.0 * d.0 + d.1 * d.1;
    let t = |p: (f64, f64)| ((p.0 - a.0) * d.0 + (p.1 - a.1) * d.1) / len2;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for &p in on_line {
        lo = lo.min(t(p));
        hi = hi.max(t(p));
    }
    let at = |s: f64| (a.0 + s * d.0, a.1 + s * d.1);
    (at(lo), at(hi))
}

/// Deterministic SVG 1.1 document. Chords are drawn only for endpoints that
/// are crossings; a vertex needs no construction.
pub fn emit_svg(catalog: &Catalog, hit: Option<&HitRecord>) -> String {
    let vertices: Vec<(f64, f64)> = catalog.vertices.iter().map(|v| to_svg(v.to_f64())).collect();
    let endpoints: Vec<&Endpoint> = hit.map(|h| vec![&h.p, &h.q]).unwrap_or_default();
    let ends: Vec<(f64, f64)> = endpoints.iter().map(|e| to_svg((e.approx[0], e.approx[1]))).collect();

    let chords: BTreeSet<[u32; 2]> = endpoints
        .iter()
        .filter(|e| e.vertex.is_none())
        .flat_map(|e| e.provenance.iter().copied())
        .collect();
    let segments: Vec<([u32; 2], Xy, Xy)> = chords
        .iter()
        .map(|&c| {
            let on: Vec<(f64, f64)> = endpoints
                .iter()
                .zip(&ends)
                .filter(|(e, _)| e.provenance.contains(&c))
                .map(|(_, &p)| p)
                .collect();
            let (a, b) = chord_segment(&vertices, c, &on);
            (c, a, b)
        })
        .collect();

    let mut bounds = Bounds::new();
    vertices.iter().chain(&ends).for_each(|&p| bounds.add(p));
    for (_, a, b) in &segments {
        bounds.add(*a);
        bounds.add(*b);
    }
    let w = bounds.max.0 - bounds.min.0;
    let h = bounds.max.1 - bounds.min.1;
    let margin = 0.05 * w.max(h);
    let view = (
        bounds.min.0 - margin,
        bounds.min.1 - margin,
        w + 2.0 * margin,
        h + 2.0 * margin,
    );
    let stroke = 0.004 * w.max(h);
    let font = 0.03 * w.max(h);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        num(view.0),
        num(view.1),
        num(view.2),
        num(view.3),
        num(view.2 * 4.0),
        num(view.3 * 4.0)
    );
    let _ = writeln!(s, "  <title>{}-gon, {} unit</title>", catalog.n(), catalog.config.frame);

    let pts: Vec<String> = vertices.iter().map(|p| format!("{},{}", num(p.0), num(p.1))).collect();
    let _ = writeln!(
        s,
        r#"  <g id="polygon" fill="none" stroke="black" stroke-width="{}">"#,
        num(stroke)
    );
    let _ = writeln!(s, r#"    <polygon points="{}"/>"#, pts.join(" "));
    let _ = writeln!(s, "  </g>");
    let _ = writeln!(
        s,
        r#"  <g id="vertex-labels" font-family="sans-serif" font-size="{}" fill="gray">"#,
        num(font)
    );
    for (k, p) in vertices.iter().enumerate() {
        let _ = writeln!(s, r#"    <text x="{}" y="{}">A{k}</text>"#, num(p.0), num(p.1));
    }
    let _ = writeln!(s, "  </g>");

    if !segments.is_empty() {
        let _ = writeln!(
            s,
            r#"  <g id="chords" stroke="steelblue" stroke-width="{}">"#,
            num(stroke * 0.75)
        );
        for ([i, j], a, b) in &segments {
            let _ = writeln!(
                s,
                r#"    <line class="chord" data-chord="{i}-{j}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(a.0),
                num(a.1),
                num(b.0),
                num(b.1)
            );
        }
        let _ = writeln!(s, "  </g>");
    }

    if let (Some(h), [p, q]) = (hit, ends.as_slice()) {
        let _ = writeln!(
            s,
            r#"  <line id="hit-segment" stroke="crimson" stroke-width="{}" x1="{}" y1="{}" x2="{}" y2="{}">"#,
            num(stroke * 2.0),
            num(p.0),
            num(p.1),
            num(q.0),
            num(q.1)
        );
        let _ = writeln!(s, "    <title>{} = {}</title>", h.surd, h.decimal);
        let _ = writeln!(s, "  </line>");
        let _ = writeln!(
            s,
            r#"  <g id="endpoints" fill="crimson" font-family="sans-serif" font-size="{}">"#,
            num(font)
        );
        for (e, c) in endpoints.iter().zip(&ends) {
            let _ = writeln!(
                s,
                r#"    <circle cx="{}" cy="{}" r="{}"/>"#,
                num(c.0),
                num(c.1),
                num(stroke * 2.5)
            );
            let _ = writeln!(
                s,
                r#"    <text x="{}" y="{}">{}</text>"#,
                num(c.0 + stroke * 3.0),
                num(c.1 - stroke * 3.0),
                e.label()
            );
        }
        let _ = writeln!(s, "  </g>");
    }
    let _ = writeln!(s, "</svg>");
    s
}
