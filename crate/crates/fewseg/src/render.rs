//! SVG output: blue vertex discs, black edges on a white halo.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::stimulus::StimulusDocument;

#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub node_color: String,
    pub edge_color: String,
    pub halo_color: String,
    pub selected_color: String,
    pub selectable_color: String,
    /// Edge stroke width; `None` scales with the drawing.
    pub edge_width: Option<f64>,
    /// Vertex radius; `None` scales with the drawing.
    pub node_radius: Option<f64>,
    /// Vertex ids drawn in the "selected" color.
    pub selected: BTreeSet<usize>,
    /// Vertex ids drawn in the "selectable" color.
    pub selectable: BTreeSet<usize>,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            node_color: "#1f6fb5".into(),
            edge_color: "#000000".into(),
            halo_color: "#ffffff".into(),
            selected_color: "#2ca02c".into(),
            selectable_color: "#9ecae1".into(),
            edge_width: None,
            node_radius: None,
            selected: BTreeSet::new(),
            selectable: BTreeSet::new(),
        }
    }
}

fn num(x: f64) -> String {
    let r = (x * 1e4).round() / 1e4;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

/// Renders with y flipped, so layouts with y pointing up appear upright.
pub fn render_svg(doc: &StimulusDocument, style: &Style) -> String {
    let pts: Vec<(f64, f64)> = doc.vertices.iter().map(|v| (v.x, -v.y)).collect();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if let Some(&(x, y)) = pts.first() {
        (lo_x, lo_y, hi_x, hi_y) = (x, y, x, y);
    }
    for &(x, y) in &pts {
        lo_x = lo_x.min(x);
        lo_y = lo_y.min(y);
        hi_x = hi_x.max(x);
        hi_y = hi_y.max(y);
    }
    let extent = (hi_x - lo_x).max(hi_y - lo_y);
    let extent = if extent > 0.0 { extent } else { 1.0 };
    let margin = 0.05 * extent;
    let edge_width = style.edge_width.unwrap_or(extent / 200.0);
    let radius = style.node_radius.unwrap_or(extent / 80.0);

    let index: std::collections::HashMap<usize, usize> =
        doc.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(lo_x - margin),
        num(lo_y - margin),
        num(hi_x - lo_x + 2.0 * margin),
        num(hi_y - lo_y + 2.0 * margin)
    );
    let _ = writeln!(out, r#"  <g stroke-linecap="round">"#);
    for e in &doc.edges {
        let (Some(&a), Some(&b)) = (index.get(&e.source), index.get(&e.target)) else {
            continue;
        };
        let ((x1, y1), (x2, y2)) = (pts[a], pts[b]);
        for (color, width) in [
            (&style.halo_color, 3.0 * edge_width),
            (&style.edge_color, edge_width),
        ] {
            let _ = writeln!(
                out,
                r#"    <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"/>"#,
                num(x1),
                num(y1),
                num(x2),
                num(y2),
                color,
                num(width)
            );
        }
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, "  <g>");
    for (v, &(x, y)) in doc.vertices.iter().zip(&pts) {
        let fill = if style.selected.contains(&v.id) {
            &style.selected_color
        } else if style.selectable.contains(&v.id) {
            &style.selectable_color
        } else {
            &style.node_color
        };
        let _ = writeln!(
            out,
            r#"    <circle cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            num(x),
            num(y),
            num(radius),
            fill
        );
    }
    let _ = writeln!(out, "  </g>");
    out.push_str("</svg>\n");
    out
}
