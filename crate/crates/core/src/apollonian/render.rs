use std::fmt::Write;

use super::{CirclePacking, Shape};
use crate::error::{Error, Result};

const CANVAS: f64 = 800.0;

/// SVG drawing of a packing. The view box is derived from the circles only,
/// so equal packings give byte-identical output.
pub fn render_svg(p: &CirclePacking) -> Result<String> {
    let circles: Vec<(f64, f64, f64)> = p
        .disks
        .iter()
        .filter_map(|d| match &d.shape {
            Shape::Circle { center, radius } => {
                Some((center[0].to_f64(), center[1].to_f64(), radius.to_f64()))
            }
            _ => None,
        })
        .collect();
    if circles.is_empty() {
        return Err(Error::Unsupported("packing has no positioned circles to draw".into()));
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y, r) in &circles {
        x0 = x0.min(x - r);
        y0 = y0.min(y - r);
        x1 = x1.max(x + r);
        y1 = y1.max(y + r);
    }
    let pad = 0.02 * (x1 - x0).max(y1 - y0);
    let (x0, y0, x1, y1) = (x0 - pad, y0 - pad, x1 + pad, y1 + pad);
    let scale = CANVAS / (x1 - x0).max(y1 - y0);
    // flip y so that the picture has the usual orientation
    let tx = |x: f64| (x - x0) * scale;
    let ty = |y: f64| (y1 - y) * scale;

    let w = (x1 - x0) * scale;
    let h = (y1 - y0) * scale;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.3} {h:.3}" width="{w:.0}" height="{h:.0}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for d in &p.disks {
        match &d.shape {
            Shape::Circle { center, radius } => {
                writeln!(
                    s,
                    r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="black" stroke-width="0.8"><title>{}</title></circle>"#,
                    tx(center[0].to_f64()),
                    ty(center[1].to_f64()),
                    radius.to_f64() * scale,
                    d.curvature
                )
                .unwrap();
            }
            Shape::Line { normal, offset } => {
                // a line normal . x = offset clipped to the box
                let (nx, ny, c) = (normal[0].to_f64(), normal[1].to_f64(), offset.to_f64());
                let (a, b) = if ny.abs() >= nx.abs() {
                    ((x0, (c - nx * x0) / ny), (x1, (c - nx * x1) / ny))
                } else {
                    (((c - ny * y0) / nx, y0), ((c - ny * y1) / nx, y1))
                };
                writeln!(
                    s,
                    r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="0.8"/>"#,
                    tx(a.0),
                    ty(a.1),
                    tx(b.0),
                    ty(b.1)
                )
                .unwrap();
            }
            Shape::Abstract => {}
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
