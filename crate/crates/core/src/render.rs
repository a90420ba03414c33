//! Deterministic SVG drawings of networks.

use std::fmt::Write;

use thiserror::Error;

use crate::network::Network;

pub const MIN_CANVAS: u32 = 64;

/// Exterior rays end at this multiple of the circle radius.
pub const RAY_EXTENT: f64 = 1.3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("canvas must be at least {MIN_CANVAS} px, got {0}")]
    Canvas(u32),
    #[error("stroke width per multiplicity must be positive and finite, got {0}")]
    Stroke(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    canvas: u32,
    stroke_per_mult: f64,
    labels: bool,
}

impl RenderStyle {
    pub fn new(canvas: u32, stroke_per_mult: f64, labels: bool) -> Result<Self, RenderError> {
        if canvas < MIN_CANVAS {
            return Err(RenderError::Canvas(canvas));
        }
        if !(stroke_per_mult.is_finite() && stroke_per_mult > 0.0) {
            return Err(RenderError::Stroke(stroke_per_mult));
        }
        Ok(Self {
            canvas,
            stroke_per_mult,
            labels,
        })
    }

    pub fn canvas(&self) -> u32 {
        self.canvas
    }

    /// Stroke width in pixels of a segment with multiplicity `m`.
    pub fn stroke_width(&self, m: u64) -> f64 {
        self.stroke_per_mult * m as f64
    }

    pub fn labels(&self) -> bool {
        self.labels
    }
}

impl Default for RenderStyle {
    fn default() -> Self {
        Self {
            canvas: 400,
            stroke_per_mult: 1.5,
            labels: true,
        }
    }
}

/// Fixed-precision coordinates so the output does not depend on float
/// formatting details.
fn px(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Unit circle, one `<line class="chord">` per interior edge and one
/// `<line class="ray">` per vertex, rays drawn out to [`RAY_EXTENT`].
pub fn render_svg(net: &Network, style: &RenderStyle) -> String {
    let size = style.canvas as f64;
    let center = size / 2.0;
    let radius = size / (2.0 * RAY_EXTENT + 0.2);
    let to_px =
        |[x, y]: [f64; 2], scale: f64| (center + radius * scale * x, center - radius * scale * y);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        style.canvas
    );
    let _ = writeln!(
        out,
        r##"  <circle class="unit-circle" cx="{c}" cy="{c}" r="{r}" fill="none" stroke="#999999" stroke-width="1"/>"##,
        c = px(center),
        r = px(radius)
    );
    for e in net.edges() {
        let (x1, y1) = to_px(net.vertices()[e.i].position.coords(), 1.0);
        let (x2, y2) = to_px(net.vertices()[e.j].position.coords(), 1.0);
        let _ = writeln!(
            out,
            r#"  <line class="chord" data-m="{m}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="{}"/>"#,
            px(x1),
            px(y1),
            px(x2),
            px(y2),
            px(style.stroke_width(e.mult)),
            m = e.mult
        );
    }
    for (k, v) in net.vertices().iter().enumerate() {
        let p = v.position.coords();
        let (x1, y1) = to_px(p, 1.0);
        let (x2, y2) = to_px(p, RAY_EXTENT);
        let _ = writeln!(
            out,
            r##"  <line class="ray" data-vertex="{k}" data-m="{m}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#1f4e9c" stroke-width="{}"/>"##,
            px(x1),
            px(y1),
            px(x2),
            px(y2),
            px(style.stroke_width(v.exterior_mult)),
            m = v.exterior_mult
        );
    }
    for (k, v) in net.vertices().iter().enumerate() {
        let (x, y) = to_px(v.position.coords(), 1.0);
        let _ = writeln!(
            out,
            r#"  <circle class="vertex" cx="{}" cy="{}" r="3" fill="black"/>"#,
            px(x),
            px(y)
        );
        if style.labels {
            let (lx, ly) = to_px(v.position.coords(), 1.12);
            let _ = writeln!(
                out,
                r#"  <text class="label" x="{}" y="{}" font-size="12" text-anchor="middle" dominant-baseline="middle">{k}</text>"#,
                px(lx),
                px(ly)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
