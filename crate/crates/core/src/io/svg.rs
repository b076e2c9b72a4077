//! SVG output of a drawing.
//!
//! Output uses `line`, `circle` and `text` elements only and depends on
//! nothing but the inputs, so equal drawings give byte-identical files.
//! The y axis is flipped so angles read counterclockwise on screen.

use std::fmt::Write;

use crate::layout::Drawing;
use crate::model::RootedTree;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SvgOptions {
    /// Dashed circles around every internal node's subtree.
    pub guides: bool,
    /// Node ids (or labels when present) next to the dots.
    pub labels: bool,
    /// Width of the image in pixels; the height follows the aspect.
    pub width: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            guides: false,
            labels: false,
            width: 800.0,
        }
    }
}

/// Up to six decimals, trailing zeros dropped, never `-0`.
fn num(x: f64) -> String {
    let mut s = format!("{x:.6}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Renders nodes as dots and edges as straight segments. The view box
/// contains every node's outer circle plus a small margin.
pub fn emit_svg(tree: &RootedTree, drawing: &Drawing, options: &SvgOptions) -> String {
    let nodes = &drawing.nodes;
    let (mut x0, mut y0, mut x1, mut y1) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for n in nodes {
        let (x, y, r) = (n.position.x, -n.position.y, n.outer_radius.max(0.0));
        x0 = x0.min(x - r);
        y0 = y0.min(y - r);
        x1 = x1.max(x + r);
        y1 = y1.max(y + r);
    }
    if !(x0.is_finite() && y0.is_finite() && x1.is_finite() && y1.is_finite()) {
        (x0, y0, x1, y1) = (-1.0, -1.0, 1.0, 1.0);
    }
    let extent = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let margin = 0.02 * extent;
    let (vx, vy) = (x0 - margin, y0 - margin);
    let (vw, vh) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let stroke = extent * 0.0015;
    let dot_cap = extent * 0.006;
    let height = options.width * vh / vw;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(options.width),
        num(height),
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    if options.guides {
        let _ = writeln!(
            out,
            "<g fill=\"none\" stroke=\"#9db4c0\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\">",
            num(stroke * 0.6),
            num(stroke * 4.0),
            num(stroke * 3.0)
        );
        for (v, n) in nodes.iter().enumerate() {
            if tree.is_leaf(v) {
                continue;
            }
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                num(n.position.x),
                num(-n.position.y),
                num(n.outer_radius)
            );
        }
        out.push_str("</g>\n");
    }
    let _ = writeln!(
        out,
        "<g stroke=\"#333333\" stroke-width=\"{}\">",
        num(stroke)
    );
    for v in tree.preorder() {
        if let Some(p) = tree.parent(v) {
            let (a, b) = (nodes[p].position, nodes[v].position);
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                num(a.x),
                num(-a.y),
                num(b.x),
                num(-b.y)
            );
        }
    }
    out.push_str("</g>\n<g fill=\"#c0392b\">\n");
    let dot = |v: usize| {
        let n = &nodes[v];
        let local = if n.edge_length > 0.0 {
            n.edge_length
        } else {
            n.inner_radius
        };
        if local > 0.0 {
            (local * 0.2).min(dot_cap)
        } else {
            dot_cap
        }
    };
    for v in tree.preorder() {
        let n = &nodes[v];
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            num(n.position.x),
            num(-n.position.y),
            num(dot(v))
        );
    }
    out.push_str("</g>\n");
    if options.labels {
        let _ = writeln!(
            out,
            "<g font-family=\"sans-serif\" font-size=\"{}\" fill=\"#222222\">",
            num(dot_cap * 2.5)
        );
        for v in tree.preorder() {
            let n = &nodes[v];
            let node = tree.node(v);
            let text = node.label.as_deref().unwrap_or(&node.id);
            let d = dot(v);
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\">{}</text>",
                num(n.position.x + d * 1.5),
                num(-n.position.y - d * 1.5),
                escape(text)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
