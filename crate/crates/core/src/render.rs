//! SVG figures of numbered pattern pairs: the domain subdivision on the left,
//! the range subdivision on the right, each rectangle labelled by its pair index.
//!
//! The first coordinate runs horizontally and the second vertically, with the
//! 0-halves on the left and at the bottom.

use std::fmt::Write as _;

use crate::cantor::{Rect, Word};
use crate::turing::{eta_region, zeta_region};
use crate::twov::PatternPair;

const PANEL: f64 = 400.0;
const MARGIN: f64 = 20.0;
const GAP: f64 = 80.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Shade rectangles inside `R(0,0)` and `R(1,0)`.
    pub halting: bool,
}

/// Left end and width of the dyadic interval `I(w)`.
fn interval(w: &Word) -> (f64, f64) {
    let mut start = 0.0;
    let mut width = 1.0;
    for &b in w.bits() {
        width /= 2.0;
        if b == 1 {
            start += width;
        }
    }
    (start, width)
}

fn fmt_num(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// The depth of the coarsest vertical cut shared by every rectangle.
fn band_depth(rects: &[&Rect]) -> usize {
    rects.iter().map(|r| r.first.len()).min().unwrap_or(0)
}

fn panel(out: &mut String, title: &str, x0: f64, rects: &[&Rect], opts: RenderOptions) {
    let y0 = MARGIN + 20.0;
    let _ = writeln!(out, "  <g class=\"panel\" id=\"{title}\">");
    let _ = writeln!(
        out,
        "    <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">{title}</text>",
        fmt_num(x0 + PANEL / 2.0),
        fmt_num(MARGIN + 10.0)
    );
    let depth = band_depth(rects);
    for band in 0..1usize << depth {
        let prefix = Word::from_bits((0..depth).rev().map(|i| ((band >> i) & 1) as u8));
        let _ = writeln!(out, "    <g class=\"band\" data-prefix=\"{prefix}\">");
        for (i, r) in rects.iter().enumerate() {
            if !prefix.is_prefix_of(&r.first) {
                continue;
            }
            let (fx, fw) = interval(&r.first);
            let (sy, sh) = interval(&r.second);
            let (x, w) = (x0 + fx * PANEL, fw * PANEL);
            let (y, h) = (y0 + (1.0 - sy - sh) * PANEL, sh * PANEL);
            let gray = opts.halting && (zeta_region().contains(r) || eta_region().contains(r));
            let fill = if gray { "#c8c8c8" } else { "#ffffff" };
            let _ = writeln!(
                out,
                "      <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\" stroke=\"#000000\" stroke-width=\"1\"><title>{r}</title></rect>",
                fmt_num(x),
                fmt_num(y),
                fmt_num(w),
                fmt_num(h)
            );
            let size = (w.min(h) * 0.45).clamp(3.0, 14.0);
            let _ = writeln!(
                out,
                "      <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\" font-size=\"{}\">{i}</text>",
                fmt_num(x + w / 2.0),
                fmt_num(y + h / 2.0),
                fmt_num(size)
            );
        }
        let _ = writeln!(out, "    </g>");
    }
    let _ = writeln!(out, "  </g>");
}

pub fn render_svg(f: &PatternPair, opts: RenderOptions) -> String {
    let width = 2.0 * PANEL + 2.0 * MARGIN + GAP;
    let height = PANEL + 2.0 * MARGIN + 20.0;
    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\">",
        fmt_num(width),
        fmt_num(height)
    );
    let domains: Vec<&Rect> = f.pairs().iter().map(|p| &p.domain).collect();
    let ranges: Vec<&Rect> = f.pairs().iter().map(|p| &p.range).collect();
    panel(&mut out, "domain", MARGIN, &domains, opts);
    let ax = MARGIN + PANEL + GAP * 0.2;
    let bx = MARGIN + PANEL + GAP * 0.8;
    let ay = MARGIN + 20.0 + PANEL / 2.0;
    let _ = writeln!(
        out,
        "  <path d=\"M {} {ay} L {bx} {ay} M {} {} L {bx} {ay} L {} {}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>",
        fmt_num(ax),
        fmt_num(bx - 8.0),
        fmt_num(ay - 5.0),
        fmt_num(bx - 8.0),
        fmt_num(ay + 5.0),
    );
    panel(&mut out, "range", MARGIN + PANEL + GAP, &ranges, opts);
    out.push_str("</svg>\n");
    out
}
