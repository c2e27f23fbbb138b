//! Static SVG rendering of instances. The primal view shows the point set,
//! the edges of G, and a dashed witness line for one k-set; the dual view
//! shows the arrangement clipped to the vertex bounding box (inflated 20%),
//! the k-level stroked heavy, the concave chains in distinct hues, and the
//! `V_{k-1}` vertices as open circles.
//!
//! This is the one place floats exist, strictly downstream of every exact
//! decision; coordinates are formatted at 6 decimals, so output bytes are
//! deterministic for a fixed input.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::arrangement::{build_arrangement, extract_k_level, Arrangement};
use crate::chains::decompose_chains;
use crate::geom::{Point, Rat};
use crate::graph::build_dey_graph;
use crate::instance::Instance;
use crate::ksets::{enumerate_directed_ksets, separating_line, Side};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Primal,
    Dual,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_X: f64 = 40.0; // 5% of the canvas on each side
const MARGIN_Y: f64 = 30.0;

/// World-to-canvas mapping over an inflated bounding box, y flipped.
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn around(points: impl Iterator<Item = (f64, f64)>) -> Frame {
        let mut x0 = f64::INFINITY;
        let mut x1 = f64::NEG_INFINITY;
        let mut y0 = f64::INFINITY;
        let mut y1 = f64::NEG_INFINITY;
        for (x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        // inflate 20% around the center; pad degenerate extents
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let hx = ((x1 - x0) / 2.0) * 1.2;
        let hy = ((y1 - y0) / 2.0) * 1.2;
        let hx = if hx > 0.0 { hx } else { 1.0 };
        let hy = if hy > 0.0 { hy } else { 1.0 };
        Frame {
            x0: cx - hx,
            x1: cx + hx,
            y0: cy - hy,
            y1: cy + hy,
        }
    }

    fn sx(&self, x: f64) -> f64 {
        MARGIN_X + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN_X)
    }

    fn sy(&self, y: f64) -> f64 {
        HEIGHT - (MARGIN_Y + (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN_Y))
    }
}

fn f(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn xy(p: &Point) -> (f64, f64) {
    (f(&p.x), f(&p.y))
}

fn svg_open(out: &mut String) {
    out.push_str(concat!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
        "width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n",
        "<defs><clipPath id=\"vp\"><rect x=\"40\" y=\"30\" width=\"720\" height=\"540\"/>",
        "</clipPath></defs>\n",
        "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n",
        "<g clip-path=\"url(#vp)\">\n",
    ));
}

fn svg_close(out: &mut String) {
    out.push_str("</g>\n</svg>\n");
}

fn line_elem(out: &mut String, class: &str, x1: f64, y1: f64, x2: f64, y2: f64, style: &str) {
    writeln!(
        out,
        "<line class=\"{class}\" x1=\"{x1:.6}\" y1=\"{y1:.6}\" x2=\"{x2:.6}\" y2=\"{y2:.6}\" {style}/>"
    )
    .unwrap();
}

fn polyline_elem(out: &mut String, class: &str, pts: &[(f64, f64)], style: &str) {
    let mut coords = String::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        if i > 0 {
            coords.push(' ');
        }
        write!(coords, "{x:.6},{y:.6}").unwrap();
    }
    writeln!(
        out,
        "<polyline class=\"{class}\" points=\"{coords}\" fill=\"none\" {style}/>"
    )
    .unwrap();
}

/// Renders the requested view for a validated instance and `1 <= k <= n-1`.
pub fn render_svg(inst: &Instance, k: usize, view: View) -> Result<String, Error> {
    let arr = build_arrangement(inst);
    match view {
        View::Dual => render_dual(&arr, k),
        View::Primal => render_primal(inst, &arr, k),
    }
}

fn render_dual(arr: &Arrangement, k: usize) -> Result<String, Error> {
    let cs = decompose_chains(arr, k)?;
    let level = extract_k_level(arr, k)?;
    let frame = Frame::around(arr.vertices.iter().map(|v| xy(&v.location)));

    let mut out = String::new();
    svg_open(&mut out);

    for line in &arr.lines {
        let (a, b) = (f(&line.a), f(&line.b));
        let (x1, x2) = (frame.x0, frame.x1);
        line_elem(
            &mut out,
            "dual-line",
            frame.sx(x1),
            frame.sy(a * x1 - b),
            frame.sx(x2),
            frame.sy(a * x2 - b),
            "stroke=\"#999999\" stroke-width=\"1\"",
        );
    }

    for chain in &cs.chains {
        let hue = 360 * chain.id / cs.k;
        let first = &arr.lines[chain.pieces[0].line];
        let last = &arr.lines[chain.pieces.last().unwrap().line];
        let mut pts = vec![(
            frame.sx(frame.x0),
            frame.sy(f(&first.a) * frame.x0 - f(&first.b)),
        )];
        pts.extend(chain.turns.iter().map(|&vi| {
            let (x, y) = xy(&arr.vertices[vi].location);
            (frame.sx(x), frame.sy(y))
        }));
        pts.push((
            frame.sx(frame.x1),
            frame.sy(f(&last.a) * frame.x1 - f(&last.b)),
        ));
        polyline_elem(
            &mut out,
            "chain",
            &pts,
            &format!("stroke=\"hsl({hue},70%,45%)\" stroke-width=\"2\""),
        );
    }

    let first = &arr.lines[level.edge_lines[0]];
    let last = &arr.lines[*level.edge_lines.last().unwrap()];
    let mut pts = vec![(
        frame.sx(frame.x0),
        frame.sy(f(&first.a) * frame.x0 - f(&first.b)),
    )];
    pts.extend(level.vertex_seq.iter().map(|&vi| {
        let (x, y) = xy(&arr.vertices[vi].location);
        (frame.sx(x), frame.sy(y))
    }));
    pts.push((
        frame.sx(frame.x1),
        frame.sy(f(&last.a) * frame.x1 - f(&last.b)),
    ));
    polyline_elem(
        &mut out,
        "level",
        &pts,
        "stroke=\"black\" stroke-width=\"4\"",
    );

    for vi in arr.class(k - 1) {
        let (x, y) = xy(&arr.vertices[vi].location);
        writeln!(
            out,
            "<circle class=\"vkm1\" cx=\"{:.6}\" cy=\"{:.6}\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>",
            frame.sx(x),
            frame.sy(y)
        )
        .unwrap();
    }

    svg_close(&mut out);
    Ok(out)
}

fn render_primal(inst: &Instance, arr: &Arrangement, k: usize) -> Result<String, Error> {
    let g = build_dey_graph(inst, arr, k)?;
    let family = enumerate_directed_ksets(inst, k, Side::Above)?;
    let witness_set = family
        .sets
        .iter()
        .next()
        .expect("a valid k always has a k-set");
    let witness =
        separating_line(inst, witness_set, Side::Above).expect("enumerated k-sets are realizable");
    let frame = Frame::around(inst.points().iter().map(xy));

    let mut out = String::new();
    svg_open(&mut out);

    let (a, b) = (f(&witness.a), f(&witness.b));
    line_elem(
        &mut out,
        "witness",
        frame.sx(frame.x0),
        frame.sy(a * frame.x0 - b),
        frame.sx(frame.x1),
        frame.sy(a * frame.x1 - b),
        "stroke=\"#777777\" stroke-width=\"1.5\" stroke-dasharray=\"8 5\"",
    );

    for edge in &g.edges {
        let (x1, y1) = xy(edge.seg.left());
        let (x2, y2) = xy(edge.seg.right());
        line_elem(
            &mut out,
            "gedge",
            frame.sx(x1),
            frame.sy(y1),
            frame.sx(x2),
            frame.sy(y2),
            "stroke=\"black\" stroke-width=\"2\"",
        );
    }

    for p in inst.points() {
        let (x, y) = xy(p);
        writeln!(
            out,
            "<circle class=\"pt\" cx=\"{:.6}\" cy=\"{:.6}\" r=\"4\" fill=\"black\"/>",
            frame.sx(x),
            frame.sy(y)
        )
        .unwrap();
    }

    svg_close(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn q4() -> Instance {
        Instance::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(4, 0),
            Point::from_ints(2, 3),
            Point::from_ints(1, 1),
        ])
        .unwrap()
    }

    fn count(hay: &str, needle: &str) -> usize {
        hay.matches(needle).count()
    }

    #[test]
    fn q4_dual_counts() {
        let svg = render_svg(&q4(), 2, View::Dual).unwrap();
        assert_eq!(count(&svg, "class=\"dual-line\""), 4);
        assert_eq!(count(&svg, "class=\"level\""), 1);
        assert_eq!(count(&svg, "class=\"chain\""), 2);
        assert_eq!(count(&svg, "class=\"vkm1\""), 3);
    }

    #[test]
    fn q4_primal_counts() {
        let svg = render_svg(&q4(), 2, View::Primal).unwrap();
        assert_eq!(count(&svg, "class=\"pt\""), 4);
        assert_eq!(count(&svg, "class=\"gedge\""), 3);
        assert_eq!(count(&svg, "class=\"witness\""), 1);
    }

    #[test]
    fn q4_primal_k3_single_edge() {
        let svg = render_svg(&q4(), 3, View::Primal).unwrap();
        assert_eq!(count(&svg, "class=\"gedge\""), 1);
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = render_svg(&q4(), 2, View::Dual).unwrap();
        let b = render_svg(&q4(), 2, View::Dual).unwrap();
        assert_eq!(a, b);
    }
}
