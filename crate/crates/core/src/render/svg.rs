use std::fmt::Write;

use super::{metric_circle_locus, Element, Scene, Shape, Style};
use crate::apollonius::{sample_curve, QuadraticCurve};
use crate::equioptic::Circle;
use crate::geometry::{CurvatureSign, HomogeneousLine, HomogeneousPoint};

/// Side length of the square canvas in pixels.
pub const CANVAS: f64 = 800.0;

const CIRCLE_SAMPLES: usize = 256;
const LINE_SAMPLES: usize = 128;
/// Hyperbolic vertices are kept at chart radius below this.
const DISK_MARGIN: f64 = 1.0 - 1e-9;
/// A step longer than this multiple of the median step starts a new piece.
const GAP_FACTOR: f64 = 4.0;

struct Stroke {
    style: Style,
    stroke: &'static str,
    width: f64,
    fill: &'static str,
    dash: Option<&'static str>,
}

const STYLES: [Stroke; 7] = [
    Stroke {
        style: Style::Absolute,
        stroke: "#000000",
        width: 1.5,
        fill: "none",
        dash: None,
    },
    Stroke {
        style: Style::Focus,
        stroke: "#b30000",
        width: 1.0,
        fill: "#b30000",
        dash: None,
    },
    Stroke {
        style: Style::Center,
        stroke: "#1f4e99",
        width: 1.0,
        fill: "#1f4e99",
        dash: None,
    },
    Stroke {
        style: Style::Circle,
        stroke: "#1f4e99",
        width: 1.5,
        fill: "none",
        dash: None,
    },
    Stroke {
        style: Style::Curve,
        stroke: "#b30000",
        width: 2.0,
        fill: "none",
        dash: None,
    },
    Stroke {
        style: Style::Pencil,
        stroke: "#999999",
        width: 1.0,
        fill: "none",
        dash: None,
    },
    Stroke {
        style: Style::Axis,
        stroke: "#555555",
        width: 1.0,
        fill: "none",
        dash: Some("6 4"),
    },
];

fn stroke(style: Style) -> &'static Stroke {
    STYLES
        .iter()
        .find(|s| s.style == style)
        .expect("every style has an entry")
}

/// Six decimals, never `-0.000000`.
fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s.trim_start_matches('-')
        .trim_start_matches(['0', '.'])
        .is_empty()
    {
        "0.000000".to_string()
    } else {
        s
    }
}

struct Viewport {
    scale: f64,
    sign: CurvatureSign,
    window: f64,
}

impl Viewport {
    fn px(&self, [x, y]: [f64; 2]) -> [f64; 2] {
        [CANVAS / 2.0 + x * self.scale, CANVAS / 2.0 - y * self.scale]
    }

    /// Whether a chart point may become a polyline vertex.
    fn admits(&self, [x, y]: [f64; 2]) -> bool {
        let r = x.hypot(y);
        r.is_finite()
            && match self.sign {
                CurvatureSign::Hyperbolic => r < DISK_MARGIN,
                CurvatureSign::Elliptic => r < 1e3 * self.window,
            }
    }
}

/// Splits a cyclic sample sequence into drawable pieces. Inadmissible
/// points and unusually long steps are breaks; with no break at all the
/// piece is closed.
fn pieces(view: &Viewport, points: &[Option<[f64; 2]>], cyclic: bool) -> Vec<Vec<[f64; 2]>> {
    let n = points.len();
    let pts: Vec<Option<[f64; 2]>> = points
        .iter()
        .map(|p| p.filter(|&q| view.admits(q)))
        .collect();
    let step = |i: usize| -> Option<f64> {
        let (a, b) = (pts[i]?, pts[(i + 1) % n]?);
        Some((a[0] - b[0]).hypot(a[1] - b[1]))
    };
    let edges = if cyclic { n } else { n.saturating_sub(1) };
    let mut steps: Vec<f64> = (0..edges).filter_map(step).collect();
    if steps.is_empty() {
        return Vec::new();
    }
    steps.sort_by(f64::total_cmp);
    let limit = GAP_FACTOR * steps[steps.len() / 2];
    let joined = |i: usize| step(i).is_some_and(|s| s <= limit);

    let breaks: Vec<usize> = (0..edges).filter(|&i| !joined(i)).collect();
    if cyclic && breaks.is_empty() {
        let mut closed: Vec<[f64; 2]> = pts.iter().flatten().copied().collect();
        closed.push(closed[0]);
        return vec![closed];
    }
    // start right after a break so no piece straddles the seam
    let start = if cyclic { (breaks[0] + 1) % n } else { 0 };
    let mut out = Vec::new();
    let mut current = Vec::new();
    for offset in 0..n {
        let i = (start + offset) % n;
        if let Some(p) = pts[i] {
            current.push(p);
        }
        let last = offset + 1 == n;
        if last || !joined(i) || (!cyclic && i + 1 == n) {
            if current.len() >= 2 {
                out.push(std::mem::take(&mut current));
            } else {
                current.clear();
            }
        }
    }
    out
}

fn polyline(out: &mut String, view: &Viewport, points: &[[f64; 2]], style: Style) {
    let s = stroke(style);
    let coords: Vec<String> = points
        .iter()
        .map(|&p| {
            let [x, y] = view.px(p);
            format!("{},{}", num(x), num(y))
        })
        .collect();
    let dash = s
        .dash
        .map(|d| format!(" stroke-dasharray=\"{d}\""))
        .unwrap_or_default();
    let _ = writeln!(
        out,
        "<polyline class=\"{}\" points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{dash}/>",
        style,
        coords.join(" "),
        s.stroke,
        num(s.width),
    );
}

fn marker(out: &mut String, view: &Viewport, at: [f64; 2], style: Style) {
    let s = stroke(style);
    let [x, y] = view.px(at);
    let _ = writeln!(
        out,
        "<circle class=\"{style}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
        num(x),
        num(y),
        num(4.0),
        s.fill,
        s.stroke,
        num(s.width),
    );
}

fn line_points(view: &Viewport, coords: [f64; 3]) -> Vec<Option<[f64; 2]>> {
    let Ok(u) = HomogeneousLine::new(coords[0], coords[1], coords[2]) else {
        return Vec::new();
    };
    match view.sign {
        CurvatureSign::Hyperbolic => {
            let curve = QuadraticCurve::from_line(&u, view.sign);
            sample_curve(&curve, LINE_SAMPLES)
                .map(|pts| pts.into_iter().map(Some).collect())
                .unwrap_or_default()
        }
        CurvatureSign::Elliptic => {
            // a segment spanning twice the window along the line
            let [a, b, c] = coords;
            let reach = 2.0 * view.window;
            let ends = if b.abs() >= a.abs() {
                [[-reach, (a * reach - c) / b], [reach, (-a * reach - c) / b]]
            } else {
                [[(b * reach - c) / a, -reach], [(-b * reach - c) / a, reach]]
            };
            ends.iter().map(|&p| Some(p)).collect()
        }
    }
}

fn draw(out: &mut String, view: &Viewport, element: &Element) {
    let style = element.style;
    match &element.shape {
        Shape::Absolute => {
            let s = stroke(style);
            let [x, y] = view.px([0.0, 0.0]);
            let _ = writeln!(
                out,
                "<circle class=\"{style}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>",
                num(x),
                num(y),
                num(view.scale),
                s.stroke,
                num(s.width),
            );
        }
        Shape::Point { at } => marker(out, view, *at, style),
        Shape::MetricCircle { center, radius } => {
            let Ok(circle) = Circle::at(center[0], center[1], *radius, view.sign) else {
                return;
            };
            let Ok(points) = metric_circle_locus(&circle, view.sign, CIRCLE_SAMPLES) else {
                return;
            };
            let chart: Vec<_> = points.iter().map(HomogeneousPoint::to_chart).collect();
            for piece in pieces(view, &chart, true) {
                polyline(out, view, &piece, style);
            }
        }
        Shape::ConicSamples { points } => {
            let chart: Vec<_> = points.iter().map(|&p| Some(p)).collect();
            for piece in pieces(view, &chart, true) {
                polyline(out, view, &piece, style);
            }
        }
        Shape::Line { coords } => {
            let points = line_points(view, *coords);
            for piece in pieces(view, &points, false) {
                polyline(out, view, &piece, style);
            }
        }
    }
}

/// Renders a scene as an 800×800 SVG 1.1 document. The chart square
/// `[−w, w]²` fills the canvas; everything is clipped to it.
pub fn render_svg(scene: &Scene) -> String {
    let view = Viewport {
        scale: CANVAS / 2.0 / scene.window(),
        sign: scene.sign(),
        window: scene.window(),
    };
    let size = num(CANVAS);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(
        out,
        "<defs><clipPath id=\"viewport\"><rect x=\"0.000000\" y=\"0.000000\" width=\"{size}\" height=\"{size}\"/></clipPath></defs>"
    );
    let _ = writeln!(
        out,
        "<rect class=\"frame\" x=\"0.000000\" y=\"0.000000\" width=\"{size}\" height=\"{size}\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1.000000\"/>"
    );
    out.push_str("<g clip-path=\"url(#viewport)\">\n");
    for element in scene.elements() {
        draw(&mut out, &view, element);
    }
    out.push_str("</g>\n</svg>\n");
    out
}
