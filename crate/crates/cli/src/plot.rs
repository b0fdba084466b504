//! Static SVG figures. Exact coordinates are converted to floats here and
//! never read back.

use std::fmt::Write;

use balanced_lines::{Color, DirectedLine, Instance, PointId, Rational};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;
const RED: &str = "#d62728";
const BLUE: &str = "#1f77b4";

fn f(v: &Rational) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

pub struct Canvas {
    x0: f64,
    y0: f64,
    scale: f64,
    body: String,
}

impl Canvas {
    pub fn new(inst: &Instance) -> Canvas {
        let xs: Vec<f64> = inst.points().iter().map(|p| f(&p.x)).collect();
        let ys: Vec<f64> = inst.points().iter().map(|p| f(&p.y)).collect();
        let (x0, x1) = xs.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
        let (y0, y1) = ys.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        Canvas { x0, y0, scale: (SIZE - 2.0 * MARGIN) / span, body: String::new() }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (x - self.x0) * self.scale, SIZE - MARGIN - (y - self.y0) * self.scale)
    }

    fn world(&self, id: PointId, inst: &Instance) -> (f64, f64) {
        let p = inst.point(id);
        (f(&p.x), f(&p.y))
    }

    pub fn points(&mut self, inst: &Instance) {
        for p in inst.points() {
            let (x, y) = self.px(f(&p.x), f(&p.y));
            let (class, fill) = match p.color {
                Color::Red => ("red", RED),
                Color::Blue => ("blue", BLUE),
            };
            writeln!(
                self.body,
                r#"<circle class="point {class}" data-id="{}" cx="{x:.3}" cy="{y:.3}" r="5" fill="{fill}"/>"#,
                p.id
            )
            .unwrap();
        }
    }

    pub fn ring(&mut self, inst: &Instance, id: PointId, class: &str, stroke: &str) {
        let (wx, wy) = self.world(id, inst);
        let (x, y) = self.px(wx, wy);
        writeln!(
            self.body,
            r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="9" fill="none" stroke="{stroke}" stroke-width="2"/>"#
        )
        .unwrap();
    }

    pub fn segment(&mut self, inst: &Instance, a: PointId, b: PointId, class: &str) {
        let (ax, ay) = self.world(a, inst);
        let (bx, by) = self.world(b, inst);
        let ((x1, y1), (x2, y2)) = (self.px(ax, ay), self.px(bx, by));
        writeln!(
            self.body,
            r##"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#555" stroke-width="1"/>"##
        )
        .unwrap();
    }

    /// The directed line clipped to the drawing area, with an arrow head at its far end.
    pub fn line(&mut self, inst: &Instance, line: &DirectedLine, class: &str, dash: bool) {
        let (px, py) = self.world(line.anchor(), inst);
        let d = line.direction(inst);
        let (dx, dy) = (d.dx as f64, d.dy as f64);
        let norm = dx.hypot(dy);
        let (dx, dy) = (dx / norm, dy / norm);
        let pad = MARGIN / self.scale;
        let span = (SIZE - MARGIN) / self.scale;
        let (lo_x, hi_x, lo_y, hi_y) = (self.x0 - pad, self.x0 + span, self.y0 - pad, self.y0 + span);
        let (mut t0, mut t1) = (f64::MIN, f64::MAX);
        for (p, v, lo, hi) in [(px, dx, lo_x, hi_x), (py, dy, lo_y, hi_y)] {
            if v.abs() < 1e-12 {
                continue;
            }
            let (a, b) = ((lo - p) / v, (hi - p) / v);
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
        let (x1, y1) = self.px(px + t0 * dx, py + t0 * dy);
        let (x2, y2) = self.px(px + t1 * dx, py + t1 * dy);
        let style = if dash { r#" stroke-dasharray="6 4""# } else { "" };
        writeln!(
            self.body,
            r##"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#000" stroke-width="1.5"{style} marker-end="url(#arrow)"/>"##
        )
        .unwrap();
    }

    pub fn finish(self, title: &str) -> String {
        format!(
            r##"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">
<title>{title}</title>
<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="8" markerHeight="8" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>
<rect width="100%" height="100%" fill="#fff"/>
{}</svg>
"##,
            self.body,
            s = SIZE
        )
    }
}
