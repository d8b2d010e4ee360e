//! Minimal SVG line plots and heatmaps.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

pub struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn open(out: &mut String, title: &str) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    )
    .unwrap();
}

fn axes(out: &mut String, frame: &Frame, xlabel: &str, ylabel: &str) {
    let (x0, x1) = (MARGIN, WIDTH - MARGIN);
    let (y0, y1) = (HEIGHT - MARGIN, MARGIN);
    writeln!(
        out,
        r#"<path d="M{x0} {y1} L{x0} {y0} L{x1} {y0}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    for (value, anchor_x) in [(frame.x.0, x0), (frame.x.1, x1)] {
        writeln!(
            out,
            r#"<text x="{anchor_x:.1}" y="{:.1}" text-anchor="middle" font-size="11">{}</text>"#,
            y0 + 16.0,
            crate::format::format_g(value, 4)
        )
        .unwrap();
    }
    for (value, anchor_y) in [(frame.y.0, y0), (frame.y.1, y1)] {
        writeln!(
            out,
            r#"<text x="{:.1}" y="{anchor_y:.1}" text-anchor="end" font-size="11">{}</text>"#,
            x0 - 6.0,
            crate::format::format_g(value, 4)
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="13">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0,
        escape(xlabel)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="18" y="{:.1}" text-anchor="middle" font-size="13" transform="rotate(-90 18 {:.1})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(ylabel)
    )
    .unwrap();
}

pub fn line_plot(title: &str, xlabel: &str, ylabel: &str, series: &[Series]) -> String {
    let all = || series.iter().flat_map(|s| s.points.iter());
    let frame = Frame {
        x: extent(all().map(|p| p.0)),
        y: extent(all().map(|p| p.1)),
    };
    let mut out = String::new();
    open(&mut out, title);
    axes(&mut out, &frame, xlabel, ylabel);
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let points: Vec<String> = s
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", frame.px(x), frame.py(y)))
            .collect();
        writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            points.join(" ")
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" fill="{color}">{}</text>"#,
            WIDTH - MARGIN - 120.0,
            MARGIN + 14.0 * (i as f64 + 1.0),
            escape(s.name)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// `values[i][j]` is drawn at `(xs[i], ys[j])`; colour runs blue (low) to
/// yellow (high).
pub fn heatmap(title: &str, xlabel: &str, ylabel: &str, xs: &[f64], ys: &[f64], values: &[Vec<f64>]) -> String {
    let frame = Frame {
        x: extent(xs.iter().copied()),
        y: extent(ys.iter().copied()),
    };
    let (lo, hi) = extent(values.iter().flatten().copied());
    let cell_w = (WIDTH - 2.0 * MARGIN) / xs.len().max(1) as f64;
    let cell_h = (HEIGHT - 2.0 * MARGIN) / ys.len().max(1) as f64;
    let mut out = String::new();
    open(&mut out, title);
    for (i, column) in values.iter().enumerate() {
        for (j, &v) in column.iter().enumerate() {
            let t = if v.is_finite() { (v - lo) / (hi - lo) } else { 0.0 };
            writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                MARGIN + cell_w * i as f64,
                HEIGHT - MARGIN - cell_h * (j + 1) as f64,
                cell_w,
                cell_h,
                color(t)
            )
            .unwrap();
        }
    }
    axes(&mut out, &frame, xlabel, ylabel);
    writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="end" font-size="11">range {} .. {}</text>"#,
        WIDTH - MARGIN,
        MARGIN - 8.0,
        crate::format::format_g(lo, 4),
        crate::format::format_g(hi, 4)
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", lerp(68.0, 253.0), lerp(1.0, 231.0), lerp(84.0, 37.0))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
