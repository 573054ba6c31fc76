//! Hand-written SVG figures. Every number drawn comes from the table written
//! next to the figure.

use std::fmt::Write;

pub const WIDTH: f64 = 960.0;
pub const HEIGHT: f64 = 540.0;
pub const BLUE: &str = "#1f77b4";
pub const RED: &str = "#d62728";
pub const GRAY: &str = "#7f7f7f";

const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;
const RIGHT: f64 = 40.0;

/// Color for the `i`-th group in sorted order.
pub fn group_color(i: usize) -> &'static str {
    match i {
        0 => BLUE,
        1 => RED,
        _ => GRAY,
    }
}

pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn new(title: &str) -> Canvas {
        let mut body = String::new();
        let _ = write!(
            body,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"Helvetica, Arial, sans-serif\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
             <text x=\"{:.2}\" y=\"28\" font-size=\"18\" text-anchor=\"middle\">{}</text>\n",
            WIDTH / 2.0,
            escape(title)
        );
        Canvas { body }
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, color: &str, width: f64) {
        let _ = writeln!(
            self.body,
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{color}\" stroke-width=\"{width}\"/>"
        );
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, color: &str) {
        let (x, w) = if w < 0.0 { (x + w, -w) } else { (x, w) };
        let _ = writeln!(
            self.body,
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"{color}\"/>"
        );
    }

    fn circle(&mut self, x: f64, y: f64, r: f64, color: &str, opacity: f64) {
        let _ = writeln!(
            self.body,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{r}\" fill=\"{color}\" fill-opacity=\"{opacity}\"/>"
        );
    }

    fn diamond(&mut self, x: f64, y: f64, r: f64, color: &str) {
        let _ = writeln!(
            self.body,
            "<polygon points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2.5\"/>",
            x,
            y - r,
            x + r,
            y,
            x,
            y + r,
            x - r,
            y
        );
    }

    fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, color: &str, content: &str) {
        let _ = writeln!(
            self.body,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"{size}\" text-anchor=\"{anchor}\" fill=\"{color}\">{}</text>",
            escape(content)
        );
    }

    /// Text given as pre-escaped markup (for tspans).
    fn markup(&mut self, x: f64, y: f64, size: f64, color: &str, markup: &str) {
        let _ = writeln!(
            self.body,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"{size}\" fill=\"{color}\">{markup}</text>"
        );
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

/// Linear map from a data interval onto pixels.
#[derive(Debug, Clone, Copy)]
struct Scale {
    lo: f64,
    hi: f64,
    from: f64,
    to: f64,
}

impl Scale {
    fn fit(values: impl IntoIterator<Item = f64>, from: f64, to: f64, include_zero: bool) -> Scale {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values.into_iter().filter(|v| v.is_finite()) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if include_zero {
            lo = lo.min(0.0);
            hi = hi.max(0.0);
        }
        if !lo.is_finite() {
            lo = -1.0;
            hi = 1.0;
        }
        let span = hi - lo;
        let pad = if span > 0.0 {
            span * 0.05
        } else {
            lo.abs().max(1e-3) * 0.5
        };
        Scale {
            lo: lo - pad,
            hi: hi + pad,
            from,
            to,
        }
    }

    fn at(&self, v: f64) -> f64 {
        self.from + (v - self.lo) / (self.hi - self.lo) * (self.to - self.from)
    }

    fn ticks(&self) -> Vec<f64> {
        let span = self.hi - self.lo;
        let raw = span / 5.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|m| m * mag)
            .find(|s| span / s <= 7.0)
            .unwrap_or(10.0 * mag);
        let first = (self.lo / step).ceil() as i64;
        let last = (self.hi / step).floor() as i64;
        (first..=last).map(|i| i as f64 * step).collect()
    }
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn x_axis(c: &mut Canvas, x: &Scale, y: f64, label: &str) {
    c.line(x.from, y, x.to, y, "black", 1.0);
    for t in x.ticks() {
        let px = x.at(t);
        c.line(px, y, px, y + 5.0, "black", 1.0);
        c.text(px, y + 18.0, 11.0, "middle", "black", &tick_label(t));
    }
    c.text(
        (x.from + x.to) / 2.0,
        y + 40.0,
        13.0,
        "middle",
        "black",
        label,
    );
}

fn y_axis(c: &mut Canvas, y: &Scale, x: f64, label: &str) {
    c.line(x, y.from, x, y.to, "black", 1.0);
    for t in y.ticks() {
        let py = y.at(t);
        c.line(x - 5.0, py, x, py, "black", 1.0);
        c.text(x - 8.0, py + 4.0, 11.0, "end", "black", &tick_label(t));
    }
    let _ = writeln!(
        c.body,
        "<text x=\"20\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">{}</text>",
        (y.from + y.to) / 2.0,
        (y.from + y.to) / 2.0,
        escape(label)
    );
}

fn legend(c: &mut Canvas, entries: &[(&str, &str)]) {
    let mut x = WIDTH - RIGHT;
    for (name, color) in entries.iter().rev() {
        let w = 14.0 + 7.0 * name.chars().count() as f64;
        x -= w + 12.0;
        c.rect(x, 36.0, 10.0, 10.0, color);
        c.text(x + 14.0, 45.0, 11.0, "start", "black", name);
    }
}

pub struct ShiftBar<'a> {
    pub token: &'a str,
    pub target: f64,
    pub background: f64,
    pub delta: f64,
}

/// Horizontal bars, three per word: target, background and their difference.
pub fn shift_diagram(title: &str, rows: &[ShiftBar]) -> String {
    let left = 150.0;
    let mut c = Canvas::new(title);
    let x = Scale::fit(
        rows.iter().flat_map(|r| [r.target, r.background, r.delta]),
        left,
        WIDTH - RIGHT,
        true,
    );
    let band = (HEIGHT - TOP - BOTTOM) / rows.len().max(1) as f64;
    let bar = (band / 3.6).max(0.5);
    let zero = x.at(0.0);
    for (i, r) in rows.iter().enumerate() {
        let y0 = TOP + i as f64 * band + (band - 3.0 * bar) / 2.0;
        c.text(
            left - 8.0,
            y0 + 1.5 * bar + 4.0,
            12.0,
            "end",
            "black",
            r.token,
        );
        for (j, (v, color)) in [(r.target, BLUE), (r.background, RED), (r.delta, GRAY)]
            .into_iter()
            .enumerate()
        {
            c.rect(zero, y0 + j as f64 * bar, x.at(v) - zero, bar, color);
        }
    }
    c.line(zero, TOP, zero, HEIGHT - BOTTOM, "black", 0.8);
    x_axis(&mut c, &x, HEIGHT - BOTTOM, "word shift");
    legend(
        &mut c,
        &[("target", BLUE), ("background", RED), ("difference", GRAY)],
    );
    c.finish()
}

pub struct StripGroup<'a> {
    pub name: &'a str,
    pub color: &'a str,
    pub values: Vec<f64>,
    pub mean: Option<f64>,
}

/// One row of thin ticks per group with a thick tick at the group mean.
pub fn strip_plot(title: &str, x_label: &str, groups: &[StripGroup]) -> String {
    let left = 150.0;
    let mut c = Canvas::new(title);
    let x = Scale::fit(
        groups.iter().flat_map(|g| g.values.iter().copied()),
        left,
        WIDTH - RIGHT,
        false,
    );
    let band = (HEIGHT - TOP - BOTTOM) / groups.len().max(1) as f64;
    for (i, g) in groups.iter().enumerate() {
        let y0 = TOP + i as f64 * band + band * 0.2;
        let y1 = TOP + (i + 1) as f64 * band - band * 0.2;
        c.text(
            left - 8.0,
            (y0 + y1) / 2.0 + 4.0,
            12.0,
            "end",
            g.color,
            g.name,
        );
        for &v in &g.values {
            let px = x.at(v);
            c.line(px, y0, px, y1, g.color, 1.0);
        }
        if let Some(m) = g.mean {
            let px = x.at(m);
            c.line(px, y0 - band * 0.15, px, y1 + band * 0.15, g.color, 5.0);
        }
    }
    x_axis(&mut c, &x, HEIGHT - BOTTOM, x_label);
    c.finish()
}

pub struct Point<'a> {
    pub x: f64,
    pub y: f64,
    pub color: &'a str,
    pub label: Option<String>,
}

pub struct Marker<'a> {
    pub name: &'a str,
    pub x: f64,
    pub y: f64,
    pub color: &'a str,
}

/// Labeled points plus hollow diamonds for group means.
pub fn scatter(
    title: &str,
    x_label: &str,
    y_label: &str,
    points: &[Point],
    markers: &[Marker],
) -> String {
    let left = 80.0;
    let mut c = Canvas::new(title);
    let x = Scale::fit(
        points
            .iter()
            .map(|p| p.x)
            .chain(markers.iter().map(|m| m.x)),
        left,
        WIDTH - RIGHT,
        false,
    );
    let y = Scale::fit(
        points
            .iter()
            .map(|p| p.y)
            .chain(markers.iter().map(|m| m.y)),
        HEIGHT - BOTTOM,
        TOP,
        false,
    );
    for p in points {
        c.circle(x.at(p.x), y.at(p.y), 4.0, p.color, 0.75);
    }
    for p in points {
        if let Some(label) = &p.label {
            c.text(
                x.at(p.x) + 6.0,
                y.at(p.y) - 6.0,
                11.0,
                "start",
                p.color,
                label,
            );
        }
    }
    for m in markers {
        c.diamond(x.at(m.x), y.at(m.y), 9.0, m.color);
    }
    x_axis(&mut c, &x, HEIGHT - BOTTOM, x_label);
    y_axis(&mut c, &y, left, y_label);
    let names: Vec<(&str, &str)> = markers.iter().map(|m| (m.name, m.color)).collect();
    legend(&mut c, &names);
    c.finish()
}

pub struct SeparationPoint<'a> {
    pub delta_intensity: f64,
    pub delta_bias: f64,
    pub pole_minus: &'a str,
    pub pole_plus: &'a str,
    /// Pole printed in bold.
    pub highlighted: Option<&'a str>,
    /// `+` or `-` after the bold pole.
    pub mark: &'a str,
    pub color: &'a str,
    pub labeled: bool,
}

/// Frames at (intensity difference, bias difference), extremes labeled.
pub fn separation_plot(
    title: &str,
    group_a: &str,
    group_b: &str,
    points: &[SeparationPoint],
) -> String {
    let left = 80.0;
    let mut c = Canvas::new(title);
    let x = Scale::fit(
        points.iter().map(|p| p.delta_intensity),
        left,
        WIDTH - RIGHT,
        true,
    );
    let y = Scale::fit(
        points.iter().map(|p| p.delta_bias),
        HEIGHT - BOTTOM,
        TOP,
        true,
    );
    c.line(x.at(0.0), TOP, x.at(0.0), HEIGHT - BOTTOM, "#cccccc", 1.0);
    c.line(left, y.at(0.0), WIDTH - RIGHT, y.at(0.0), "#cccccc", 1.0);
    for p in points {
        let color = if p.labeled { p.color } else { GRAY };
        let opacity = if p.labeled { 0.9 } else { 0.35 };
        c.circle(
            x.at(p.delta_intensity),
            y.at(p.delta_bias),
            3.0,
            color,
            opacity,
        );
    }
    for p in points.iter().filter(|p| p.labeled) {
        let pole = |w: &str| {
            if p.highlighted == Some(w) {
                format!(
                    "<tspan font-weight=\"bold\">{}</tspan><tspan baseline-shift=\"super\" font-size=\"8\">{}</tspan>",
                    escape(w),
                    escape(p.mark)
                )
            } else {
                escape(w)
            }
        };
        let markup = format!("{}-{}", pole(p.pole_minus), pole(p.pole_plus));
        c.markup(
            x.at(p.delta_intensity) + 5.0,
            y.at(p.delta_bias) - 5.0,
            11.0,
            p.color,
            &markup,
        );
    }
    x_axis(
        &mut c,
        &x,
        HEIGHT - BOTTOM,
        &format!("intensity separation ({group_a} - {group_b})"),
    );
    y_axis(
        &mut c,
        &y,
        left,
        &format!("bias separation ({group_a} - {group_b})"),
    );
    legend(&mut c, &[(group_a, BLUE), (group_b, RED)]);
    c.finish()
}
