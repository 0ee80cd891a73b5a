//! CSV files with `# key=value` headers and standalone SVG line plots.

use anyhow::{Context, Result};
use std::fmt::Write as _;
use std::path::Path;

pub const UNITS: &str = "t is Omega0 t (Omega0 = 1); values are dimensionless";

/// One curve ready to be written: header pairs plus `t,value[,stderr]` rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRecord {
    pub header: Vec<(String, String)>,
    pub units: String,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub stderr: Option<Vec<f64>>,
}

impl CurveRecord {
    pub fn new(times: Vec<f64>, values: Vec<f64>, stderr: Option<Vec<f64>>) -> Self {
        Self {
            header: Vec::new(),
            units: UNITS.to_string(),
            times,
            values,
            stderr,
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.header.push((key.to_string(), value.to_string()));
        self
    }

    pub fn with_units(mut self, units: &str) -> Self {
        self.units = units.to_string();
        self
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.header {
            writeln!(s, "# {k}={v}").unwrap();
        }
        writeln!(s, "# units={}", self.units).unwrap();
        match &self.stderr {
            Some(e) => {
                s.push_str("t,value,stderr\n");
                for ((t, v), e) in self.times.iter().zip(&self.values).zip(e) {
                    writeln!(s, "{t},{v},{e}").unwrap();
                }
            }
            None => {
                s.push_str("t,value\n");
                for (t, v) in self.times.iter().zip(&self.values) {
                    writeln!(s, "{t},{v}").unwrap();
                }
            }
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())
            .with_context(|| format!("cannot write {}", path.display()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Solid,
    Dashed,
    DotDash,
    /// Markers with error bars.
    Points,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub err: Option<Vec<f64>>,
    pub style: Style,
}

impl Series {
    pub fn new(label: impl Into<String>, x: Vec<f64>, y: Vec<f64>, style: Style) -> Self {
        Self {
            label: label.into(),
            x,
            y,
            err: None,
            style,
        }
    }

    pub fn with_err(mut self, err: Vec<f64>) -> Self {
        self.err = Some(err);
        self
    }
}

#[derive(Debug, Clone)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];
const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;

/// Round tick spacing giving about `n` intervals over `span`.
fn tick_step(span: f64, n: f64) -> f64 {
    let raw = span / n;
    let mag = 10f64.powf(raw.log10().floor());
    let f = raw / mag;
    let nice = if f < 1.5 {
        1.0
    } else if f < 3.0 {
        2.0
    } else if f < 7.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn fmt_tick(v: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let s = format!("{v:.decimals$}");
    if s == "-0" || s.starts_with("-0.") && s.trim_start_matches(['-', '0', '.']).is_empty() {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl Plot {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            series: Vec::new(),
        }
    }

    pub fn push(&mut self, s: Series) {
        self.series.push(s);
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let (mut x0, mut x1, mut y0, mut y1) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for s in &self.series {
            for (i, (&x, &y)) in s.x.iter().zip(&s.y).enumerate() {
                if !(x.is_finite() && y.is_finite()) {
                    continue;
                }
                let e = s.err.as_ref().map_or(0.0, |e| e[i]);
                x0 = x0.min(x);
                x1 = x1.max(x);
                y0 = y0.min(y - e);
                y1 = y1.max(y + e);
            }
        }
        if !x0.is_finite() {
            return (0.0, 1.0, 0.0, 1.0);
        }
        if x1 <= x0 {
            x1 = x0 + 1.0;
        }
        if y1 <= y0 {
            y0 -= 0.5;
            y1 += 0.5;
        }
        let pad = 0.05 * (y1 - y0);
        (x0, x1, y0 - pad, y1 + pad)
    }

    pub fn to_svg(&self) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;
        let mut s = String::new();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        )
        .unwrap();
        writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
            LEFT + pw / 2.0,
            escape(&self.title)
        )
        .unwrap();
        // grid and ticks
        let xs = tick_step(x1 - x0, 6.0);
        let mut t = (x0 / xs).ceil() * xs;
        while t <= x1 + 1e-9 * xs {
            let px = sx(t);
            writeln!(
                s,
                r##"<line x1="{px:.2}" y1="{TOP}" x2="{px:.2}" y2="{:.2}" stroke="#e0e0e0"/>"##,
                TOP + ph
            )
            .unwrap();
            writeln!(
                s,
                r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                TOP + ph + 16.0,
                fmt_tick(t, xs)
            )
            .unwrap();
            t += xs;
        }
        let ys = tick_step(y1 - y0, 6.0);
        let mut t = (y0 / ys).ceil() * ys;
        while t <= y1 + 1e-9 * ys {
            let py = sy(t);
            writeln!(
                s,
                r##"<line x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#e0e0e0"/>"##,
                LEFT + pw
            )
            .unwrap();
            writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 6.0,
                py + 4.0,
                fmt_tick(t, ys)
            )
            .unwrap();
            t += ys;
        }
        writeln!(
            s,
            r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
            TOP + ph / 2.0,
            TOP + ph / 2.0,
            escape(&self.y_label)
        )
        .unwrap();
        writeln!(s, r#"<clipPath id="plot"><rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}"/></clipPath>"#).unwrap();
        for (k, series) in self.series.iter().enumerate() {
            let color = COLORS[k % COLORS.len()];
            let pts: Vec<(f64, f64, usize)> = series
                .x
                .iter()
                .zip(&series.y)
                .enumerate()
                .filter(|(_, (x, y))| x.is_finite() && y.is_finite())
                .map(|(i, (&x, &y))| (sx(x), sy(y), i))
                .collect();
            match series.style {
                Style::Points => {
                    for &(px, py, i) in &pts {
                        if let Some(e) = &series.err {
                            let (a, b) = (sy(series.y[i] - e[i]), sy(series.y[i] + e[i]));
                            writeln!(s, r#"<line x1="{px:.2}" y1="{a:.2}" x2="{px:.2}" y2="{b:.2}" stroke="{color}" clip-path="url(#plot)"/>"#).unwrap();
                        }
                        writeln!(s, r#"<circle cx="{px:.2}" cy="{py:.2}" r="2.5" fill="{color}" clip-path="url(#plot)"/>"#).unwrap();
                    }
                }
                style => {
                    let dash = match style {
                        Style::Dashed => r#" stroke-dasharray="6 4""#,
                        Style::DotDash => r#" stroke-dasharray="8 3 2 3""#,
                        _ => "",
                    };
                    let mut d = String::new();
                    for (j, &(px, py, _)) in pts.iter().enumerate() {
                        write!(d, "{}{px:.2},{py:.2} ", if j == 0 { "M" } else { "L" }).unwrap();
                    }
                    writeln!(
                        s,
                        r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash} clip-path="url(#plot)"/>"#,
                        d.trim_end()
                    )
                    .unwrap();
                }
            }
            // legend
            let ly = TOP + 12.0 + 18.0 * k as f64;
            let lx = LEFT + pw + 12.0;
            match series.style {
                Style::Points => writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{ly:.2}" r="3" fill="{color}"/>"#,
                    lx + 12.0
                )
                .unwrap(),
                style => {
                    let dash = match style {
                        Style::Dashed => r#" stroke-dasharray="6 4""#,
                        Style::DotDash => r#" stroke-dasharray="8 3 2 3""#,
                        _ => "",
                    };
                    writeln!(
                        s,
                        r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="1.5"{dash}/>"#,
                        lx + 24.0
                    )
                    .unwrap();
                }
            }
            writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
                lx + 30.0,
                ly + 4.0,
                escape(&series.label)
            )
            .unwrap();
        }
        s.push_str("</svg>\n");
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_svg())
            .with_context(|| format!("cannot write {}", path.display()))
    }
}

/// File-name tag for a rate, e.g. `nu0.001`.
pub fn nu_tag(nu: f64) -> String {
    format!("nu{nu}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_then_rows() {
        let c = CurveRecord::new(vec![0.0, 0.5], vec![1.0, 0.25], Some(vec![0.0, 0.01]))
            .with("scenario", "fig1")
            .with("quantity", "N");
        let text = c.to_csv();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# scenario=fig1");
        assert!(lines[2].starts_with("# units="));
        assert_eq!(lines[3], "t,value,stderr");
        assert_eq!(lines[5], "0.5,0.25,0.01");
    }

    #[test]
    fn ticks_are_round() {
        assert_eq!(tick_step(10.0, 5.0), 2.0);
        assert_eq!(tick_step(1.0, 6.0), 0.2);
        assert_eq!(fmt_tick(0.4, 0.2), "0.4");
        assert_eq!(fmt_tick(-0.0, 0.2), "0.0");
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let mut p = Plot::new("N(t)", "t", "N");
        p.push(Series::new(
            "a<b",
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.5, 0.2],
            Style::Solid,
        ));
        p.push(Series::new("mc", vec![0.5], vec![0.7], Style::Points).with_err(vec![0.05]));
        let svg = p.to_svg();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("a&lt;b"));
        assert_eq!(svg.matches("<path").count(), 1);
    }
}
