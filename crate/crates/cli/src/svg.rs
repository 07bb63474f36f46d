//! Minimal line plots rendered straight from CSV text.
//!
//! The generator is a pure function of the CSV bytes and the plot spec, so
//! regenerating a plot from its CSV always reproduces the SVG byte for
//! byte.  Rows with empty or non-finite fields are skipped, as are
//! non-positive values on logarithmic axes.

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 54.0;

const PALETTE: [&str; 6] = [
    "#1f6fb4", "#c23b22", "#2a9d50", "#8a56b0", "#b8860b", "#3a8d8f",
];

/// One line series: a y column plotted against the shared x column.
pub struct Series {
    pub y_col: usize,
    pub label: String,
}

/// Plot description applied to a CSV table.
pub struct PlotSpec {
    pub title: String,
    pub x_col: usize,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    pub log_x: bool,
    pub log_y: bool,
    /// Keep only rows where column `filter.0` equals string `filter.1`.
    pub filter: Option<(usize, String)>,
}

fn parse_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(|f| f.trim_end_matches('\r').to_string()).collect())
        .collect()
}

fn axis_value(raw: &str, log: bool) -> Option<f64> {
    let v: f64 = raw.parse().ok()?;
    if !v.is_finite() || (log && v <= 0.0) {
        return None;
    }
    Some(if log { v.log10() } else { v })
}

fn tick_text(v: f64, log: bool) -> String {
    if log {
        format!("1e{v:.0}")
    } else if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-3) {
        format!("{v:.2e}")
    } else {
        format!("{v:.4}")
    }
}

/// Render the plot; returns a complete standalone SVG document.
pub fn svg_from_csv(csv: &str, spec: &PlotSpec) -> String {
    let rows = parse_rows(csv);
    let mut series_points: Vec<Vec<(f64, f64)>> = Vec::with_capacity(spec.series.len());
    for s in &spec.series {
        let mut pts = Vec::new();
        for row in &rows {
            if let Some((col, want)) = &spec.filter {
                if row.get(*col).map(|f| f != want).unwrap_or(true) {
                    continue;
                }
            }
            let x = row.get(spec.x_col).and_then(|f| axis_value(f, spec.log_x));
            let y = row.get(s.y_col).and_then(|f| axis_value(f, spec.log_y));
            if let (Some(x), Some(y)) = (x, y) {
                pts.push((x, y));
            }
        }
        series_points.push(pts);
    }

    let all: Vec<(f64, f64)> = series_points.iter().flatten().copied().collect();
    let (x_min, x_max, y_min, y_max) = if all.is_empty() {
        (0.0, 1.0, 0.0, 1.0)
    } else {
        let mut xs: (f64, f64) = (f64::INFINITY, f64::NEG_INFINITY);
        let mut ys: (f64, f64) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in &all {
            xs = (xs.0.min(x), xs.1.max(x));
            ys = (ys.0.min(y), ys.1.max(y));
        }
        let pad = |lo: f64, hi: f64| {
            let span = (hi - lo).abs().max(1e-12);
            (lo - 0.05 * span, hi + 0.05 * span)
        };
        let (xl, xh) = pad(xs.0, xs.1);
        let (yl, yh) = pad(ys.0, ys.1);
        (xl, xh, yl, yh)
    };

    let to_px = |x: f64| {
        MARGIN_LEFT + (x - x_min) / (x_max - x_min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    };
    let to_py = |y: f64| {
        HEIGHT - MARGIN_BOTTOM
            - (y - y_min) / (y_max - y_min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        WIDTH / 2.0,
        xml_escape(&spec.title)
    ));

    // Axes box.
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{:.1}\" height=\"{:.1}\" \
         fill=\"none\" stroke=\"#333\"/>\n",
        WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
        HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    ));

    // Five ticks per axis.
    for i in 0..=4 {
        let fx = x_min + (x_max - x_min) * i as f64 / 4.0;
        let px = to_px(fx);
        svg.push_str(&format!(
            "<line x1=\"{px:.1}\" y1=\"{:.1}\" x2=\"{px:.1}\" y2=\"{:.1}\" stroke=\"#333\"/>\n",
            HEIGHT - MARGIN_BOTTOM,
            HEIGHT - MARGIN_BOTTOM + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{px:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
            HEIGHT - MARGIN_BOTTOM + 18.0,
            tick_text(fx, spec.log_x)
        ));
        let fy = y_min + (y_max - y_min) * i as f64 / 4.0;
        let py = to_py(fy);
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{py:.1}\" x2=\"{MARGIN_LEFT}\" y2=\"{py:.1}\" stroke=\"#333\"/>\n",
            MARGIN_LEFT - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>\n",
            MARGIN_LEFT - 8.0,
            py + 4.0,
            tick_text(fy, spec.log_y)
        ));
    }

    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) / 2.0,
        HEIGHT - 14.0,
        xml_escape(&spec.x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.1}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">{}</text>\n",
        MARGIN_TOP + (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM) / 2.0,
        MARGIN_TOP + (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM) / 2.0,
        xml_escape(&spec.y_label)
    ));

    for (i, pts) in series_points.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if !pts.is_empty() {
            let coords: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", to_px(x), to_py(y)))
                .collect();
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                coords.join(" ")
            ));
            for c in &coords {
                let mut parts = c.split(',');
                let (cx, cy) = (parts.next().unwrap(), parts.next().unwrap());
                svg.push_str(&format!(
                    "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"2.5\" fill=\"{color}\"/>\n"
                ));
            }
        }
        // Legend entry.
        let ly = MARGIN_TOP + 14.0 + 16.0 * i as f64;
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            WIDTH - MARGIN_RIGHT - 150.0,
            WIDTH - MARGIN_RIGHT - 126.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\">{}</text>\n",
            WIDTH - MARGIN_RIGHT - 120.0,
            ly + 4.0,
            xml_escape(&spec.series[i].label)
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
