//! Standalone SVG line chart of the Y, I, K channels against time.
//! No external renderer; the output is deterministic and diffable.

use crate::csvio::Table;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;

const CHANNELS: [(&str, &str); 3] = [("Y", "#1f77b4"), ("I", "#d62728"), ("K", "#2ca02c")];

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo == hi {
        // degenerate range: pad so the scale stays finite
        lo -= 1.0;
        hi += 1.0;
    }
    (lo, hi)
}

pub fn render(table: &Table) -> String {
    let (t_lo, t_hi) = range(table.t.iter().copied());
    let (v_lo, v_hi) = range(
        table
            .y
            .iter()
            .chain(table.i.iter())
            .chain(table.k.iter())
            .copied(),
    );
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |t: f64| MARGIN_LEFT + (t - t_lo) / (t_hi - t_lo) * plot_w;
    let sy = |v: f64| MARGIN_TOP + (v_hi - v) / (v_hi - v_lo) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // axes
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    svg.push_str(&format!(
        "<line x1=\"{x0:.3}\" y1=\"{y0:.3}\" x2=\"{x1:.3}\" y2=\"{y0:.3}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "<line x1=\"{x0:.3}\" y1=\"{y0:.3}\" x2=\"{x0:.3}\" y2=\"{y1:.3}\" stroke=\"black\"/>\n"
    ));

    // tick labels
    for frac in [0.0, 0.5, 1.0] {
        let t = t_lo + frac * (t_hi - t_lo);
        let v = v_lo + frac * (v_hi - v_lo);
        svg.push_str(&format!(
            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\" text-anchor=\"middle\">{t:.4e}</text>\n",
            sx(t),
            y0 + 20.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\" text-anchor=\"end\">{v:.4e}</text>\n",
            x0 - 8.0,
            sy(v) + 4.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"13\" text-anchor=\"middle\">t</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    ));

    // one polyline per channel
    for (idx, (name, color)) in CHANNELS.iter().enumerate() {
        let series = match idx {
            0 => &table.y,
            1 => &table.i,
            _ => &table.k,
        };
        let points: Vec<String> = table
            .t
            .iter()
            .zip(series)
            .map(|(&t, &v)| format!("{:.3},{:.3}", sx(t), sy(v)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.join(" ")
        ));
        // legend entry
        let ly = MARGIN_TOP + 20.0 + 22.0 * idx as f64;
        svg.push_str(&format!(
            "<line x1=\"{:.3}\" y1=\"{ly:.3}\" x2=\"{:.3}\" y2=\"{ly:.3}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            x1 + 15.0,
            x1 + 45.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"13\">{name}</text>\n",
            x1 + 52.0,
            ly + 4.0
        ));
    }

    svg.push_str("</svg>\n");
    svg
}
