//! `Ext` charts: ranks per bidegree plus `h_0..h_3` multiplications, and
//! their text and SVG renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Image, Resolution};
use crate::milnor::MilnorMonomial;

/// A multiplication by `h_i`, between dots given as (s, t, index within the
/// bidegree).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HLine {
    pub i: u32,
    pub from: (u32, i32, usize),
    pub to: (u32, i32, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtChart {
    pub module: String,
    pub algebra: String,
    pub s_max: u32,
    pub t_max: i32,
    /// Stems drawn, inclusive. Every drawn bidegree has `t <= t_max`.
    pub stems: (i32, i32),
    /// Nonzero `dim Ext^{s,t}`, keyed by `(s, t)`.
    pub ranks: BTreeMap<(u32, i32), usize>,
    pub lines: Vec<HLine>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartFormat {
    Text,
    Svg,
}

impl ExtChart {
    pub fn rank(&self, s: u32, t: i32) -> usize {
        self.ranks.get(&(s, t)).copied().unwrap_or(0)
    }

    /// Rank at homological degree `s` and stem `t - s`.
    pub fn rank_at_stem(&self, s: u32, stem: i32) -> usize {
        self.rank(s, stem + s as i32)
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// Reads the chart off a minimal resolution: ranks are generator counts, and
/// `h_i` joins `g` to `g'` when `Sq(2^i)` occurs in the coefficient of `g`
/// in `d g'`.
pub fn ext_chart(r: &Resolution) -> ExtChart {
    let mut ranks = BTreeMap::new();
    let mut position = Vec::new();
    for s in 0..=r.s_max() {
        let mut seen: BTreeMap<i32, usize> = BTreeMap::new();
        let mut pos = Vec::new();
        for g in r.stage(s) {
            let k = seen.entry(g.degree).or_insert(0);
            pos.push(*k);
            *k += 1;
        }
        for (t, n) in seen {
            ranks.insert((s, t), n);
        }
        position.push(pos);
    }
    let mut lines = Vec::new();
    for s in 1..=r.s_max() {
        for (j, g) in r.stage(s).iter().enumerate() {
            let Image::Combination(coeffs) = &g.image else { continue };
            for (k, c) in coeffs.iter().enumerate() {
                for i in 0..4u32 {
                    if c.contains(&MilnorMonomial::sq(1 << i)) {
                        let src = &r.stage(s - 1)[k];
                        lines.push(HLine {
                            i,
                            from: (s - 1, src.degree, position[s as usize - 1][k]),
                            to: (s, g.degree, position[s as usize][j]),
                        });
                    }
                }
            }
        }
    }
    lines.sort();
    let lo = r.bottom();
    let hi = (r.t_max() - r.s_max() as i32).max(lo);
    ExtChart {
        module: r.module().name().to_string(),
        algebra: r.algebra().to_string(),
        s_max: r.s_max(),
        t_max: r.t_max(),
        stems: (lo, hi),
        ranks,
        lines,
    }
}

pub fn emit_chart(chart: &ExtChart, format: ChartFormat) -> String {
    match format {
        ChartFormat::Text => emit_text(chart),
        ChartFormat::Svg => emit_svg(chart),
    }
}

/// A header of stems, then one row per `s` from the top down: the rank, or
/// `.` for zero. An empty chart is just the header.
fn emit_text(chart: &ExtChart) -> String {
    let (lo, hi) = chart.stems;
    let mut out = String::from("   ");
    for stem in lo..=hi {
        let _ = write!(out, "{stem:>3}");
    }
    out.push('\n');
    if chart.is_empty() {
        return out;
    }
    for s in (0..=chart.s_max).rev() {
        let _ = write!(out, "{s:>3}");
        for stem in lo..=hi {
            match chart.rank_at_stem(s, stem) {
                0 => out.push_str("  ."),
                n => {
                    let _ = write!(out, "{n:>3}");
                }
            }
        }
        out.push('\n');
    }
    out
}

const CELL: i32 = 20;
const MARGIN: i32 = 30;

fn dot_x(chart: &ExtChart, s: u32, t: i32, index: usize) -> i32 {
    let rank = chart.rank(s, t) as i32;
    CELL * (t - s as i32) + 6 * index as i32 - 3 * (rank - 1)
}

fn visible(chart: &ExtChart, s: u32, t: i32) -> bool {
    let stem = t - s as i32;
    stem >= chart.stems.0 && stem <= chart.stems.1 && s <= chart.s_max
}

/// Dots of radius 3 at `(20 stem, -20 s)` (spread sideways when a bidegree
/// has several), `h_0`, `h_1` and `h_2`/`h_3` lines, axis labels.
fn emit_svg(chart: &ExtChart) -> String {
    let (lo, hi) = chart.stems;
    let width = CELL * (hi - lo) + 2 * MARGIN;
    let height = CELL * chart.s_max as i32 + 2 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "<title>Ext over {} of {}</title>", chart.algebra, chart.module);
    let _ = writeln!(
        out,
        r#"<g transform="translate({},{})" font-family="monospace" font-size="8">"#,
        MARGIN - CELL * lo,
        height - MARGIN
    );
    for stem in lo..=hi {
        let _ = writeln!(out, r#"<text x="{}" y="14" text-anchor="middle">{stem}</text>"#, CELL * stem);
    }
    for s in 0..=chart.s_max {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{s}</text>"#,
            CELL * lo - 12,
            -CELL * s as i32 + 3
        );
    }
    for line in &chart.lines {
        let (s0, t0, k0) = line.from;
        let (s1, t1, k1) = line.to;
        if !visible(chart, s0, t0) || !visible(chart, s1, t1) {
            continue;
        }
        let _ = writeln!(
            out,
            r#"<line class="h{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1"/>"#,
            line.i,
            dot_x(chart, s0, t0, k0),
            -CELL * s0 as i32,
            dot_x(chart, s1, t1, k1),
            -CELL * s1 as i32
        );
    }
    for (&(s, t), &n) in &chart.ranks {
        if !visible(chart, s, t) {
            continue;
        }
        for k in 0..n {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="3"/>"#,
                dot_x(chart, s, t, k),
                -CELL * s as i32
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}
