//! Rendering: field/area tables, indicator and aggregate CSV files, scatter
//! and histogram exports, and standalone SVG figures.
//!
//! Rendering conventions: percentages print as integers (round half up),
//! means with one decimal, per-publication ratios with two decimals,
//! variation coefficients with three. The CSV exports keep six decimals and
//! are the machine-readable source of truth.

use std::fmt::Write as _;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::corpus::Corpus;
use crate::indicators::AuthorIndicators;
use crate::stats::{
    quadrant_analysis, AreaAggregate, AreaIndicatorSummary, FieldAggregate, Histogram, StatsError,
};
use crate::Rational;

/// Indicator selector for the table renderers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndicatorKind {
    Ed,
    Dr,
    Rr,
}

impl IndicatorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            IndicatorKind::Ed => "ed",
            IndicatorKind::Dr => "dr",
            IndicatorKind::Rr => "rr",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown indicator `{0}` (expected `ed`, `dr` or `rr`)")]
pub struct UnknownIndicator(pub String);

impl FromStr for IndicatorKind {
    type Err = UnknownIndicator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ed" => Ok(IndicatorKind::Ed),
            "dr" => Ok(IndicatorKind::Dr),
            "rr" => Ok(IndicatorKind::Rr),
            other => Err(UnknownIndicator(other.to_string())),
        }
    }
}

/// A rectangular table with a title and optional footnotes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub footnotes: Vec<String>,
}

impl Table {
    /// Plain-text rendering with aligned columns.
    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(String::len).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        let line = |cells: &[String], widths: &[usize]| -> String {
            cells
                .iter()
                .zip(widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let _ = writeln!(out, "{}", line(&self.headers, &widths));
        let _ = writeln!(
            out,
            "{}",
            widths
                .iter()
                .map(|w| "-".repeat(*w))
                .collect::<Vec<_>>()
                .join("  ")
        );
        for row in &self.rows {
            let _ = writeln!(out, "{}", line(row, &widths));
        }
        for note in &self.footnotes {
            let _ = writeln!(out, "* {note}");
        }
        out
    }

    /// CSV rendering: header and data rows only.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(&self.headers)
            .expect("in-memory csv write");
        for row in &self.rows {
            writer.write_record(row).expect("in-memory csv write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory csv flush"))
            .expect("csv output is utf-8")
    }

    /// Markdown rendering.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "## {}", self.title);
        let _ = writeln!(out);
        let _ = writeln!(out, "| {} |", self.headers.join(" | "));
        let _ = writeln!(
            out,
            "|{}|",
            self.headers.iter().map(|_| " --- ").collect::<Vec<_>>().join("|")
        );
        for row in &self.rows {
            let _ = writeln!(out, "| {} |", row.join(" | "));
        }
        for note in &self.footnotes {
            let _ = writeln!(out);
            let _ = writeln!(out, "*{note}*");
        }
        out
    }
}

/// Round-half-up integer percent of an exact ratio.
pub fn percent_exact(r: &Rational) -> u64 {
    let num = u128::from(*r.numer());
    let den = u128::from(*r.denom());
    ((200 * num + den) / (2 * den)) as u64
}

/// Round-half-up integer percent of a published `f64` ratio.
pub fn percent_f64(v: f64) -> i64 {
    (v * 100.0 + 0.5).floor() as i64
}

fn dec1(v: f64) -> String {
    format!("{v:.1}")
}

fn dec2(v: f64) -> String {
    format!("{v:.2}")
}

fn dec3(v: f64) -> String {
    format!("{v:.3}")
}

fn dec6(v: f64) -> String {
    format!("{v:.6}")
}

fn ratio6(r: &Rational) -> String {
    dec6(r.to_f64().expect("ratio fits f64"))
}

fn int_cell(v: f64) -> String {
    format!("{}", v.round() as i64)
}

/// Count omitted aggregates and phrase the footnote.
fn omission_footnote(aggregates: &[FieldAggregate], min_diversified: u32) -> Option<String> {
    let omitted = aggregates.iter().filter(|f| f.omitted).count();
    if omitted == 0 {
        None
    } else {
        Some(format!(
            "Omitted {omitted} field(s) with fewer than {min_diversified} diversified professors."
        ))
    }
}

/// One row per non-omitted field, column layout per indicator. Omitted
/// fields are excluded and counted in a footnote.
pub fn render_field_table(
    aggregates: &[FieldAggregate],
    kind: IndicatorKind,
    min_diversified: u32,
) -> Table {
    let mut fields: Vec<&FieldAggregate> = aggregates.iter().filter(|f| !f.omitted).collect();
    fields.sort_by(|a, b| a.field_code.cmp(&b.field_code));
    let (title, headers): (&str, Vec<&str>) = match kind {
        IndicatorKind::Ed => (
            "Extent of diversification by field",
            vec![
                "field",
                "professors",
                "diversified",
                "avg ED",
                "min-max ED",
                "avg pubs",
                "avg ED/pub",
            ],
        ),
        IndicatorKind::Dr => (
            "Diversification ratio of diversified professors by field",
            vec![
                "field",
                "diversified professors",
                "avg DR",
                "min-max DR",
                "var. coeff.",
            ],
        ),
        IndicatorKind::Rr => (
            "Relatedness ratio of diversified professors by field",
            vec![
                "field",
                "publishing in >1 discipline",
                "avg RR",
                "min-max RR",
            ],
        ),
    };
    let rows = fields
        .iter()
        .map(|f| match kind {
            IndicatorKind::Ed => {
                let stats = f.ed_stats.as_ref().expect("non-omitted field has ed stats");
                vec![
                    f.field_code.clone(),
                    f.n_professors.to_string(),
                    format!("{}%", percent_exact(&f.pct_diversified)),
                    dec1(stats.mean),
                    format!("{}-{}", int_cell(stats.min), int_cell(stats.max)),
                    dec1(f.avg_n_pubs),
                    dec2(f.avg_ed_per_pub),
                ]
            }
            IndicatorKind::Dr => {
                let stats = f.dr_stats.as_ref().expect("non-omitted field has dr stats");
                vec![
                    f.field_code.clone(),
                    f.n_diversified.to_string(),
                    format!("{}%", percent_f64(stats.mean)),
                    format!("{}%-{}%", percent_f64(stats.min), percent_f64(stats.max)),
                    stats.cv.map(dec3).unwrap_or_else(|| "undefined".into()),
                ]
            }
            IndicatorKind::Rr => {
                let stats = f.rr_stats.as_ref().expect("non-omitted field has rr stats");
                let cross = f
                    .pct_cross_discipline
                    .as_ref()
                    .expect("non-omitted field has cross-discipline share");
                vec![
                    f.field_code.clone(),
                    format!("{}%", percent_exact(cross)),
                    format!("{}%", percent_f64(stats.mean)),
                    format!("{}%-{}%", percent_f64(stats.min), percent_f64(stats.max)),
                ]
            }
        })
        .collect();
    Table {
        title: title.to_string(),
        headers: headers.into_iter().map(String::from).collect(),
        rows,
        footnotes: omission_footnote(aggregates, min_diversified)
            .into_iter()
            .collect(),
    }
}

fn labelled(value: String, field: &str) -> String {
    format!("{value} ({field})")
}

fn range_cell(summary: &AreaIndicatorSummary, fmt: &dyn Fn(f64) -> String) -> String {
    format!(
        "{}-{}",
        labelled(fmt(summary.min_value), &summary.min_field),
        labelled(fmt(summary.max_value), &summary.max_field)
    )
}

fn bare_pct(v: f64) -> String {
    percent_f64(v).to_string()
}

fn pct_cell(v: f64) -> String {
    format!("{}%", percent_f64(v))
}

/// Exact mean of area averages weighted by member-field counts; equals the
/// unweighted mean over all fields pooled together.
fn pooled_average(areas: &[&AreaAggregate], get: &dyn Fn(&AreaAggregate) -> f64) -> f64 {
    let mut sum = BigRational::zero();
    let mut weight = 0usize;
    for area in areas {
        let avg = BigRational::from_float(get(area)).expect("finite average");
        sum += avg * BigRational::from_integer(BigInt::from(area.n_fields));
        weight += area.n_fields;
    }
    (sum / BigRational::from_integer(BigInt::from(weight)))
        .to_f64()
        .expect("average fits f64")
}

fn pooled_extreme(
    areas: &[&AreaAggregate],
    get: &dyn Fn(&AreaAggregate) -> (f64, &str),
    want_min: bool,
) -> (f64, String) {
    let mut best: Option<(f64, &str)> = None;
    for area in areas {
        let candidate = get(area);
        // Value ties resolve to the smaller field code, so the Total row is
        // independent of how fields are grouped into areas.
        let better = match best {
            None => true,
            Some((value, field)) => {
                let stronger = if want_min {
                    candidate.0 < value
                } else {
                    candidate.0 > value
                };
                stronger || (candidate.0 == value && candidate.1 < field)
            }
        };
        if better {
            best = Some(candidate);
        }
    }
    let (value, field) = best.expect("at least one area");
    (value, field.to_string())
}

/// Synthetic summary for the `Total` row: field-weighted average plus the
/// extremes across all areas.
fn total_summary(areas: &[&AreaAggregate], get: &dyn Fn(&AreaAggregate) -> &AreaIndicatorSummary) -> AreaIndicatorSummary {
    let average = pooled_average(areas, &|a| get(a).average);
    let (min_value, min_field) =
        pooled_extreme(areas, &|a| (get(a).min_value, get(a).min_field.as_str()), true);
    let (max_value, max_field) =
        pooled_extreme(areas, &|a| (get(a).max_value, get(a).max_field.as_str()), false);
    AreaIndicatorSummary {
        average,
        min_field,
        min_value,
        max_field,
        max_value,
    }
}

/// One row per area plus a `Total` row pooled over all fields of all areas.
/// Extreme cells carry the field code, e.g. `28% (FIS/05)`.
pub fn render_area_table(areas: &[AreaAggregate], kind: IndicatorKind) -> Table {
    let mut sorted: Vec<&AreaAggregate> = areas.iter().collect();
    sorted.sort_by(|a, b| a.area_code.cmp(&b.area_code));
    let (title, headers): (&str, Vec<&str>) = match kind {
        IndicatorKind::Ed => (
            "Extent of diversification by area",
            vec![
                "area",
                "diversified avg (%)",
                "diversified min-max (%)",
                "avg ED",
                "min-max ED",
            ],
        ),
        IndicatorKind::Dr => (
            "Diversification ratio by area",
            vec![
                "area",
                "avg DR",
                "min-max DR",
                "min DR (field avg)",
                "max DR (field avg)",
            ],
        ),
        IndicatorKind::Rr => (
            "Relatedness ratio by area",
            vec![
                "area",
                "publishing in >1 discipline avg (%)",
                "publishing in >1 discipline min-max (%)",
                "avg RR (%)",
                "min-max RR (%)",
            ],
        ),
    };
    let render_row = |label: &str,
                      pct_div: &AreaIndicatorSummary,
                      ed: &AreaIndicatorSummary,
                      dr: &AreaIndicatorSummary,
                      rr: &AreaIndicatorSummary,
                      cross: &AreaIndicatorSummary,
                      dr_prof: (f64, f64)|
     -> Vec<String> {
        match kind {
            IndicatorKind::Ed => vec![
                label.to_string(),
                bare_pct(pct_div.average),
                range_cell(pct_div, &bare_pct),
                dec1(ed.average),
                range_cell(ed, &dec1),
            ],
            IndicatorKind::Dr => vec![
                label.to_string(),
                pct_cell(dr.average),
                format!("{}%-{}%", percent_f64(dr_prof.0), percent_f64(dr_prof.1)),
                labelled(pct_cell(dr.min_value), &dr.min_field),
                labelled(pct_cell(dr.max_value), &dr.max_field),
            ],
            IndicatorKind::Rr => vec![
                label.to_string(),
                bare_pct(cross.average),
                range_cell(cross, &bare_pct),
                bare_pct(rr.average),
                range_cell(rr, &bare_pct),
            ],
        }
    };
    let mut rows: Vec<Vec<String>> = sorted
        .iter()
        .map(|a| {
            render_row(
                &a.area_code,
                &a.pct_diversified,
                &a.ed,
                &a.dr,
                &a.rr,
                &a.pct_cross_discipline,
                a.dr_professor_range,
            )
        })
        .collect();
    if !sorted.is_empty() {
        let total_pct = total_summary(&sorted, &|a| &a.pct_diversified);
        let total_ed = total_summary(&sorted, &|a| &a.ed);
        let total_dr = total_summary(&sorted, &|a| &a.dr);
        let total_rr = total_summary(&sorted, &|a| &a.rr);
        let total_cross = total_summary(&sorted, &|a| &a.pct_cross_discipline);
        let dr_prof = (
            sorted
                .iter()
                .map(|a| a.dr_professor_range.0)
                .fold(f64::INFINITY, f64::min),
            sorted
                .iter()
                .map(|a| a.dr_professor_range.1)
                .fold(f64::NEG_INFINITY, f64::max),
        );
        rows.push(render_row(
            "Total",
            &total_pct,
            &total_ed,
            &total_dr,
            &total_rr,
            &total_cross,
            dr_prof,
        ));
    }
    Table {
        title: title.to_string(),
        headers: headers.into_iter().map(String::from).collect(),
        rows,
        footnotes: Vec::new(),
    }
}

/// Scatter data for one field: diversified authors as (publications, ED)
/// points, with the quadrant thresholds and the correlation coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterSeries {
    pub field_code: String,
    /// `(author_id, n_pubs, ed)`, ascending by author id.
    pub points: Vec<(String, u32, u32)>,
    pub x_threshold: f64,
    pub y_threshold: f64,
    pub rho: Option<f64>,
}

/// Extract the scatter series for a field's diversified authors.
pub fn export_scatter(
    records: &[AuthorIndicators],
    field_code: &str,
) -> Result<ScatterSeries, StatsError> {
    let members: Vec<&AuthorIndicators> = records
        .iter()
        .filter(|r| r.field_code == field_code)
        .collect();
    if members.is_empty() {
        return Err(StatsError::EmptyField {
            field_code: field_code.to_string(),
        });
    }
    let owned: Vec<AuthorIndicators> = members.iter().map(|r| (*r).clone()).collect();
    let quadrants = quadrant_analysis(&owned)?;
    let mut points: Vec<(String, u32, u32)> = members
        .iter()
        .filter(|r| r.diversified)
        .map(|r| (r.author_id.clone(), r.n_pubs, r.ed))
        .collect();
    points.sort();
    Ok(ScatterSeries {
        field_code: field_code.to_string(),
        points,
        x_threshold: quadrants.x_threshold,
        y_threshold: quadrants.y_threshold,
        rho: quadrants.pearson_rho,
    })
}

fn rho_cell(rho: Option<f64>) -> String {
    rho.map(dec6).unwrap_or_else(|| "undefined".into())
}

/// CSV for a scatter series: a `#`-prefixed sidecar line with the thresholds
/// and correlation, then `author_id,n_pubs,ed` rows.
pub fn scatter_csv(series: &ScatterSeries) -> String {
    let mut out = format!(
        "# field={};x_threshold={};y_threshold={};rho={};n={}\n",
        series.field_code,
        dec6(series.x_threshold),
        dec6(series.y_threshold),
        rho_cell(series.rho),
        series.points.len()
    );
    out.push_str("author_id,n_pubs,ed\n");
    for (author_id, n_pubs, ed) in &series.points {
        let _ = writeln!(out, "{author_id},{n_pubs},{ed}");
    }
    out
}

/// CSV for a histogram: `lower,upper,count` rows with six-decimal bounds.
pub fn histogram_csv(histogram: &Histogram) -> String {
    let mut out = String::from("lower,upper,count\n");
    for bin in &histogram.bins {
        let _ = writeln!(
            out,
            "{},{},{}",
            ratio6(&bin.lower),
            ratio6(&bin.upper),
            bin.count
        );
    }
    out
}

/// Author indicator file: one row per author.
pub fn indicators_csv(records: &[AuthorIndicators], corpus: &Corpus) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "author_id",
            "field_code",
            "area_code",
            "n_pubs",
            "ed",
            "diversified",
            "dominant_topics",
            "dr",
            "dominant_discipline",
            "rr",
            "crosses_disciplines",
        ])
        .expect("in-memory csv write");
    for r in records {
        let area = corpus
            .fields()
            .get(&r.field_code)
            .map(|f| f.area_code.clone())
            .unwrap_or_default();
        let topics: Vec<String> = r.dominant_topics.iter().map(|t| t.label()).collect();
        writer
            .write_record([
                r.author_id.as_str(),
                r.field_code.as_str(),
                area.as_str(),
                &r.n_pubs.to_string(),
                &r.ed.to_string(),
                if r.diversified { "true" } else { "false" },
                &topics.join("|"),
                &ratio6(&r.dr),
                r.dominant_discipline.as_str(),
                &ratio6(&r.rr),
                if r.crosses_disciplines { "true" } else { "false" },
            ])
            .expect("in-memory csv write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv flush"))
        .expect("csv output is utf-8")
}

fn stats_cells(stats: &Option<crate::stats::DescriptiveStats>) -> [String; 6] {
    match stats {
        Some(s) => [
            dec6(s.mean),
            dec6(s.median),
            dec6(s.min),
            dec6(s.max),
            dec6(s.std),
            s.cv.map(dec6).unwrap_or_default(),
        ],
        None => std::array::from_fn(|_| String::new()),
    }
}

/// Per-field aggregate file, one row per field (omitted fields included and
/// flagged).
pub fn field_aggregates_csv(aggregates: &[FieldAggregate]) -> String {
    let mut sorted: Vec<&FieldAggregate> = aggregates.iter().collect();
    sorted.sort_by(|a, b| a.field_code.cmp(&b.field_code));
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = vec![
        "field_code".into(),
        "n_professors".into(),
        "n_diversified".into(),
        "pct_diversified".into(),
    ];
    for prefix in ["ed", "dr", "rr"] {
        for stat in ["mean", "median", "min", "max", "std", "cv"] {
            header.push(format!("{prefix}_{stat}"));
        }
        if prefix == "ed" {
            header.push("avg_n_pubs".into());
            header.push("avg_ed_per_pub".into());
        }
    }
    header.push("pct_cross_discipline".into());
    header.push("omitted".into());
    writer.write_record(&header).expect("in-memory csv write");
    for f in sorted {
        let mut row: Vec<String> = vec![
            f.field_code.clone(),
            f.n_professors.to_string(),
            f.n_diversified.to_string(),
            ratio6(&f.pct_diversified),
        ];
        row.extend(stats_cells(&f.ed_stats));
        row.push(dec6(f.avg_n_pubs));
        row.push(dec6(f.avg_ed_per_pub));
        row.extend(stats_cells(&f.dr_stats));
        row.extend(stats_cells(&f.rr_stats));
        row.push(
            f.pct_cross_discipline
                .as_ref()
                .map(ratio6)
                .unwrap_or_default(),
        );
        row.push(if f.omitted { "true" } else { "false" }.to_string());
        writer.write_record(&row).expect("in-memory csv write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv flush"))
        .expect("csv output is utf-8")
}

/// Per-area aggregate file, one row per area.
pub fn area_aggregates_csv(areas: &[AreaAggregate]) -> String {
    let mut sorted: Vec<&AreaAggregate> = areas.iter().collect();
    sorted.sort_by(|a, b| a.area_code.cmp(&b.area_code));
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = vec!["area_code".into(), "n_fields".into()];
    for prefix in ["pct_diversified", "ed", "dr", "rr", "pct_cross_discipline"] {
        for suffix in ["avg", "min_field", "min", "max_field", "max"] {
            header.push(format!("{prefix}_{suffix}"));
        }
    }
    header.push("dr_prof_min".into());
    header.push("dr_prof_max".into());
    writer.write_record(&header).expect("in-memory csv write");
    for a in sorted {
        let mut row: Vec<String> = vec![a.area_code.clone(), a.n_fields.to_string()];
        for summary in [
            &a.pct_diversified,
            &a.ed,
            &a.dr,
            &a.rr,
            &a.pct_cross_discipline,
        ] {
            row.push(dec6(summary.average));
            row.push(summary.min_field.clone());
            row.push(dec6(summary.min_value));
            row.push(summary.max_field.clone());
            row.push(dec6(summary.max_value));
        }
        row.push(dec6(a.dr_professor_range.0));
        row.push(dec6(a.dr_professor_range.1));
        writer.write_record(&row).expect("in-memory csv write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv flush"))
        .expect("csv output is utf-8")
}

const SVG_WIDTH: f64 = 640.0;
const SVG_HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 44.0;
const MARGIN_BOTTOM: f64 = 56.0;

struct SvgCanvas {
    body: String,
}

impl SvgCanvas {
    fn new(title: &str) -> SvgCanvas {
        let mut body = String::new();
        let _ = writeln!(
            body,
            r##"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">"##
        );
        let _ = writeln!(
            body,
            r##"<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="#ffffff"/>"##
        );
        let _ = writeln!(
            body,
            r##"<text x="{:.2}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"##,
            SVG_WIDTH / 2.0,
            escape_xml(title)
        );
        SvgCanvas { body }
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn escape_xml(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn plot_width() -> f64 {
    SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT
}

fn plot_height() -> f64 {
    SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
}

fn x_pixel(value: f64, max: f64) -> f64 {
    MARGIN_LEFT + value / max * plot_width()
}

fn y_pixel(value: f64, max: f64) -> f64 {
    MARGIN_TOP + plot_height() - value / max * plot_height()
}

fn axes(body: &mut String, x_max: f64, y_max: f64, x_label: &str, y_label: &str) {
    let x0 = MARGIN_LEFT;
    let y0 = MARGIN_TOP + plot_height();
    let _ = writeln!(
        body,
        r##"<line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}" stroke="#000000" stroke-width="1"/>"##,
        MARGIN_LEFT + plot_width()
    );
    let _ = writeln!(
        body,
        r##"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{:.2}" stroke="#000000" stroke-width="1"/>"##,
        MARGIN_TOP
    );
    for i in 0..=5 {
        let frac = f64::from(i) / 5.0;
        let xv = frac * x_max;
        let xp = x_pixel(xv, x_max);
        let _ = writeln!(
            body,
            r##"<line x1="{xp:.2}" y1="{y0:.2}" x2="{xp:.2}" y2="{:.2}" stroke="#000000" stroke-width="1"/>"##,
            y0 + 5.0
        );
        let _ = writeln!(
            body,
            r##"<text x="{xp:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"##,
            y0 + 18.0,
            trim_tick(xv)
        );
        let yv = frac * y_max;
        let yp = y_pixel(yv, y_max);
        let _ = writeln!(
            body,
            r##"<line x1="{:.2}" y1="{yp:.2}" x2="{x0:.2}" y2="{yp:.2}" stroke="#000000" stroke-width="1"/>"##,
            x0 - 5.0
        );
        let _ = writeln!(
            body,
            r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"##,
            x0 - 8.0,
            yp + 4.0,
            trim_tick(yv)
        );
    }
    let _ = writeln!(
        body,
        r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"##,
        MARGIN_LEFT + plot_width() / 2.0,
        SVG_HEIGHT - 14.0,
        escape_xml(x_label)
    );
    let _ = writeln!(
        body,
        r##"<text x="16" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"##,
        MARGIN_TOP + plot_height() / 2.0,
        MARGIN_TOP + plot_height() / 2.0,
        escape_xml(y_label)
    );
}

fn trim_tick(v: f64) -> String {
    if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.2}")
    }
}

/// Standalone scatter SVG with dashed threshold lines at the two means.
/// Byte-for-byte deterministic for a given series.
pub fn emit_scatter_svg(series: &ScatterSeries) -> String {
    let x_max = series
        .points
        .iter()
        .map(|(_, n, _)| f64::from(*n))
        .fold(series.x_threshold, f64::max)
        .max(1.0)
        * 1.05;
    let y_max = series
        .points
        .iter()
        .map(|(_, _, e)| f64::from(*e))
        .fold(series.y_threshold, f64::max)
        .max(1.0)
        * 1.05;
    let rho_text = match series.rho {
        Some(r) => format!("rho={}", dec2(r)),
        None => "rho=undefined".to_string(),
    };
    let mut canvas = SvgCanvas::new(&format!(
        "ED vs publications, diversified professors of {}",
        series.field_code
    ));
    let body = &mut canvas.body;
    axes(body, x_max, y_max, "publications", "extent of diversification");
    let xt = x_pixel(series.x_threshold, x_max);
    let yt = y_pixel(series.y_threshold, y_max);
    let _ = writeln!(
        body,
        r##"<line x1="{xt:.2}" y1="{:.2}" x2="{xt:.2}" y2="{:.2}" stroke="#b22222" stroke-width="1" stroke-dasharray="5,4"/>"##,
        MARGIN_TOP,
        MARGIN_TOP + plot_height()
    );
    let _ = writeln!(
        body,
        r##"<line x1="{:.2}" y1="{yt:.2}" x2="{:.2}" y2="{yt:.2}" stroke="#b22222" stroke-width="1" stroke-dasharray="5,4"/>"##,
        MARGIN_LEFT,
        MARGIN_LEFT + plot_width()
    );
    let _ = writeln!(
        body,
        r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" fill="#b22222">x&#772;={}</text>"##,
        xt + 4.0,
        MARGIN_TOP + 12.0,
        dec1(series.x_threshold)
    );
    let _ = writeln!(
        body,
        r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" fill="#b22222">y&#772;={}</text>"##,
        MARGIN_LEFT + 6.0,
        yt - 6.0,
        dec1(series.y_threshold)
    );
    let _ = writeln!(
        body,
        r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"##,
        SVG_WIDTH - MARGIN_RIGHT,
        MARGIN_TOP - 8.0,
        rho_text
    );
    for (_, n_pubs, ed) in &series.points {
        let _ = writeln!(
            body,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#1f6fb2" fill-opacity="0.65"/>"##,
            x_pixel(f64::from(*n_pubs), x_max),
            y_pixel(f64::from(*ed), y_max)
        );
    }
    canvas.finish()
}

/// Standalone histogram SVG over the \[0,1\] scale. Byte-for-byte
/// deterministic for a given histogram.
pub fn emit_histogram_svg(histogram: &Histogram, title: &str) -> String {
    let max_count = histogram.bins.iter().map(|b| b.count).max().unwrap_or(0).max(1);
    let mut canvas = SvgCanvas::new(title);
    let body = &mut canvas.body;
    axes(body, 1.0, max_count as f64, "value", "professors");
    for bin in &histogram.bins {
        if bin.count == 0 {
            continue;
        }
        let lower = bin.lower.to_f64().expect("ratio fits f64");
        let upper = bin.upper.to_f64().expect("ratio fits f64");
        let x = x_pixel(lower, 1.0);
        let width = (x_pixel(upper, 1.0) - x).max(0.5);
        let y = y_pixel(bin.count as f64, max_count as f64);
        let height = MARGIN_TOP + plot_height() - y;
        let _ = writeln!(
            body,
            r##"<rect x="{x:.2}" y="{y:.2}" width="{width:.2}" height="{height:.2}" fill="#1f6fb2" stroke="#ffffff" stroke-width="0.5"/>"##
        );
    }
    canvas.finish()
}
