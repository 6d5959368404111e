//! Field- and area-level aggregation of author indicators.
//!
//! Descriptive statistics accumulate in exact rational arithmetic and
//! convert to `f64` once per published value, so invariants like "the area
//! average lies within the field min-max" hold without tolerance fudging.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::indicators::AuthorIndicators;
use crate::Rational;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("empty sample")]
    EmptySample,
    #[error("series lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("need at least {min} points, got {n}")]
    TooFewPoints { n: usize, min: usize },
    #[error("non-finite value in input")]
    NonFiniteValue,
    #[error("bin width must be positive")]
    NonPositiveBinWidth,
    #[error("bin width exceeds the [0,1] scale")]
    BinWidthTooLarge,
    #[error("value {value} outside the [0,1] scale")]
    ValueOutOfRange { value: f64 },
    #[error("no indicator records for field `{field_code}`")]
    EmptyField { field_code: String },
    #[error("field `{field_code}` has fewer than 2 diversified authors")]
    TooFewDiversified { field_code: String },
    #[error("area `{area_code}` has no non-omitted fields")]
    EmptyArea { area_code: String },
}

/// Sample descriptive statistics. `std` uses the sample (n-1) convention and
/// is 0 for singletons; `cv = std/mean` is undefined when the mean is not
/// positive.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptiveStats {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    pub min: f64,
    pub max: f64,
    pub std: f64,
    pub cv: Option<f64>,
}

fn to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn big_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("rational fits f64 range")
}

fn f64_to_big(v: f64) -> Result<BigRational, StatsError> {
    BigRational::from_float(v).ok_or(StatsError::NonFiniteValue)
}

/// Exact mean of already-published `f64` values (each converts to a rational
/// exactly), rounded once at the end.
pub(crate) fn exact_mean_f64(values: &[f64]) -> Result<f64, StatsError> {
    if values.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let mut sum = BigRational::zero();
    for v in values {
        sum += f64_to_big(*v)?;
    }
    Ok(big_to_f64(&(sum / BigRational::from_integer(BigInt::from(values.len())))))
}

/// Descriptive statistics over a non-empty sample of exact rationals.
pub fn describe(values: &[Rational]) -> Result<DescriptiveStats, StatsError> {
    if values.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let n = values.len();
    let mut sorted = values.to_vec();
    sorted.sort();
    let min = &sorted[0];
    let max = &sorted[n - 1];
    let median_big = if n % 2 == 1 {
        to_big(&sorted[n / 2])
    } else {
        (to_big(&sorted[n / 2 - 1]) + to_big(&sorted[n / 2]))
            / BigRational::from_integer(BigInt::from(2))
    };
    let sum: BigRational = values.iter().map(to_big).sum();
    let mean_big = sum / BigRational::from_integer(BigInt::from(n));
    let std = if n == 1 {
        0.0
    } else {
        let ss: BigRational = values
            .iter()
            .map(|v| {
                let d = to_big(v) - &mean_big;
                &d * &d
            })
            .sum();
        let var = ss / BigRational::from_integer(BigInt::from(n - 1));
        big_to_f64(&var).sqrt()
    };
    let mean = big_to_f64(&mean_big);
    let cv = if mean_big.is_positive() {
        Some(std / mean)
    } else {
        None
    };
    Ok(DescriptiveStats {
        n,
        mean,
        median: big_to_f64(&median_big),
        min: min.to_f64().expect("rational fits f64"),
        max: max.to_f64().expect("rational fits f64"),
        std,
        cv,
    })
}

/// Sample Pearson correlation. `Ok(None)` when either series has zero
/// variance. Sums are exact, so perfectly collinear series return exactly
/// `1.0` or `-1.0`.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<Option<f64>, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(StatsError::TooFewPoints {
            n: xs.len(),
            min: 2,
        });
    }
    let n = BigRational::from_integer(BigInt::from(xs.len()));
    let mut sum_x = BigRational::zero();
    let mut sum_y = BigRational::zero();
    let big_xs: Vec<BigRational> = xs.iter().map(|v| f64_to_big(*v)).collect::<Result<_, _>>()?;
    let big_ys: Vec<BigRational> = ys.iter().map(|v| f64_to_big(*v)).collect::<Result<_, _>>()?;
    for (x, y) in big_xs.iter().zip(&big_ys) {
        sum_x += x;
        sum_y += y;
    }
    let mean_x = sum_x / &n;
    let mean_y = sum_y / &n;
    let mut ssx = BigRational::zero();
    let mut ssy = BigRational::zero();
    let mut ssxy = BigRational::zero();
    for (x, y) in big_xs.iter().zip(&big_ys) {
        let dx = x - &mean_x;
        let dy = y - &mean_y;
        ssx += &dx * &dx;
        ssy += &dy * &dy;
        ssxy += &dx * &dy;
    }
    if ssx.is_zero() || ssy.is_zero() {
        return Ok(None);
    }
    // Cauchy-Schwarz equality detects |r| = 1 exactly.
    if &ssxy * &ssxy == &ssx * &ssy {
        return Ok(Some(if ssxy.is_positive() { 1.0 } else { -1.0 }));
    }
    let denom = big_to_f64(&(ssx * ssy)).sqrt();
    Ok(Some(big_to_f64(&ssxy) / denom))
}

/// Population over which the field's mean/min/max ED is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdMeanPopulation {
    /// All publishing professors of the field; specialized ones contribute
    /// `ed = 1`.
    #[default]
    All,
    /// Diversified professors only.
    Diversified,
}

impl EdMeanPopulation {
    pub fn as_str(&self) -> &'static str {
        match self {
            EdMeanPopulation::All => "all",
            EdMeanPopulation::Diversified => "diversified",
        }
    }
}

impl fmt::Display for EdMeanPopulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown ED population `{0}` (expected `all` or `diversified`)")]
pub struct UnknownPopulation(pub String);

impl FromStr for EdMeanPopulation {
    type Err = UnknownPopulation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(EdMeanPopulation::All),
            "diversified" => Ok(EdMeanPopulation::Diversified),
            other => Err(UnknownPopulation(other.to_string())),
        }
    }
}

/// Aggregated statistics for one field.
///
/// `dr_stats`, `rr_stats` and `pct_cross_discipline` cover diversified
/// authors only and are `None` when the field has none. `ed_stats` covers
/// the population selected by [`EdMeanPopulation`].
#[derive(Debug, Clone, PartialEq)]
pub struct FieldAggregate {
    pub field_code: String,
    pub n_professors: usize,
    pub n_diversified: usize,
    /// `n_diversified / n_professors`, exact.
    pub pct_diversified: Rational,
    pub ed_stats: Option<DescriptiveStats>,
    pub avg_n_pubs: f64,
    pub avg_ed_per_pub: f64,
    pub dr_stats: Option<DescriptiveStats>,
    pub rr_stats: Option<DescriptiveStats>,
    /// Share of diversified professors whose portfolio spans more than one
    /// discipline, exact.
    pub pct_cross_discipline: Option<Rational>,
    pub omitted: bool,
}

/// Aggregate one field's author records.
///
/// `omitted` is set when the field has fewer than `min_diversified`
/// diversified professors; statistics are still computed.
pub fn aggregate_field(
    indicators: &[AuthorIndicators],
    field_code: &str,
    min_diversified: u32,
    ed_population: EdMeanPopulation,
) -> Result<FieldAggregate, StatsError> {
    let members: Vec<&AuthorIndicators> = indicators
        .iter()
        .filter(|r| r.field_code == field_code)
        .collect();
    if members.is_empty() {
        return Err(StatsError::EmptyField {
            field_code: field_code.to_string(),
        });
    }
    let diversified: Vec<&AuthorIndicators> =
        members.iter().copied().filter(|r| r.diversified).collect();
    let n_professors = members.len();
    let n_diversified = diversified.len();

    let ed_values: Vec<Rational> = match ed_population {
        EdMeanPopulation::All => members
            .iter()
            .map(|r| Rational::from_integer(u64::from(r.ed)))
            .collect(),
        EdMeanPopulation::Diversified => diversified
            .iter()
            .map(|r| Rational::from_integer(u64::from(r.ed)))
            .collect(),
    };
    let ed_stats = if ed_values.is_empty() {
        None
    } else {
        Some(describe(&ed_values)?)
    };

    let n_pubs_values: Vec<Rational> = members
        .iter()
        .map(|r| Rational::from_integer(u64::from(r.n_pubs)))
        .collect();
    let avg_n_pubs = describe(&n_pubs_values)?.mean;
    let ed_per_pub_values: Vec<Rational> = members.iter().map(|r| r.ed_per_pub).collect();
    let avg_ed_per_pub = describe(&ed_per_pub_values)?.mean;

    let dr_values: Vec<Rational> = diversified.iter().map(|r| r.dr).collect();
    let rr_values: Vec<Rational> = diversified.iter().map(|r| r.rr).collect();
    let dr_stats = if dr_values.is_empty() {
        None
    } else {
        Some(describe(&dr_values)?)
    };
    let rr_stats = if rr_values.is_empty() {
        None
    } else {
        Some(describe(&rr_values)?)
    };
    let pct_cross_discipline = if n_diversified == 0 {
        None
    } else {
        let crossers = diversified.iter().filter(|r| r.crosses_disciplines).count();
        Some(Rational::new(crossers as u64, n_diversified as u64))
    };

    Ok(FieldAggregate {
        field_code: field_code.to_string(),
        n_professors,
        n_diversified,
        pct_diversified: Rational::new(n_diversified as u64, n_professors as u64),
        ed_stats,
        avg_n_pubs,
        avg_ed_per_pub,
        dr_stats,
        rr_stats,
        pct_cross_discipline,
        omitted: (n_diversified as u32) < min_diversified,
    })
}

/// Mean of member-field values with the extreme fields identified.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaIndicatorSummary {
    pub average: f64,
    pub min_field: String,
    pub min_value: f64,
    pub max_field: String,
    pub max_value: f64,
}

fn summarize(values: &[(String, f64)]) -> Result<AreaIndicatorSummary, StatsError> {
    let average = exact_mean_f64(&values.iter().map(|(_, v)| *v).collect::<Vec<_>>())?;
    // Values arrive in ascending field order; strict comparisons keep the
    // first field on ties.
    let mut min = &values[0];
    let mut max = &values[0];
    for entry in &values[1..] {
        if entry.1 < min.1 {
            min = entry;
        }
        if entry.1 > max.1 {
            max = entry;
        }
    }
    Ok(AreaIndicatorSummary {
        average,
        min_field: min.0.clone(),
        min_value: min.1,
        max_field: max.0.clone(),
        max_value: max.1,
    })
}

/// Aggregated statistics for one area, computed over its non-omitted member
/// fields (unweighted across fields).
#[derive(Debug, Clone, PartialEq)]
pub struct AreaAggregate {
    pub area_code: String,
    /// Non-omitted member fields.
    pub n_fields: usize,
    pub pct_diversified: AreaIndicatorSummary,
    pub ed: AreaIndicatorSummary,
    pub dr: AreaIndicatorSummary,
    pub rr: AreaIndicatorSummary,
    pub pct_cross_discipline: AreaIndicatorSummary,
    /// Min/max DR over individual professors of the member fields.
    pub dr_professor_range: (f64, f64),
}

/// Aggregate an area from its member-field aggregates. Omitted fields are
/// excluded; an area with only omitted fields is an error.
pub fn aggregate_area(
    field_aggregates: &[&FieldAggregate],
    area_code: &str,
) -> Result<AreaAggregate, StatsError> {
    let members: Vec<&FieldAggregate> = field_aggregates
        .iter()
        .copied()
        .filter(|f| !f.omitted)
        .collect();
    if members.is_empty() {
        return Err(StatsError::EmptyArea {
            area_code: area_code.to_string(),
        });
    }
    let collect = |get: &dyn Fn(&FieldAggregate) -> f64| -> Vec<(String, f64)> {
        members
            .iter()
            .map(|f| (f.field_code.clone(), get(f)))
            .collect()
    };
    // Non-omitted fields have at least one diversified professor, so the
    // diversified-only statistics are present.
    let pct_diversified = summarize(&collect(&|f| {
        f.pct_diversified.to_f64().expect("ratio fits f64")
    }))?;
    let ed = summarize(&collect(&|f| {
        f.ed_stats.as_ref().expect("non-omitted field has ed stats").mean
    }))?;
    let dr = summarize(&collect(&|f| {
        f.dr_stats.as_ref().expect("non-omitted field has dr stats").mean
    }))?;
    let rr = summarize(&collect(&|f| {
        f.rr_stats.as_ref().expect("non-omitted field has rr stats").mean
    }))?;
    let pct_cross_discipline = summarize(&collect(&|f| {
        f.pct_cross_discipline
            .as_ref()
            .expect("non-omitted field has cross-discipline share")
            .to_f64()
            .expect("ratio fits f64")
    }))?;
    let dr_min = members
        .iter()
        .map(|f| f.dr_stats.as_ref().unwrap().min)
        .fold(f64::INFINITY, f64::min);
    let dr_max = members
        .iter()
        .map(|f| f.dr_stats.as_ref().unwrap().max)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(AreaAggregate {
        area_code: area_code.to_string(),
        n_fields: members.len(),
        pct_diversified,
        ed,
        dr,
        rr,
        pct_cross_discipline,
        dr_professor_range: (dr_min, dr_max),
    })
}

/// Group field aggregates by area (via the corpus field registry) and
/// aggregate each area that has at least one non-omitted field.
pub fn aggregate_areas(
    corpus: &crate::corpus::Corpus,
    field_aggregates: &[FieldAggregate],
) -> Vec<AreaAggregate> {
    let mut by_area: BTreeMap<&str, Vec<&FieldAggregate>> = BTreeMap::new();
    for aggregate in field_aggregates {
        if let Some(field) = corpus.fields().get(&aggregate.field_code) {
            by_area
                .entry(field.area_code.as_str())
                .or_default()
                .push(aggregate);
        }
    }
    by_area
        .into_iter()
        .filter_map(|(area_code, members)| aggregate_area(&members, area_code).ok())
        .collect()
}

/// Scatter-quadrant partition of a field's diversified authors at the mean
/// publication count (x) and mean ED (y). Authors exactly on a threshold
/// fall on the lower/left side.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadrantSummary {
    pub x_threshold: f64,
    pub y_threshold: f64,
    pub n_diversified: usize,
    pub lower_left: usize,
    pub lower_right: usize,
    pub upper_left: usize,
    pub upper_right: usize,
    pub pearson_rho: Option<f64>,
}

impl QuadrantSummary {
    pub fn counts(&self) -> [usize; 4] {
        [
            self.lower_left,
            self.lower_right,
            self.upper_left,
            self.upper_right,
        ]
    }

    /// Percentages of the diversified population, in counts() order.
    pub fn percentages(&self) -> [f64; 4] {
        self.counts()
            .map(|c| 100.0 * c as f64 / self.n_diversified as f64)
    }
}

/// Quadrant analysis over the diversified authors of one field's records.
pub fn quadrant_analysis(records: &[AuthorIndicators]) -> Result<QuadrantSummary, StatsError> {
    let diversified: Vec<&AuthorIndicators> = records.iter().filter(|r| r.diversified).collect();
    if diversified.len() < 2 {
        let field_code = records
            .first()
            .map(|r| r.field_code.clone())
            .unwrap_or_default();
        return Err(StatsError::TooFewDiversified { field_code });
    }
    let n = diversified.len() as u64;
    let sum_pubs: u64 = diversified.iter().map(|r| u64::from(r.n_pubs)).sum();
    let sum_ed: u64 = diversified.iter().map(|r| u64::from(r.ed)).sum();
    let x_mean = Rational::new(sum_pubs, n);
    let y_mean = Rational::new(sum_ed, n);
    let mut counts = [0usize; 4]; // ll, lr, ul, ur
    for r in &diversified {
        let x_low = Rational::from_integer(u64::from(r.n_pubs)) <= x_mean;
        let y_low = Rational::from_integer(u64::from(r.ed)) <= y_mean;
        let idx = match (x_low, y_low) {
            (true, true) => 0,
            (false, true) => 1,
            (true, false) => 2,
            (false, false) => 3,
        };
        counts[idx] += 1;
    }
    let xs: Vec<f64> = diversified.iter().map(|r| f64::from(r.n_pubs)).collect();
    let ys: Vec<f64> = diversified.iter().map(|r| f64::from(r.ed)).collect();
    let pearson_rho = pearson(&xs, &ys)?;
    Ok(QuadrantSummary {
        x_threshold: x_mean.to_f64().expect("mean fits f64"),
        y_threshold: y_mean.to_f64().expect("mean fits f64"),
        n_diversified: diversified.len(),
        lower_left: counts[0],
        lower_right: counts[1],
        upper_left: counts[2],
        upper_right: counts[3],
        pearson_rho,
    })
}

/// One histogram bin over the \[0,1\] scale. The upper bound is exclusive
/// except for the final bin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistogramBin {
    pub lower: Rational,
    pub upper: Rational,
    pub count: usize,
}

/// Fixed-width histogram over the \[0,1\] scale of a ratio-valued indicator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub bin_width: Rational,
    pub bins: Vec<HistogramBin>,
}

impl Histogram {
    pub fn total_count(&self) -> usize {
        self.bins.iter().map(|b| b.count).sum()
    }
}

/// Bin ratio-valued samples into contiguous bins of `bin_width` covering
/// \[0,1\]. The final bin includes its upper bound.
pub fn histogram(values: &[Rational], bin_width: Rational) -> Result<Histogram, StatsError> {
    if values.is_empty() {
        return Err(StatsError::EmptySample);
    }
    if bin_width.numer() == &0 {
        return Err(StatsError::NonPositiveBinWidth);
    }
    if bin_width > Rational::new(1, 1) {
        return Err(StatsError::BinWidthTooLarge);
    }
    let one = Rational::new(1, 1);
    let p = u128::from(*bin_width.numer());
    let q = u128::from(*bin_width.denom());
    let n_bins = q.div_ceil(p) as u64;
    let mut counts = vec![0usize; n_bins as usize];
    for v in values {
        if *v > one {
            return Err(StatsError::ValueOutOfRange {
                value: v.to_f64().unwrap_or(f64::NAN),
            });
        }
        let a = u128::from(*v.numer());
        let b = u128::from(*v.denom());
        // floor(v / width) = floor(a*q / (b*p)), clamped into the last bin so
        // 1.0 lands in it.
        let idx = ((a * q) / (b * p)).min(u128::from(n_bins - 1)) as usize;
        counts[idx] += 1;
    }
    let bins = counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| {
            let lower = bin_width * Rational::from_integer(i as u64);
            let upper = if i as u64 == n_bins - 1 {
                one
            } else {
                bin_width * Rational::from_integer(i as u64 + 1)
            };
            HistogramBin {
                lower,
                upper,
                count,
            }
        })
        .collect();
    Ok(Histogram {
        bin_width,
        bins,
    })
}
