//! Research-diversification indicators computed from per-author publication
//! portfolios classified by subject category.
//!
//! The library ingests a corpus (classification scheme, fields and areas,
//! authors, publications, authorship links), derives one topic per
//! publication, and computes three indicators per author:
//!
//! - **ED** (extent of diversification): number of distinct topics in the
//!   author's portfolio,
//! - **DR** (diversification ratio): share of publications outside the
//!   dominant topic,
//! - **RR** (relatedness ratio): share of publications in the dominant
//!   discipline.
//!
//! Author-level indicators are aggregated into field- and area-level
//! descriptive statistics, quadrant and correlation analyses, histograms,
//! and rendered tables. Indicator values are held as exact rationals and
//! converted to floating point only for presentation.

pub mod config;
pub mod corpus;
pub mod indicators;
pub mod report;
pub mod stats;
pub mod synth;
pub mod topics;

#[cfg(test)]
pub(crate) mod testutil;

/// Exact nonnegative rational used for the per-author indicator values.
pub type Rational = num::rational::Ratio<u64>;
