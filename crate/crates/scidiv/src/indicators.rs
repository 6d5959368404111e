//! Per-author diversification indicators.
//!
//! For each publishing author the portfolio yields:
//!
//! - `ed`, the number of distinct topics,
//! - `dr = 1 - max_topic_count / n_pubs`, the share of publications outside
//!   the dominant topic,
//! - `rr`, the share of publications in the dominant discipline,
//!
//! plus the diversified/specialized classification, the dominant topic set
//! (ties reported, not broken), the dominant discipline and whether the
//! portfolio spans more than one discipline. All ratios are exact rationals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::{Corpus, Discipline, Scheme};
use crate::topics::{build_portfolio, topic_disciplines, Portfolio, PortfolioError, Topic, TopicError};
use crate::Rational;

/// How the relatedness ratio counts a publication toward the dominant
/// discipline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RelatednessStrategy {
    /// Each publication is assigned the discipline holding the majority of
    /// its topic's subject categories (ties broken by ascending discipline
    /// name); the numerator counts publications assigned to the dominant
    /// discipline.
    #[default]
    AssignedMajority,
    /// The numerator counts only publications whose topic's discipline set
    /// is exactly the dominant discipline.
    PureSubset,
}

impl RelatednessStrategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            RelatednessStrategy::AssignedMajority => "assigned-majority",
            RelatednessStrategy::PureSubset => "pure-subset",
        }
    }
}

impl fmt::Display for RelatednessStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown relatedness strategy `{0}` (expected `assigned-majority` or `pure-subset`)")]
pub struct UnknownStrategy(pub String);

impl FromStr for RelatednessStrategy {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "assigned-majority" => Ok(RelatednessStrategy::AssignedMajority),
            "pure-subset" => Ok(RelatednessStrategy::PureSubset),
            other => Err(UnknownStrategy(other.to_string())),
        }
    }
}

/// Diversified/specialized classification of a portfolio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Diversified,
    Specialized,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndicatorError {
    #[error(transparent)]
    Portfolio(#[from] PortfolioError),
    #[error(transparent)]
    Topic(#[from] TopicError),
}

/// Indicator record for one author.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuthorIndicators {
    pub author_id: String,
    pub field_code: String,
    pub n_pubs: u32,
    pub ed: u32,
    pub diversified: bool,
    pub dominant_topics: BTreeSet<Topic>,
    pub dr: Rational,
    pub dominant_discipline: Discipline,
    pub rr: Rational,
    pub crosses_disciplines: bool,
    /// `ed / n_pubs`, the diversification yield per publication.
    pub ed_per_pub: Rational,
}

/// Diversified iff the portfolio spans at least two distinct topics.
pub fn classify(portfolio: &Portfolio) -> Classification {
    if portfolio.distinct_topics() >= 2 {
        Classification::Diversified
    } else {
        Classification::Specialized
    }
}

/// Extent of diversification: the number of distinct topics.
pub fn extent(portfolio: &Portfolio) -> u32 {
    portfolio.distinct_topics() as u32
}

/// All topics attaining the maximum count; more than one element signals a
/// tie, which is reported rather than broken.
pub fn dominant_topics(portfolio: &Portfolio) -> BTreeSet<Topic> {
    let max = portfolio.max_count();
    portfolio
        .counts
        .iter()
        .filter(|(_, &count)| count == max)
        .map(|(topic, _)| topic.clone())
        .collect()
}

/// Share of publications outside the dominant topic:
/// `(n_pubs - max_count) / n_pubs`. Ties are harmless because only the
/// maximum count enters.
pub fn diversification_ratio(portfolio: &Portfolio) -> Rational {
    let max = portfolio.max_count();
    Rational::new(
        u64::from(portfolio.n_pubs - max),
        u64::from(portfolio.n_pubs),
    )
}

/// Discipline assigned to a single topic: the discipline holding the most of
/// the topic's subject categories, ties broken by ascending discipline name.
fn assign_topic_discipline(topic: &Topic, scheme: &Scheme) -> Result<Discipline, TopicError> {
    let mut counts: BTreeMap<Discipline, u32> = BTreeMap::new();
    for code in topic.codes() {
        let discipline = scheme
            .discipline_of(code)
            .ok_or_else(|| TopicError::UnknownSubjectCategory { code: code.clone() })?;
        *counts.entry(discipline.clone()).or_insert(0) += 1;
    }
    // BTreeMap iterates in ascending name order, so the first maximum is the
    // lexicographic tie-break winner.
    let mut best: Option<(&Discipline, u32)> = None;
    for (discipline, count) in &counts {
        if best.is_none_or(|(_, c)| *count > c) {
            best = Some((discipline, *count));
        }
    }
    Ok(best.expect("topic has at least one code").0.clone())
}

/// Per-discipline publication counts after assigning each publication the
/// majority discipline of its topic.
fn assigned_counts(
    portfolio: &Portfolio,
    scheme: &Scheme,
) -> Result<BTreeMap<Discipline, u32>, TopicError> {
    let mut counts: BTreeMap<Discipline, u32> = BTreeMap::new();
    for (topic, &n) in &portfolio.counts {
        let discipline = assign_topic_discipline(topic, scheme)?;
        *counts.entry(discipline).or_insert(0) += n;
    }
    Ok(counts)
}

fn max_by_count_then_name(counts: &BTreeMap<Discipline, u32>) -> Discipline {
    let mut best: Option<(&Discipline, u32)> = None;
    for (discipline, count) in counts {
        if best.is_none_or(|(_, c)| *count > c) {
            best = Some((discipline, *count));
        }
    }
    best.expect("non-empty counts").0.clone()
}

/// The discipline with the most assigned publications; ties broken by
/// ascending discipline name. Both strategies use the same assignment-based
/// dominant discipline; the strategy choice affects only the relatedness
/// numerator.
pub fn dominant_discipline(
    portfolio: &Portfolio,
    scheme: &Scheme,
    _strategy: RelatednessStrategy,
) -> Result<Discipline, IndicatorError> {
    let counts = assigned_counts(portfolio, scheme)?;
    Ok(max_by_count_then_name(&counts))
}

/// Share of publications in the dominant discipline.
pub fn relatedness_ratio(
    portfolio: &Portfolio,
    scheme: &Scheme,
    strategy: RelatednessStrategy,
) -> Result<Rational, IndicatorError> {
    let counts = assigned_counts(portfolio, scheme)?;
    let dominant = max_by_count_then_name(&counts);
    let numerator = match strategy {
        RelatednessStrategy::AssignedMajority => counts[&dominant],
        RelatednessStrategy::PureSubset => {
            let mut pure = 0;
            for (topic, &n) in &portfolio.counts {
                let disciplines = topic_disciplines(topic, scheme)?;
                if disciplines.len() == 1 && disciplines.contains(&dominant) {
                    pure += n;
                }
            }
            pure
        }
    };
    Ok(Rational::new(
        u64::from(numerator),
        u64::from(portfolio.n_pubs),
    ))
}

/// True iff the portfolio's topics span at least two disciplines.
pub fn crosses_disciplines(portfolio: &Portfolio, scheme: &Scheme) -> Result<bool, IndicatorError> {
    let mut seen: BTreeSet<Discipline> = BTreeSet::new();
    for topic in portfolio.counts.keys() {
        seen.extend(topic_disciplines(topic, scheme)?);
        if seen.len() >= 2 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Full indicator record for one portfolio.
pub fn author_indicators(
    portfolio: &Portfolio,
    field_code: &str,
    scheme: &Scheme,
    strategy: RelatednessStrategy,
) -> Result<AuthorIndicators, IndicatorError> {
    let ed = extent(portfolio);
    Ok(AuthorIndicators {
        author_id: portfolio.author_id.clone(),
        field_code: field_code.to_string(),
        n_pubs: portfolio.n_pubs,
        ed,
        diversified: classify(portfolio) == Classification::Diversified,
        dominant_topics: dominant_topics(portfolio),
        dr: diversification_ratio(portfolio),
        dominant_discipline: dominant_discipline(portfolio, scheme, strategy)?,
        rr: relatedness_ratio(portfolio, scheme, strategy)?,
        crosses_disciplines: crosses_disciplines(portfolio, scheme)?,
        ed_per_pub: Rational::new(u64::from(ed), u64::from(portfolio.n_pubs)),
    })
}

/// One record per publishing author, ascending by `author_id`. Authors with
/// no linked publications are skipped.
pub fn compute_all(
    corpus: &Corpus,
    strategy: RelatednessStrategy,
) -> Result<Vec<AuthorIndicators>, IndicatorError> {
    let mut records = Vec::new();
    for (author_id, author) in corpus.authors() {
        let portfolio = match build_portfolio(corpus, author_id) {
            Ok(p) => p,
            Err(PortfolioError::NoPublications { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        records.push(author_indicators(
            &portfolio,
            &author.field_code,
            corpus.scheme(),
            strategy,
        )?);
    }
    Ok(records)
}
