//! Topic derivation and per-author publication portfolios.
//!
//! Every publication maps to exactly one topic: the subject category of a
//! mono-category journal, or the exact set of categories of a multi-category
//! journal. Topics are compared as sets; the canonical label joins the codes
//! with `+` in ascending order (`EI+UH`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::corpus::{check_sc_code, Corpus, Discipline, Publication, Scheme};

/// A publication topic: a non-empty set of subject-category codes held in
/// canonical ascending order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Topic {
    codes: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopicError {
    #[error("publication has no subject-category codes")]
    EmptyCodeSet,
    #[error("malformed topic label `{label}`: {reason}")]
    MalformedLabel { label: String, reason: String },
    #[error("unknown subject category `{code}`")]
    UnknownSubjectCategory { code: String },
}

impl Topic {
    /// Build a topic from a set of codes. Input order is irrelevant.
    pub fn from_codes<I, S>(codes: I) -> Result<Topic, TopicError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = codes.into_iter().map(Into::into).collect();
        if set.is_empty() {
            return Err(TopicError::EmptyCodeSet);
        }
        Ok(Topic {
            codes: set.into_iter().collect(),
        })
    }

    /// Parse a canonical label (`CODE("+"CODE)*`). Codes may arrive in any
    /// order; duplicates are rejected.
    pub fn parse(label: &str) -> Result<Topic, TopicError> {
        let malformed = |reason: &str| TopicError::MalformedLabel {
            label: label.to_string(),
            reason: reason.to_string(),
        };
        if label.is_empty() {
            return Err(malformed("empty label"));
        }
        let mut set = BTreeSet::new();
        for part in label.split('+') {
            check_sc_code(part).map_err(|m| malformed(&m))?;
            if !set.insert(part.to_string()) {
                return Err(malformed(&format!("duplicate code `{part}`")));
            }
        }
        Ok(Topic {
            codes: set.into_iter().collect(),
        })
    }

    /// Canonical label: codes joined by `+` in ascending order.
    pub fn label(&self) -> String {
        self.codes.join("+")
    }

    pub fn codes(&self) -> &[String] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a Topic always holds at least one code
    }
}

impl fmt::Display for Topic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The single topic of a publication: its exact subject-category set.
pub fn derive_topic(publication: &Publication) -> Result<Topic, TopicError> {
    Topic::from_codes(publication.sc_codes.iter().cloned())
}

/// Deduplicated disciplines of the topic's subject categories.
pub fn topic_disciplines(topic: &Topic, scheme: &Scheme) -> Result<BTreeSet<Discipline>, TopicError> {
    let mut disciplines = BTreeSet::new();
    for code in topic.codes() {
        let discipline = scheme
            .discipline_of(code)
            .ok_or_else(|| TopicError::UnknownSubjectCategory { code: code.clone() })?;
        disciplines.insert(discipline.clone());
    }
    Ok(disciplines)
}

/// An author's topic multiset with the total publication count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portfolio {
    pub author_id: String,
    pub counts: BTreeMap<Topic, u32>,
    pub n_pubs: u32,
}

impl Portfolio {
    /// Build directly from a topic multiset. `n_pubs` is the sum of counts.
    pub fn from_counts(
        author_id: impl Into<String>,
        counts: BTreeMap<Topic, u32>,
    ) -> Result<Portfolio, PortfolioError> {
        if counts.is_empty() || counts.values().any(|&c| c == 0) {
            return Err(PortfolioError::NoPublications {
                author_id: author_id.into(),
            });
        }
        let n_pubs = counts.values().sum();
        Ok(Portfolio {
            author_id: author_id.into(),
            counts,
            n_pubs,
        })
    }

    /// Number of distinct topics.
    pub fn distinct_topics(&self) -> usize {
        self.counts.len()
    }

    /// Highest per-topic count.
    pub fn max_count(&self) -> u32 {
        self.counts.values().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PortfolioError {
    #[error("unknown author `{author_id}`")]
    UnknownAuthor { author_id: String },
    #[error("author `{author_id}` has no publications")]
    NoPublications { author_id: String },
    #[error(transparent)]
    Topic(#[from] TopicError),
}

/// Aggregate the author's publications into a topic multiset.
///
/// Errors when the author is unknown or has no linked publications; callers
/// iterating a corpus skip zero-publication authors.
pub fn build_portfolio(corpus: &Corpus, author_id: &str) -> Result<Portfolio, PortfolioError> {
    if !corpus.authors().contains_key(author_id) {
        return Err(PortfolioError::UnknownAuthor {
            author_id: author_id.to_string(),
        });
    }
    let pub_ids = corpus.pubs_of_author(author_id);
    if pub_ids.is_empty() {
        return Err(PortfolioError::NoPublications {
            author_id: author_id.to_string(),
        });
    }
    let mut counts: BTreeMap<Topic, u32> = BTreeMap::new();
    for pub_id in pub_ids {
        let publication = corpus
            .publications()
            .get(pub_id)
            .expect("corpus links are cross-referenced");
        let topic = derive_topic(publication)?;
        *counts.entry(topic).or_insert(0) += 1;
    }
    Ok(Portfolio {
        author_id: author_id.to_string(),
        counts,
        n_pubs: pub_ids.len() as u32,
    })
}
