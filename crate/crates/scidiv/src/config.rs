//! Run configuration: defaults, config-file keys, and validation.
//!
//! Precedence is command-line flag over config-file key over built-in
//! default; the merge happens in the CLI, which applies file values first
//! and flag values on top.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::DocType;
use crate::indicators::RelatednessStrategy;
use crate::stats::EdMeanPopulation;
use crate::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{message}")]
    Invalid { message: String },
}

fn line_error(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Line {
        line,
        message: message.into(),
    }
}

fn invalid(message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        message: message.into(),
    }
}

/// Parse a decimal string such as `0.05` into an exact rational.
pub fn parse_decimal(text: &str) -> Result<Rational, ConfigError> {
    let err = || invalid(format!("invalid decimal `{text}`"));
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let int_value: u64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| err())?
    };
    if frac_part.len() > 12 {
        return Err(invalid(format!("too many decimal places in `{text}`")));
    }
    let mut denom: u64 = 1;
    let mut frac_value: u64 = 0;
    for ch in frac_part.chars() {
        let digit = ch.to_digit(10).ok_or_else(err)?;
        frac_value = frac_value * 10 + u64::from(digit);
        denom *= 10;
    }
    Ok(Rational::new(int_value * denom + frac_value, denom))
}

/// Everything a run needs to know beyond the subcommand itself.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scheme: Option<PathBuf>,
    pub fields: Option<PathBuf>,
    pub authors: Option<PathBuf>,
    pub pubs: Option<PathBuf>,
    pub links: Option<PathBuf>,
    pub out: PathBuf,
    pub doc_types: BTreeSet<DocType>,
    pub strategy: RelatednessStrategy,
    pub min_diversified: u32,
    pub bin_width: Rational,
    pub ed_mean: EdMeanPopulation,
    pub seed: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scheme: None,
            fields: None,
            authors: None,
            pubs: None,
            links: None,
            out: PathBuf::from("out"),
            doc_types: DocType::countable().into_iter().collect(),
            strategy: RelatednessStrategy::default(),
            min_diversified: 10,
            bin_width: Rational::new(1, 20),
            ed_mean: EdMeanPopulation::default(),
            seed: None,
        }
    }
}

impl RunConfig {
    /// Apply `key = value` lines from a config file. Unknown keys are
    /// errors; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| line_error(line_no, "expected `key = value`"))?;
            self.apply_key(key.trim(), value.trim())
                .map_err(|e| line_error(line_no, e.to_string()))?;
        }
        self.check()
    }

    /// Apply one key/value pair (config-file vocabulary).
    pub fn apply_key(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "scheme" => self.scheme = Some(PathBuf::from(value)),
            "fields" => self.fields = Some(PathBuf::from(value)),
            "authors" => self.authors = Some(PathBuf::from(value)),
            "pubs" => self.pubs = Some(PathBuf::from(value)),
            "links" => self.links = Some(PathBuf::from(value)),
            "out" => self.out = PathBuf::from(value),
            "doc_types" => self.doc_types = parse_doc_types(value)?,
            "strategy" => {
                self.strategy = RelatednessStrategy::from_str(value)
                    .map_err(|e| invalid(e.to_string()))?
            }
            "min_diversified" => {
                self.min_diversified = value
                    .parse()
                    .map_err(|_| invalid(format!("invalid integer `{value}`")))?
            }
            "bin_width" => self.bin_width = parse_decimal(value)?,
            "ed_mean" => {
                self.ed_mean =
                    EdMeanPopulation::from_str(value).map_err(|e| invalid(e.to_string()))?
            }
            "seed" => {
                self.seed = Some(
                    value
                        .parse()
                        .map_err(|_| invalid(format!("invalid integer `{value}`")))?,
                )
            }
            other => return Err(invalid(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Enforce the cross-key invariants.
    pub fn check(&self) -> Result<(), ConfigError> {
        if self.min_diversified < 1 {
            return Err(invalid("min_diversified must be at least 1"));
        }
        if self.bin_width.numer() == &0 || self.bin_width > Rational::new(1, 1) {
            return Err(invalid("bin_width must be in (0, 1]"));
        }
        if self.doc_types.is_empty() {
            return Err(invalid("doc_types must name at least one type"));
        }
        Ok(())
    }

    /// The five corpus paths, or an error naming the missing ones.
    pub fn corpus_paths(&self) -> Result<[&PathBuf; 5], ConfigError> {
        let mut missing = Vec::new();
        let take = |opt: &Option<PathBuf>, name: &str, missing: &mut Vec<String>| {
            if opt.is_none() {
                missing.push(name.to_string());
            }
        };
        take(&self.scheme, "scheme", &mut missing);
        take(&self.fields, "fields", &mut missing);
        take(&self.authors, "authors", &mut missing);
        take(&self.pubs, "pubs", &mut missing);
        take(&self.links, "links", &mut missing);
        if !missing.is_empty() {
            return Err(invalid(format!(
                "missing input path(s): {}",
                missing.join(", ")
            )));
        }
        Ok([
            self.scheme.as_ref().unwrap(),
            self.fields.as_ref().unwrap(),
            self.authors.as_ref().unwrap(),
            self.pubs.as_ref().unwrap(),
            self.links.as_ref().unwrap(),
        ])
    }
}

/// Parse a comma-separated doc-type list (`article,review`).
pub fn parse_doc_types(value: &str) -> Result<BTreeSet<DocType>, ConfigError> {
    let mut set = BTreeSet::new();
    for part in value.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (doc_type, recognized) = DocType::parse(part);
        if !recognized {
            return Err(invalid(format!(
                "unknown doc type `{part}` (expected article, review, letter, proceedings, other)"
            )));
        }
        set.insert(doc_type);
    }
    if set.is_empty() {
        return Err(invalid("doc_types must name at least one type"));
    }
    Ok(set)
}
