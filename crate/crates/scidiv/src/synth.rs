//! Deterministic synthetic-corpus generator.
//!
//! Generates the five corpus CSV files from a small spec, for property tests
//! and desk-scale reproductions of realistic population shapes. Same spec
//! (and seed) produces byte-identical files on every platform: randomness
//! comes from a fixed splitmix64 recurrence, never from the platform.
//!
//! Spec format: flat `key = value` lines with `[section]` headers, `#`
//! comments allowed. Sections:
//!
//! ```text
//! seed = 42
//! disciplines = Physics|Chemistry          # optional, defaults to a stock list
//! sc_per_discipline = 8
//!
//! [field FIS/03]
//! name = Physics of matter                 # optional
//! area = 02|Physics
//! discipline = Physics                     # home discipline, default round-robin
//! authors = 50
//! pubs = 2..30                             # per-author publication count range
//! topic_pool = 12
//! multi_sc_prob = 0.3
//! cross_discipline_prob = 0.1
//!
//! [sc UK]                                  # explicit subject category
//! name = Physics, condensed matter
//! discipline = Physics
//!
//! [author smith]                           # explicit author with a fixed portfolio
//! field = FIS/03
//! portfolio = UK:4|UF+UR:2|EI+UH:1|UI:1
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use thiserror::Error;

use crate::corpus::{check_sc_code, CorpusFiles};
use crate::topics::Topic;

/// Stock discipline names used when a spec does not define its own list.
pub const DEFAULT_DISCIPLINES: [&str; 13] = [
    "Mathematics",
    "Physics",
    "Chemistry",
    "Earth and space sciences",
    "Biology",
    "Biomedical research",
    "Clinical medicine",
    "Psychology",
    "Engineering",
    "Economics",
    "Law, political and social sciences",
    "Multidisciplinary sciences",
    "Art and humanities",
];

/// splitmix64: a fixed 64-bit recurrence, stable across platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, n)`. The modulo bias is irrelevant at test-data
    /// scale.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    /// Inclusive range draw.
    pub fn in_range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    /// Bernoulli draw with probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        ((self.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SynthError {
    #[error("spec line {line}: {message}")]
    Spec { line: usize, message: String },
    #[error("{message}")]
    Invalid { message: String },
    #[error("cannot write `{file}`: {message}")]
    Io { file: String, message: String },
}

fn spec_error(line: usize, message: impl Into<String>) -> SynthError {
    SynthError::Spec {
        line,
        message: message.into(),
    }
}

fn invalid(message: impl Into<String>) -> SynthError {
    SynthError::Invalid {
        message: message.into(),
    }
}

/// Shape of one generated field.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    pub field_code: String,
    pub name: String,
    pub area_code: String,
    pub area_name: String,
    /// Home discipline; `None` means round-robin over the discipline list.
    pub discipline: Option<String>,
    pub authors: u64,
    pub pubs_min: u64,
    pub pubs_max: u64,
    pub topic_pool: u64,
    pub multi_sc_prob: f64,
    pub cross_discipline_prob: f64,
}

impl FieldSpec {
    fn new(field_code: String) -> Self {
        FieldSpec {
            field_code,
            name: String::new(),
            area_code: String::new(),
            area_name: String::new(),
            discipline: None,
            authors: 0,
            pubs_min: 1,
            pubs_max: 1,
            topic_pool: 1,
            multi_sc_prob: 0.0,
            cross_discipline_prob: 0.0,
        }
    }
}

/// An explicitly specified subject category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScSpec {
    pub code: String,
    pub name: String,
    pub discipline: String,
}

/// An explicitly specified author with a fixed topic multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuthorSpec {
    pub author_id: String,
    pub field_code: String,
    /// Topic label -> publication count.
    pub portfolio: Vec<(String, u32)>,
}

/// Parsed generator spec.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub seed: u64,
    pub disciplines: Vec<String>,
    pub sc_per_discipline: u64,
    pub fields: Vec<FieldSpec>,
    pub explicit_scs: Vec<ScSpec>,
    pub explicit_authors: Vec<AuthorSpec>,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            seed: 0,
            disciplines: DEFAULT_DISCIPLINES.iter().map(|s| s.to_string()).collect(),
            sc_per_discipline: 8,
            fields: Vec::new(),
            explicit_scs: Vec::new(),
            explicit_authors: Vec::new(),
        }
    }
}

enum Section {
    Top,
    Field(usize),
    Sc(usize),
    Author(usize),
}

fn parse_prob(line: usize, value: &str) -> Result<f64, SynthError> {
    let p: f64 = value
        .parse()
        .map_err(|_| spec_error(line, format!("invalid probability `{value}`")))?;
    if !(0.0..=1.0).contains(&p) {
        return Err(spec_error(line, format!("probability `{value}` outside [0,1]")));
    }
    Ok(p)
}

fn parse_u64(line: usize, value: &str) -> Result<u64, SynthError> {
    value
        .parse()
        .map_err(|_| spec_error(line, format!("invalid integer `{value}`")))
}

impl SynthSpec {
    /// Parse the flat `key = value` spec text.
    pub fn parse(text: &str) -> Result<SynthSpec, SynthError> {
        let mut spec = SynthSpec::default();
        let mut section = Section::Top;
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
            if let Some(header) = line.strip_prefix('[') {
                let header = header
                    .strip_suffix(']')
                    .ok_or_else(|| spec_error(line_no, "unterminated section header"))?
                    .trim();
                section = match header.split_once(' ') {
                    Some(("field", code)) => {
                        spec.fields.push(FieldSpec::new(code.trim().to_string()));
                        Section::Field(spec.fields.len() - 1)
                    }
                    Some(("sc", code)) => {
                        let code = code.trim().to_string();
                        check_sc_code(&code).map_err(|m| spec_error(line_no, m))?;
                        spec.explicit_scs.push(ScSpec {
                            code,
                            name: String::new(),
                            discipline: String::new(),
                        });
                        Section::Sc(spec.explicit_scs.len() - 1)
                    }
                    Some(("author", id)) => {
                        spec.explicit_authors.push(AuthorSpec {
                            author_id: id.trim().to_string(),
                            field_code: String::new(),
                            portfolio: Vec::new(),
                        });
                        Section::Author(spec.explicit_authors.len() - 1)
                    }
                    _ => return Err(spec_error(line_no, format!("unknown section `[{header}]`"))),
                };
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| spec_error(line_no, "expected `key = value`"))?;
            let key = key.trim();
            let value = value.trim();
            match &section {
                Section::Top => match key {
                    "seed" => spec.seed = parse_u64(line_no, value)?,
                    "sc_per_discipline" => spec.sc_per_discipline = parse_u64(line_no, value)?,
                    "disciplines" => {
                        spec.disciplines =
                            value.split('|').map(|s| s.trim().to_string()).collect();
                    }
                    other => return Err(spec_error(line_no, format!("unknown key `{other}`"))),
                },
                Section::Field(i) => {
                    let field = &mut spec.fields[*i];
                    match key {
                        "name" => field.name = value.to_string(),
                        "area" => match value.split_once('|') {
                            Some((code, name)) => {
                                field.area_code = code.trim().to_string();
                                field.area_name = name.trim().to_string();
                            }
                            None => {
                                field.area_code = value.to_string();
                                field.area_name = value.to_string();
                            }
                        },
                        "discipline" => field.discipline = Some(value.to_string()),
                        "authors" => field.authors = parse_u64(line_no, value)?,
                        "pubs" => match value.split_once("..") {
                            Some((lo, hi)) => {
                                field.pubs_min = parse_u64(line_no, lo.trim())?;
                                field.pubs_max = parse_u64(line_no, hi.trim())?;
                            }
                            None => {
                                field.pubs_min = parse_u64(line_no, value)?;
                                field.pubs_max = field.pubs_min;
                            }
                        },
                        "topic_pool" => field.topic_pool = parse_u64(line_no, value)?,
                        "multi_sc_prob" => field.multi_sc_prob = parse_prob(line_no, value)?,
                        "cross_discipline_prob" => {
                            field.cross_discipline_prob = parse_prob(line_no, value)?
                        }
                        other => {
                            return Err(spec_error(line_no, format!("unknown field key `{other}`")))
                        }
                    }
                }
                Section::Sc(i) => {
                    let sc = &mut spec.explicit_scs[*i];
                    match key {
                        "name" => sc.name = value.to_string(),
                        "discipline" => sc.discipline = value.to_string(),
                        other => {
                            return Err(spec_error(line_no, format!("unknown sc key `{other}`")))
                        }
                    }
                }
                Section::Author(i) => {
                    let author = &mut spec.explicit_authors[*i];
                    match key {
                        "field" => author.field_code = value.to_string(),
                        "portfolio" => {
                            for part in value.split('|') {
                                let (label, count) = part.trim().split_once(':').ok_or_else(
                                    || spec_error(line_no, "portfolio entries are `TOPIC:count`"),
                                )?;
                                Topic::parse(label.trim())
                                    .map_err(|e| spec_error(line_no, e.to_string()))?;
                                let count: u32 = count.trim().parse().map_err(|_| {
                                    spec_error(line_no, format!("invalid count `{count}`"))
                                })?;
                                author.portfolio.push((label.trim().to_string(), count));
                            }
                        }
                        other => {
                            return Err(spec_error(line_no, format!("unknown author key `{other}`")))
                        }
                    }
                }
            }
        }
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<(), SynthError> {
        if self.disciplines.is_empty() || self.disciplines.iter().any(String::is_empty) {
            return Err(invalid("discipline list must be non-empty names"));
        }
        if self.sc_per_discipline == 0 {
            return Err(invalid("sc_per_discipline must be at least 1"));
        }
        let mut field_codes = BTreeSet::new();
        for field in &self.fields {
            if field.field_code.is_empty() || !field_codes.insert(&field.field_code) {
                return Err(invalid(format!(
                    "field code `{}` is empty or duplicated",
                    field.field_code
                )));
            }
            if field.area_code.is_empty() {
                return Err(invalid(format!(
                    "field `{}` has no area",
                    field.field_code
                )));
            }
            if field.pubs_min < 1 || field.pubs_max < field.pubs_min {
                return Err(invalid(format!(
                    "field `{}` has an invalid pubs range {}..{}",
                    field.field_code, field.pubs_min, field.pubs_max
                )));
            }
            if field.topic_pool < 1 {
                return Err(invalid(format!(
                    "field `{}` needs a topic pool of at least 1",
                    field.field_code
                )));
            }
            if let Some(d) = &field.discipline {
                if !self.disciplines.contains(d) {
                    return Err(invalid(format!(
                        "field `{}` references unknown discipline `{d}`",
                        field.field_code
                    )));
                }
            }
        }
        for author in &self.explicit_authors {
            if author.portfolio.is_empty() || author.portfolio.iter().any(|(_, c)| *c == 0) {
                return Err(invalid(format!(
                    "author `{}` needs a non-empty portfolio with positive counts",
                    author.author_id
                )));
            }
            if !field_codes.contains(&author.field_code) {
                return Err(invalid(format!(
                    "author `{}` references unknown field `{}`",
                    author.author_id, author.field_code
                )));
            }
        }
        for sc in &self.explicit_scs {
            if sc.discipline.is_empty() {
                return Err(invalid(format!("sc `{}` has no discipline", sc.code)));
            }
        }
        Ok(())
    }
}

fn sanitize_code(code: &str) -> String {
    code.chars().filter(|c| c.is_ascii_alphanumeric()).collect()
}

const DOC_TYPE_CYCLE: [&str; 6] = ["article", "article", "article", "review", "letter", "proceedings"];

/// Generate the five corpus files. Deterministic in the spec.
pub fn generate(spec: &SynthSpec) -> Result<CorpusFiles, SynthError> {
    let mut rng = SplitMix64::new(spec.seed);

    // Subject-category pools, one per discipline, plus explicit entries.
    let mut scheme_rows: Vec<(String, String, String)> = Vec::new();
    let mut seen_codes = BTreeSet::new();
    for sc in &spec.explicit_scs {
        if !seen_codes.insert(sc.code.clone()) {
            return Err(invalid(format!("duplicate sc `{}`", sc.code)));
        }
        let name = if sc.name.is_empty() {
            sc.code.clone()
        } else {
            sc.name.clone()
        };
        scheme_rows.push((sc.code.clone(), name, sc.discipline.clone()));
    }
    let mut pools: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (d_idx, discipline) in spec.disciplines.iter().enumerate() {
        let mut pool = Vec::new();
        for k in 0..spec.sc_per_discipline {
            let code = format!("D{:02}S{:02}", d_idx, k);
            if seen_codes.insert(code.clone()) {
                scheme_rows.push((
                    code.clone(),
                    format!("{discipline}, topic {k}"),
                    discipline.clone(),
                ));
            }
            pool.push(code);
        }
        pools.insert(discipline.clone(), pool);
    }
    // Explicit SCs extend their discipline's pool.
    for sc in &spec.explicit_scs {
        pools.entry(sc.discipline.clone()).or_default().push(sc.code.clone());
    }

    let mut field_rows: Vec<(String, String, String, String)> = Vec::new();
    let mut author_rows: Vec<(String, String)> = Vec::new();
    let mut pub_rows: Vec<(String, i32, String, String)> = Vec::new();
    let mut link_rows: Vec<(String, String)> = Vec::new();
    let mut pub_counter: u64 = 0;

    let mut emit_portfolio = |author_id: &str,
                              topics: &[(Topic, u32)],
                              pub_rows: &mut Vec<(String, i32, String, String)>,
                              link_rows: &mut Vec<(String, String)>| {
        for (topic, count) in topics {
            for _ in 0..*count {
                pub_counter += 1;
                let pub_id = format!("P{pub_counter:08}");
                let year = 2004 + (pub_counter % 5) as i32;
                let doc_type = DOC_TYPE_CYCLE[(pub_counter % DOC_TYPE_CYCLE.len() as u64) as usize];
                pub_rows.push((
                    pub_id.clone(),
                    year,
                    doc_type.to_string(),
                    topic.codes().join(";"),
                ));
                link_rows.push((author_id.to_string(), pub_id));
            }
        }
    };

    for (f_idx, field) in spec.fields.iter().enumerate() {
        let discipline = match &field.discipline {
            Some(d) => d.clone(),
            None => spec.disciplines[f_idx % spec.disciplines.len()].clone(),
        };
        let field_name = if field.name.is_empty() {
            format!("Field {}", field.field_code)
        } else {
            field.name.clone()
        };
        field_rows.push((
            field.field_code.clone(),
            field_name,
            field.area_code.clone(),
            field.area_name.clone(),
        ));

        // Build the field's topic pool.
        let home_pool = pools
            .get(&discipline)
            .cloned()
            .filter(|p| !p.is_empty())
            .ok_or_else(|| invalid(format!("empty SC pool for discipline `{discipline}`")))?;
        let other_disciplines: Vec<&String> = spec
            .disciplines
            .iter()
            .filter(|d| **d != discipline)
            .collect();
        let mut topic_pool: Vec<Topic> = Vec::new();
        let mut topic_seen: BTreeSet<Topic> = BTreeSet::new();
        let mut attempts = 0;
        while (topic_pool.len() as u64) < field.topic_pool {
            attempts += 1;
            let first = &home_pool[rng.below(home_pool.len() as u64) as usize];
            let topic = if rng.chance(field.multi_sc_prob) {
                let partner_pool = if !other_disciplines.is_empty()
                    && rng.chance(field.cross_discipline_prob)
                {
                    let d = other_disciplines[rng.below(other_disciplines.len() as u64) as usize];
                    &pools[d.as_str()]
                } else {
                    &home_pool
                };
                let second = &partner_pool[rng.below(partner_pool.len() as u64) as usize];
                if second == first {
                    Topic::from_codes([first.clone()])
                } else {
                    Topic::from_codes([first.clone(), second.clone()])
                }
            } else {
                Topic::from_codes([first.clone()])
            }
            .expect("generated codes are non-empty");
            if topic_seen.insert(topic.clone()) {
                topic_pool.push(topic);
            }
            // The pool request can exceed the number of distinct topics the
            // scheme supports; stop growing once draws stop finding new ones.
            if attempts > 50 * field.topic_pool + 1000 {
                break;
            }
        }

        let field_tag = sanitize_code(&field.field_code);
        for a in 0..field.authors {
            let author_id = format!("{field_tag}-A{a:05}");
            author_rows.push((author_id.clone(), field.field_code.clone()));
            let n_pubs = rng.in_range(field.pubs_min, field.pubs_max);
            let mut counts: BTreeMap<Topic, u32> = BTreeMap::new();
            for _ in 0..n_pubs {
                let topic = topic_pool[rng.below(topic_pool.len() as u64) as usize].clone();
                *counts.entry(topic).or_insert(0) += 1;
            }
            let topics: Vec<(Topic, u32)> = counts.into_iter().collect();
            emit_portfolio(&author_id, &topics, &mut pub_rows, &mut link_rows);
        }
    }

    let mut author_ids: BTreeSet<String> =
        author_rows.iter().map(|(id, _)| id.clone()).collect();
    for author in &spec.explicit_authors {
        if !author_ids.insert(author.author_id.clone()) {
            return Err(invalid(format!("duplicate author `{}`", author.author_id)));
        }
        author_rows.push((author.author_id.clone(), author.field_code.clone()));
        let topics: Vec<(Topic, u32)> = author
            .portfolio
            .iter()
            .map(|(label, count)| (Topic::parse(label).expect("validated at parse"), *count))
            .collect();
        // Explicit portfolios may reference SCs the scheme does not know yet;
        // add them to the home discipline of the author's field... they must
        // resolve, so require explicit [sc] entries instead.
        for (topic, _) in &topics {
            for code in topic.codes() {
                if !seen_codes.contains(code) {
                    return Err(invalid(format!(
                        "author `{}` uses sc `{code}` which is not defined; add an [sc {code}] section",
                        author.author_id
                    )));
                }
            }
        }
        emit_portfolio(&author.author_id, &topics, &mut pub_rows, &mut link_rows);
    }

    let csv = |header: &[&str], rows: Vec<Vec<String>>| -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(header)
            .expect("in-memory csv write");
        for row in rows {
            writer.write_record(&row).expect("in-memory csv write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory csv flush"))
            .expect("csv output is utf-8")
    };

    Ok(CorpusFiles {
        scheme_csv: csv(
            &["sc_code", "sc_name", "discipline"],
            scheme_rows
                .into_iter()
                .map(|(c, n, d)| vec![c, n, d])
                .collect(),
        ),
        fields_csv: csv(
            &["field_code", "field_name", "area_code", "area_name"],
            field_rows
                .into_iter()
                .map(|(c, n, a, an)| vec![c, n, a, an])
                .collect(),
        ),
        authors_csv: csv(
            &["author_id", "field_code"],
            author_rows.into_iter().map(|(a, f)| vec![a, f]).collect(),
        ),
        publications_csv: csv(
            &["pub_id", "year", "doc_type", "sc_codes"],
            pub_rows
                .into_iter()
                .map(|(p, y, t, s)| vec![p, y.to_string(), t, s])
                .collect(),
        ),
        links_csv: csv(
            &["author_id", "pub_id"],
            link_rows.into_iter().map(|(a, p)| vec![a, p]).collect(),
        ),
    })
}

/// Parse a spec file and write the generated corpus into `out_dir`.
pub fn generate_to_dir(spec_text: &str, out_dir: &Path) -> Result<(), SynthError> {
    let spec = SynthSpec::parse(spec_text)?;
    let files = generate(&spec)?;
    std::fs::create_dir_all(out_dir).map_err(|e| SynthError::Io {
        file: out_dir.display().to_string(),
        message: e.to_string(),
    })?;
    files.write_to_dir(out_dir).map_err(|e| SynthError::Io {
        file: out_dir.display().to_string(),
        message: e.to_string(),
    })
}
