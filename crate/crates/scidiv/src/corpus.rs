//! Corpus data model and CSV ingestion.
//!
//! A corpus is built from five CSV files (header row required, columns in
//! fixed order, UTF-8):
//!
//! - `scheme.csv`: `sc_code,sc_name,discipline`
//! - `fields.csv`: `field_code,field_name,area_code,area_name`
//! - `authors.csv`: `author_id,field_code`
//! - `publications.csv`: `pub_id,year,doc_type,sc_codes` (`sc_codes` is
//!   `;`-separated, e.g. `UF;UR`)
//! - `links.csv`: `author_id,pub_id`
//!
//! Loading is strict: duplicate keys, dangling references and malformed rows
//! are errors. [`validate`] re-checks a corpus and reports softer findings
//! (zero-publication authors, unrecognized document types) as diagnostics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

/// Discipline name from the classification scheme (e.g. `Physics`).
///
/// Names are case-sensitive and unique within a scheme.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Discipline(String);

impl Discipline {
    pub fn new(name: impl Into<String>) -> Self {
        Discipline(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Discipline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One subject category of the classification scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubjectCategory {
    pub code: String,
    pub name: String,
    pub discipline: Discipline,
}

/// The classification scheme: subject categories keyed by code, each mapped
/// to exactly one discipline.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Scheme {
    categories: BTreeMap<String, SubjectCategory>,
}

impl Scheme {
    pub fn new(categories: BTreeMap<String, SubjectCategory>) -> Self {
        Scheme { categories }
    }

    pub fn get(&self, code: &str) -> Option<&SubjectCategory> {
        self.categories.get(code)
    }

    pub fn discipline_of(&self, code: &str) -> Option<&Discipline> {
        self.categories.get(code).map(|sc| &sc.discipline)
    }

    pub fn categories(&self) -> impl Iterator<Item = &SubjectCategory> {
        self.categories.values()
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    /// Distinct discipline names present in the scheme.
    pub fn disciplines(&self) -> BTreeSet<&Discipline> {
        self.categories.values().map(|sc| &sc.discipline).collect()
    }
}

/// Countable document types plus a catch-all.
///
/// Unknown strings parse to `Other` so dirty data stays loadable; the
/// original label is preserved on the publication and reported by
/// [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DocType {
    Article,
    Review,
    Letter,
    Proceedings,
    Other,
}

impl DocType {
    /// Case-insensitive parse; returns the parsed type and whether the label
    /// was one of the known values.
    pub fn parse(label: &str) -> (DocType, bool) {
        match label.trim().to_ascii_lowercase().as_str() {
            "article" => (DocType::Article, true),
            "review" => (DocType::Review, true),
            "letter" => (DocType::Letter, true),
            "proceedings" => (DocType::Proceedings, true),
            "other" => (DocType::Other, true),
            _ => (DocType::Other, false),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DocType::Article => "article",
            DocType::Review => "review",
            DocType::Letter => "letter",
            DocType::Proceedings => "proceedings",
            DocType::Other => "other",
        }
    }

    /// The four countable types (everything except `Other`).
    pub fn countable() -> [DocType; 4] {
        [
            DocType::Article,
            DocType::Review,
            DocType::Letter,
            DocType::Proceedings,
        ]
    }
}

impl fmt::Display for DocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One indexed document with its subject-category codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Publication {
    pub pub_id: String,
    pub year: i32,
    pub doc_type: DocType,
    /// Label as it appeared in the input; differs from `doc_type.as_str()`
    /// only in casing or when the label was unrecognized.
    pub doc_type_label: String,
    pub sc_codes: BTreeSet<String>,
}

/// An author, classified in exactly one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Author {
    pub author_id: String,
    pub field_code: String,
}

/// A field (fine-grained classification of authors), belonging to one area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    pub field_code: String,
    pub name: String,
    pub area_code: String,
}

/// An area: a grouping of fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Area {
    pub area_code: String,
    pub name: String,
}

/// Fields and areas parsed from `fields.csv`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FieldRegistry {
    pub fields: BTreeMap<String, Field>,
    pub areas: BTreeMap<String, Area>,
}

/// Fully cross-referenced, immutable corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    scheme: Scheme,
    registry: FieldRegistry,
    authors: BTreeMap<String, Author>,
    publications: BTreeMap<String, Publication>,
    links: BTreeSet<(String, String)>,
    // Derived indexes, kept in sync with `links`.
    pubs_by_author: BTreeMap<String, Vec<String>>,
    authors_by_pub: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{file}: {source}")]
    Io {
        file: PathBuf,
        source: std::io::Error,
    },
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: u64,
        message: String,
    },
    #[error("{file}: expected header `{expected}`, found `{found}`")]
    Header {
        file: String,
        expected: String,
        found: String,
    },
    #[error("duplicate {kind} `{key}`")]
    DuplicateKey { kind: &'static str, key: String },
    #[error("duplicate authorship link `{author_id}` -> `{pub_id}`")]
    DuplicateLink { author_id: String, pub_id: String },
    #[error("{referrer} references unknown {kind} `{key}`")]
    DanglingReference {
        referrer: String,
        kind: &'static str,
        key: String,
    },
    #[error("area `{area_code}` defined with conflicting names `{first}` and `{second}`")]
    ConflictingArea {
        area_code: String,
        first: String,
        second: String,
    },
}

fn parse_error(file: &str, line: u64, message: impl Into<String>) -> CorpusError {
    CorpusError::Parse {
        file: file.to_string(),
        line,
        message: message.into(),
    }
}

/// Subject-category codes appear inside `;`-separated cells, `+`-joined topic
/// labels and `|`-joined report cells, so those separators (and whitespace)
/// are not allowed in a code.
pub fn check_sc_code(code: &str) -> Result<(), String> {
    if code.is_empty() {
        return Err("empty subject-category code".into());
    }
    for ch in code.chars() {
        if ch.is_whitespace() || ch.is_control() || matches!(ch, '+' | ';' | '|' | ',') {
            return Err(format!(
                "subject-category code `{code}` contains forbidden character `{ch}`"
            ));
        }
    }
    Ok(())
}

/// Open a CSV body, check the exact header, and feed each row (with its line
/// number) to `row_fn`.
fn read_rows(
    label: &str,
    text: &str,
    expected_header: &[&str],
    mut row_fn: impl FnMut(u64, &csv::StringRecord) -> Result<(), CorpusError>,
) -> Result<(), CorpusError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| parse_error(label, 1, e.to_string()))?;
    let found: Vec<&str> = headers.iter().collect();
    if found != expected_header {
        return Err(CorpusError::Header {
            file: label.to_string(),
            expected: expected_header.join(","),
            found: found.join(","),
        });
    }
    let arity = expected_header.len();
    for rec in reader.records() {
        match rec {
            Ok(record) => {
                let line = record.position().map(|p| p.line()).unwrap_or(0);
                if record.len() != arity {
                    return Err(parse_error(
                        label,
                        line,
                        format!("expected {arity} columns, found {}", record.len()),
                    ));
                }
                row_fn(line, &record)?;
            }
            Err(e) => {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                return Err(parse_error(label, line, e.to_string()));
            }
        }
    }
    Ok(())
}

fn require_key(label: &str, line: u64, kind: &str, value: &str) -> Result<String, CorpusError> {
    if value.is_empty() {
        Err(parse_error(label, line, format!("empty {kind}")))
    } else {
        Ok(value.to_string())
    }
}

/// Parse `scheme.csv` content.
pub fn parse_scheme_csv(label: &str, text: &str) -> Result<Scheme, CorpusError> {
    let mut categories = BTreeMap::new();
    read_rows(label, text, &["sc_code", "sc_name", "discipline"], |line, record| {
        let code = require_key(label, line, "sc_code", &record[0])?;
        check_sc_code(&code).map_err(|m| parse_error(label, line, m))?;
        let name = record[1].to_string();
        let discipline = require_key(label, line, "discipline", &record[2])?;
        let sc = SubjectCategory {
            code: code.clone(),
            name,
            discipline: Discipline::new(discipline),
        };
        if categories.insert(code.clone(), sc).is_some() {
            return Err(CorpusError::DuplicateKey {
                kind: "sc_code",
                key: code,
            });
        }
        Ok(())
    })?;
    Ok(Scheme::new(categories))
}

/// Parse `fields.csv` content. Rows sharing an `area_code` must agree on the
/// area name.
pub fn parse_fields_csv(label: &str, text: &str) -> Result<FieldRegistry, CorpusError> {
    let mut registry = FieldRegistry::default();
    let header = ["field_code", "field_name", "area_code", "area_name"];
    read_rows(label, text, &header, |line, record| {
        let field_code = require_key(label, line, "field_code", &record[0])?;
        let field_name = record[1].to_string();
        let area_code = require_key(label, line, "area_code", &record[2])?;
        let area_name = record[3].to_string();
        if let Some(existing) = registry.areas.get(&area_code) {
            if existing.name != area_name {
                return Err(CorpusError::ConflictingArea {
                    area_code,
                    first: existing.name.clone(),
                    second: area_name,
                });
            }
        } else {
            registry.areas.insert(
                area_code.clone(),
                Area {
                    area_code: area_code.clone(),
                    name: area_name,
                },
            );
        }
        let field = Field {
            field_code: field_code.clone(),
            name: field_name,
            area_code,
        };
        if registry.fields.insert(field_code.clone(), field).is_some() {
            return Err(CorpusError::DuplicateKey {
                kind: "field_code",
                key: field_code,
            });
        }
        Ok(())
    })?;
    Ok(registry)
}

/// Parse `authors.csv` content.
pub fn parse_authors_csv(label: &str, text: &str) -> Result<BTreeMap<String, Author>, CorpusError> {
    let mut authors = BTreeMap::new();
    read_rows(label, text, &["author_id", "field_code"], |line, record| {
        let author_id = require_key(label, line, "author_id", &record[0])?;
        let field_code = require_key(label, line, "field_code", &record[1])?;
        let author = Author {
            author_id: author_id.clone(),
            field_code,
        };
        if authors.insert(author_id.clone(), author).is_some() {
            return Err(CorpusError::DuplicateKey {
                kind: "author_id",
                key: author_id,
            });
        }
        Ok(())
    })?;
    Ok(authors)
}

/// Parse `publications.csv` content. The `sc_codes` cell is `;`-separated;
/// repeated codes collapse into the set.
pub fn parse_publications_csv(
    label: &str,
    text: &str,
) -> Result<BTreeMap<String, Publication>, CorpusError> {
    let mut publications = BTreeMap::new();
    let header = ["pub_id", "year", "doc_type", "sc_codes"];
    read_rows(label, text, &header, |line, record| {
        let pub_id = require_key(label, line, "pub_id", &record[0])?;
        let year: i32 = record[1]
            .parse()
            .map_err(|_| parse_error(label, line, format!("invalid year `{}`", &record[1])))?;
        let doc_type_label = record[2].to_string();
        let (doc_type, _) = DocType::parse(&doc_type_label);
        let mut sc_codes = BTreeSet::new();
        for raw in record[3].split(';') {
            let code = raw.trim();
            check_sc_code(code).map_err(|m| parse_error(label, line, m))?;
            sc_codes.insert(code.to_string());
        }
        if sc_codes.is_empty() {
            return Err(parse_error(label, line, "publication with no sc_codes"));
        }
        let publication = Publication {
            pub_id: pub_id.clone(),
            year,
            doc_type,
            doc_type_label,
            sc_codes,
        };
        if publications.insert(pub_id.clone(), publication).is_some() {
            return Err(CorpusError::DuplicateKey {
                kind: "pub_id",
                key: pub_id,
            });
        }
        Ok(())
    })?;
    Ok(publications)
}

/// Parse `links.csv` content. Duplicate pairs are an error.
pub fn parse_links_csv(
    label: &str,
    text: &str,
) -> Result<BTreeSet<(String, String)>, CorpusError> {
    let mut links = BTreeSet::new();
    read_rows(label, text, &["author_id", "pub_id"], |line, record| {
        let author_id = require_key(label, line, "author_id", &record[0])?;
        let pub_id = require_key(label, line, "pub_id", &record[1])?;
        if !links.insert((author_id.clone(), pub_id.clone())) {
            return Err(CorpusError::DuplicateLink { author_id, pub_id });
        }
        Ok(())
    })?;
    Ok(links)
}

impl Corpus {
    /// Assemble a corpus from parsed parts, enforcing all cross-references:
    /// author field codes, publication subject categories and both ends of
    /// every authorship link must resolve.
    pub fn assemble(
        scheme: Scheme,
        registry: FieldRegistry,
        authors: BTreeMap<String, Author>,
        publications: BTreeMap<String, Publication>,
        links: BTreeSet<(String, String)>,
    ) -> Result<Corpus, CorpusError> {
        for author in authors.values() {
            if !registry.fields.contains_key(&author.field_code) {
                return Err(CorpusError::DanglingReference {
                    referrer: format!("author `{}`", author.author_id),
                    kind: "field_code",
                    key: author.field_code.clone(),
                });
            }
        }
        for publication in publications.values() {
            for code in &publication.sc_codes {
                if scheme.get(code).is_none() {
                    return Err(CorpusError::DanglingReference {
                        referrer: format!("publication `{}`", publication.pub_id),
                        kind: "sc_code",
                        key: code.clone(),
                    });
                }
            }
        }
        for (author_id, pub_id) in &links {
            if !authors.contains_key(author_id) {
                return Err(CorpusError::DanglingReference {
                    referrer: format!("link `{author_id},{pub_id}`"),
                    kind: "author_id",
                    key: author_id.clone(),
                });
            }
            if !publications.contains_key(pub_id) {
                return Err(CorpusError::DanglingReference {
                    referrer: format!("link `{author_id},{pub_id}`"),
                    kind: "pub_id",
                    key: pub_id.clone(),
                });
            }
        }
        Ok(Corpus::from_parts(
            scheme,
            registry,
            authors,
            publications,
            links,
        ))
    }

    /// Build a corpus without cross-reference checks. [`validate`] reports
    /// whatever is inconsistent.
    pub(crate) fn from_parts(
        scheme: Scheme,
        registry: FieldRegistry,
        authors: BTreeMap<String, Author>,
        publications: BTreeMap<String, Publication>,
        links: BTreeSet<(String, String)>,
    ) -> Corpus {
        let mut pubs_by_author: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut authors_by_pub: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (author_id, pub_id) in &links {
            pubs_by_author
                .entry(author_id.clone())
                .or_default()
                .push(pub_id.clone());
            authors_by_pub
                .entry(pub_id.clone())
                .or_default()
                .push(author_id.clone());
        }
        Corpus {
            scheme,
            registry,
            authors,
            publications,
            links,
            pubs_by_author,
            authors_by_pub,
        }
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn fields(&self) -> &BTreeMap<String, Field> {
        &self.registry.fields
    }

    pub fn areas(&self) -> &BTreeMap<String, Area> {
        &self.registry.areas
    }

    pub fn registry(&self) -> &FieldRegistry {
        &self.registry
    }

    pub fn authors(&self) -> &BTreeMap<String, Author> {
        &self.authors
    }

    pub fn publications(&self) -> &BTreeMap<String, Publication> {
        &self.publications
    }

    pub fn links(&self) -> &BTreeSet<(String, String)> {
        &self.links
    }

    /// Publication ids linked to an author, ascending.
    pub fn pubs_of_author(&self, author_id: &str) -> &[String] {
        self.pubs_by_author
            .get(author_id)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Author ids linked to a publication, ascending.
    pub fn authors_of_pub(&self, pub_id: &str) -> &[String] {
        self.authors_by_pub
            .get(pub_id)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Area code of an author's field, if both resolve.
    pub fn area_of_author(&self, author_id: &str) -> Option<&str> {
        let author = self.authors.get(author_id)?;
        let field = self.registry.fields.get(&author.field_code)?;
        Some(&field.area_code)
    }
}

/// Load and assemble a corpus from the five CSV files.
pub fn load_corpus(
    scheme_path: &Path,
    fields_path: &Path,
    authors_path: &Path,
    pubs_path: &Path,
    links_path: &Path,
) -> Result<Corpus, CorpusError> {
    let read = |path: &Path| -> Result<String, CorpusError> {
        std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            file: path.to_path_buf(),
            source,
        })
    };
    let scheme = parse_scheme_csv(&scheme_path.display().to_string(), &read(scheme_path)?)?;
    let registry = parse_fields_csv(&fields_path.display().to_string(), &read(fields_path)?)?;
    let authors = parse_authors_csv(&authors_path.display().to_string(), &read(authors_path)?)?;
    let publications = parse_publications_csv(&pubs_path.display().to_string(), &read(pubs_path)?)?;
    let links = parse_links_csv(&links_path.display().to_string(), &read(links_path)?)?;
    Corpus::assemble(scheme, registry, authors, publications, links)
}

/// The five corpus files rendered back to CSV, rows in ascending key order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFiles {
    pub scheme_csv: String,
    pub fields_csv: String,
    pub authors_csv: String,
    pub publications_csv: String,
    pub links_csv: String,
}

impl CorpusFiles {
    /// Write the five files into `dir` under their conventional names.
    pub fn write_to_dir(&self, dir: &Path) -> Result<(), CorpusError> {
        let write = |name: &str, content: &str| -> Result<(), CorpusError> {
            let path = dir.join(name);
            std::fs::write(&path, content).map_err(|source| CorpusError::Io { file: path, source })
        };
        write("scheme.csv", &self.scheme_csv)?;
        write("fields.csv", &self.fields_csv)?;
        write("authors.csv", &self.authors_csv)?;
        write("publications.csv", &self.publications_csv)?;
        write("links.csv", &self.links_csv)?;
        Ok(())
    }
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.write_record(&row).expect("in-memory csv write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv flush"))
        .expect("csv output is utf-8")
}

/// Serialize a corpus back to the five-file CSV form. Loading the result
/// reproduces the corpus (same key sets, same link set).
pub fn serialize_corpus(corpus: &Corpus) -> CorpusFiles {
    let mut scheme_rows = vec![vec!["sc_code".into(), "sc_name".into(), "discipline".into()]];
    scheme_rows.extend(corpus.scheme().categories().map(|sc| {
        vec![
            sc.code.clone(),
            sc.name.clone(),
            sc.discipline.as_str().to_string(),
        ]
    }));

    let mut field_rows = vec![vec![
        "field_code".into(),
        "field_name".into(),
        "area_code".into(),
        "area_name".into(),
    ]];
    field_rows.extend(corpus.fields().values().map(|f| {
        let area_name = corpus
            .areas()
            .get(&f.area_code)
            .map(|a| a.name.clone())
            .unwrap_or_default();
        vec![
            f.field_code.clone(),
            f.name.clone(),
            f.area_code.clone(),
            area_name,
        ]
    }));

    let mut author_rows = vec![vec!["author_id".into(), "field_code".into()]];
    author_rows.extend(
        corpus
            .authors()
            .values()
            .map(|a| vec![a.author_id.clone(), a.field_code.clone()]),
    );

    let mut pub_rows = vec![vec![
        "pub_id".into(),
        "year".into(),
        "doc_type".into(),
        "sc_codes".into(),
    ]];
    pub_rows.extend(corpus.publications().values().map(|p| {
        let codes: Vec<&str> = p.sc_codes.iter().map(String::as_str).collect();
        vec![
            p.pub_id.clone(),
            p.year.to_string(),
            p.doc_type_label.clone(),
            codes.join(";"),
        ]
    }));

    let mut link_rows = vec![vec!["author_id".into(), "pub_id".into()]];
    link_rows.extend(
        corpus
            .links()
            .iter()
            .map(|(a, p)| vec![a.clone(), p.clone()]),
    );

    CorpusFiles {
        scheme_csv: csv_string(scheme_rows),
        fields_csv: csv_string(field_rows),
        authors_csv: csv_string(author_rows),
        publications_csv: csv_string(pub_rows),
        links_csv: csv_string(link_rows),
    }
}

/// One validation finding. Diagnostics, not failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    /// A publication references a subject-category code missing from the scheme.
    UnknownSubjectCategory { pub_id: String, sc_code: String },
    /// An author with no authorship links.
    ZeroPublicationAuthor { author_id: String },
    /// A publication with no authorship links.
    ZeroAuthorPublication { pub_id: String },
    /// A publication whose document type was not one of the known values.
    NonCountableDocType { pub_id: String, label: String },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::UnknownSubjectCategory { pub_id, sc_code } => {
                write!(f, "unknown SC code: publication `{pub_id}` uses `{sc_code}`")
            }
            Finding::ZeroPublicationAuthor { author_id } => {
                write!(f, "zero-publication author: `{author_id}`")
            }
            Finding::ZeroAuthorPublication { pub_id } => {
                write!(f, "zero-author publication: `{pub_id}`")
            }
            Finding::NonCountableDocType { pub_id, label } => {
                write!(
                    f,
                    "non-countable doc_type: publication `{pub_id}` has `{label}`"
                )
            }
        }
    }
}

/// Result of [`validate`]: empty iff the corpus passes every check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Diagnostic re-check of a corpus: unknown SC codes, zero-publication
/// authors, zero-author publications and unrecognized document types.
pub fn validate(corpus: &Corpus) -> ValidationReport {
    let mut findings = Vec::new();
    for publication in corpus.publications().values() {
        for code in &publication.sc_codes {
            if corpus.scheme().get(code).is_none() {
                findings.push(Finding::UnknownSubjectCategory {
                    pub_id: publication.pub_id.clone(),
                    sc_code: code.clone(),
                });
            }
        }
    }
    for author in corpus.authors().values() {
        if corpus.pubs_of_author(&author.author_id).is_empty() {
            findings.push(Finding::ZeroPublicationAuthor {
                author_id: author.author_id.clone(),
            });
        }
    }
    for publication in corpus.publications().values() {
        if corpus.authors_of_pub(&publication.pub_id).is_empty() {
            findings.push(Finding::ZeroAuthorPublication {
                pub_id: publication.pub_id.clone(),
            });
        }
    }
    for publication in corpus.publications().values() {
        let (_, recognized) = DocType::parse(&publication.doc_type_label);
        if !recognized {
            findings.push(Finding::NonCountableDocType {
                pub_id: publication.pub_id.clone(),
                label: publication.doc_type_label.clone(),
            });
        }
    }
    ValidationReport { findings }
}

/// New corpus retaining only publications whose doc type is in `allowed`,
/// and the links touching them. Authors are kept even when left with zero
/// publications.
pub fn filter_doc_types(corpus: &Corpus, allowed: &BTreeSet<DocType>) -> Corpus {
    let publications: BTreeMap<String, Publication> = corpus
        .publications()
        .iter()
        .filter(|(_, p)| allowed.contains(&p.doc_type))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let links: BTreeSet<(String, String)> = corpus
        .links()
        .iter()
        .filter(|(_, pub_id)| publications.contains_key(pub_id))
        .cloned()
        .collect();
    Corpus::from_parts(
        corpus.scheme.clone(),
        corpus.registry.clone(),
        corpus.authors.clone(),
        publications,
        links,
    )
}
