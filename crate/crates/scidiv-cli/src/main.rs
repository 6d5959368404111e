//! `scidiv`: compute research-diversification indicators from a CSV corpus.
//!
//! Exit codes: 0 success, 1 validation findings, 2 usage or I/O errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use scidiv::config::{parse_decimal, parse_doc_types, RunConfig};
use scidiv::corpus::{filter_doc_types, load_corpus, validate, Corpus};
use scidiv::indicators::{compute_all, AuthorIndicators, RelatednessStrategy};
use scidiv::report::{
    area_aggregates_csv, emit_histogram_svg, emit_scatter_svg, export_scatter,
    field_aggregates_csv, histogram_csv, indicators_csv, render_area_table, render_field_table,
    scatter_csv, IndicatorKind, Table,
};
use scidiv::stats::{
    aggregate_areas, aggregate_field, histogram, EdMeanPopulation, FieldAggregate,
};
use scidiv::synth::SynthSpec;
use scidiv::Rational;

#[derive(Parser)]
#[command(
    name = "scidiv",
    version,
    about = "Research-diversification indicators from publication portfolios"
)]
struct Cli {
    /// Flat `key = value` config file; flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Overrides {
    /// Classification scheme CSV (sc_code,sc_name,discipline).
    #[arg(long, global = true)]
    scheme: Option<PathBuf>,
    /// Fields CSV (field_code,field_name,area_code,area_name).
    #[arg(long, global = true)]
    fields: Option<PathBuf>,
    /// Authors CSV (author_id,field_code).
    #[arg(long, global = true)]
    authors: Option<PathBuf>,
    /// Publications CSV (pub_id,year,doc_type,sc_codes).
    #[arg(long, global = true)]
    pubs: Option<PathBuf>,
    /// Authorship links CSV (author_id,pub_id).
    #[arg(long, global = true)]
    links: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Comma-separated countable doc types (default article,review,letter,proceedings).
    #[arg(long, global = true)]
    doc_types: Option<String>,
    /// Relatedness strategy: assigned-majority or pure-subset.
    #[arg(long, global = true)]
    strategy: Option<String>,
    /// Fields with fewer diversified professors are omitted from tables.
    #[arg(long, global = true)]
    min_diversified: Option<u32>,
    /// Histogram bin width on the [0,1] scale, e.g. 0.05.
    #[arg(long, global = true)]
    bin_width: Option<String>,
    /// Population for mean/min/max ED: all or diversified.
    #[arg(long, global = true)]
    ed_mean: Option<String>,
    /// Generator seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check corpus consistency and report findings.
    Validate,
    /// Compute per-author indicators and write indicators.csv.
    Compute,
    /// Write indicator, aggregate and table files.
    Report {
        /// Indicator to render: ed, dr, rr or all.
        #[arg(long, default_value = "all")]
        indicator: String,
        /// Table format: txt, csv, md or all.
        #[arg(long, default_value = "all")]
        format: String,
    },
    /// Export the ED-vs-publications scatter of one field.
    Scatter {
        /// Field code, e.g. FIS/03.
        field: String,
    },
    /// Export a histogram of a ratio indicator for one field.
    Hist {
        /// Field code, e.g. FIS/03.
        field: String,
        /// One of dr, rr, ed-per-pub.
        indicator: String,
    },
    /// Generate a synthetic corpus from a spec file.
    Synth {
        /// Generator spec (flat key = value with sections).
        #[arg(long)]
        spec: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config `{}`", path.display()))?;
        config
            .apply_file(&text)
            .with_context(|| format!("config `{}`", path.display()))?;
    }
    let o = &cli.overrides;
    if let Some(p) = &o.scheme {
        config.scheme = Some(p.clone());
    }
    if let Some(p) = &o.fields {
        config.fields = Some(p.clone());
    }
    if let Some(p) = &o.authors {
        config.authors = Some(p.clone());
    }
    if let Some(p) = &o.pubs {
        config.pubs = Some(p.clone());
    }
    if let Some(p) = &o.links {
        config.links = Some(p.clone());
    }
    if let Some(p) = &o.out {
        config.out = p.clone();
    }
    if let Some(v) = &o.doc_types {
        config.doc_types = parse_doc_types(v)?;
    }
    if let Some(v) = &o.strategy {
        config.strategy = RelatednessStrategy::from_str(v)?;
    }
    if let Some(v) = o.min_diversified {
        config.min_diversified = v;
    }
    if let Some(v) = &o.bin_width {
        config.bin_width = parse_decimal(v)?;
    }
    if let Some(v) = &o.ed_mean {
        config.ed_mean = EdMeanPopulation::from_str(v)?;
    }
    if let Some(v) = o.seed {
        config.seed = Some(v);
    }
    config.check()?;
    Ok(config)
}

fn load(config: &RunConfig) -> Result<Corpus> {
    let [scheme, fields, authors, pubs, links] = config.corpus_paths()?;
    Ok(load_corpus(scheme, fields, authors, pubs, links)?)
}

fn load_filtered(config: &RunConfig) -> Result<Corpus> {
    Ok(filter_doc_types(&load(config)?, &config.doc_types))
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<()> {
    fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory `{}`", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, content).with_context(|| format!("cannot write `{}`", path.display()))?;
    Ok(())
}

/// Field codes may contain `/`; keep filenames flat.
fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '-' })
        .collect()
}

fn compute_records(config: &RunConfig, corpus: &Corpus) -> Result<Vec<AuthorIndicators>> {
    Ok(compute_all(corpus, config.strategy)?)
}

fn field_aggregates(
    config: &RunConfig,
    records: &[AuthorIndicators],
) -> Result<Vec<FieldAggregate>> {
    let mut field_codes: Vec<&String> = records.iter().map(|r| &r.field_code).collect();
    field_codes.sort();
    field_codes.dedup();
    let mut aggregates = Vec::new();
    for field_code in field_codes {
        aggregates.push(aggregate_field(
            records,
            field_code,
            config.min_diversified,
            config.ed_mean,
        )?);
    }
    Ok(aggregates)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = build_config(&cli)?;
    match &cli.command {
        Command::Validate => {
            let corpus = load(&config)?;
            let report = validate(&corpus);
            if report.is_empty() {
                println!(
                    "corpus valid: {} authors, {} publications, {} links",
                    corpus.authors().len(),
                    corpus.publications().len(),
                    corpus.links().len()
                );
                Ok(ExitCode::SUCCESS)
            } else {
                for finding in &report.findings {
                    println!("{finding}");
                }
                println!("{} finding(s)", report.findings.len());
                Ok(ExitCode::from(1))
            }
        }
        Command::Compute => {
            let corpus = load_filtered(&config)?;
            let records = compute_records(&config, &corpus)?;
            write_file(&config.out, "indicators.csv", &indicators_csv(&records, &corpus))?;
            println!(
                "wrote indicators for {} publishing authors to {}",
                records.len(),
                config.out.join("indicators.csv").display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { indicator, format } => {
            let kinds: Vec<IndicatorKind> = match indicator.as_str() {
                "all" => vec![IndicatorKind::Ed, IndicatorKind::Dr, IndicatorKind::Rr],
                other => vec![IndicatorKind::from_str(other)?],
            };
            let formats: Vec<&str> = match format.as_str() {
                "all" => vec!["txt", "csv", "md"],
                "txt" | "csv" | "md" => vec![format.as_str()],
                other => bail!("unknown format `{other}` (expected txt, csv, md or all)"),
            };
            let corpus = load_filtered(&config)?;
            let records = compute_records(&config, &corpus)?;
            let aggregates = field_aggregates(&config, &records)?;
            let areas = aggregate_areas(&corpus, &aggregates);
            write_file(&config.out, "indicators.csv", &indicators_csv(&records, &corpus))?;
            write_file(
                &config.out,
                "field_aggregates.csv",
                &field_aggregates_csv(&aggregates),
            )?;
            write_file(&config.out, "area_aggregates.csv", &area_aggregates_csv(&areas))?;
            let write_table = |name: &str, table: &Table| -> Result<()> {
                for fmt in &formats {
                    let content = match *fmt {
                        "txt" => table.to_text(),
                        "csv" => table.to_csv(),
                        _ => table.to_markdown(),
                    };
                    write_file(&config.out, &format!("{name}_table.{fmt}"), &content)?;
                }
                Ok(())
            };
            for kind in &kinds {
                // One field table per area; area tables cover the whole corpus.
                let mut by_area: Vec<(&str, Vec<FieldAggregate>)> = Vec::new();
                for aggregate in &aggregates {
                    let area = corpus
                        .fields()
                        .get(&aggregate.field_code)
                        .map(|f| f.area_code.as_str())
                        .unwrap_or("unknown");
                    match by_area.iter_mut().find(|(a, _)| *a == area) {
                        Some((_, list)) => list.push(aggregate.clone()),
                        None => by_area.push((area, vec![aggregate.clone()])),
                    }
                }
                by_area.sort_by(|a, b| a.0.cmp(b.0));
                for (area_code, members) in &by_area {
                    let table = render_field_table(members, *kind, config.min_diversified);
                    write_table(
                        &format!("field_{}_{}", sanitize(area_code), kind.as_str()),
                        &table,
                    )?;
                }
                let table = render_area_table(&areas, *kind);
                write_table(&format!("area_{}", kind.as_str()), &table)?;
            }
            println!(
                "wrote report for {} fields in {} areas to {}",
                aggregates.len(),
                areas.len(),
                config.out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Scatter { field } => {
            let corpus = load_filtered(&config)?;
            let records = compute_records(&config, &corpus)?;
            let series = export_scatter(&records, field)?;
            let base = format!("scatter_{}", sanitize(field));
            write_file(&config.out, &format!("{base}.csv"), &scatter_csv(&series))?;
            write_file(&config.out, &format!("{base}.svg"), &emit_scatter_svg(&series))?;
            println!(
                "wrote {} scatter points for {field} to {}",
                series.points.len(),
                config.out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Hist { field, indicator } => {
            let corpus = load_filtered(&config)?;
            let records = compute_records(&config, &corpus)?;
            let members: Vec<&AuthorIndicators> = records
                .iter()
                .filter(|r| &r.field_code == field)
                .collect();
            if members.is_empty() {
                bail!("no publishing authors in field `{field}`");
            }
            // dr and rr are diversified-professor indicators; ed-per-pub is
            // defined for every professor.
            let values: Vec<Rational> = match indicator.as_str() {
                "dr" => members.iter().filter(|r| r.diversified).map(|r| r.dr).collect(),
                "rr" => members.iter().filter(|r| r.diversified).map(|r| r.rr).collect(),
                "ed-per-pub" => members.iter().map(|r| r.ed_per_pub).collect(),
                other => bail!("unknown histogram indicator `{other}` (expected dr, rr or ed-per-pub)"),
            };
            if values.is_empty() {
                bail!("field `{field}` has no diversified professors");
            }
            let hist = histogram(&values, config.bin_width)?;
            let base = format!("hist_{}_{}", sanitize(field), sanitize(indicator));
            write_file(&config.out, &format!("{base}.csv"), &histogram_csv(&hist))?;
            let title = format!("Distribution of {indicator} for professors of {field}");
            write_file(&config.out, &format!("{base}.svg"), &emit_histogram_svg(&hist, &title))?;
            println!("wrote {} bins for {field}/{indicator} to {}", hist.bins.len(), config.out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Synth { spec } => {
            let text = fs::read_to_string(spec)
                .with_context(|| format!("cannot read spec `{}`", spec.display()))?;
            let mut parsed = SynthSpec::parse(&text)?;
            if let Some(seed) = config.seed {
                parsed.seed = seed;
            }
            let files = scidiv::synth::generate(&parsed)?;
            fs::create_dir_all(&config.out).with_context(|| {
                format!("cannot create output directory `{}`", config.out.display())
            })?;
            files.write_to_dir(&config.out)?;
            println!("wrote synthetic corpus to {}", config.out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}
