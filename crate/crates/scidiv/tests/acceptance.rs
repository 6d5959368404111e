//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test -p scidiv --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use scidiv::config::RunConfig;
use scidiv::corpus::{
    filter_doc_types, load_corpus, parse_authors_csv, parse_fields_csv, parse_links_csv,
    parse_publications_csv, parse_scheme_csv, Corpus, CorpusFiles,
};
use scidiv::indicators::{compute_all, RelatednessStrategy};
use scidiv::report::{
    area_aggregates_csv, field_aggregates_csv, indicators_csv, percent_exact, render_area_table,
    render_field_table, IndicatorKind,
};
use scidiv::stats::{
    aggregate_areas, aggregate_field, describe, histogram, pearson, quadrant_analysis,
    EdMeanPopulation, FieldAggregate,
};
use scidiv::synth::{generate, SplitMix64, SynthSpec};
use scidiv::topics::build_portfolio;
use scidiv::Rational;

fn pass(n: u32, name: &str) {
    println!("ACCEPTANCE {n} ({name}): PASS");
}

fn load_files(files: &CorpusFiles) -> Corpus {
    Corpus::assemble(
        parse_scheme_csv("scheme", &files.scheme_csv).unwrap(),
        parse_fields_csv("fields", &files.fields_csv).unwrap(),
        parse_authors_csv("authors", &files.authors_csv).unwrap(),
        parse_publications_csv("pubs", &files.publications_csv).unwrap(),
        parse_links_csv("links", &files.links_csv).unwrap(),
    )
    .unwrap()
}

fn fixture_path(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/demo")
        .join(name)
}

#[test]
fn acceptance_1_worked_example_end_to_end() {
    let start = Instant::now();
    let corpus = load_corpus(
        &fixture_path("scheme.csv"),
        &fixture_path("fields.csv"),
        &fixture_path("authors.csv"),
        &fixture_path("publications.csv"),
        &fixture_path("links.csv"),
    )
    .unwrap();
    let records = compute_all(&corpus, RelatednessStrategy::AssignedMajority).unwrap();
    assert_eq!(records.len(), 1);
    let r = &records[0];
    assert_eq!(r.ed, 4);
    assert_eq!(r.dr, Rational::new(1, 2));
    assert_eq!(r.rr, Rational::new(7, 8));
    assert!(r.diversified);
    let dominant: Vec<String> = r.dominant_topics.iter().map(|t| t.label()).collect();
    assert_eq!(dominant, vec!["UK".to_string()]);
    assert_eq!(r.dominant_discipline.as_str(), "Physics");
    assert!(start.elapsed().as_secs_f64() < 1.0, "took {:?}", start.elapsed());
    pass(1, "worked-example corpus end to end");
}

#[test]
fn acceptance_2_large_portfolio_exact_ratios() {
    // 236 publications over 59 topics, dominant topic count 42.
    let mut spec_text = String::from("seed = 5\n");
    for i in 0..59 {
        let _ = writeln!(spec_text, "[sc T{i:02}]\ndiscipline = Physics");
    }
    spec_text.push_str("[field FIS/01]\narea = 02|Physics\nauthors = 0\n");
    spec_text.push_str("[author X]\nfield = FIS/01\nportfolio = T00:42");
    for i in 1..=20 {
        let _ = write!(spec_text, "|T{i:02}:4");
    }
    for i in 21..=58 {
        let _ = write!(spec_text, "|T{i:02}:3");
    }
    spec_text.push('\n');
    let corpus = load_files(&generate(&SynthSpec::parse(&spec_text).unwrap()).unwrap());
    assert_eq!(corpus.publications().len(), 236);
    let records = compute_all(&corpus, RelatednessStrategy::AssignedMajority).unwrap();
    assert_eq!(records[0].ed, 59);
    assert_eq!(records[0].dr, Rational::new(194, 236));
    pass(2, "236-publication portfolio ratios exact");
}

#[test]
fn acceptance_3_field_share_integer_rounding() {
    // 31 professors, 16 diversified: 16/31 renders as 52%.
    let mut spec_text = String::from(
        "seed = 9\n[sc T00]\ndiscipline = Physics\n[sc T01]\ndiscipline = Physics\n\
         [field FIS/08]\narea = 02|Physics\nauthors = 0\n",
    );
    for i in 0..16 {
        let _ = writeln!(spec_text, "[author D{i:02}]\nfield = FIS/08\nportfolio = T00:1|T01:1");
    }
    for i in 0..15 {
        let _ = writeln!(spec_text, "[author S{i:02}]\nfield = FIS/08\nportfolio = T00:1");
    }
    let corpus = load_files(&generate(&SynthSpec::parse(&spec_text).unwrap()).unwrap());
    let records = compute_all(&corpus, RelatednessStrategy::AssignedMajority).unwrap();
    let aggregate = aggregate_field(&records, "FIS/08", 10, EdMeanPopulation::All).unwrap();
    assert_eq!(aggregate.n_professors, 31);
    assert_eq!(aggregate.n_diversified, 16);
    assert_eq!(aggregate.pct_diversified, Rational::new(16, 31));
    assert_eq!(percent_exact(&aggregate.pct_diversified), 52);
    pass(3, "16-of-31 field share rounds to 52%");
}

fn random_corpus_spec(i: u64) -> String {
    let n_fields = 1 + (i % 3);
    let authors_per_field = 50 / n_fields;
    let pubs_max = 1 + (i % 30);
    let multi = (i % 7) as f64 / 10.0;
    let cross = (i % 5) as f64 / 10.0;
    let topic_pool = 3 + (i % 10);
    let mut text = format!("seed = {}\n", 1000 + i);
    for f in 0..n_fields {
        let _ = writeln!(
            text,
            "[field F{i:03}-{f}]\narea = A{}|Area {}\nauthors = {authors_per_field}\n\
             pubs = 1..{pubs_max}\ntopic_pool = {topic_pool}\n\
             multi_sc_prob = {multi}\ncross_discipline_prob = {cross}",
            f % 2,
            f % 2
        );
    }
    text
}

#[test]
fn acceptance_4_oracle_equivalence_100_corpora() {
    let start = Instant::now();
    for i in 0..100u64 {
        let corpus = load_files(&generate(&SynthSpec::parse(&random_corpus_spec(i)).unwrap()).unwrap());
        for (strategy, pure) in [
            (RelatednessStrategy::AssignedMajority, false),
            (RelatednessStrategy::PureSubset, true),
        ] {
            let records = compute_all(&corpus, strategy).unwrap();
            let expected = common::oracle_compute(&corpus, pure);
            assert_eq!(records.len(), expected.len(), "seed {i}");
            for (got, want) in records.iter().zip(&expected) {
                assert_eq!(got.author_id, want.author_id, "seed {i}");
                assert_eq!(got.field_code, want.field_code, "seed {i}");
                assert_eq!(u64::from(got.n_pubs), want.n_pubs, "seed {i}");
                assert_eq!(u64::from(got.ed), want.ed, "seed {i}");
                assert_eq!(got.diversified, want.diversified, "seed {i}");
                let got_topics: Vec<String> =
                    got.dominant_topics.iter().map(|t| t.label()).collect();
                assert_eq!(got_topics, want.dominant_topics, "seed {i}");
                assert_eq!(got.dr, Rational::new(want.dr.0, want.dr.1), "seed {i}");
                assert_eq!(
                    got.dominant_discipline.as_str(),
                    want.dominant_discipline,
                    "seed {i} author {}",
                    want.author_id
                );
                assert_eq!(got.rr, Rational::new(want.rr.0, want.rr.1), "seed {i}");
                assert_eq!(got.crosses_disciplines, want.crosses_disciplines, "seed {i}");
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    pass(4, "oracle equivalence on 100 random corpora");
}

#[test]
fn acceptance_5_invariant_suite_100k_authors() {
    let mut authors_checked = 0usize;
    for chunk in 0..4u64 {
        let mut text = format!("seed = {}\n", 77 + chunk);
        for f in 0..5 {
            let _ = writeln!(
                text,
                "[field C{chunk}F{f}]\narea = A{}|Area {}\nauthors = 5000\npubs = 1..6\n\
                 topic_pool = 9\nmulti_sc_prob = 0.4\ncross_discipline_prob = 0.3",
                f % 3,
                f % 3
            );
        }
        let corpus = load_files(&generate(&SynthSpec::parse(&text).unwrap()).unwrap());
        let records = compute_all(&corpus, RelatednessStrategy::AssignedMajority).unwrap();
        authors_checked += records.len();

        // Per-author invariants.
        for r in &records {
            assert_eq!(r.diversified, r.ed >= 2);
            assert_eq!(r.diversified, r.dr > Rational::new(0, 1));
            assert!(r.ed >= 1 && r.ed <= r.n_pubs);
            let portfolio = build_portfolio(&corpus, &r.author_id).unwrap();
            assert_eq!(
                r.dr,
                Rational::new(
                    u64::from(portfolio.n_pubs - portfolio.max_count()),
                    u64::from(portfolio.n_pubs)
                )
            );
            assert!(r.rr > Rational::new(0, 1) && r.rr <= Rational::new(1, 1));
            assert!(r.dr <= Rational::new(u64::from(r.n_pubs - 1), u64::from(r.n_pubs)));
            assert_eq!(r.ed_per_pub, Rational::new(u64::from(r.ed), u64::from(r.n_pubs)));
        }

        // Per-field invariants: quadrants and histograms.
        let mut by_field: BTreeMap<&str, Vec<scidiv::indicators::AuthorIndicators>> =
            BTreeMap::new();
        for r in &records {
            by_field.entry(r.field_code.as_str()).or_default().push(r.clone());
        }
        let mut aggregates: Vec<FieldAggregate> = Vec::new();
        for (field_code, members) in &by_field {
            let n_diversified = members.iter().filter(|r| r.diversified).count();
            assert!(n_diversified <= members.len());
            if n_diversified >= 2 {
                let quadrants = quadrant_analysis(members).unwrap();
                assert_eq!(quadrants.counts().iter().sum::<usize>(), n_diversified);
            }
            if n_diversified > 0 {
                let dr_values: Vec<Rational> = members
                    .iter()
                    .filter(|r| r.diversified)
                    .map(|r| r.dr)
                    .collect();
                let hist = histogram(&dr_values, Rational::new(1, 20)).unwrap();
                assert_eq!(hist.total_count(), dr_values.len());
            }
            aggregates.push(
                aggregate_field(&records, field_code, 10, EdMeanPopulation::All).unwrap(),
            );
        }

        // Area invariants: averages inside the member-field range.
        for area in aggregate_areas(&corpus, &aggregates) {
            for summary in [
                &area.pct_diversified,
                &area.ed,
                &area.dr,
                &area.rr,
                &area.pct_cross_discipline,
            ] {
                assert!(summary.min_value <= summary.average && summary.average <= summary.max_value);
            }
        }
    }
    assert_eq!(authors_checked, 100_000);
    pass(5, "invariants hold across 100000 generated authors");
}

#[test]
fn acceptance_6_statistical_primitives() {
    fn textbook_pearson(xs: &[f64], ys: &[f64]) -> f64 {
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let vx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let vy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
        cov / (vx.sqrt() * vy.sqrt())
    }

    let mut rng = SplitMix64::new(20260810);
    for _ in 0..1000 {
        let xs: Vec<f64> = (0..20).map(|_| rng.below(10_000) as f64).collect();
        let ys: Vec<f64> = (0..20).map(|_| rng.below(10_000) as f64).collect();
        match pearson(&xs, &ys).unwrap() {
            Some(r) => {
                let expected = textbook_pearson(&xs, &ys);
                assert!(
                    (r - expected).abs() < 1e-12,
                    "pearson {r} vs oracle {expected}"
                );
            }
            None => {
                // Oracle divides by zero in this case; definedness must match.
                assert!(!textbook_pearson(&xs, &ys).is_finite());
            }
        }
        let neg: Vec<f64> = xs.iter().map(|v| -v).collect();
        if xs.iter().any(|v| *v != xs[0]) {
            assert_eq!(pearson(&xs, &xs).unwrap(), Some(1.0));
            assert_eq!(pearson(&xs, &neg).unwrap(), Some(-1.0));
        }
    }

    // describe reproduces constructed moments exactly on integer inputs.
    let values: Vec<Rational> = [1u64, 2, 3, 4, 5, 6, 7, 8, 17, 18]
        .iter()
        .map(|v| Rational::from_integer(*v))
        .collect();
    let stats = describe(&values).unwrap();
    assert_eq!(stats.mean, 7.1);
    let values: Vec<Rational> = [0u64, 2, 4].iter().map(|v| Rational::from_integer(*v)).collect();
    let stats = describe(&values).unwrap();
    assert_eq!(stats.mean, 2.0);
    assert_eq!(stats.std, 2.0);
    let constant: Vec<Rational> = std::iter::repeat(Rational::new(3, 4)).take(9).collect();
    let stats = describe(&constant).unwrap();
    assert_eq!(stats.mean, 0.75);
    assert_eq!(stats.std, 0.0);
    assert_eq!(stats.cv, Some(0.0));
    pass(6, "statistical primitives match oracles");
}

/// What the `compute` and `report` subcommands write, minus the CLI shell.
fn run_pipeline(input_dir: &Path, out_dir: &Path) {
    let config = RunConfig::default();
    let corpus = load_corpus(
        &input_dir.join("scheme.csv"),
        &input_dir.join("fields.csv"),
        &input_dir.join("authors.csv"),
        &input_dir.join("publications.csv"),
        &input_dir.join("links.csv"),
    )
    .unwrap();
    let corpus = filter_doc_types(&corpus, &config.doc_types);
    let records = compute_all(&corpus, config.strategy).unwrap();
    let mut field_codes: Vec<&String> = records.iter().map(|r| &r.field_code).collect();
    field_codes.sort();
    field_codes.dedup();
    let aggregates: Vec<FieldAggregate> = field_codes
        .iter()
        .map(|fc| aggregate_field(&records, fc, config.min_diversified, config.ed_mean).unwrap())
        .collect();
    let areas = aggregate_areas(&corpus, &aggregates);
    std::fs::create_dir_all(out_dir).unwrap();
    std::fs::write(out_dir.join("indicators.csv"), indicators_csv(&records, &corpus)).unwrap();
    std::fs::write(
        out_dir.join("field_aggregates.csv"),
        field_aggregates_csv(&aggregates),
    )
    .unwrap();
    std::fs::write(out_dir.join("area_aggregates.csv"), area_aggregates_csv(&areas)).unwrap();
    for kind in [IndicatorKind::Ed, IndicatorKind::Dr, IndicatorKind::Rr] {
        let mut by_area: BTreeMap<&str, Vec<FieldAggregate>> = BTreeMap::new();
        for aggregate in &aggregates {
            let area = corpus.fields()[&aggregate.field_code].area_code.as_str();
            by_area.entry(area).or_default().push(aggregate.clone());
        }
        for (area, members) in &by_area {
            let table = render_field_table(members, kind, config.min_diversified);
            let name = format!("field_{}_{}_table", area.replace('/', "-"), kind.as_str());
            std::fs::write(out_dir.join(format!("{name}.txt")), table.to_text()).unwrap();
            std::fs::write(out_dir.join(format!("{name}.csv")), table.to_csv()).unwrap();
            std::fs::write(out_dir.join(format!("{name}.md")), table.to_markdown()).unwrap();
        }
        let table = render_area_table(&areas, kind);
        let name = format!("area_{}_table", kind.as_str());
        std::fs::write(out_dir.join(format!("{name}.txt")), table.to_text()).unwrap();
        std::fs::write(out_dir.join(format!("{name}.csv")), table.to_csv()).unwrap();
        std::fs::write(out_dir.join(format!("{name}.md")), table.to_markdown()).unwrap();
    }
}

fn dir_snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut files = BTreeMap::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        files.insert(
            entry.file_name().to_string_lossy().to_string(),
            std::fs::read(entry.path()).unwrap(),
        );
    }
    files
}

#[test]
fn acceptance_7_scale_and_determinism() {
    // 60 fields x 500 authors x 6 publications: 30,000 authors and 180,000
    // publications.
    let mut text = String::from("seed = 2468\n");
    for f in 0..60 {
        let _ = writeln!(
            text,
            "[field SC{f:02}]\narea = A{}|Area {}\nauthors = 500\npubs = 6..6\n\
             topic_pool = 10\nmulti_sc_prob = 0.35\ncross_discipline_prob = 0.25",
            f % 9,
            f % 9
        );
    }
    let files = generate(&SynthSpec::parse(&text).unwrap()).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let input_dir = tmp.path().join("input");
    std::fs::create_dir_all(&input_dir).unwrap();
    files.write_to_dir(&input_dir).unwrap();

    let start = Instant::now();
    run_pipeline(&input_dir, &tmp.path().join("run1"));
    let first_run = start.elapsed();
    run_pipeline(&input_dir, &tmp.path().join("run2"));

    let snap1 = dir_snapshot(&tmp.path().join("run1"));
    let snap2 = dir_snapshot(&tmp.path().join("run2"));
    assert_eq!(snap1.len(), snap2.len());
    for (name, bytes) in &snap1 {
        assert_eq!(Some(bytes), snap2.get(name).as_deref(), "file {name} differs");
    }
    // Sanity: the corpus really is at the stated magnitude.
    let indicators = String::from_utf8(snap1["indicators.csv"].clone()).unwrap();
    assert_eq!(indicators.lines().count(), 1 + 30_000);
    assert!(
        first_run.as_secs_f64() < 30.0,
        "compute+report took {first_run:?}"
    );
    pass(7, "30k-author run under 30s, byte-identical reruns");
}

#[test]
fn acceptance_8_field_omission_rule() {
    let mut text = String::from(
        "seed = 12\n[sc T00]\ndiscipline = Physics\n[sc T01]\ndiscipline = Physics\n\
         [field BIG]\narea = 01|One\nauthors = 0\n[field SMALL]\narea = 01|One\nauthors = 0\n",
    );
    for i in 0..12 {
        let _ = writeln!(text, "[author B{i:02}]\nfield = BIG\nportfolio = T00:1|T01:1");
    }
    for i in 0..3 {
        let _ = writeln!(text, "[author S{i:02}]\nfield = SMALL\nportfolio = T00:1|T01:1");
    }
    let corpus = load_files(&generate(&SynthSpec::parse(&text).unwrap()).unwrap());
    let records = compute_all(&corpus, RelatednessStrategy::AssignedMajority).unwrap();
    let aggregates = vec![
        aggregate_field(&records, "BIG", 10, EdMeanPopulation::All).unwrap(),
        aggregate_field(&records, "SMALL", 10, EdMeanPopulation::All).unwrap(),
    ];
    assert!(!aggregates[0].omitted);
    assert!(aggregates[1].omitted);
    for kind in [IndicatorKind::Ed, IndicatorKind::Dr, IndicatorKind::Rr] {
        let table = render_field_table(&aggregates, kind, 10);
        assert_eq!(table.rows.len(), 1, "only the big field is rendered");
        assert_eq!(table.rows[0][0], "BIG");
        assert_eq!(table.footnotes.len(), 1);
        assert!(table.footnotes[0].contains("1 field(s)"));
        assert!(table.footnotes[0].contains("10"));
    }
    // The omitted field is excluded from the area aggregation too.
    let areas = aggregate_areas(&corpus, &aggregates);
    assert_eq!(areas.len(), 1);
    assert_eq!(areas[0].n_fields, 1);
    assert_eq!(areas[0].ed.min_field, "BIG");
    pass(8, "fields under the diversified threshold are omitted");
}
