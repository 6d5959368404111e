//! Brute-force indicator oracle, independent of the library's computation
//! path: plain vectors, explicit scans, no shared helpers.

use scidiv::corpus::Corpus;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRecord {
    pub author_id: String,
    pub field_code: String,
    pub n_pubs: u64,
    pub ed: u64,
    pub diversified: bool,
    /// Sorted canonical labels of the most frequent topics.
    pub dominant_topics: Vec<String>,
    /// dr as an unreduced (numerator, denominator) pair.
    pub dr: (u64, u64),
    pub dominant_discipline: String,
    /// rr as an unreduced (numerator, denominator) pair.
    pub rr: (u64, u64),
    pub crosses_disciplines: bool,
}

fn topic_label_of(codes: &std::collections::BTreeSet<String>) -> String {
    let mut sorted: Vec<&str> = codes.iter().map(String::as_str).collect();
    sorted.sort_unstable();
    sorted.join("+")
}

fn bump(counts: &mut Vec<(String, u64)>, key: &str, by: u64) {
    for (name, count) in counts.iter_mut() {
        if name == key {
            *count += by;
            return;
        }
    }
    counts.push((key.to_string(), by));
}

/// Winner by highest count, ties broken by ascending name.
fn winner(counts: &[(String, u64)]) -> (String, u64) {
    let mut sorted = counts.to_vec();
    sorted.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    sorted[0].clone()
}

/// Recompute every publishing author's indicators from scratch.
pub fn oracle_compute(corpus: &Corpus, pure_subset: bool) -> Vec<OracleRecord> {
    // Group publication ids per author by scanning the raw link set.
    let mut per_author: Vec<(String, Vec<String>)> = Vec::new();
    for (author_id, pub_id) in corpus.links() {
        match per_author.iter_mut().find(|(a, _)| a == author_id) {
            Some((_, pubs)) => pubs.push(pub_id.clone()),
            None => per_author.push((author_id.clone(), vec![pub_id.clone()])),
        }
    }
    per_author.sort_by(|a, b| a.0.cmp(&b.0));

    let mut records = Vec::new();
    for (author_id, pub_ids) in per_author {
        let n_pubs = pub_ids.len() as u64;
        // Topic counting via label scan.
        let mut topic_counts: Vec<(String, u64)> = Vec::new();
        for pub_id in &pub_ids {
            let publication = &corpus.publications()[pub_id];
            bump(&mut topic_counts, &topic_label_of(&publication.sc_codes), 1);
        }
        let ed = topic_counts.len() as u64;
        let max_count = topic_counts.iter().map(|(_, c)| *c).max().unwrap();
        let mut dominant_topics: Vec<String> = topic_counts
            .iter()
            .filter(|(_, c)| *c == max_count)
            .map(|(label, _)| label.clone())
            .collect();
        dominant_topics.sort();

        // Discipline of each topic instance: plurality of its codes'
        // disciplines, ties to the lexicographically smaller name.
        let mut assigned: Vec<(String, u64)> = Vec::new();
        for (label, count) in &topic_counts {
            let mut per_topic: Vec<(String, u64)> = Vec::new();
            for code in label.split('+') {
                let discipline = corpus
                    .scheme()
                    .get(code)
                    .expect("corpus is cross-referenced")
                    .discipline
                    .as_str()
                    .to_string();
                bump(&mut per_topic, &discipline, 1);
            }
            let (topic_discipline, _) = winner(&per_topic);
            bump(&mut assigned, &topic_discipline, *count);
        }
        let (dominant_discipline, assigned_count) = winner(&assigned);

        let rr_numerator = if pure_subset {
            let mut pure = 0;
            for (label, count) in &topic_counts {
                let mut disciplines: Vec<String> = label
                    .split('+')
                    .map(|code| {
                        corpus
                            .scheme()
                            .get(code)
                            .unwrap()
                            .discipline
                            .as_str()
                            .to_string()
                    })
                    .collect();
                disciplines.sort();
                disciplines.dedup();
                if disciplines == [dominant_discipline.clone()] {
                    pure += count;
                }
            }
            pure
        } else {
            assigned_count
        };

        let mut all_disciplines: Vec<String> = Vec::new();
        for (label, _) in &topic_counts {
            for code in label.split('+') {
                let d = corpus
                    .scheme()
                    .get(code)
                    .unwrap()
                    .discipline
                    .as_str()
                    .to_string();
                if !all_disciplines.contains(&d) {
                    all_disciplines.push(d);
                }
            }
        }

        let field_code = corpus.authors()[&author_id].field_code.clone();
        records.push(OracleRecord {
            author_id,
            field_code,
            n_pubs,
            ed,
            diversified: ed >= 2,
            dominant_topics,
            dr: (n_pubs - max_count, n_pubs),
            dominant_discipline,
            rr: (rr_numerator, n_pubs),
            crosses_disciplines: all_disciplines.len() >= 2,
        });
    }
    records
}
