//! Shared fixtures for unit tests.

use std::collections::BTreeMap;

use crate::corpus::{
    parse_authors_csv, parse_fields_csv, parse_links_csv, parse_publications_csv,
    parse_scheme_csv, Corpus,
};
use crate::topics::{Portfolio, Topic};

/// Scheme used by the single-author demo corpus.
pub(crate) const DEMO_SCHEME: &str = "\
sc_code,sc_name,discipline
UK,\"Physics, condensed matter\",Physics
UF,\"Physics, fluids & plasmas\",Physics
UR,\"Physics, mathematical\",Physics
EI,\"Chemistry, physical\",Chemistry
UH,\"Physics, atomic, molecular & chemical\",Physics
UI,\"Physics, multidisciplinary\",Physics
";

pub(crate) const DEMO_FIELDS: &str = "\
field_code,field_name,area_code,area_name
FIS/03,Physics of matter,02,Physics
";

pub(crate) const DEMO_AUTHORS: &str = "\
author_id,field_code
A0001,FIS/03
";

pub(crate) const DEMO_PUBS: &str = "\
pub_id,year,doc_type,sc_codes
243195800122,2006,article,UK
245330200070,2007,article,UK
260574500061,2008,article,UK
251986500011,2007,article,UK
228818200106,2005,article,UF;UR
242408800041,2006,article,UR;UF
231971100043,2005,article,EI;UH
229700800052,2005,article,UI
";

pub(crate) const DEMO_LINKS: &str = "\
author_id,pub_id
A0001,243195800122
A0001,245330200070
A0001,260574500061
A0001,251986500011
A0001,228818200106
A0001,242408800041
A0001,231971100043
A0001,229700800052
";

/// One author in field FIS/03 with eight publications over four topics
/// (UK x4, UF+UR x2, EI+UH x1, UI x1).
pub(crate) fn demo_corpus() -> Corpus {
    Corpus::assemble(
        parse_scheme_csv("scheme", DEMO_SCHEME).unwrap(),
        parse_fields_csv("fields", DEMO_FIELDS).unwrap(),
        parse_authors_csv("authors", DEMO_AUTHORS).unwrap(),
        parse_publications_csv("pubs", DEMO_PUBS).unwrap(),
        parse_links_csv("links", DEMO_LINKS).unwrap(),
    )
    .unwrap()
}

/// Portfolio from `(label, count)` pairs.
pub(crate) fn portfolio(author_id: &str, pairs: &[(&str, u32)]) -> Portfolio {
    let counts: BTreeMap<Topic, u32> = pairs
        .iter()
        .map(|(label, count)| (Topic::parse(label).unwrap(), *count))
        .collect();
    Portfolio::from_counts(author_id, counts).unwrap()
}
