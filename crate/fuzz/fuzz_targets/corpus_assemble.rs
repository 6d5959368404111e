#![no_main]

use libfuzzer_sys::fuzz_target;

use scidiv::corpus::{
    parse_authors_csv, parse_fields_csv, parse_links_csv, parse_publications_csv,
    parse_scheme_csv, validate, Corpus,
};

// Five file bodies separated by `\n===\n`, run through the full parse,
// cross-reference and validate path.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let mut parts = text.split("\n===\n");
    let (Some(scheme), Some(fields), Some(authors), Some(pubs), Some(links)) = (
        parts.next(),
        parts.next(),
        parts.next(),
        parts.next(),
        parts.next(),
    ) else {
        return;
    };
    let (Ok(scheme), Ok(registry), Ok(authors), Ok(pubs), Ok(links)) = (
        parse_scheme_csv("scheme", scheme),
        parse_fields_csv("fields", fields),
        parse_authors_csv("authors", authors),
        parse_publications_csv("pubs", pubs),
        parse_links_csv("links", links),
    ) else {
        return;
    };
    if let Ok(corpus) = Corpus::assemble(scheme, registry, authors, pubs, links) {
        // An assembled corpus never reports dangling references; the softer
        // findings must not panic either.
        let _ = validate(&corpus);
    }
});
