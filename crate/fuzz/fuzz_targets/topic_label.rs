#![no_main]

use libfuzzer_sys::fuzz_target;

use scidiv::topics::Topic;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(topic) = Topic::parse(text) {
        // Accepted labels must round-trip through the canonical form.
        let reparsed = Topic::parse(&topic.label()).expect("canonical label parses");
        assert_eq!(topic, reparsed);
    }
});
