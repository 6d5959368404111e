#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // The scheme parser must reject malformed input with an error, never a
    // panic.
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = scidiv::corpus::parse_scheme_csv("fuzz", text);
    }
});
