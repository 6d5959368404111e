#![no_main]

use libfuzzer_sys::fuzz_target;

use scidiv::config::RunConfig;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let mut config = RunConfig::default();
        let _ = config.apply_file(text);
    }
});
