#![no_main]

use libfuzzer_sys::fuzz_target;
use relthermo_sweep::parse_config;

// NUL-separated tokens; `--config` is dropped so no file is read.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let args = std::iter::once("thermo").chain(
        text.split('\0')
            .filter(|t| !t.is_empty() && !t.starts_with("--config")),
    );
    let _ = parse_config(args);
});
