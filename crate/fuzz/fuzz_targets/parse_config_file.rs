#![no_main]

use libfuzzer_sys::fuzz_target;
use relthermo_sweep::config::resolve;
use relthermo_sweep::parse_config_file;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(raw) = parse_config_file(text) {
            let _ = resolve(raw);
        }
    }
});
