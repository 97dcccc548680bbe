#![no_main]

use libfuzzer_sys::fuzz_target;
use relthermo_sweep::config::parse_couplings;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(values) = parse_couplings(s) {
            assert!(values.iter().all(|v| v.is_finite() && *v > 0.0));
        }
    }
});
