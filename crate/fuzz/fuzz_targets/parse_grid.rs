#![no_main]

use libfuzzer_sys::fuzz_target;
use relthermo_sweep::config::parse_grid;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(grid) = parse_grid(s) {
            let pts = grid.points();
            assert_eq!(pts.len(), grid.count);
            assert!(pts.windows(2).all(|w| w[1] > w[0]));
        }
    }
});
