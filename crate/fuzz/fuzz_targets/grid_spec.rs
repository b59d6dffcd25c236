#![no_main]

//! Fuzzes the `start:stop:count[:log]` grid parser: must never panic, and
//! accepted grids must materialize exactly `count` finite values.

use libfuzzer_sys::fuzz_target;
use ohmic_probe::cli::GridSpec;

const MAX_COUNT: usize = 1 << 16;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(grid) = GridSpec::parse(text) {
        if grid.count <= MAX_COUNT {
            let values = grid.values();
            assert_eq!(values.len(), grid.count);
            assert!(values.iter().all(|v| v.is_finite()));
        }
    }
});
