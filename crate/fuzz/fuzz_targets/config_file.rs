#![no_main]

//! Fuzzes the key-value config-file parser: must never panic, and accepted
//! files must yield only known keys with non-empty values.

use libfuzzer_sys::fuzz_target;
use ohmic_probe::cli::configfile::KNOWN_KEYS;
use ohmic_probe::cli::parse_config_str;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(pairs) = parse_config_str(text) {
        for (key, value) in pairs {
            assert!(KNOWN_KEYS.contains(&key.as_str()));
            assert!(!value.is_empty());
        }
    }
});
