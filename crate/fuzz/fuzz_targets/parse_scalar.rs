#![no_main]

use libfuzzer_sys::fuzz_target;
use twouni_core::grid::{format_rational, parse_scalar};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_scalar(text) {
        assert_eq!(parse_scalar(&format_rational(v)).ok(), Some(v));
    }
});
