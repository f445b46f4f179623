#![no_main]

use libfuzzer_sys::fuzz_target;
use sinkext_core::vector::parse_vector;

fuzz_target!(|text: &str| {
    if let Ok(v) = parse_vector(text) {
        assert_eq!(parse_vector(&v.to_string()), Ok(v));
    }
});
