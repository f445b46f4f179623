#![no_main]

use libfuzzer_sys::fuzz_target;
use sinkext_core::extension::{parse_extension, serialize_extension, simplify, wojciech_vectors};

fuzz_target!(|text: &str| {
    let Ok(ext) = parse_extension(text) else {
        return;
    };
    let again = parse_extension(&serialize_extension(&ext)).expect("serialised extensions parse");
    assert_eq!(ext, again);
    if ext.graph().vertex_count() <= 12 {
        assert_eq!(wojciech_vectors(&simplify(&ext)), wojciech_vectors(&ext));
    }
});
