#![no_main]

use libfuzzer_sys::fuzz_target;
use sinkext_core::graph::{parse_graph, serialize_graph};

fuzz_target!(|text: &str| {
    if let Ok(g) = parse_graph(text) {
        let again = parse_graph(&serialize_graph(&g)).expect("serialised graphs parse");
        assert_eq!(g, again);
    }
});
