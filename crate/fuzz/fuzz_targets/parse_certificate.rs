#![no_main]

use libfuzzer_sys::fuzz_target;
use sinkext_core::certificate::parse_certificate;

fuzz_target!(|text: &str| {
    if let Ok(cert) = parse_certificate(text) {
        assert_eq!(parse_certificate(&cert.serialize()), Ok(cert));
    }
});
