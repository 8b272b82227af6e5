//! Result documents: parse, re-emit, re-parse must be the identity.

#![no_main]

use inellipse::document::parse_result_document;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = parse_result_document(text) else { return };
    let emitted = doc.to_json();
    let reparsed = parse_result_document(&emitted).expect("emitted documents parse");
    assert_eq!(reparsed, doc);
});
