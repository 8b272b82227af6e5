//! `--checks` lists: accepted lists re-join to an equivalent list.

#![no_main]

use inellipse::verify::parse_checks;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(checks) = parse_checks(text) else { return };
    assert!(!checks.is_empty());
    let joined = checks.iter().map(|c| c.name()).collect::<Vec<_>>().join(",");
    assert_eq!(parse_checks(&joined).unwrap(), checks);
});
