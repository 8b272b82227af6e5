//! Tolerance overrides: accepted values are finite and in `(0, 1)`.

#![no_main]

use inellipse::tol::parse_tolerance;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Some(v) = parse_tolerance(text) {
        assert!(v.is_finite() && v > 0.0 && v < 1.0);
    }
});
