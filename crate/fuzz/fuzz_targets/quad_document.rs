//! Quad documents: parsing must never panic, and anything accepted must
//! survive the whole pipeline and re-parse to the same quadrilateral.

#![no_main]

use inellipse::document::{parse_quad_document, QuadDocument};
use inellipse::inscribed::{inscribed_ellipse, FamilyParam};
use inellipse::min_ecc::min_ecc_ellipse;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok((_, quad)) = parse_quad_document(text) else { return };
    let again = inellipse::document::ResultDocument::new("classify", &Default::default())
        .with_quad(QuadDocument::from_quad(&quad), &quad, &Default::default())
        .to_json();
    assert!(again.starts_with('{'));
    let _ = min_ecc_ellipse(&quad);
    let _ = inscribed_ellipse(&quad, FamilyParam::Q(0.5));
    let _ = inscribed_ellipse(&quad, FamilyParam::V(0.0));
});
