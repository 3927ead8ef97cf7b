#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cat) = qgal::catalog::parse_catalog(text) {
            let rendered = qgal::catalog::render_catalog(&cat);
            let back = qgal::catalog::parse_catalog(&rendered).expect("rendered catalog reparses");
            assert_eq!(back.entries.len(), cat.entries.len());
        }
    }
});
