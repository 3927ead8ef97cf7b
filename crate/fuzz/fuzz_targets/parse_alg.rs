#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(a) = qgal::algebra::parse_alg(text) {
            // Accepted input must round-trip exactly.
            let rendered = qgal::algebra::render_alg(&a);
            let back = qgal::algebra::parse_alg(&rendered).expect("rendered algebra reparses");
            assert_eq!(back, a);
        }
    }
});
