#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(summary) = qgal::report::render_report(text) {
            // Rendering is a pure function of the JSON.
            assert_eq!(qgal::report::render_report(text).unwrap(), summary);
        }
    }
});
