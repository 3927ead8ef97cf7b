#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cube) = qgal::diagram::cube_from_json(text) {
            let rendered = qgal::diagram::cube_to_json(&cube);
            let back = qgal::diagram::cube_from_json(&rendered).expect("rendered cube reparses");
            assert_eq!(back, cube);
        }
    }
});
