#![no_main]

use drtool_core::caps::SearchCaps;
use drtool_core::io::verify_certificate;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let caps = SearchCaps {
        biforest_generators: 8,
        zero_one_corners: 8,
        diagram_faces: 3,
        sub_lot_vertices: 8,
    };
    let _ = verify_certificate(text, &caps);
});
