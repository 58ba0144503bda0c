#![no_main]

use drtool_core::io::{parse_angles, parse_presentation, serialize_angles};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let x = parse_presentation("presentation\ngens a b\nrel a b a- b-\n").unwrap();
    if let Ok(a) = parse_angles(text, &x) {
        assert_eq!(parse_angles(&serialize_angles(&a, &x), &x).unwrap(), a);
    }
});
