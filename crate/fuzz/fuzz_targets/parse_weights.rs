#![no_main]

use drtool_core::io::{parse_presentation, WeightSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let x = parse_presentation("presentation\ngens a b\nrel a b a- b-\n").unwrap();
    if let Ok(Some(w)) = WeightSpec::parse_uniform(text) {
        let _ = w.resolve(&x);
    }
    if let Ok(w) = WeightSpec::from_json(text) {
        let _ = w.resolve(&x);
    }
});
