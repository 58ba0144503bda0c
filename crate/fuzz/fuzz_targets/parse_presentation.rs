#![no_main]

use drtool_core::io::{parse_presentation, serialize_presentation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(x) = parse_presentation(text) {
        let s = serialize_presentation(&x).expect("presentations have one vertex");
        assert_eq!(
            parse_presentation(&s).expect("serialized presentation parses"),
            x
        );
    }
});
