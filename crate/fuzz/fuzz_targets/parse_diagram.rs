#![no_main]

use drtool_core::diagram::check_diagram;
use drtool_core::io::{parse_diagram, parse_presentation, serialize_diagram};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    for pres in [
        "presentation\ngens a\nrel a\nrel a\n",
        "presentation\ngens a b\nrel a b a- b-\n",
    ] {
        let x = parse_presentation(pres).unwrap();
        if let Ok(d) = parse_diagram(text, &x) {
            let _ = check_diagram(&x, &d);
            assert_eq!(parse_diagram(&serialize_diagram(&d, &x), &x).unwrap(), d);
        }
    }
});
