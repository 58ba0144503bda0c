#![no_main]

use drtool_core::io::{parse_lot_file, serialize_lot};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(f) = parse_lot_file(text) {
        let again =
            parse_lot_file(&serialize_lot(&f.lot, f.header)).expect("serialized LOT parses");
        assert_eq!(again, f);
    }
});
