#![no_main]

use drtool_core::caps::SearchCaps;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = SearchCaps::parse(text);
});
