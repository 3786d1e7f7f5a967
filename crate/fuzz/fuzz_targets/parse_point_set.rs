#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(set) = bfacet::format::parse(text) {
            let _ = set.config();
            let _ = set.marked();
        }
    }
});
