#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(set) = bfacet::format::parse(text) else { return };
    let Ok(config) = set.config() else { return };
    let written = match set.marked() {
        Ok(mp) => bfacet::format::write_marked(&mp),
        Err(_) => bfacet::format::write(&config, &[]),
    };
    let again = bfacet::format::parse(&written).expect("written files parse");
    assert_eq!(again.config().expect("written points are valid"), config);
    if let Ok(mp) = set.marked() {
        assert_eq!(again.marked().expect("written marks are facets"), mp);
    }
});
