#![no_main]

use libfuzzer_sys::fuzz_target;

use bfacet::classifier::{classify_facet, classify_marked_polygon};
use bfacet::predicates::{is_b_facet, is_marked_b_polytope};

// keeps the brute-force scans cheap
const MAX_POINTS: usize = 12;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(set) = bfacet::format::parse(text) else { return };
    if set.points.len() > MAX_POINTS {
        return;
    }
    let Ok(config) = set.config() else { return };
    if config.ambient_dim() == 4 {
        if let (Ok(class), Ok(v)) = (classify_facet(&config), is_b_facet(&config)) {
            if let Some(s) = v.counterexample {
                assert!(!v.holds);
                assert!(bfacet::is_b_simplex(&s).is_none());
            }
            let _ = class.tag();
        }
    }
    if config.ambient_dim() == 2 {
        if let Ok(mp) = set.marked() {
            if let (Ok(class), Ok(v)) = (classify_marked_polygon(&mp), is_marked_b_polytope(&mp)) {
                assert_eq!(class.is_marked_b(), v.holds);
            }
        }
    }
});
