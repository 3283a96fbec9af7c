#![no_main]

use libfuzzer_sys::fuzz_target;
use modgeom::harness::{parse_point_set, write_point_set};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = parse_point_set(text) {
        let again = parse_point_set(&write_point_set(&set)).expect("rendered set parses");
        assert_eq!(again, set);
    }
});
