#![no_main]

use libfuzzer_sys::fuzz_target;
use modgeom::harness::parse_base_set;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((m, base)) = parse_base_set(text) {
        assert!(base.windows(2).all(|w| w[0] < w[1]));
        assert!(base.iter().all(|&a| a < m.q()));
    }
});
