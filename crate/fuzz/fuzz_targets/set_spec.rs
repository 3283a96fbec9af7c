#![no_main]

use libfuzzer_sys::fuzz_target;
use modgeom::harness::{ReportFormat, SetSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = text.parse::<SetSpec>();
    let _ = text.parse::<ReportFormat>();
});
