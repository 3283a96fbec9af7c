#![no_main]

use libfuzzer_sys::fuzz_target;
use modgeom::harness::Report;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = Report::from_json(text) {
        let again = Report::from_json(&report.to_json()).expect("rendered report parses");
        assert_eq!(again.records, report.records);
        assert_eq!(again.config, report.config);
    }
});
