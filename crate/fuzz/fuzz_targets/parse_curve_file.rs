#![no_main]

use libfuzzer_sys::fuzz_target;
use lorentz_geom::curve_dsl::{parse_curve_file, Curve};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = parse_curve_file(text) {
        let (lo, hi) = spec.domain();
        assert!(lo < hi);
        let _ = spec.sample(lo);
        let again = parse_curve_file(&spec.to_file_string()).expect("written curve files parse");
        assert_eq!(again, spec);
    }
});
