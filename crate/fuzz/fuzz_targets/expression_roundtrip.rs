#![no_main]

use libfuzzer_sys::fuzz_target;
use lorentz_geom::curve_dsl::parse_expression;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ast) = parse_expression(text) {
        let printed = ast.to_string();
        let back = parse_expression(&printed).expect("printed expressions parse");
        assert_eq!(back, ast, "{text:?} printed as {printed:?}");
    }
});
