#![no_main]

use libfuzzer_sys::fuzz_target;
use lorentz_geom::curve_dsl::parse_expression;
use lorentz_geom::jets::Jet3;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match parse_expression(text) {
        Ok(ast) => {
            // evaluation may fail on domain errors but must not panic
            let _ = ast.eval(0.5);
            let _ = ast.eval_jet(Jet3::variable(-1.25));
        }
        Err(e) => assert!(e.offset <= text.len()),
    }
});
