//! Replays the checked-in fuzz corpus with the fuzz targets' assertions.

use std::path::PathBuf;

use lorentz_geom::curve_dsl::{parse_curve_file, parse_expression, Curve};
use lorentz_geom::jets::Jet3;

fn corpus(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| entry.unwrap().path())
        .filter_map(|p| {
            let bytes = std::fs::read(&p).unwrap();
            String::from_utf8(bytes).ok().map(|s| (p, s))
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus {}", dir.display());
    out
}

#[test]
fn expression_seeds() {
    for (path, text) in corpus("parse_expression")
        .into_iter()
        .chain(corpus("expression_roundtrip"))
    {
        match parse_expression(&text) {
            Ok(ast) => {
                let _ = ast.eval(0.5);
                let _ = ast.eval_jet(Jet3::variable(-1.25));
                let printed = ast.to_string();
                assert_eq!(parse_expression(&printed).as_ref(), Ok(&ast), "{}", path.display());
            }
            Err(e) => assert!(e.offset <= text.len(), "{}", path.display()),
        }
    }
}

#[test]
fn curve_file_seeds() {
    let mut parsed = 0;
    for (path, text) in corpus("parse_curve_file") {
        if let Ok(spec) = parse_curve_file(&text) {
            let (lo, hi) = spec.domain();
            assert!(lo < hi, "{}", path.display());
            let _ = spec.sample(lo);
            assert_eq!(
                parse_curve_file(&spec.to_file_string()).unwrap(),
                spec,
                "{}",
                path.display()
            );
            parsed += 1;
        }
    }
    assert_eq!(parsed, 4);
}
