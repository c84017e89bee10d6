//! Command outputs checked byte for byte against `documents/golden`.
//! Set `SHIFTSYM_BLESS=1` to rewrite the expected files.

use std::path::PathBuf;

use shiftsym::cli;

fn documents() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../documents")
}

const CASES: &[(&str, &[&str])] = &[
    ("cotangent.sp-check", &["sp-check", "cotangent.json"]),
    ("cotangent.convert", &["convert", "sp->poisson", "cotangent.json", "--max-level", "3"]),
    ("cotangent.homology", &["homology", "cotangent.json", "--degree", "-1", "--weight", "0"]),
    ("zero-section.lag-check", &["lag-check", "zero-section.json"]),
    ("dual-numbers.resolve", &["resolve", "dual-numbers.json", "--up-to", "4", "--max-order", "6"]),
    ("sl2.ce", &["ce", "sl2.json"]),
    ("sl2.formal-sp", &["formal-sp", "sl2.json"]),
    ("sl2.validate", &["validate", "sl2.json"]),
    ("selftest", &["selftest", "--seed", "7"]),
];

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("SHIFTSYM_BLESS").is_some();
    let dir = documents();
    for (name, args) in CASES {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".json") { dir.join(a).display().to_string() } else { a.to_string() })
            .collect();
        let out = cli::run(std::iter::once("shiftsym".to_string()).chain(args));
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        let path = dir.join("golden").join(format!("{name}.json"));
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &out.stdout).unwrap();
        } else {
            let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(out.stdout, expected, "{name} drifted from its golden file");
        }
    }
}
