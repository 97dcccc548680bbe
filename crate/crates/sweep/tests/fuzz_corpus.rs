//! Replays the checked-in fuzz corpus through the parser entry points.

use std::fs;
use std::path::PathBuf;

use relthermo_sweep::config::{parse_couplings, parse_grid, resolve};
use relthermo_sweep::{parse_config, parse_config_file};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn config_file_seeds() {
    for (name, text) in seeds("parse_config_file") {
        let parsed = parse_config_file(&text).and_then(resolve);
        assert_eq!(
            parsed.is_ok(),
            name != "duplicate_key",
            "{name}: {parsed:?}"
        );
    }
}

#[test]
fn cli_seeds() {
    for (name, text) in seeds("parse_cli_args") {
        let args = std::iter::once("thermo").chain(text.split('\0'));
        let parsed = parse_config(args);
        assert!(parsed.is_ok(), "{name}: {parsed:?}");
    }
}

#[test]
fn grid_seeds() {
    for (name, text) in seeds("parse_grid") {
        assert_eq!(parse_grid(&text).is_ok(), name != "collapsed", "{name}");
    }
}

#[test]
fn coupling_seeds() {
    for (name, text) in seeds("parse_couplings") {
        let ok = !matches!(name.as_str(), "duplicate" | "invalid");
        assert_eq!(parse_couplings(&text).is_ok(), ok, "{name}");
    }
}
