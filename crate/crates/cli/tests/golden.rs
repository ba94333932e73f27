//! Group tables for n = 2..5 against checked-in snapshots.
//! Set `UPDATE_GOLDEN=1` to regenerate them.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn golden_path(n: u64) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/n{n}.json"))
}

#[test]
fn group_tables_match_snapshots() {
    for n in 2..=5u64 {
        let out = Command::new(env!("CARGO_BIN_EXE_qmodular"))
            .args(["--no-timestamp", "group", "--zeta", &n.to_string()])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        let result = serde_json::to_string_pretty(&doc["result"]).unwrap() + "\n";
        let path = golden_path(n);
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &result).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}; run with UPDATE_GOLDEN=1", path.display()));
        assert_eq!(result, expected, "n = {n}");
    }
}
