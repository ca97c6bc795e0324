//! The full D6 report is pinned byte for byte. Regenerate with
//! `UPDATE_GOLDEN=1 cargo test -p fingeom-cli --test golden`.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/d6_report_mu0.json")
}

fn full_report() -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_fingeom"))
        .args([
            "--group",
            "dihedral:6",
            "--class",
            "sr",
            "--mu",
            "0",
            "--cmd",
            "report-all",
            "--pretty",
        ])
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

#[test]
fn d6_report_matches_golden() {
    let first = full_report();
    let second = full_report();
    assert!(first == second, "two runs differ");

    let path = golden_path();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &first).unwrap();
        return;
    }
    let expected = fs::read(&path).expect("golden file present; set UPDATE_GOLDEN=1 to create it");
    if first != expected {
        let actual = String::from_utf8_lossy(&first);
        let expected = String::from_utf8_lossy(&expected);
        let line = actual
            .lines()
            .zip(expected.lines())
            .position(|(a, b)| a != b);
        panic!("report differs from golden file, first differing line: {line:?}");
    }
}
