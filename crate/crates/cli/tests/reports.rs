use std::path::PathBuf;
use std::process::Command as Process;

use adapted_cli::{load, run_command, Command, Options};

fn opts(pairs: &[(&str, &str)]) -> Options {
    let mut o = Options::default();
    for (k, v) in pairs {
        let v = Some(v.to_string());
        match *k {
            "h" => o.h = v,
            "eta" => o.eta = v,
            "V" => o.v = v,
            "h2" => o.h2 = v,
            "eta2" => o.eta2 = v,
            _ => unreachable!("{k}"),
        }
    }
    o
}

fn cases() -> Vec<(&'static str, Command, &'static str, Options)> {
    vec![
        ("validate_borel_a1", Command::Validate, "borel_A1", Options::default()),
        ("index_filiform5", Command::Index, "filiform5", Options::default()),
        ("invariants_filiform5", Command::Invariants, "filiform5", Options::default()),
        ("verify_pair_heisenberg", Command::VerifyPair, "heisenberg_ext?c=2", opts(&[("h", "h"), ("eta", "z*")])),
        ("search_pairs_parabolic_a2", Command::SearchPairs, "parabolic_A2", Options::default()),
        ("search_pairs_borel_c2", Command::SearchPairs, "borel_C2_truncated", Options::default()),
        (
            "equivalence_parabolic_a2",
            Command::Equivalence,
            "parabolic_A2",
            opts(&[("h", "u1"), ("eta", "f01*"), ("h2", "-u1"), ("eta2", "f11*")]),
        ),
        ("section_check_filiform5", Command::SectionCheck, "filiform5", opts(&[("eta", "0"), ("V", "y2,y3,y5")])),
        ("stratify_filiform5", Command::Stratify, "filiform5", opts(&[("eta", "0"), ("V", "y2,y3,y5")])),
    ]
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn render(cmd: Command, algebra: &str, o: &Options) -> String {
    run_command(cmd, &load(algebra).unwrap(), o).unwrap().to_json()
}

/// Set `UPDATE_GOLDEN=1` to rewrite the expected files.
#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, cmd, algebra, o) in cases() {
        let got = render(cmd, algebra, &o);
        let path = golden_dir().join(format!("{name}.json"));
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(got, want, "{name} differs from {}", path.display());
    }
}

#[test]
fn reports_are_deterministic() {
    for (name, cmd, algebra, o) in cases() {
        assert_eq!(render(cmd, algebra, &o), render(cmd, algebra, &o), "{name}");
    }
}

#[test]
fn input_hash_tracks_inputs() {
    let base = opts(&[("eta", "0"), ("V", "y2,y3,y5")]);
    let desc = load("filiform5").unwrap();
    let a = run_command(Command::SectionCheck, &desc, &base).unwrap();
    let b = run_command(Command::SectionCheck, &desc, &Options { seed: 1, ..base.clone() }).unwrap();
    assert_ne!(a.input_hash, b.input_hash);
    assert_eq!(b.seed, 1);
    let c = run_command(Command::SectionCheck, &desc, &base).unwrap();
    assert_eq!(a.input_hash, c.input_hash);
}

#[test]
fn missing_arguments_are_errors() {
    let desc = load("filiform5").unwrap();
    assert!(run_command(Command::VerifyPair, &desc, &Options::default()).is_err());
    assert!(run_command(Command::SectionCheck, &desc, &opts(&[("eta", "y9*")])).is_err());
    assert!(run_command(Command::Equivalence, &desc, &opts(&[("h", "x1"), ("eta", "y5")])).is_err());
}

fn binary() -> Process {
    Process::new(env!("CARGO_BIN_EXE_adapted"))
}

#[test]
fn binary_prints_report_and_succeeds() {
    let out = binary().args(["index", "filiform5"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout, std::fs::read_to_string(golden_dir().join("index_filiform5.json")).unwrap());
}

#[test]
fn binary_writes_out_file() {
    let dir = std::env::temp_dir().join(format!("adapted-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out =
        binary().args(["verify-pair", "heisenberg_ext?c=2", "--h", "h", "--eta", "z*", "--out"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, std::fs::read_to_string(golden_dir().join("verify_pair_heisenberg.json")).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_fails_on_bad_input() {
    for args in [
        vec!["index", "no_such_algebra"],
        vec!["frobnicate", "filiform5"],
        vec!["verify-pair", "filiform5", "--h", "x1"],
        vec!["index", "/nonexistent/descriptor.json"],
    ] {
        let out = binary().args(&args).output().unwrap();
        assert!(!out.status.success(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn binary_reads_descriptor_files() {
    let dir = std::env::temp_dir().join(format!("adapted-cli-desc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("heis.json");
    std::fs::write(
        &path,
        r#"{"kind": "structure_constants", "dim": 3, "names": ["a", "b", "c"],
            "brackets": [{"left": "a", "right": "b", "value": {"c": "1"}}]}"#,
    )
    .unwrap();
    let out = binary().arg("index").arg(&path).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdicts"]["index"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
