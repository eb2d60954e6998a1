use gspin_cli::strip_timing;
use gspin_core::periods::appendix::appendix_scripts;
use gspin_core::periods::parse_script;
use std::path::PathBuf;
use std::process::Command;

fn scripts_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scripts")
}

fn gspin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gspin")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn shipped_scripts_match_expander() {
    let dir = scripts_dir();
    let mut shipped: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    shipped.sort();
    let mut expected = Vec::new();
    for s in appendix_scripts(&[2, 3], &[1, 2]) {
        let file = format!("{}.txt", s.name);
        let text = std::fs::read_to_string(dir.join(&file)).unwrap_or_default();
        assert_eq!(text, s.to_string(), "{file} differs from the expander; rerun `gspin expand scripts`");
        let parsed = parse_script(&text).unwrap();
        assert_eq!(parsed, s);
        assert_eq!(parse_script(&parsed.to_string()).unwrap(), parsed);
        expected.push(file);
    }
    expected.sort();
    assert_eq!(shipped, expected);
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = gspin(&["verify", "cosets", "--n-max", "2", "--no-timing"]);
    assert_eq!(code, 0);
    assert!(out.contains("record id=cosets/even-P1/n=2/ell=2 "));
    assert!(!out.contains("[timing]"));
    let (code, _, err) = gspin(&["verify", "periods", "--n-max", "9"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = gspin(&["verify", "nonsense"]);
    assert_eq!(code, 2);
    let (code, _, _) = gspin(&["verify", "periods", "--a", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn replay_reports_and_exit_codes() {
    let one = scripts_dir().join("odd_u1_divides_u2_n2.txt");
    let (code, out, _) = gspin(&["replay", one.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("record id=odd_u1_divides_u2_n2 "));
    assert!(out.contains("summary records=1 pass=1 fail=0 axiom=0"));
    assert!(out.contains("script=odd_u1_divides_u2_n2 step=1 "));

    let dir = std::env::temp_dir().join(format!("gspin-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "name: bad\nm: 8\nstart: odd.U1\ngoal: odd.U1\nTWIST odd.U2\n").unwrap();
    let (code, _, err) = gspin(&["replay", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 5") && err.contains("TWIST"), "{err}");

    let failing = dir.join("fail.txt");
    std::fs::write(&failing, "name: fail\nm: 8\nstart: odd.U1\ngoal: odd.U2\nSWAP odd.U3\n").unwrap();
    let out_path = dir.join("report.txt");
    let (code, _, _) = gspin(&["replay", failing.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report = std::fs::read_to_string(&out_path).unwrap();
    assert!(report.contains("verdict=fail"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn replay_is_deterministic() {
    let dir = scripts_dir();
    let (_, a, _) = gspin(&["replay", dir.to_str().unwrap()]);
    let (_, b, _) = gspin(&["replay", dir.to_str().unwrap()]);
    assert_eq!(strip_timing(&a), strip_timing(&b));
    assert!(a.contains("[timing]"));
}
