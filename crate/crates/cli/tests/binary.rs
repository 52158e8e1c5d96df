use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

fn galdesc(args: &[&str], stdin: Option<&str>) -> (String, String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_galdesc"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    {
        let mut input = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            input.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn golden(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name).display().to_string()
}

#[test]
fn exit_codes() {
    assert_eq!(galdesc(&[&golden("01_torus_gf9.gd")], None).2, 0);
    assert_eq!(galdesc(&[&golden("11_corrupt_datum.gd")], None).2, 1);
    assert_eq!(galdesc(&[&golden("13_syntax_error.gd")], None).2, 2);
}

#[test]
fn reads_stdin() {
    let text = std::fs::read_to_string(golden("06_fixed_gaussian.gd")).unwrap();
    let (stdout, _, code) = galdesc(&[], Some(&text));
    assert_eq!(code, 0);
    assert!(stdout.starts_with("== fixed"));
}

#[test]
fn oracle_flag_adds_checks() {
    let file = golden("04_restrict_gm.gd");
    let (plain, _, _) = galdesc(&[&file], None);
    let (checked, _, code) = galdesc(&["--oracle", &file], None);
    assert_eq!(code, 0);
    assert!(!plain.contains("oracle:"));
    assert!(checked.contains("oracle:") && checked.contains("PASS"));
}
