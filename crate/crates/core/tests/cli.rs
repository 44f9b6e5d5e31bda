use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn mbs(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mbs"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_pipes_into_s3() {
    let built = mbs(&["build", "one-sector", "0", "2,2"], "");
    assert!(built.status.success());
    let out = mbs(&["s3"], &stdout(&built));
    assert_eq!(stdout(&out), "OBSTRUCTED: H1 torsion Z/2\n");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seifert_genus_bounds() {
    let built = mbs(&["build", "seifert", "2,3"], "");
    let out = stdout(&mbs(&["genus-bounds"], &stdout(&built)));
    assert!(out.contains("sector bound: 4\n"), "{out}");
    assert!(out.contains("heegaard bound: 2\n"), "{out}");
    assert!(out.contains("exhaustive: yes\n"));
}

#[test]
fn iso_and_minor_answers() {
    let a = fixture("pants.mbs");
    let out = mbs(&["iso", &a, &a], "");
    assert_eq!(stdout(&out), "ISOMORPHIC\n");
    assert_eq!(out.status.code(), Some(0));
    let out = mbs(&["iso", &a, &fixture("disk.mbs")], "");
    assert_eq!(stdout(&out), "NOT ISOMORPHIC\n");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(mbs(&["is-minor", &fixture("disk.mbs"), &a], "").status.code(), Some(1));
    assert_eq!(mbs(&["is-minor", &a, &a], "").status.code(), Some(0));
}

#[test]
fn stdin_dash_is_accepted() {
    let text = std::fs::read_to_string(fixture("disk.mbs")).unwrap();
    let out = mbs(&["iso", "-", &fixture("disk.mbs")], &text);
    assert_eq!(stdout(&out), "ISOMORPHIC\n");
}

#[test]
fn invariants_of_pants() {
    let out = stdout(&mbs(&["invariants", &fixture("pants.mbs")], ""));
    assert!(out.contains("H1: Z/3 + Z^5\n"), "{out}");
}

#[test]
fn omega_candidate_for_obstruction() {
    let out = mbs(&["omega-candidate", &fixture("obstruction.mbs")], "");
    assert!(stdout(&out).starts_with("CANDIDATE"));
    assert_eq!(out.status.code(), Some(0));
    let out = mbs(&["omega-candidate", &fixture("disk.mbs")], "");
    assert!(stdout(&out).starts_with("NOT CANDIDATE"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn minors_output_reparses() {
    let out = stdout(&mbs(&["minors", &fixture("annulus_2_2.mbs")], ""));
    assert!(out.starts_with("# 2 minors"));
    assert_eq!(mbs::format::parse(&out).unwrap().len(), 2);
}

#[test]
fn nminor_certificate() {
    let built = stdout(&mbs(&["build", "one-sector", "1", "1,1"], ""));
    let dir = std::env::temp_dir().join(format!("mbs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("target.mbs");
    std::fs::write(&target, built).unwrap();
    let source = stdout(&mbs(&["build", "one-sector", "0", "2,2"], ""));
    let source_path = dir.join("source.mbs");
    std::fs::write(&source_path, source).unwrap();
    let (t, s) = (
        target.to_string_lossy().into_owned(),
        source_path.to_string_lossy().into_owned(),
    );
    let out = mbs(&["nminor", &t, &s, "--depth", "3"], "");
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.starts_with("NEIGHBORHOOD MINOR (3 steps)"), "{text}");
    let out = mbs(&["nminor", &t, &s, "--depth", "1"], "");
    assert_eq!(out.status.code(), Some(1));
    let json = stdout(&mbs(&["nminor", &t, &s, "--depth", "3", "--json"], ""));
    let cert: mbs::minors::MinorCertificate = serde_json::from_str(&json).unwrap();
    let src = mbs::format::parse_one(&std::fs::read_to_string(&source_path).unwrap()).unwrap();
    let tgt = mbs::format::parse_one(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert!(cert.verify(&src, &tgt).unwrap());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exports() {
    let f = fixture("seifert_2_3.mbs");
    let dot = stdout(&mbs(&["export", "--dot", "dual-graph", &f], ""));
    assert!(dot.starts_with("graph dual {"));
    let json = stdout(&mbs(&["export", "--json", "boundary", &f], ""));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["components"].is_array());
    let json = stdout(&mbs(&["export", "--json", "spine", &f], ""));
    assert!(serde_json::from_str::<serde_json::Value>(&json).unwrap()["edges"].is_array());
    assert!(stdout(&mbs(&["export", "--dot", "surface", &f], "")).contains("\"branch l1\""));
    assert_eq!(mbs(&["export", "spine", &f], "").status.code(), Some(2));
}

#[test]
fn decompose_output_reparses() {
    let out = stdout(&mbs(&["decompose", &fixture("handle_and_disk.mbs")], ""));
    assert!(out.starts_with("# closed surface genera by sector: 1 0\n"));
    let d = mbs::format::parse_one(&out).unwrap();
    assert!(d.sectors().iter().all(|s| s.genus == 0));
}

#[test]
fn errors_exit_two_with_diagnostics() {
    let out = mbs(&["validate"], "branch l\nprebranch e l 0\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(mbs(&["validate", "/nonexistent/x.mbs"], "").status.code(), Some(2));
    assert_eq!(
        mbs(
            &["genus-bounds"],
            "branch l\nsector e genus 0\nprebranch e l 1\nprebranch e l 2\n"
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(mbs(&[], "").status.code(), Some(2));
}
