use std::path::PathBuf;
use std::process::{Command, Output};

use art_cli::{CliError, Record, Report};

fn workspace(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("workspaces").join(name)
}

fn art(args: &[&str], ws: &str) -> Output {
    art_env(args, ws, None)
}

fn art_env(args: &[&str], ws: &str, bound: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_art"));
    cmd.args(args).arg("--workspace").arg(workspace(ws)).env_remove("ART_MAX_PATH_LEN");
    if let Some(b) = bound {
        cmd.env("ART_MAX_PATH_LEN", b);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn tau_of_the_simple_projective_top_of_a2() {
    let o = art(&["tau", "--module", "S1"], "a2.toml");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("tau S1 = D Tr S1: dims (0, 1)"), "{}", stdout(&o));
}

#[test]
fn verify_all_on_dual_numbers_passes() {
    let o = art(&["verify", "--all"], "dual_numbers.toml");
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("PASS:"));
}

#[test]
fn ext_of_a_simple_with_itself_on_a2_vanishes() {
    let o = art(&["ext", "--from", "S1", "--to", "S1"], "a2.toml");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim Ext^1(S1, S1) = 0"), "{}", stdout(&o));
    let o = art(&["ext", "--from", "S1", "--to", "S2"], "a2.toml");
    assert!(stdout(&o).contains("dim Ext^1(S1, S2) = 1"), "{}", stdout(&o));
}

#[test]
fn verify_passes_on_every_shipped_workspace() {
    for ws in ["a2.toml", "dual_numbers.toml", "kronecker.toml", "cubic.toml"] {
        let o = art(&["verify"], ws);
        assert_eq!(o.status.code(), Some(0), "{ws}: {}{}", stdout(&o), stderr(&o));
        assert!(!stdout(&o).contains("FAIL"), "{ws}");
    }
}

#[test]
fn unknown_names_exit_2_with_suggestions() {
    let o = art(&["tau", "--module", "S3"], "a2.toml");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown module \"S3\"; known: S1, S2, P1"), "{}", stderr(&o));
    let o = art(&["defect", "--seq", "tub"], "kronecker.toml");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("known: tube"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(art(&["tau"], "a2.toml").status.code(), Some(2));
    assert_eq!(art(&["frobnicate"], "a2.toml").status.code(), Some(2));
    assert_eq!(art(&["ext", "--from", "S1"], "a2.toml").status.code(), Some(2));
    assert_eq!(art(&["verify", "--all", "--module", "S1"], "a2.toml").status.code(), Some(2));
    assert_eq!(art(&["tau", "--module", "S1"], "missing.toml").status.code(), Some(2));
    // a projective module ends no almost split sequence
    let o = art(&["ar-sequence", "--module", "P2"], "kronecker.toml");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("projective"));
}

#[test]
fn invalid_workspace_exits_2_with_diagnostics() {
    let dir = std::env::temp_dir().join(format!("art-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.toml");
    let text = std::fs::read_to_string(workspace("dual_numbers.toml")).unwrap().replace("x = [[\"0\"]]", "x = [[\"1\"]]");
    std::fs::write(&path, text).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_art"))
        .args(["verify", "--workspace"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("modules.S: relation x·x acts as 1 ≠ 0"), "{}", stderr(&o));
}

#[test]
fn max_path_len_comes_from_the_environment() {
    let ok = art_env(&["tau", "--module", "M2"], "cubic.toml", Some("3"));
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    let short = art_env(&["tau", "--module", "M2"], "cubic.toml", Some("2"));
    assert_eq!(short.status.code(), Some(2));
    assert!(stderr(&short).contains("algebra"), "{}", stderr(&short));
    let junk = art_env(&["tau", "--module", "M2"], "cubic.toml", Some("many"));
    assert_eq!(junk.status.code(), Some(2));
}

#[test]
fn report_file_matches_the_table_and_is_stable() {
    let dir = std::env::temp_dir().join(format!("art-cli-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut reports = Vec::new();
    for (k, seed) in ["0", "0", "9"].iter().enumerate() {
        let path = dir.join(format!("r{k}.json"));
        let p = path.to_str().unwrap();
        let o = art(&["verify", "--module", "R0", "--seed", seed, "--report", p], "kronecker.toml");
        assert_eq!(o.status.code(), Some(0));
        let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(report.pass && report.records.iter().all(|r| r.pass));
        assert_eq!(report.command[0], "verify");
        let out = stdout(&o);
        for r in &report.records {
            assert!(out.contains(&r.name), "{}", r.name);
        }
        assert!(out.contains(&format!("PASS: {} checks, 0 failed", report.records.len())));
        reports.push(report);
    }
    assert_eq!((&reports[0].records, reports[0].pass), (&reports[1].records, reports[1].pass));
    let dims = |r: &Report| r.records.iter().map(|x| (x.name.clone(), x.lhs_dim, x.rhs_dim)).collect::<Vec<_>>();
    assert_eq!(dims(&reports[0]), dims(&reports[2]));
}

#[test]
fn verbose_prints_matrices() {
    let o = art(&["ar-sequence", "--module", "S", "--verbose"], "dual_numbers.toml");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("0 -> (1) -> (2) -> (1) -> 0"), "{out}");
    assert!(out.contains("x = [0 0; 1 0]"), "{out}");
    let quiet = stdout(&art(&["ar-sequence", "--module", "S"], "dual_numbers.toml"));
    assert!(!quiet.contains("x = ["));
}

#[test]
fn remaining_commands() {
    // S2 is projective, so its transpose vanishes
    let o = art(&["transpose", "--module", "S2"], "a2.toml");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Tr S2 (over the opposite algebra): dims (0, 0)"), "{}", stdout(&o));
    let o = art(&["transpose", "--module", "S1"], "a2.toml");
    assert!(stdout(&o).contains("Tr S1 (over the opposite algebra): dims (0, 1)"), "{}", stdout(&o));
    let o = art(&["stablehom", "--from", "M2", "--to", "M2"], "cubic.toml");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim StableHom_P(M2, M2) = 1"));
    let o = art(&["defect", "--seq", "ar"], "a2.toml");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ar^*(S1) has dim 1"), "{}", stdout(&o));
    let o = art(&["determined-epi", "--from", "S1", "--to", "P1"], "a2.toml");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = art(&["ar-sequence", "--module", "S1"], "a2.toml");
    assert!(stdout(&o).contains("0 -> (0, 1) -> (1, 1) -> (1, 0) -> 0"), "{}", stdout(&o));
}

#[test]
fn failed_records_fail_the_report() {
    let mut r = Report::new(vec!["verify".into()]);
    r.push(Record::new("a", 1, 1, true, ""));
    assert!(r.pass);
    r.push(Record::new("b", 1, 2, false, ""));
    assert!(!r.pass);
    assert!(r.table().contains("FAIL: 2 checks, 1 failed"));
    assert_eq!(CliError::Compute(art_core::Error::Undecided(3)).exit_code(), 1);
    assert_eq!(CliError::Input("x".into()).exit_code(), 2);
}
