use std::process::Command;

fn uqmn(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_uqmn")).args(args).output().expect("binary runs")
}

#[test]
fn exit_codes() {
    assert_eq!(uqmn(&["verify", "--m", "2", "--n", "2", "--p", "2"]).status.code(), Some(0));
    let bad = uqmn(&["verify", "--m", "0", "--n", "2", "--p", "1"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("positive"));
    // The exact commuting square is a genuine failure, not a usage error.
    let psi = uqmn(&["psi", "--m", "2", "--n", "2", "--a", "2", "--b", "1", "--variant", "special22"]);
    assert_eq!(psi.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&psi.stdout).contains("FAIL special:commuting-square-exact"));
}

#[test]
fn thread_env_and_output_file() {
    let dir = std::env::temp_dir().join(format!("uqmn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = Command::new(env!("CARGO_BIN_EXE_uqmn"))
        .args(["sym", "--m", "2", "--n", "2", "--k", "2", "--format", "json", "--output"])
        .arg(&path)
        .env("UQMN_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    let direct = uqmn(&["sym", "--m", "2", "--n", "2", "--k", "2", "--format", "json", "--threads", "3"]);
    assert_eq!(written, direct.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn crystal_dot_sym_grid() {
    let out = uqmn(&["crystal", "--m", "2", "--n", "2", "--k", "1", "--kind", "sym", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("[label=\"z[").count(), 4);
    assert_eq!(dot.matches("label=\"L1\"").count(), 2);
    assert_eq!(dot.matches("label=\"R1\"").count(), 2);
}

#[test]
fn csv_reports_parse() {
    let out = uqmn(&["rsk", "--m", "2", "--n", "2", "--k", "2", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["id", "status", "witness"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| &r[1] == "pass"));
}
