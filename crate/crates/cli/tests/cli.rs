use std::process::{Command, Output};

fn asymfree(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_asymfree"));
    cmd.args(args).env_remove("ASYMFREE_THREADS");
    if let Some(t) = threads {
        cmd.env("ASYMFREE_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn bound_reports_mean_bound_and_invalid_tail() {
    let v = json(&asymfree(&["bound", "--m", "2", "--M", "1", "--w", "2", "--k", "100", "--eps", "0.1"], None));
    let r = &v["records"][0];
    assert_eq!(r["mean_bound"].as_f64().unwrap(), 1.28);
    assert_eq!(r["tail_valid"], false);
    assert_eq!(r["command"], "bound");
    assert!(v["meta"]["version"].is_string());
    assert!(v["meta"].get("wall_time_s").is_none());
}

#[test]
fn bound_with_intersection_count() {
    let v = json(&asymfree(&["bound", "--m", "1", "--M", "1", "--w", "1", "--k", "1000", "--eps", "1", "--card", "3"], None));
    assert_eq!(v["records"][0]["intersection_bound"].as_f64().unwrap(), 0.999616);
}

#[test]
fn lemma_suite_exits_zero() {
    let out = asymfree(&["verify", "--suite", "lemmas", "--max-m", "3", "--max-k", "6"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 8);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn mc_output_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = ["a.json", "b.json", "c.json"].iter().map(|p| dir.path().join(p)).collect();
    for (path, threads) in paths.iter().zip([None, None, Some("3")]) {
        let out = asymfree(
            &["mc", "--expr", "h1 x1 h1^-1 x2", "--k", "4", "--samples", "100", "--seed", "7", "--out", path.to_str().unwrap()],
            threads,
        );
        assert!(out.status.success());
    }
    let bytes: Vec<Vec<u8>> = paths.iter().map(|p| std::fs::read(p).unwrap()).collect();
    assert!(!bytes[0].is_empty());
    assert_eq!(bytes[0], bytes[1]);
    assert_eq!(bytes[0], bytes[2]);
}

#[test]
fn csv_sweep_has_one_row_per_dimension() {
    let out = asymfree(
        &["mc", "--expr", "h1 x1 h1^-1 x2", "--k", "4", "8", "--samples", "50", "--format", "csv"],
        Some("2"),
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("run_id,command,expr,k,n,m,w,M,samples,seed,mean_re"));
    assert!(lines[0].ends_with("tail_bound,tail_valid"));
    assert_eq!(lines[1].split(',').nth(3), Some("4"));
    assert_eq!(lines[2].split(',').nth(3), Some("8"));
}

#[test]
fn exact_word_and_entry_moments() {
    let v = json(&asymfree(&["exact", "--expr", "h1 x1 h1 x2 h1^-1 x3 h1^-1 x4", "--k", "2"], None));
    assert_eq!(v["records"][0]["exact"], "1/3");
    let v = json(&asymfree(&["exact", "--k", "2", "--plain", "1:1,2:2", "--conj", "1:2,2:1"], None));
    assert_eq!(v["records"][0]["exact"], "-1/6");
}

#[test]
fn observable_file_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, r#"{"k": 2, "diag": [[1, 0], [-1, 0]], "M": 1}"#).unwrap();
    let v = json(&asymfree(
        &["exact", "--expr", "h1 x1 h1 x2 h1^-1 x3 h1^-1 x4", "--k", "2", "--xfile", path.to_str().unwrap()],
        None,
    ));
    assert_eq!(v["records"][0]["exact"], "1/3");
    let out = asymfree(&["exact", "--expr", "h1 x1", "--k", "3", "--xfile", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(asymfree(&["mc", "--expr", "h1 h1^-1 x1", "--k", "4"], None).status.code(), Some(1));
    assert_eq!(asymfree(&["mc", "--expr", "h1 x1", "--k", "5"], None).status.code(), Some(1));
    assert_eq!(asymfree(&["mc", "--expr", "h1 x1", "--k", "4", "--samples", "1"], None).status.code(), Some(1));
    assert_eq!(asymfree(&["verify", "--suite", "nope"], None).status.code(), Some(1));
    let big = "h1 h1 h1 h1 h1 h1 x1 h1^-1 h1^-1 h1^-1 h1^-1 h1^-1 h1^-1 x2";
    assert_eq!(asymfree(&["exact", "--expr", big, "--k", "6"], None).status.code(), Some(3));
    assert_eq!(asymfree(&["mc", "--expr", "h1 x1", "--k", "4"], Some("0")).status.code(), Some(1));
}

#[test]
fn recorded_time_only_on_request() {
    let v = json(&asymfree(&["bound", "--m", "1", "--w", "1", "--k", "4", "--record-time"], None));
    assert!(v["meta"]["wall_time_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn freeness_fraction_row() {
    let v = json(&asymfree(&["freeness", "--mode", "micro", "--k", "32", "--samples", "20", "--seed", "3"], None));
    let f = v["records"][0]["fraction"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&f));
}

#[test]
fn sample_document_is_unitary_sized() {
    let v = json(&asymfree(&["sample", "--k", "3", "--seed", "1"], None));
    assert_eq!(v["k"], 3);
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn parser_is_reexported() {
    let e = asymfree_cli::parse_expression("h1 h1 x1").unwrap();
    assert_eq!((e.w(), e.m()), (1, 2));
}
