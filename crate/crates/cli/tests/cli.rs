use std::io::Write;

use lagrange_spheres_cli::run;

fn ok(args: &[&str]) -> String {
    let mut argv = vec!["lagrange-spheres"];
    argv.extend_from_slice(args);
    let (code, out, err) = run(&argv);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn code(args: &[&str]) -> i32 {
    let mut argv = vec!["lagrange-spheres"];
    argv.extend_from_slice(args);
    run(&argv).0
}

#[test]
fn map_and_unmap() {
    assert_eq!(ok(&["map", "--case", "s1-iii", "1/2"]), "(2,2,-1)/3 height=3\n");
    assert_eq!(ok(&["map", "--case", "s1-i", "3/sqrt2"]), "(4,3)/5 height=5\n");
    assert!(ok(&["unmap", "--case", "s1-iii", "(2,2,-1)/3"]).starts_with("1/2 "));
}

#[test]
fn markoff_lists() {
    assert_eq!(ok(&["markoff", "--bound", "30", "--xs"]), "1 5 29\n");
    assert_eq!(ok(&["markoff", "--bound", "20", "--ys"]), "1 3 11 17\n");
}

#[test]
fn verify_phi_small_run() {
    let out = ok(&["verify-phi", "--samples", "50"]);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.ends_with("transfer identity ok")));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["map", "--case", "s9", "1"]), 2);
    assert_eq!(code(&["horoball", "--case", "s1-i"]), 2);
    assert_eq!(code(&["estimate-lagrange", "--target", "sqrt2", "--space", "sqrt2Q", "--bound", "100"]), 2);
    assert_eq!(code(&["graph", "--case", "s2-ii", "--bound", "4", "--format", "svg"]), 2);
}

#[test]
fn json_output_parses() {
    let runs: &[&[&str]] = &[
        &["--json", "map", "--case", "s1-iii", "1/2"],
        &["--json", "markoff", "--bound", "30"],
        &["--json", "spectrum", "--case", "s1-i"],
        &["--json", "spectrum", "--case", "s2-iii"],
        &["--json", "horoball", "--case", "s2-i", "1+i"],
        &["--json", "graph", "--case", "s1-ii", "--bound", "5"],
        &["--json", "estimate-lagrange", "--space", "Q", "--bound", "100"],
        &["--json", "verify-phi", "--case", "s2-ii", "--samples", "20"],
    ];
    for args in runs {
        let out = ok(args);
        serde_json::from_str::<serde_json::Value>(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    }
}

#[test]
fn spectrum_csv_header() {
    let out = ok(&["spectrum", "--case", "s1-i", "--bound", "30"]);
    assert_eq!(out.lines().next().unwrap(), "value_squared,value_approx,generator,case");
    assert!(out.lines().nth(1).unwrap().starts_with("2,1.41421356"));
}

#[test]
fn out_file_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.txt");
    let cfg = dir.path().join("run.conf");
    let mut f = std::fs::File::create(&cfg).unwrap();
    writeln!(f, "# defaults\nout={}\njson=false", out.display()).unwrap();
    let cfg = cfg.to_str().unwrap();
    assert_eq!(ok(&["--config", cfg, "markoff", "--bound", "30", "--xs"]), "");
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "1 5 29\n");
    let other = dir.path().join("n.txt");
    ok(&["--config", cfg, "--out", other.to_str().unwrap(), "markoff", "--bound", "20", "--ys"]);
    assert_eq!(std::fs::read_to_string(&other).unwrap(), "1 3 11 17\n");
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "colour=blue\n").unwrap();
    assert_eq!(code(&["--config", bad.to_str().unwrap(), "markoff", "--bound", "3"]), 2);
}

#[test]
fn thread_count_does_not_change_output() {
    let args = |t: &'static str| -> [&'static str; 9] {
        ["--threads", t, "--json", "estimate-lagrange", "--space", "S2_I", "--target", "1/3,sqrt5", "--bound"]
    };
    let a = ok(&[&args("1")[..], &["200"]].concat());
    let b = ok(&[&args("2")[..], &["200"]].concat());
    assert_eq!(a, b);
    let g1 = ok(&["--threads", "1", "graph", "--case", "s2-iii", "--bound", "6"]);
    let g2 = ok(&["--threads", "3", "graph", "--case", "s2-iii", "--bound", "6"]);
    assert_eq!(g1, g2);
}

#[test]
fn graph_formats() {
    assert!(ok(&["graph", "--case", "s1-i", "--figure"]).starts_with("graph"));
    assert!(ok(&["graph", "--case", "s1-i", "--figure", "--format", "svg"]).contains("<svg"));
    let j = ok(&["graph", "--case", "s1-i", "--bound", "5", "--format", "json"]);
    serde_json::from_str::<serde_json::Value>(&j).unwrap();
}
