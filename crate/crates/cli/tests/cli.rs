use std::path::Path;

use gtrans_cli::report::Report;
use gtrans_cli::{run, Outcome, EXIT_FAILURE, EXIT_INPUT, EXIT_OK, EXIT_USAGE};
use gtrans_core::algebra::{named_algebra, Ring, Side};
use gtrans_core::fpmod::{map_to_spec, ModuleMap};
use gtrans_core::homology::top_of_ring;

fn gtrans(args: &[&str]) -> Outcome {
    run(std::iter::once("gtrans").chain(args.iter().copied()))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

/// `k` over the dual numbers and the chain `k -> k -> k -> k` (identity, zero, identity).
fn dual_numbers_files(dir: &Path) -> (String, String) {
    let r = Ring::new(named_algebra("dual2").unwrap());
    let k = top_of_ring(&r, Side::Left);
    let module = write(dir, "k.mod", &k.to_spec("k"));
    let mut chain = String::new();
    for name in ["A", "B", "C", "D"] {
        chain.push_str(&k.to_spec(name));
    }
    chain.push_str(&map_to_spec("f1", "A", "B", &ModuleMap::identity(&k)));
    chain.push_str(&map_to_spec("f2", "B", "C", &ModuleMap::zero(&k, &k)));
    chain.push_str(&map_to_spec("f3", "C", "D", &ModuleMap::identity(&k)));
    (module, write(dir, "chain.seq", &chain))
}

#[test]
fn ring_check_text_report() {
    let out = gtrans(&["ring", "check", "dual2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("verdict: valid"));
    assert!(out.stdout.contains("radical dim      1"), "{}", out.stdout);
    assert!(out.stdout.contains("seed=0"));
}

#[test]
fn transpose_of_k_is_a_right_module() {
    let dir = tempfile::tempdir().unwrap();
    let (k, _) = dual_numbers_files(dir.path());
    let out = gtrans(&["transpose", "--ring", "dual2", "--mod", &k]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.report.unwrap().verdict, "Tr M: dim 1, side right");
}

#[test]
fn gp_test_over_local_ring() {
    let dir = tempfile::tempdir().unwrap();
    let r = Ring::new(named_algebra("local3").unwrap());
    let k = write(dir.path(), "k.mod", &top_of_ring(&r, Side::Left).to_spec("k"));
    let out = gtrans(&["--bound", "4", "--mode", "bounded", "gp", "--ring", "local3", "--mod", &k]);
    let rep = out.report.unwrap();
    assert_eq!(rep.verdict, "not-GP (degree 1)");
    assert_eq!(rep.inputs.settings["gp-mode"], "bounded(4)");
}

#[test]
fn exit_codes() {
    assert_eq!(gtrans(&["no-such-command"]).code, EXIT_USAGE);
    assert_eq!(gtrans(&["resolve", "--ring", "dual2"]).code, EXIT_USAGE);
    let out = gtrans(&["ring", "check", "no-such-algebra"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.starts_with("error:"));
    // ring mode needs a finite declared injective dimension
    let dir = tempfile::tempdir().unwrap();
    let r = Ring::new(named_algebra("local3").unwrap());
    let k = write(dir.path(), "k.mod", &top_of_ring(&r, Side::Left).to_spec("k"));
    assert_eq!(gtrans(&["--mode", "ring", "gp", "--ring", "local3", "--mod", &k]).code, EXIT_INPUT);
}

#[test]
fn report_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (k, _) = dual_numbers_files(dir.path());
    let out = gtrans(&["--json", "resolve", "--ring", "dual2", "--mod", &k, "--length", "3", "--minimal"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    for key in ["command", "inputs", "verdict", "tables", "certificates", "evidence", "failures"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let rep = Report::from_json(&out.stdout).unwrap();
    assert_eq!(&rep, out.report.as_ref().unwrap());
    assert_eq!(rep.to_json(), out.stdout);
    assert_eq!(rep.inputs.settings["length"], "3");
}

#[test]
fn construct_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (k, chain) = dual_numbers_files(dir.path());
    let certs = dir.path().join("certs");
    let runs: Vec<Vec<&str>> = vec![
        vec!["construct", "prop22", "--ring", "dual2", "--seq", &chain],
        vec!["construct", "thm24fwd", "--ring", "dual2", "--seq", &chain],
        vec!["construct", "thm24bwd", "--ring", "dual2", "--seq", &chain],
        vec!["construct", "cor25", "--ring", "dual2", "--mod", &k],
        vec!["construct", "thm26", "--ring", "dual2", "--mod", &k, "--slot", "0"],
        vec!["construct", "prop36", "--ring", "dual2", "--mod", &k],
    ];
    for args in runs {
        let mut full = vec!["--json"];
        full.extend(&args);
        let out = gtrans(&full);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}{}", out.stderr, out.stdout);
        let rep = out.report.unwrap();
        assert!(!rep.certificates.is_empty(), "{args:?}");
        let saved = write(dir.path(), "report.json", &out.stdout);
        let v = gtrans(&["verify", &saved]);
        assert_eq!(v.code, EXIT_OK, "{args:?}: {}", v.stdout);
    }
    // certificates on disk verify one by one
    let out = gtrans(&["--cert-dir", certs.to_str().unwrap(), "resolve", "--ring", "dual2", "--mod", &k, "--length", "2"]);
    assert_eq!(out.code, EXIT_OK);
    let file = std::fs::read_dir(&certs).unwrap().next().unwrap().unwrap().path();
    assert_eq!(gtrans(&["verify", file.to_str().unwrap()]).code, EXIT_OK);
}

#[test]
fn tampered_certificate_is_a_failure() {
    let dir = tempfile::tempdir().unwrap();
    let (k, _) = dual_numbers_files(dir.path());
    let out = gtrans(&["resolve", "--ring", "dual2", "--mod", &k, "--length", "2"]);
    let text = &out.report.unwrap().certificates[0].text;
    // flip the first nonzero map entry
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let i = lines.iter().position(|l| l.starts_with("map ") && l.ends_with(" 1") || l.starts_with("map ") && l.contains(": 1")).unwrap();
    let (head, body) = lines[i].split_once(": ").unwrap();
    let flipped: Vec<&str> = body.split(' ').enumerate().map(|(j, x)| if j == 0 { if x == "1" { "0" } else { "1" } } else { x }).collect();
    lines[i] = format!("{head}: {}", flipped.join(" "));
    let bad = write(dir.path(), "bad.cert", &(lines.join("\n") + "\n"));
    let out = gtrans(&["verify", &bad]);
    assert_eq!(out.code, EXIT_FAILURE, "{}", out.stdout);
    assert!(out.stdout.contains("FAILURE"));
}

#[test]
fn checks_over_the_dual_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let (k, _) = dual_numbers_files(dir.path());
    let r = Ring::new(named_algebra("dual2").unwrap());
    let kr = write(dir.path(), "k_right.mod", &top_of_ring(&r, Side::Right).to_spec("k"));
    for args in [
        vec!["star", "--ring", "dual2", "--mod", &k],
        vec!["torsionfree", "--ring", "dual2", "--mod", &k, "-n", "2"],
        vec!["ext", "--ring", "dual2", "--mod", &k, "-i", "3"],
        vec!["syzygy", "--ring", "dual2", "--mod", &k, "-n", "2"],
        vec!["mod", "info", "--ring", "dual2", "--mod", &k],
        vec!["construct", "cor32", "--ring", "dual2", "--mod", &k, "--gp-mod", &kr],
    ] {
        let out = gtrans(&args);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}{}", out.stderr, out.stdout);
    }
}

#[test]
fn sweeps_are_reproducible() {
    let a = gtrans(&["--json", "--seed", "3", "sweep", "--algebra", "dual2", "--theorem", "prop34", "--count", "10"]);
    let b = gtrans(&["--json", "--seed", "3", "sweep", "--algebra", "dual2", "--theorem", "prop34", "--count", "10"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let c = gtrans(&["--json", "--seed", "4", "sweep", "--algebra", "dual2", "--theorem", "prop34", "--count", "10"]);
    assert_ne!(a.stdout, c.stdout);
}
