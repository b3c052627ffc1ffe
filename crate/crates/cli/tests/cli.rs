use std::path::Path;
use std::process::{Command, Output};

use orbit_ideals::{invariant_t, minor, Polynomial};
use orbit_ideals_cli::MembershipInput;
use serde_json::Value;

fn run(args: &[&str], workdir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbit-ideals"))
        .args(args)
        .env("ORBIT_IDEALS_WORKDIR", workdir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = validator
        .iter_errors(doc)
        .map(|e| format!("{e} at {}", e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "schema errors: {errors:#?}");
}

fn json_of(args: &[&str], workdir: &Path) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all, workdir);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn membership_input(dir: &Path, f: Polynomial, generators: Vec<Polynomial>) -> String {
    let path = dir.join("input.json");
    std::fs::write(
        &path,
        serde_json::to_string(&MembershipInput { f, generators }).unwrap(),
    )
    .unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn every_report_matches_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let v = validator();
    let input = membership_input(
        dir.path(),
        invariant_t(2, 1)
            .unwrap()
            .mul(&minor(2, &[1], &[2]).unwrap())
            .unwrap(),
        vec![invariant_t(2, 1).unwrap()],
    );
    let reports = [
        json_of(&["--partition", "3^2,2^2,1^5", "schedule"], dir.path()),
        json_of(&["--partition", "2,1", "--n", "5", "schedule"], dir.path()),
        json_of(&["--n", "3", "dims"], dir.path()),
        json_of(&["--partition", "4,2^3,1^5", "witness"], dir.path()),
        json_of(&["membership", &input], dir.path()),
        json_of(&["--partition", "2,2", "verify"], dir.path()),
        json_of(
            &[
                "--partition",
                "2,1,1",
                "--mode",
                "modular",
                "verify",
                "minimal",
            ],
            dir.path(),
        ),
    ];
    for doc in &reports {
        assert_valid(&v, doc);
    }
    let generators = json_of(&["--partition", "2,2", "generators"], dir.path());
    assert_valid(&v, &generators);
    let name = generators["file"].as_str().unwrap();
    let file: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join(name)).unwrap()).unwrap();
    assert_valid(&v, &file);
}

#[test]
fn schedule_text_lists_generators_and_arrows() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--partition", "3^2,2^2,1^5", "schedule"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("minimal: U_{0,1},U_{0,2},U_{0,3},U_{1,3},U_{3,6},U_{5,7},U_{6,7},U_{7,7}")
    );
    assert!(text.contains("excluded: 2,4,8,9"));
    assert!(text.contains("arrows: 1,3,5,6,7"));
}

#[test]
fn text_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    let json = json_of(&["--partition", "4,2^3,1^5", "schedule"], dir.path());
    let text = stdout(&run(&["--partition", "4,2^3,1^5", "schedule"], dir.path()));
    let generators = json["minimal"]["generators"].as_str().unwrap();
    assert!(text.contains(&format!("minimal: {generators}")));
    assert!(text.contains(&format!(
        "generator count: {}",
        json["minimal"]["generator_count"]
    )));
}

#[test]
fn generators_file_is_written_to_the_workdir() {
    let dir = tempfile::tempdir().unwrap();
    let report = json_of(&["--partition", "2,2", "generators"], dir.path());
    let file = dir.path().join("generators-2e2.json");
    assert_eq!(report["file"], "generators-2e2.json");
    assert!(file.exists());
    let body: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    let families = body["families"].as_array().unwrap();
    let polys: usize = families
        .iter()
        .map(|f| f["polynomials"].as_array().unwrap().len())
        .sum();
    assert_eq!(report["total"].as_u64().unwrap() as usize, polys);
    let first: Polynomial = serde_json::from_value(families[0]["polynomials"][0].clone()).unwrap();
    assert_eq!(first, invariant_t(4, 1).unwrap());
}

#[test]
fn membership_verdicts_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = invariant_t(2, 1).unwrap();
    let member = membership_input(dir.path(), t1.mul(&t1).unwrap(), vec![t1.clone()]);
    let report = json_of(&["--mode", "exact", "membership", &member], dir.path());
    assert_eq!(report["verdict"]["status"], "Member");
    assert_eq!(report["verdict"]["certificate"]["kind"], "combination");
    assert_eq!(report["verified"], true);

    let outside = membership_input(dir.path(), invariant_t(2, 2).unwrap(), vec![t1]);
    let report = json_of(&["--mode", "exact", "membership", &outside], dir.path());
    assert_eq!(report["verdict"]["status"], "NonMember");
    assert_eq!(report["verified"], true);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| run(args, dir.path()).status.code();
    assert_eq!(code(&["--partition", "2,1", "verify"]), Some(0));
    assert_eq!(code(&["--partition", "1,2", "schedule"]), Some(2));
    assert_eq!(code(&["--partition", "x", "schedule"]), Some(2));
    assert_eq!(code(&["schedule"]), Some(2));
    assert_eq!(code(&["--partition", "2,2", "frobnicate"]), Some(2));
    assert_eq!(code(&["--partition", "3,2", "verify"]), Some(3));
    assert_eq!(
        code(&["--partition", "3,2", "--max-n", "5", "verify", "vanishing"]),
        Some(0)
    );
    assert_eq!(code(&["membership", "/nonexistent/input.json"]), Some(3));
}

#[test]
fn refusal_names_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--partition", "2^3", "verify"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--max-n 6"));
}
