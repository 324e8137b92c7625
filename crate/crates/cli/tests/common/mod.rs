#![allow(dead_code)]

use std::path::PathBuf;

use serde_json::Value;

use corings_cli::instance::Instance;
use corings_cli::{run, Outcome};

pub fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", &format!("{name}.json")].iter().collect();
    p.to_string_lossy().into_owned()
}

pub fn load(name: &str) -> Instance {
    Instance::load(&fixture(name), None).unwrap().0
}

/// Runs the tool in-process on `args` (instance path first) and writes its files.
pub fn cli(args: &[&str]) -> Outcome {
    let mut all = vec!["corings"];
    all.extend_from_slice(args);
    let out = run(all);
    for (path, contents) in &out.files {
        std::fs::write(path, contents).unwrap();
    }
    out
}

/// The `result` object of a run that must exit with `code`.
pub fn result(args: &[&str], code: i32) -> Value {
    let out = cli(args);
    assert_eq!(out.code, code, "{args:?}: {}{}", out.stdout, out.stderr);
    out.body.expect("report body")["result"].clone()
}

pub fn tmp(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name).to_string_lossy().into_owned()
}

pub fn write_tmp(name: &str, doc: &Value) -> String {
    let path = tmp(name);
    std::fs::write(&path, serde_json::to_string_pretty(doc).unwrap()).unwrap();
    path
}

pub fn fixture_json(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

/// Every command in the surface, with arguments valid for its fixture.
pub fn command_matrix() -> Vec<Vec<String>> {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("fx_c2", vec!["validate"]),
        ("fx_c2", vec!["report"]),
        ("fx_x2", vec!["report"]),
        ("fx_mat2", vec!["check", "separable-induction", "--coring", "C1"]),
        ("fx_x2", vec!["check", "coseparable", "--coring", "C"]),
        ("fx_x2", vec!["check", "frobenius", "--coring", "C"]),
        ("fx_t2dual", vec!["--field-override", "Q", "check", "frobenius", "--coring", "C"]),
        ("fx_c2", vec!["check", "galois", "--coring", "AC", "--grouplike", "g"]),
        ("fx_c2", vec!["check", "equivalence", "--coring", "AC", "--grouplike", "g"]),
        ("fx_c2", vec!["find", "grouplikes", "--coring", "AC"]),
        ("fx_c2", vec!["find", "invariants", "--coring", "AC"]),
        ("fx_c2", vec!["find", "coinvariants", "--coring", "AC", "--grouplike", "g"]),
        ("fx_c2", vec!["find", "dual-ring", "--coring", "AC"]),
        ("fx_c2", vec!["build", "from-entwining", "--entwining", "psi"]),
        ("fx_c2", vec!["build", "cring-entwining", "--entwining", "psi"]),
        ("fx_c2", vec!["build", "schneider", "--comodule-algebra", "R"]),
        ("fx_weak2", vec!["build", "from-weak", "--entwining", "W"]),
        ("fx_weak2", vec!["build", "from-precoring", "--entwining", "W"]),
        ("fx_taft", vec!["build", "cring-surjection", "--morphism", "eps"]),
        ("fx_x2", vec!["build", "canonical", "--ext", "B_to_A"]),
        ("fx_x2", vec!["split-epi", "--coring", "C", "--source", "M", "--target", "N", "--map", "f", "--section", "s"]),
    ];
    cases
        .into_iter()
        .map(|(fx, args)| std::iter::once(fixture(fx)).chain(args.into_iter().map(String::from)).collect())
        .collect()
}
