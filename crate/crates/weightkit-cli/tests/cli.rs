//! End-to-end tests of the `weightkit` binary: one document per verb, the
//! error paths with their exit codes, report determinism, and the
//! serialize/parse round trip.

use serde_json::{json, Value};
use std::io::Write;
use std::process::{Command, Output};
use tempfile::NamedTempFile;

fn run_doc(verb: &str, doc: &Value, extra: &[&str]) -> (Output, Value) {
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(serde_json::to_string_pretty(doc).unwrap().as_bytes()).unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_weightkit"))
        .arg(verb)
        .arg("--in")
        .arg(file.path())
        .args(extra)
        .output()
        .unwrap();
    let report: Value = if output.status.code() == Some(2) {
        Value::Null
    } else {
        serde_json::from_slice(&output.stdout).expect("report is valid JSON")
    };
    (output, report)
}

fn zdoc(declarations: Value, command: Value) -> Value {
    json!({ "ring": {"kind": "Integers"}, "declarations": declarations, "command": command })
}

fn module(gens: usize, relations: Value) -> Value {
    let rows = relations.as_array().map_or(0, |r| r.len());
    json!({ "type": "module", "generators": gens,
            "relations": {"rows": rows, "cols": gens, "entries": relations} })
}

#[test]
fn snf_identity_report() {
    let doc = zdoc(
        json!({ "A": {"type": "matrix", "rows": 2, "cols": 2,
                       "entries": [["1", "0"], ["0", "1"]]} }),
        json!({ "verb": "snf", "args": {"matrix": "A"} }),
    );
    let (output, report) = run_doc("snf", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["d"]["entries"], json!([["1", "0"], ["0", "1"]]));
    assert_eq!(report["all_passed"], json!(true));
}

#[test]
fn solve_bezout() {
    let doc = zdoc(
        json!({ "A": {"type": "matrix", "rows": 1, "cols": 2, "entries": [["2", "3"]]} }),
        json!({ "verb": "solve", "args": {"matrix": "A", "rhs": ["1"]} }),
    );
    let (output, report) = run_doc("solve", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["solvable"], json!(true));
    assert_eq!(report["result"]["kernel_basis"]["cols"], json!(1));
}

#[test]
fn module_normal_form() {
    let doc = zdoc(
        json!({ "M": module(2, json!([["4", "2"], ["2", "4"]])) }),
        json!({ "verb": "module-nf", "args": {"module": "M"} }),
    );
    let (output, report) = run_doc("module-nf", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["module"]["invariant_factors"], json!(["2", "6"]));
}

#[test]
fn hom_ext_tor_verbs() {
    for (verb, expected) in [("hom", json!(["2"])), ("ext1", json!(["2"])), ("tor1", json!(["2"]))] {
        let doc = zdoc(
            json!({
                "A": module(1, json!([["2"]])),
                "B": module(1, json!([["4"]])),
            }),
            json!({ "verb": verb, "args": {"source": "A", "target": "B"} }),
        );
        let (output, report) = run_doc(verb, &doc, &[]);
        assert_eq!(output.status.code(), Some(0), "verb {verb}");
        assert_eq!(report["result"]["module"]["invariant_factors"], expected, "verb {verb}");
    }
}

#[test]
fn contra_certificate_and_recheck() {
    let doc = zdoc(
        json!({ "M": module(1, json!([["8"]])) }),
        json!({ "verb": "contra", "args": {"module": "M", "s": "2"} }),
    );
    let (output, report) = run_doc("contra", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["holds"], json!(true));
    assert_eq!(report["certificates"][0]["witness"]["exponent"], json!(3));

    // feed the report back through check-certificate
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(serde_json::to_string(&report).unwrap().as_bytes()).unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_weightkit"))
        .arg("check-certificate")
        .arg("--in")
        .arg(file.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn heart_negative_answer_still_exits_zero() {
    // Z is not in the heart for the family {[2]}; the answer is "false" but
    // every internal check passes, so the exit code is 0
    let doc = zdoc(
        json!({
            "Z": module(1, json!([])),
            "S": {"type": "locspec", "variant": "matrices",
                   "mats": [{"rows": 1, "cols": 1, "entries": [["2"]]}]},
        }),
        json!({ "verb": "heart", "args": {"module": "Z", "spec": "S"} }),
    );
    let (output, report) = run_doc("heart", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["member"], json!(false));
    assert_eq!(report["result"]["failing_matrix"], json!(0));
    // the cokernel witness is embedded in the certificate
    assert!(report["certificates"][0]["cokernel_witness"].is_array());

    // bijectivity certificates also survive the check-certificate pathway
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(serde_json::to_string(&report).unwrap().as_bytes()).unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_weightkit"))
        .arg("check-certificate")
        .arg("--in")
        .arg(file.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn telescope_heart_and_local_complex() {
    let doc = zdoc(
        json!({
            "M": module(1, json!([["4"]])),
            "T": {"type": "locspec", "variant": "telescope", "gens": ["2"]},
        }),
        json!({ "verb": "heart", "args": {"module": "M", "spec": "T"} }),
    );
    let (output, report) = run_doc("heart", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["member"], json!(true));

    let doc = zdoc(
        json!({
            "X": {"type": "complex", "support": [0, 1], "ranks": [1, 1],
                   "differentials": [{"rows": 1, "cols": 1, "entries": [["3"]]}]},
            "T": {"type": "locspec", "variant": "telescope", "gens": ["2"]},
        }),
        json!({ "verb": "local-complex", "args": {"complex": "X", "spec": "T"} }),
    );
    let (output, report) = run_doc("local-complex", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["local"], json!(false));
}

#[test]
fn truncation_cone_minimize_heq() {
    let complex = json!({
        "X": {"type": "complex", "support": [-1, 0], "ranks": [1, 1],
               "differentials": [{"rows": 1, "cols": 1, "entries": [["2"]]}]},
        "Y": {"type": "complex", "support": [-1, 0], "ranks": [1, 1],
               "differentials": [{"rows": 1, "cols": 1, "entries": [["-2"]]}]},
        "C": {"type": "complex", "support": [0, 1], "ranks": [2, 2],
               "differentials": [{"rows": 2, "cols": 2, "entries": [["1", "0"], ["0", "2"]]}]},
        "F": {"type": "chainmap", "source": "X", "target": "Y",
               "components": {"-1": {"rows": 1, "cols": 1, "entries": [["1"]]},
                              "0": {"rows": 1, "cols": 1, "entries": [["-1"]]}}},
    });

    let (output, report) = run_doc(
        "truncate-w",
        &zdoc(complex.clone(), json!({ "verb": "truncate-w", "args": {"complex": "X", "n": 0} })),
        &[],
    );
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["low"]["support"], json!([0, 0]));
    assert_eq!(report["result"]["high"]["support"], json!([-1, -1]));

    let (output, report) = run_doc(
        "truncate-t",
        &zdoc(complex.clone(), json!({ "verb": "truncate-t", "args": {"complex": "X", "n": 0} })),
        &[],
    );
    assert_eq!(output.status.code(), Some(0));
    assert!(report["all_passed"].as_bool().unwrap());

    let (output, report) = run_doc(
        "cone",
        &zdoc(complex.clone(), json!({ "verb": "cone", "args": {"map": "F"} })),
        &[],
    );
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["cone"]["support"], json!([-2, 0]));

    let (output, report) = run_doc(
        "minimize",
        &zdoc(complex.clone(), json!({ "verb": "minimize", "args": {"complex": "C"} })),
        &[],
    );
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["minimal"]["ranks"], json!([1, 1]));

    let (output, report) = run_doc(
        "heq",
        &zdoc(
            complex.clone(),
            json!({ "verb": "heq", "args": {"left": "X", "right": "Y"} }),
        ),
        &[],
    );
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["equivalent"], json!(true));

    let (output, report) = run_doc(
        "weight-range",
        &zdoc(complex, json!({ "verb": "weight-range", "args": {"complex": "X"} })),
        &[],
    );
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["range"], json!([0, 1]));
}

#[test]
fn completion_verbs() {
    let decls = json!({ "M": module(0, json!([])), "F": module(1, json!([])) });
    let doc = zdoc(
        decls.clone(),
        json!({ "verb": "complete", "args": {"module": "F", "s": "2"} }),
    );
    let (output, report) = run_doc("complete", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["completed_rank"], json!(1));

    let doc = zdoc(decls, json!({ "verb": "reduce", "args": {"module": "F", "s": "2", "n": 3} }));
    let (output, report) = run_doc("reduce", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["module"]["invariant_factors"], json!(["8"]));
}

#[test]
fn localize_and_flatness() {
    let doc = zdoc(
        json!({ "S": {"type": "locspec", "variant": "matrices",
                       "mats": [{"rows": 2, "cols": 2, "entries": [["1", "1"], ["0", "3"]]}]} }),
        json!({ "verb": "localize", "args": {"spec": "S"} }),
    );
    let (output, report) = run_doc("localize", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["inverted"], json!("3"));

    let doc = zdoc(
        json!({ "M": module(1, json!([["2"]])) }),
        json!({ "verb": "flatness", "args": {"s": "2", "modules": ["M"]} }),
    );
    let (output, report) = run_doc("flatness", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert!(report["all_passed"].as_bool().unwrap());
}

#[test]
fn square_and_projectives() {
    let doc = zdoc(
        json!({
            "N": module(1, json!([["8"]])),
            "T": {"type": "locspec", "variant": "telescope", "gens": ["2"]},
        }),
        json!({ "verb": "square", "args": {"k": 1, "spec": "T", "tests": ["N"]} }),
    );
    let (output, report) = run_doc("square", &doc, &["--level", "3"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(report["all_passed"].as_bool().unwrap());

    let doc = zdoc(
        json!({
            "A": module(1, json!([["2"]])),
            "B": module(1, json!([["4"]])),
            "C": module(1, json!([["2"]])),
            "f": {"type": "map", "source": "A", "target": "B",
                   "matrix": {"rows": 1, "cols": 1, "entries": [["2"]]}},
            "g": {"type": "map", "source": "B", "target": "C",
                   "matrix": {"rows": 1, "cols": 1, "entries": [["1"]]}},
            "T": {"type": "locspec", "variant": "telescope", "gens": ["2"]},
        }),
        json!({ "verb": "projectives",
                "args": {"spec": "T", "k": 1, "sequences": [["f", "g"]]} }),
    );
    let (output, report) = run_doc("projectives", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert!(report["all_passed"].as_bool().unwrap());
}

#[test]
fn verify_axioms_verb() {
    let doc = zdoc(
        json!({
            "X": {"type": "complex", "support": [0, 1], "ranks": [1, 1],
                   "differentials": [{"rows": 1, "cols": 1, "entries": [["2"]]}]},
        }),
        json!({ "verb": "verify-axioms", "args": {"complexes": ["X"], "n_from": -1, "n_to": 1} }),
    );
    let (output, report) = run_doc("verify-axioms", &doc, &[]);
    assert_eq!(output.status.code(), Some(0));
    assert!(report["all_passed"].as_bool().unwrap());
}

#[test]
fn rejects_broken_differential_with_degree() {
    let doc = zdoc(
        json!({
            "X": {"type": "complex", "support": [0, 2], "ranks": [1, 1, 1],
                   "differentials": [
                        {"rows": 1, "cols": 1, "entries": [["1"]]},
                        {"rows": 1, "cols": 1, "entries": [["1"]]}]},
        }),
        json!({ "verb": "homology", "args": {"complex": "X", "degree": 0} }),
    );
    let (output, _) = run_doc("homology", &doc, &[]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("degree 0"), "error names the degree at fault: {stderr}");
}

#[test]
fn rejects_singular_family_and_unknown_names() {
    let doc = zdoc(
        json!({ "S": {"type": "locspec", "variant": "matrices",
                       "mats": [{"rows": 1, "cols": 1, "entries": [["0"]]}]} }),
        json!({ "verb": "localize", "args": {"spec": "S"} }),
    );
    let (output, _) = run_doc("localize", &doc, &[]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("determinant zero"));

    let doc = zdoc(json!({}), json!({ "verb": "snf", "args": {"matrix": "nowhere"} }));
    let (output, _) = run_doc("snf", &doc, &[]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("unknown matrix"));
}

#[test]
fn rejects_verb_mismatch_and_syntax_errors() {
    let doc = zdoc(json!({}), json!({ "verb": "pd", "args": {} }));
    let (output, _) = run_doc("snf", &doc, &[]);
    assert_eq!(output.status.code(), Some(2));

    let mut file = NamedTempFile::new().unwrap();
    file.write_all(b"{ not json").unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_weightkit"))
        .arg("snf")
        .arg("--in")
        .arg(file.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line") && stderr.contains("column"), "{stderr}");
}

#[test]
fn report_determinism() {
    let doc = zdoc(
        json!({ "M": module(2, json!([["4", "2"], ["2", "4"]])) }),
        json!({ "verb": "module-nf", "args": {"module": "M"} }),
    );
    let (_, mut a) = run_doc("module-nf", &doc, &[]);
    let (_, mut b) = run_doc("module-nf", &doc, &[]);
    a["timing_ms"] = json!(0);
    b["timing_ms"] = json!(0);
    assert_eq!(a, b, "identical inputs must produce identical reports up to timing");
}

#[test]
fn document_round_trip_over_generated_inputs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let rings = [
        json!({"kind": "Integers"}),
        json!({"kind": "Rationals"}),
        json!({"kind": "PrimeField", "p": 5}),
        json!({"kind": "PolyOverPrimeField", "p": 3}),
        json!({"kind": "PolyOverRationals"}),
    ];
    for trial in 0..100 {
        let ring = rings[rng.gen_range(0..rings.len())].clone();
        let element = |rng: &mut rand_chacha::ChaCha8Rng| -> String {
            match ring["kind"].as_str().unwrap() {
                "Integers" | "PrimeField" => rng.gen_range(-4i64..=4).to_string(),
                "Rationals" => format!("{}/{}", rng.gen_range(-4i64..=4), rng.gen_range(1i64..=4)),
                "PolyOverPrimeField" => format!("{} + {}*x", rng.gen_range(0i64..=2), rng.gen_range(0i64..=2)),
                _ => format!("{} + {}*x^2", rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)),
            }
        };
        let d = element(&mut rng);
        let mut declarations = json!({
            "M": {"type": "module", "generators": 1,
                   "relations": {"rows": 1, "cols": 1, "entries": [[d]]}},
        });
        if rng.gen_bool(0.5) {
            declarations["A"] = json!({"type": "matrix", "rows": 2, "cols": 1,
                                        "entries": [[element(&mut rng)], [element(&mut rng)]]});
        }
        if rng.gen_bool(0.5) {
            declarations["T"] = json!({"type": "locspec", "variant": "telescope",
                                        "gens": [element(&mut rng)]});
        }
        if rng.gen_bool(0.3) {
            declarations["X"] = json!({"type": "complex", "support": [0, 1], "ranks": [1, 1],
                "differentials": [{"rows": 1, "cols": 1, "entries": [[element(&mut rng)]]}]});
        }
        if rng.gen_bool(0.3) {
            declarations["id"] = json!({"type": "map", "source": "M", "target": "M",
                "matrix": {"rows": 1, "cols": 1, "entries": [["1"]]}});
        }
        let doc = json!({
            "ring": ring,
            "declarations": declarations,
            "command": {"verb": "module-nf", "args": {"module": "M"}},
        });
        let (output, report) = run_doc("module-nf", &doc, &[]);
        assert_eq!(output.status.code(), Some(0), "trial {trial}: {doc}");
        assert_eq!(report["input"], doc, "round trip failed on trial {trial}");
    }
}

#[test]
fn verify_all_runs_every_battery() {
    let doc = zdoc(json!({}), json!({ "verb": "verify-all", "args": {} }));
    let (output, report) = run_doc("verify-all", &doc, &["--seed", "7", "--level", "6"]);
    assert_eq!(output.status.code(), Some(0));
    let criteria = report["result"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 11);
    assert!(criteria.iter().all(|c| c["passed"].as_bool().unwrap()));
    assert_eq!(report["result"]["seed"], json!(7));
}

#[test]
fn tampered_certificate_fails_with_exit_one() {
    let doc = zdoc(
        json!({ "M": module(1, json!([["8"]])) }),
        json!({ "verb": "contra", "args": {"module": "M", "s": "2"} }),
    );
    let (_, mut report) = run_doc("contra", &doc, &[]);
    // lower the nilpotency exponent below the truth: 2¹ does not kill Z/8
    report["certificates"][0]["witness"]["exponent"] = json!(1);
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(serde_json::to_string(&report).unwrap().as_bytes()).unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_weightkit"))
        .arg("check-certificate")
        .arg("--in")
        .arg(file.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1), "a failed check exits with 1");
}
