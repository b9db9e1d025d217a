use std::path::PathBuf;
use std::process::{Command, Output};

use grpd_cli::{parse, Instance};
use grpd_core::{corpus, GroupAction};
use serde_json::Value;

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances").join(format!("{name}.json"))
}

fn grpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpd")).args(args).output().expect("grpd runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = grpd(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn with_instance(cmd: &str, name: &str, extra: &[&str]) -> (i32, Value) {
    let path = instance(name);
    let mut args = vec![cmd, "--instance", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run_json(&args)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("grpd-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn validate_reflection() {
    let (code, r) = with_instance("validate", "reflection-c4", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["ok"], true);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["result"]["group"], serde_json::json!(["e", "g"]));
    assert_eq!(r["result"]["gpaths"]["jump"], "(0,1)|g|(3)");
}

#[test]
fn every_shipped_instance_validates() {
    for inst in corpus::all().unwrap() {
        let (code, r) = with_instance("validate", inst.name, &[]);
        assert_eq!(code, 0, "{}", inst.name);
        assert_eq!(r["instance"], inst.name);
    }
}

#[test]
fn equiv_on_the_connector_pair() {
    let (code, r) = with_instance("equiv", "reflection-c4", &["--path", "jump", "--path", "plain"]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["equivalent"], true);
    assert_eq!(res["oracles_agree"], true);
    assert_eq!(res["witness"]["tuple"], serde_json::json!(["e", "g"]));
    assert_eq!(res["witness"]["valid"], true);
}

#[test]
fn equiv_on_the_bent_pair_and_a_negative() {
    let (_, r) = with_instance("equiv", "reflection-c4", &["--path", "bent", "--path", "back"]);
    assert_eq!(r["result"]["equivalent"], true);
    let (code, r) = with_instance("equiv", "reflection-c4", &["--path", "bent", "--path", "stay"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["equivalent"], false);
    assert!(r["result"]["witness"].is_null());
    // G-paths over different grids are not comparable
    let (code, _) = with_instance("equiv", "reflection-c4", &["--path", "jump", "--path", "back"]);
    assert_eq!(code, 2);
}

#[test]
fn loops_on_point_z3() {
    let (code, r) = with_instance("loops", "point-z3", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["classes"], 3);
    assert_eq!(r["result"]["isotropy_orders"], serde_json::json!([3, 3, 3]));
}

#[test]
fn loops_separate_on_the_reflection() {
    let (_, r) = with_instance("loops", "reflection-c4", &[]);
    assert_eq!(r["result"]["projection"]["injective_on_classes"], false);
}

#[test]
fn based_between_two_basepoints() {
    let (code, r) = with_instance("based", "reflection-c4", &["--basepoint", "x", "--basepoint", "y"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["between"]["trivial_isotropy"], true);
    assert_eq!(r["result"]["fibre_of_endpoint_map_equivalent"], true);
}

#[test]
fn morita_and_lift_along_the_quotient() {
    let (code, r) = with_instance("morita", "quotient-c6-c3", &["--map", "quotient"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["equivalent"], true);
    let (code, r) = with_instance("lift", "quotient-c6-c3", &["--map", "quotient", "--path", "around"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["normal_form"], "(0,1,2,3)");
    let (code, r) = with_instance("lift", "quotient-c6-c3", &["--map", "quotient", "--path", "half"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["pushed_forward_first"], true);
    assert_eq!(r["result"]["isomorphic_to_original"], "e");
}

#[test]
fn pullback_structure_group() {
    let (code, r) = with_instance("pullback", "quotient-c6-c3", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["structure_group_order"], 4);
    assert_eq!(r["result"]["projections_are_group_components"], true);
}

#[test]
fn homotopy_between_identity_and_flip() {
    let (code, r) = with_instance("homotopy-check", "reflection-c4", &["--map", "id", "--map", "flip"]);
    assert_eq!(code, 0);
    let t = &r["result"]["transformation"];
    assert_eq!(t["connected"]["h"], "g");
    assert!(t["gamma"].as_object().unwrap().values().all(|v| v == "g"));
}

#[test]
fn property_violation_exits_one() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/forget-z3.json");
    let (code, r) = run_json(&["morita", "--instance", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["ok"], false);
    assert_eq!(r["result"]["essential_equivalence"]["fully_faithful"], false);
}

#[test]
fn input_errors_exit_two_with_diagnostics() {
    let bad_json = temp_file("syntax.json", "{\n  \"schema_version\": 1,\n  \"name\": \n}");
    let out = grpd(&["validate", "--instance", bad_json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let text = std::fs::read_to_string(instance("reflection-c4")).unwrap();
    let unknown = temp_file("label.json", &text.replace(r#"["0", "1", "0"]"#, r#"["0", "7", "0"]"#));
    let out = grpd(&["validate", "--instance", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("gpaths[2].pieces[0].vertices[1]"), "{err}");

    let extra = temp_file("field.json", &text.replacen("\"grid\": 2", "\"gird\": 2", 1));
    let out = grpd(&["validate", "--instance", extra.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gird"));

    let out = grpd(&["skeleton", "--instance", instance("reflection-c4").to_str().unwrap(), "--grid", "40"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound 8"));

    let out = grpd(&["equiv", "--instance", instance("reflection-c4").to_str().unwrap(), "--path", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    for p in [bad_json, unknown, extra] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn out_flag_and_repeat_runs_agree() {
    let path = instance("plus-graph");
    let out_file = std::env::temp_dir().join(format!("grpd-{}-out.json", std::process::id()));
    let args = ["based", "--instance", path.to_str().unwrap()];
    let a = grpd(&args);
    let b = grpd(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out_file.to_str().unwrap()]);
    let c = grpd(&with_out);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&out_file).unwrap(), a.stdout);
    let _ = std::fs::remove_file(out_file);
}

fn same_action(a: &GroupAction, b: &GroupAction) -> bool {
    let (ga, gb) = (a.group(), b.group());
    let mut ea: Vec<(usize, usize)> = a.graph().edges().iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
    let mut eb: Vec<(usize, usize)> = b.graph().edges().iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
    ea.sort();
    ea.dedup();
    eb.sort();
    eb.dedup();
    ga.labels() == gb.labels()
        && ga.elements().all(|x| ga.elements().all(|y| ga.mul(x, y) == gb.mul(x, y)))
        && a.graph().labels() == b.graph().labels()
        && ea == eb
        && ga.elements().all(|g| a.graph().vertices().all(|v| a.act(g, v) == b.act(g, v)))
}

#[test]
fn shipped_files_match_the_corpus() {
    for inst in corpus::all().unwrap() {
        let text = std::fs::read_to_string(instance(inst.name)).unwrap();
        let loaded: Instance = parse(&text).unwrap();
        assert_eq!(loaded.name, inst.name);
        assert!(same_action(&loaded.action, &inst.action), "{}", inst.name);
        assert_eq!(loaded.basepoints, inst.basepoints, "{}", inst.name);
        for (name, p) in &inst.gpaths {
            assert_eq!(loaded.gpath(name).unwrap(), p, "{} {name}", inst.name);
        }
        for m in &inst.maps {
            let l = loaded.map(&m.name).unwrap().map;
            assert_eq!((&l.hom, &l.carrier_map), (&m.map.hom, &m.map.carrier_map));
            assert!(same_action(&l.target, &m.map.target), "{}", m.name);
        }
    }
}
