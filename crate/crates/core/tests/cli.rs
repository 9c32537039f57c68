//! The `msset` binary: documented invocations, exit codes and file formats.

use marked_sset::anodyne::{horn_inclusion, Certificate, AnodyneClass};
use marked_sset::cli::lifting_problem_to_json;
use marked_sset::json::set_to_json;
use marked_sset::map::{MarkedMap, SimplicialMap};
use marked_sset::simplex::CellId;
use marked_sset::standard::{boundary, simplex};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

fn msset(args: &[&str]) -> (i32, Value, String) {
  let out = Command::new(env!("CARGO_BIN_EXE_msset")).args(args).arg("--quiet").output().expect("binary runs");
  let text = String::from_utf8(out.stdout).unwrap();
  let v = serde_json::from_str(&text).unwrap_or(Value::Null);
  (out.status.code().unwrap(), v, text)
}

fn scratch(name: &str, v: &Value) -> String {
  let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
  let path = dir.join(name);
  std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
  path.to_string_lossy().into_owned()
}

#[test]
fn map_complex_of_tetrahedron() {
  let (code, v, _) = msset(&["map-complex", "--base", "delta3", "--from", "0", "--to", "3", "--dim-bound", "3"]);
  assert_eq!(code, 0);
  assert_eq!(v["counts"], json!([4, 5, 2]));
  assert_eq!(v["exact"], json!(true));
}

#[test]
fn compare_on_the_square() {
  let (code, v, _) = msset(&["compare", "--base", "square-poset", "--from", "00", "--to", "11", "--dim-bound", "3"]);
  assert_eq!(code, 0);
  assert_eq!(v["verdict"], "homology-iso");
  assert_eq!(v["range"], 2);
}

#[test]
fn validate_reports_corruption() {
  let mut x = set_to_json(&simplex(2));
  let faces = x["faces"]["012"].as_array_mut().unwrap();
  faces.swap(0, 1);
  let path = scratch("corrupted.json", &x);
  let (code, v, _) = msset(&["validate", "--input", &path]);
  assert_eq!(code, 3);
  assert_eq!(v["valid"], false);
  assert!(v["violation"].as_str().unwrap().contains("012"));
  let good = scratch("good.json", &set_to_json(&simplex(3)));
  assert_eq!(msset(&["validate", "--input", &good]).0, 0);
}

#[test]
fn invalid_inputs_exit_3() {
  assert_eq!(msset(&["map-complex", "--base", "nowhere", "--from", "0", "--to", "1"]).0, 3);
  assert_eq!(msset(&["map-complex", "--base", "delta2", "--from", "0", "--to", "7"]).0, 3);
  assert_eq!(msset(&["no-such-command"]).0, 3);
  assert_eq!(msset(&["homology", "--input", "/nonexistent/file.json"]).0, 3);
}

#[test]
fn bounded_mapping_complex_is_inconclusive() {
  let (code, v, _) = msset(&["map-complex", "--base", "j5", "--from", "0", "--to", "1", "--dim-bound", "2", "--bead-bound", "5"]);
  assert_eq!(code, 2);
  assert_eq!(v["exact"], false);
}

#[test]
fn build_and_dot() {
  let (code, v, _) = msset(&["build", "horn", "2", "1"]);
  assert_eq!(code, 0);
  assert_eq!(v["counts"], json!([3, 2]));
  let (code, _, text) = msset(&["build", "boundary", "2", "--format", "dot"]);
  assert_eq!(code, 0);
  assert!(text.starts_with("digraph"));
  assert_eq!(msset(&["cube-oracle", "--n", "4", "--i", "0", "--j", "4"]).1["counts"], json!([8, 19, 18, 6]));
}

#[test]
fn homology_and_induced() {
  let (_, v, _) = msset(&["homology", "--base", "boundary3", "--dim-bound", "4"]);
  let betti: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
  assert_eq!(betti, vec![1, 0, 1, 0]);
  assert_eq!(msset(&["induced", "--map", "horn-delta2"]).0, 0);
  assert_eq!(msset(&["induced", "--map", "boundary-delta2"]).0, 1);
}

#[test]
fn fibration_verdicts() {
  let (code, v, _) = msset(&["check-fibration", "--map", "grothendieck-delta1", "--kind", "marked-cartesian", "--dim-bound", "3"]);
  assert_eq!((code, v["verdict"].as_str()), (0, Some("holds")));
  assert_eq!(v["bound"], 3);
  let (code, v, _) = msset(&["check-fibration", "--map", "grothendieck-delta1", "--kind", "left", "--dim-bound", "3"]);
  assert_eq!((code, v["verdict"].as_str()), (1, Some("fails")));
  assert!(v["witness"].is_object());
  assert_eq!(msset(&["check-cartesian-edge", "--map", "grothendieck-delta1", "--edge", "0.u-1.x", "--dim-bound", "3"]).0, 0);
  assert_eq!(msset(&["check-cartesian-edge", "--map", "grothendieck-delta1", "--edge", "0.u-1.y", "--dim-bound", "3"]).0, 1);
  assert_eq!(msset(&["check-fibration", "--map", "id-delta1", "--kind", "sideways"]).0, 3);
}

#[test]
fn lifting_problems_from_files() {
  let i = horn_inclusion(2, 1).unwrap();
  let pt = Arc::new(simplex(0));
  let to_pt = |x: &Arc<marked_sset::sset::SimplicialSet>| SimplicialMap::constant(x.clone(), pt.clone(), CellId::new(0, 0));
  // against Δ² → Δ⁰ the horn fills
  let p = MarkedMap::flat(to_pt(&i.map.cod));
  let fill = lifting_problem_to_json(&i, &p, &i.map, &to_pt(&i.map.cod));
  let (code, v, _) = msset(&["lift", "--problem", &scratch("fill.json", &fill)]);
  assert_eq!(code, 0);
  assert_eq!(v["witness"]["012"], "012");
  // against Λ²₁ → Δ⁰ it does not
  let p = MarkedMap::flat(to_pt(&i.map.dom));
  let stuck = lifting_problem_to_json(&i, &p, &SimplicialMap::identity(i.map.dom.clone()), &to_pt(&i.map.cod));
  let (code, v, _) = msset(&["lift", "--problem", &scratch("stuck.json", &stuck)]);
  assert_eq!(code, 1);
  assert_eq!(v["verdict"], "fails");
}

#[test]
fn certificates_from_files() {
  let good = Certificate::horn(AnodyneClass::Inner, 2, 1).unwrap();
  let (code, v, _) = msset(&["cert-check", "--cert", &scratch("good-cert.json", &good.to_json())]);
  assert_eq!(code, 0);
  assert_eq!(v["valid"], true);
  let mut bad = good.to_json();
  bad["class"] = json!("left");
  bad["node"]["generator"] = json!({ "kind": "horn", "n": 2, "k": 2 });
  let (code, v, _) = msset(&["cert-check", "--cert", &scratch("bad-cert.json", &bad)]);
  assert!(code == 1 || code == 3, "{v}");
  let (code, v, _) = msset(&["cert-catalog"]);
  assert_eq!(code, 0);
  assert!(v["certificates"].as_array().unwrap().iter().all(|c| c["valid"] == true));
  let (code, v, _) = msset(&["cert-catalog", "--emit", "inner horn Λ²₁"]);
  assert_eq!(code, 0);
  assert_eq!(v["class"], "inner");
}

#[test]
fn hocolim_from_file() {
  let pt = set_to_json(&simplex(0));
  let two = set_to_json(&boundary(1));
  let collapse = json!({ "0": { "word": [], "cell": "0" }, "1": { "word": [], "cell": "0" } });
  let d = json!({
    "category": { "objects": ["a", "b", "c"], "relations": [["a", "b"], ["a", "c"]] },
    "values": [two, pt, pt],
    "maps": { "a<b": collapse, "a<c": collapse },
  });
  let (code, v, _) = msset(&["hocolim", "--diagram", &scratch("span.json", &d), "--dim-bound", "3"]);
  assert_eq!(code, 0);
  assert_eq!(v["counts"], json!([4, 4]));
}

#[test]
fn straightening_commands() {
  let (code, v, _) = msset(&["straighten", "--map", "grothendieck-delta1", "--marked", "--dim-bound", "3"]);
  assert_eq!(code, 0);
  assert!(v.is_object());
  let (code, v, _) = msset(&["unstraighten", "--base", "horn2-1", "--dim-bound", "2"]);
  assert_eq!(code, 0);
  assert_eq!(v["counts"][0], 3);
  assert_eq!(msset(&["kan-extend", "--along", "edge-delta2", "--of", "id-delta1", "--dim-bound", "3"]).0, 0);
  assert_eq!(msset(&["kan-extend", "--along", "edge-delta2", "--of", "horn-delta2"]).0, 3);
}

#[test]
fn q_commands() {
  assert_eq!(msset(&["qcomplex", "--n", "3", "--dim-bound", "3"]).1["counts"], json!([4, 11, 14, 6]));
  assert_eq!(msset(&["qcomplex", "--n", "2", "--method", "nonsense"]).0, 3);
  assert_eq!(msset(&["realize-q", "--base", "boundary2", "--dim-bound", "3"]).1["counts"], json!([3, 3]));
  assert_eq!(msset(&["sing-q", "--base", "delta1", "--dim-bound", "2"]).0, 0);
}

#[test]
fn iso_command() {
  assert_eq!(msset(&["iso", "--left", "delta2", "--right", "delta2"]).0, 0);
  let (code, v, _) = msset(&["iso", "--left", "delta1", "--right", "boundary2"]);
  assert_eq!(code, 1);
  assert_eq!(v["isomorphic"], false);
}

#[test]
fn output_is_byte_stable() {
  let args = ["unstraighten", "--map", "square-delta1", "--dim-bound", "2"];
  assert_eq!(msset(&args).2, msset(&args).2);
  let args = ["corpus-run", "--criteria", "1,2", "--seed", "5"];
  let (a, b) = (msset(&args), msset(&args));
  assert_eq!(a.0, 0);
  assert_eq!(a.1["passed"], true);
  assert_eq!(a.1["criteria"].as_array().unwrap().iter().map(|c| c["checks"].clone()).collect::<Vec<_>>(), b.1["criteria"].as_array().unwrap().iter().map(|c| c["checks"].clone()).collect::<Vec<_>>());
}
