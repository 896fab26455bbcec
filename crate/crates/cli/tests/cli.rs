use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn knotfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotfield")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn presets_listing() {
    let o = knotfield(&["presets"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("hopf-link") && text.contains("v² + w²"));
    assert!(text.contains("cable-2-3-3-2") && text.contains("Newton pairs (2,3) (3,2)"));
}

#[test]
fn sample_at_origin_and_on_a_vortex() {
    let o = knotfield(&["sample", "--preset", "hopf-link", "--event", "0,0,0,0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("psi 1.0000000000000000e0 0.0000000000000000e0"));

    let o = knotfield(&["sample", "--preset", "unknot-circle", "--event", "0,1,0,0", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["u"].as_f64(), Some(0.0));
    assert_eq!(v["config"]["source"]["preset"], "unknot-circle");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(knotfield(&["sample", "--preset", "hopf-link", "--event", "0,0,0"]).status.code(), Some(2));
    assert_eq!(knotfield(&["sample", "--preset", "no-such", "--event", "0,0,0,0"]).status.code(), Some(2));
    assert_eq!(knotfield(&["vortex", "--preset", "trefoil", "--epsilon", "-1"]).status.code(), Some(2));
    assert_eq!(knotfield(&["sample", "--event", "0,0,0,0"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2 0 1\n").unwrap();
    let o = knotfield(&["sample", "--poly-file", bad.to_str().unwrap(), "--event", "0,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn hopf_link_curves_at_two_times() {
    let dir = tempfile::tempdir().unwrap();
    for (t, b) in [("0", "-3,3,-3,3,-3,3"), ("3", "-8,8,-8,8,-8,8")] {
        let out = dir.path().join(t);
        let o = knotfield(&[
            "vortex", "--preset", "hopf-link", "--time", t, "--box", b, "--format", "csv,obj",
            "--out", out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let csv = fs::read_to_string(out.join("curves.csv")).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("component_id,vertex_index,x,y,z"));
        let ids: std::collections::BTreeSet<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(ids.len(), 2);
        let side = json(&out.join("curves.json"));
        let comps = side["components"].as_array().unwrap();
        assert!(comps.iter().all(|c| c["closed"] == true));
        let obj = fs::read_to_string(out.join("curves.obj")).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("l ")).count(), 2);
    }
}

#[test]
fn empty_region_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = knotfield(&["vortex", "--preset", "hopf-link", "--box", "3,4,3,4,3,4", "--res", "9", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("curves.csv")).unwrap(), "component_id,vertex_index,x,y,z\n");
}

#[test]
fn topology_reports() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let out = dir.path().join(name);
        let mut args = vec!["topology", "--preset", name, "--out", out.to_str().unwrap()];
        args.extend_from_slice(extra);
        assert!(knotfield(&args).status.success());
        json(&out.join("report.json"))
    };
    let hopf = run("hopf-link", &[]);
    assert_eq!(hopf["componentCount"], 2);
    assert_eq!(hopf["linkingRounded"][0][1].as_i64().map(i64::abs), Some(1));
    assert!(hopf["linkingMatrix"][0][1].as_f64().is_some());
    assert_eq!(hopf["epsilon"], 1.0);
    let trefoil = run("trefoil", &[]);
    let w = &trefoil["windings"][0];
    assert_eq!((w["alpha"].as_i64().unwrap().abs(), w["beta"].as_i64().unwrap().abs()), (2, 3));
    let line = run("unknot-line", &["--box", "-2,2,-2,2,-2,2", "--res", "41"]);
    assert_eq!(line["openCount"], 1);
    assert!(line["warnings"][0].as_str().unwrap().contains("open"));
}

#[test]
fn verify_passes_presets_and_flags_constant_terms() {
    let dir = tempfile::tempdir().unwrap();
    let o = knotfield(&["verify", "--preset", "trefoil", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains("[FAIL]"));
    assert!(text.contains("bateman_condition") && text.contains("+i"));
    assert_eq!(json(&dir.path().join("verification.json"))["passed"], true);

    let poly = dir.path().join("corrupt.txt");
    fs::write(&poly, "# hopf link plus a constant\n0 0 0.5 0\n2 0 1 0\n0 2 1 0\n").unwrap();
    assert_eq!(knotfield(&["verify", "--poly-file", poly.to_str().unwrap()]).status.code(), Some(2));
    let o = knotfield(&["verify", "--poly-file", poly.to_str().unwrap(), "--allow-constant-term", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] link_polynomial"));
}

#[test]
fn hopf_slice_is_positive_everywhere() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("one.txt");
    fs::write(&poly, "0 0 1 0\n").unwrap();
    let o = knotfield(&[
        "slice", "--poly-file", poly.to_str().unwrap(), "--allow-constant-term", "--plane", "xy", "--res", "41",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let csv = fs::read_to_string(dir.path().join("slice_xy.csv")).unwrap();
    assert!(csv.starts_with("i,j,x1,x2,u\n"));
    assert_eq!(csv.lines().count(), 1 + 41 * 41);
    for line in csv.lines().skip(1) {
        let u: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(u > 0.0);
    }
    let side = json(&dir.path().join("slice_xy.json"));
    assert!(side["log10Min"].as_f64().unwrap() < side["log10Max"].as_f64().unwrap());
    assert!(side["config"]["terms"].is_array());
}

#[test]
fn energy_and_helicity_documents() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = knotfield(&["energy", "--preset", "hopf-link", "--hopf", "--radii", "5,10", "--res", "40", "--out", d]);
    assert!(o.status.success());
    let e = json(&dir.path().join("energy.json"));
    let results = e["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(results[1]["grid"]["cells"][0], 80);
    assert!(e["relativeChanges"][0].as_f64().unwrap() < 0.01);
    assert_eq!(e["tailTrusted"], true);

    let o = knotfield(&["helicity", "--preset", "hopf-link", "--box", "-5,5,-5,5,-5,5", "--res", "30", "--convergence", "--out", d]);
    assert!(o.status.success());
    let h = json(&dir.path().join("helicity.json"));
    let row = &h["results"][0];
    assert!(row["magnetic"].as_f64().unwrap() > 0.0);
    assert!(row["doubled"]["relativeChangeMagnetic"].as_f64().unwrap() < 0.005);
}

#[test]
fn epsilon_scan_document() {
    let dir = tempfile::tempdir().unwrap();
    let o = knotfield(&["scan", "--preset", "hopf-link", "--epsilons", "1,0.5", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let s = json(&dir.path().join("scan.json"));
    assert_eq!(s["rows"].as_array().unwrap().len(), 2);
    assert_eq!(s["stableFrom"], 1.0);
    assert_eq!(knotfield(&["scan", "--preset", "hopf-link", "--epsilons", "0.5,1"]).status.code(), Some(2));
}
