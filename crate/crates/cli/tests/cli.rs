use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn willmore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_willmore"))
        .args(args)
        .env_remove("WILLMORE_MODE")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad report ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn check<'a>(r: &'a Value, id: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("no check {id} in {r}"))
}

fn assert_all_pass(r: &Value) {
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "PASS", "{c}");
    }
    assert_eq!(r["status"], "PASS");
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn first_example_verifies() {
    let out = willmore(&["verify", path_str(&fixture("example1.json"))]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_all_pass(&r);
    for id in ["conformal", "isotropy", "contact", "willmore", "theta", "s_willmore", "umbilics", "ends", "energy"] {
        check(&r, id);
    }
    assert_eq!(check(&r, "s_willmore")["witness"]["s_willmore_near_p"], false);
    assert_eq!(check(&r, "energy")["witness"]["nearest_multiple"], 6);
}

#[test]
fn nonconformal_data_fails() {
    let out = willmore(&["verify", path_str(&fixture("nonconformal.json"))]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "FAIL");
    let w = check(&r, "conformal")["witness"]["error"].as_str().unwrap().to_string();
    assert!(w.contains("not conformal"), "{w}");
}

#[test]
fn third_example_verifies_with_a_branch_point_at_infinity() {
    let out = willmore(&["verify", path_str(&fixture("example3.json"))]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_all_pass(&r);
    let branches = r["data"]["base_branch_points"].as_array().unwrap();
    assert_eq!(branches.len(), 1);
    assert_eq!(branches[0]["location"], "infinity");
    let d: Vec<&str> = branches[0]["xhat_derivative"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(d, ["1/88-1/520*i", "-1/520-1/88*i", "1/120+1/140*i", "1/140-1/120*i", "0"]);
    assert_eq!(check(&r, "energy")["witness"]["nearest_multiple"], 22);
}

#[test]
fn second_example_gram_matrix() {
    let out = willmore(&["gram", path_str(&fixture("example2_ansatz.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let expected = [
        ["0", "0", "-1", "-2", "1", "1"],
        ["0", "0", "2", "5/2", "1", "-1/2"],
        ["-1", "2", "0", "0", "1", "-2"],
        ["-2", "5/2", "0", "0", "-1", "1/2"],
        ["1", "1", "1", "-1", "0", "0"],
        ["1", "-1/2", "-2", "1/2", "0", "0"],
    ];
    assert_eq!(r["data"]["gram_matrix"], serde_json::to_value(expected).unwrap());
    let w = &check(&r, "realization")["witness"];
    assert_eq!(w["rank"], 6);
    assert_eq!(w["signature"]["positive"], 3);
    assert_eq!(w["signature"]["negative"], 3);
    assert_eq!(check(&r, "assembled")["witness"]["isotropy_order"], 1);
}

#[test]
fn third_example_gram_lambdas() {
    let out = willmore(&["gram", path_str(&fixture("example3_ansatz.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let mut got: Vec<(u64, u64, String)> = r["data"]["lambda"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| (l["j"].as_u64().unwrap(), l["k"].as_u64().unwrap(), l["value"].as_str().unwrap().to_string()))
        .collect();
    got.sort();
    let want = [(0, 8, "1"), (3, 5, "-16"), (3, 8, "-20"), (4, 4, "30"), (5, 9, "20")];
    assert_eq!(got, want.map(|(j, k, v)| (j, k, v.to_string())));
    assert_eq!(check(&r, "realization")["witness"]["rank"], 5);
}

#[test]
fn contradictory_pins_name_the_constraint() {
    let out = willmore(&["gram", path_str(&fixture("example2_ansatz.json")), "--pins", "0,3=1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let w = &check(&r, "solve")["witness"];
    assert_eq!(check(&r, "solve")["status"], "FAIL");
    assert!(w["constraint"].as_str().unwrap().contains("pin"), "{w}");
}

#[test]
fn realized_spec_round_trips_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("realized.json");
    let out = willmore(&["gram", path_str(&fixture("example2_ansatz.json")), "--spec-out", path_str(&spec)]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&spec).unwrap();
    assert_eq!(written, std::fs::read_to_string(fixture("example2.json")).unwrap());
    let out = willmore(&["verify", path_str(&spec)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_all_pass(&r);
    assert_eq!(check(&r, "s_willmore")["witness"]["s_willmore_near_samples"], true);
}

#[test]
fn reports_are_byte_identical() {
    let a = willmore(&["verify", path_str(&fixture("example1.json"))]);
    let b = willmore(&["verify", path_str(&fixture("example1.json"))]);
    assert_eq!(a.stdout, b.stdout);
    let a = willmore(&["gram", path_str(&fixture("example3_ansatz.json"))]);
    let b = willmore(&["gram", path_str(&fixture("example3_ansatz.json"))]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_file_and_stdout_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let a = willmore(&["ends", path_str(&fixture("example2.json"))]);
    let b = willmore(&["ends", path_str(&fixture("example2.json")), "--out", path_str(&path)]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert!(b.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn transforms_and_flags() {
    let e1 = fixture("example1.json");
    for chart in ["z", "w"] {
        let out = willmore(&["pedal", path_str(&e1), "--chart", chart]);
        assert_eq!(out.status.code(), Some(0));
    }
    let out = willmore(&["adjoint", path_str(&e1), "--g", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&report(&out), "recover_g")["witness"]["g"], "(1)*z");
    let out = willmore(&["pedal", path_str(&fixture("plane.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let out = willmore(&["verify", "/nonexistent/spec.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = willmore(&["verify", path_str(&e1), "--mode", "interval"]);
    assert_eq!(out.status.code(), Some(2));
}

fn obj(path: &Path) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let text = std::fs::read_to_string(path).unwrap();
    let (mut v, mut f) = (vec![], vec![]);
    for line in text.lines() {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let x: Vec<f64> = it.map(|t| t.parse().unwrap()).collect();
                v.push([x[0], x[1], x[2]]);
            }
            Some("f") => {
                let x: Vec<usize> = it.map(|t| t.parse().unwrap()).collect();
                f.push([x[0], x[1], x[2]]);
            }
            _ => {}
        }
    }
    (v, f)
}

#[test]
fn first_example_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pedal.obj");
    let spec = fixture("example1.json");
    let args = ["mesh", path_str(&spec), "--grid", "64", "--project", "1,2,5", "--out", path_str(&path)];
    let out = willmore(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (v, f) = obj(&path);
    assert_eq!(v.len(), 2 * 64 * 64);
    assert!(v.iter().flatten().all(|x| x.is_finite()));
    assert!(f.iter().flatten().all(|&i| (1..=v.len()).contains(&i)));
    let csv = std::fs::read_to_string(path.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().count(), 2 * 64 * 64 + 1);
    assert!(csv.starts_with("chart,ring,step,u_re,u_im,x1,x2,x3,x4,x5,x6\n"));

    let first = std::fs::read(&path).unwrap();
    let again = willmore(&args);
    assert_eq!(again.stdout, out.stdout);
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn plane_mesh_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plane.obj");
    let out = willmore(&["mesh", path_str(&fixture("plane.json")), "--grid", "16", "--out", path_str(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let (v, f) = obj(&path);
    let normal = |t: &[usize; 3]| {
        let [a, b, c] = t.map(|i| v[i - 1]);
        let (u, w) = ([b[0] - a[0], b[1] - a[1], b[2] - a[2]], [c[0] - a[0], c[1] - a[1], c[2] - a[2]]);
        let n = [u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]];
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        n.map(|x| x / len)
    };
    let n0 = normal(&f[0]);
    for t in &f {
        let n = normal(t);
        let cross = [n[1] * n0[2] - n[2] * n0[1], n[2] * n0[0] - n[0] * n0[2], n[0] * n0[1] - n[1] * n0[0]];
        assert!(cross.iter().all(|c| c.abs() < 1e-9), "{n:?} vs {n0:?}");
    }
}

#[test]
fn projection_out_of_range_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.obj");
    let out = willmore(&["mesh", path_str(&fixture("example1.json")), "--project", "1,2,7", "--out", path_str(&path)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
    let out = willmore(&["mesh", path_str(&fixture("example1.json")), "--grid", "1", "--out", path_str(&path)]);
    assert_eq!(out.status.code(), Some(2));
}
