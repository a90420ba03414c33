use std::f64::consts::{PI, TAU};
use std::path::{Path, PathBuf};

use geonet_core::format::write_network;
use geonet_core::network::{make_network, CirclePoint, InteriorEdge, Network, Vertex};
use serde_json::Value;
use tempfile::TempDir;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn geonet(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("geonet").chain(args.iter().copied());
    let code = geonet_cli::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(o: &Output) -> Value {
    assert_eq!(o.code, 0, "stderr: {}", o.stderr);
    serde_json::from_str(&o.stdout).expect("stdout is JSON")
}

fn save(dir: &TempDir, name: &str, net: &Network) -> PathBuf {
    let path = dir.path().join(name);
    write_network(net, &path).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Kite with angles 0, θ, π, −θ where tan(θ/2) = 3/4.
fn kite() -> Network {
    let at = |n, d, m| Vertex::new(CirclePoint::from_ratio(n, d), m);
    make_network(
        vec![
            at(0, 1, 18),
            at(3, 4, 25),
            Vertex::new(
                CirclePoint::from_tan_half(&geonet_core::exact::TanHalf::Infinity),
                32,
            ),
            at(-3, 4, 25),
        ],
        vec![
            InteriorEdge::new(0, 1, 15),
            InteriorEdge::new(1, 2, 20),
            InteriorEdge::new(2, 3, 20),
            InteriorEdge::new(3, 0, 15),
        ],
    )
    .unwrap()
}

#[test]
fn validate_line() {
    let v = json(&geonet(&["validate", "--network", &data("line.json")]));
    assert_eq!(v["admissible"], true);
    assert_eq!(v["report"]["mode"], "exact");
    assert_eq!(v["invariants"]["exterior_parity"], "even");
}

#[test]
fn validate_missing_flag_is_usage_error() {
    let o = geonet(&["validate"]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("--network"));
}

#[test]
fn unknown_flag_and_missing_subcommand() {
    let o = geonet(&["certify-n3", "--frobnicate"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("--frobnicate"));
    assert!(o.stdout.is_empty());
    assert_eq!(geonet(&[]).code, 2);
    assert_eq!(geonet(&["bogus"]).code, 2);
}

#[test]
fn help_goes_to_stdout() {
    let o = geonet(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("certify-n3"));
}

#[test]
fn validate_rejects_unbalanced_line() {
    let dir = TempDir::new().unwrap();
    let net = make_network(
        vec![
            Vertex::new(CirclePoint::from_ratio(0, 1), 2),
            Vertex::new(CirclePoint::from_angle(PI), 3),
        ],
        vec![InteriorEdge::new(0, 1, 2)],
    )
    .unwrap();
    let path = save(&dir, "bad.json", &net);
    let o = geonet(&["validate", "--network", s(&path)]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("not admissible"));
}

#[test]
fn validate_kite_both_modes() {
    let dir = TempDir::new().unwrap();
    let path = save(&dir, "kite.json", &kite());
    assert_eq!(
        json(&geonet(&["validate", "--network", s(&path)]))["admissible"],
        true
    );
    let v = json(&geonet(&[
        "validate",
        "--network",
        s(&path),
        "--mode",
        "float",
    ]));
    assert_eq!(v["report"]["mode"], "float");
}

#[test]
fn unreadable_and_malformed_files() {
    let o = geonet(&["validate", "--network", "/nonexistent/net.json"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.is_empty());
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("v.json");
    std::fs::write(
        &path,
        r#"{"version":"geonet/999","vertices":[],"edges":[]}"#,
    )
    .unwrap();
    let o = geonet(&["render", "--network", s(&path)]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("geonet/999"));
}

#[test]
fn certify_n3_prints_witness() {
    let v = json(&geonet(&["certify-n3"]));
    assert_eq!(v["witness"], "(3/4)·π is not a rational point");
    assert_eq!(v["difference"], "(3/4)·π");
    assert_eq!(v["rationality"], "forced-irrational");
}

#[test]
fn enumerate_json_lines() {
    let o = geonet(&["enumerate", "--n", "6", "--max-only"]);
    assert_eq!(o.code, 0);
    let lines: Vec<Value> = o
        .stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 14);
    assert!(lines
        .iter()
        .all(|l| l["chords"].as_array().unwrap().len() == 3));
    let all = geonet(&["enumerate", "--n", "4", "--allow-adjacent"]);
    assert_eq!(all.stdout.lines().count(), 3 << 4);
    assert_eq!(geonet(&["enumerate", "--n", "13"]).code, 2);
}

#[test]
fn solve_line() {
    let v = json(&geonet(&[
        "solve",
        "--network",
        &data("line.json"),
        "--bound",
        "4",
    ]));
    assert_eq!(v["kernel"], serde_json::json!([[1, 1, 1]]));
    assert_eq!(v["solutions"].as_array().unwrap().len(), 4);
    let fixed = json(&geonet(&[
        "solve",
        "--network",
        &data("line.json"),
        "--fix-exterior",
    ]));
    assert_eq!(fixed["solutions"], serde_json::json!([[2]]));
    assert_eq!(
        geonet(&["solve", "--network", &data("line.json"), "--bound", "0"]).code,
        2
    );
}

#[test]
fn replace_line_and_kite() {
    let v = json(&geonet(&[
        "replace",
        "--network",
        &data("line.json"),
        "--vertex",
        "1",
        "--bound",
        "3",
    ]));
    assert_eq!(v["replacement"]["edges"][0]["m"], 2);
    let dir = TempDir::new().unwrap();
    let path = save(&dir, "kite.json", &kite());
    let v = json(&geonet(&[
        "replace",
        "--network",
        s(&path),
        "--vertex",
        "0",
        "--bound",
        "5",
        "--all",
    ]));
    assert!(v["replacements"].is_array());
    assert_eq!(v["problem"]["directions"].as_array().unwrap().len(), 3);
    assert_eq!(
        geonet(&["replace", "--network", s(&path), "--vertex", "9"]).code,
        2
    );
}

#[test]
fn audit_line_and_limits() {
    let v = json(&geonet(&[
        "audit",
        "--network",
        &data("line.json"),
        "--depth",
        "3",
        "--bound",
        "4",
    ]));
    assert_eq!(v["status"], "good-to-depth-3");
    assert_eq!(v["witness"]["chain"].as_array().unwrap().len(), 4);
    assert_eq!(
        geonet(&[
            "audit",
            "--network",
            &data("line.json"),
            "--depth",
            "5",
            "--bound",
            "4"
        ])
        .code,
        2
    );
    assert_eq!(
        geonet(&[
            "audit",
            "--network",
            &data("line.json"),
            "--depth",
            "1",
            "--bound",
            "51"
        ])
        .code,
        2
    );
}

#[test]
fn audit_refutes_kite() {
    let dir = TempDir::new().unwrap();
    let path = save(&dir, "kite.json", &kite());
    let v = json(&geonet(&[
        "audit",
        "--network",
        s(&path),
        "--depth",
        "2",
        "--bound",
        "20",
    ]));
    assert!(
        v["status"]
            .as_str()
            .unwrap()
            .starts_with("refuted-at-depth-"),
        "{v}"
    );
    assert_eq!(v["witness"]["kind"], "infeasible");
}

#[test]
fn sweep_matches_closed_form_and_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("profile.csv");
    let v = json(&geonet(&[
        "sweep",
        "--c",
        "0.5",
        "--samples",
        "101",
        "--emit-csv",
        s(&csv),
    ]));
    let value = v["value"].as_f64().unwrap();
    assert!((value - TAU * (1.25f64.sqrt() - 0.5)).abs() < 1e-8);
    assert!(v.get("flow_curve").is_none());
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "t,c_length");
    assert_eq!(rows.len(), 102);
    assert_eq!(geonet(&["sweep", "--c", "-1"]).code, 2);
    assert_eq!(geonet(&["sweep", "--c", "1", "--samples", "2"]).code, 2);
}

#[test]
fn sweep_flow() {
    let v = json(&geonet(&["sweep", "--c", "1", "--flow"]));
    let flow = &v["flow_curve"];
    assert!(flow["iterations"].as_u64().unwrap() < 100_000);
    assert!(flow["max_deviation"].as_f64().unwrap() < 1e-3);
    assert_eq!(flow["points"].as_array().unwrap().len(), 256);
}

fn pentagon_path() -> Network {
    let vertices = (0..5)
        .map(|k| Vertex::new(CirclePoint::from_angle(TAU * k as f64 / 5.0), 1))
        .collect();
    let edges = (0..4)
        .map(|k| InteriorEdge::new(k, k + 1, k as u64 + 1))
        .collect();
    make_network(vertices, edges).unwrap()
}

#[test]
fn render_is_wellformed_and_counts_elements() {
    let dir = TempDir::new().unwrap();
    let path = save(&dir, "p.json", &pentagon_path());
    let o = geonet(&["render", "--network", s(&path)]);
    assert_eq!(o.code, 0);
    let doc = roxmltree::Document::parse(&o.stdout).expect("well-formed SVG");
    let count = |class: &str| {
        doc.descendants()
            .filter(|n| n.attribute("class") == Some(class))
            .count()
    };
    assert_eq!(
        (count("chord"), count("ray"), count("unit-circle")),
        (4, 5, 1)
    );
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    assert_eq!(o.stdout, geonet(&["render", "--network", s(&path)]).stdout);
    let bare = geonet(&["render", "--network", s(&path), "--no-labels"]);
    assert_eq!(
        roxmltree::Document::parse(&bare.stdout)
            .unwrap()
            .descendants()
            .filter(|n| n.has_tag_name("text"))
            .count(),
        0
    );
}

#[test]
fn render_rejects_small_canvas() {
    let o = geonet(&["render", "--network", &data("line.json"), "--canvas", "32"]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.is_empty());
}
