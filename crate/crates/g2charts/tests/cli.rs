mod common;

use std::path::PathBuf;

use common::data_path;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("g2charts").chain(args.iter().copied());
    let code = g2charts::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn data(name: &str) -> String {
    data_path(name).to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("g2charts-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn counts_of_systems_and_charts() {
    for (file, expect) in [("w0.hs", "20 0 0 0"), ("w2.hs", "28 0 1 0"), ("w2p.hs", "0 0 1 1"), ("n1.chart", "30 0 0 0")] {
        let (code, out, err) = run(&["counts", &data(file)]);
        assert_eq!(code, 0, "{file}: {err}");
        assert!(out.contains(expect), "{file}: {out}");
    }
}

#[test]
fn validate_and_bad_input() {
    let (code, out, _) = run(&["validate", &data("bigon.chart")]);
    assert_eq!((code, out.trim()), (0, "valid"));
    let bad = scratch("bad.chart");
    std::fs::write(&bad, "[vertices]\nv0 d4 +e0\n").unwrap();
    let (code, out, _) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid"), "{out}");
    let garbage = scratch("garbage.chart");
    std::fs::write(&garbage, "[vertices]\nv0 d99\n").unwrap();
    let (code, _, err) = run(&["validate", garbage.to_str().unwrap()]);
    assert_eq!(code, 3, "{err}");
    assert!(err.starts_with("error["), "{err}");
    let (code, _, err) = run(&["validate", "/nonexistent/x.chart"]);
    assert_eq!(code, 4, "{err}");
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn normal_form_line() {
    let (code, out, _) = run(&["normal-form", "--counts", "28,0,1,0"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "E=0 eps=0 a=0 b=0 c=1 d=0 e=0 m0=3");
    let (code, out, _) = run(&["normal-form", "--counts", "0,0,1,1"]);
    assert_eq!(code, 0);
    assert!(out.contains("e=1") && out.contains("m0=Unknown"), "{out}");
    let (code, _, _) = run(&["normal-form", "--counts", "7,0,0,0"]);
    assert_eq!(code, 1);
}

#[test]
fn words() {
    let (code, out, _) = run(&["word", "--check", "z1 z3 z1' z3'"]);
    assert_eq!((code, out.trim()), (0, "Yes"));
    let (_, out, _) = run(&["word", "--check", "z1 z2"]);
    assert_eq!(out.trim(), "No");
}

#[test]
fn convert_fiber_sum_and_render() {
    let chart = scratch("w1p.chart");
    let (code, _, err) = run(&["convert", &data("w1p.hs"), "-o", chart.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = run(&["counts", chart.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("1 1 0 0"), "{out}");
    let (code, out, _) = run(&["fiber-sum", &data("w0.hs"), &data("w1p.hs")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains('|')).count(), 22, "{out}");
    let (code, out, _) = run(&["render", &data("n0.chart"), "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    let (code, out, _) = run(&["render", &data("f1.chart"), "--format", "svg"]);
    assert_eq!(code, 0);
    assert!(out.contains("<svg"));
}

#[test]
fn moves() {
    let (code, out, _) = run(&["move", "--list"]);
    assert_eq!(code, 0);
    assert!(out.contains("absorb-d22") && out.contains("fig17"));
    let (code, out, _) = run(&["move", "--chart", &data("bigon.chart"), "--sites", "d4-bigon"]);
    assert_eq!(code, 0);
    assert!(out.contains("d4-bigon vertices"), "{out}");
    let (code, out, err) = run(&["move", "--chart", &data("bigon.chart"), "--apply", "d4-bigon vertices v0 v1"]);
    assert_eq!(code, 0, "{err}");
    assert!(!out.contains(" d4 "), "{out}");
    let (code, _, err) = run(&["move", "--chart", &data("n0.chart"), "--apply", "hoop-remove edge e0"]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = run(&["move", "--chart", &data("n2.chart"), "--apply", "fig17 vertex v0:0"]);
    assert_eq!(code, 1);
}

#[test]
fn search_distinguishes_w0_w1() {
    let (code, out, _) = run(&["search", &data("w0.hs"), &data("w1.hs")]);
    assert_eq!(code, 0);
    assert!(out.contains("Distinct"), "{out}");
}

#[test]
fn stabilize_emits_replayable_certificate() {
    let cert = scratch("f2.cert");
    let (code, out, err) =
        run(&["stabilize", "--chart", &data("f2.chart"), "--m", "3", "--emit-certificate", cert.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("E=0"), "{out}");
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.starts_with("[certificate]"));
    let (code, out, err) =
        run(&["stabilize", "--chart", &data("f2.chart"), "--replay", cert.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}{out}");
    let (code, out, _) = run(&["stabilize", "--check-candidate"]);
    assert_eq!(code, 0, "{out}");
}
