use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spiralseq"))
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("spiralseq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn random_is_byte_identical() {
    for kind in ["bicomplex", "bisimplicial", "cochain", "cosimplicial"] {
        let (a, b) = (tmp(&format!("{kind}-a.json")), tmp(&format!("{kind}-b.json")));
        for f in [&a, &b] {
            let (code, _) = run(&["random", "--seed", "7", "--kind", kind, "--N", "3", "--Q", "3", "--out", f.to_str().unwrap()]);
            assert_eq!(code, 0);
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{kind}");
    }
}

#[test]
fn constant_object_has_one_entry() {
    let input = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/constant.json");
    let (code, out) = run(&["spiral", "--in", input, "--rmax", "6", "--verify", "all", "--format", "tsv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.split('\t').skip(1).collect::<Vec<_>>() == ["0", "0", "1", "0"]));
}

#[test]
fn spiral_and_totss_verify_random_inputs() {
    for (kind, cmd) in [("bicomplex", "spiral"), ("bisimplicial", "spiral"), ("cochain", "totss"), ("cosimplicial", "totss")] {
        let f = tmp(&format!("{kind}-in.json"));
        assert_eq!(run(&["random", "--seed", "5", "--kind", kind, "--N", "2", "--Q", "2", "--p", "3", "--out", f.to_str().unwrap()]).0, 0);
        let (code, out) = run(&[cmd, "--in", f.to_str().unwrap(), "--verify", "all"]);
        assert_eq!(code, 0, "{kind}: {out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    }
}

#[test]
fn schema_errors_exit_two() {
    let f = tmp("bad.json");
    std::fs::write(&f, r#"{"p":4,"dims":{}}"#).unwrap();
    assert_eq!(run(&["spiral", "--in", f.to_str().unwrap()]).0, 2);
    std::fs::write(&f, r#"{"p":2,"dims":{"1,0":1,"0,0":1},"dh":{"1,0":[[1,1]]},"dv":{}}"#).unwrap();
    assert_eq!(run(&["spiral", "--in", f.to_str().unwrap()]).0, 2);
    std::fs::write(&f, "not json").unwrap();
    assert_eq!(run(&["totss", "--in", f.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["verify", "--suite", "nope"]).0, 2);
    assert_eq!(run(&["perm", "--n", "2", "--format", "tsv"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
}

#[test]
fn verify_suites_pass() {
    let (code, out) = run(&["verify", "--suite", "prop5.4", "--max-gap", "4"]);
    assert_eq!(code, 0, "{out}");
    for s in ["lemma5.3", "labels", "con4.2"] {
        assert_eq!(run(&["verify", "--suite", s, "--seeds", "10"]).0, 0, "{s}");
    }
}

#[test]
fn gen_dk_and_perm_outputs() {
    let (code, out) = run(&["gen-dk", "--cat", "delta-op", "--from", "3", "--to", "0", "--component", "d0d1d2"]);
    assert_eq!(code, 0);
    let j: spiralseq::sset::SSetJson = serde_json::from_str(&out).unwrap();
    let s = spiralseq::sset::SSet::from_json(&j).unwrap();
    assert_eq!(s.f_vector(), vec![13, 24, 12]);
    let (_, whole) = run(&["gen-dk", "--from", "2", "--to", "0", "--max-dim", "1"]);
    let s = spiralseq::sset::SSet::from_json(&serde_json::from_str(&whole).unwrap()).unwrap();
    assert_eq!(s.num_components(), 3);
    let (code, lat) = run(&["perm", "--n", "3", "--emit", "lattice"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&lat).unwrap();
    assert_eq!(v["f_vector"], serde_json::json!([24, 36, 14, 1]));
    let (code, dot) = run(&["perm", "--n", "2", "--emit", "complex", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("graph complex"));
    assert_eq!(run(&["gen-dk", "--from", "3", "--to", "1", "--component", "d0d1d2"]).0, 2);
}

#[test]
fn homology_of_sset_file() {
    let f = tmp("s2.json");
    let s = spiralseq::sset::boundary(3);
    std::fs::write(&f, serde_json::to_string(&s.to_json()).unwrap()).unwrap();
    let (code, out) = run(&["homology", "--in", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let betti: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti, vec![1, 0, 1]);
}
