use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn augcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_augcat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Files {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }
}

#[test]
fn iso_reflexive_unknot() {
    let f = Files::new();
    let t1 = f.put("t1.aug", "t=1\n");
    let dga = corpus("unknot_gf2.dga");
    let o = augcat(&["iso", dga.to_str().unwrap(), "--e1", &t1, "--e2", &t1]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "ISO\nd = (1)\n");
}

#[test]
fn not_iso_exit_4() {
    let f = Files::new();
    let e1 = f.put("e1.aug", "e=1");
    let e0 = f.put("e0.aug", "e=0");
    let dga = corpus("dgaA_gf2.dga");
    let o = augcat(&["iso", dga.to_str().unwrap(), "--e1", &e1, "--e2", &e0]);
    assert_eq!(code(&o), 4);
    assert_eq!(stdout(&o), "NOT-ISO\n");
}

#[test]
fn iso_needs_dilation_over_gf4() {
    let f = Files::new();
    let e1 = f.put("e1.aug", "e=1");
    let e2 = f.put("e2.aug", "e=g");
    let dga = corpus("dgaA_gf4.dga");
    let dga = dga.to_str().unwrap();
    let o = augcat(&["iso", dga, "--e1", &e1, "--e2", &e2]);
    assert_eq!(stdout(&o), "ISO\nd = (1, g+1)\n");
    let o = augcat(&["iso", dga, "--e1", &e1, "--e2", &e2, "--mode", "plain"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn classes_table_and_json() {
    let dga = corpus("dgaA_gf4.dga");
    let o = augcat(&["classes", dga.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let sizes: Vec<&str> = out.lines().skip(2).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(sizes, vec!["1", "3"]);

    let o = augcat(&["classes", dga.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["augmentations"], 4);
    assert_eq!(v["classes"][1]["size"], 3);
    assert_eq!(v["classes"][1]["dilation_only"], true);
}

#[test]
fn classes_audit_clean() {
    let dga = corpus("hopf_gf4.dga");
    let o = augcat(&["classes", dga.to_str().unwrap(), "--audit"]);
    assert_eq!(code(&o), 0);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("result: clean"), "{err}");
}

#[test]
fn field_override() {
    let dga = corpus("dgaA_gf2.dga");
    let o = augcat(&["--field", "2^2", "classes", dga.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["field"], "2^2");
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    assert_eq!(code(&augcat(&["--field", "2^0", "augs", dga.to_str().unwrap()])), 1);
}

#[test]
fn augs_listing() {
    let dga = corpus("trefoil_gf2.dga");
    let o = augcat(&["augs", dga.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().all(|l| l.starts_with("a1=")));
}

#[test]
fn verify_and_cocycle() {
    let f = Files::new();
    let dga = corpus("dgaB_gf4.dga");
    let dga = dga.to_str().unwrap();
    let e1 = f.put("e1.aug", "e=0");
    let e2 = f.put("e2.aug", "e=1");
    let good = f.put("good.hom", "d = (1)\nK b = 1\n");
    let bad = f.put("bad.hom", "d = (1)\nK b = g\n");
    let o = augcat(&["verify", dga, "--e1", &e1, "--e2", &e2, "--witness", &good]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "HOLDS\n"));
    let o = augcat(&["verify", dga, "--e1", &e1, "--e2", &e2, "--witness", &bad]);
    assert_eq!((code(&o), stdout(&o).as_str()), (4, "FAILS at e\n"));

    let a = f.put("a.hom0", "alpha = (1)\nK b = 1\n");
    let o = augcat(&["cocycle", dga, "--e1", &e1, "--e2", &e2, "--elem", &a]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "COCYCLE\n"));
    let a = f.put("a2.hom0", "alpha = (1)\n");
    let o = augcat(&["cocycle", dga, "--e1", &e1, "--e2", &e2, "--elem", &a]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).starts_with("NOT-COCYCLE\nm1 = (1)*e^v"));
}

#[test]
fn bch_output() {
    let f = Files::new();
    let t = f.put("t.aug", "t=1");
    let dga = corpus("unknot_gf2.dga");
    let o = augcat(&["bch", dga.to_str().unwrap(), "--e1", &t, "--e2", &t]);
    assert_eq!(stdout(&o), "degree 2: 1\npoincare: t^2\n");
}

#[test]
fn exit_codes() {
    let f = Files::new();
    assert_eq!(code(&augcat(&[])), 1);
    assert_eq!(code(&augcat(&["frobnicate"])), 1);
    assert_eq!(code(&augcat(&["--help"])), 0);

    let syntax = f.put("s.dga", "field 2^1\ncomponents 1\ngen a one 1 1 chord\n");
    assert_eq!(code(&augcat(&["validate", &syntax])), 2);
    assert_eq!(code(&augcat(&["augs", "/nonexistent.dga"])), 2);

    let invalid = f.put(
        "i.dga",
        "field 2^1\ncomponents 1\ngen a 1 1 1 chord\ngen e 0 1 1 chord\ngen b -1 1 1 chord\ndiff a = e\ndiff e = b\ndiff b = 0\n",
    );
    let o = augcat(&["validate", &invalid]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("dda != 0: surviving word b"), "{}", stdout(&o));
    assert_eq!(code(&augcat(&["augs", &invalid])), 3);

    let dga = corpus("dgaB_gf4.dga");
    let bad_aug = f.put("x.aug", "e=g^2");
    let good = f.put("y.aug", "e=1");
    assert_eq!(code(&augcat(&["iso", dga.to_str().unwrap(), "--e1", &bad_aug, "--e2", &good])), 2);
    assert_eq!(code(&augcat(&["classes", dga.to_str().unwrap(), "--limit", "3"])), 5);
    assert_eq!(code(&augcat(&["validate", dga.to_str().unwrap()])), 0);
}

#[test]
fn output_independent_of_threads() {
    let dga = corpus("hopf_stab_gf4.dga");
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_augcat"))
            .args(["classes", dga.to_str().unwrap(), "--json"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("4"));
}

#[test]
fn regen_check_matches_committed_goldens() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let o = augcat(&["regen", "--check", "--corpus", dir.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("STALE"));
}

#[test]
fn regen_writes_and_detects_stale() {
    let f = Files::new();
    std::fs::copy(corpus("dgaB_gf4.dga"), f.0.path().join("b.dga")).unwrap();
    let dir = f.0.path().to_str().unwrap();
    assert_eq!(code(&augcat(&["regen", "--check", "--corpus", dir])), 4);
    assert_eq!(code(&augcat(&["regen", "--corpus", dir])), 0);
    assert_eq!(code(&augcat(&["regen", "--check", "--corpus", dir])), 0);
    f.put("b.json", "{\"schema\": 1}");
    let o = augcat(&["regen", "--check", "--corpus", dir]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("MISSING") || stdout(&o).contains("STALE"));
}

#[test]
fn selfcheck_runs() {
    let dga = corpus("hopf_gf4.dga");
    let o = augcat(&["--seed", "7", "selfcheck", dga.to_str().unwrap(), "--samples", "50"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("selfcheck: ok\n"));
}
