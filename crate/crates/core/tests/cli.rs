use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn slata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slata"))
        .args(args)
        .output()
        .expect("run slata")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

const CHAIN3: &str = r#"{"size": 3, "meet": [[0,0,0],[0,1,1],[0,1,2]], "top": 2}"#;

#[test]
fn validate_exit_codes() {
    let ok = file(CHAIN3);
    assert_eq!(
        slata(&["validate", "--kind", "semilattice", path(&ok)])
            .status
            .code(),
        Some(0)
    );

    let bad = file(r#"{"size": 3, "meet": [[0,0,0],[0,1,0],[0,1,2]], "top": 2}"#);
    let out = slata(&["validate", "--kind", "semilattice", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness"));

    let broken = file("{\"size\": 3,\n \"meet\": [[0,0,0]");
    let out = slata(&["validate", "--kind", "semilattice", path(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("line 2"));

    assert_eq!(
        slata(&["validate", "--kind", "semilattice", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
    assert_ne!(
        slata(&["validate", "--kind", "lattice", path(&ok)])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn space_s4_guard_exits_3() {
    let g = slata(&["gen", "--kind", "space", "--seed", "3", "--max-size", "7"]);
    assert_eq!(g.status.code(), Some(0));
    let f = file(&stdout(&g));
    let out = slata(&["validate", "--kind", "space", "--s4-limit", "0", path(&f)]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    assert!(stdout(&out).contains("skipped"));
}

#[test]
fn dualize_boolean_slata_includes_n_d() {
    let boolean = r#"{"semilattice": {"size": 4, "meet": [[0,0,0,0],[0,1,0,1],[0,0,2,2],[0,1,2,3]], "top": 3},
                      "i": [0,0,0,0], "d": [3,3,3,3]}"#;
    let f = file(boolean);
    let out = slata(&["dualize", path(&f)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["bundle"]["space"]["points"], 2);
    assert_eq!(v["n_d"], serde_json::json!([]));
}

#[test]
fn convert_roundtrips_are_byte_identical() {
    for seed in ["1", "2", "5"] {
        let ss = slata(&[
            "gen",
            "--kind",
            "slataspace",
            "--seed",
            seed,
            "--max-size",
            "6",
        ]);
        assert_eq!(ss.status.code(), Some(0));
        let ss_text = stdout(&ss);
        let q = slata(&["convert", "--direction", "q", path(&file(&ss_text))]);
        assert_eq!(q.status.code(), Some(0));
        let q_text = stdout(&q);
        assert_eq!(
            stdout(&slata(&[
                "convert",
                "--direction",
                "p",
                path(&file(&q_text))
            ])),
            ss_text
        );

        let r = slata(&["convert", "--direction", "t2r", path(&file(&q_text))]);
        assert_eq!(
            stdout(&slata(&[
                "convert",
                "--direction",
                "r2t",
                path(&file(&stdout(&r)))
            ])),
            q_text
        );

        let g = slata(&["convert", "--direction", "t2g", path(&file(&q_text))]);
        assert_eq!(g.status.code(), Some(0));
        let rg = slata(&["convert", "--direction", "g2r", path(&file(&stdout(&g)))]);
        assert_eq!(rg.status.code(), Some(0));
        assert_eq!(
            slata(&["validate", "--kind", "multirel", path(&file(&stdout(&rg)))])
                .status
                .code(),
            Some(0)
        );
    }
}

#[test]
fn r2t_rejects_non_normal() {
    // A fiber containing ∅ violates (N2).
    let doc = r#"{"space": {"points": 1, "subbase": [[], [0]]}, "fibers": [[[]]]}"#;
    let out = slata(&["convert", "--direction", "r2t", path(&file(doc))]);
    assert_ne!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("N2"), "{}", stdout(&out));
}

#[test]
fn generated_artifacts_revalidate() {
    for kind in [
        "semilattice",
        "slata",
        "space",
        "relation",
        "multirel",
        "sigma",
        "slataspace",
    ] {
        for seed in ["1", "9"] {
            let g = slata(&["gen", "--kind", kind, "--seed", seed, "--max-size", "6"]);
            assert_eq!(g.status.code(), Some(0), "{kind}: {}", stdout(&g));
            let v = slata(&["validate", "--kind", kind, path(&file(&stdout(&g)))]);
            assert_eq!(v.status.code(), Some(0), "{kind}: {}", stdout(&v));
        }
    }
}

#[test]
fn gen_is_deterministic() {
    let a = slata(&["gen", "--kind", "relation", "--seed", "42"]);
    let b = slata(&["gen", "--kind", "relation", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_count_zero_passes() {
    let out = slata(&["selftest", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("ChaCha8Rng"));
}

#[test]
fn export_dot() {
    let poset =
        file(r#"{"size": 3, "leq": [[true,true,true],[false,true,true],[false,false,true]]}"#);
    let out = slata(&["export-dot", "--kind", "poset", path(&poset)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("->").count(), 2);

    let rel = slata(&[
        "gen",
        "--kind",
        "relation",
        "--seed",
        "4",
        "--max-size",
        "5",
    ]);
    let dot = slata(&[
        "export-dot",
        "--kind",
        "relation",
        path(&file(&stdout(&rel))),
    ]);
    assert!(stdout(&dot).contains("cluster_source"));
    let gen_dot = slata(&["gen", "--kind", "space", "--format", "dot"]);
    assert!(stdout(&gen_dot).starts_with("digraph space"));
}
