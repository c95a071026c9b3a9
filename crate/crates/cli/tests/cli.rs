use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const TWO_K4: &str = "a b\na c\na d\nb c\nb d\nc d\ne f\ne g\ne h\nf g\nf h\ng h\nd e\n";

fn totkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_totkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn verify(dir: &TempDir, artifact: &Output) -> Output {
    assert!(
        artifact.status.success(),
        "{}",
        String::from_utf8_lossy(&artifact.stderr)
    );
    let p = write(dir, "artifact.json", std::str::from_utf8(&artifact.stdout).unwrap());
    totkit(&["verify", "--input", s(&p)])
}

#[test]
fn tot_on_two_k4s() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", TWO_K4);
    let out = totkit(&["tot", "--input", s(&g)]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["schema"], "totkit/1");
    assert_eq!(doc["profiles"], 3);
    assert_eq!(doc["separations"].as_array().unwrap().len(), 2);
    let bags: Vec<&Value> = doc["decomposition"]["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| &n["bag"])
        .collect();
    assert!(bags.contains(&&json!(["a", "b", "c", "d"])));
    assert!(bags.contains(&&json!(["e", "f", "g", "h"])));

    let dot = totkit(&["tot", "--input", s(&g), "--format", "dot"]);
    let dot = String::from_utf8(dot.stdout).unwrap();
    assert!(dot.starts_with("graph decomposition {"));
    assert!(dot.contains("label=\"a b c d\"") && dot.contains("label=\"e f g h\""));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", TWO_K4);
    for cmd in ["tot", "canonical-tot", "clique-tot"] {
        assert_eq!(
            totkit(&[cmd, "--input", s(&g)]).stdout,
            totkit(&[cmd, "--input", s(&g)]).stdout
        );
    }
}

#[test]
fn artifacts_pass_their_own_verification() {
    let dir = TempDir::new().unwrap();
    let graphs = [
        TWO_K4,
        "1 2\n2 3\n3 4\n4 1\n1 5\n2 5\n",
        "1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n",
    ];
    for (i, text) in graphs.iter().enumerate() {
        let g = write(&dir, &format!("g{i}.txt"), text);
        for args in [
            vec!["tot"],
            vec!["tot", "--profiles", "all", "--measure", "sequence"],
            vec!["canonical-tot"],
            vec!["canonical-tot", "--prune-redundant"],
            vec!["clique-tot"],
            vec!["tot", "--k", "2"],
        ] {
            let mut full = args.clone();
            full.extend(["--input", s(&g)]);
            let out = verify(&dir, &totkit(&full));
            assert!(
                out.status.success(),
                "{args:?} on graph {i}: {}",
                String::from_utf8_lossy(&out.stdout)
            );
            assert_eq!(json_of(&out)["ok"], true);
        }
    }
    let circle = write(&dir, "c.json", r#"{"points": [1, 2, 3, 4, 5, 6]}"#);
    for m in ["1", "2"] {
        let out = verify(
            &dir,
            &totkit(&["circle-tangles", "--input", s(&circle), "--m", m, "--n", "4"]),
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn tampered_artifact_fails_verification() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", TWO_K4);
    let mut doc = json_of(&totkit(&["tot", "--input", s(&g)]));
    doc["separations"][0] = json!({"a": ["a", "b", "c", "d", "e", "f"], "b": ["c", "d", "e", "f", "g", "h"]});
    let p = write(&dir, "bad.json", &doc.to_string());
    let out = totkit(&["verify", "--input", s(&p)]);
    assert_eq!(out.status.code(), Some(4));
    let report = json_of(&out);
    assert_eq!(report["ok"], false);
    let nested = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == "nested")
        .unwrap();
    assert_eq!(nested["ok"], false);
}

#[test]
fn dropping_a_separation_breaks_the_display() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", TWO_K4);
    let mut doc = json_of(&totkit(&["tot", "--input", s(&g)]));
    doc["separations"].as_array_mut().unwrap().pop();
    let p = write(&dir, "bad.json", &doc.to_string());
    let out = totkit(&["verify", "--input", s(&p)]);
    assert_eq!(out.status.code(), Some(4));
    let report = json_of(&out);
    let display = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == "display")
        .unwrap();
    assert_eq!(display["ok"], false);
}

#[test]
fn supplied_automorphisms_are_checked() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", TWO_K4);
    let artifact = totkit(&["canonical-tot", "--input", s(&g)]);
    let p = write(&dir, "c.json", std::str::from_utf8(&artifact.stdout).unwrap());
    let swap = write(&dir, "swap.json", r#"[["h", "g", "f", "e", "d", "c", "b", "a"]]"#);
    assert!(totkit(&["verify", "--input", s(&p), "--automorphisms", s(&swap)])
        .status
        .success());
    let bogus = write(&dir, "bogus.json", r#"[["b", "a", "c", "e", "d", "f", "g", "h"]]"#);
    assert_eq!(
        totkit(&["verify", "--input", s(&p), "--automorphisms", s(&bogus)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn circle_join_outside_the_system() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", r#"{"points": [1, 2, 3, 4]}"#);
    let out = totkit(&[
        "circle-tangles",
        "--input",
        s(&c),
        "--m",
        "1",
        "--n",
        "4",
        "--join",
        "1|2 3 4",
        "--join",
        "3|4 1 2",
    ]);
    assert!(out.status.success());
    let doc = json_of(&out);
    let join = &doc["joins"][0];
    assert_eq!(join["join"]["a"], json!(["1", "3"]));
    assert_eq!(join["join"]["b"], json!(["2", "4"]));
    assert_eq!(join["circle"], false);
    assert_eq!(doc["tree_set"], true);
}

#[test]
fn circle_order_functions() {
    let dir = TempDir::new().unwrap();
    let c = write(
        &dir,
        "c.json",
        r#"{"points": ["a", "b", "c", "d", "e"], "order_graph": [["a", "b", 1], ["b", "c", 1], ["c", "d", 1], ["d", "e", 1], ["e", "a", 1]]}"#,
    );
    let cut = write(&dir, "cut.txt", "a b\nb c\nc d 1\nd e\ne a\n");
    let from_input = totkit(&[
        "circle-tangles",
        "--input",
        s(&c),
        "--m",
        "1",
        "--n",
        "4",
        "--order-fn",
        "graph-order",
    ]);
    let from_file = totkit(&[
        "circle-tangles",
        "--input",
        s(&c),
        "--m",
        "1",
        "--n",
        "4",
        "--order-fn",
        &format!("cut:{}", s(&cut)),
    ]);
    assert!(from_input.status.success() && from_file.status.success());
    assert_eq!(
        json_of(&from_input)["separations"],
        json!(json_of(&from_file)["separations"])
    );
    let min_side = totkit(&[
        "circle-tangles",
        "--input",
        s(&c),
        "--m",
        "1",
        "--n",
        "4",
        "--order-fn",
        "min-side",
    ]);
    assert_eq!(json_of(&min_side)["order_fn"]["kind"], "min-side");
    assert!(verify(&dir, &from_file).status.success());
    let plain = write(&dir, "p.json", r#"{"points": [1, 2, 3, 4, 5]}"#);
    assert_eq!(
        totkit(&[
            "circle-tangles",
            "--input",
            s(&plain),
            "--m",
            "1",
            "--n",
            "4",
            "--order-fn",
            "graph-order"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn tangles_of_k4() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.txt", "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    let doc = json_of(&totkit(&["tangles", "--input", s(&g), "--k", "2"]));
    let levels = doc["levels"].as_array().unwrap();
    assert_eq!(levels.last().unwrap()["k"], 2.0);
    assert_eq!(levels.last().unwrap()["count"], 1);
    let text = totkit(&["tangles", "--input", s(&g), "--kind", "profile", "--format", "text"]);
    assert!(String::from_utf8(text.stdout).unwrap().starts_with("k = "));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", TWO_K4);
    assert_eq!(
        totkit(&["tot", "--input", s(&g), "--max-vertices", "6"]).status.code(),
        Some(3)
    );
    let bad = write(&dir, "bad.txt", "a b c\n");
    assert_eq!(totkit(&["tot", "--input", s(&bad)]).status.code(), Some(2));
    assert_eq!(
        totkit(&["tot", "--input", s(&dir.path().join("missing.txt"))])
            .status
            .code(),
        Some(2)
    );
    let c = write(&dir, "c.json", r#"{"points": [1, 2, 3, 4]}"#);
    assert_eq!(
        totkit(&["circle-tangles", "--input", s(&c), "--m", "1", "--n", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        totkit(&[
            "circle-tangles",
            "--input",
            s(&c),
            "--m",
            "1",
            "--n",
            "4",
            "--join",
            "1|2 3 4"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        totkit(&[
            "circle-tangles",
            "--input",
            s(&c),
            "--m",
            "1",
            "--n",
            "4",
            "--format",
            "dot"
        ])
        .status
        .code(),
        Some(2)
    );
    let junk = write(&dir, "junk.json", r#"{"schema": "other"}"#);
    assert_eq!(totkit(&["verify", "--input", s(&junk)]).status.code(), Some(2));
}

#[test]
fn corpus_listing() {
    let doc = json_of(&totkit(&["corpus", "--max-vertices", "4", "--random", "2", "--named"]));
    let graphs = doc["graphs"].as_array().unwrap();
    let names: Vec<&str> = graphs.iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert!(names[..10].iter().all(|n| n.starts_with('c')));
    assert_eq!(&names[10..12], &["r7-0", "r7-1"]);
    assert!(graphs[10]["counter"].is_u64());
    assert!(graphs.iter().any(|g| g["name"] == "petersen-minus-vertex"));
    assert_eq!(totkit(&["corpus", "--max-vertices", "7"]).status.code(), Some(3));
    let text = String::from_utf8(totkit(&["corpus", "--max-vertices", "3", "--format", "text"]).stdout).unwrap();
    assert!(text.contains("# c3-1"));
}
