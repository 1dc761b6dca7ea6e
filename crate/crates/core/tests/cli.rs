mod support;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use tempfile::TempDir;

use support::dot_grammar;
use tolerance_lattice::document::LatticeDocument;
use tolerance_lattice::VerificationReport;

const CHAIN3: &str = r#"{
  "name": "chain3",
  "elements": ["0", "a", "1"],
  "covers": [["0", "a"], ["a", "1"]],
  "relations": {
    "glued": [["0", "a"], ["a", "1"]],
    "diag": [],
    "ends": [["0", "1"]]
  }
}"#;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn tolat(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_tolat")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let c2 = write(
        &dir,
        "c2.json",
        r#"{"name":"c2","elements":["0","1"],"covers":[["0","1"]]}"#,
    );
    let run = tolat(&["validate", p(&c2)]);
    assert_eq!(run.code, 0);
    assert!(
        run.stdout.starts_with("lattice: 2 elements, height 1"),
        "{}",
        run.stdout
    );

    let no_top = write(
        &dir,
        "v.json",
        r#"{"name":"v","elements":["o","a","b"],"covers":[["o","a"],["o","b"]]}"#,
    );
    let run = tolat(&["validate", p(&no_top)]);
    assert_eq!(run.code, 1);
    assert!(
        run.stderr.contains("`a` and `b` have no common upper bound"),
        "{}",
        run.stderr
    );

    let broken = write(&dir, "bad.json", r#"{"name": "x", "elements": ["#);
    assert_eq!(tolat(&["validate", p(&broken)]).code, 2);
    let dup = write(&dir, "dup.json", r#"{"name":"x","elements":["a","a"],"covers":[]}"#);
    assert_eq!(tolat(&["validate", p(&dup)]).code, 2);
    assert_eq!(tolat(&["validate", "/nonexistent/doc.json"]).code, 2);
    let cycle = write(
        &dir,
        "cyc.json",
        r#"{"name":"x","elements":["a","b"],"covers":[["a","b"],["b","a"]]}"#,
    );
    assert_eq!(tolat(&["validate", p(&cycle)]).code, 1);
}

#[test]
fn tolerance_listings() {
    let dir = TempDir::new().unwrap();
    let c3 = write(&dir, "c3.json", CHAIN3);
    let run = tolat(&["tolerances", p(&c3)]);
    assert_eq!(run.code, 0);
    assert_eq!(
        run.stdout,
        "tolerances of chain3: 5\n{}\n{(a,1)}\n{(0,a)}\n{(0,a), (a,1)}\n{(0,a), (0,1), (a,1)}\n"
    );
    let run = tolat(&["tolerances", "--congruences-only", p(&c3)]);
    assert_eq!(run.stdout.lines().count(), 5);
    assert!(run.stdout.starts_with("congruences of chain3: 4\n"));
    let run = tolat(&["tolerances", "--congruences-only", "--count-only", p(&c3)]);
    assert_eq!(run.stdout, "4\n");

    let c1 = write(&dir, "c1.json", r#"{"name":"c1","elements":["x"],"covers":[]}"#);
    assert_eq!(tolat(&["tolerances", "--count-only", p(&c1)]).stdout, "1\n");

    let run = tolat(&["tolerances", "--cap", "2", p(&c3)]);
    assert_eq!(run.code, 3);
    assert!(run.stderr.contains("exceed the enumeration cap"));
    let cube3 = write(&dir, "b3.json", &tolat(&["builtin", "cube3"]).stdout);
    assert_eq!(tolat(&["tolerances", "--count-only", p(&cube3)]).code, 3);
}

#[test]
fn verify_worked_example() {
    let dir = TempDir::new().unwrap();
    let c3 = write(&dir, "c3.json", CHAIN3);
    let run = tolat(&["verify", p(&c3), "--relation", "glued", "--theorem", "1"]);
    assert_eq!(run.code, 0, "{}{}", run.stdout, run.stderr);
    let first = run.stdout.lines().next().unwrap();
    assert!(first.starts_with("PASS chain3 / glued"), "{first}");
    assert!(first.contains("|K| = 4"), "{first}");

    let run = tolat(&["verify", p(&c3), "--relation", "diag", "--theorem", "2conv"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("PASS"));

    // (0,1) alone is not a tolerance until closed
    let run = tolat(&["verify", p(&c3), "--relation", "ends"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("not a tolerance"));
    let run = tolat(&["verify", p(&c3), "--relation", "ends", "--close"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("|K| = 3"));

    assert_eq!(tolat(&["verify", p(&c3), "--relation", "nope"]).code, 2);
    assert_eq!(tolat(&["verify", p(&c3)]).code, 2);
    assert_eq!(
        tolat(&["verify", p(&c3), "--relation", "glued", "--theorem", "3"]).code,
        2
    );
    // the forward check needs a congruence as alpha
    assert_eq!(
        tolat(&["verify", p(&c3), "--relation", "glued", "--theorem", "2"]).code,
        1
    );
}

#[test]
fn verify_sweeps() {
    let dir = TempDir::new().unwrap();
    for name in ["N5", "M3", "chain4", "cube2"] {
        let doc = write(&dir, &format!("{name}.json"), &tolat(&["builtin", name]).stdout);
        for theorem in ["1", "2", "2conv"] {
            let run = tolat(&["verify", p(&doc), "--all-tolerances", "--theorem", theorem]);
            assert_eq!(run.code, 0, "{name} {theorem}: {}", run.stdout);
            let summary = run.stdout.lines().last().unwrap();
            let cases: usize = summary.split_whitespace().next().unwrap().parse().unwrap();
            assert_eq!(summary, format!("{cases} cases, {cases} passed"));
        }
    }
    let n5 = write(&dir, "n5.json", &tolat(&["builtin", "N5"]).stdout);
    let run = tolat(&["verify", p(&n5), "--all-tolerances", "--theorem", "2"]);
    // five congruences, all ordered pairs
    assert!(run.stdout.ends_with("25 cases, 25 passed\n"));
    let run = tolat(&["verify", p(&n5), "--all-tolerances", "--json"]);
    let reports: Vec<VerificationReport> = run.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 5);
    assert!(reports.iter().all(VerificationReport::passed));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let doc = write(&dir, "p.json", &tolat(&["builtin", "chain2xchain3"]).stdout);
    let args = ["verify", p(&doc), "--all-tolerances", "--theorem", "2conv"];
    let first = tolat(&args);
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, tolat(&args).stdout);
    let listing = ["tolerances", p(&doc)];
    assert_eq!(tolat(&listing).stdout, tolat(&listing).stdout);
}

#[test]
fn dot_views_are_valid() {
    let dir = TempDir::new().unwrap();
    let c3 = write(&dir, "c3.json", CHAIN3);
    let c2 = write(
        &dir,
        "c2.json",
        r#"{"name":"c2","elements":["0","1"],"covers":[["0","1"]]}"#,
    );

    let g = dot_grammar::validate(&tolat(&["dot", p(&c2)]).stdout).unwrap();
    assert_eq!(g.nodes.len(), 2);
    assert_eq!(g.edges, vec![("n0".to_owned(), "n1".to_owned())]);

    let run = tolat(&["dot", p(&c3), "--relation", "glued", "--view", "block-lattice"]);
    let g = dot_grammar::validate(&run.stdout).unwrap();
    assert_eq!((g.nodes.len(), g.edges.len()), (2, 1));

    let run = tolat(&["dot", p(&c3), "--relation", "glued", "--view", "k"]);
    let g = dot_grammar::validate(&run.stdout).unwrap();
    assert_eq!((g.nodes.len(), g.edges.len()), (4, 3));
    for label in ["{0,a}:0", "{0,a}:a", "{a,1}:a", "{a,1}:1"] {
        assert!(run.stdout.contains(&format!("label=\"{label}\"")), "{label}");
    }

    let run = tolat(&["dot", p(&c3), "--relation", "glued", "--view", "blocks"]);
    let g = dot_grammar::validate(&run.stdout).unwrap();
    // three real nodes, one ghost of `a`, one legend
    assert_eq!(g.nodes.len(), 5);
    assert!(run.stdout.contains("style=dashed"));

    assert_eq!(tolat(&["dot", p(&c3), "--view", "k"]).code, 2);
    assert_eq!(tolat(&["dot", p(&c3), "--relation", "ends", "--view", "k"]).code, 1);

    for name in ["M3", "N5", "cube3", "chain2xchain3"] {
        let doc = write(&dir, &format!("{name}.json"), &tolat(&["builtin", name]).stdout);
        dot_grammar::validate(&tolat(&["dot", p(&doc)]).stdout).unwrap();
    }
}

#[test]
fn weird_labels_survive_dot_quoting() {
    let dir = TempDir::new().unwrap();
    let doc = write(
        &dir,
        "q.json",
        r#"{"name":"q \"quoted\"","elements":["lo\\w","h\"i"],"covers":[["lo\\w","h\"i"]],
           "relations":{"all":[["lo\\w","h\"i"]]}}"#,
    );
    for view in ["hasse", "blocks", "block-lattice", "k"] {
        let run = tolat(&["dot", p(&doc), "--relation", "all", "--view", view]);
        assert_eq!(run.code, 0, "{view}");
        dot_grammar::validate(&run.stdout).unwrap();
    }
}

fn document_strategy() -> impl Strategy<Value = LatticeDocument> {
    let labels = proptest::collection::btree_set("[a-z][a-z0-9]{0,3}", 1..6);
    (labels, "[A-Za-z0-9 _-]{0,10}").prop_flat_map(|(labels, name)| {
        let labels: Vec<String> = labels.into_iter().collect();
        let pair = proptest::sample::select(labels.clone());
        let pairs = proptest::collection::vec((pair.clone(), pair), 0..5);
        let rels = proptest::collection::btree_map("[a-z]{1,5}", pairs.clone(), 0..3);
        (Just(labels), Just(name), pairs, rels).prop_map(|(elements, name, covers, relations)| LatticeDocument {
            name,
            elements,
            covers,
            relations: relations.into_iter().collect::<BTreeMap<_, _>>(),
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn documents_round_trip(doc in document_strategy()) {
        let text = doc.to_json();
        prop_assert_eq!(LatticeDocument::parse(&text).unwrap(), doc);
    }
}
