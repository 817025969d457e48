use lfree_cli::{run, scan_grid, SCAN_COLUMNS};
use serde_json::{json, Value};

fn lfree(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["lfree"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert!(out.code != 0 || out.stderr.is_empty(), "{}", out.stderr);
    let doc = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, doc)
}

#[test]
fn mu_both_methods() {
    let (code, doc) = lfree(&["mu", "--eq", "x+y=z", "--n", "10", "--method", "both"]);
    assert_eq!(code, 0);
    assert_eq!(doc["outputs"], json!({"formula": 5, "case": "ii", "brute": 5, "agree": true}));
    assert_eq!(doc["command"], "mu");
    assert_eq!(doc["equation"], "x1+x2-x3=0");
}

#[test]
fn bounds_example() {
    let (code, doc) = lfree(&["bounds", "--eq", "2x+2y=z"]);
    assert_eq!(code, 0);
    let o = &doc["outputs"];
    for (k, v) in [("C", "1/2"), ("rate", "1/4"), ("best", "MainT1"), ("case", "ii(a)"), ("lower_rate", "1/4")] {
        assert_eq!(o[k], v, "{k}");
    }
}

#[test]
fn matching_example() {
    let (code, doc) = lfree(&["matching", "--eq", "x+y=z", "--M", "10"]);
    assert_eq!(code, 0);
    assert_eq!(
        doc["outputs"],
        json!({"size": 5, "pairs": [[1, 9], [2, 8], [3, 7], [4, 6], [5, 5]], "loops": 1})
    );
}

#[test]
fn counts_and_sets() {
    let (_, doc) = lfree(&["count", "--eq", "x+y=z", "--n", "3", "--what", "free"]);
    assert_eq!(doc["outputs"]["count"], "6");
    let (_, doc) = lfree(&["count", "--eq", "x+y=z", "--n", "3", "--what", "maximal"]);
    assert_eq!(doc["outputs"]["count"], "2");
    let (_, doc) = lfree(&["extremal", "--eq", "x+y=z", "--n", "10", "--set", "In"]);
    assert_eq!(doc["outputs"], json!({"members": [6, 7, 8, 9, 10], "size": 5, "free": true}));
    let (code, _) = lfree(&["extremal", "--eq", "x+y=z", "--n", "10", "--set", "An"]);
    assert_eq!(code, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(lfree(&["mu", "--eq", "x+y=", "--n", "3"]).0, 2);
    assert_eq!(lfree(&["mu", "--eq", "x+y=z"]).0, 2);
    assert_eq!(lfree(&["verify", "--suite", "nope"]).0, 2);
    assert_eq!(lfree(&["verify", "--suite", "gm1", "--grid", "p=1..q"]).0, 2);
    // (2,1,3) is not ordered, so no formula case applies
    assert_eq!(lfree(&["mu", "--eq", "x+2y=3z", "--n", "5", "--method", "formula"]).0, 1);
    assert_eq!(lfree(&["mu", "--eq", "x+y=z", "--n", "41", "--method", "brute"]).0, 1);
    let out = run(["lfree", "mu", "--eq", "x+y=z+", "--n", "3"]);
    assert!(out.stderr.contains("position"), "{}", out.stderr);
}

#[test]
fn output_is_deterministic_and_sorted() {
    let args = ["lfree", "bounds", "--eq", "3x+3y=2z", "--n", "20"];
    let a = run(args);
    assert_eq!(a, run(args));
    let doc: Value = serde_json::from_str(&a.stdout).unwrap();
    let keys: Vec<&String> = doc["outputs"].as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(doc["outputs"]["case"], "i(c)(2)");
    assert!(!a.stdout.contains("timing_ms"));
    let timed = run(["lfree", "--timing", "mu", "--eq", "x+y=z", "--n", "5"]);
    assert!(timed.stdout.contains("timing_ms"));
}

#[test]
fn multivariable_formula() {
    let (code, doc) = lfree(&["mu", "--eq", "4x+4y=2z-2w", "--n", "10"]);
    assert_eq!(code, 0);
    assert_eq!(doc["outputs"]["formula"], json!({"lo": 8, "hi": 8}));
    assert_eq!(doc["outputs"]["agree"], true);
}

#[test]
fn verify_reports() {
    let (code, doc) = lfree(&["verify", "--suite", "gm1", "--grid", "p=3,q=2,r=1..2,M=1..40"]);
    assert_eq!(code, 0);
    assert_eq!(doc["outputs"]["totals"]["fail"], 0);
    assert_eq!(doc["outputs"]["cells"].as_array().unwrap().len(), 80);
    let csv = run(["lfree", "verify", "--suite", "mu-star", "--grid", "p=3,q=3,r=2,n=14", "--format", "csv"]);
    assert_eq!(csv.code, 1);
    assert!(csv.stdout.starts_with("cell,status,witness,note\n"));
    assert!(csv.stdout.contains("fail"));
}

#[test]
fn csv_flattening() {
    let out = run(["lfree", "--format", "csv", "matching", "--eq", "x+y=z", "--M", "4"]);
    assert_eq!(out.code, 0);
    let mut r = csv::Reader::from_reader(out.stdout.as_bytes());
    let rows: Vec<(String, String)> = r
        .records()
        .map(|rec| {
            let rec = rec.unwrap();
            (rec[0].to_string(), rec[1].to_string())
        })
        .collect();
    assert!(rows.contains(&("outputs.pairs".into(), "[[1,3],[2,2]]".into())));
    assert!(rows.contains(&("inputs.M".into(), "4".into())));
}

#[test]
fn scan_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let rows = scan_grid(3, 3, 2, &[10, 15, 45], &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), SCAN_COLUMNS);
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), rows.len());
    let find = |p: &str, q: &str, r: &str, n: &str| {
        records
            .iter()
            .find(|rec| (&rec[0], &rec[1], &rec[2], &rec[3]) == (p, q, r, n))
            .unwrap()
            .clone()
    };
    assert_eq!(&find("1", "1", "1", "10")[8], "false");
    assert_eq!(&find("3", "2", "2", "15")[8], "true");
    let big = find("2", "2", "1", "45");
    assert_eq!((&big[6], &big[9]), ("skip", "skip"));
    // (2,2,1) at n = 10: the conjectured exponent 10/8
    assert_eq!(&find("2", "2", "1", "10")[11], "5/4");

    let out_path = path.to_str().unwrap();
    let (code, doc) = lfree(&["scan", "--grid", "p=2,q=2,r=1,n=8", "--out", out_path]);
    assert_eq!(code, 0);
    assert_eq!(doc["outputs"]["rows"], 1);
    let stdout = run(["lfree", "scan", "--grid", "p=2,q=1..2,r=1,n=8"]);
    assert_eq!(stdout.stdout.lines().count(), 3);
}
