use heartglue_web::{bondal_check, corpus_algebra, corpus_names, counterexamples, dim_formula, ext_table, glue_hearts};

fn parse(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn every_bundled_algebra_runs() {
    for name in corpus_names().split(',') {
        let text = corpus_algebra(name);
        assert!(!text.is_empty());
        for out in [ext_table(&text, 0), glue_hearts(&text, 0), dim_formula(&text, 0), bondal_check(&text, 0)] {
            let v = parse(&out);
            assert!(v.get("error").is_none(), "{name}: {out}");
        }
    }
}

#[test]
fn kronecker_values() {
    let k = corpus_algebra("kronecker");
    let v = parse(&ext_table(&k, 4));
    assert_eq!(v["window"], 4);
    assert!(v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e["source"] == 1 && e["target"] == 2 && e["dim"] == 2));
    let v = parse(&dim_formula(&k, 0));
    assert_eq!(v["steps"][0]["lhs"], 1);
    assert_eq!(v["steps"][0]["rhs"], 1);
    assert_eq!(parse(&counterexamples())["ok"], true);
}

#[test]
fn bad_input_is_reported() {
    let v = parse(&ext_table("{\"vertices\": 2,", 0));
    assert!(v["error"].as_str().unwrap().contains("input:"));
    let v = parse(&glue_hearts(r#"{"vertices": 2, "arrows": [{"name": "a", "source": 2, "target": 1}], "relations": []}"#, 0));
    assert!(v.get("error").is_some());
    assert_eq!(corpus_algebra("nope"), "");
}
