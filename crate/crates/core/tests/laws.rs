use polydyn::laws::{run, select, LawConfig, SUITES};

fn config(samples: usize, seed: u64) -> LawConfig {
    LawConfig {
        size_bound: 3,
        samples,
        seed,
    }
}

#[test]
fn every_suite_passes() {
    let reports = run("all", &config(40, 7)).unwrap();
    assert_eq!(reports.len(), SUITES.len());
    for r in &reports {
        assert!(r.is_ok(), "{}", serde_json::to_string_pretty(&r.to_value()).unwrap());
        assert_eq!(r.samples, 40);
    }
}

#[test]
fn reports_are_reproducible() {
    let a: Vec<_> = run("algebra", &config(25, 3)).unwrap().iter().map(|r| r.to_value()).collect();
    let b: Vec<_> = run("algebra", &config(25, 3)).unwrap().iter().map(|r| r.to_value()).collect();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn selection_by_module_and_name() {
    assert_eq!(select("all").unwrap().len(), SUITES.len());
    for module in ["core", "algebra", "comonoid", "dynamics"] {
        assert!(!select(module).unwrap().is_empty());
    }
    assert!(select("core.hom_count").is_err());
    assert_eq!(select("algebra.hom_count").unwrap().len(), 1);
    assert!(select("nope").is_err());
}

#[test]
fn report_keys() {
    let r = &run("core.eval_cardinality", &config(5, 1)).unwrap()[0];
    let v = r.to_value();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["failures", "samples", "seed", "suite"]);
}
