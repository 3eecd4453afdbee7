//! Integration tests for the classification orchestrator: runs, table
//! emission, the golden diff, and the fault-injection path.

use hopf32_core::classify::*;
use hopf32_core::lifting::LiftingCount;

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

#[test]
fn c2xc2_run_details() {
    let r = run("C2xC2", &cfg()).unwrap();
    assert_eq!(r.budget, 8);
    assert_eq!(r.total, LiftingCount::Finite(6));
    let eligible = r.classes.iter().filter(|c| c.eligible).count();
    assert_eq!(eligible, 5);
    let tables = emit_tables(&r).unwrap();
    let rows = |id: &str| tables.iter().find(|t| t.id == id).unwrap().rows.len();
    assert_eq!(rows("table2"), 6);
    assert_eq!(rows("table3"), 5);
    assert_eq!(rows("table4"), 4);
    // every excluded class carries a reason
    for c in &r.classes {
        assert_eq!(c.eligible, c.excluded_reason.is_none());
    }
}

#[test]
fn golden_check_passes_for_c4() {
    let r = run("C4", &cfg()).unwrap();
    let entries = check_group(&r).unwrap();
    assert!(entries
        .iter()
        .all(|e| !matches!(e.status, CheckStatus::Fail { .. })));
    // the four conflicting braiding-matrix rows are annotated
    let annotated = entries
        .iter()
        .filter(|e| matches!(e.status, CheckStatus::Annotated { .. }))
        .count();
    assert_eq!(annotated, 4);
}

#[test]
fn corrupted_golden_fails_naming_table_and_row() {
    let r = run("C4", &cfg()).unwrap();
    let mut golden = golden_json("C4").unwrap();
    // corrupt the lifting count of W3^1 and the group total
    for t in golden["tables"].as_array_mut().unwrap() {
        if t["id"] == "liftings" {
            for row in t["rows"].as_array_mut().unwrap() {
                if row["label"] == "W3^1" {
                    row["count"] = serde_json::json!(3);
                }
            }
        }
    }
    golden["total"] = serde_json::json!(13);
    let entries = check_group_with(&r, &golden).unwrap();
    let fails: Vec<&CheckEntry> = entries
        .iter()
        .filter(|e| matches!(e.status, CheckStatus::Fail { .. }))
        .collect();
    assert!(fails
        .iter()
        .any(|e| e.name.contains("liftings") && e.name.contains("W3^1")));
    assert!(fails.iter().any(|e| e.name == "C4 total"));
}

#[test]
fn order_matching_total_dim_leaves_only_the_group_algebra() {
    let mut c = cfg();
    c.total_dim = 16;
    let r = run("C16", &c).unwrap();
    assert!(r.group_algebra_only);
    assert_eq!(r.total, LiftingCount::Finite(1));
    assert!(r.classes.is_empty());

    let mut c = cfg();
    c.total_dim = 2;
    let r = run("C2", &c).unwrap();
    assert!(r.group_algebra_only);
}

#[test]
fn other_two_power_targets_run() {
    // dimension-16 classification over C2xC2 finds the quantum linear
    // planes of rank 2
    let mut c = cfg();
    c.total_dim = 16;
    let r = run("C2xC2", &c).unwrap();
    assert_eq!(r.budget, 4);
    assert!(matches!(r.total, LiftingCount::Finite(n) if n > 0));
}

#[test]
fn runs_are_deterministic_across_thread_counts() {
    let baseline = {
        let r = run("C8", &cfg()).unwrap();
        tables_to_json(&r).unwrap()
    };
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| {
            let r = run("C8", &cfg()).unwrap();
            tables_to_json(&r).unwrap()
        });
    assert_eq!(baseline, single);
    // repeated invocation agrees too
    let again = {
        let r = run("C8", &cfg()).unwrap();
        tables_to_json(&r).unwrap()
    };
    assert_eq!(baseline, again);
}

#[test]
fn lifting_family_renders_relations() {
    let r = run("C2xC2xC2", &cfg()).unwrap();
    let ci = class_by_label(&r, "V4^3").unwrap();
    let fam = r.classes[ci].family.as_ref().unwrap();
    assert_eq!(fam.count, LiftingCount::Finite(2));
    let rendered: Vec<String> = fam
        .representatives
        .iter()
        .flat_map(|rep| rep.relations.clone())
        .collect();
    assert!(rendered.iter().any(|s| s == "a1*a2 + a2*a1 = g2 - 1"));
    assert!(rendered.iter().any(|s| s == "a1^2 = 0"));
    assert!(class_by_label(&r, "nope").is_err());
}

#[test]
fn json_emission_has_the_documented_shape() {
    let r = run("D4", &cfg()).unwrap();
    let v = tables_to_json(&r).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["group"], "D4");
    assert_eq!(v["total"], 6);
    assert!(v["tables"]
        .as_array()
        .unwrap()
        .iter()
        .any(|t| t["id"] == "table16"));
    let fams = v["families"].as_array().unwrap();
    assert_eq!(fams.len(), 4);
}

#[test]
fn module_json_round_trip_fields() {
    let r = run("H", &cfg()).unwrap();
    let m = &r.classes[0].module;
    let j = m.to_json();
    assert_eq!(j["group"], "H");
    assert!(j["braiding_matrix"].is_array());
    let g = r.group.to_json();
    assert_eq!(g["order"], 8);
    assert!(g["center"].as_array().unwrap().len() == 2);
}

#[test]
fn nonabelian_order_eight_groups_have_no_one_dimensional_candidates() {
    // degree-1 characters vanish on the centers of D4 and H, so every
    // irreducible candidate is two-dimensional
    for id in ["D4", "H"] {
        let r = run(id, &cfg()).unwrap();
        assert!(!r.irreducibles.is_empty());
        for e in &r.irreducibles {
            assert_eq!(e.module.dim, 2, "{id}");
        }
        for c in &r.classes {
            assert_eq!(c.summands.len(), 1, "{id}: single irreducible summand");
        }
    }
}
