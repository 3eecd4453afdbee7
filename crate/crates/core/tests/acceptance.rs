//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Three sub-assertions are known to fail against the published numbers:
//! the published tables contain internal inconsistencies that the engine
//! resolves (twist-duplicate rows in two tables and one missed diamond
//! constraint); `hopf32 check` documents each with both values. The
//! assertions here state the published numbers verbatim.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

use hopf32_core::classify::{run, ClassificationRun, EngineConfig};
use hopf32_core::lifting::LiftingCount;
use hopf32_core::nichols::{named_matrix, nichols_dimensions, Nilpotency, Total};

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

struct Criterion {
    name: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Criterion {
            name,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn check_eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, expect: T) {
        if got != expect {
            self.failures
                .push(format!("{what}: expected {expect:?}, got {got:?}"));
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("{}: PASS", self.name);
        } else {
            println!("{}: FAIL", self.name);
            for f in &self.failures {
                println!("  - {f}");
            }
            panic!("{} failed: {:?}", self.name, self.failures);
        }
    }
}

fn runs() -> &'static Vec<ClassificationRun> {
    static RUNS: OnceLock<Vec<ClassificationRun>> = OnceLock::new();
    RUNS.get_or_init(|| {
        hopf32_core::groups::CATALOGUE
            .iter()
            .map(|id| run(id, &cfg()).expect("classification run"))
            .collect()
    })
}

fn run_of(id: &str) -> &'static ClassificationRun {
    runs().iter().find(|r| r.group.id == id).unwrap()
}

fn table_rows(id: &str, table: &str) -> usize {
    let r = run_of(id);
    let tables = hopf32_core::classify::emit_tables(r).unwrap();
    tables
        .iter()
        .find(|t| t.id == table)
        .map(|t| t.rows.len())
        .unwrap_or(0)
}

fn total_of(matrix: &str) -> Total {
    let bm = named_matrix(matrix).unwrap();
    nichols_dimensions(&bm, cfg().degree_cap, cfg().dim_budget)
        .unwrap()
        .total
}

#[test]
fn criterion_1_nichols_dimensions() {
    let t0 = Instant::now();
    let mut c = Criterion::new("criterion 1 (Nichols dimensions)");
    for q in ["b1_1", "b1_-1", "b1_i", "b1_-i"] {
        c.check_eq(&format!("{q} total"), total_of(q), Total::Finite(4));
    }
    c.check_eq("b2 total", total_of("b2"), Total::Finite(8));
    for name in ["b3_++", "b3_-+", "b3_+-", "b3_--"] {
        c.check_eq(&format!("{name} total"), total_of(name), Total::Finite(16));
    }
    for k in [1, 3, 5, 7] {
        c.check_eq(
            &format!("b6_{k} total"),
            total_of(&format!("b6_{k}")),
            Total::Finite(32),
        );
    }
    for name in ["b5_+", "b5_-"] {
        c.check(
            &format!("{name} exceeds the budget"),
            matches!(total_of(name), Total::Exceeded { .. }),
        );
    }
    // rank-3 quantum linear space
    {
        use hopf32_core::{BraidingMatrix, CycScalar};
        let m1 = CycScalar::minus_one;
        let one = CycScalar::one;
        let rows = vec![
            vec![m1(), one(), m1()],
            vec![one(), m1(), one()],
            vec![m1(), one(), m1()],
        ];
        let bm = BraidingMatrix::from_rows(rows).unwrap();
        let rep = nichols_dimensions(&bm, cfg().degree_cap, cfg().dim_budget).unwrap();
        c.check_eq("rank-3 b1 total", rep.total, Total::Finite(8));
    }
    // b4: the published tables conflict (16 vs 64); the engine value is
    // recorded and must be self-consistent
    for name in ["b4_+", "b4_-"] {
        let bm = named_matrix(name).unwrap();
        let rep = nichols_dimensions(&bm, cfg().degree_cap, cfg().dim_budget).unwrap();
        let total = rep.total_value();
        c.check(&format!("{name} finite"), total.is_some());
        c.check(&format!("{name} palindromic"), rep.is_palindromic());
        let op = hopf32_core::nichols::BraidingOp::from_diagonal(&bm);
        for d in 0..=6 {
            let oracle = hopf32_core::nichols::symmetrizer_rank(&op, d);
            c.check_eq(
                &format!("{name} oracle at degree {d}"),
                oracle as u32,
                rep.hilbert.get(d).copied().unwrap_or(0),
            );
        }
        println!(
            "{name}: recorded dim B(V) = {total:?}, hilbert {:?}",
            rep.hilbert
        );
    }
    let elapsed = t0.elapsed();
    println!("criterion 1 runtime: {elapsed:?}");
    c.check("runtime below two minutes", elapsed.as_secs() < 120);
    c.finish();
}

#[test]
fn criterion_2_nilpotency_orders() {
    let mut c = Criterion::new("criterion 2 (nilpotency orders)");
    let get = |name: &str, key: &str| -> Option<Nilpotency> {
        let bm = named_matrix(name).unwrap();
        nichols_dimensions(&bm, cfg().degree_cap, cfg().dim_budget)
            .unwrap()
            .nilpotency
            .get(key)
            .cloned()
    };
    c.check_eq("b2 |x|", get("b2", "|x|"), Some(Nilpotency::Finite(2)));
    c.check_eq("b2 |y|", get("b2", "|y|"), Some(Nilpotency::Finite(2)));
    c.check_eq(
        "b2 |z1|",
        get("b2", "|ad_x(y)|"),
        Some(Nilpotency::Finite(2)),
    );
    for name in ["b3_++", "b3_-+", "b3_+-", "b3_--"] {
        c.check_eq(
            &format!("{name} |x|"),
            get(name, "|x|"),
            Some(Nilpotency::Finite(2)),
        );
        c.check_eq(
            &format!("{name} |y|"),
            get(name, "|y|"),
            Some(Nilpotency::Finite(2)),
        );
        c.check_eq(
            &format!("{name} |z1|"),
            get(name, "|ad_x(y)|"),
            Some(Nilpotency::Finite(4)),
        );
    }
    for k in [1, 3, 5, 7] {
        let name = format!("b6_{k}");
        c.check_eq(
            &format!("{name} |x|"),
            get(&name, "|x|"),
            Some(Nilpotency::Finite(2)),
        );
        c.check_eq(
            &format!("{name} |y|"),
            get(&name, "|y|"),
            Some(Nilpotency::Finite(2)),
        );
        c.check_eq(
            &format!("{name} |z1|"),
            get(&name, "|ad_y(x)|"),
            Some(Nilpotency::Finite(8)),
        );
    }
    c.finish();
}

#[test]
fn criterion_3_table_row_counts() {
    let mut c = Criterion::new("criterion 3 (orbit table row counts)");
    let expected: &[(&str, &str, usize)] = &[
        ("C2xC2", "table2", 6),
        ("C2xC2", "table3", 5),
        ("C2xC2", "table4", 4),
        ("C4", "table5", 8),
        ("C4", "table6", 14),
        ("C4", "table7", 4),
        ("C2xC2xC2", "table8", 6),
        ("C2xC4", "table9", 7),
        // the published table 10 carries 40 rows; two are twist-equivalent
        // duplicates of other rows (V5^29 ~ V5^31 and V5^30 ~ V5^25), so
        // the engine's irredundant list has 38 classes
        ("C2xC4", "table10", 40),
        ("C8", "table12", 12),
        ("C8", "table13", 26),
        ("D4", "table16", 4),
        ("H", "table17", 2),
    ];
    for (group, table, rows) in expected {
        c.check_eq(
            &format!("{group}/{table} rows"),
            table_rows(group, table),
            *rows,
        );
    }
    c.finish();
}

fn family_count(group: &str, label: &str) -> Option<LiftingCount> {
    let r = run_of(group);
    let ci = hopf32_core::classify::class_by_label(r, label).ok()?;
    r.classes[ci].family.as_ref().map(|f| f.count.clone())
}

#[test]
fn criterion_4_lifting_counts() {
    let mut c = Criterion::new("criterion 4 (lifting counts)");
    let finite = |n: u32| Some(LiftingCount::Finite(n));
    c.check_eq("W3^1", family_count("C4", "W3^1"), finite(4));
    c.check_eq("W3^2", family_count("C4", "W3^2"), finite(6));
    c.check_eq("W2^3", family_count("C2xC2", "W2^3"), finite(2));
    c.check_eq("V4^3", family_count("C2xC2xC2", "V4^3"), finite(2));
    c.check_eq("Y7^1", family_count("D4", "Y7^1"), finite(2));
    c.check_eq("Y7^2", family_count("D4", "Y7^2"), finite(1));
    // published count; the engine derives lambda1 = lambda2 (see ledger and
    // `hopf32 check`), giving 2
    c.check_eq("Y7^3", family_count("D4", "Y7^3"), finite(3));
    c.check_eq("Y8^1", family_count("H", "Y8^1"), finite(2));
    // infinite families appear exactly at V5^4, V6^2, V6^4
    let mut infinite: BTreeSet<(String, String)> = BTreeSet::new();
    for r in runs() {
        let tables = hopf32_core::classify::emit_tables(r).unwrap();
        for t in &tables {
            for row in &t.rows {
                if row.count.as_deref() == Some("infinite") {
                    infinite.insert((r.group.id.clone(), row.label.clone()));
                }
            }
        }
    }
    let expect: BTreeSet<(String, String)> = [("C2xC4", "V5^4"), ("C8", "V6^2"), ("C8", "V6^4")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    c.check_eq("infinite family flags", infinite, expect);
    c.finish();
}

#[test]
fn criterion_5_main_theorem_totals() {
    let t0 = Instant::now();
    let mut c = Criterion::new("criterion 5 (main theorem totals)");
    let totals = hopf32_core::classify::theorem_totals(&cfg()).unwrap();
    let inf = LiftingCount::Infinite;
    let fin = LiftingCount::Finite;
    // the published vector; the D4 entry (7) and the nonabelian-16 entry
    // (13) each exceed the engine values by one (see ledger: Y7^3 and the
    // B1 twist-duplicate)
    let expected = vec![
        ("C2", fin(1)),
        ("C2xC2", fin(6)),
        ("C4", fin(12)),
        ("C2xC2xC2", fin(6)),
        ("C2xC4", inf.clone()),
        ("C8", inf.clone()),
        ("D4", fin(7)),
        ("H", fin(3)),
        ("C2^4", fin(1)),
        ("C2xC2xC4", fin(7)),
        ("C4xC4", fin(4)),
        ("C2xC8", fin(14)),
        ("C16", fin(7)),
        ("nonabelian-16", fin(13)),
    ];
    for ((id, got), (eid, expect)) in totals.iter().zip(&expected) {
        assert_eq!(id, eid);
        c.check_eq(&format!("{id} total"), got.clone(), expect.clone());
    }
    let elapsed = t0.elapsed();
    println!("criterion 5 runtime: {elapsed:?}");
    c.check("full run below ten minutes", elapsed.as_secs() < 600);
    c.finish();
}

#[test]
fn criterion_6_property_suites() {
    let mut c = Criterion::new("criterion 6 (property suites)");
    let failures = hopf32_core::classify::property_battery(&cfg()).unwrap();
    for f in &failures {
        c.check(f, false);
    }
    c.finish();
}

#[test]
fn criterion_7_forced_constraint_spot_checks() {
    let mut c = Criterion::new("criterion 7 (symbolically derived constraints)");
    let forced_of = |group: &str, label: &str| -> Vec<String> {
        let r = run_of(group);
        let ci = hopf32_core::classify::class_by_label(r, label).unwrap();
        r.classes[ci].family.as_ref().unwrap().forced.clone()
    };
    // W2^4: both cross parameters forced to zero by the diamond
    let w24 = forced_of("C2xC2", "W2^4");
    c.check(
        "W2^4 forces its two deformable cross parameters to zero",
        w24.iter().filter(|s| s.ends_with("= 0")).count() >= 2,
    );
    // the diamond derives these without the character shortcut
    let derived = hopf32_core::classify::diamond_only_forced(&cfg()).unwrap();
    c.check_eq(
        "W2^4 diamond-only forced set",
        derived.w24_cross_forced,
        true,
    );
    c.check_eq("Y7^2 diamond forces lambda = 0", derived.y72_forced, true);
    c.check_eq(
        "Y8^1 diamond forces lambda1 = lambda2",
        derived.y81_tied,
        true,
    );
    c.check_eq("V4^4 diamond forces lambda3 = 0", derived.v44_forced, true);
    c.finish();
}
