//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test -p digitroot-cli --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use digitroot::droot::{
    addition_table, attainable_roots, digital_root, dr_add, dr_mul, dr_pow, dr_sub,
    multiplication_table, subtraction_table, DigitalRoot, ExponentSpec,
};
use digitroot::expr::parse_equation;
use digitroot::oracle::{search, soundness_check};
use digitroot::sieve::{exponent_classes, sieve, Verdict};

fn droot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_droot"))
        .args(args)
        .output()
        .expect("failed to run droot")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn dr(v: u8) -> DigitalRoot {
    DigitalRoot::new(v).unwrap()
}

fn roots(vals: &[u8]) -> BTreeSet<DigitalRoot> {
    vals.iter().map(|&v| dr(v)).collect()
}

fn pass(n: u32, name: &str) {
    println!("criterion {n:>2} ({name}): pass");
}

fn assert_within(elapsed: Duration, limit: Duration, what: &str) {
    assert!(
        elapsed <= limit,
        "{what} took {elapsed:?}, limit {limit:?}"
    );
}

#[test]
fn criterion_01_power_table_reproduction() {
    let start = Instant::now();
    let out = droot(&["table", "powers", "--max-exp", "45", "--format", "csv"]);
    let elapsed = start.elapsed();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("table1_powers.csv"));
    assert_within(elapsed, Duration::from_secs(1), "power table");
    pass(1, "power table reproduction, 396 cells");
}

#[test]
fn criterion_02_arithmetic_table_reproduction() {
    let start = Instant::now();
    let tables = [
        ("table2_add.csv", addition_table()),
        ("table2_sub.csv", subtraction_table()),
        ("table2_mul.csv", multiplication_table()),
    ];
    for (file, table) in tables {
        let reference = golden(file);
        let mut lines = reference.lines();
        assert_eq!(lines.next().unwrap(), "a,1,2,3,4,5,6,7,8,9");
        for (a, line) in lines.enumerate() {
            let cells: Vec<u8> = line.split(',').map(|c| c.parse().unwrap()).collect();
            assert_eq!(cells[0] as usize, a + 1, "{file}");
            for (b, &expected) in cells[1..].iter().enumerate() {
                assert_eq!(table[a][b].value(), expected, "{file} cell ({}, {})", a + 1, b + 1);
            }
        }
    }
    assert_within(start.elapsed(), Duration::from_secs(1), "arithmetic tables");
    pass(2, "addition/subtraction/multiplication tables, 243 cells");
}

#[test]
fn criterion_03_homomorphism_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9d17);
    for _ in 0..100_000 {
        let x: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let y: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let (dx, dy) = (digital_root(x as i128), digital_root(y as i128));
        assert_eq!(digital_root((x + y) as i128), dr_add(dx, dy));
        assert_eq!(digital_root((x - y) as i128), dr_sub(dx, dy));
        assert_eq!(digital_root(x as i128 * y as i128), dr_mul(dx, dy));
    }
    for _ in 0..10_000 {
        let x: i64 = rng.gen_range(1..=1000);
        let n: u32 = rng.gen_range(1..=20);
        let exact = BigInt::from(x).pow(n);
        let r = ((&exact % 9u8) + 9u8) % 9u8;
        let r: u8 = r.try_into().unwrap();
        let exact_root = dr(if r == 0 { 9 } else { r });
        assert_eq!(exact_root, dr_pow(digital_root(x as i128), n));
    }
    assert_within(start.elapsed(), Duration::from_secs(5), "homomorphism suite");
    pass(3, "homomorphism over 10^5 pairs and 10^4 powers, zero failures");
}

#[test]
fn criterion_04_mordell_case_study() {
    let out = droot(&["--format", "json", "analyze", "x^2 = y^3 - 2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["projections"]["x"], serde_json::json!([4, 5]));
    assert_eq!(v["projections"]["y"], serde_json::json!([3, 6, 9]));
    pass(4, "Mordell x^2 = y^3 - 2: x in {4,5}, y in {3,6,9}");
}

#[test]
fn criterion_05_pell_case_study() {
    for y2 in ["1", "4", "7"] {
        let filter = format!("dr(x^2)=1 & dr(y^2)={y2}");
        let out = droot(&["--format", "json", "analyze", "x^2 = 1 + d*y^2", "--filter", &filter]);
        assert_eq!(out.status.code(), Some(0), "filter {filter}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["projections"]["d"], serde_json::json!([9]), "filter {filter}");
    }
    let out = droot(&[
        "--format", "json", "analyze", "x^2 = 1 + d*y^2", "--filter", "dr(x^2)=1 & dr(y^2)=9",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v["projections"]["d"],
        serde_json::json!([1, 2, 3, 4, 5, 6, 7, 8, 9])
    );
    pass(5, "Pell d forced to {9} for dr(y^2) in {1,4,7}, arbitrary for dr(y^2)=9");
}

#[test]
fn criterion_06_beal_case_study() {
    let mins: BTreeMap<String, u32> =
        [("x", 3), ("y", 3), ("z", 3)].map(|(n, m)| (n.to_string(), m)).into();
    let eq = parse_equation("A^x + B^y = C^z", &mins).unwrap();
    let pairs = digitroot::sieve::forbidden_pairs(&eq).unwrap();
    assert!(pairs.contains(&(dr(1), dr(2))));
    assert!(pairs.contains(&(dr(1), dr(5))));
    assert!(!pairs.contains(&(dr(9), dr(9))));
    assert_eq!(
        attainable_roots(ExponentSpec::AtLeast(3)),
        roots(&[1, 2, 4, 5, 7, 8, 9])
    );
    pass(6, "Beal forbidden pairs include (1,2),(1,5), exclude (9,9)");
}

#[test]
fn criterion_07_exponent_class_rules() {
    let classes = |b: u8, t: u8| exponent_classes(dr(b), dr(t), 1);
    let set = |vals: &[u32]| vals.iter().copied().collect::<BTreeSet<u32>>();
    assert_eq!(classes(2, 1), set(&[6]));
    assert_eq!(classes(4, 1), set(&[3, 6]));
    assert_eq!(classes(8, 1), set(&[2, 4, 6]));
    assert_eq!(classes(5, 1), set(&[6]));
    assert_eq!(classes(7, 1), set(&[3, 6]));
    pass(7, "exponent classes 2->{6}, 4->{3,6}, 8->{2,4,6}, 5->{6}, 7->{3,6}");
}

#[test]
fn criterion_08_soundness() {
    let start = Instant::now();

    let out = droot(&["--format", "json", "search", "x^2 = y^3 - 2", "--bound", "100", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let solutions = v["solutions"].as_array().unwrap();
    assert!(solutions.contains(&serde_json::json!({"x": 5, "y": 3})));
    assert!(solutions.contains(&serde_json::json!({"x": -5, "y": 3})));
    assert_eq!(v["soundness"]["pass"], true);

    let out = droot(&["--format", "json", "search", "x^2 - 2*y^2 = 1", "--bound", "20", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let solutions = v["solutions"].as_array().unwrap();
    for (x, y) in [(3, 2), (-3, -2), (17, 12), (-17, -12)] {
        assert!(solutions.contains(&serde_json::json!({"x": x, "y": y})), "({x}, {y})");
    }
    assert_eq!(v["soundness"]["pass"], true);

    // 3^3 + 6^3 = 3^5: the signature of a real Beal instance is feasible
    let mins: BTreeMap<String, u32> =
        [("x", 3), ("y", 3), ("z", 3)].map(|(n, m)| (n.to_string(), m)).into();
    let eq = parse_equation("A^x + B^y = C^z", &mins).unwrap();
    let found = search(&eq, 10, 6).unwrap();
    let instance: BTreeMap<String, i128> =
        [("A", 3), ("B", 6), ("C", 3), ("x", 3), ("y", 3), ("z", 5)]
            .map(|(n, v)| (n.to_string(), v))
            .into();
    let idx = found
        .solutions
        .iter()
        .position(|s| *s == instance)
        .expect("3^3 + 6^3 = 3^5 not found");
    let report = sieve(&eq).unwrap();
    assert!(report.feasible_tuples.contains(&found.signatures[idx]));
    let check = soundness_check(&eq, 10, 6, 10_000_000).unwrap();
    assert!(check.passed());

    assert_within(start.elapsed(), Duration::from_secs(10), "soundness checks");
    pass(8, "brute-force solutions found and every signature feasible");
}

#[test]
fn criterion_09_fermat_checks() {
    let start = Instant::now();
    let out = droot(&["fermat", "classic", "--a-max", "100", "--p-max", "31"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 counterexamples"));
    let out = droot(&["fermat", "extension", "--a-max", "1000", "--p-max", "31"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 counterexamples"));
    assert_within(start.elapsed(), Duration::from_secs(5), "fermat checks");
    pass(9, "classic and extension Fermat checks, 0 counterexamples");
}

#[test]
fn criterion_10_periodicity() {
    for b in DigitalRoot::ALL {
        for n in 2..=40 {
            assert_eq!(dr_pow(b, n), dr_pow(b, n + 6), "base {b}, n {n}");
        }
        if !matches!(b.value(), 3 | 6 | 9) {
            assert_eq!(dr_pow(b, 1), dr_pow(b, 7), "base {b}, n 1");
        }
    }
    assert_ne!(dr_pow(dr(3), 1), dr_pow(dr(3), 7));
    assert_ne!(dr_pow(dr(6), 1), dr_pow(dr(6), 7));
    assert_eq!(dr_pow(dr(9), 1), dr_pow(dr(9), 7));
    pass(10, "period-6 power residues, with the (3,1)/(6,1) exception");
}

#[test]
fn criterion_11_determinism() {
    let args = [
        "--format", "json", "analyze", "x^2 = 1 + d*y^2", "--filter", "dr(x^2)=1", "--tuples",
    ];
    let first = droot(&args);
    let second = droot(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    pass(11, "byte-identical JSON across consecutive runs");
}

// the verdict vocabulary itself, exercised once so the suite covers it
#[test]
fn verdict_labels() {
    let eq = parse_equation("9*x = 1", &BTreeMap::new()).unwrap();
    assert_eq!(sieve(&eq).unwrap().verdict, Verdict::Obstruction);
    let eq = parse_equation("x = x", &BTreeMap::new()).unwrap();
    assert_eq!(sieve(&eq).unwrap().verdict, Verdict::Unconstrained);
}
