//! Text, JSON, and CSV rendering.
//!
//! JSON key order is fixed (insertion order, not alphabetical) and every
//! collection is emitted in its canonical order, so repeated runs produce
//! byte-identical output.

use std::time::Duration;

use serde_json::{Map, Value};

use digitroot::droot::DigitalRoot;
use digitroot::expr::Assignment;
use digitroot::oracle::{FermatReport, SearchResult, SoundnessReport};
use digitroot::sieve::FeasibilityReport;

use crate::Format;

/// i128 as a JSON number when it fits in 64 bits, else as a decimal string.
pub fn int_value(v: i128) -> Value {
    match i64::try_from(v) {
        Ok(n) => n.into(),
        Err(_) => Value::String(v.to_string()),
    }
}

pub fn json_object<'a>(pairs: impl IntoIterator<Item = (&'a str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

const CLASS_HEADERS: [&str; 9] = [
    "1+9k", "2+9k", "3+9k", "4+9k", "5+9k", "6+9k", "7+9k", "8+9k", "9+9k",
];

pub fn print_power_table(rows: &[[DigitalRoot; 9]], format: Format) {
    match format {
        Format::Csv => {
            println!("exponent,{}", CLASS_HEADERS.join(","));
            for (i, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|r| r.to_string()).collect();
                println!("{},{}", i + 2, cells.join(","));
            }
        }
        _ => {
            print!("{:<6}", "X^n");
            for h in CLASS_HEADERS {
                print!(" {h:>4}");
            }
            println!();
            for (i, row) in rows.iter().enumerate() {
                print!("{:<6}", format!("X^{}", i + 2));
                for r in row {
                    print!(" {:>4}", r.value());
                }
                println!();
            }
        }
    }
}

pub fn print_op_table(label: &str, table: &[[DigitalRoot; 9]; 9], format: Format) {
    match format {
        Format::Csv => {
            println!("a,1,2,3,4,5,6,7,8,9");
            for (i, row) in table.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|r| r.to_string()).collect();
                println!("{},{}", i + 1, cells.join(","));
            }
        }
        _ => {
            print!("{label:<4}");
            for b in 1..=9 {
                print!(" {b}");
            }
            println!();
            for (i, row) in table.iter().enumerate() {
                print!("{:<4}", i + 1);
                for r in row {
                    print!(" {}", r.value());
                }
                println!();
            }
        }
    }
}

fn root_set_text(set: &std::collections::BTreeSet<DigitalRoot>) -> String {
    let items: Vec<String> = set.iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn u32_set_text(set: &std::collections::BTreeSet<u32>) -> String {
    let items: Vec<String> = set.iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn tuple_text(report: &FeasibilityReport, tuple: &Assignment) -> String {
    let mut parts = Vec::new();
    for name in &report.equation.variables {
        parts.push(format!("{name}={}", tuple.roots[name]));
    }
    for (name, _) in &report.equation.exponents {
        parts.push(format!("{name}={}", tuple.exponents[name]));
    }
    parts.join(" ")
}

pub fn print_report_text(report: &FeasibilityReport, tuples: bool) {
    println!("equation: {}", report.equation);
    println!("verdict: {}", report.verdict);
    println!(
        "enumerated: {} assignments, {} feasible",
        report.enumeration_size,
        report.feasible_tuples.len()
    );
    for name in &report.equation.variables {
        println!("{name}: {}", root_set_text(&report.projections[name]));
    }
    for (name, min) in &report.equation.exponents {
        println!(
            "{name} (exponent, min {min}): {}",
            u32_set_text(&report.exponent_projections[name])
        );
    }
    if tuples {
        println!("feasible tuples:");
        for tuple in &report.feasible_tuples {
            println!("  {}", tuple_text(report, tuple));
        }
    }
}

fn tuple_json(report: &FeasibilityReport, tuple: &Assignment) -> Value {
    let mut map = Map::new();
    for name in &report.equation.variables {
        map.insert(name.clone(), tuple.roots[name].value().into());
    }
    for (name, _) in &report.equation.exponents {
        map.insert(name.clone(), tuple.exponents[name].into());
    }
    Value::Object(map)
}

pub fn report_json(report: &FeasibilityReport, tuples: bool) -> Value {
    let variables: Vec<Value> = report
        .equation
        .variables
        .iter()
        .map(|n| Value::String(n.clone()))
        .collect();
    let exponents: Vec<Value> = report
        .equation
        .exponents
        .iter()
        .map(|(name, min)| {
            json_object([("name", Value::String(name.clone())), ("min", (*min).into())])
        })
        .collect();
    let mut projections = Map::new();
    for name in &report.equation.variables {
        let digits: Vec<Value> = report.projections[name]
            .iter()
            .map(|r| r.value().into())
            .collect();
        projections.insert(name.clone(), Value::Array(digits));
    }
    let mut exponent_projections = Map::new();
    for (name, _) in &report.equation.exponents {
        let residues: Vec<Value> = report.exponent_projections[name]
            .iter()
            .map(|&e| e.into())
            .collect();
        exponent_projections.insert(name.clone(), Value::Array(residues));
    }

    let mut pairs = vec![
        ("equation", Value::String(report.equation.to_string())),
        ("variables", Value::Array(variables)),
        ("exponents", Value::Array(exponents)),
        ("verdict", Value::String(report.verdict.to_string())),
        ("projections", Value::Object(projections)),
        ("exponent_projections", Value::Object(exponent_projections)),
    ];
    if tuples {
        let list: Vec<Value> = report
            .feasible_tuples
            .iter()
            .map(|t| tuple_json(report, t))
            .collect();
        pairs.push(("tuples", Value::Array(list)));
    }
    pairs.push(("enumeration_size", report.enumeration_size.into()));
    json_object(pairs)
}

pub fn print_search_text(result: &SearchResult, soundness: Option<&SoundnessReport>) {
    println!("equation: {}", result.equation);
    println!(
        "box: |variable| <= {}, exponent <= {}",
        result.bound, result.exponent_cap
    );
    println!("solutions: {}", result.solutions.len());
    for (solution, signature) in result.solutions.iter().zip(&result.signatures) {
        let mut parts = Vec::new();
        let mut roots = Vec::new();
        for name in &result.equation.variables {
            parts.push(format!("{name}={}", solution[name]));
            roots.push(format!("{name}={}", signature.roots[name]));
        }
        for (name, _) in &result.equation.exponents {
            parts.push(format!("{name}={}", solution[name]));
            roots.push(format!("{name}={}", signature.exponents[name]));
        }
        println!("  {}  (signature: {})", parts.join(" "), roots.join(" "));
    }
    if let Some(s) = soundness {
        if s.passed() {
            println!("soundness: pass ({} solutions checked)", s.solutions_checked);
        } else {
            println!(
                "soundness: FAIL ({} of {} signatures missing from the feasible set)",
                s.counterexamples.len(),
                s.solutions_checked
            );
            for (solution, signature) in &s.counterexamples {
                println!("  missing: {solution:?} -> {signature:?}");
            }
        }
    }
}

pub fn search_json(result: &SearchResult, soundness: Option<&SoundnessReport>) -> Value {
    let name_order: Vec<&String> = result
        .equation
        .variables
        .iter()
        .chain(result.equation.exponents.iter().map(|(n, _)| n))
        .collect();
    let solutions: Vec<Value> = result
        .solutions
        .iter()
        .map(|s| {
            let mut map = Map::new();
            for name in &name_order {
                map.insert((*name).clone(), int_value(s[*name]));
            }
            Value::Object(map)
        })
        .collect();
    let signatures: Vec<Value> = result
        .signatures
        .iter()
        .map(|sig| {
            let mut map = Map::new();
            for name in &result.equation.variables {
                map.insert(name.clone(), sig.roots[name].value().into());
            }
            for (name, _) in &result.equation.exponents {
                map.insert(name.clone(), sig.exponents[name].into());
            }
            Value::Object(map)
        })
        .collect();

    let mut pairs = vec![
        ("equation", Value::String(result.equation.to_string())),
        ("bound", result.bound.into()),
        ("exponent_cap", result.exponent_cap.into()),
        ("solutions", Value::Array(solutions)),
        ("signatures", Value::Array(signatures)),
    ];
    if let Some(s) = soundness {
        pairs.push((
            "soundness",
            json_object([
                ("checked", s.solutions_checked.into()),
                ("pass", s.passed().into()),
            ]),
        ));
    }
    json_object(pairs)
}

pub fn print_fermat_text(mode: &str, report: &FermatReport, elapsed: Duration) {
    println!(
        "fermat {mode}: {} cases checked, {} counterexamples ({:.1} ms)",
        report.cases_checked,
        report.counterexamples.len(),
        elapsed.as_secs_f64() * 1000.0
    );
    for c in &report.counterexamples {
        match c.q {
            Some(q) => println!("  counterexample: a={} p={} q={q}", c.a, c.p),
            None => println!("  counterexample: a={} p={}", c.a, c.p),
        }
    }
}

pub fn fermat_json(mode: &str, report: &FermatReport, elapsed: Duration) -> Value {
    json_object([
        ("mode", Value::String(mode.to_string())),
        ("cases_checked", report.cases_checked.into()),
        (
            "counterexamples",
            (report.counterexamples.len() as u64).into(),
        ),
        ("elapsed_ms", (elapsed.as_secs_f64() * 1000.0).into()),
    ])
}
