//! Exhaustive digital-root feasibility analysis.
//!
//! The sieve enumerates every assignment of digital roots to the equation's
//! base variables (9 choices each) and every exponent representative in the
//! periodicity window of each symbolic exponent, keeps the assignments under
//! which both sides reduce to the same root, and reports the result. An
//! empty feasible set is a mod-9 obstruction: the equation has no integer
//! solutions at all.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::droot::{dr_add, dr_pow, exponent_window, DigitalRoot};
use crate::expr::{
    compile, evaluate_dr, free_names, parse_expression, Assignment, Equation, Expr, ParseError,
};

/// Default cap on the number of enumerated assignments.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// No root assignment balances the equation; no integer solutions exist.
    Obstruction,
    /// Some assignments balance, but at least one projection is restricted.
    Constrained,
    /// Every projection is the full set; the sieve says nothing.
    Unconstrained,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Obstruction => write!(f, "Obstruction"),
            Verdict::Constrained => write!(f, "Constrained"),
            Verdict::Unconstrained => write!(f, "Unconstrained"),
        }
    }
}

/// Outcome of sieving one equation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FeasibilityReport {
    pub equation: Equation,
    /// All balancing assignments, lexicographic by declared variable order
    /// then exponent order.
    pub feasible_tuples: Vec<Assignment>,
    /// Per-variable root sets appearing in the feasible tuples.
    pub projections: BTreeMap<String, BTreeSet<DigitalRoot>>,
    /// Per-exponent representative sets appearing in the feasible tuples.
    pub exponent_projections: BTreeMap<String, BTreeSet<u32>>,
    pub verdict: Verdict,
    pub enumeration_size: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SieveError {
    /// The assignment space exceeds the enumeration budget.
    BudgetExceeded { required: u128, budget: u64 },
    /// A filter predicate referenced a name the equation does not bind.
    UnknownName(String),
    /// The equation does not have the shape an operation requires.
    ShapeMismatch(String),
}

impl fmt::Display for SieveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SieveError::BudgetExceeded { required, budget } => write!(
                f,
                "enumeration of {required} assignments exceeds the budget of {budget}"
            ),
            SieveError::UnknownName(name) => {
                write!(f, "unknown name `{name}` in filter predicate")
            }
            SieveError::ShapeMismatch(msg) => write!(f, "{msg}"),
        }
    }
}

fn space_size(var_count: usize, exp_domains: &[Vec<u32>]) -> u128 {
    core::iter::repeat_n(9u128, var_count)
        .chain(exp_domains.iter().map(|d| d.len() as u128))
        .fold(1u128, |acc, n| acc.saturating_mul(n))
}

/// Walks the root/exponent assignment space in lexicographic order (first
/// name most significant), calling `visit` with slot buffers parallel to
/// the variable and exponent orders.
fn enumerate_space(
    var_count: usize,
    exp_domains: &[Vec<u32>],
    mut visit: impl FnMut(&[DigitalRoot], &[u32]),
) {
    let sizes: Vec<usize> = core::iter::repeat_n(9usize, var_count)
        .chain(exp_domains.iter().map(Vec::len))
        .collect();
    let mut indices = alloc::vec![0usize; sizes.len()];
    let mut roots = alloc::vec![DigitalRoot::ALL[0]; var_count];
    let mut exps: Vec<u32> = exp_domains.iter().map(|d| d[0]).collect();
    'outer: loop {
        visit(&roots, &exps);
        let mut i = indices.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            indices[i] = if indices[i] + 1 < sizes[i] { indices[i] + 1 } else { 0 };
            if i < var_count {
                roots[i] = DigitalRoot::ALL[indices[i]];
            } else {
                exps[i - var_count] = exp_domains[i - var_count][indices[i]];
            }
            if indices[i] != 0 {
                continue 'outer;
            }
        }
    }
}

/// Sieves with the default budget. See [`sieve_with_budget`].
pub fn sieve(equation: &Equation) -> Result<FeasibilityReport, SieveError> {
    sieve_with_budget(equation, DEFAULT_BUDGET)
}

/// Enumerates the full assignment space of `equation` and reports every
/// assignment under which both sides have equal digital roots.
///
/// Fails with [`SieveError::BudgetExceeded`] before allocating anything if
/// the space is larger than `budget`.
pub fn sieve_with_budget(
    equation: &Equation,
    budget: u64,
) -> Result<FeasibilityReport, SieveError> {
    let exp_names: Vec<String> = equation.exponents.iter().map(|(n, _)| n.clone()).collect();
    let exp_domains: Vec<Vec<u32>> = equation
        .exponents
        .iter()
        .map(|(_, min)| exponent_window(*min).collect())
        .collect();
    let total = space_size(equation.variables.len(), &exp_domains);
    if total > budget as u128 {
        return Err(SieveError::BudgetExceeded {
            required: total,
            budget,
        });
    }

    let lhs = compile(&equation.lhs, &equation.variables, &exp_names)
        .expect("equation binds its own free names");
    let rhs = compile(&equation.rhs, &equation.variables, &exp_names)
        .expect("equation binds its own free names");

    let mut feasible = Vec::new();
    enumerate_space(equation.variables.len(), &exp_domains, |roots, exps| {
        if lhs.eval_dr(roots, exps) == rhs.eval_dr(roots, exps) {
            let mut a = Assignment::default();
            for (name, root) in equation.variables.iter().zip(roots) {
                a.roots.insert(name.clone(), *root);
            }
            for (name, e) in exp_names.iter().zip(exps) {
                a.exponents.insert(name.clone(), *e);
            }
            feasible.push(a);
        }
    });

    Ok(build_report(equation.clone(), feasible, total as u64))
}

fn build_report(
    equation: Equation,
    feasible_tuples: Vec<Assignment>,
    enumeration_size: u64,
) -> FeasibilityReport {
    let mut projections: BTreeMap<String, BTreeSet<DigitalRoot>> = equation
        .variables
        .iter()
        .map(|n| (n.clone(), BTreeSet::new()))
        .collect();
    let mut exponent_projections: BTreeMap<String, BTreeSet<u32>> = equation
        .exponents
        .iter()
        .map(|(n, _)| (n.clone(), BTreeSet::new()))
        .collect();
    for a in &feasible_tuples {
        for (name, root) in &a.roots {
            projections.get_mut(name).expect("known variable").insert(*root);
        }
        for (name, e) in &a.exponents {
            exponent_projections
                .get_mut(name)
                .expect("known exponent")
                .insert(*e);
        }
    }

    // Unconstrained means the sieve learned nothing: every enumerated
    // assignment balances. Full per-name projections alone are not enough,
    // since correlated constraints (x^2 = y^2) leave every projection full
    // while still cutting the tuple set.
    let verdict = if feasible_tuples.is_empty() {
        Verdict::Obstruction
    } else if feasible_tuples.len() as u64 == enumeration_size {
        Verdict::Unconstrained
    } else {
        Verdict::Constrained
    };

    FeasibilityReport {
        equation,
        feasible_tuples,
        projections,
        exponent_projections,
        verdict,
        enumeration_size,
    }
}

/// One filter clause: the digital root of a subexpression must equal `root`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PredicateAtom {
    pub subexpr: Expr,
    pub root: DigitalRoot,
}

/// Conjunction of [`PredicateAtom`]s. The text form is `&`-separated
/// `dr(<subexpr>)=<digit>` clauses, e.g. `dr(x^2)=1 & dr(y^2)=1`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Predicate {
    pub atoms: Vec<PredicateAtom>,
}

impl Predicate {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut atoms = Vec::new();
        for clause in text.split('&') {
            let clause = clause.trim();
            let rest = clause.strip_prefix("dr").ok_or_else(|| ParseError {
                position: 0,
                message: format!("filter clause `{clause}` must have the form dr(<expr>)=<digit>"),
            })?;
            let rest = rest.trim_start();
            let rest = rest.strip_prefix('(').ok_or_else(|| ParseError {
                position: 0,
                message: format!("expected '(' after dr in `{clause}`"),
            })?;
            let close = matching_paren(rest).ok_or_else(|| ParseError {
                position: 0,
                message: format!("unbalanced parentheses in `{clause}`"),
            })?;
            let subexpr = parse_expression(&rest[..close])?;
            let tail = rest[close + 1..].trim_start();
            let tail = tail.strip_prefix('=').ok_or_else(|| ParseError {
                position: 0,
                message: format!("expected '=' after dr(...) in `{clause}`"),
            })?;
            let digit_text = tail.trim();
            let root = digit_text
                .parse::<u8>()
                .ok()
                .and_then(DigitalRoot::new)
                .ok_or_else(|| ParseError {
                    position: 0,
                    message: format!("`{digit_text}` is not a digital root (1..9)"),
                })?;
            atoms.push(PredicateAtom { subexpr, root });
        }
        Ok(Predicate { atoms })
    }

    fn holds(&self, assignment: &Assignment) -> bool {
        self.atoms.iter().all(|atom| {
            evaluate_dr(&atom.subexpr, assignment)
                .expect("predicate names validated against the equation")
                == atom.root
        })
    }
}

// Offset of the ')' matching an already-consumed '(' at the start of `s`.
fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Restricts a report to the tuples satisfying `predicate`, recomputing
/// projections and verdict.
pub fn filter_report(
    report: &FeasibilityReport,
    predicate: &Predicate,
) -> Result<FeasibilityReport, SieveError> {
    for atom in &predicate.atoms {
        let (vars, exps) = free_names(&atom.subexpr);
        for name in vars {
            if !report.equation.variables.contains(&name) {
                return Err(SieveError::UnknownName(name));
            }
        }
        for name in exps {
            if !report.equation.exponents.iter().any(|(n, _)| *n == name) {
                return Err(SieveError::UnknownName(name));
            }
        }
    }
    let kept: Vec<Assignment> = report
        .feasible_tuples
        .iter()
        .filter(|a| predicate.holds(a))
        .cloned()
        .collect();
    Ok(build_report(
        report.equation.clone(),
        kept,
        report.enumeration_size,
    ))
}

/// For an equation of the shape `U + V = W^...`, the pairs of digital roots
/// `(dr(U), dr(V))` that each side can attain individually but whose sum no
/// value of the right side can match.
pub fn forbidden_pairs(
    equation: &Equation,
) -> Result<Vec<(DigitalRoot, DigitalRoot)>, SieveError> {
    let (u, v) = match &equation.lhs {
        Expr::Add(l, r) => (l.as_ref(), r.as_ref()),
        _ => {
            return Err(SieveError::ShapeMismatch(
                "left side must be a two-term sum U + V".to_owned(),
            ))
        }
    };
    let w = &equation.rhs;
    if !matches!(w, Expr::Pow(..)) {
        return Err(SieveError::ShapeMismatch(
            "right side must be a single power term".to_owned(),
        ));
    }

    let u_set = attainable_set(u, equation)?;
    let v_set = attainable_set(v, equation)?;
    let w_set = attainable_set(w, equation)?;

    let mut pairs = Vec::new();
    for &a in &u_set {
        for &b in &v_set {
            if !w_set.contains(&dr_add(a, b)) {
                pairs.push((a, b));
            }
        }
    }
    Ok(pairs)
}

// Roots a subexpression can attain over all assignments of its own free
// names, with exponent windows taken from the equation's declarations.
fn attainable_set(
    expr: &Expr,
    equation: &Equation,
) -> Result<BTreeSet<DigitalRoot>, SieveError> {
    let (vars, exp_names) = free_names(expr);
    let exp_domains: Vec<Vec<u32>> = exp_names
        .iter()
        .map(|name| {
            let min = equation
                .exponents
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, m)| *m)
                .unwrap_or(1);
            exponent_window(min).collect()
        })
        .collect();
    let total = space_size(vars.len(), &exp_domains);
    if total > DEFAULT_BUDGET as u128 {
        return Err(SieveError::BudgetExceeded {
            required: total,
            budget: DEFAULT_BUDGET,
        });
    }
    let compiled = compile(expr, &vars, &exp_names).expect("free names are self-consistent");
    let mut out = BTreeSet::new();
    enumerate_space(vars.len(), &exp_domains, |roots, exps| {
        out.insert(compiled.eval_dr(roots, exps));
    });
    Ok(out)
}

/// The exponent residues mod 6 (6 standing for residue 0) at which
/// `base^e` has digital root `target`, over exponents `e >= max(min, 2)`.
pub fn exponent_classes(
    base: DigitalRoot,
    target: DigitalRoot,
    min: u32,
) -> BTreeSet<u32> {
    assert!(min >= 1, "exponent_classes: min must be >= 1");
    let lo = min.max(2);
    let mut residues = BTreeSet::new();
    for r in 1..=6u32 {
        let e = lo + ((r % 6) + 6 - lo % 6) % 6;
        debug_assert!(e >= lo && e % 6 == r % 6);
        if dr_pow(base, e) == target {
            residues.insert(r);
        }
    }
    residues
}
