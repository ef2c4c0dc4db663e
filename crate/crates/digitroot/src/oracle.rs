//! Brute-force integer ground truth.
//!
//! The sieve rules residue classes out; the oracle finds actual integer
//! solutions in a bounded box by exhaustive enumeration, so every sieve
//! verdict can be cross-checked: the digital-root signature of each real
//! solution must appear among the feasible tuples. The Fermat checks verify
//! the congruences `a^p ≡ a (mod p)` and `a^p ≡ a^q (mod 3)` for odd
//! primes p, q over exhaustive ranges.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::droot::{digital_root, exponent_representative};
use crate::expr::{compile, Assignment, Equation, EvalError};
use crate::sieve::{sieve_with_budget, SieveError, DEFAULT_BUDGET};

/// Integer solutions found within a box, with their root signatures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchResult {
    pub equation: Equation,
    pub bound: i64,
    pub exponent_cap: u32,
    /// Each solution maps every base variable and symbolic exponent to its
    /// integer value; sorted lexicographically by declared name order.
    pub solutions: Vec<BTreeMap<String, i128>>,
    /// `signatures[i]` is the digital-root image of `solutions[i]`, with
    /// exponents mapped to their periodicity-window representatives.
    pub signatures: Vec<Assignment>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OracleError {
    BudgetExceeded { required: u128, budget: u64 },
    /// Exact evaluation left the integer range; raise exponent caps or
    /// bounds with care.
    Overflow,
    /// exponent_cap is below a symbolic exponent's minimum.
    InvalidExponentCap { name: String, min: u32, cap: u32 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded { required, budget } => write!(
                f,
                "search over {required} candidate points exceeds the budget of {budget}"
            ),
            OracleError::Overflow => {
                write!(f, "exact integer evaluation overflowed 128 bits")
            }
            OracleError::InvalidExponentCap { name, min, cap } => write!(
                f,
                "exponent cap {cap} is below the minimum {min} of exponent `{name}`"
            ),
        }
    }
}

impl From<SieveError> for OracleError {
    fn from(e: SieveError) -> Self {
        match e {
            SieveError::BudgetExceeded { required, budget } => {
                OracleError::BudgetExceeded { required, budget }
            }
            // sieving a parsed equation cannot hit the other variants
            other => panic!("unexpected sieve error: {other}"),
        }
    }
}

/// Searches with the default budget. See [`search_with_budget`].
pub fn search(
    equation: &Equation,
    bound: i64,
    exponent_cap: u32,
) -> Result<SearchResult, OracleError> {
    search_with_budget(equation, bound, exponent_cap, DEFAULT_BUDGET)
}

/// Enumerates every assignment with `|v| <= bound` for base variables and
/// `min <= e <= exponent_cap` for symbolic exponents, keeping the exact
/// integer solutions of the equation.
pub fn search_with_budget(
    equation: &Equation,
    bound: i64,
    exponent_cap: u32,
    budget: u64,
) -> Result<SearchResult, OracleError> {
    assert!(bound >= 0, "search: bound must be >= 0");
    for (name, min) in &equation.exponents {
        if exponent_cap < *min {
            return Err(OracleError::InvalidExponentCap {
                name: name.clone(),
                min: *min,
                cap: exponent_cap,
            });
        }
    }

    // budget check precedes any domain allocation
    let var_domain_len = 2 * bound as u128 + 1;
    let total: u128 = core::iter::repeat_n(var_domain_len, equation.variables.len())
        .chain(
            equation
                .exponents
                .iter()
                .map(|(_, min)| (exponent_cap - *min + 1) as u128),
        )
        .fold(1u128, |acc, n| acc.saturating_mul(n));
    if total > budget as u128 {
        return Err(OracleError::BudgetExceeded {
            required: total,
            budget,
        });
    }

    let var_domain: Vec<i128> = (-(bound as i128)..=bound as i128).collect();
    let exp_domains: Vec<Vec<u32>> = equation
        .exponents
        .iter()
        .map(|(_, min)| (*min..=exponent_cap).collect())
        .collect();

    let nv = equation.variables.len();
    let exp_names: Vec<String> = equation.exponents.iter().map(|(n, _)| n.clone()).collect();
    let lhs = compile(&equation.lhs, &equation.variables, &exp_names)
        .expect("equation binds its own free names");
    let rhs = compile(&equation.rhs, &equation.variables, &exp_names)
        .expect("equation binds its own free names");

    let sizes: Vec<usize> = core::iter::repeat_n(var_domain.len(), nv)
        .chain(exp_domains.iter().map(Vec::len))
        .collect();
    let mut indices = alloc::vec![0usize; sizes.len()];
    let mut values = alloc::vec![var_domain[0]; nv];
    let mut exps: Vec<u32> = exp_domains.iter().map(|d| d[0]).collect();

    let mut solutions = Vec::new();
    let mut signatures = Vec::new();

    'outer: loop {
        match (lhs.eval_int(&values, &exps), rhs.eval_int(&values, &exps)) {
            (Some(l), Some(r)) => {
                if l == r {
                    let point: BTreeMap<String, i128> = equation
                        .variables
                        .iter()
                        .zip(&values)
                        .map(|(n, v)| (n.clone(), *v))
                        .collect();
                    let exponents: BTreeMap<String, u32> = exp_names
                        .iter()
                        .zip(&exps)
                        .map(|(n, e)| (n.clone(), *e))
                        .collect();
                    signatures.push(signature_of(equation, &point, &exponents));
                    let mut solution = point;
                    for (name, e) in &exponents {
                        solution.insert(name.clone(), *e as i128);
                    }
                    solutions.push(solution);
                }
            }
            _ => return Err(OracleError::Overflow),
        }

        let mut i = indices.len();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            indices[i] = if indices[i] + 1 < sizes[i] { indices[i] + 1 } else { 0 };
            if i < nv {
                values[i] = var_domain[indices[i]];
            } else {
                exps[i - nv] = exp_domains[i - nv][indices[i]];
            }
            if indices[i] != 0 {
                continue 'outer;
            }
        }
    }

    Ok(SearchResult {
        equation: equation.clone(),
        bound,
        exponent_cap,
        solutions,
        signatures,
    })
}

/// Digital-root image of an integer point, with exponents folded into
/// their periodicity windows.
pub fn signature_of(
    equation: &Equation,
    values: &BTreeMap<String, i128>,
    exponents: &BTreeMap<String, u32>,
) -> Assignment {
    let mut sig = Assignment::default();
    for (name, v) in values {
        sig.roots.insert(name.clone(), digital_root(*v));
    }
    for (name, min) in &equation.exponents {
        let e = exponents[name];
        sig.exponents
            .insert(name.clone(), exponent_representative(e, *min));
    }
    sig
}

/// Outcome of checking sieve soundness against brute-force solutions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SoundnessReport {
    pub solutions_checked: usize,
    /// Solutions whose signature is missing from the feasible set. A
    /// non-empty list indicates an implementation bug: mod-9 soundness is
    /// mathematically guaranteed.
    pub counterexamples: Vec<(BTreeMap<String, i128>, Assignment)>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Verifies that the signature of every integer solution in the box lies in
/// the sieve's feasible set. Vacuously passes when the box holds no
/// solutions.
pub fn soundness_check(
    equation: &Equation,
    bound: i64,
    exponent_cap: u32,
    budget: u64,
) -> Result<SoundnessReport, OracleError> {
    let found = search_with_budget(equation, bound, exponent_cap, budget)?;
    let report = sieve_with_budget(equation, budget)?;
    let feasible: BTreeSet<&Assignment> = report.feasible_tuples.iter().collect();
    let mut counterexamples = Vec::new();
    for (solution, signature) in found.solutions.iter().zip(&found.signatures) {
        if !feasible.contains(signature) {
            counterexamples.push((solution.clone(), signature.clone()));
        }
    }
    Ok(SoundnessReport {
        solutions_checked: found.solutions.len(),
        counterexamples,
    })
}

/// A failing `(a, p[, q])` case of a Fermat congruence check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FermatCounterexample {
    pub a: u64,
    pub p: u64,
    pub q: Option<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FermatReport {
    pub cases_checked: u64,
    pub counterexamples: Vec<FermatCounterexample>,
}

impl FermatReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `a^p ≡ a (mod p)` for all `a <= a_max` and primes `p <= p_max`.
pub fn fermat_little_check(a_max: u64, p_max: u64) -> FermatReport {
    let mut report = FermatReport {
        cases_checked: 0,
        counterexamples: Vec::new(),
    };
    for p in primes_up_to(p_max) {
        for a in 1..=a_max {
            report.cases_checked += 1;
            if mod_exp(a % p, p, p) != a % p {
                report.counterexamples.push(FermatCounterexample {
                    a,
                    p,
                    q: None,
                });
            }
        }
    }
    report
}

/// Checks `a^p ≡ a^q (mod 3)` for all `a <= a_max` and ordered pairs of odd
/// primes `p, q <= prime_max`, i.e. that `a^p - a^q` is a multiple of 3.
pub fn fermat_extension_check(a_max: u64, prime_max: u64) -> FermatReport {
    let odd_primes: Vec<u64> = primes_up_to(prime_max)
        .into_iter()
        .filter(|&p| p != 2)
        .collect();
    let mut report = FermatReport {
        cases_checked: 0,
        counterexamples: Vec::new(),
    };
    for a in 1..=a_max {
        for &p in &odd_primes {
            for &q in &odd_primes {
                report.cases_checked += 1;
                if mod_exp(a % 3, p, 3) != mod_exp(a % 3, q, 3) {
                    report.counterexamples.push(FermatCounterexample {
                        a,
                        p,
                        q: Some(q),
                    });
                }
            }
        }
    }
    report
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = alloc::vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn mod_exp(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    debug_assert!(modulus >= 1);
    let mut acc: u64 = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % modulus as u128) as u64;
        }
        base = ((base as u128 * base as u128) % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

// EvalError::Unbound* cannot occur in search: every free name is bound by
// construction, so only Overflow reaches the caller.
impl From<EvalError> for OracleError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Overflow => OracleError::Overflow,
            other => panic!("unexpected evaluation error in oracle: {other}"),
        }
    }
}
