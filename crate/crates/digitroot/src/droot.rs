//! The digital-root type and its arithmetic.
//!
//! A digital root is the single digit obtained by repeatedly summing the
//! decimal digits of a positive integer. Equivalently it is the residue
//! mod 9, written with representatives 1..9 where 9 stands for residue 0.
//! All operations here work on those representatives and never leave them.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

/// A digital root: a value in `1..=9`, with 9 representing the residue 0
/// mod 9.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DigitalRoot(u8);

impl DigitalRoot {
    /// The nine roots in ascending order.
    pub const ALL: [DigitalRoot; 9] = [
        DigitalRoot(1),
        DigitalRoot(2),
        DigitalRoot(3),
        DigitalRoot(4),
        DigitalRoot(5),
        DigitalRoot(6),
        DigitalRoot(7),
        DigitalRoot(8),
        DigitalRoot(9),
    ];

    /// The root representing residue 0.
    pub const NINE: DigitalRoot = DigitalRoot(9);

    pub fn new(value: u8) -> Option<Self> {
        (1..=9).contains(&value).then_some(DigitalRoot(value))
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    /// Residue in `0..9` (9 maps to 0).
    const fn residue(self) -> u8 {
        self.0 % 9
    }

    const fn from_residue(r: u8) -> Self {
        if r == 0 {
            DigitalRoot(9)
        } else {
            DigitalRoot(r)
        }
    }
}

impl fmt::Display for DigitalRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Digital root of an arbitrary integer.
///
/// For positive `n` this equals the iterated decimal digit-sum; negatives
/// and zero reduce through the residue class map, so `digital_root(-1)` is 8
/// and `digital_root(0)` is 9.
pub fn digital_root(n: i128) -> DigitalRoot {
    DigitalRoot::from_residue(n.rem_euclid(9) as u8)
}

pub fn dr_add(a: DigitalRoot, b: DigitalRoot) -> DigitalRoot {
    DigitalRoot::from_residue((a.residue() + b.residue()) % 9)
}

pub fn dr_sub(a: DigitalRoot, b: DigitalRoot) -> DigitalRoot {
    DigitalRoot::from_residue((9 + a.residue() - b.residue()) % 9)
}

pub fn dr_mul(a: DigitalRoot, b: DigitalRoot) -> DigitalRoot {
    DigitalRoot::from_residue((a.residue() * b.residue()) % 9)
}

/// Digital root of `base^exp`, computed by modular exponentiation mod 9.
///
/// The result is 6-periodic in the exponent from `exp = 2` on, and already
/// from `exp = 1` for bases not divisible by 3.
///
/// Panics if `exp == 0` (the calculus covers positive powers only).
pub fn dr_pow(base: DigitalRoot, exp: u32) -> DigitalRoot {
    assert!(exp >= 1, "dr_pow: exponent must be >= 1");
    let mut acc: u8 = 1;
    let mut b = base.residue();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc * b) % 9;
        }
        b = (b * b) % 9;
        e >>= 1;
    }
    DigitalRoot::from_residue(acc)
}

/// An exponent specification: a fixed power, or any power at least `min`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExponentSpec {
    Literal(u32),
    AtLeast(u32),
}

/// The window of exponent representatives covering all powers `e >= min`.
///
/// Power residues repeat with period 6 from exponent 2, so `{min..=min+5}`
/// covers everything when `min >= 2`. For `min = 1` the window is `{1..=7}`:
/// bases 3 and 6 take different roots at exponent 1 than anywhere later in
/// their cycle.
pub fn exponent_window(min: u32) -> RangeInclusive<u32> {
    if min >= 2 {
        min..=min + 5
    } else {
        1..=7
    }
}

/// Maps an exponent `e >= min` to its representative inside
/// [`exponent_window`], so that `dr_pow(b, e) = dr_pow(b, rep)` for every
/// base `b`.
pub fn exponent_representative(e: u32, min: u32) -> u32 {
    debug_assert!(e >= min && min >= 1);
    if min >= 2 {
        min + (e - min) % 6
    } else if e <= 1 {
        e
    } else {
        2 + (e - 2) % 6
    }
}

/// The set of digital roots attainable by an `n`-th power, for a literal
/// exponent or over all exponents meeting a minimum.
pub fn attainable_roots(spec: ExponentSpec) -> BTreeSet<DigitalRoot> {
    let mut roots = BTreeSet::new();
    match spec {
        ExponentSpec::Literal(n) => {
            for b in DigitalRoot::ALL {
                roots.insert(dr_pow(b, n));
            }
        }
        ExponentSpec::AtLeast(min) => {
            assert!(min >= 1, "attainable_roots: minimum must be >= 1");
            for e in exponent_window(min) {
                for b in DigitalRoot::ALL {
                    roots.insert(dr_pow(b, e));
                }
            }
        }
    }
    roots
}

/// Rows of the power table: entry `(n, m)` is the digital root of
/// `(m + 9k)^n`, for exponents `n = 2..=max_exponent` across the nine
/// classes.
pub fn power_table(max_exponent: u32) -> Vec<[DigitalRoot; 9]> {
    assert!(max_exponent >= 2, "power_table: max_exponent must be >= 2");
    (2..=max_exponent)
        .map(|n| DigitalRoot::ALL.map(|b| dr_pow(b, n)))
        .collect()
}

/// 9x9 addition table: entry `(a, b)` is `dr_add(a, b)`.
pub fn addition_table() -> [[DigitalRoot; 9]; 9] {
    DigitalRoot::ALL.map(|a| DigitalRoot::ALL.map(|b| dr_add(a, b)))
}

/// 9x9 subtraction table: entry `(a, b)` is `dr_sub(a, b)`.
pub fn subtraction_table() -> [[DigitalRoot; 9]; 9] {
    DigitalRoot::ALL.map(|a| DigitalRoot::ALL.map(|b| dr_sub(a, b)))
}

/// 9x9 multiplication table: entry `(a, b)` is `dr_mul(a, b)`.
pub fn multiplication_table() -> [[DigitalRoot; 9]; 9] {
    DigitalRoot::ALL.map(|a| DigitalRoot::ALL.map(|b| dr_mul(a, b)))
}
