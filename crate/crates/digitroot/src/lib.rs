//! Digital-root (mod 9) arithmetic and a residue sieve for Diophantine
//! equations.
//!
//! The integers split into nine classes `1 + 9k, ..., 9 + 9k`; the digital
//! root of a number is the representative of its class, with 9 standing for
//! the residue 0. Arithmetic on digital roots is exact mod-9 arithmetic on
//! these representatives, which makes the digital root a cheap obstruction
//! test: if no assignment of roots balances an equation, the equation has no
//! integer solutions.
//!
//! The crate has four layers:
//!
//! * [`droot`] — the root type, its arithmetic, power residues, and the
//!   generated power/arithmetic tables;
//! * [`expr`] — an AST and parser for integer polynomial equations with
//!   literal or symbolic exponents, plus a root-level evaluator;
//! * [`sieve`] — exhaustive enumeration of root assignments with
//!   feasibility reports, filtering, and forbidden-pair analysis;
//! * [`oracle`] — brute-force integer search used to cross-check the sieve,
//!   plus Fermat's-little-theorem style congruence checks.
//!
//! ```
//! use digitroot::droot::{digital_root, dr_mul, DigitalRoot};
//!
//! assert_eq!(digital_root(888).value(), 6);
//! let four = DigitalRoot::new(4).unwrap();
//! let seven = DigitalRoot::new(7).unwrap();
//! assert_eq!(dr_mul(four, seven).value(), 1);
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod droot;
pub mod expr;
pub mod oracle;
pub mod sieve;

pub use droot::{digital_root, DigitalRoot};
pub use expr::{Assignment, Equation, Expr};
pub use sieve::{sieve, FeasibilityReport, Verdict};
