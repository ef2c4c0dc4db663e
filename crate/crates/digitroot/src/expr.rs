//! AST, parser, and evaluators for integer polynomial equations.
//!
//! Grammar (the public input format):
//!
//! ```text
//! equation := expr '=' expr
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := ['-'] atom
//! atom     := integer | ident ['^' exponent] | '(' expr ')'
//! exponent := integer | ident
//! ```
//!
//! Explicit `*` is required; implicit multiplication like `dy^2` is not
//! accepted. A name that appears in exponent position anywhere in the
//! equation is a symbolic exponent everywhere; using the same name as a
//! base variable is an error.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::droot::{digital_root, dr_add, dr_mul, dr_pow, dr_sub, DigitalRoot};

/// A power's exponent: a fixed integer, or a named symbol with a minimum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Exponent {
    Literal(u32),
    Symbolic { name: String, min: u32 },
}

/// Integer polynomial expression tree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Expr {
    Const(i128),
    Var(String),
    Pow(Box<Expr>, Exponent),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

/// A parsed equation `lhs = rhs` with its free names.
///
/// `variables` and `exponents` list the free base variables and symbolic
/// exponents once each, in first-appearance order reading left to right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
    pub variables: Vec<String>,
    pub exponents: Vec<(String, u32)>,
}

/// Binding of base variables to digital roots and symbolic exponents to
/// representative integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Assignment {
    pub roots: BTreeMap<String, DigitalRoot>,
    pub exponents: BTreeMap<String, u32>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    /// Byte offset into the input where the error was detected.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.position, self.message)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EvalError {
    UnboundVariable(String),
    UnboundExponent(String),
    /// Exact integer evaluation left the i128 range.
    Overflow,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundVariable(n) => write!(f, "unbound variable `{n}`"),
            EvalError::UnboundExponent(n) => write!(f, "unbound exponent `{n}`"),
            EvalError::Overflow => write!(f, "integer overflow during exact evaluation"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Token<'a> {
    Int(i128),
    Ident(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
    Equals,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Token<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(n) => write!(f, "integer {n}"),
            Token::Ident(s) => write!(f, "identifier `{s}`"),
            Token::Plus => write!(f, "'+'"),
            Token::Minus => write!(f, "'-'"),
            Token::Star => write!(f, "'*'"),
            Token::Caret => write!(f, "'^'"),
            Token::Equals => write!(f, "'='"),
            Token::LParen => write!(f, "'('"),
            Token::RParen => write!(f, "')'"),
            Token::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token<'_>, usize)>, ParseError> {
    if !text.is_ascii() {
        return Err(ParseError {
            position: 0,
            message: "input must be ASCII".to_owned(),
        });
    }
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                tokens.push((Token::Plus, i));
                i += 1;
            }
            b'-' => {
                tokens.push((Token::Minus, i));
                i += 1;
            }
            b'*' => {
                tokens.push((Token::Star, i));
                i += 1;
            }
            b'^' => {
                tokens.push((Token::Caret, i));
                i += 1;
            }
            b'=' => {
                tokens.push((Token::Equals, i));
                i += 1;
            }
            b'(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            b')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                let value: i128 = digits.parse().map_err(|_| ParseError {
                    position: start,
                    message: format!("integer constant `{digits}` is out of range"),
                })?;
                tokens.push((Token::Int(value), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                i += 1;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((Token::Ident(&text[start..i]), start));
            }
            _ => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character `{}`", c as char),
                })
            }
        }
    }
    tokens.push((Token::End, bytes.len()));
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token<'a>, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Token<'a> {
        self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Token<'a> {
        let t = self.tokens[self.pos].0;
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Token<'a>) -> Result<(), ParseError> {
        if self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", want, self.peek())))
        }
    }

    fn error(&self, message: String) -> ParseError {
        ParseError {
            position: self.offset(),
            message,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut node = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    node = Expr::Add(Box::new(node), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    node = Expr::Sub(Box::new(node), Box::new(self.term()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut node = self.factor()?;
        while self.peek() == Token::Star {
            self.bump();
            node = Expr::Mul(Box::new(node), Box::new(self.factor()?));
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Token::Minus {
            self.bump();
            Ok(Expr::Neg(Box::new(self.atom()?)))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Token::Int(value) => {
                self.bump();
                Ok(Expr::Const(value))
            }
            Token::Ident(name) => {
                self.bump();
                let base = Expr::Var(name.to_owned());
                if self.peek() == Token::Caret {
                    self.bump();
                    let exp = self.exponent()?;
                    Ok(Expr::Pow(Box::new(base), exp))
                } else {
                    Ok(base)
                }
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            other => Err(self.error(format!(
                "expected integer, identifier, or '(', found {other}"
            ))),
        }
    }

    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        match self.peek() {
            Token::Int(value) => {
                if value < 1 {
                    return Err(self.error("literal exponent must be >= 1".to_owned()));
                }
                let n = u32::try_from(value)
                    .map_err(|_| self.error("literal exponent is too large".to_owned()))?;
                self.bump();
                Ok(Exponent::Literal(n))
            }
            Token::Ident(name) => {
                self.bump();
                Ok(Exponent::Symbolic {
                    name: name.to_owned(),
                    min: 1,
                })
            }
            other => Err(self.error(format!("expected exponent, found {other}"))),
        }
    }
}

/// Parses a bare expression (no `=`). Used for filter subexpressions.
pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    p.expect(Token::End)?;
    Ok(e)
}

/// Parses an equation and classifies its free names.
///
/// `exponent_mins` sets minimum constraints on symbolic exponents; names
/// not listed default to min 1. Naming a non-exponent in `exponent_mins`,
/// or using one name both as base variable and exponent, is an error.
pub fn parse_equation(
    text: &str,
    exponent_mins: &BTreeMap<String, u32>,
) -> Result<Equation, ParseError> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let lhs = p.expr()?;
    p.expect(Token::Equals)?;
    let mut rhs = p.expr()?;
    p.expect(Token::End)?;
    let mut lhs = lhs;

    let mut variables: Vec<String> = Vec::new();
    let mut exponents: Vec<String> = Vec::new();
    collect_names(&lhs, &mut variables, &mut exponents);
    collect_names(&rhs, &mut variables, &mut exponents);

    if let Some(name) = variables.iter().find(|v| exponents.contains(v)) {
        return Err(ParseError {
            position: 0,
            message: format!("`{name}` is used both as a base variable and as an exponent"),
        });
    }
    for (name, &min) in exponent_mins {
        if !exponents.contains(name) {
            return Err(ParseError {
                position: 0,
                message: format!("`{name}` is not a symbolic exponent of this equation"),
            });
        }
        if min < 1 {
            return Err(ParseError {
                position: 0,
                message: format!("minimum for exponent `{name}` must be >= 1"),
            });
        }
    }

    apply_mins(&mut lhs, exponent_mins);
    apply_mins(&mut rhs, exponent_mins);

    let exponents = exponents
        .into_iter()
        .map(|name| {
            let min = exponent_mins.get(&name).copied().unwrap_or(1);
            (name, min)
        })
        .collect();

    Ok(Equation {
        lhs,
        rhs,
        variables,
        exponents,
    })
}

fn collect_names(expr: &Expr, variables: &mut Vec<String>, exponents: &mut Vec<String>) {
    match expr {
        Expr::Const(_) => {}
        Expr::Var(name) => {
            if !variables.contains(name) {
                variables.push(name.clone());
            }
        }
        Expr::Pow(base, exp) => {
            collect_names(base, variables, exponents);
            if let Exponent::Symbolic { name, .. } = exp {
                if !exponents.contains(name) {
                    exponents.push(name.clone());
                }
            }
        }
        Expr::Neg(e) => collect_names(e, variables, exponents),
        Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) => {
            collect_names(l, variables, exponents);
            collect_names(r, variables, exponents);
        }
    }
}

fn apply_mins(expr: &mut Expr, mins: &BTreeMap<String, u32>) {
    match expr {
        Expr::Const(_) | Expr::Var(_) => {}
        Expr::Pow(base, exp) => {
            apply_mins(base, mins);
            if let Exponent::Symbolic { name, min } = exp {
                if let Some(&m) = mins.get(name) {
                    *min = m;
                }
            }
        }
        Expr::Neg(e) => apply_mins(e, mins),
        Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) => {
            apply_mins(l, mins);
            apply_mins(r, mins);
        }
    }
}

/// Free names of an expression: base variables and symbolic exponents.
pub fn free_names(expr: &Expr) -> (Vec<String>, Vec<String>) {
    let mut vars = Vec::new();
    let mut exps = Vec::new();
    collect_names(expr, &mut vars, &mut exps);
    (vars, exps)
}

/// Digital-root evaluation of an expression under an assignment.
///
/// Constants reduce through `digital_root`; `+`, `-`, `*` map through root
/// arithmetic; powers map through `dr_pow`; negation is subtraction from 9.
pub fn evaluate_dr(expr: &Expr, assignment: &Assignment) -> Result<DigitalRoot, EvalError> {
    match expr {
        Expr::Const(v) => Ok(digital_root(*v)),
        Expr::Var(name) => assignment
            .roots
            .get(name)
            .copied()
            .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
        Expr::Pow(base, exp) => {
            let b = evaluate_dr(base, assignment)?;
            let e = match exp {
                Exponent::Literal(n) => *n,
                Exponent::Symbolic { name, .. } => *assignment
                    .exponents
                    .get(name)
                    .ok_or_else(|| EvalError::UnboundExponent(name.clone()))?,
            };
            Ok(dr_pow(b, e))
        }
        Expr::Neg(e) => Ok(dr_sub(DigitalRoot::NINE, evaluate_dr(e, assignment)?)),
        Expr::Add(l, r) => Ok(dr_add(
            evaluate_dr(l, assignment)?,
            evaluate_dr(r, assignment)?,
        )),
        Expr::Sub(l, r) => Ok(dr_sub(
            evaluate_dr(l, assignment)?,
            evaluate_dr(r, assignment)?,
        )),
        Expr::Mul(l, r) => Ok(dr_mul(
            evaluate_dr(l, assignment)?,
            evaluate_dr(r, assignment)?,
        )),
    }
}

/// Exact integer evaluation with checked i128 arithmetic.
pub fn evaluate_int(
    expr: &Expr,
    values: &BTreeMap<String, i128>,
    exponents: &BTreeMap<String, u32>,
) -> Result<i128, EvalError> {
    match expr {
        Expr::Const(v) => Ok(*v),
        Expr::Var(name) => values
            .get(name)
            .copied()
            .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
        Expr::Pow(base, exp) => {
            let b = evaluate_int(base, values, exponents)?;
            let e = match exp {
                Exponent::Literal(n) => *n,
                Exponent::Symbolic { name, .. } => *exponents
                    .get(name)
                    .ok_or_else(|| EvalError::UnboundExponent(name.clone()))?,
            };
            b.checked_pow(e).ok_or(EvalError::Overflow)
        }
        Expr::Neg(e) => evaluate_int(e, values, exponents)?
            .checked_neg()
            .ok_or(EvalError::Overflow),
        Expr::Add(l, r) => evaluate_int(l, values, exponents)?
            .checked_add(evaluate_int(r, values, exponents)?)
            .ok_or(EvalError::Overflow),
        Expr::Sub(l, r) => evaluate_int(l, values, exponents)?
            .checked_sub(evaluate_int(r, values, exponents)?)
            .ok_or(EvalError::Overflow),
        Expr::Mul(l, r) => evaluate_int(l, values, exponents)?
            .checked_mul(evaluate_int(r, values, exponents)?)
            .ok_or(EvalError::Overflow),
    }
}

/// Expression with names resolved to slot indices, for hot enumeration
/// loops. Slot `i` refers to position `i` of the variable (or exponent)
/// order the expression was compiled against.
#[derive(Clone, Debug)]
pub enum CompiledExpr {
    Const(i128),
    Var(usize),
    PowLit(Box<CompiledExpr>, u32),
    PowSym(Box<CompiledExpr>, usize),
    Neg(Box<CompiledExpr>),
    Add(Box<CompiledExpr>, Box<CompiledExpr>),
    Sub(Box<CompiledExpr>, Box<CompiledExpr>),
    Mul(Box<CompiledExpr>, Box<CompiledExpr>),
}

/// Resolves names against fixed variable and exponent orders.
pub fn compile(
    expr: &Expr,
    variables: &[String],
    exponents: &[String],
) -> Result<CompiledExpr, EvalError> {
    match expr {
        Expr::Const(v) => Ok(CompiledExpr::Const(*v)),
        Expr::Var(name) => variables
            .iter()
            .position(|n| n == name)
            .map(CompiledExpr::Var)
            .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
        Expr::Pow(base, exp) => {
            let base = Box::new(compile(base, variables, exponents)?);
            match exp {
                Exponent::Literal(n) => Ok(CompiledExpr::PowLit(base, *n)),
                Exponent::Symbolic { name, .. } => exponents
                    .iter()
                    .position(|n| n == name)
                    .map(|slot| CompiledExpr::PowSym(base, slot))
                    .ok_or_else(|| EvalError::UnboundExponent(name.clone())),
            }
        }
        Expr::Neg(e) => Ok(CompiledExpr::Neg(Box::new(compile(
            e, variables, exponents,
        )?))),
        Expr::Add(l, r) => Ok(CompiledExpr::Add(
            Box::new(compile(l, variables, exponents)?),
            Box::new(compile(r, variables, exponents)?),
        )),
        Expr::Sub(l, r) => Ok(CompiledExpr::Sub(
            Box::new(compile(l, variables, exponents)?),
            Box::new(compile(r, variables, exponents)?),
        )),
        Expr::Mul(l, r) => Ok(CompiledExpr::Mul(
            Box::new(compile(l, variables, exponents)?),
            Box::new(compile(r, variables, exponents)?),
        )),
    }
}

impl CompiledExpr {
    pub fn eval_dr(&self, roots: &[DigitalRoot], exponents: &[u32]) -> DigitalRoot {
        match self {
            CompiledExpr::Const(v) => digital_root(*v),
            CompiledExpr::Var(slot) => roots[*slot],
            CompiledExpr::PowLit(base, n) => dr_pow(base.eval_dr(roots, exponents), *n),
            CompiledExpr::PowSym(base, slot) => {
                dr_pow(base.eval_dr(roots, exponents), exponents[*slot])
            }
            CompiledExpr::Neg(e) => dr_sub(DigitalRoot::NINE, e.eval_dr(roots, exponents)),
            CompiledExpr::Add(l, r) => {
                dr_add(l.eval_dr(roots, exponents), r.eval_dr(roots, exponents))
            }
            CompiledExpr::Sub(l, r) => {
                dr_sub(l.eval_dr(roots, exponents), r.eval_dr(roots, exponents))
            }
            CompiledExpr::Mul(l, r) => {
                dr_mul(l.eval_dr(roots, exponents), r.eval_dr(roots, exponents))
            }
        }
    }

    /// Exact checked evaluation; `None` on i128 overflow.
    pub fn eval_int(&self, values: &[i128], exponents: &[u32]) -> Option<i128> {
        match self {
            CompiledExpr::Const(v) => Some(*v),
            CompiledExpr::Var(slot) => Some(values[*slot]),
            CompiledExpr::PowLit(base, n) => base.eval_int(values, exponents)?.checked_pow(*n),
            CompiledExpr::PowSym(base, slot) => base
                .eval_int(values, exponents)?
                .checked_pow(exponents[*slot]),
            CompiledExpr::Neg(e) => e.eval_int(values, exponents)?.checked_neg(),
            CompiledExpr::Add(l, r) => l
                .eval_int(values, exponents)?
                .checked_add(r.eval_int(values, exponents)?),
            CompiledExpr::Sub(l, r) => l
                .eval_int(values, exponents)?
                .checked_sub(r.eval_int(values, exponents)?),
            CompiledExpr::Mul(l, r) => l
                .eval_int(values, exponents)?
                .checked_mul(r.eval_int(values, exponents)?),
        }
    }
}

// Rendering uses the grammar's precedence levels so that reparsing the
// canonical text reconstructs the same tree.
fn prec(expr: &Expr) -> u8 {
    match expr {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Const(_) | Expr::Var(_) | Expr::Pow(..) => 4,
    }
}

fn fmt_child(expr: &Expr, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if prec(expr) < min_prec {
        write!(f, "({expr})")
    } else {
        write!(f, "{expr}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(v) => write!(f, "{v}"),
            Expr::Var(name) => write!(f, "{name}"),
            Expr::Pow(base, exp) => {
                match base.as_ref() {
                    Expr::Var(name) => write!(f, "{name}")?,
                    other => write!(f, "({other})")?,
                }
                match exp {
                    Exponent::Literal(n) => write!(f, "^{n}"),
                    Exponent::Symbolic { name, .. } => write!(f, "^{name}"),
                }
            }
            Expr::Neg(e) => {
                write!(f, "-")?;
                fmt_child(e, 4, f)
            }
            Expr::Add(l, r) => {
                fmt_child(l, 1, f)?;
                write!(f, " + ")?;
                fmt_child(r, 2, f)
            }
            Expr::Sub(l, r) => {
                fmt_child(l, 1, f)?;
                write!(f, " - ")?;
                fmt_child(r, 2, f)
            }
            Expr::Mul(l, r) => {
                fmt_child(l, 2, f)?;
                write!(f, "*")?;
                fmt_child(r, 3, f)
            }
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
