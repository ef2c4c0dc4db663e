//! `droot` — digital-root analysis of Diophantine equations.
//!
//! Subcommands: `dr` (digital root of an integer), `table` (power and
//! arithmetic tables), `analyze` (mod-9 feasibility sieve), `search`
//! (brute-force integer solutions), `fermat` (congruence checks).
//!
//! Exit codes: 0 ok; 1 negative finding (obstruction, counterexample, or
//! soundness failure); 2 usage error; 3 enumeration budget exceeded.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use digitroot::droot::{
    addition_table, digital_root, multiplication_table, power_table, subtraction_table,
};
use digitroot::expr::{parse_equation, Equation};
use digitroot::oracle::{
    fermat_extension_check, fermat_little_check, search_with_budget, soundness_check,
    FermatReport, SearchResult,
};
use digitroot::sieve::{
    filter_report, sieve_with_budget, FeasibilityReport, Predicate, SieveError, Verdict,
};

mod render;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

const GRAMMAR_HELP: &str = "\
Equation grammar:
  equation := expr '=' expr
  expr     := term (('+'|'-') term)*
  term     := factor ('*' factor)*
  factor   := ['-'] atom
  atom     := integer | ident ['^' exponent] | '(' expr ')'
  exponent := integer | ident

Multiplication must be explicit: write `d*y^2`, not `dy^2`. A name used in
exponent position (e.g. `z` in `C^z`) is a symbolic exponent; give it a
minimum with `--min z=3`. Filter predicates are '&'-separated clauses of
the form `dr(<expr>)=<digit>`, e.g. `dr(x^2)=1 & dr(y^2)=1`.";

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Powers,
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FermatMode {
    Classic,
    Extension,
}

#[derive(Parser)]
#[command(name = "droot", version, about = "Digital-root (mod 9) feasibility analysis of Diophantine equations", after_long_help = GRAMMAR_HELP)]
struct Cli {
    /// Output format (csv applies to tables only)
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Enumeration budget: maximum assignments or candidate points
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Digital root of an integer
    Dr {
        #[arg(allow_hyphen_values = true)]
        n: i128,
    },
    /// Render the power table or an arithmetic table of digital roots
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// Largest exponent row of the power table
        #[arg(long, default_value_t = 45)]
        max_exp: u32,
    },
    /// Sieve an equation for mod-9 feasibility
    Analyze {
        equation: String,
        /// Minimum for a symbolic exponent, as name=value (repeatable)
        #[arg(long = "min", value_name = "NAME=VALUE")]
        mins: Vec<String>,
        /// Keep only feasible tuples satisfying this predicate
        #[arg(long)]
        filter: Option<String>,
        /// Include the full feasible tuple list in the output
        #[arg(long)]
        tuples: bool,
    },
    /// Brute-force integer solutions in a bounded box
    Search {
        equation: String,
        /// Bound on |value| for base variables
        #[arg(long, default_value_t = 100)]
        bound: i64,
        /// Largest symbolic exponent value to try
        #[arg(long, default_value_t = 8)]
        exponent_cap: u32,
        /// Minimum for a symbolic exponent, as name=value (repeatable)
        #[arg(long = "min", value_name = "NAME=VALUE")]
        mins: Vec<String>,
        /// Also verify every solution's signature against the sieve
        #[arg(long)]
        check: bool,
    },
    /// Fermat's little theorem congruence checks
    Fermat {
        #[arg(value_enum)]
        mode: FermatMode,
        #[arg(long, default_value_t = 100)]
        a_max: u64,
        #[arg(long, default_value_t = 31)]
        p_max: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Dr { n } => {
            let root = digital_root(n);
            match cli.format {
                Format::Text => println!("{root}"),
                Format::Json => println!(
                    "{}",
                    render::json_object([
                        ("n", render::int_value(n)),
                        ("digital_root", root.value().into()),
                    ])
                ),
                Format::Csv => return usage("csv output is only available for tables"),
            }
            EXIT_OK
        }
        Command::Table { kind, max_exp } => cmd_table(kind, max_exp, cli.format),
        Command::Analyze {
            equation,
            mins,
            filter,
            tuples,
        } => cmd_analyze(&equation, &mins, filter.as_deref(), tuples, cli.format, cli.budget),
        Command::Search {
            equation,
            bound,
            exponent_cap,
            mins,
            check,
        } => cmd_search(&equation, bound, exponent_cap, &mins, check, cli.format, cli.budget),
        Command::Fermat { mode, a_max, p_max } => cmd_fermat(mode, a_max, p_max, cli.format),
    }
}

fn usage(message: &str) -> u8 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn parse_mins(args: &[String]) -> Result<BTreeMap<String, u32>, String> {
    let mut mins = BTreeMap::new();
    for arg in args {
        let (name, value) = arg
            .split_once('=')
            .ok_or_else(|| format!("--min expects name=value, got `{arg}`"))?;
        let value: u32 = value
            .parse()
            .map_err(|_| format!("--min {name}: `{value}` is not a positive integer"))?;
        if value < 1 {
            return Err(format!("--min {name}: minimum must be >= 1"));
        }
        mins.insert(name.to_string(), value);
    }
    Ok(mins)
}

fn parse_cli_equation(text: &str, mins: &[String]) -> Result<Equation, String> {
    let mins = parse_mins(mins)?;
    parse_equation(text, &mins).map_err(|e| e.to_string())
}

fn cmd_table(kind: TableKind, max_exp: u32, format: Format) -> u8 {
    match kind {
        TableKind::Powers => {
            if max_exp < 2 {
                return usage("--max-exp must be >= 2");
            }
            let rows = power_table(max_exp);
            render::print_power_table(&rows, format);
        }
        TableKind::Add => render::print_op_table("a+b", &addition_table(), format),
        TableKind::Sub => render::print_op_table("a-b", &subtraction_table(), format),
        TableKind::Mul => render::print_op_table("a*b", &multiplication_table(), format),
    }
    EXIT_OK
}

fn cmd_analyze(
    equation_text: &str,
    mins: &[String],
    filter: Option<&str>,
    tuples: bool,
    format: Format,
    budget: u64,
) -> u8 {
    if format == Format::Csv {
        return usage("csv output is only available for tables");
    }
    let equation = match parse_cli_equation(equation_text, mins) {
        Ok(eq) => eq,
        Err(e) => return usage(&e),
    };
    let report = match sieve_with_budget(&equation, budget) {
        Ok(r) => r,
        Err(SieveError::BudgetExceeded { required, budget }) => {
            eprintln!("error: enumeration of {required} assignments exceeds the budget of {budget}; raise --budget or reduce the equation");
            return EXIT_BUDGET;
        }
        Err(e) => return usage(&e.to_string()),
    };
    let report = match filter {
        Some(text) => {
            let predicate = match Predicate::parse(text) {
                Ok(p) => p,
                Err(e) => return usage(&e.to_string()),
            };
            match filter_report(&report, &predicate) {
                Ok(r) => r,
                Err(e) => return usage(&e.to_string()),
            }
        }
        None => report,
    };
    print_report(&report, tuples, format);
    if report.verdict == Verdict::Obstruction {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    }
}

fn print_report(report: &FeasibilityReport, tuples: bool, format: Format) {
    match format {
        Format::Text => render::print_report_text(report, tuples),
        Format::Json => println!("{}", render::report_json(report, tuples)),
        Format::Csv => unreachable!("rejected earlier"),
    }
}

fn cmd_search(
    equation_text: &str,
    bound: i64,
    exponent_cap: u32,
    mins: &[String],
    check: bool,
    format: Format,
    budget: u64,
) -> u8 {
    if format == Format::Csv {
        return usage("csv output is only available for tables");
    }
    if bound < 0 {
        return usage("--bound must be >= 0");
    }
    let equation = match parse_cli_equation(equation_text, mins) {
        Ok(eq) => eq,
        Err(e) => return usage(&e),
    };
    let result = match search_with_budget(&equation, bound, exponent_cap, budget) {
        Ok(r) => r,
        Err(digitroot::oracle::OracleError::BudgetExceeded { required, budget }) => {
            eprintln!("error: search over {required} candidate points exceeds the budget of {budget}; raise --budget or shrink the box");
            return EXIT_BUDGET;
        }
        Err(e) => return usage(&e.to_string()),
    };
    let soundness = if check {
        match soundness_check(&equation, bound, exponent_cap, budget) {
            Ok(r) => Some(r),
            Err(digitroot::oracle::OracleError::BudgetExceeded { required, budget }) => {
                eprintln!("error: soundness check over {required} points exceeds the budget of {budget}");
                return EXIT_BUDGET;
            }
            Err(e) => return usage(&e.to_string()),
        }
    } else {
        None
    };
    print_search(&result, soundness.as_ref(), format);
    match soundness {
        Some(s) if !s.passed() => EXIT_NEGATIVE,
        _ => EXIT_OK,
    }
}

fn print_search(
    result: &SearchResult,
    soundness: Option<&digitroot::oracle::SoundnessReport>,
    format: Format,
) {
    match format {
        Format::Text => render::print_search_text(result, soundness),
        Format::Json => println!("{}", render::search_json(result, soundness)),
        Format::Csv => unreachable!("rejected earlier"),
    }
}

fn cmd_fermat(mode: FermatMode, a_max: u64, p_max: u64, format: Format) -> u8 {
    if format == Format::Csv {
        return usage("csv output is only available for tables");
    }
    if a_max < 1 || p_max < 2 {
        return usage("--a-max must be >= 1 and --p-max >= 2");
    }
    let start = Instant::now();
    let (name, report): (&str, FermatReport) = match mode {
        FermatMode::Classic => ("classic", fermat_little_check(a_max, p_max)),
        FermatMode::Extension => ("extension", fermat_extension_check(a_max, p_max)),
    };
    let elapsed = start.elapsed();
    match format {
        Format::Text => render::print_fermat_text(name, &report, elapsed),
        Format::Json => println!("{}", render::fermat_json(name, &report, elapsed)),
        Format::Csv => unreachable!("rejected earlier"),
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}
