//! Command-line front end.
//!
//! Exit codes: 0 when every checked relation holds (expected failures
//! included), 1 on an unexpected violation, 2 on usage, parse or engine
//! errors.

pub mod parse;

use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::modular::{self, ModularWord};
use crate::mq2;
use crate::pairs::{self, RelationReport};
use crate::talgebra::{Element, Family};

pub use parse::{parse_element, parse_expression, parse_matrix, Target, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Prop1,
    Prop2,
    Prop3,
    Prop4,
    Theorem1,
    Theorem2,
    Theorem3,
    Mq2,
    All,
}

/// `I`, `II`, `III`, or `GL` for the quantum group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeArg(pub Target);

impl FromStr for TypeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("gl") {
            return Ok(TypeArg(Target::GL));
        }
        s.parse::<Family>()
            .map(|f| TypeArg(Target::Pair(f)))
            .map_err(|_| format!("unknown type '{s}' (expected I, II, III or GL)"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "qmp", version, about = "Exact rewriting for quantum matrix pairs and GL_q(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Reduce an expression to normal form.
    Reduce {
        #[arg(long = "type")]
        family: TypeArg,
        expression: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a verification suite over an exponent grid.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long = "type")]
        family: Option<TypeArg>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        range: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Apply an SL(2,Z) word such as "S T T'" to the generator pair.
    Modular {
        #[arg(long = "type")]
        family: TypeArg,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn fail(err: &mut impl Write, e: &dyn std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_ERROR
}

/// Runs `command`, writing results to `out` and diagnostics to `err`.
pub fn run(command: &Command, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let code = match command {
        Command::Reduce {
            family,
            expression,
            format,
        } => run_reduce(family.0, expression, *format, out, err),
        Command::Verify {
            suite,
            family,
            range,
            format,
        } => run_verify(*suite, family.map(|t| t.0), *range, *format, out, err),
        Command::Modular { family, word, format } => run_modular(family.0, word, *format, out, err),
    };
    let _ = out.flush();
    code
}

fn run_reduce(target: Target, src: &str, format: Format, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let value = match parse_expression(src, target) {
        Ok(Value::Scalar(c)) => match target {
            Target::Pair(family) => Value::Elem(Element::scalar(family, c)),
            Target::GL => Value::GLElem(mq2::QGElement::scalar(c)),
        },
        Ok(v) => v,
        Err(e) => return fail(err, &e),
    };
    let _ = match format {
        Format::Text => writeln!(out, "{value}"),
        Format::Json => writeln!(
            out,
            "{}",
            json!({"command": "reduce", "type": target.to_string(), "input": src, "result": value.to_string()})
        ),
    };
    EXIT_OK
}

/// Usage problems come back as plain messages, engine errors verbatim.
fn suite_reports(suite: Suite, target: Option<Target>, range: i64) -> Result<Vec<RelationReport>, String> {
    let family = || match target {
        Some(Target::Pair(f)) => Ok(f),
        Some(Target::GL) => Err("type GL only applies to the mq2 suite".to_string()),
        None => Err("--type is required for this suite".to_string()),
    };
    let theorem3 = |f: Family| modular::verify_theorem3(f, range as usize).map_err(|e: Error| e.to_string());
    Ok(match suite {
        Suite::Prop1 => pairs::verify_prop1(family()?, range),
        Suite::Prop2 => {
            family()?;
            pairs::verify_prop2(range)
        }
        Suite::Prop3 => pairs::verify_prop3(family()?, range),
        Suite::Prop4 => pairs::verify_prop4(family()?),
        Suite::Theorem1 => pairs::verify_theorem1(family()?, range),
        Suite::Theorem2 => pairs::verify_theorem2(family()?, range),
        Suite::Theorem3 => theorem3(family()?)?,
        Suite::Mq2 => mq2::verify_results(range),
        Suite::All => {
            let f = family()?;
            let mut all = Vec::new();
            for s in [Suite::Prop1, Suite::Prop3, Suite::Prop4, Suite::Theorem1, Suite::Theorem2] {
                all.extend(suite_reports(s, target, range)?);
            }
            if f == Family::TypeI {
                all.extend(pairs::verify_prop2(range));
            }
            if f != Family::TypeIII {
                all.extend(theorem3(f)?);
            }
            all.extend(mq2::verify_results(range));
            all
        }
    })
}

fn run_verify(
    suite: Suite,
    target: Option<Target>,
    range: i64,
    format: Format,
    out: &mut impl Write,
    err: &mut impl Write,
) -> i32 {
    let mut reports = match suite_reports(suite, target, range) {
        Ok(r) => r,
        Err(e) => return fail(err, &e),
    };
    pairs::sort_reports(&mut reports);
    write_reports(&reports, format, out)
}

/// Writes sorted reports and returns the exit code they imply.
pub fn write_reports(reports: &[RelationReport], format: Format, out: &mut impl Write) -> i32 {
    let relations: usize = reports.iter().map(|r| r.outcomes.len()).sum();
    let expected = reports
        .iter()
        .flat_map(|r| &r.outcomes)
        .filter(|o| o.expected_failure)
        .count();
    let unexpected = reports.iter().flat_map(|r| r.unexpected()).count();
    match format {
        Format::Json => {
            for r in reports {
                for line in r.json_lines() {
                    let _ = writeln!(out, "{line}");
                }
            }
        }
        Format::Text => {
            for r in reports {
                let status = if r.passes() { "ok" } else { "FAILED" };
                let _ = writeln!(
                    out,
                    "{} {} {} {status} ({} relations)",
                    r.suite,
                    r.family,
                    r.params,
                    r.outcomes.len()
                );
                for o in r.unexpected() {
                    let _ = writeln!(out, "  {} {}: {} | {}", o.status(), o.relation, o.lhs, o.rhs);
                }
            }
            let _ = writeln!(
                out,
                "{} reports, {relations} relations, {unexpected} unexpected, {expected} expected failures",
                reports.len()
            );
        }
    }
    if unexpected == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn run_modular(target: Target, src: &str, format: Format, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let Target::Pair(family) = target else {
        return fail(err, &"the modular action is defined on pairs of type I or II");
    };
    let word: ModularWord = match src.parse() {
        Ok(w) => w,
        Err(e) => return fail(err, &e),
    };
    let pair = pairs::QPair::generators(family);
    let image = match modular::apply_word(&word, &pair) {
        Ok(p) => p,
        Err(e) => return fail(err, &e),
    };
    let report = match modular::check_correspondence(&word, &pair) {
        Ok(r) => r,
        Err(e) => return fail(err, &e),
    };
    let m = modular::word_to_matrix(&word);
    let holds = report.holds();
    let _ = match format {
        Format::Text => writeln!(
            out,
            "word: {word}\nmatrix: {m}\nV1 = {}\nV2 = {}\ncorrespondence: {}",
            image.u1,
            image.u2,
            if holds { "holds" } else { "violated" }
        ),
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "command": "modular",
                "type": family.label(),
                "word": word.to_string(),
                "matrix": [[m.a, m.b], [m.c, m.d]],
                "v1": image.u1.to_string(),
                "v2": image.u2.to_string(),
                "status": if holds { "holds" } else { "violated" },
            })
        ),
    };
    if holds {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}
