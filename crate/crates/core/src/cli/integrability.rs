use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;

use super::args::{Cli, Format, IntegrabilityArgs};
use super::manifest::{envelope, RunManifest};
use super::{Outcome, UsageError, EXIT_OBSTRUCTION, EXIT_OK};
use crate::algebra::{RationalFunction, Var};
use crate::equation::{builtin, parse_equation};
use crate::recursion::{verdict, LocalityReport, Verdict, VerdictOptions, NECESSARY_CONDITION_DISCLAIMER};

#[derive(Serialize)]
struct Report<'a> {
    equation: &'a str,
    omega: &'a RationalFunction,
    a: &'a [RationalFunction],
    specialized: Vec<(String, String)>,
    verdict: Verdict,
    result: &'a LocalityReport,
    disclaimer: &'static str,
}

fn equation_text(arg: &str) -> Result<String, UsageError> {
    if let Some(text) = builtin(arg) {
        return Ok(text.into());
    }
    let path = std::path::Path::new(arg);
    if !arg.contains('=') && path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| UsageError(format!("{arg}: {e}")));
    }
    Ok(arg.into())
}

fn parse_rational(s: &str) -> Result<BigRational, UsageError> {
    s.trim().parse().map_err(|_| UsageError(format!("not a rational number: `{s}`")))
}

pub(crate) fn run(args: &IntegrabilityArgs, cli: &Cli, argv: &[String]) -> Result<Outcome, UsageError> {
    let text = equation_text(&args.equation)?;
    let mut eq = parse_equation(&text, args.max_degree)?;
    let mut specialized = vec![];
    for item in &args.specialize {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| UsageError(format!("expected NAME=VALUE, got `{item}`")))?;
        let var = Var::param(name.trim());
        let present = eq.omega.contains_var(|v| *v == var) || eq.a.iter().any(|a| a.contains_var(|v| *v == var));
        if !var.is_parameter() || !present {
            return Err(UsageError(format!("`{}` is not a parameter of the equation", name.trim())));
        }
        eq = eq.specialize(&var, &parse_rational(value)?)?;
        specialized.push((name.trim().to_string(), value.trim().to_string()));
    }
    if args.max_order == 0 || args.depth < 1 {
        return Err(UsageError("max-order and depth must be at least 1".into()));
    }
    let opts = VerdictOptions { max_order: args.max_order, depth: args.depth, exhaustive: args.exhaustive };
    let result = verdict(&eq, opts)?;
    let code = match result.verdict {
        Verdict::NoObstructionUpToDepth => EXIT_OK,
        Verdict::ObstructionFound => EXIT_OBSTRUCTION,
    };
    let report = Report {
        equation: text.trim(),
        omega: &eq.omega,
        a: &eq.a,
        specialized,
        verdict: result.verdict,
        result: &result,
        disclaimer: NECESSARY_CONDITION_DISCLAIMER,
    };
    let body = match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut manifest = RunManifest::new("integrability", argv);
            manifest.hash_input("equation", text.as_bytes());
            envelope(&manifest, &report)
        }
        Format::Text => text_report(&report),
        Format::Csv => return Err(UsageError("integrability supports json or text output".into())),
    };
    Ok(Outcome { body: body.into_bytes(), notes: vec![], code })
}

fn text_report(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "equation: {}", r.equation);
    let _ = writeln!(s, "omega: {}", r.omega);
    for (k, a) in r.a.iter().enumerate() {
        let _ = writeln!(s, "a_{}: {}", k + 1, a);
    }
    for (name, value) in &r.specialized {
        let _ = writeln!(s, "specialized: {name} = {value}");
    }
    for order in &r.result.orders {
        let _ = writeln!(s, "phi_{} = {}", order.m, order.value);
        for c in &order.expansion {
            let mark = if c.is_local { "local" } else { "NONLOCAL" };
            let _ = writeln!(s, "  eta^-{}: {}  [{mark}]", c.n, c.coefficient);
        }
    }
    let _ = writeln!(s, "verdict: {}", r.verdict.as_str());
    if let Some(o) = &r.result.first_obstruction {
        let _ = writeln!(s, "first obstruction: m = {}, n = {}: {}", o.m, o.n, o.coefficient);
    }
    let _ = writeln!(s, "note: {}", r.disclaimer);
    s
}
