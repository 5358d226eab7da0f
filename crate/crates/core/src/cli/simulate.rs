use std::fmt::Write as _;

use serde::Serialize;

use super::args::{Cli, Format, SimulateArgs};
use super::manifest::{envelope, RunManifest};
use super::{Outcome, UsageError, EXIT_BLOW_UP, EXIT_DRIFT, EXIT_OK};
use crate::simulator::{
    config_pairs, integrate, make_state, soliton_exact, variational_residual, InvariantSeries, Outcome as SimOutcome,
    Profile, RunConfig, VariationalReport,
};

#[derive(Serialize)]
struct Summary {
    outcome: SimOutcome,
    steps: usize,
    final_time: f64,
    p_drift: f64,
    h_drift: f64,
    max_abs_i: f64,
    drift_budget: f64,
    within_budget: bool,
    shape_error: Option<f64>,
    variational: VariationalReport,
    /// Whether `u_t = +D(dH/du)` rather than `-D(dH/du)`.
    variational_sign_is_plus: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a RunConfig,
    warnings: &'a [String],
    summary: &'a Summary,
    series: &'a InvariantSeries,
}

pub(crate) fn run(args: &SimulateArgs, cli: &Cli, argv: &[String]) -> Result<Outcome, UsageError> {
    let mut manifest = RunManifest::new("simulate", argv);
    let mut pairs = vec![];
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        manifest.hash_input("config", text.as_bytes());
        pairs = config_pairs(&text)?;
    }
    for item in &args.set {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| UsageError(format!("expected KEY=VALUE, got `{item}`")))?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    if let Some(seed) = cli.seed {
        pairs.push(("seed".into(), seed.to_string()));
    }
    manifest.hash_input("overrides", args.set.join("\n").as_bytes());
    let rc = RunConfig::from_pairs(pairs)?;
    let init = make_state(&rc.profile, rc.sim.n, rc.sim.length)?;
    let mut warnings = rc.sim.warnings();
    warnings.extend(init.warnings.iter().cloned());

    let variational = variational_residual(&init.state, rc.sim.beta, rc.sim.gamma, rc.sim.dealias)?;
    let traj = integrate(&init.state, &rc.sim, rc.snapshot_every)?;
    let shape_error = match rc.profile {
        Profile::KdvSoliton { beta, k, center } if rc.sim.gamma == 0.0 && traj.outcome == SimOutcome::Completed => {
            let exact = soliton_exact(beta, k, center, init.removed_mean, rc.sim.n, rc.sim.length, traj.final_state.t)?;
            Some(traj.final_state.max_diff(&exact))
        }
        _ => None,
    };
    let (p_drift, h_drift) = (traj.series.p_drift(), traj.series.h_drift());
    let within_budget = p_drift.max(h_drift) <= rc.max_drift;
    let summary = Summary {
        outcome: traj.outcome.clone(),
        steps: traj.steps_taken,
        final_time: traj.final_state.t,
        p_drift,
        h_drift,
        max_abs_i: traj.series.max_abs_i(),
        drift_budget: rc.max_drift,
        within_budget,
        shape_error,
        variational,
        variational_sign_is_plus: variational.sign == 1,
    };
    let code = match traj.outcome {
        SimOutcome::BlowUp { .. } => EXIT_BLOW_UP,
        SimOutcome::Completed if !within_budget => EXIT_DRIFT,
        SimOutcome::Completed => EXIT_OK,
    };

    if let Some(path) = &args.snapshot {
        let mut bytes = vec![];
        let states = if traj.snapshots.is_empty() { std::slice::from_ref(&traj.final_state) } else { &traj.snapshots[..] };
        for s in states {
            bytes.extend(s.to_bytes());
        }
        std::fs::write(path, bytes).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    }

    let format = cli.format.unwrap_or(Format::Csv);
    let mut notes: Vec<String> = warnings.iter().map(|w| format!("warning: {w}")).collect();
    if format != Format::Text {
        notes.extend(summary_lines(&summary));
    }
    let body = match format {
        Format::Csv => traj.series.to_csv(),
        Format::Json => envelope(&manifest, &Report { config: &rc, warnings: &warnings, summary: &summary, series: &traj.series }),
        Format::Text => {
            let mut s = String::new();
            for line in summary_lines(&summary) {
                let _ = writeln!(s, "{line}");
            }
            s
        }
    };
    Ok(Outcome { body: body.into_bytes(), notes, code })
}

fn summary_lines(s: &Summary) -> Vec<String> {
    let mut lines = vec![];
    match s.outcome {
        SimOutcome::Completed => lines.push(format!("completed {} steps to t = {}", s.steps, s.final_time)),
        SimOutcome::BlowUp { last_valid_time } => lines.push(format!("blow-up; last valid time {last_valid_time}")),
    }
    lines.push(format!("P drift {:.3e}, H drift {:.3e}, max |I| {:.3e}", s.p_drift, s.h_drift, s.max_abs_i));
    lines.push(format!(
        "drift budget {:.1e}: {}",
        s.drift_budget,
        if s.within_budget { "within" } else { "EXCEEDED" }
    ));
    if let Some(e) = s.shape_error {
        lines.push(format!("shape error {e:.3e}"));
    }
    lines.push(format!(
        "variational identity: u_t = {}D(dH/du), residual {:.3e}{}",
        if s.variational.sign < 0 { "-" } else { "+" },
        s.variational.residual,
        if s.variational_sign_is_plus { "" } else { " (sign flipped relative to the +D(dH/du) convention)" }
    ));
    lines
}
