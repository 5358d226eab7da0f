use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::args::{Cli, Format, WavesArgs};
use super::manifest::{envelope, RunManifest};
use super::{Outcome, UsageError, EXIT_OK};
use crate::waves::{
    characteristic_roots, classify, classify_exact, existence_flags, existence_flags_pq, scan, to_pq,
    to_pq_exact, ExistenceFlags, RegionClass, ScanRow, ScanSpec, Spectrum, WaveParams,
};

#[derive(Serialize)]
struct PointReport {
    params: Option<WaveParams>,
    p: f64,
    q: f64,
    exact: Option<(String, String)>,
    #[serde(flatten)]
    class: RegionClass,
    spectrum: Spectrum,
    max_residual: f64,
    existence: ExistenceFlags,
}

#[derive(Serialize)]
struct ScanReport<'a> {
    spec: ScanSpec,
    rows: &'a [ScanRow],
}

fn number(s: &str) -> Result<f64, UsageError> {
    s.trim().parse().map_err(|_| UsageError(format!("not a number: `{s}`")))
}

fn rational(s: &str) -> Result<BigRational, UsageError> {
    let s = s.trim();
    if let Ok(r) = s.parse::<BigRational>() {
        return Ok(r);
    }
    let x = number(s)?;
    BigRational::from_float(x).ok_or_else(|| UsageError(format!("not a finite number: `{s}`")))
}

fn range(s: &str) -> Result<(f64, f64), UsageError> {
    match s.split_once(':') {
        Some((a, b)) => Ok((number(a)?, number(b)?)),
        None => Err(UsageError(format!("expected lo:hi, got `{s}`"))),
    }
}

fn grid(s: &str) -> Result<(usize, usize), UsageError> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| UsageError(format!("expected NPxNQ, got `{s}`")))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| UsageError(format!("bad grid `{s}`")));
    Ok((parse(a)?, parse(b)?))
}

pub(crate) fn run(args: &WavesArgs, cli: &Cli, argv: &[String]) -> Result<Outcome, UsageError> {
    let physical = args.beta.is_some() || args.gamma.is_some() || args.c.is_some();
    let plane = args.p.is_some() || args.q.is_some();
    if physical && plane {
        return Err(UsageError("give either --beta/--gamma/--c or --p/--q, not both".into()));
    }
    let mut manifest = RunManifest::new("waves", argv);
    manifest.hash_input("args", argv.join(" ").as_bytes());

    if args.scan {
        if physical {
            return Err(UsageError("--scan takes --p and --q ranges".into()));
        }
        let (Some(p), Some(q)) = (&args.p, &args.q) else {
            return Err(UsageError("--scan needs --p lo:hi and --q lo:hi".into()));
        };
        let spec = ScanSpec { p_range: range(p)?, q_range: range(q)?, grid: grid(&args.grid)?, tol: args.tol };
        let rows = scan(&spec)?;
        let body = match cli.format.unwrap_or(Format::Csv) {
            Format::Csv | Format::Text => {
                let mut s = String::from("p,q,label,eigen_structure,existence_flag\n");
                for r in &rows {
                    let _ = writeln!(s, "{},{},{},\"{}\",{}", r.p, r.q, r.label, r.eigen_structure, r.existence_flag);
                }
                s
            }
            Format::Json => envelope(&manifest, &ScanReport { spec, rows: &rows }),
        };
        return Ok(Outcome { body: body.into_bytes(), notes: vec![], code: EXIT_OK });
    }

    let report = if physical {
        let (Some(b), Some(g), Some(c)) = (&args.beta, &args.gamma, &args.c) else {
            return Err(UsageError("--beta, --gamma and --c are all required".into()));
        };
        let params = WaveParams::new(number(b)?, number(g)?, number(c)?);
        if params.gamma < 0.0 {
            return Err(UsageError("gamma must be nonnegative".into()));
        }
        let (p, q) = to_pq(&params)?;
        let (class, exact) = if args.exact {
            let (pe, qe) = to_pq_exact(&rational(b)?, &rational(g)?, &rational(c)?)?;
            (classify_exact(&pe, &qe), Some((pe.to_string(), qe.to_string())))
        } else {
            (classify(p, q, args.tol)?, None)
        };
        point(Some(params), p, q, class, exact, existence_flags(&params))
    } else {
        let (Some(ps), Some(qs)) = (&args.p, &args.q) else {
            return Err(UsageError("give --p and --q, or --beta, --gamma and --c".into()));
        };
        if args.exact {
            let (pe, qe) = (rational(ps)?, rational(qs)?);
            let (p, q) = (pe.to_f64().unwrap_or(f64::NAN), qe.to_f64().unwrap_or(f64::NAN));
            let class = classify_exact(&pe, &qe);
            point(None, p, q, class, Some((pe.to_string(), qe.to_string())), existence_flags_pq(p, q))
        } else {
            let (p, q) = (number(ps)?, number(qs)?);
            point(None, p, q, classify(p, q, args.tol)?, None, existence_flags_pq(p, q))
        }
    };
    let body = match cli.format.unwrap_or(Format::Json) {
        Format::Json => envelope(&manifest, &report),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "p = {}, q = {}", report.p, report.q);
            let _ = writeln!(s, "{}: {} ({})", report.class.label, report.class.eigen_structure, report.class.fixed_point);
            let _ = writeln!(s, "{}", report.class.annotation);
            let _ = writeln!(s, "existence: {} ({})", report.existence.summary(), report.existence.reason);
            s
        }
        Format::Csv => format!(
            "p,q,label,eigen_structure,existence_flag\n{},{},{},\"{}\",{}\n",
            report.p,
            report.q,
            report.class.label,
            report.class.eigen_structure,
            report.existence.summary()
        ),
    };
    Ok(Outcome { body: body.into_bytes(), notes: vec![], code: EXIT_OK })
}

fn point(
    params: Option<WaveParams>,
    p: f64,
    q: f64,
    class: RegionClass,
    exact: Option<(String, String)>,
    existence: ExistenceFlags,
) -> PointReport {
    let spectrum = characteristic_roots(p, q);
    let max_residual = spectrum.max_residual();
    PointReport { params, p, q, exact, class, spectrum, max_residual, existence }
}
