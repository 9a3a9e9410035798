use std::fs;
use std::io::Write;
use std::path::Path;

use polyzero::complexroots::{all_roots_seeded, ComplexRootSet, DEFAULT_MAX_ITER, DEFAULT_RESIDUAL_TOL};
use polyzero::families::g_sequence;
use polyzero::rational::{self, Rational};
use polyzero::theorems::{run_claims, Status, SweepConfig, VerificationReport, VerifyOptions};
use polyzero::{ExactPoly, FamilySpec, RootIsolator, RootRecord};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::*;

pub fn run(cli: Cli) -> Result<Exit, CliError> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Roots(a) => roots(a),
        Command::Verify(a) => verify(a),
        Command::Report(a) => report(a),
    }
}

fn set_jobs(jobs: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = jobs {
        if n == 0 {
            return Err(CliError::invalid("--jobs must be at least 1"));
        }
        // a second initialisation only happens in-process; keep the first
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn write_out(out: Option<&Path>, body: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError { exit: Exit::Fail, message: e.to_string() })?;
    String::from_utf8(bytes).map_err(|e| CliError { exit: Exit::Fail, message: e.to_string() })
}

fn member_config(command: &'static str, m: &Members, numerics: Option<&Numerics>, format: Format) -> Result<RunConfig, CliError> {
    let range = k_range(m)?;
    let (tol, seed) = match numerics {
        Some(n) => (parse_tol(&n.tol)?, resolve_seed(n.seed)?),
        None => (polyzero::realroots::default_tolerance(), 0),
    };
    Ok(RunConfig {
        command,
        family: m.family,
        k_range: range.map(|r| (*r.start(), *r.end())),
        l: default_l(m.family, m.l),
        tol,
        seed,
        format,
    })
}

#[derive(Serialize)]
struct GenEntry {
    spec: FamilySpec,
    degree: u32,
    display: String,
    #[serde(flatten)]
    poly: ExactPoly,
}

#[derive(Serialize)]
struct CoeffRow {
    family: String,
    k: u32,
    l: i32,
    power: usize,
    coeff: String,
}

fn gen(a: GenArgs) -> Result<Exit, CliError> {
    let cfg = member_config("gen", &a.members, None, a.output.format)?;
    if a.sequence {
        let Some((k, k2)) = cfg.k_range else {
            return Err(CliError::invalid("--sequence needs --k"));
        };
        if k != k2 {
            return Err(CliError::invalid("--sequence takes a single --k"));
        }
        let seq = g_sequence(k, a.count)?;
        write_out(a.output.out.as_deref(), &seq.to_lines())?;
        return Ok(Exit::Pass);
    }
    let specs = cfg.specs()?;
    let body = match cfg.format {
        Format::Json => {
            let entries = specs
                .iter()
                .map(|s| {
                    let poly = s.build()?;
                    Ok(GenEntry { spec: *s, degree: s.degree(), display: poly.to_string(), poly })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            to_json(&entries)?
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for s in &specs {
                let poly = s.build()?;
                for (power, c) in poly.coeffs().iter().enumerate() {
                    rows.push(CoeffRow {
                        family: s.family.to_string(),
                        k: s.k,
                        l: s.l,
                        power,
                        coeff: rational::to_fraction_string(c),
                    });
                }
            }
            to_csv(&rows)?
        }
    };
    write_out(a.output.out.as_deref(), &body)?;
    Ok(Exit::Pass)
}

#[derive(Serialize)]
struct RootRow {
    family: String,
    k: u32,
    l: i32,
    lo: String,
    hi: String,
    approx: String,
    tol: String,
}

#[derive(Serialize)]
struct ComplexEntry {
    spec: FamilySpec,
    #[serde(flatten)]
    set: ComplexRootSet,
}

#[derive(Serialize)]
struct ComplexRow {
    family: String,
    k: u32,
    l: i32,
    re: f64,
    im: f64,
    modulus: f64,
    residual: f64,
}

#[derive(Serialize)]
struct PlotRow {
    family: String,
    k: u32,
    l: i32,
    kind: &'static str,
    root: String,
    limit: i32,
    distance: String,
}

fn real_roots(spec: &FamilySpec, tol: &Rational) -> Result<Vec<RootRecord>, CliError> {
    let p = spec.build()?;
    Ok(RootIsolator::new(&p)?.all_roots(tol, Some(*spec))?)
}

fn roots(a: RootsArgs) -> Result<Exit, CliError> {
    let cfg = member_config("roots", &a.members, Some(&a.numerics), a.output.format)?;
    let specs = cfg.specs()?;
    set_jobs(a.numerics.jobs)?;
    let out = a.output.out.as_deref();

    if a.complex {
        let sets = specs
            .par_iter()
            .map(|s| Ok((*s, all_roots_seeded(&s.build()?, DEFAULT_MAX_ITER, DEFAULT_RESIDUAL_TOL, cfg.seed)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let body = match cfg.format {
            Format::Json => to_json(&sets.iter().map(|(spec, set)| ComplexEntry { spec: *spec, set: set.clone() }).collect::<Vec<_>>())?,
            Format::Csv => {
                let rows: Vec<ComplexRow> = sets
                    .iter()
                    .flat_map(|(s, set)| {
                        set.roots.iter().zip(&set.residuals).map(move |(z, r)| ComplexRow {
                            family: s.family.to_string(),
                            k: s.k,
                            l: s.l,
                            re: z.re,
                            im: z.im,
                            modulus: z.norm(),
                            residual: *r,
                        })
                    })
                    .collect();
                to_csv(&rows)?
            }
        };
        write_out(out, &body)?;
        let stuck: Vec<String> = sets.iter().filter(|(_, set)| !set.converged).map(|(s, _)| s.to_string()).collect();
        if !stuck.is_empty() {
            return Err(CliError { exit: Exit::Partial, message: format!("no convergence for {}", stuck.join(", ")) });
        }
        return Ok(Exit::Pass);
    }

    let records = specs
        .par_iter()
        .map(|s| real_roots(s, &cfg.tol))
        .collect::<Result<Vec<_>, CliError>>()?;
    let records: Vec<RootRecord> = records.into_iter().flatten().collect();

    let body = if a.plot {
        let rows: Vec<PlotRow> = records
            .iter()
            .map(|r| {
                let spec = r.spec.expect("records carry their spec");
                let positive = r.approx > rational::int(0);
                let limit = if positive { 2 } else { -1 };
                let distance = (r.approx_f64() - limit as f64).abs();
                PlotRow {
                    family: spec.family.to_string(),
                    k: spec.k,
                    l: spec.l,
                    kind: if positive { "positive" } else { "negative" },
                    root: r.approx_decimal(),
                    limit,
                    distance: format!("{distance:.6e}"),
                }
            })
            .collect();
        to_csv(&rows)?
    } else {
        match cfg.format {
            Format::Json => to_json(&records)?,
            Format::Csv => {
                let rows: Vec<RootRow> = records
                    .iter()
                    .map(|r| {
                        let spec = r.spec.expect("records carry their spec");
                        RootRow {
                            family: spec.family.to_string(),
                            k: spec.k,
                            l: spec.l,
                            lo: rational::to_fraction_string(&r.interval.lo),
                            hi: rational::to_fraction_string(&r.interval.hi),
                            approx: r.approx_decimal(),
                            tol: rational::to_fraction_string(&r.tol),
                        }
                    })
                    .collect();
                to_csv(&rows)?
            }
        }
    };
    write_out(out, &body)?;
    Ok(Exit::Pass)
}

#[derive(Serialize, Deserialize)]
struct ManifestConfig {
    claims: Vec<String>,
    sweep: serde_json::Value,
    tol: String,
    seed: u64,
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    tool: String,
    version: String,
    config: serde_json::Value,
    status: Status,
    reports: Vec<serde_json::Value>,
}

#[derive(Serialize)]
struct SummaryRow {
    claim_id: String,
    params: String,
    status: Status,
    discovered_threshold: Option<i64>,
    paper_anchor: String,
}

fn flatten(r: &VerificationReport, rows: &mut Vec<SummaryRow>) {
    rows.push(SummaryRow {
        claim_id: r.claim_id.clone(),
        params: r.params.to_string(),
        status: r.status,
        discovered_threshold: r.discovered_threshold,
        paper_anchor: r.paper_anchor.clone(),
    });
    for i in &r.items {
        flatten(i, rows);
    }
}

fn exit_for(status: Status) -> Exit {
    match status {
        Status::Pass => Exit::Pass,
        Status::Partial => Exit::Partial,
        Status::Fail => Exit::Fail,
    }
}

fn verify(a: VerifyArgs) -> Result<Exit, CliError> {
    let tol = parse_tol(&a.numerics.tol)?;
    let seed = resolve_seed(a.numerics.seed)?;
    set_jobs(a.numerics.jobs)?;
    let mut sweep = SweepConfig::default();
    if let Some(k) = a.kmax {
        sweep.table_kmax = k;
        sweep.derivative_jmax = k;
        sweep.first_integral_kmax = k;
        sweep.bound_kmax = k;
        sweep.general_kmax = k;
    }
    if let Some(l) = a.l {
        if l < 0 {
            return Err(CliError::invalid("--l must be >= 0 for verification sweeps"));
        }
        sweep.derivative_orders = if l >= 1 { vec![l as u32] } else { Vec::new() };
        sweep.general_orders = vec![l];
    }
    let claims: Vec<String> = a.claims.iter().map(|c| c.trim().to_string()).filter(|c| !c.is_empty()).collect();
    if claims.is_empty() {
        return Err(CliError::invalid("--claims needs at least one group or \"all\""));
    }
    let opts = VerifyOptions { tol: tol.clone(), seed };
    let reports = run_claims(&claims, &sweep, &opts)?;
    let status = reports.iter().fold(Status::Pass, |s, r| s.and(r.status));

    let body = match a.output.format {
        Format::Json => {
            let manifest = Manifest {
                tool: "polyzero".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                config: serde_json::to_value(ManifestConfig {
                    claims,
                    sweep: serde_json::to_value(&sweep)?,
                    tol: rational::to_fraction_string(&tol),
                    seed,
                })?,
                status,
                reports: reports.iter().map(serde_json::to_value).collect::<Result<_, _>>()?,
            };
            to_json(&manifest)?
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for r in &reports {
                flatten(r, &mut rows);
            }
            to_csv(&rows)?
        }
    };
    write_out(a.output.out.as_deref(), &body)?;
    Ok(exit_for(status))
}

fn report(a: ReportArgs) -> Result<Exit, CliError> {
    let mut configs = Vec::new();
    let mut reports = Vec::new();
    let mut status = Status::Pass;
    for path in &a.inputs {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
        let m: Manifest = serde_json::from_str(&text)
            .map_err(|e| CliError::invalid(format!("{} is not a verify manifest: {e}", path.display())))?;
        status = status.and(m.status);
        configs.push(m.config);
        reports.extend(m.reports);
    }
    let merged = Manifest {
        tool: "polyzero".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: serde_json::json!({ "merged": configs }),
        status,
        reports,
    };
    write_out(a.out.as_deref(), &to_json(&merged)?)?;
    Ok(exit_for(status))
}
