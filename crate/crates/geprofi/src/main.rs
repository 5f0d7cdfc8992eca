//! Batch command-line front end: construct configurations, compute
//! invariants, emit and verify certificates, and run the reproduction
//! suites. All input and output is JSON; every document carries
//! format_version 1 and echoes the seed it was produced with.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use geprofi::certify::{
    certify_b2, certify_cone_construction, certify_on_curve, is_lgp, triviality_census,
    verify_certificate, LgpOutcome,
};
use geprofi::constructions::{
    concurrent_lines, example_3_2, grid_extension, hypergrid, liaison_ff, rnc_points_sampled,
    trivial_planes_lines, ConstructionKind, LiaisonOutcome,
};
use geprofi::error::Error;
use geprofi::field::{split_seed, Field, RandomSource};
use geprofi::ideals::{hilbert, weddle_excess, wlp_cokernel};
use geprofi::projgeom::{PointConfig, ProjPoint};
use geprofi::reproduce::{run_suite, Suite};
use geprofi::serial;

#[derive(Parser)]
#[command(
    name = "geprofi",
    about = "Exact-arithmetic toolkit for point configurations in P^4 and their projection certificates",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Master seed; per-step seeds are derived from it
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coordinate range for rational samples
    #[arg(long, default_value_t = 1000)]
    bound: i64,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point configuration with its incidence record
    Construct {
        /// example_3_2 | concurrent_lines | hypergrid | grid_extension |
        /// rnc_points | trivial_planes_lines | liaison_ff
        #[arg(long)]
        kind: String,
        /// Curve degree parameter (hypergrid, trivial_planes_lines)
        #[arg(long)]
        b: Option<usize>,
        /// Surface degree parameter (hypergrid, grid_extension, trivial_planes_lines)
        #[arg(long)]
        d: Option<usize>,
        /// Number of curve points (rnc_points)
        #[arg(long)]
        count: Option<usize>,
        /// Per-line point counts (concurrent_lines), e.g. 2,2,2,2,2
        #[arg(long)]
        distribution: Option<String>,
        /// Field prime (liaison_ff)
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Hilbert function and h-vector of a configuration
    Hvector {
        #[arg(long = "in")]
        input: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Linear-general-position check with a violating witness on failure
    Lgp {
        #[arg(long = "in")]
        input: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Emit a full-intersection certificate
    Certify {
        /// b2 | cone | curve
        #[arg(long)]
        mode: String,
        #[arg(long = "in")]
        input: String,
        /// Surface degree (curve mode)
        #[arg(long)]
        d: Option<usize>,
        /// Certification attempts (in batches of five sampled centers)
        #[arg(long, default_value_t = 5)]
        retries: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Re-verify a certificate document
    Verify {
        #[arg(long = "in")]
        input: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Cone excess at sampled general points
    Weddle {
        #[arg(long = "in")]
        input: String,
        /// Cone degree
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Multiplication-map cokernel dimensions at sampled points
    Wlp {
        #[arg(long = "in")]
        input: String,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Collinear/coplanar census and hypergrid search for a (b, d) claim
    Census {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a reproduction suite
    Reproduce {
        /// paper_all | theorem_a | theorem_b | weddle_wlp
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Reads `--in`: inline JSON when the value starts with '{', a path
/// otherwise. Parse failures carry position diagnostics.
fn read_input(input: &str) -> Result<Value, Error> {
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        fs::read_to_string(input)
            .map_err(|e| Error::Document(format!("cannot read {input}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| {
        Error::Document(format!(
            "malformed JSON at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

/// Accepts either a bare configuration document or a construct output with a
/// "config" member.
fn config_from_doc(doc: &Value) -> Result<PointConfig, Error> {
    if let Some(inner) = doc.get("config") {
        serial::config_from_json(inner)
    } else {
        serial::config_from_json(doc)
    }
}

fn emit(common: &CommonOpts, doc: &Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(doc).expect("serializable");
    match &common.out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Error::Document(format!("cannot write {path}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn envelope(
    command: &str,
    common: &CommonOpts,
    field: &Field,
    started: Instant,
) -> Map<String, Value> {
    let mut doc = Map::new();
    doc.insert("format_version".into(), json!(1));
    doc.insert("command".into(), json!(command));
    doc.insert("seed".into(), json!(common.seed));
    doc.insert("field".into(), serial::field_to_json(field));
    doc.insert(
        "elapsed_ms".into(),
        json!(started.elapsed().as_millis() as u64),
    );
    doc
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Construct {
            kind,
            b,
            d,
            count,
            distribution,
            p,
            common,
        } => construct(&kind, b, d, count, distribution.as_deref(), p, &common),
        Command::Hvector { input, common } => {
            let started = Instant::now();
            let cfg = config_from_doc(&read_input(&input)?)?;
            let profile = hilbert(&cfg)?;
            let mut doc = envelope("hvector", &common, &cfg.field(), started);
            doc.insert("count".into(), json!(cfg.len()));
            doc.insert("hilbert".into(), serial::hilbert_to_json(&profile));
            emit(&common, &Value::Object(doc))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lgp { input, common } => {
            let started = Instant::now();
            let cfg = config_from_doc(&read_input(&input)?)?;
            let outcome = is_lgp(&cfg);
            let mut doc = envelope("lgp", &common, &cfg.field(), started);
            let code = match &outcome {
                LgpOutcome::Lgp => {
                    doc.insert("lgp".into(), json!(true));
                    ExitCode::SUCCESS
                }
                LgpOutcome::Violation(w) => {
                    doc.insert("lgp".into(), json!(false));
                    doc.insert("violating_subset".into(), json!(w));
                    ExitCode::from(1)
                }
            };
            emit(&common, &Value::Object(doc))?;
            Ok(code)
        }
        Command::Certify {
            mode,
            input,
            d,
            retries,
            common,
        } => certify(&mode, &input, d, retries, &common),
        Command::Verify { input, common } => {
            let started = Instant::now();
            let doc_in = read_input(&input)?;
            let cert_json = doc_in.get("certificate").unwrap_or(&doc_in);
            let cert = serial::certificate_from_json(cert_json)?;
            let outcome = verify_certificate(&cert);
            let mut doc = envelope("verify", &common, &cert.image.field(), started);
            doc.insert("verified".into(), json!(outcome.ok));
            doc.insert(
                "transcript".into(),
                Value::Array(
                    outcome
                        .transcript
                        .iter()
                        .map(|e| {
                            json!({"check": e.check, "status": if e.status {"pass"} else {"fail"}})
                        })
                        .collect(),
                ),
            );
            if let Some(first) = &outcome.first_failure {
                doc.insert("first_failure".into(), json!(first));
            }
            emit(&common, &Value::Object(doc))?;
            Ok(if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Weddle {
            input,
            d,
            samples,
            common,
        } => {
            let started = Instant::now();
            let cfg = config_from_doc(&read_input(&input)?)?;
            let mut rs = RandomSource::with_bound(split_seed(common.seed, "weddle"), common.bound);
            let field = cfg.field();
            let mut excesses = Vec::with_capacity(samples);
            for _ in 0..samples {
                let p = loop {
                    if let Ok(p) = ProjPoint::new(rs.sample(&field, cfg.ambient_dim() + 1)?) {
                        if !cfg.contains(&p) {
                            break p;
                        }
                    }
                };
                excesses.push(weddle_excess(&cfg, &p, d)?);
            }
            let mut doc = envelope("weddle", &common, &field, started);
            doc.insert("degree".into(), json!(d));
            doc.insert("excesses".into(), json!(excesses));
            emit(&common, &Value::Object(doc))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Wlp {
            input,
            samples,
            common,
        } => {
            let started = Instant::now();
            let cfg = config_from_doc(&read_input(&input)?)?;
            let mut rs = RandomSource::with_bound(split_seed(common.seed, "wlp"), common.bound);
            let field = cfg.field();
            let mut dims = Vec::with_capacity(samples);
            for _ in 0..samples {
                let p = loop {
                    if let Ok(p) = ProjPoint::new(rs.sample(&field, cfg.ambient_dim() + 1)?) {
                        break p;
                    }
                };
                dims.push(wlp_cokernel(&cfg, &p)?);
            }
            let mut doc = envelope("wlp", &common, &field, started);
            doc.insert("cokernel_dims".into(), json!(dims));
            emit(&common, &Value::Object(doc))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Census {
            input,
            b,
            d,
            common,
        } => {
            let started = Instant::now();
            let cfg = config_from_doc(&read_input(&input)?)?;
            let report = triviality_census(&cfg, b, d)?;
            let mut doc = envelope("census", &common, &cfg.field(), started);
            doc.insert("b".into(), json!(b));
            doc.insert("d".into(), json!(d));
            doc.insert("census".into(), serial::census_to_json(&report));
            emit(&common, &Value::Object(doc))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce { suite, common } => {
            let started = Instant::now();
            let suite = Suite::from_name(&suite)
                .ok_or_else(|| Error::Document(format!("unknown suite `{suite}`")))?;
            let report = run_suite(suite, common.seed);
            let all_pass = report.all_pass();
            let mut doc = envelope("reproduce", &common, &Field::Q, started);
            doc.insert("suite".into(), json!(report.suite));
            doc.insert("master_seed".into(), json!(report.master_seed));
            doc.insert("all_pass".into(), json!(all_pass));
            doc.insert(
                "rows".into(),
                Value::Array(
                    report
                        .rows
                        .iter()
                        .map(|r| {
                            json!({
                                "name": r.name,
                                "status": if r.pass { "pass" } else { "fail" },
                                "seed": r.seed,
                                "elapsed_ms": r.elapsed_ms as u64,
                                "details": r.details,
                            })
                        })
                        .collect(),
                ),
            );
            emit(&common, &Value::Object(doc))?;
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn parse_distribution(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Document(format!("bad distribution entry `{x}`")))
        })
        .collect()
}

fn construct(
    kind: &str,
    b: Option<usize>,
    d: Option<usize>,
    count: Option<usize>,
    distribution: Option<&str>,
    p: Option<u64>,
    common: &CommonOpts,
) -> Result<ExitCode, Error> {
    let started = Instant::now();
    let kind = ConstructionKind::from_name(kind)
        .ok_or_else(|| Error::Document(format!("unknown construction `{kind}`")))?;
    let mut rs = RandomSource::with_bound(split_seed(common.seed, kind.name()), common.bound);
    let need = |opt: Option<usize>, name: &str| {
        opt.ok_or_else(|| Error::Precondition(format!("{} requires --{name}", kind.name())))
    };
    let mut curve_json = None;
    let (cfg, record) = match kind {
        ConstructionKind::Example32 => example_3_2(),
        ConstructionKind::ConcurrentLines => {
            let dist = parse_distribution(distribution.unwrap_or("2,2,2,2,2"))?;
            concurrent_lines(dist.len(), &dist, &mut rs)?
        }
        ConstructionKind::Hypergrid => hypergrid(need(b, "b")?, need(d, "d")?, &mut rs)?,
        ConstructionKind::GridExtension => grid_extension(need(d, "d")?, &mut rs)?,
        ConstructionKind::RncPoints => {
            let (cfg, record, curve) = rnc_points_sampled(need(count, "count")?, &mut rs)?;
            curve_json = Some(serial::curve_to_json(&curve));
            (cfg, record)
        }
        ConstructionKind::TrivialPlanesLines => {
            trivial_planes_lines(need(b, "b")?, need(d, "d")?, &mut rs)?
        }
        ConstructionKind::LiaisonFf => {
            let prime = p.unwrap_or(11);
            match liaison_ff(prime, &mut rs)? {
                LiaisonOutcome::Found { cfg, record } => (cfg, record),
                LiaisonOutcome::Incomplete { attempts } => {
                    let mut doc = envelope("construct", common, &Field::Fp(prime), started);
                    doc.insert("kind".into(), json!(kind.name()));
                    doc.insert("status".into(), json!("oracle_incomplete"));
                    doc.insert("attempts".into(), json!(attempts));
                    emit(common, &Value::Object(doc))?;
                    return Ok(ExitCode::from(1));
                }
            }
        }
    };
    let profile = hilbert(&cfg)?;
    let mut doc = envelope("construct", common, &cfg.field(), started);
    doc.insert("kind".into(), json!(kind.name()));
    doc.insert("config".into(), serial::config_to_json(&cfg));
    doc.insert("record".into(), serial::record_to_json(&record));
    if let Some(cj) = curve_json {
        doc.insert("curve".into(), cj);
    }
    doc.insert("h_vector".into(), json!(profile.h_vector));
    emit(common, &Value::Object(doc))?;
    Ok(ExitCode::SUCCESS)
}

fn certify(
    mode: &str,
    input: &str,
    d: Option<usize>,
    retries: usize,
    common: &CommonOpts,
) -> Result<ExitCode, Error> {
    let started = Instant::now();
    let doc_in = read_input(input)?;
    let cfg = config_from_doc(&doc_in)?;
    let field = cfg.field();
    let rounds = retries.div_ceil(5).max(1);
    let mut found = None;
    for round in 0..rounds {
        let mut rs = RandomSource::with_bound(
            split_seed(common.seed, &format!("certify/{mode}/{round}")),
            common.bound,
        );
        let attempt = match mode {
            "b2" => certify_b2(&cfg, &mut rs)?,
            "cone" => {
                let record_json = doc_in.get("record").ok_or_else(|| {
                    Error::Precondition("cone mode needs a construct document with a record".into())
                })?;
                let record = serial::record_from_json(record_json, &field)?;
                certify_cone_construction(&cfg, &record, &mut rs)?
            }
            "curve" => {
                let record_json = doc_in.get("record").ok_or_else(|| {
                    Error::Precondition(
                        "curve mode needs a construct document with a record".into(),
                    )
                })?;
                let record = serial::record_from_json(record_json, &field)?;
                let Some((curve, params)) = record.curve else {
                    return Err(Error::Precondition("record carries no curve".into()));
                };
                let d = d.ok_or_else(|| Error::Precondition("curve mode requires --d".into()))?;
                certify_on_curve(&curve, &params, d, &mut rs)?
            }
            other => return Err(Error::Document(format!("unknown mode `{other}`"))),
        };
        if attempt.is_some() {
            found = attempt;
            break;
        }
    }
    let mut doc = envelope("certify", common, &field, started);
    doc.insert("mode".into(), json!(mode));
    match found {
        Some(cert) => {
            doc.insert("found".into(), json!(true));
            doc.insert("b".into(), json!(cert.b));
            doc.insert("d".into(), json!(cert.d));
            doc.insert("certificate".into(), serial::certificate_to_json(&cert));
            emit(common, &Value::Object(doc))?;
            Ok(ExitCode::SUCCESS)
        }
        None => {
            doc.insert("found".into(), json!(false));
            doc.insert(
                "note".into(),
                json!("no certificate found; this is a sampling result, not a proof of absence"),
            );
            emit(common, &Value::Object(doc))?;
            Ok(ExitCode::from(1))
        }
    }
}
