//! Batch reproduction suites: fixed lists of construction / certification /
//! verification rows, reproducible end-to-end from a single master seed.
//!
//! Each row derives its own seed from the master seed and the row name
//! through [`split_seed`], so reports are deterministic and rows are
//! independent of each other's sampling.

use std::time::Instant;

use crate::certify::{
    certificate_oracle_inputs, certify_b2, certify_cone_construction, certify_on_curve, is_lgp,
    no_twisted_cubic_check, triviality_census, verify_certificate, GeprofiCertificate,
    TrivialityVerdict,
};
use crate::constructions::{
    concurrent_lines, example_3_2, example_3_2_cone, grid_extension, hypergrid, liaison_ff,
    rnc_points, rnc_points_sampled, trivial_planes_lines, LiaisonOutcome,
};
use crate::error::{Error, Result};
use crate::field::{is_prime_u64, split_seed, Field, FieldElement, RandomSource};
use crate::ideals::{
    castelnuovo_flag, cone_determinant_on_line, eval_matrix, hilbert, ideal_slice, singular_slice,
    weddle_excess, wlp_cokernel, CastelnuovoFlag,
};
use crate::oracle;
use crate::projgeom::{common_point, project, span, FlatMeet, PointConfig, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    PaperAll,
    TheoremA,
    TheoremB,
    WeddleWlp,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::PaperAll => "paper_all",
            Suite::TheoremA => "theorem_a",
            Suite::TheoremB => "theorem_b",
            Suite::WeddleWlp => "weddle_wlp",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        [
            Suite::PaperAll,
            Suite::TheoremA,
            Suite::TheoremB,
            Suite::WeddleWlp,
        ]
        .into_iter()
        .find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteRow {
    pub name: String,
    pub pass: bool,
    pub seed: u64,
    pub elapsed_ms: u128,
    pub details: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub master_seed: u64,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Seeds (at sampling bound 2) where the concurrent-lines construction hits
/// each branch of its h-vector dichotomy; found by seed search and pinned
/// for reproducibility.
pub const CONCURRENT_BRANCH_SEEDS: (u64, u64) = concurrent_branch_seeds();

const fn concurrent_branch_seeds() -> (u64, u64) {
    // (generic branch, quadric-section branch); see the branch row below,
    // which re-verifies both h-vectors rather than trusting these values
    (0, BRANCH_1441_SEED)
}

const BRANCH_1441_SEED: u64 = 47;

fn row<F>(rows: &mut Vec<SuiteRow>, master: u64, name: &str, body: F)
where
    F: FnOnce(&mut RandomSource) -> Result<String>,
{
    let seed = split_seed(master, name);
    let mut rs = RandomSource::new(seed);
    let start = Instant::now();
    let outcome = body(&mut rs);
    let elapsed_ms = start.elapsed().as_millis();
    match outcome {
        Ok(details) => rows.push(SuiteRow {
            name: name.into(),
            pass: true,
            seed,
            elapsed_ms,
            details,
        }),
        Err(e) => rows.push(SuiteRow {
            name: name.into(),
            pass: false,
            seed,
            elapsed_ms,
            details: e.to_string(),
        }),
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// Samples a configuration of n random points in P^4, retrying until it is
/// in linear general position.
pub fn sample_lgp_points(n: usize, rs: &mut RandomSource) -> Result<PointConfig> {
    let field = Field::Q;
    for _ in 0..32 {
        let pts: Vec<ProjPoint> = (0..n)
            .map(|_| loop {
                if let Ok(p) = ProjPoint::new(rs.sample(&field, 5).unwrap()) {
                    break p;
                }
            })
            .collect();
        if let Ok(cfg) = PointConfig::new(pts) {
            if is_lgp(&cfg).is_lgp() {
                return Ok(cfg);
            }
        }
    }
    Err(Error::Genericity("LGP sampling budget exhausted".into()))
}

fn certified_and_nontrivial(
    cfg: &PointConfig,
    cert: Option<GeprofiCertificate>,
    expect_b: usize,
    expect_d: usize,
) -> Result<(GeprofiCertificate, String)> {
    let cert = cert.ok_or_else(|| fail("no certificate found"))?;
    if (cert.b, cert.d) != (expect_b, expect_d) {
        return Err(fail(format!(
            "expected a ({expect_b},{expect_d}) certificate, got ({},{})",
            cert.b, cert.d
        )));
    }
    let outcome = verify_certificate(&cert);
    if !outcome.ok {
        return Err(fail(format!(
            "verification failed at {}",
            outcome.first_failure.unwrap_or_default()
        )));
    }
    let report = triviality_census(cfg, cert.b, cert.d)?;
    if report.verdict != TrivialityVerdict::NoEvidence {
        return Err(fail(format!("census verdict {:?}", report.verdict)));
    }
    Ok((
        cert,
        format!("verified ({expect_b},{expect_d}) certificate, census NO_EVIDENCE"),
    ))
}

/// The eight nontrivial matrix entries, as (name, generator) pairs; each
/// returns a verified certificate whose census shows no trivial structure.
fn matrix_rows(rows: &mut Vec<SuiteRow>, master: u64, certs: Option<&mut Vec<GeprofiCertificate>>) {
    let mut sink: Vec<GeprofiCertificate> = Vec::new();
    {
        let sink = &mut sink;
        row(rows, master, "theorem_a/(4,2)-eight-general-points", |rs| {
            let cfg = sample_lgp_points(8, rs)?;
            let cert = certify_b2(&cfg, rs)?;
            let (cert, msg) = certified_and_nontrivial(&cfg, cert, 4, 2)?;
            sink.push(cert);
            Ok(msg)
        });
        row(rows, master, "theorem_a/(5,2)-rnc-points", |rs| {
            let (cfg, _, _) = rnc_points_sampled(10, rs)?;
            let cert = certify_b2(&cfg, rs)?;
            let (cert, msg) = certified_and_nontrivial(&cfg, cert, 5, 2)?;
            sink.push(cert);
            Ok(msg)
        });
        row(rows, master, "theorem_a/(6,2)-concurrent-lines", |rs| {
            let (cfg, record) = concurrent_lines(5, &[3, 3, 2, 2, 2], rs)?;
            let cert = certify_cone_construction(&cfg, &record, rs)?;
            let (cert, msg) = certified_and_nontrivial(&cfg, cert, 6, 2)?;
            sink.push(cert);
            Ok(msg)
        });
        row(rows, master, "theorem_a/(7,2)-concurrent-lines", |rs| {
            let (cfg, record) = concurrent_lines(5, &[3, 3, 3, 3, 2], rs)?;
            let cert = certify_cone_construction(&cfg, &record, rs)?;
            let (cert, msg) = certified_and_nontrivial(&cfg, cert, 7, 2)?;
            sink.push(cert);
            Ok(msg)
        });
        row(rows, master, "theorem_a/(5,3)-grid-extension", |rs| {
            let (cfg, record) = grid_extension(3, rs)?;
            let cert = certify_cone_construction(&cfg, &record, rs)?;
            let (cert, msg) = certified_and_nontrivial(&cfg, cert, 5, 3)?;
            sink.push(cert);
            Ok(msg)
        });
        row(rows, master, "theorem_a/(6,4)-grid-extension", |rs| {
            let (cfg, record) = grid_extension(4, rs)?;
            let cert = certify_cone_construction(&cfg, &record, rs)?;
            let (cert, msg) = certified_and_nontrivial(&cfg, cert, 6, 4)?;
            sink.push(cert);
            Ok(msg)
        });
        row(rows, master, "theorem_a/(4,3)-on-curve", |rs| {
            let field = Field::Q;
            let params: Vec<(FieldElement, FieldElement)> = (0..12)
                .map(|k| (field.one(), field.from_i64(k - 5)))
                .collect();
            let (cfg, _, curve) = rnc_points(&params, rs)?;
            let cert = certify_on_curve(&curve, &params, 3, rs)?;
            let (cert, msg) = certified_and_nontrivial(&cfg, cert, 4, 3)?;
            sink.push(cert);
            Ok(msg)
        });
        row(rows, master, "theorem_a/(4,4)-on-curve", |rs| {
            let field = Field::Q;
            let params: Vec<(FieldElement, FieldElement)> = (0..16)
                .map(|k| (field.one(), field.from_i64(k - 7)))
                .collect();
            let (cfg, _, curve) = rnc_points(&params, rs)?;
            let cert = certify_on_curve(&curve, &params, 4, rs)?;
            let (cert, msg) = certified_and_nontrivial(&cfg, cert, 4, 4)?;
            sink.push(cert);
            Ok(msg)
        });
    }
    if let Some(certs) = certs {
        certs.extend(sink);
    }
}

fn theorem_a_rows(
    rows: &mut Vec<SuiteRow>,
    master: u64,
    certs: Option<&mut Vec<GeprofiCertificate>>,
) {
    matrix_rows(rows, master, certs);
    row(rows, master, "theorem_a/(3,2)-trivial-witness", |rs| {
        let (cfg, record) = trivial_planes_lines(3, 2, rs)?;
        record.verify(&cfg)?;
        let report = triviality_census(&cfg, 3, 2)?;
        if report.verdict != TrivialityVerdict::TrivialWitnessFound {
            return Err(fail(format!("census verdict {:?}", report.verdict)));
        }
        Ok("trivial (3,2) witness assembled".into())
    });
    for (b, d) in [(3usize, 2usize), (4, 3), (5, 2)] {
        row(
            rows,
            master,
            &format!("theorem_a/hypergrid-({b},{d})"),
            move |rs| {
                let (cfg, record) = hypergrid(b, d, rs)?;
                record.verify(&cfg)?;
                let report = triviality_census(&cfg, b, d)?;
                if report.verdict != TrivialityVerdict::TrivialWitnessFound {
                    return Err(fail(format!("census verdict {:?}", report.verdict)));
                }
                Ok(format!(
                    "hypergrid incidences verified, {b} lines x {d} planes found"
                ))
            },
        );
    }
}

fn theorem_b_rows(
    rows: &mut Vec<SuiteRow>,
    master: u64,
    certs: Option<&mut Vec<GeprofiCertificate>>,
) {
    let mut sink: Vec<GeprofiCertificate> = Vec::new();
    {
        let sink = &mut sink;
        row(rows, master, "theorem_b/rnc-10-points-certify", |rs| {
            for k in 0..6 {
                let mut step = rs.split(&format!("rnc-{k}"));
                let (cfg, _, _) = rnc_points_sampled(10, &mut step)?;
                if !is_lgp(&cfg).is_lgp() {
                    return Err(fail("rnc points must be in LGP"));
                }
                if hilbert(&cfg)?.h_vector != vec![1, 4, 4, 1] {
                    return Err(fail("unexpected h-vector on the curve"));
                }
                let cert = certify_b2(&cfg, &mut step)?.ok_or_else(|| fail("no certificate"))?;
                if !verify_certificate(&cert).ok {
                    return Err(fail("verification failed"));
                }
                sink.push(cert);
            }
            Ok("six seeds: LGP, h-vector (1,4,4,1), verified (5,2) certificates".into())
        });
    }
    row(
        rows,
        master,
        "theorem_b/concurrent-h-vector-branches",
        |_| {
            let mut seen_145 = false;
            let mut seen_1441 = false;
            for seed in [concurrent_branch_seeds().0, concurrent_branch_seeds().1] {
                let mut rs = RandomSource::with_bound(seed, 2);
                let (cfg, _) = concurrent_lines(5, &[2, 2, 2, 2, 2], &mut rs)?;
                let h = hilbert(&cfg)?.h_vector;
                if h == vec![1, 4, 5] {
                    seen_145 = true;
                } else if h == vec![1, 4, 4, 1] {
                    seen_1441 = true;
                } else {
                    return Err(fail(format!("impossible h-vector {h:?}")));
                }
            }
            if !(seen_145 && seen_1441) {
                return Err(fail("both h-vector branches must be reachable"));
            }
            Ok("branches (1,4,5) and (1,4,4,1) both reached".into())
        },
    );
    row(rows, master, "theorem_b/random-lgp-absence", |rs| {
        for k in 0..4 {
            let mut step = rs.split(&format!("absence-{k}"));
            let cfg = sample_lgp_points(10, &mut step)?;
            if hilbert(&cfg)?.h_vector != vec![1, 4, 5] {
                return Err(fail("random LGP sample must have h-vector (1,4,5)"));
            }
            if certify_b2(&cfg, &mut step)?.is_some() {
                return Err(fail("unexpected certificate on the generic branch"));
            }
        }
        Ok("four seeds: h-vector (1,4,5) and no certificate in five retries".into())
    });
    row(rows, master, "theorem_b/castelnuovo-flags", |rs| {
        let (twelve, _, _) = rnc_points_sampled(12, rs)?;
        if castelnuovo_flag(&twelve)? != CastelnuovoFlag::RncForced {
            return Err(fail("12 curve points must force the curve flag"));
        }
        let nine = sample_lgp_points(9, rs)?;
        if castelnuovo_flag(&nine)? != CastelnuovoFlag::PencilExcluded {
            return Err(fail("9 LGP points must exclude a pencil"));
        }
        let six = sample_lgp_points(6, rs)?;
        if castelnuovo_flag(&six)? != CastelnuovoFlag::None {
            return Err(fail("6 points are below both thresholds"));
        }
        Ok("flags RNC_FORCED / PENCIL_EXCLUDED / NONE as expected".into())
    });
    {
        let sink = &mut sink;
        row(rows, master, "theorem_b/(6,2)-on-rnc", |rs| {
            let (cfg, _, _) = rnc_points_sampled(12, rs)?;
            let cert = certify_b2(&cfg, rs)?.ok_or_else(|| fail("no certificate"))?;
            if (cert.b, cert.d) != (6, 2) || !verify_certificate(&cert).ok {
                return Err(fail("(6,2) verification failed"));
            }
            sink.push(cert);
            Ok("verified (6,2) certificate on the quartic curve".into())
        });
    }
    row(rows, master, "theorem_b/liaison-f11", |rs| {
        for k in 0..8 {
            let mut step = rs.split(&format!("liaison-{k}"));
            if let LiaisonOutcome::Found { cfg, record } = liaison_ff(11, &mut step)? {
                record.verify(&cfg)?;
                if hilbert(&cfg)?.h_vector != vec![1, 4, 4, 1] {
                    return Err(fail("residual h-vector mismatch"));
                }
                return Ok(
                    "10-point residual with h-vector (1,4,4,1) from a 16-point intersection".into(),
                );
            }
        }
        Err(fail("liaison retries exhausted"))
    });
    if let Some(certs) = certs {
        certs.extend(sink);
    }
}

fn weddle_wlp_rows(rows: &mut Vec<SuiteRow>, master: u64) {
    row(
        rows,
        master,
        "weddle_wlp/ten-independent-points-cokernel-0",
        |rs| {
            let field = Field::Q;
            let cfg = loop {
                let cand = sample_lgp_points(10, rs)?;
                if eval_matrix(&cand, 2).rank() == 10 {
                    break cand;
                }
            };
            for _ in 0..10 {
                let p = loop {
                    if let Ok(p) = ProjPoint::new(rs.sample(&field, 5).unwrap()) {
                        break p;
                    }
                };
                if wlp_cokernel(&cfg, &p)? != 0 {
                    return Err(fail("multiplication map should be an isomorphism"));
                }
            }
            Ok("cokernel 0 at ten sampled points".into())
        },
    );
    row(
        rows,
        master,
        "weddle_wlp/special-ten-points-cokernel-1",
        |rs| {
            let field = Field::Q;
            let (cfg, _) = example_3_2();
            for _ in 0..10 {
                let p = loop {
                    if let Ok(p) = ProjPoint::new(rs.sample(&field, 5).unwrap()) {
                        break p;
                    }
                };
                if wlp_cokernel(&cfg, &p)? != 1 {
                    return Err(fail("the special points must break the isomorphism"));
                }
            }
            Ok("cokernel 1 at ten sampled points".into())
        },
    );
    row(rows, master, "weddle_wlp/nine-lgp-points", |rs| {
        let field = Field::Q;
        let cfg = sample_lgp_points(9, rs)?;
        let p = loop {
            if let Ok(p) = ProjPoint::new(rs.sample(&field, 5).unwrap()) {
                if !cfg.contains(&p) {
                    break p;
                }
            }
        };
        if weddle_excess(&cfg, &p, 2)? != 0 {
            return Err(fail("nine general points have no excess"));
        }
        let projection = project(&cfg, &p)?;
        if projection.collided {
            return Err(fail("collided projection"));
        }
        if ideal_slice(&projection.image, 2).dim() != 1 {
            return Err(fail("projection must lie on exactly one quadric"));
        }
        Ok("excess 0 and a one-dimensional quadric system after projection".into())
    });
    row(
        rows,
        master,
        "weddle_wlp/nine-rnc-points-secant-excess",
        |rs| {
            let field = Field::Q;
            let (cfg, _, curve) = rnc_points_sampled(9, rs)?;
            for _ in 0..10 {
                // a point of the secant variety: a combination of two curve points
                let p = loop {
                    let u1 = rs.sample_one(&field);
                    let u2 = rs.sample_one(&field);
                    if u1 == u2 {
                        continue;
                    }
                    let (Ok(c1), Ok(c2)) =
                        (curve.eval(&field.one(), &u1), curve.eval(&field.one(), &u2))
                    else {
                        continue;
                    };
                    let a = rs.sample_nonzero(&field);
                    let b = rs.sample_nonzero(&field);
                    let coords: Vec<FieldElement> = c1
                        .coords()
                        .iter()
                        .zip(c2.coords())
                        .map(|(x, y)| x.mul(&a).add(&y.mul(&b)))
                        .collect();
                    if let Ok(p) = ProjPoint::new(coords) {
                        if !cfg.contains(&p) {
                            break p;
                        }
                    }
                };
                if weddle_excess(&cfg, &p, 2)? < 1 {
                    return Err(fail("secant points must show excess"));
                }
            }
            Ok("excess >= 1 at ten secant-variety samples".into())
        },
    );
}

fn example_row(rows: &mut Vec<SuiteRow>, master: u64, certs: Option<&mut Vec<GeprofiCertificate>>) {
    let mut sink: Vec<GeprofiCertificate> = Vec::new();
    {
        let sink = &mut sink;
        row(rows, master, "paper_all/ten-point-example-golden", |rs| {
            let field = Field::Q;
            let (cfg, record) = example_3_2();
            record.verify(&cfg)?;
            if hilbert(&cfg)?.h_vector != vec![1, 4, 5] {
                return Err(fail("h-vector must be (1,4,5)"));
            }
            for _ in 0..20 {
                let q = loop {
                    if let Ok(p) = ProjPoint::new(rs.sample(&field, 5).unwrap()) {
                        break p;
                    }
                };
                let slice = singular_slice(&cfg, &q, 2)?;
                if slice.dim() != 1 {
                    return Err(fail("cone slice must be one-dimensional"));
                }
                if !slice.form(0).proportional_to(&example_3_2_cone(&q)?) {
                    return Err(fail("cone must match the closed formula"));
                }
            }
            let cert = certify_b2(&cfg, rs)?.ok_or_else(|| fail("no certificate"))?;
            if (cert.b, cert.d) != (5, 2) || !verify_certificate(&cert).ok {
                return Err(fail("(5,2) certification failed"));
            }
            sink.push(cert);
            Ok("h-vector, 20 closed-form cones, and a verified (5,2) certificate".into())
        });
    }
    if let Some(certs) = certs {
        certs.extend(sink);
    }
}

/// Samples distinct primes above 1000 admissible for a certificate (its data
/// reduces faithfully) and recounts the full intersection mod each.
pub fn oracle_cross_check(
    cert: &GeprofiCertificate,
    how_many: usize,
    rs: &mut RandomSource,
) -> Result<Vec<u64>> {
    let mut used = Vec::new();
    let mut tries = 0;
    while used.len() < how_many {
        tries += 1;
        if tries > 600 {
            return Err(Error::Genericity("no admissible primes found".into()));
        }
        let p = 1009 + 2 * (rs.sample_index(1500) as u64);
        if !is_prime_u64(p) || used.contains(&p) {
            continue;
        }
        let Ok((curve_pts, surface)) = certificate_oracle_inputs(cert, p) else {
            continue; // inadmissible: denominators or degenerate reduction
        };
        let count = oracle::full_intersection_count(&curve_pts, &surface)?;
        if count != cert.b * cert.d {
            return Err(fail(format!(
                "count {count} != {} mod {p}",
                cert.b * cert.d
            )));
        }
        used.push(p);
    }
    Ok(used)
}

fn structural_rows(rows: &mut Vec<SuiteRow>, master: u64, certs: &[GeprofiCertificate]) {
    let sample: Vec<GeprofiCertificate> = certs.iter().take(4).cloned().collect();
    row(rows, master, "paper_all/oracle-cross-check", move |rs| {
        if sample.is_empty() {
            return Err(fail("no certificates to check"));
        }
        for cert in &sample {
            let primes = oracle_cross_check(cert, 3, rs)?;
            if primes.len() != 3 {
                return Err(fail("expected three admissible primes"));
            }
        }
        Ok(format!(
            "{} certificates recounted to b*d over three primes each",
            sample.len()
        ))
    });
    row(rows, master, "paper_all/no-twisted-cubic", |rs| {
        for k in 0..5 {
            let mut step = rs.split(&format!("cubic-{k}"));
            let cfg = sample_lgp_points(7, &mut step)?;
            if !no_twisted_cubic_check(&cfg, &mut step)? {
                return Err(fail("random points must avoid twisted cubics"));
            }
        }
        Ok("five 7-point samples admit no twisted cubic in projection".into())
    });
    row(rows, master, "paper_all/cone-determinant-degree-5", |rs| {
        let field = Field::Q;
        let cfg = loop {
            let cand = sample_lgp_points(10, rs)?;
            if eval_matrix(&cand, 2).rank() == 10 {
                break cand;
            }
        };
        let a = ProjPoint::new(rs.sample(&field, 5).unwrap())
            .map_err(|_| fail("degenerate line point"))?;
        let b = ProjPoint::new(rs.sample(&field, 5).unwrap())
            .map_err(|_| fail("degenerate line point"))?;
        let coeffs = cone_determinant_on_line(&cfg, &a, &b)?;
        if coeffs.len() != 6 || coeffs[5].is_zero() {
            return Err(fail("determinant must have degree exactly 5"));
        }
        Ok("line-restricted cone determinant has degree exactly 5".into())
    });
    row(rows, master, "paper_all/common-point-of-planes", |rs| {
        for _ in 0..10 {
            let d = 3 + rs.sample_index(3);
            let (apex, planes) = concurrent_planes_instance(d, rs)?;
            match common_point(&planes)? {
                FlatMeet::Point(p) if p == apex => {}
                other => return Err(fail(format!("expected the apex, got {other:?}"))),
            }
        }
        Ok("ten instances: the planes meet exactly in the common point".into())
    });
}

/// Builds d >= 3 planes through a common apex, pairwise spanning P^4 and
/// meeting two fixed auxiliary planes in distinct lines, following the
/// ruling construction on a quadric surface inside a hyperplane.
pub fn concurrent_planes_instance(
    d: usize,
    rs: &mut RandomSource,
) -> Result<(ProjPoint, Vec<crate::projgeom::Flat>)> {
    let field = Field::Q;
    'attempt: for _ in 0..32 {
        let mut aparams: Vec<ProjPoint> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        while aparams.len() < d {
            if let Ok(p) = ProjPoint::new(rs.sample(&field, 2).unwrap()) {
                if seen.insert(p.clone()) {
                    aparams.push(p);
                }
            }
        }
        let apex = {
            let mut coords = rs.sample(&field, 4).unwrap();
            coords.push(rs.sample_nonzero(&field));
            match ProjPoint::new(coords) {
                Ok(p) => p,
                Err(_) => continue 'attempt,
            }
        };
        let zero = field.zero();
        let mut planes = Vec::with_capacity(d);
        for ab in &aparams {
            let (a, b) = (&ab.coords()[0], &ab.coords()[1]);
            let u = ProjPoint::new(vec![
                a.clone(),
                zero.clone(),
                b.clone(),
                zero.clone(),
                zero.clone(),
            ])?;
            let w = ProjPoint::new(vec![
                zero.clone(),
                a.clone(),
                zero.clone(),
                b.clone(),
                zero.clone(),
            ])?;
            let Ok(plane) = span(&[u, w, apex.clone()]) else {
                continue 'attempt;
            };
            if plane.dim() != 2 {
                continue 'attempt;
            }
            planes.push(plane);
        }
        // pairwise spanning P^4
        for i in 0..d {
            for j in i + 1..d {
                let mut pts: Vec<ProjPoint> = planes[i].basis().to_vec();
                pts.extend(planes[j].basis().iter().cloned());
                if span(&pts)?.dim() != 4 {
                    continue 'attempt;
                }
            }
        }
        // the hypothesis planes: two auxiliary planes from the opposite
        // ruling, each meeting every constructed plane in a line, and the
        // cut lines must be pairwise distinct
        let mut bparams: Vec<ProjPoint> = Vec::new();
        let mut seenb = std::collections::HashSet::new();
        while bparams.len() < 2 {
            if let Ok(p) = ProjPoint::new(rs.sample(&field, 2).unwrap()) {
                if seenb.insert(p.clone()) {
                    bparams.push(p);
                }
            }
        }
        let mut cut_lines: Vec<crate::projgeom::Flat> = Vec::new();
        let mut ok = true;
        for cd in &bparams {
            let (c, dd) = (&cd.coords()[0], &cd.coords()[1]);
            let u = ProjPoint::new(vec![
                c.clone(),
                dd.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
            ])?;
            let w = ProjPoint::new(vec![
                zero.clone(),
                zero.clone(),
                c.clone(),
                dd.clone(),
                zero.clone(),
            ])?;
            let Ok(big) = span(&[u, w, apex.clone()]) else {
                ok = false;
                break;
            };
            for plane in &planes {
                match common_point(&[plane.clone(), big.clone()])? {
                    FlatMeet::Positive(1) => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
                // the actual cut line: intersection of the two planes
                let mut eqs = plane.dual_equations();
                eqs = eqs.stack(&big.dual_equations())?;
                let ns = eqs.nullspace();
                if ns.len() != 2 {
                    ok = false;
                    break;
                }
                let line = crate::projgeom::Flat::new(
                    ns.into_iter()
                        .map(ProjPoint::new)
                        .collect::<Result<Vec<_>>>()?,
                )?;
                if cut_lines.contains(&line) {
                    ok = false;
                    break;
                }
                cut_lines.push(line);
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue 'attempt;
        }
        return Ok((apex, planes));
    }
    Err(Error::Genericity(
        "plane instance sampling exhausted".into(),
    ))
}

/// Runs a reproduction suite under a master seed. Row order is fixed;
/// failures are rows, not errors.
pub fn run_suite(suite: Suite, master_seed: u64) -> SuiteReport {
    let mut rows = Vec::new();
    match suite {
        Suite::TheoremA => theorem_a_rows(&mut rows, master_seed, None),
        Suite::TheoremB => theorem_b_rows(&mut rows, master_seed, None),
        Suite::WeddleWlp => weddle_wlp_rows(&mut rows, master_seed),
        Suite::PaperAll => {
            let mut certs = Vec::new();
            example_row(&mut rows, master_seed, Some(&mut certs));
            theorem_a_rows(&mut rows, master_seed, Some(&mut certs));
            theorem_b_rows(&mut rows, master_seed, Some(&mut certs));
            weddle_wlp_rows(&mut rows, master_seed);
            structural_rows(&mut rows, master_seed, &certs);
        }
    }
    SuiteReport {
        suite: suite.name().into(),
        master_seed,
        rows,
    }
}
