//! Decision procedures and certificate generation: linear general position,
//! (b,2) certificates via the pairing algorithm, (b,d) certificates via
//! cones over plane curves, curve-based certificates, and triviality
//! structure detection.
//!
//! Certificates are one-sided: a verified certificate proves the projection
//! property, while absence of a certificate is only a sampling result, never
//! a proof of non-existence. Every emitted certificate re-verifies from raw
//! data with no reference to how it was found.

use std::collections::HashSet;

use crate::constructions::{ConstructionKind, ConstructionRecord};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::field::{Field, FieldElement, RandomSource};
use crate::ideals::{ideal_slice, Form, FormSpace};
use crate::oracle;
use crate::projgeom::{
    common_point, lgp_violation, project, span, BinaryForm, Flat, FlatMeet, PointConfig, ProjPoint,
    RationalCurve,
};

const CENTER_RETRIES: usize = 5;
const BACKTRACK_LIMIT: usize = 10_000_000;

/// Outcome of the linear-general-position check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LgpOutcome {
    Lgp,
    /// A minimal violating subset: k points spanning less than a (k-1)-flat.
    Violation(Vec<usize>),
}

impl LgpOutcome {
    pub fn is_lgp(&self) -> bool {
        matches!(self, LgpOutcome::Lgp)
    }
}

/// Linear general position: every subset of size k <= N+1 spans a
/// (k-1)-flat. On failure returns a minimal violating subset.
pub fn is_lgp(cfg: &PointConfig) -> LgpOutcome {
    match lgp_violation(cfg) {
        None => LgpOutcome::Lgp,
        Some(witness) => LgpOutcome::Violation(witness),
    }
}

/// One verified check of a certificate transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub check: String,
    pub status: bool,
}

fn entry(check: &str, status: bool) -> TranscriptEntry {
    TranscriptEntry {
        check: check.into(),
        status,
    }
}

/// A line of a curve witness: two spanning points and the image points
/// assigned to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessLine {
    pub basis: (ProjPoint, ProjPoint),
    pub assigned: Vec<usize>,
}

/// The degree-b curve of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveWitness {
    /// A perfect matching of the image into b pairs; the curve is the union
    /// of the b connecting lines, stored with their spanning bases (d = 2
    /// only).
    PairedLines { lines: Vec<WitnessLine> },
    /// b lines avoiding the cone surface, each carrying d image points.
    ConeLines {
        vertex: ProjPoint,
        lines: Vec<WitnessLine>,
    },
    /// A parametrized rational curve in P^3 with one parameter per image
    /// point, in image order.
    ParamCurve {
        curve: RationalCurve,
        params: Vec<(FieldElement, FieldElement)>,
    },
}

impl CurveWitness {
    pub fn kind_name(&self) -> &'static str {
        match self {
            CurveWitness::PairedLines { .. } => "PAIRED_LINES",
            CurveWitness::ConeLines { .. } => "CONE_LINES",
            CurveWitness::ParamCurve { .. } => "PARAM_CURVE",
        }
    }
}

/// A full-intersection certificate: projecting from `center` sends the
/// configuration onto `image`, which is cut out exactly by the degree-d
/// surface witness and the degree-b curve witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeprofiCertificate {
    pub b: usize,
    pub d: usize,
    pub center: ProjPoint,
    pub image: PointConfig,
    pub surface: Form,
    pub witness: CurveWitness,
    pub transcript: Vec<TranscriptEntry>,
}

/// Result of re-verifying a certificate.
#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub ok: bool,
    pub transcript: Vec<TranscriptEntry>,
    pub first_failure: Option<String>,
}

/// Symmetric matrix of a quadric (requires characteristic != 2 for the
/// off-diagonal halving; all certificate fields used here are Q).
fn quadric_matrix(q: &Form) -> Matrix {
    assert_eq!(q.degree(), 2);
    let n = q.num_vars();
    let field = q.field();
    let basis = q.basis();
    let mut m = Matrix::zero(n, n, field);
    let half = field.from_i64(2).inverse().expect("char != 2");
    for (idx, c) in q.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = &basis.exponents()[idx];
        let vars: Vec<usize> = (0..n).filter(|&v| e[v] > 0).collect();
        if vars.len() == 1 {
            m.set(vars[0], vars[0], c.clone());
        } else {
            let v = c.mul(&half);
            m.set(vars[0], vars[1], v.clone());
            m.set(vars[1], vars[0], v);
        }
    }
    m
}

/// All partial derivatives vanish at the point.
fn is_singular_point(f: &Form, p: &ProjPoint) -> bool {
    (0..f.num_vars()).all(|v| f.partial(v).eval_point(p).is_zero())
}

/// Splits a rank <= 2 quadric into two rational linear forms when possible.
fn split_quadric(q: &Form) -> Option<(Form, Form)> {
    let m = quadric_matrix(q);
    let (rref, pivots) = m.rref();
    if pivots.len() > 2 {
        return None;
    }
    let field = q.field();
    let n = q.num_vars();
    if pivots.is_empty() {
        return None;
    }
    let r1: Vec<FieldElement> = rref.row(0).to_vec();
    let r2: Vec<FieldElement> = if pivots.len() == 2 {
        rref.row(1).to_vec()
    } else {
        vec![field.zero(); n]
    };
    // write Q = a y1^2 + b y1 y2 + c y2^2 in y1 = r1.x, y2 = r2.x by matching
    // the matrix: M = a r1 r1^T + (b/2)(r1 r2^T + r2 r1^T) + c r2 r2^T.
    // Solve on the pivot columns.
    let p1 = pivots[0];
    // r1 has 1 at p1, 0 at p2; r2 has 0 at p1, 1 at p2 (RREF)
    let (a, b, c) = if pivots.len() == 1 {
        (m.at(p1, p1).clone(), field.zero(), field.zero())
    } else {
        let p2 = pivots[1];
        (
            m.at(p1, p1).clone(),
            m.at(p1, p2).add(m.at(p2, p1)),
            m.at(p2, p2).clone(),
        )
    };
    // factor a y1^2 + b y1 y2 + c y2^2
    let two = field.from_i64(2);
    let four = field.from_i64(4);
    let lin = |alpha: &FieldElement, beta: &FieldElement| -> Form {
        let coeffs: Vec<FieldElement> = (0..n)
            .map(|k| alpha.mul(&r1[k]).add(&beta.mul(&r2[k])))
            .collect();
        Form::new(n, 1, coeffs).expect("linear form")
    };
    if a.is_zero() && c.is_zero() {
        if b.is_zero() {
            return None;
        }
        return Some((lin(&field.one(), &field.zero()), lin(&field.zero(), &b)));
    }
    if a.is_zero() {
        // y2 (b y1 + c y2)
        return Some((lin(&field.zero(), &field.one()), lin(&b, &c)));
    }
    let disc = b.mul(&b).sub(&four.mul(&a).mul(&c));
    let root = disc.sqrt()?;
    // a (y1 - r_+ y2)(y1 - r_- y2) with r_{±} = (-b ± root) / 2a
    let inv2a = two.mul(&a).inverse().ok()?;
    let rp = b.neg().add(&root).mul(&inv2a);
    let rm = b.neg().sub(&root).mul(&inv2a);
    let f1 = lin(&field.one(), &rp.neg());
    let f2 = lin(&field.one(), &rm.neg()).scale(&a);
    Some((f1, f2))
}

/// Pairing hypothesis data for Lemma-style partitioning.
enum PairingRegime {
    /// Reducible quadric: the two planes, as linear forms, with points
    /// equidistributed off the common line.
    TwoPlanes(Form, Form),
    /// No b+1 points collinear.
    General,
}

fn check_pairing_hypotheses(image: &PointConfig, quadric: &Form) -> Result<PairingRegime> {
    let n = image.len();
    let b = n / 2;
    for (k, p) in image.points().iter().enumerate() {
        if !quadric.eval_point(p).is_zero() {
            return Err(Error::Precondition(format!(
                "quadric does not vanish at image point {k}"
            )));
        }
    }
    for (k, p) in image.points().iter().enumerate() {
        if is_singular_point(quadric, p) {
            return Err(Error::Precondition(format!(
                "image point {k} is a vertex of the quadric"
            )));
        }
    }
    let rank = quadric_matrix(quadric).rank();
    if rank <= 2 {
        let Some((f1, f2)) = split_quadric(quadric) else {
            return Err(Error::Precondition(
                "reducible quadric does not split over the field".into(),
            ));
        };
        let on1 = image
            .points()
            .iter()
            .filter(|p| f1.eval_point(p).is_zero())
            .count();
        let on2 = image
            .points()
            .iter()
            .filter(|p| f2.eval_point(p).is_zero())
            .count();
        if on1 != b || on2 != b {
            return Err(Error::Precondition(format!(
                "two-plane case requires equidistribution, found {on1}/{on2}"
            )));
        }
        return Ok(PairingRegime::TwoPlanes(f1, f2));
    }
    // general case: no b+1 points collinear
    let mut by_line: Vec<(Flat, Vec<usize>)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let line = span(&[image.point(i).clone(), image.point(j).clone()])?;
            if by_line
                .iter()
                .any(|(l, _)| l.contains(image.point(i)) && l.contains(image.point(j)))
            {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&k| line.contains(image.point(k))).collect();
            if members.len() > b {
                return Err(Error::Precondition(format!(
                    "{} collinear points exceed the bound b = {b}",
                    members.len()
                )));
            }
            by_line.push((line, members));
        }
    }
    Ok(PairingRegime::General)
}

fn line_on_quadric(quadric: &Form, a: &ProjPoint, b: &ProjPoint) -> bool {
    quadric.pullback_line(a, b).is_zero()
}

/// Partition of an even image on a quadric into pairs whose connecting
/// lines avoid the quadric. Preconditions follow the two admissible
/// regimes; `Ok(None)` means the bounded backtracking search exhausted.
pub fn pair_partition(image: &PointConfig, quadric: &Form) -> Result<Option<Vec<(usize, usize)>>> {
    let n = image.len();
    if n < 4 || n % 2 != 0 {
        return Err(Error::Precondition(
            "pairing needs an even image of at least 4 points".into(),
        ));
    }
    if quadric.degree() != 2 || quadric.num_vars() != image.ambient_dim() + 1 {
        return Err(Error::Precondition(
            "pairing witness must be a quadric on the image space".into(),
        ));
    }
    let regime = check_pairing_hypotheses(image, quadric)?;

    if let PairingRegime::TwoPlanes(f1, f2) = &regime {
        // cross-plane matching in input order
        let side1: Vec<usize> = (0..n)
            .filter(|&k| f1.eval_point(image.point(k)).is_zero())
            .collect();
        let side2: Vec<usize> = (0..n)
            .filter(|&k| f2.eval_point(image.point(k)).is_zero())
            .collect();
        let pairs: Vec<(usize, usize)> = side1.into_iter().zip(side2).collect();
        if pairs
            .iter()
            .all(|&(i, j)| !line_on_quadric(quadric, image.point(i), image.point(j)))
        {
            return Ok(Some(pairs));
        }
        // fall through to backtracking on the rare degenerate draw
    }

    // fast path: the inductive procedure (maximal collinear line, a second
    // line, a four-point transversal), with lexicographic tie-breaking
    if let Some(pairs) = lemma_procedure(image, quadric) {
        return Ok(Some(pairs));
    }
    if n <= 24 {
        let mut budget = BACKTRACK_LIMIT;
        let mut remaining: Vec<usize> = (0..n).collect();
        let mut pairs = Vec::with_capacity(n / 2);
        if backtrack_pairs(image, quadric, &mut remaining, &mut pairs, &mut budget) {
            return Ok(Some(pairs));
        }
    }
    Ok(None)
}

fn collinear_groups(image: &PointConfig, active: &[usize]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (ai, &i) in active.iter().enumerate() {
        for &j in &active[ai + 1..] {
            let Ok(line) = span(&[image.point(i).clone(), image.point(j).clone()]) else {
                continue;
            };
            let members: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&k| line.contains(image.point(k)))
                .collect();
            if !groups.contains(&members) {
                groups.push(members);
            }
        }
    }
    groups
}

fn lemma_procedure(image: &PointConfig, quadric: &Form) -> Option<Vec<(usize, usize)>> {
    let mut active: Vec<usize> = (0..image.len()).collect();
    let mut pairs = Vec::with_capacity(image.len() / 2);
    while active.len() > 4 {
        let groups = collinear_groups(image, &active);
        // maximal group, lexicographically least on ties
        let l1 = groups
            .iter()
            .max_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)))?
            .clone();
        let off_l1: Vec<usize> = active.iter().copied().filter(|k| !l1.contains(k)).collect();
        let groups2 = collinear_groups(image, &off_l1);
        let l2 = groups2
            .iter()
            .max_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)))?
            .clone();
        let quad: Vec<usize> = l1
            .iter()
            .take(2)
            .chain(l2.iter().take(2))
            .copied()
            .collect();
        if quad.len() < 4 {
            return None;
        }
        let mut chosen = None;
        'outer: for x in 0..4 {
            for y in x + 1..4 {
                let (i, j) = (quad[x], quad[y]);
                if !line_on_quadric(quadric, image.point(i), image.point(j)) {
                    chosen = Some((i, j));
                    break 'outer;
                }
            }
        }
        let (i, j) = chosen?;
        pairs.push((i.min(j), i.max(j)));
        active.retain(|&k| k != i && k != j);
    }
    // base case: four points, three possible matchings
    let q = active;
    let matchings = [
        [(q[0], q[1]), (q[2], q[3])],
        [(q[0], q[2]), (q[1], q[3])],
        [(q[0], q[3]), (q[1], q[2])],
    ];
    for m in matchings {
        if m.iter()
            .all(|&(i, j)| !line_on_quadric(quadric, image.point(i), image.point(j)))
        {
            pairs.extend(m);
            return Some(pairs);
        }
    }
    None
}

fn backtrack_pairs(
    image: &PointConfig,
    quadric: &Form,
    remaining: &mut Vec<usize>,
    pairs: &mut Vec<(usize, usize)>,
    budget: &mut usize,
) -> bool {
    if remaining.is_empty() {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    let a = remaining[0];
    for pos in 1..remaining.len() {
        let b = remaining[pos];
        if line_on_quadric(quadric, image.point(a), image.point(b)) {
            continue;
        }
        *budget -= 1;
        let mut rest: Vec<usize> = remaining[1..].to_vec();
        rest.remove(pos - 1);
        pairs.push((a, b));
        let saved = std::mem::replace(remaining, rest);
        if backtrack_pairs(image, quadric, remaining, pairs, budget) {
            return true;
        }
        *remaining = saved;
        pairs.pop();
        if *budget == 0 {
            return false;
        }
    }
    false
}

/// Builds a witness line over the assigned image points with the canonical
/// spanning basis (the reduced-echelon basis of their span), so certificate
/// documents have a unique representation.
fn canonical_witness_line(image: &PointConfig, assigned: Vec<usize>) -> Result<WitnessLine> {
    let pts: Vec<ProjPoint> = assigned.iter().map(|&k| image.point(k).clone()).collect();
    let line = span(&pts)?;
    if line.dim() != 1 {
        return Err(Error::Genericity(
            "assigned points are not collinear".into(),
        ));
    }
    Ok(WitnessLine {
        basis: (line.basis()[0].clone(), line.basis()[1].clone()),
        assigned,
    })
}

fn sample_center(rs: &mut RandomSource, cfg: &PointConfig) -> ProjPoint {
    let field = cfg.field();
    loop {
        if let Ok(p) = ProjPoint::new(rs.sample(&field, cfg.ambient_dim() + 1).unwrap()) {
            if !cfg.contains(&p) {
                return p;
            }
        }
    }
}

/// (b,2) certification: project from a sampled center, find a quadric
/// through the image (preferring an irreducible one), run the pairing
/// algorithm, and assemble a verified certificate. `None` means no
/// certificate was found within the retry budget, never a proof of absence.
pub fn certify_b2(cfg: &PointConfig, rs: &mut RandomSource) -> Result<Option<GeprofiCertificate>> {
    if cfg.ambient_dim() != 4 {
        return Err(Error::Shape(
            "certification expects configurations in P^4".into(),
        ));
    }
    if cfg.len() % 2 != 0 || cfg.len() < 4 {
        return Err(Error::Precondition(
            "(b,2) certification needs an even configuration".into(),
        ));
    }
    let b = cfg.len() / 2;
    for _ in 0..CENTER_RETRIES {
        let center = sample_center(rs, cfg);
        let projection = project(cfg, &center)?;
        if projection.collided {
            continue;
        }
        let image = projection.image;
        let slice = ideal_slice(&image, 2);
        if slice.dim() == 0 {
            continue;
        }
        // candidate quadrics: basis members first, then random combinations,
        // preferring irreducible ones (symmetric rank >= 3)
        let mut candidates: Vec<Form> = slice.forms();
        let field = cfg.field();
        for _ in 0..6 {
            let coeffs: Vec<FieldElement> =
                (0..slice.dim()).map(|_| rs.sample_one(&field)).collect();
            if let Ok(f) = slice.combination(&coeffs) {
                if !f.is_zero() {
                    candidates.push(f);
                }
            }
        }
        candidates.sort_by_key(|f| {
            let r = quadric_matrix(f).rank();
            if r >= 3 {
                0
            } else {
                1
            }
        });
        for quadric in candidates {
            let Ok(Some(pairs)) = pair_partition(&image, &quadric) else {
                continue;
            };
            let Ok(lines) = pairs
                .iter()
                .map(|&(i, j)| canonical_witness_line(&image, vec![i, j]))
                .collect::<Result<Vec<_>>>()
            else {
                continue;
            };
            let cert = assemble(
                b,
                2,
                center.clone(),
                image.clone(),
                quadric,
                CurveWitness::PairedLines { lines },
            );
            if let Some(cert) = cert {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// Line images under a projection, as witness lines with solved incidences.
fn project_record_line(
    index_map: &[usize],
    image: &PointConfig,
    assigned_cfg: &[usize],
) -> Result<WitnessLine> {
    let img_indices: Vec<usize> = assigned_cfg.iter().map(|&i| index_map[i]).collect();
    canonical_witness_line(image, img_indices)
}

/// Certification through the cone construction: project to P^3, project
/// again from the image of the distinguished point, find a plane curve of
/// degree d through the twice-projected points, and lift it to a cone. The
/// curve witness is the set of recorded lines (for the grid extension) or a
/// cross-line pairing (for concurrent lines, d = 2).
pub fn certify_cone_construction(
    cfg: &PointConfig,
    record: &ConstructionRecord,
    rs: &mut RandomSource,
) -> Result<Option<GeprofiCertificate>> {
    let (p0, d): (&ProjPoint, usize) = match record.kind {
        ConstructionKind::ConcurrentLines => (
            record
                .named_point("O")
                .ok_or_else(|| Error::Precondition("record lacks the common point O".into()))?,
            2,
        ),
        ConstructionKind::GridExtension => {
            let d = record
                .parameters
                .get("d")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| Error::Precondition("record lacks the grid parameter d".into()))?;
            (
                record
                    .named_point("P0")
                    .ok_or_else(|| Error::Precondition("record lacks the apex P0".into()))?,
                d as usize,
            )
        }
        _ => {
            return Err(Error::Precondition(
                "cone certification needs a concurrent-lines or grid-extension record".into(),
            ))
        }
    };
    if cfg.len() % d != 0 {
        return Err(Error::Precondition(
            "configuration size incompatible with d".into(),
        ));
    }
    let b = cfg.len() / d;
    let field = cfg.field();

    'attempt: for _ in 0..CENTER_RETRIES {
        let center = sample_center(rs, cfg);
        if center == *p0 {
            continue;
        }
        let projection = project(cfg, &center)?;
        if projection.collided {
            continue;
        }
        let image = projection.image;
        let Some(vertex) = crate::projgeom::project_point(p0, &center) else {
            continue;
        };
        if image.contains(&vertex) {
            continue;
        }
        // second projection, from the vertex, to P^2
        let second = project(&image, &vertex)?;
        let plane_pts = second.image;
        let slice = ideal_slice(&plane_pts, d);
        if slice.dim() == 0 {
            continue;
        }

        // curve witness lines in P^3
        let lines: Vec<WitnessLine> = match record.kind {
            ConstructionKind::GridExtension => {
                let mut lines = Vec::new();
                for rf in record.flats_with_role("curve_line") {
                    match project_record_line(&projection.index_map, &image, &rf.points) {
                        Ok(l) => lines.push(l),
                        Err(_) => continue 'attempt,
                    }
                }
                lines
            }
            ConstructionKind::ConcurrentLines => {
                let groups: Vec<Vec<usize>> = record
                    .flats_with_role("structure_line")
                    .iter()
                    .map(|rf| rf.points.iter().map(|&i| projection.index_map[i]).collect())
                    .collect();
                let Some(pairs) = cross_line_pairing(groups) else {
                    continue 'attempt;
                };
                let mut lines = Vec::with_capacity(pairs.len());
                let mut ok = true;
                for (i, j) in pairs {
                    match canonical_witness_line(&image, vec![i, j]) {
                        Ok(l) => lines.push(l),
                        Err(_) => ok = false,
                    }
                }
                if !ok {
                    continue 'attempt;
                }
                lines
            }
            _ => unreachable!(),
        };
        if lines.len() != b {
            continue;
        }

        // members of the plane-curve system, lifted through the second
        // projection to cones with vertex at `vertex`
        let proj_rows = projection_rows(&vertex);
        let mut members: Vec<Form> = slice.forms();
        for _ in 0..6 {
            let coeffs: Vec<FieldElement> =
                (0..slice.dim()).map(|_| rs.sample_one(&field)).collect();
            if let Ok(f) = slice.combination(&coeffs) {
                if !f.is_zero() {
                    members.push(f);
                }
            }
        }
        for plane_form in members {
            let cone = plane_form.substitute_linear(&proj_rows, 4);
            if cone.is_zero() {
                continue;
            }
            if image.points().iter().any(|p| !cone.eval_point(p).is_zero()) {
                continue;
            }
            if lines
                .iter()
                .any(|l| cone.pullback_line(&l.basis.0, &l.basis.1).is_zero())
            {
                continue; // a witness line fell into the cone
            }
            let cert = assemble(
                b,
                d,
                center.clone(),
                image.clone(),
                cone,
                CurveWitness::ConeLines {
                    vertex: vertex.clone(),
                    lines: lines.clone(),
                },
            );
            if let Some(cert) = cert {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// Rows of the linear projection map from a center (one row per target
/// coordinate), for substitution into plane forms.
fn projection_rows(center: &ProjPoint) -> Vec<Vec<FieldElement>> {
    let n = center.coords().len();
    let i = center
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .expect("center nonzero");
    let ci = &center.coords()[i];
    let field = center.field();
    let mut rows = Vec::with_capacity(n - 1);
    for j in 0..n {
        if j == i {
            continue;
        }
        let mut row = vec![field.zero(); n];
        row[j] = ci.clone();
        row[i] = center.coords()[j].neg();
        rows.push(row);
    }
    rows
}

/// Perfect matching of grouped indices avoiding intra-group pairs; greedy on
/// the two largest groups, which succeeds whenever no group exceeds half the
/// total.
fn cross_line_pairing(mut groups: Vec<Vec<usize>>) -> Option<Vec<(usize, usize)>> {
    let total: usize = groups.iter().map(|g| g.len()).sum();
    if total % 2 != 0 {
        return None;
    }
    let mut pairs = Vec::with_capacity(total / 2);
    for _ in 0..total / 2 {
        groups.sort_by_key(|g| std::cmp::Reverse(g.len()));
        if groups.len() < 2 || groups[1].is_empty() {
            return None;
        }
        let a = groups[0].remove(0);
        let b = groups[1].remove(0);
        pairs.push((a.min(b), a.max(b)));
    }
    Some(pairs)
}

/// Curve-based certification: project the parametrized curve and its marked
/// points, pick a degree-d form through the image that does not vanish on
/// the whole projected curve, and verify that its pullback factors exactly
/// into the bd parameter roots.
pub fn certify_on_curve(
    curve: &RationalCurve,
    params: &[(FieldElement, FieldElement)],
    d: usize,
    rs: &mut RandomSource,
) -> Result<Option<GeprofiCertificate>> {
    if curve.ambient_dim() != 4 {
        return Err(Error::Shape(
            "curve certification expects a curve in P^4".into(),
        ));
    }
    let b = curve.degree();
    if d < 1 || params.len() != b * d {
        return Err(Error::Precondition(format!(
            "need exactly b*d = {} parameters, got {}",
            b * d,
            params.len()
        )));
    }
    for i in 0..params.len() {
        for j in i + 1..params.len() {
            let (s1, t1) = &params[i];
            let (s2, t2) = &params[j];
            if s1.mul(t2).sub(&s2.mul(t1)).is_zero() {
                return Err(Error::Precondition(format!(
                    "parameters {i} and {j} coincide projectively"
                )));
            }
        }
    }
    let field = curve.field();
    for _ in 0..CENTER_RETRIES {
        let Ok(center) = ProjPoint::new(rs.sample(&field, 5).unwrap()) else {
            continue;
        };
        let Ok(projected) = curve.project(&center) else {
            continue;
        };
        let params: Vec<(FieldElement, FieldElement)> = params
            .iter()
            .map(|(s, t)| canonical_parameter(s, t))
            .collect();
        let params = &params;
        let image_pts = params
            .iter()
            .map(|(s, t)| projected.eval(s, t))
            .collect::<Result<Vec<_>>>();
        let Ok(image_pts) = image_pts else { continue };
        let Ok(image) = PointConfig::new(image_pts) else {
            continue;
        };
        let slice = ideal_slice(&image, d);
        // first basis member whose pullback is nonzero on the curve
        let mut witness = None;
        for f in slice.forms() {
            if !f.pullback_curve(&projected).is_zero() {
                witness = Some(f);
                break;
            }
        }
        let Some(surface) = witness else { continue };
        let pullback = surface.pullback_curve(&projected);
        let product = BinaryForm::from_roots(field, params);
        if !pullback.proportional_to(&product) {
            continue;
        }
        let cert = assemble(
            b,
            d,
            center,
            image,
            surface,
            CurveWitness::ParamCurve {
                curve: projected,
                params: params.to_vec(),
            },
        );
        if let Some(cert) = cert {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Scales a projective parameter so its first nonzero entry is 1.
fn canonical_parameter(s: &FieldElement, t: &FieldElement) -> (FieldElement, FieldElement) {
    let lead = if s.is_zero() { t } else { s };
    let inv = lead.inverse().expect("parameter is nonzero");
    (s.mul(&inv), t.mul(&inv))
}

fn is_canonical_parameter(s: &FieldElement, t: &FieldElement) -> bool {
    if s.is_zero() {
        t.is_one()
    } else {
        s.is_one()
    }
}

fn assemble(
    b: usize,
    d: usize,
    center: ProjPoint,
    image: PointConfig,
    surface: Form,
    witness: CurveWitness,
) -> Option<GeprofiCertificate> {
    let mut cert = GeprofiCertificate {
        b,
        d,
        center,
        image,
        surface,
        witness,
        transcript: Vec::new(),
    };
    let checks = run_checks(&cert);
    if checks.iter().all(|e| e.status) {
        cert.transcript = checks;
        Some(cert)
    } else {
        None
    }
}

/// Solves point = s*A + t*B on the line spanned by A, B; None if the point
/// is off the line.
fn line_parameter(
    a: &ProjPoint,
    b: &ProjPoint,
    point: &ProjPoint,
) -> Option<(FieldElement, FieldElement)> {
    let field = a.field();
    let n = a.coords().len();
    let m = Matrix::from_rows(
        field,
        vec![
            a.coords().to_vec(),
            b.coords().to_vec(),
            point.coords().to_vec(),
        ],
    )
    .ok()?;
    if m.rank() != 2 {
        return None;
    }
    // find two coordinates where (A, B) has full rank and solve
    for c1 in 0..n {
        for c2 in c1 + 1..n {
            let det = a.coords()[c1]
                .mul(&b.coords()[c2])
                .sub(&a.coords()[c2].mul(&b.coords()[c1]));
            if det.is_zero() {
                continue;
            }
            // s*A[c1] + t*B[c1] = P[c1]; s*A[c2] + t*B[c2] = P[c2]
            let s = point.coords()[c1]
                .mul(&b.coords()[c2])
                .sub(&point.coords()[c2].mul(&b.coords()[c1]))
                .div(&det)
                .ok()?;
            let t = a.coords()[c1]
                .mul(&point.coords()[c2])
                .sub(&a.coords()[c2].mul(&point.coords()[c1]))
                .div(&det)
                .ok()?;
            return Some((s, t));
        }
    }
    None
}

/// Per-line witness checks: every assigned point lies on its stored line
/// (with pairwise distinct parameters), no line sits inside the surface, and
/// each restriction factors exactly into the assigned parameter roots.
fn check_witness_lines(
    cert: &GeprofiCertificate,
    lines: &[WitnessLine],
    field: Field,
) -> (bool, bool, bool, bool) {
    let mut canonical = true;
    let mut on_line = true;
    let mut off_surface = true;
    let mut exact = true;
    for l in lines {
        let (a, b) = (&l.basis.0, &l.basis.1);
        if a.ambient_dim() != 3 || b.ambient_dim() != 3 || a == b {
            on_line = false;
            continue;
        }
        // the stored basis must be the canonical one derived from the
        // assigned points, so every certificate has a unique representation
        match canonical_witness_line(&cert.image, l.assigned.clone()) {
            Ok(expected) => {
                if expected.basis != l.basis {
                    canonical = false;
                }
            }
            Err(_) => canonical = false,
        }
        let pb = cert.surface.pullback_line(a, b);
        if pb.is_zero() {
            off_surface = false;
            continue;
        }
        let mut params = Vec::with_capacity(l.assigned.len());
        for &k in &l.assigned {
            match line_parameter(a, b, cert.image.point(k)) {
                Some(st) => params.push(st),
                None => on_line = false,
            }
        }
        if params.len() != l.assigned.len() {
            continue;
        }
        let mut distinct = true;
        for x in 0..params.len() {
            for y in x + 1..params.len() {
                let (s1, t1) = &params[x];
                let (s2, t2) = &params[y];
                if s1.mul(t2).sub(&s2.mul(t1)).is_zero() {
                    distinct = false;
                }
            }
        }
        if !distinct {
            on_line = false;
            continue;
        }
        let product = BinaryForm::from_roots(field, &params);
        if !pb.proportional_to(&product) {
            exact = false;
        }
    }
    (canonical, on_line, off_surface, exact)
}

fn run_checks(cert: &GeprofiCertificate) -> Vec<TranscriptEntry> {
    let mut out = Vec::new();
    let field = cert.image.field();
    let shape_ok = cert.b >= 1
        && cert.d >= 1
        && cert.image.ambient_dim() == 3
        && cert.center.ambient_dim() == 4
        && cert.center.field() == field
        && cert.image.len() == cert.b * cert.d;
    out.push(entry("shape", shape_ok));
    if !shape_ok {
        return out;
    }
    let surface_ok = cert.surface.num_vars() == 4
        && cert.surface.degree() == cert.d
        && !cert.surface.is_zero()
        && cert.surface.field() == field;
    out.push(entry("surface_degree", surface_ok));
    if !surface_ok {
        return out;
    }
    out.push(entry(
        "surface_vanishes_on_image",
        cert.image
            .points()
            .iter()
            .all(|p| cert.surface.eval_point(p).is_zero()),
    ));

    match &cert.witness {
        CurveWitness::PairedLines { lines } => {
            out.push(entry("pairing_is_for_degree_two", cert.d == 2));
            let mut covered = HashSet::new();
            let partition_ok = lines.len() == cert.b
                && lines.iter().all(|l| {
                    l.assigned.len() == 2
                        && l.assigned
                            .iter()
                            .all(|&k| k < cert.image.len() && covered.insert(k))
                })
                && covered.len() == cert.image.len();
            out.push(entry("pairs_partition_image", partition_ok));
            if !partition_ok {
                return out;
            }
            let (canonical, on_line, off_surface, exact) = check_witness_lines(cert, lines, field);
            out.push(entry("line_bases_canonical", canonical));
            out.push(entry("assigned_points_on_lines", on_line));
            out.push(entry("lines_off_surface", off_surface));
            out.push(entry("line_intersections_exact", exact));
            let mut no_extra = true;
            for l in lines {
                if let Ok(line) = span(&[l.basis.0.clone(), l.basis.1.clone()]) {
                    for (k, p) in cert.image.points().iter().enumerate() {
                        if !l.assigned.contains(&k) && line.contains(p) {
                            no_extra = false;
                        }
                    }
                }
            }
            out.push(entry("no_third_point_on_matching_lines", no_extra));
        }
        CurveWitness::ConeLines { vertex, lines } => {
            let vertex_ok = vertex.ambient_dim() == 3
                && vertex.field() == field
                && cert.surface.eval_point(vertex).is_zero()
                && is_singular_point(&cert.surface, vertex);
            out.push(entry("surface_is_cone_with_vertex", vertex_ok));
            out.push(entry("vertex_not_in_image", !cert.image.contains(vertex)));
            let mut covered = HashSet::new();
            let cover_ok = lines.len() == cert.b
                && lines.iter().all(|l| {
                    l.assigned.len() == cert.d
                        && l.assigned
                            .iter()
                            .all(|&k| k < cert.image.len() && covered.insert(k))
                })
                && covered.len() == cert.image.len();
            out.push(entry("lines_partition_image", cover_ok));
            if !cover_ok {
                return out;
            }
            let (canonical, on_line, off_surface, exact) = check_witness_lines(cert, lines, field);
            out.push(entry("line_bases_canonical", canonical));
            out.push(entry("assigned_points_on_lines", on_line));
            out.push(entry("lines_off_surface", off_surface));
            out.push(entry("line_intersections_exact", exact));
        }
        CurveWitness::ParamCurve { curve, params } => {
            let curve_ok = curve.ambient_dim() == 3
                && curve.degree() == cert.b
                && curve.field() == field
                && RationalCurve::new(curve.forms().to_vec()).is_ok();
            out.push(entry("curve_shape", curve_ok));
            if !curve_ok {
                return out;
            }
            out.push(entry(
                "parameters_canonical",
                params.iter().all(|(s, t)| is_canonical_parameter(s, t)),
            ));
            let mut distinct = params.len() == cert.image.len();
            for i in 0..params.len() {
                for j in i + 1..params.len() {
                    let (s1, t1) = &params[i];
                    let (s2, t2) = &params[j];
                    if s1.mul(t2).sub(&s2.mul(t1)).is_zero() {
                        distinct = false;
                    }
                }
            }
            out.push(entry("parameters_distinct", distinct));
            if !distinct {
                return out;
            }
            let mut on_curve = true;
            for (k, (s, t)) in params.iter().enumerate() {
                match curve.eval(s, t) {
                    Ok(p) if p == *cert.image.point(k) => {}
                    _ => on_curve = false,
                }
            }
            out.push(entry("parameters_match_image", on_curve));
            let pb = cert.surface.pullback_curve(curve);
            let factor_ok =
                !pb.is_zero() && pb.proportional_to(&BinaryForm::from_roots(field, params));
            out.push(entry("pullback_factors_into_parameters", factor_ok));
        }
    }
    out
}

/// Re-runs every certificate invariant from raw data. The stored transcript
/// must match the recomputed checks; `first_failure` names the first failing
/// check.
pub fn verify_certificate(cert: &GeprofiCertificate) -> VerifyOutcome {
    let mut checks = run_checks(cert);
    let consistent = cert.transcript == checks;
    checks.push(entry("transcript_consistent", consistent));
    let first_failure = checks.iter().find(|e| !e.status).map(|e| e.check.clone());
    VerifyOutcome {
        ok: first_failure.is_none(),
        transcript: checks,
        first_failure,
    }
}

/// Hypergrid witness found by the census.
#[derive(Clone, Debug)]
pub struct HypergridWitness {
    pub lines: Vec<Vec<usize>>,
    pub planes: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialityVerdict {
    TrivialWitnessFound,
    NoEvidence,
    Inconclusive,
}

/// Census of collinear and coplanar structure relative to a claimed (b, d)
/// factorization.
#[derive(Clone, Debug)]
pub struct TrivialityReport {
    pub collinear_families: Vec<Vec<usize>>,
    pub coplanar_families: Vec<Vec<usize>>,
    pub hypergrid: Option<HypergridWitness>,
    pub verdict: TrivialityVerdict,
}

/// Indices of the points annihilated by every dual equation of a flat.
fn members_by_duals(cfg: &PointConfig, flat: &Flat) -> Vec<usize> {
    let duals = flat.dual_equations();
    (0..cfg.len())
        .filter(|&k| {
            let coords = cfg.point(k).coords();
            (0..duals.rows()).all(|r| {
                let mut acc = cfg.field().zero();
                for (c, x) in duals.row(r).iter().zip(coords) {
                    acc = acc.add(&c.mul(x));
                }
                acc.is_zero()
            })
        })
        .collect()
}

fn maximal_collinear(cfg: &PointConfig) -> Vec<Vec<usize>> {
    let n = cfg.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if out.iter().any(|f| f.contains(&i) && f.contains(&j)) {
                continue;
            }
            let Ok(line) = span(&[cfg.point(i).clone(), cfg.point(j).clone()]) else {
                continue;
            };
            let members = members_by_duals(cfg, &line);
            if members.len() >= 3 && !out.contains(&members) {
                out.push(members);
            }
        }
    }
    out.sort();
    out
}

fn maximal_coplanar(cfg: &PointConfig) -> Vec<Vec<usize>> {
    let n = cfg.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if out
                    .iter()
                    .any(|f| f.contains(&i) && f.contains(&j) && f.contains(&k))
                {
                    continue;
                }
                let pts = [
                    cfg.point(i).clone(),
                    cfg.point(j).clone(),
                    cfg.point(k).clone(),
                ];
                let Ok(flat) = span(&pts) else { continue };
                if flat.dim() != 2 {
                    continue; // collinear triple, counted by the line census
                }
                let members = members_by_duals(cfg, &flat);
                if members.len() >= 4 && !out.contains(&members) {
                    out.push(members);
                }
            }
        }
    }
    out.sort();
    out
}

fn subsets_of(set: &[usize], k: usize, out: &mut Vec<Vec<usize>>) {
    let mut buf = Vec::with_capacity(k);
    fn rec(set: &[usize], k: usize, start: usize, buf: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if buf.len() == k {
            out.push(buf.clone());
            return;
        }
        for i in start..set.len() {
            if set.len() - i < k - buf.len() {
                break;
            }
            buf.push(set[i]);
            rec(set, k, i + 1, buf, out);
            buf.pop();
        }
    }
    rec(set, k, 0, &mut buf, out);
}

/// Candidate plane parts: b-subsets spanning a flat of dimension <= 2.
fn plane_candidates(cfg: &PointConfig, b: usize) -> Vec<Vec<usize>> {
    let n = cfg.len();
    let mut cands: Vec<Vec<usize>> = Vec::new();
    let mut push = |s: Vec<usize>| {
        if !cands.contains(&s) {
            cands.push(s);
        }
    };
    if b <= 3 {
        // every b-subset of rank <= 3 qualifies
        let all: Vec<usize> = (0..n).collect();
        let mut subs = Vec::new();
        subsets_of(&all, b, &mut subs);
        for s in subs {
            let pts: Vec<ProjPoint> = s.iter().map(|&i| cfg.point(i).clone()).collect();
            if span(&pts).map(|f| f.dim() <= 2).unwrap_or(false) {
                push(s);
            }
        }
        return cands;
    }
    for fam in maximal_coplanar(cfg)
        .into_iter()
        .chain(maximal_collinear(cfg))
    {
        if fam.len() < b {
            continue;
        }
        let mut subs = Vec::new();
        subsets_of(&fam, b, &mut subs);
        for s in subs {
            push(s);
        }
    }
    cands
}

fn exact_cover(
    n: usize,
    parts: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    covered: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if found.len() >= limit {
        return;
    }
    let Some(first) = covered.iter().position(|c| !c) else {
        found.push(chosen.clone());
        return;
    };
    for (pi, part) in parts.iter().enumerate() {
        if !part.contains(&first) {
            continue;
        }
        if part.iter().any(|&x| covered[x]) {
            continue;
        }
        for &x in part {
            covered[x] = true;
        }
        chosen.push(pi);
        exact_cover(n, parts, chosen, covered, found, limit);
        chosen.pop();
        for &x in part {
            covered[x] = false;
        }
    }
}

/// Structure census for a claimed (b, d) factorization: reports maximal
/// collinear and coplanar families, searches for a hypergrid witness (b
/// skew lines of d points each, d plane sets of b points each, with the
/// line-plane incidence verified), and classifies the configuration.
pub fn triviality_census(cfg: &PointConfig, b: usize, d: usize) -> Result<TrivialityReport> {
    if cfg.len() != b * d {
        return Err(Error::Precondition(format!(
            "census expects exactly b*d = {} points, got {}",
            b * d,
            cfg.len()
        )));
    }
    let collinear = maximal_collinear(cfg);
    let coplanar = maximal_coplanar(cfg);

    // the surface side of any curve-times-planes factorization partitions
    // the configuration into d parts of b points, each inside a plane
    let plane_parts = plane_candidates(cfg, b);
    let mut plane_partitions = Vec::new();
    let mut chosen = Vec::new();
    let mut covered = vec![false; cfg.len()];
    exact_cover(
        cfg.len(),
        &plane_parts,
        &mut chosen,
        &mut covered,
        &mut plane_partitions,
        64,
    );

    if plane_partitions.is_empty() {
        return Ok(TrivialityReport {
            collinear_families: collinear,
            coplanar_families: coplanar,
            hypergrid: None,
            verdict: TrivialityVerdict::NoEvidence,
        });
    }

    // hypergrid search over each plane partition
    for partition in &plane_partitions {
        let planes: Vec<Vec<usize>> = partition
            .iter()
            .map(|&pi| plane_parts[pi].clone())
            .collect();
        if planes.len() != d {
            continue;
        }
        if let Some(witness) = hypergrid_witness(cfg, b, d, &planes) {
            return Ok(TrivialityReport {
                collinear_families: collinear,
                coplanar_families: coplanar,
                hypergrid: Some(witness),
                verdict: TrivialityVerdict::TrivialWitnessFound,
            });
        }
    }
    Ok(TrivialityReport {
        collinear_families: collinear,
        coplanar_families: coplanar,
        hypergrid: None,
        verdict: TrivialityVerdict::Inconclusive,
    })
}

fn hypergrid_witness(
    cfg: &PointConfig,
    b: usize,
    d: usize,
    planes: &[Vec<usize>],
) -> Option<HypergridWitness> {
    // plane flats must be honest planes with pairwise nondegenerate unions
    let mut plane_flats = Vec::with_capacity(d);
    for part in planes {
        let pts: Vec<ProjPoint> = part.iter().map(|&i| cfg.point(i).clone()).collect();
        let flat = span(&pts).ok()?;
        if flat.dim() != 2 {
            return None;
        }
        plane_flats.push(flat);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut rows: Vec<Vec<FieldElement>> = plane_flats[i]
                .basis()
                .iter()
                .map(|p| p.coords().to_vec())
                .collect();
            rows.extend(plane_flats[j].basis().iter().map(|p| p.coords().to_vec()));
            let m = Matrix::from_rows(cfg.field(), rows).ok()?;
            if m.rank() != cfg.ambient_dim() + 1 {
                return None;
            }
        }
    }
    // candidate lines: d-subsets, one point per plane, collinear, meeting
    // each plane flat exactly in the assigned point
    let mut line_cands: Vec<(Vec<usize>, Flat)> = Vec::new();
    let mut idx = vec![0usize; d];
    'cand: loop {
        let pick: Vec<usize> = (0..d).map(|pi| planes[pi][idx[pi]]).collect();
        let pts: Vec<ProjPoint> = pick.iter().map(|&i| cfg.point(i).clone()).collect();
        if let Ok(flat) = span(&pts) {
            if flat.dim() == 1 {
                let mut ok = true;
                for (pi, plane) in plane_flats.iter().enumerate() {
                    match common_point(&[flat.clone(), plane.clone()]) {
                        Ok(FlatMeet::Point(q)) if q == *cfg.point(pick[pi]) => {}
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    let mut sorted = pick.clone();
                    sorted.sort_unstable();
                    line_cands.push((sorted, flat));
                }
            }
        }
        // odometer over the plane parts
        let mut k = d;
        loop {
            if k == 0 {
                break 'cand;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < planes[k].len() {
                break;
            }
            idx[k] = 0;
            if k == 0 {
                break 'cand;
            }
        }
    }
    // exact cover by b pairwise skew lines
    fn cover_lines(
        cfg: &PointConfig,
        cands: &[(Vec<usize>, Flat)],
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        b: usize,
    ) -> bool {
        let Some(first) = covered.iter().position(|c| !c) else {
            return chosen.len() == b;
        };
        for (ci, (pts, flat)) in cands.iter().enumerate() {
            if !pts.contains(&first) || pts.iter().any(|&x| covered[x]) {
                continue;
            }
            // skew against already chosen lines
            let mut skew = true;
            for &prev in chosen.iter() {
                let mut rows: Vec<Vec<FieldElement>> = cands[prev]
                    .1
                    .basis()
                    .iter()
                    .map(|p| p.coords().to_vec())
                    .collect();
                rows.extend(flat.basis().iter().map(|p| p.coords().to_vec()));
                let Ok(m) = Matrix::from_rows(cfg.field(), rows) else {
                    skew = false;
                    break;
                };
                if m.rank() != 4 {
                    skew = false;
                    break;
                }
            }
            if !skew {
                continue;
            }
            for &x in pts {
                covered[x] = true;
            }
            chosen.push(ci);
            if cover_lines(cfg, cands, covered, chosen, b) {
                return true;
            }
            chosen.pop();
            for &x in pts {
                covered[x] = false;
            }
        }
        false
    }
    let mut covered = vec![false; cfg.len()];
    let mut chosen = Vec::new();
    if cover_lines(cfg, &line_cands, &mut covered, &mut chosen, b) {
        Some(HypergridWitness {
            lines: chosen.iter().map(|&ci| line_cands[ci].0.clone()).collect(),
            planes: planes.to_vec(),
        })
    } else {
        None
    }
}

/// Tests whether any of several sampled projections of a seven-point
/// nondegenerate configuration could lie on a twisted cubic, probing the
/// quadric system of the image: the cubic case forces exactly a net of
/// quadrics whose base locus is one-dimensional, which the finite-field
/// oracle distinguishes from the finite base locus of the generic case.
pub fn no_twisted_cubic_check(cfg: &PointConfig, rs: &mut RandomSource) -> Result<bool> {
    if cfg.len() != 7 {
        return Err(Error::Precondition(
            "the twisted-cubic probe needs seven points".into(),
        ));
    }
    if span(cfg.points())?.dim() != 4 {
        return Err(Error::Precondition("configuration must span P^4".into()));
    }
    let mut centers_done = 0;
    let mut guard = 0;
    while centers_done < CENTER_RETRIES {
        guard += 1;
        if guard > 50 {
            return Err(Error::Genericity(
                "could not sample injective projections".into(),
            ));
        }
        let center = sample_center(rs, cfg);
        let projection = project(cfg, &center)?;
        if projection.collided {
            continue;
        }
        centers_done += 1;
        let image = projection.image;
        // three collinear image points rule out membership immediately
        if maximal_collinear(&image).iter().any(|f| f.len() >= 3) {
            continue;
        }
        let slice = ideal_slice(&image, 2);
        if slice.dim() != 3 {
            // a twisted cubic would force exactly a net
            continue;
        }
        if net_base_locus_is_curve(&slice)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Distinguishes a one-dimensional base locus from a finite one by counting
/// rational points of the reduced net over several primes. A finite (2,2,2)
/// base locus has at most 8 geometric points, so a good prime shows at most
/// 8 rational ones, while a curve carries on the order of p at every good
/// prime; bad reduction only inflates individual counts, so the minimum over
/// the prime ladder is decisive.
fn net_base_locus_is_curve(slice: &FormSpace) -> Result<bool> {
    for p in [31u64, 37, 41, 101] {
        let reduced: std::result::Result<Vec<Form>, Error> = slice
            .forms()
            .iter()
            .map(|f| oracle::reduce_form(&f.primitive(), p))
            .collect();
        let Ok(forms) = reduced else {
            continue; // cannot happen for primitive forms; defensive
        };
        if forms.iter().any(|f| f.is_zero()) {
            continue;
        }
        let space = oracle::enumerate(p, 3)?;
        if oracle::variety_count(&space, &forms)? <= 8 {
            return Ok(false);
        }
    }
    // every probed prime saw more points than a finite locus allows
    Ok(true)
}

/// Reduces a certificate's witness data mod p and enumerates the rational
/// points of its curve witness, for the independent full-intersection
/// recount. Degenerate reductions (collapsing points, lines, or the curve)
/// are reported as reduction errors so the caller can retry another prime.
pub fn certificate_oracle_inputs(cert: &GeprofiCertificate, p: u64) -> Result<(PointConfig, Form)> {
    let surface = oracle::reduce_form(&cert.surface, p)?;
    if surface.is_zero() {
        return Err(Error::Reduction {
            p,
            reason: "surface witness vanishes mod p".into(),
        });
    }
    let reduced_image = cert
        .image
        .points()
        .iter()
        .map(|pt| oracle::reduce_point(pt, p))
        .collect::<Result<Vec<_>>>()?;
    let mut seen = HashSet::new();
    if !reduced_image.iter().all(|pt| seen.insert(pt.clone())) {
        return Err(Error::Reduction {
            p,
            reason: "image points collide mod p".into(),
        });
    }
    let mut pts: Vec<ProjPoint> = Vec::new();
    let mut push = {
        let mut seen = HashSet::new();
        move |out: &mut Vec<ProjPoint>, q: ProjPoint| {
            if seen.insert(q.clone()) {
                out.push(q);
            }
        }
    };
    match &cert.witness {
        CurveWitness::PairedLines { lines } | CurveWitness::ConeLines { lines, .. } => {
            for l in lines {
                let a = oracle::reduce_point(&l.basis.0, p)?;
                let b = oracle::reduce_point(&l.basis.1, p)?;
                for q in oracle::line_points_mod_p(&a, &b, p)? {
                    push(&mut pts, q);
                }
            }
        }
        CurveWitness::ParamCurve { curve, .. } => {
            let reduced = oracle::reduce_curve(curve, p)?;
            for q in oracle::curve_points_mod_p(&reduced, p)? {
                push(&mut pts, q);
            }
        }
    }
    Ok((PointConfig::new(pts)?, surface))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{self, rnc_points_sampled};
    use crate::field::Field;
    use crate::ideals::{hilbert, MonomialBasis};

    fn qpt(coords: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(Field::Q, coords).unwrap()
    }

    fn random_cfg(seed: u64, n: usize) -> PointConfig {
        let field = Field::Q;
        let mut rs = RandomSource::new(seed);
        PointConfig::new(
            (0..n)
                .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn lgp_examples() {
        let mut pts: Vec<ProjPoint> = (0..5)
            .map(|i| {
                let mut c = [0i64; 5];
                c[i] = 1;
                qpt(&c)
            })
            .collect();
        pts.push(qpt(&[1, 1, 1, 1, 1]));
        let cfg = PointConfig::new(pts).unwrap();
        assert!(is_lgp(&cfg).is_lgp());

        let (ten, _) = constructions::example_3_2();
        match is_lgp(&ten) {
            LgpOutcome::Violation(w) => {
                // minimal witness: four coplanar points (no three collinear)
                assert_eq!(w.len(), 4);
                let sub = ten.subset(&w).unwrap();
                assert!(span(sub.points()).unwrap().dim() < w.len() - 1);
            }
            LgpOutcome::Lgp => panic!("the ten-point example is not in LGP"),
        }

        let mut rs = RandomSource::new(500);
        let (rnc, _, _) = rnc_points_sampled(12, &mut rs).unwrap();
        assert!(is_lgp(&rnc).is_lgp());
    }

    #[test]
    fn lgp_invariance() {
        let cfg = random_cfg(21, 7);
        assert!(is_lgp(&cfg).is_lgp());
        let mut rs = RandomSource::new(22);
        let field = Field::Q;
        let m = loop {
            let cand = Matrix::new(5, 5, field, rs.sample(&field, 25).unwrap()).unwrap();
            if cand.rank() == 5 {
                break cand;
            }
        };
        assert!(is_lgp(&cfg.apply_matrix(&m).unwrap()).is_lgp());
        // reorder
        let perm: Vec<usize> = vec![6, 2, 4, 0, 1, 5, 3];
        assert!(is_lgp(&cfg.subset(&perm).unwrap()).is_lgp());
    }

    #[test]
    fn pair_partition_four_points_on_smooth_quadric() {
        // x0 x3 - x1 x2 contains (1:0:0:0), (0:0:0:1), (0:1:0:0), (0:0:1:0)
        let field = Field::Q;
        let basis = MonomialBasis::new(4, 2);
        let mut coeffs = vec![field.zero(); basis.len()];
        coeffs[basis.index_of(&[1, 0, 0, 1]).unwrap()] = field.one();
        coeffs[basis.index_of(&[0, 1, 1, 0]).unwrap()] = field.from_i64(-1);
        let q = Form::new(4, 2, coeffs).unwrap();
        let image = PointConfig::new(vec![
            qpt(&[1, 0, 0, 0]),
            qpt(&[0, 1, 0, 0]),
            qpt(&[0, 0, 1, 0]),
            qpt(&[0, 0, 0, 1]),
        ])
        .unwrap();
        let pairs = pair_partition(&image, &q).unwrap().unwrap();
        assert_eq!(pairs.len(), 2);
        for (i, j) in pairs {
            assert!(!q.pullback_line(image.point(i), image.point(j)).is_zero());
        }
    }

    #[test]
    fn pair_partition_two_plane_case() {
        // x0 x1 = 0: planes x0 = 0 and x1 = 0; points equidistributed
        let field = Field::Q;
        let basis = MonomialBasis::new(4, 2);
        let mut coeffs = vec![field.zero(); basis.len()];
        coeffs[basis.index_of(&[1, 1, 0, 0]).unwrap()] = field.one();
        let q = Form::new(4, 2, coeffs).unwrap();
        let image = PointConfig::new(vec![
            qpt(&[0, 1, 2, 3]),
            qpt(&[0, 1, 5, 7]),
            qpt(&[0, 2, 9, 1]),
            qpt(&[1, 0, 4, 2]),
            qpt(&[1, 0, 8, 3]),
            qpt(&[3, 0, 1, 1]),
        ])
        .unwrap();
        let pairs = pair_partition(&image, &q).unwrap().unwrap();
        assert_eq!(pairs.len(), 3);
        for (i, j) in pairs {
            // cross-plane pairs
            let a = image.point(i).coords();
            let b = image.point(j).coords();
            assert!(a[0].is_zero() != b[0].is_zero());
        }
    }

    #[test]
    fn pair_partition_rejects_vertex_points() {
        // cone x1 x2 - x3^2 with vertex (1:0:0:0) among the points
        let field = Field::Q;
        let basis = MonomialBasis::new(4, 2);
        let mut coeffs = vec![field.zero(); basis.len()];
        coeffs[basis.index_of(&[0, 1, 1, 0]).unwrap()] = field.one();
        coeffs[basis.index_of(&[0, 0, 0, 2]).unwrap()] = field.from_i64(-1);
        let q = Form::new(4, 2, coeffs).unwrap();
        let image = PointConfig::new(vec![
            qpt(&[1, 0, 0, 0]), // vertex
            qpt(&[0, 1, 0, 0]),
            qpt(&[0, 0, 1, 0]),
            qpt(&[1, 1, 1, 1]),
        ])
        .unwrap();
        assert!(pair_partition(&image, &q).is_err());
    }

    #[test]
    fn certify_b2_on_eight_general_points() {
        let cfg = random_cfg(1009, 8);
        assert!(is_lgp(&cfg).is_lgp());
        let mut rs = RandomSource::new(4242);
        let cert = certify_b2(&cfg, &mut rs)
            .unwrap()
            .expect("eight general points certify");
        assert_eq!((cert.b, cert.d), (4, 2));
        let outcome = verify_certificate(&cert);
        assert!(outcome.ok, "failure: {:?}", outcome.first_failure);
    }

    #[test]
    fn certify_b2_on_rnc_points() {
        let mut rs = RandomSource::new(7001);
        let (cfg, _, _) = rnc_points_sampled(10, &mut rs).unwrap();
        assert_eq!(hilbert(&cfg).unwrap().h_vector, vec![1, 4, 4, 1]);
        let cert = certify_b2(&cfg, &mut rs)
            .unwrap()
            .expect("rnc points certify");
        assert_eq!((cert.b, cert.d), (5, 2));
        assert!(verify_certificate(&cert).ok);
    }

    #[test]
    fn certify_b2_absent_for_random_ten_points() {
        let cfg = random_cfg(33, 10);
        assert!(is_lgp(&cfg).is_lgp());
        assert_eq!(hilbert(&cfg).unwrap().h_vector, vec![1, 4, 5]);
        let mut rs = RandomSource::new(34);
        assert!(certify_b2(&cfg, &mut rs).unwrap().is_none());
    }

    #[test]
    fn certify_b2_on_the_ten_point_example() {
        let (cfg, _) = constructions::example_3_2();
        let mut rs = RandomSource::new(11);
        let cert = certify_b2(&cfg, &mut rs)
            .unwrap()
            .expect("unexpected cone certifies");
        assert_eq!((cert.b, cert.d), (5, 2));
        assert!(verify_certificate(&cert).ok);
    }

    #[test]
    fn certify_cone_on_concurrent_lines() {
        let mut rs = RandomSource::new(61);
        let (cfg, record) = constructions::concurrent_lines(5, &[2, 2, 2, 2, 2], &mut rs).unwrap();
        let cert = certify_cone_construction(&cfg, &record, &mut rs)
            .unwrap()
            .expect("concurrent lines certify");
        assert_eq!((cert.b, cert.d), (5, 2));
        assert!(verify_certificate(&cert).ok);
        // irreducible cone: symmetric rank of the lifted quadric is 3
        assert_eq!(quadric_matrix(&cert.surface).rank(), 3);
    }

    #[test]
    fn certify_cone_on_grid_extension() {
        let mut rs = RandomSource::new(71);
        let (cfg, record) = constructions::grid_extension(3, &mut rs).unwrap();
        let cert = certify_cone_construction(&cfg, &record, &mut rs)
            .unwrap()
            .expect("grid extension certifies");
        assert_eq!((cert.b, cert.d), (5, 3));
        assert!(verify_certificate(&cert).ok);
    }

    #[test]
    fn certify_on_curve_examples() {
        let field = Field::Q;
        let mut rs = RandomSource::new(81);
        let (_, _, curve) = rnc_points_sampled(8, &mut rs).unwrap();
        let params: Vec<(FieldElement, FieldElement)> = (0..8)
            .map(|k| (field.one(), field.from_i64(k - 3)))
            .collect();
        let cert = certify_on_curve(&curve, &params, 2, &mut rs)
            .unwrap()
            .expect("quartic curve certifies (4,2)");
        assert_eq!((cert.b, cert.d), (4, 2));
        assert!(verify_certificate(&cert).ok);

        let mut dup = params.clone();
        dup[1] = dup[0].clone();
        assert!(certify_on_curve(&curve, &dup, 2, &mut rs).is_err());
    }

    #[test]
    fn tampered_certificates_fail() {
        let cfg = random_cfg(1009, 8);
        let mut rs = RandomSource::new(4242);
        let cert = certify_b2(&cfg, &mut rs).unwrap().unwrap();
        assert!(verify_certificate(&cert).ok);

        // perturb an image point
        let mut bad = cert.clone();
        let mut pts: Vec<ProjPoint> = bad.image.points().to_vec();
        let mut coords = pts[0].coords().to_vec();
        coords[3] = coords[3].add(&Field::Q.one());
        pts[0] = ProjPoint::new(coords).unwrap();
        bad.image = PointConfig::new(pts).unwrap();
        let outcome = verify_certificate(&bad);
        assert!(!outcome.ok);
        assert_eq!(
            outcome.first_failure.as_deref(),
            Some("surface_vanishes_on_image")
        );

        // swap a matched pair across lines: the stored bases no longer
        // contain the swapped points
        let mut bad = cert.clone();
        if let CurveWitness::PairedLines { lines } = &mut bad.witness {
            let x = lines[0].assigned[1];
            let y = lines[1].assigned[1];
            lines[0].assigned[1] = y;
            lines[1].assigned[1] = x;
        }
        let outcome = verify_certificate(&bad);
        assert!(!outcome.ok);
        assert_eq!(
            outcome.first_failure.as_deref(),
            Some("line_bases_canonical")
        );
    }

    #[test]
    fn census_examples() {
        let mut rs = RandomSource::new(91);
        let (grid, _) = constructions::hypergrid(4, 3, &mut rs).unwrap();
        let report = triviality_census(&grid, 4, 3).unwrap();
        assert_eq!(report.verdict, TrivialityVerdict::TrivialWitnessFound);
        let witness = report.hypergrid.unwrap();
        assert_eq!(witness.lines.len(), 4);
        assert_eq!(witness.planes.len(), 3);

        let eight = random_cfg(1009, 8);
        let report = triviality_census(&eight, 4, 2).unwrap();
        assert_eq!(report.verdict, TrivialityVerdict::NoEvidence);

        let (ge, _) = constructions::grid_extension(3, &mut rs).unwrap();
        let report = triviality_census(&ge, 5, 3).unwrap();
        assert_eq!(report.verdict, TrivialityVerdict::NoEvidence);
    }

    #[test]
    fn census_inconclusive_on_a_perturbed_hypergrid() {
        // move one hypergrid point within its plane but off its line: plane
        // partitions survive (any three points are coplanar when b = 3) but
        // only two collinear triples remain, so no grid witness can cover
        // the nine points and nothing rules the structure out either
        let mut rs = RandomSource::new(120);
        let (cfg, record) = constructions::hypergrid(3, 3, &mut rs).unwrap();
        let plane = &record.flats_with_role("surface_plane")[0].flat;
        let line = &record.flats_with_role("curve_line")[0].flat;
        let field = cfg.field();
        let moved = loop {
            let cs: Vec<FieldElement> = (0..3).map(|_| rs.sample_one(&field)).collect();
            let mut acc = vec![field.zero(); 5];
            for (c, bp) in cs.iter().zip(plane.basis()) {
                for (k, x) in bp.coords().iter().enumerate() {
                    acc[k] = acc[k].add(&c.mul(x));
                }
            }
            let Ok(p) = ProjPoint::new(acc) else { continue };
            if !line.contains(&p) && !cfg.contains(&p) {
                break p;
            }
        };
        let mut pts: Vec<ProjPoint> = cfg.points().to_vec();
        let victim = record.flats_with_role("surface_plane")[0].points[0];
        pts[victim] = moved;
        let perturbed = PointConfig::new(pts).unwrap();
        let report = triviality_census(&perturbed, 3, 3).unwrap();
        assert_eq!(report.verdict, TrivialityVerdict::Inconclusive);
    }

    #[test]
    fn no_twisted_cubic_on_random_points() {
        let cfg = random_cfg(555, 7);
        let mut rs = RandomSource::new(556);
        assert!(no_twisted_cubic_check(&cfg, &mut rs).unwrap());
    }

    #[test]
    fn no_twisted_cubic_with_three_collinear_points() {
        // three collinear points survive every projection, and finite
        // subsets of twisted cubics are in general position, so the check
        // passes through its collinearity branch
        let field = Field::Q;
        let mut rs = RandomSource::new(808);
        let cfg = loop {
            let a = ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap();
            let b = ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap();
            let mid = ProjPoint::new(
                a.coords()
                    .iter()
                    .zip(b.coords())
                    .map(|(x, y)| x.add(y))
                    .collect(),
            )
            .unwrap();
            let mut pts = vec![a, b, mid];
            for _ in 0..4 {
                pts.push(ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap());
            }
            if let Ok(cfg) = PointConfig::new(pts) {
                if span(cfg.points()).unwrap().dim() == 4 {
                    break cfg;
                }
            }
        };
        assert!(no_twisted_cubic_check(&cfg, &mut rs).unwrap());
    }

    #[test]
    fn oracle_recounts_at_the_default_oracle_prime() {
        // reduce a (4,2) and a (5,3) certificate mod 101 and recount;
        // inadmissible reductions fall through to the next seed
        let mut done_42 = false;
        for seed in 0..10u64 {
            let cfg = random_cfg(3000 + seed, 8);
            let mut rs = RandomSource::new(4000 + seed);
            let Some(cert) = certify_b2(&cfg, &mut rs).unwrap() else {
                continue;
            };
            let Ok((pts, surface)) = certificate_oracle_inputs(&cert, 101) else {
                continue;
            };
            assert_eq!(oracle::full_intersection_count(&pts, &surface).unwrap(), 8);
            done_42 = true;
            break;
        }
        assert!(done_42);

        let mut done_53 = false;
        for seed in 0..10u64 {
            let mut rs = RandomSource::new(5000 + seed);
            let Ok((cfg, record)) = constructions::grid_extension(3, &mut rs) else {
                continue;
            };
            let Some(cert) = certify_cone_construction(&cfg, &record, &mut rs).unwrap() else {
                continue;
            };
            let Ok((pts, surface)) = certificate_oracle_inputs(&cert, 101) else {
                continue;
            };
            assert_eq!(oracle::full_intersection_count(&pts, &surface).unwrap(), 15);
            done_53 = true;
            break;
        }
        assert!(done_53);
    }

    #[test]
    fn no_twisted_cubic_on_rnc_sample() {
        // seven points on a rational normal quartic project onto the
        // projected quartic, never a cubic
        let mut rs = RandomSource::new(557);
        let (cfg, _, _) = rnc_points_sampled(7, &mut rs).unwrap();
        assert!(no_twisted_cubic_check(&cfg, &mut rs).unwrap());
    }

    #[test]
    fn oracle_cross_check_a_certificate() {
        let cfg = random_cfg(1009, 8);
        let mut rs = RandomSource::new(4242);
        let cert = certify_b2(&cfg, &mut rs).unwrap().unwrap();
        let (curve_pts, surface) = certificate_oracle_inputs(&cert, 1013).unwrap();
        assert_eq!(
            oracle::full_intersection_count(&curve_pts, &surface).unwrap(),
            cert.b * cert.d
        );
    }
}
