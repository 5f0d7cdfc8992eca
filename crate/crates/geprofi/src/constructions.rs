//! Generators for the point configurations studied by this crate. Every
//! generator verifies its own genericity hypotheses (spans, distinctness,
//! non-coplanarity) and resamples on failure rather than trusting
//! randomness; the returned record carries the incidence structure used to
//! build the configuration and re-verifies exactly.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::field::{Field, FieldElement, RandomSource};
use crate::ideals::{eval_matrix, hilbert, ideal_slice, Form};
use crate::oracle;
use crate::projgeom::{
    common_point, segre_p1xp2, span, Flat, FlatMeet, PointConfig, ProjPoint, RationalCurve,
};

const RESAMPLE_BUDGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    Example32,
    ConcurrentLines,
    Hypergrid,
    GridExtension,
    RncPoints,
    TrivialPlanesLines,
    LiaisonFf,
}

impl ConstructionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ConstructionKind::Example32 => "example_3_2",
            ConstructionKind::ConcurrentLines => "concurrent_lines",
            ConstructionKind::Hypergrid => "hypergrid",
            ConstructionKind::GridExtension => "grid_extension",
            ConstructionKind::RncPoints => "rnc_points",
            ConstructionKind::TrivialPlanesLines => "trivial_planes_lines",
            ConstructionKind::LiaisonFf => "liaison_ff",
        }
    }

    pub fn from_name(s: &str) -> Option<ConstructionKind> {
        [
            ConstructionKind::Example32,
            ConstructionKind::ConcurrentLines,
            ConstructionKind::Hypergrid,
            ConstructionKind::GridExtension,
            ConstructionKind::RncPoints,
            ConstructionKind::TrivialPlanesLines,
            ConstructionKind::LiaisonFf,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

/// A flat of the incidence structure together with the configuration points
/// assigned to it.
#[derive(Clone, Debug)]
pub struct RecordFlat {
    pub label: String,
    /// `curve_line` flats form the degree-b curve of the downstream
    /// certificate; other roles are structural.
    pub role: String,
    pub flat: Flat,
    pub points: Vec<usize>,
}

/// A form of the incidence structure with explicit vanishing assignments.
#[derive(Clone, Debug)]
pub struct RecordForm {
    pub label: String,
    pub form: Form,
    pub cfg_points: Vec<usize>,
    pub named_points: Vec<String>,
}

/// Provenance record: the incidence structure used to build a configuration.
#[derive(Clone, Debug)]
pub struct ConstructionRecord {
    pub kind: ConstructionKind,
    pub parameters: serde_json::Map<String, serde_json::Value>,
    pub named_points: Vec<(String, ProjPoint)>,
    pub flats: Vec<RecordFlat>,
    pub forms: Vec<RecordForm>,
    pub curve: Option<(RationalCurve, Vec<(FieldElement, FieldElement)>)>,
}

impl ConstructionRecord {
    fn new(kind: ConstructionKind) -> ConstructionRecord {
        ConstructionRecord {
            kind,
            parameters: serde_json::Map::new(),
            named_points: Vec::new(),
            flats: Vec::new(),
            forms: Vec::new(),
            curve: None,
        }
    }

    pub fn named_point(&self, name: &str) -> Option<&ProjPoint> {
        self.named_points
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
    }

    pub fn flats_with_role(&self, role: &str) -> Vec<&RecordFlat> {
        self.flats.iter().filter(|f| f.role == role).collect()
    }

    /// Re-verifies every recorded incidence exactly: each assigned point lies
    /// on its flat, each recorded form vanishes where claimed, and curve
    /// parameters reproduce their points.
    pub fn verify(&self, cfg: &PointConfig) -> Result<()> {
        for rf in &self.flats {
            for &i in &rf.points {
                if i >= cfg.len() || !rf.flat.contains(cfg.point(i)) {
                    return Err(Error::Precondition(format!(
                        "recorded incidence fails: point {i} not on {}",
                        rf.label
                    )));
                }
            }
        }
        for rform in &self.forms {
            for &i in &rform.cfg_points {
                if !rform.form.eval_point(cfg.point(i)).is_zero() {
                    return Err(Error::Precondition(format!(
                        "recorded form {} does not vanish at point {i}",
                        rform.label
                    )));
                }
            }
            for name in &rform.named_points {
                let p = self.named_point(name).ok_or_else(|| {
                    Error::Precondition(format!("record references unknown point {name}"))
                })?;
                if !rform.form.eval_point(p).is_zero() {
                    return Err(Error::Precondition(format!(
                        "recorded form {} does not vanish at named point {name}",
                        rform.label
                    )));
                }
            }
        }
        if let Some((curve, params)) = &self.curve {
            if params.len() != cfg.len() {
                return Err(Error::Precondition("curve parameter count mismatch".into()));
            }
            for (k, (s, t)) in params.iter().enumerate() {
                if curve.eval(s, t)? != *cfg.point(k) {
                    return Err(Error::Precondition(format!(
                        "curve parameter {k} does not reproduce its point"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn sample_point(rs: &mut RandomSource, field: &Field, n: usize) -> ProjPoint {
    loop {
        if let Ok(p) = ProjPoint::new(rs.sample(field, n).unwrap()) {
            return p;
        }
    }
}

fn sample_invertible(rs: &mut RandomSource, field: &Field, n: usize) -> Matrix {
    loop {
        let m = Matrix::new(n, n, *field, rs.sample(field, n * n).unwrap()).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

/// The ten explicit points whose five spanning lines are concurrent in
/// O = (1:1:1:1:1); h-vector (1,4,5).
pub fn example_3_2() -> (PointConfig, ConstructionRecord) {
    let field = Field::Q;
    let pt = |c: &[i64]| ProjPoint::from_i64(field, c).unwrap();
    let points = vec![
        pt(&[1, 0, 0, 0, 0]),
        pt(&[0, 1, 0, 0, 0]),
        pt(&[0, 0, 1, 0, 0]),
        pt(&[0, 0, 0, 1, 0]),
        pt(&[0, 0, 0, 0, 1]),
        pt(&[1, 1, 1, 1, 0]),
        pt(&[1, 1, 1, 0, 1]),
        pt(&[1, 1, 0, 1, 1]),
        pt(&[1, 0, 1, 1, 1]),
        pt(&[0, 1, 1, 1, 1]),
    ];
    let cfg = PointConfig::new(points).unwrap();
    let mut record = ConstructionRecord::new(ConstructionKind::Example32);
    record.named_points.push(("O".into(), pt(&[1, 1, 1, 1, 1])));
    for i in 0..5 {
        // line through P_{i+1} and P_{10-i}; both join in O
        let a = cfg.point(i).clone();
        let b = cfg.point(9 - i).clone();
        record.flats.push(RecordFlat {
            label: format!("l{}", i + 1),
            role: "curve_line".into(),
            flat: span(&[a, b]).unwrap(),
            points: vec![i, 9 - i],
        });
    }
    record.verify(&cfg).expect("fixed incidences");
    (cfg, record)
}

/// Closed-form quadric cone with vertex at `vertex` through the ten points
/// of [`example_3_2`]: coefficient of x_i x_j (i < j) is
/// (-1)^(i+j) (a_j - a_i)(a_m - a_l)(a_m - a_k)(a_l - a_k), with {k < l < m}
/// the complement of {i, j}.
pub fn example_3_2_cone(vertex: &ProjPoint) -> Result<Form> {
    if vertex.ambient_dim() != 4 || vertex.field() != Field::Q {
        return Err(Error::Shape(
            "vertex must be a rational point of P^4".into(),
        ));
    }
    let field = Field::Q;
    let a = vertex.coords();
    let basis = crate::ideals::MonomialBasis::new(5, 2);
    let mut coeffs = vec![field.zero(); basis.len()];
    for i in 0..5 {
        for j in (i + 1)..5 {
            let comp: Vec<usize> = (0..5).filter(|&v| v != i && v != j).collect();
            let (k, l, m) = (comp[0], comp[1], comp[2]);
            let val = a[j]
                .sub(&a[i])
                .mul(&a[m].sub(&a[l]))
                .mul(&a[m].sub(&a[k]))
                .mul(&a[l].sub(&a[k]));
            let val = if (i + j) % 2 == 0 { val } else { val.neg() };
            let mut e = vec![0u32; 5];
            e[i] += 1;
            e[j] += 1;
            let idx = basis.index_of(&e).expect("quadric monomial");
            coeffs[idx] = val;
        }
    }
    Form::new(5, 2, coeffs)
}

/// Points distributed on five lines through a common sampled point O, with
/// every four of the lines spanning P^4 (verified, resampled on failure).
pub fn concurrent_lines(
    num_lines: usize,
    distribution: &[usize],
    rs: &mut RandomSource,
) -> Result<(PointConfig, ConstructionRecord)> {
    if num_lines != 5 || distribution.len() != 5 {
        return Err(Error::Precondition(
            "construction uses exactly five lines".into(),
        ));
    }
    if distribution.iter().any(|&c| c == 0) {
        return Err(Error::Precondition(
            "every line must carry at least one point".into(),
        ));
    }
    let total: usize = distribution.iter().sum();
    if total % 2 != 0 {
        return Err(Error::Precondition("total point count must be even".into()));
    }
    let b = total / 2;
    if distribution.iter().any(|&c| c > b) {
        return Err(Error::Precondition(format!(
            "a line may carry at most {b} of the {total} points"
        )));
    }
    let field = Field::Q;
    'attempt: for _ in 0..RESAMPLE_BUDGET {
        let origin = sample_point(rs, &field, 5);
        let dirs: Vec<ProjPoint> = (0..5).map(|_| sample_point(rs, &field, 5)).collect();
        // every four lines must span P^4 (this also excludes three coplanar
        // lines and degenerate directions)
        for skip in 0..5 {
            let mut rows = vec![origin.coords().to_vec()];
            for (i, d) in dirs.iter().enumerate() {
                if i != skip {
                    rows.push(d.coords().to_vec());
                }
            }
            if Matrix::from_rows(field, rows)?.rank() != 5 {
                continue 'attempt;
            }
        }
        let mut points = Vec::with_capacity(total);
        let mut record = ConstructionRecord::new(ConstructionKind::ConcurrentLines);
        record.named_points.push(("O".into(), origin.clone()));
        record.parameters.insert(
            "distribution".into(),
            serde_json::Value::Array(
                distribution
                    .iter()
                    .map(|&c| serde_json::Value::from(c))
                    .collect(),
            ),
        );
        let mut seen = HashSet::new();
        for (i, &count) in distribution.iter().enumerate() {
            let line = span(&[origin.clone(), dirs[i].clone()])?;
            let mut assigned = Vec::with_capacity(count);
            let mut params = HashSet::new();
            for _ in 0..count {
                let mut tries = 0;
                let pt = loop {
                    tries += 1;
                    if tries > 32 {
                        continue 'attempt;
                    }
                    let t = rs.sample_nonzero(&field);
                    if !params.insert(t.repr()) {
                        continue;
                    }
                    let coords: Vec<FieldElement> = origin
                        .coords()
                        .iter()
                        .zip(dirs[i].coords())
                        .map(|(o, v)| o.add(&v.mul(&t)))
                        .collect();
                    let Ok(p) = ProjPoint::new(coords) else {
                        continue;
                    };
                    if p == origin || !seen.insert(p.clone()) {
                        continue;
                    }
                    break p;
                };
                assigned.push(points.len());
                points.push(pt);
            }
            record.flats.push(RecordFlat {
                label: format!("l{}", i + 1),
                role: "structure_line".into(),
                flat: line,
                points: assigned,
            });
        }
        let cfg = PointConfig::new(points)?;
        record.verify(&cfg)?;
        return Ok((cfg, record));
    }
    Err(Error::Genericity(
        "concurrent_lines resampling budget exhausted".into(),
    ))
}

/// A (b, d)-hypergrid: the Segre image of d points of P^1 times b points of
/// P^2, projected from a sampled point of P^5 to P^4. The record stores the
/// b lines and d planes; each line meets each plane in exactly one point and
/// plane unions are pairwise nondegenerate (verified).
pub fn hypergrid(
    b: usize,
    d: usize,
    rs: &mut RandomSource,
) -> Result<(PointConfig, ConstructionRecord)> {
    if b < 1 || d < 1 {
        return Err(Error::Precondition("hypergrid needs b, d >= 1".into()));
    }
    let field = Field::Q;
    'attempt: for _ in 0..RESAMPLE_BUDGET {
        // d distinct points of P^1, b distinct points of P^2
        let mut dpts = Vec::with_capacity(d);
        let mut seen1 = HashSet::new();
        while dpts.len() < d {
            let p = sample_point(rs, &field, 2);
            if seen1.insert(p.clone()) {
                dpts.push(p);
            }
        }
        let mut bpts = Vec::with_capacity(b);
        let mut seen2 = HashSet::new();
        while bpts.len() < b {
            let p = sample_point(rs, &field, 3);
            if seen2.insert(p.clone()) {
                bpts.push(p);
            }
        }
        let center = sample_point(rs, &field, 6);
        let project = |x: &ProjPoint| crate::projgeom::project_point(x, &center);

        // lines: images of P^1 x {b_j}; planes: images of {t_i} x P^2
        let e1 = |k: usize| {
            ProjPoint::from_i64(field, &{
                let mut c = [0i64; 2];
                c[k] = 1;
                c
            })
            .unwrap()
        };
        let e2 = |k: usize| {
            let mut c = [0i64; 3];
            c[k] = 1;
            ProjPoint::from_i64(field, &c).unwrap()
        };
        let mut lines = Vec::with_capacity(b);
        for bj in &bpts {
            let p0 = segre_p1xp2(&e1(0), bj)?;
            let p1 = segre_p1xp2(&e1(1), bj)?;
            let (Some(q0), Some(q1)) = (project(&p0), project(&p1)) else {
                continue 'attempt;
            };
            let Ok(line) = span(&[q0, q1]) else {
                continue 'attempt;
            };
            if line.dim() != 1 {
                continue 'attempt;
            }
            lines.push(line);
        }
        let mut planes = Vec::with_capacity(d);
        for ti in &dpts {
            let basis = (0..3)
                .map(|k| segre_p1xp2(ti, &e2(k)))
                .collect::<Result<Vec<_>>>()?;
            let mut proj = Vec::with_capacity(3);
            for p in &basis {
                match project(p) {
                    Some(q) => proj.push(q),
                    None => continue 'attempt,
                }
            }
            let Ok(plane) = span(&proj) else {
                continue 'attempt;
            };
            if plane.dim() != 2 {
                continue 'attempt;
            }
            planes.push(plane);
        }

        // points P_ij with i indexing planes (rows) and j indexing lines
        let mut points = Vec::with_capacity(b * d);
        for ti in &dpts {
            for bj in &bpts {
                let s = segre_p1xp2(ti, bj)?;
                match project(&s) {
                    Some(q) => points.push(q),
                    None => continue 'attempt,
                }
            }
        }
        let Ok(cfg) = PointConfig::new(points) else {
            continue 'attempt;
        };

        // Def. 2.4 checks
        for (j, lj) in lines.iter().enumerate() {
            for (jj, lk) in lines.iter().enumerate().skip(j + 1) {
                let _ = jj;
                let mut rows: Vec<Vec<FieldElement>> =
                    lj.basis().iter().map(|p| p.coords().to_vec()).collect();
                rows.extend(lk.basis().iter().map(|p| p.coords().to_vec()));
                if Matrix::from_rows(field, rows)?.rank() != 4 {
                    continue 'attempt; // lines not skew
                }
            }
        }
        for (i, pi) in planes.iter().enumerate() {
            for pk in planes.iter().skip(i + 1) {
                let mut rows: Vec<Vec<FieldElement>> =
                    pi.basis().iter().map(|p| p.coords().to_vec()).collect();
                rows.extend(pk.basis().iter().map(|p| p.coords().to_vec()));
                if Matrix::from_rows(field, rows)?.rank() != 5 {
                    continue 'attempt; // plane union degenerate
                }
            }
        }
        for (i, pi) in planes.iter().enumerate() {
            for (j, lj) in lines.iter().enumerate() {
                match common_point(&[lj.clone(), pi.clone()])? {
                    FlatMeet::Point(q) if q == *cfg.point(i * b + j) => {}
                    _ => continue 'attempt,
                }
            }
        }

        let mut record = ConstructionRecord::new(ConstructionKind::Hypergrid);
        record.parameters.insert("b".into(), b.into());
        record.parameters.insert("d".into(), d.into());
        for (j, line) in lines.into_iter().enumerate() {
            record.flats.push(RecordFlat {
                label: format!("l{}", j + 1),
                role: "curve_line".into(),
                flat: line,
                points: (0..d).map(|i| i * b + j).collect(),
            });
        }
        for (i, plane) in planes.into_iter().enumerate() {
            record.flats.push(RecordFlat {
                label: format!("pi{}", i + 1),
                role: "surface_plane".into(),
                flat: plane,
                points: (0..b).map(|j| i * b + j).collect(),
            });
        }
        record.verify(&cfg)?;
        return Ok((cfg, record));
    }
    Err(Error::Genericity(
        "hypergrid resampling budget exhausted".into(),
    ))
}

/// The (d+2, d) construction: a (d, d)-grid on the quadric x0 x3 = x1 x2
/// inside the hyperplane {x4 = 0}, extended by two collinear d-point sets
/// built from a general point P_0, then moved by a sampled coordinate
/// change. Points are ordered grid rows first, then X1, then X2.
pub fn grid_extension(
    d: usize,
    rs: &mut RandomSource,
) -> Result<(PointConfig, ConstructionRecord)> {
    if d < 3 {
        return Err(Error::Precondition("grid extension needs d >= 3".into()));
    }
    let field = Field::Q;
    'attempt: for _ in 0..RESAMPLE_BUDGET {
        // distinct ruling parameters
        let mut aparams: Vec<ProjPoint> = Vec::with_capacity(d);
        let mut seen = HashSet::new();
        while aparams.len() < d {
            let p = sample_point(rs, &field, 2);
            if seen.insert(p.clone()) {
                aparams.push(p);
            }
        }
        let mut bparams: Vec<ProjPoint> = Vec::with_capacity(d);
        let mut seenb = HashSet::new();
        while bparams.len() < d {
            let p = sample_point(rs, &field, 2);
            if seenb.insert(p.clone()) {
                bparams.push(p);
            }
        }
        let zero = field.zero();
        let line_a = |ab: &ProjPoint| -> Result<Flat> {
            let (a, bb) = (&ab.coords()[0], &ab.coords()[1]);
            let u = ProjPoint::new(vec![
                a.clone(),
                zero.clone(),
                bb.clone(),
                zero.clone(),
                zero.clone(),
            ])?;
            let w = ProjPoint::new(vec![
                zero.clone(),
                a.clone(),
                zero.clone(),
                bb.clone(),
                zero.clone(),
            ])?;
            span(&[u, w])
        };
        let line_b = |cd: &ProjPoint| -> Result<Flat> {
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
            span(&[u, w])
        };
        let grid_point = |ab: &ProjPoint, cd: &ProjPoint| -> Result<ProjPoint> {
            let (a, bb) = (&ab.coords()[0], &ab.coords()[1]);
            let (c, dd) = (&cd.coords()[0], &cd.coords()[1]);
            ProjPoint::new(vec![
                a.mul(c),
                a.mul(dd),
                bb.mul(c),
                bb.mul(dd),
                zero.clone(),
            ])
        };

        let mut points = Vec::with_capacity(d * d + 2 * d);
        for ab in &aparams {
            for cd in &bparams {
                points.push(grid_point(ab, cd)?);
            }
        }
        // general point off the hyperplane
        let p0 = {
            let mut coords = rs.sample(&field, 4).unwrap();
            coords.push(rs.sample_nonzero(&field));
            ProjPoint::new(coords)?
        };

        // X1 on a sampled line L inside the plane spanned by L_1 and P_0
        let l1 = line_a(&aparams[0])?;
        let m1 = line_b(&bparams[0])?;
        let sample_in_plane = |rs: &mut RandomSource, plane: &[ProjPoint]| -> ProjPoint {
            loop {
                let cs: Vec<FieldElement> =
                    (0..plane.len()).map(|_| rs.sample_one(&field)).collect();
                let mut acc = vec![field.zero(); 5];
                for (c, bp) in cs.iter().zip(plane) {
                    for (k, x) in bp.coords().iter().enumerate() {
                        acc[k] = acc[k].add(&c.mul(x));
                    }
                }
                if let Ok(p) = ProjPoint::new(acc) {
                    return p;
                }
            }
        };
        let build_transversal = |rs: &mut RandomSource,
                                 ruling: &Flat,
                                 through: &[ProjPoint]|
         -> Option<(Flat, Vec<ProjPoint>)> {
            let plane_basis: Vec<ProjPoint> = ruling
                .basis()
                .iter()
                .cloned()
                .chain(std::iter::once(p0.clone()))
                .collect();
            if span(&plane_basis).ok()?.dim() != 2 {
                return None;
            }
            for _ in 0..16 {
                let a = sample_in_plane(rs, &plane_basis);
                let b = sample_in_plane(rs, &plane_basis);
                let Ok(line) = span(&[a.clone(), b.clone()]) else {
                    continue;
                };
                if line.dim() != 1 || line.contains(&p0) {
                    continue;
                }
                let mut cut = Vec::with_capacity(through.len());
                let mut good = true;
                for q in through {
                    let Ok(join) = span(&[q.clone(), p0.clone()]) else {
                        good = false;
                        break;
                    };
                    match common_point(&[line.clone(), join.clone()]) {
                        Ok(FlatMeet::Point(x)) if x != *q && x != p0 => cut.push(x),
                        _ => {
                            good = false;
                            break;
                        }
                    }
                }
                if good {
                    return Some((line, cut));
                }
            }
            None
        };
        let row1: Vec<ProjPoint> = (0..d).map(|j| points[j].clone()).collect();
        let Some((line_l, x1)) = build_transversal(rs, &l1, &row1) else {
            continue 'attempt;
        };
        let col1: Vec<ProjPoint> = (0..d).map(|i| points[i * d].clone()).collect();
        let Some((line_lp, x2)) = build_transversal(rs, &m1, &col1) else {
            continue 'attempt;
        };
        points.extend(x1.iter().cloned());
        points.extend(x2.iter().cloned());
        let Ok(cfg) = PointConfig::new(points) else {
            continue 'attempt;
        };
        if span(cfg.points())?.dim() != 4 {
            continue 'attempt;
        }

        // sampled coordinate change keeps all structure but hides the
        // special coordinates
        let change = sample_invertible(rs, &field, 5);
        let cfg = cfg.apply_matrix(&change)?;
        let moved = |f: &Flat| f.apply_matrix(&change);

        let mut record = ConstructionRecord::new(ConstructionKind::GridExtension);
        record.parameters.insert("d".into(), d.into());
        record
            .named_points
            .push(("P0".into(), ProjPoint::new(change.mul_vec(p0.coords())?)?));
        for (i, ab) in aparams.iter().enumerate() {
            record.flats.push(RecordFlat {
                label: format!("L{}", i + 1),
                role: "curve_line".into(),
                flat: moved(&line_a(ab)?)?,
                points: (0..d).map(|j| i * d + j).collect(),
            });
        }
        for (j, cd) in bparams.iter().enumerate() {
            record.flats.push(RecordFlat {
                label: format!("M{}", j + 1),
                role: "grid_line".into(),
                flat: moved(&line_b(cd)?)?,
                points: (0..d).map(|i| i * d + j).collect(),
            });
        }
        record.flats.push(RecordFlat {
            label: "L".into(),
            role: "curve_line".into(),
            flat: moved(&line_l)?,
            points: (d * d..d * d + d).collect(),
        });
        record.flats.push(RecordFlat {
            label: "L'".into(),
            role: "curve_line".into(),
            flat: moved(&line_lp)?,
            points: (d * d + d..d * d + 2 * d).collect(),
        });
        if record.verify(&cfg).is_err() {
            continue 'attempt;
        }
        return Ok((cfg, record));
    }
    Err(Error::Genericity(
        "grid_extension resampling budget exhausted".into(),
    ))
}

/// Points of a rational normal quartic in P^4 (the standard monomial curve
/// composed with a sampled invertible coordinate change) at the given
/// pairwise distinct parameters.
pub fn rnc_points(
    params: &[(FieldElement, FieldElement)],
    rs: &mut RandomSource,
) -> Result<(PointConfig, ConstructionRecord, RationalCurve)> {
    if params.is_empty() {
        return Err(Error::Precondition("no parameters given".into()));
    }
    let field = params[0].0.field();
    for (s, t) in params {
        if s.is_zero() && t.is_zero() {
            return Err(Error::Precondition("(0,0) is not a parameter".into()));
        }
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
    for _ in 0..RESAMPLE_BUDGET {
        let change = sample_invertible(rs, &field, 5);
        let curve = RationalCurve::rational_normal(field, 4).apply_matrix(&change)?;
        let points = params
            .iter()
            .map(|(s, t)| curve.eval(s, t))
            .collect::<Result<Vec<_>>>()?;
        let Ok(cfg) = PointConfig::new(points) else {
            continue;
        };
        let mut record = ConstructionRecord::new(ConstructionKind::RncPoints);
        record
            .parameters
            .insert("count".into(), params.len().into());
        record.curve = Some((curve.clone(), params.to_vec()));
        record.verify(&cfg)?;
        return Ok((cfg, record, curve));
    }
    Err(Error::Genericity(
        "rnc_points resampling budget exhausted".into(),
    ))
}

/// Convenience wrapper: n points at parameters (1 : t) for distinct sampled
/// integers t.
pub fn rnc_points_sampled(
    n: usize,
    rs: &mut RandomSource,
) -> Result<(PointConfig, ConstructionRecord, RationalCurve)> {
    let field = Field::Q;
    let mut seen = HashSet::new();
    let mut params = Vec::with_capacity(n);
    while params.len() < n {
        let t = rs.sample_one(&field);
        if seen.insert(t.repr()) {
            params.push((field.one(), t));
        }
    }
    rnc_points(&params, rs)
}

/// A trivial (b, d) configuration: d planes through a sampled point over one
/// ruling of a quadric, cut by a degree-(b-1) plane curve (a union of b-1
/// sampled lines) in a distinguished plane plus one transversal line; bd
/// points carrying the full incidence structure.
pub fn trivial_planes_lines(
    b: usize,
    d: usize,
    rs: &mut RandomSource,
) -> Result<(PointConfig, ConstructionRecord)> {
    if b < 3 || d < 2 {
        return Err(Error::Precondition(
            "construction needs b >= 3 and d >= 2".into(),
        ));
    }
    let field = Field::Q;
    'attempt: for _ in 0..RESAMPLE_BUDGET {
        // rulings of x0 x3 = x1 x2 inside {x4 = 0}
        let mut aparams: Vec<ProjPoint> = Vec::with_capacity(d);
        let mut seen = HashSet::new();
        while aparams.len() < d {
            let p = sample_point(rs, &field, 2);
            if seen.insert(p.clone()) {
                aparams.push(p);
            }
        }
        let mut bparams: Vec<ProjPoint> = Vec::with_capacity(2);
        let mut seenb = HashSet::new();
        while bparams.len() < 2 {
            let p = sample_point(rs, &field, 2);
            if seenb.insert(p.clone()) {
                bparams.push(p);
            }
        }
        let zero = field.zero();
        let ruling_a = |ab: &ProjPoint| -> Result<Flat> {
            let (a, bb) = (&ab.coords()[0], &ab.coords()[1]);
            span(&[
                ProjPoint::new(vec![
                    a.clone(),
                    zero.clone(),
                    bb.clone(),
                    zero.clone(),
                    zero.clone(),
                ])?,
                ProjPoint::new(vec![
                    zero.clone(),
                    a.clone(),
                    zero.clone(),
                    bb.clone(),
                    zero.clone(),
                ])?,
            ])
        };
        let ruling_b = |cd: &ProjPoint| -> Result<Flat> {
            let (c, dd) = (&cd.coords()[0], &cd.coords()[1]);
            span(&[
                ProjPoint::new(vec![
                    c.clone(),
                    dd.clone(),
                    zero.clone(),
                    zero.clone(),
                    zero.clone(),
                ])?,
                ProjPoint::new(vec![
                    zero.clone(),
                    zero.clone(),
                    c.clone(),
                    dd.clone(),
                    zero.clone(),
                ])?,
            ])
        };
        let grid_point = |ab: &ProjPoint, cd: &ProjPoint| -> Result<ProjPoint> {
            let (a, bb) = (&ab.coords()[0], &ab.coords()[1]);
            let (c, dd) = (&cd.coords()[0], &cd.coords()[1]);
            ProjPoint::new(vec![
                a.mul(c),
                a.mul(dd),
                bb.mul(c),
                bb.mul(dd),
                zero.clone(),
            ])
        };

        let p0 = {
            let mut coords = rs.sample(&field, 4).unwrap();
            coords.push(rs.sample_nonzero(&field));
            ProjPoint::new(coords)?
        };
        let m1 = ruling_b(&bparams[0])?; // spans the distinguished plane with P0
        let big_plane_basis: Vec<ProjPoint> = m1
            .basis()
            .iter()
            .cloned()
            .chain(std::iter::once(p0.clone()))
            .collect();
        let Ok(big_plane) = span(&big_plane_basis) else {
            continue 'attempt;
        };
        if big_plane.dim() != 2 {
            continue 'attempt;
        }

        // lambda_i = line joining P0 with l_i ∩ m_1, inside the big plane
        let mut lambdas = Vec::with_capacity(d);
        for ab in &aparams {
            let q = grid_point(ab, &bparams[0])?;
            let Ok(lambda) = span(&[p0.clone(), q]) else {
                continue 'attempt;
            };
            lambdas.push(lambda);
        }

        let sample_in_plane = |rs: &mut RandomSource| -> ProjPoint {
            loop {
                let cs: Vec<FieldElement> = (0..3).map(|_| rs.sample_one(&field)).collect();
                let mut acc = vec![field.zero(); 5];
                for (c, bp) in cs.iter().zip(&big_plane_basis) {
                    for (k, x) in bp.coords().iter().enumerate() {
                        acc[k] = acc[k].add(&c.mul(x));
                    }
                }
                if let Ok(p) = ProjPoint::new(acc) {
                    return p;
                }
            }
        };

        // the degree-(b-1) curve on the big plane: b-1 sampled lines, each
        // meeting every lambda_i in one point
        let mut points: Vec<ProjPoint> = Vec::with_capacity(b * d);
        let mut curve_lines = Vec::with_capacity(b - 1);
        let mut seen_pts = HashSet::new();
        for _ in 0..b - 1 {
            let mut ok = false;
            for _ in 0..16 {
                let a = sample_in_plane(rs);
                let bpt = sample_in_plane(rs);
                let Ok(g) = span(&[a, bpt]) else { continue };
                if g.dim() != 1 || g.contains(&p0) {
                    continue;
                }
                let mut cut = Vec::with_capacity(d);
                let mut good = true;
                for lambda in &lambdas {
                    match common_point(&[g.clone(), lambda.clone()]) {
                        Ok(FlatMeet::Point(x)) if x != p0 && !seen_pts.contains(&x) => cut.push(x),
                        _ => {
                            good = false;
                            break;
                        }
                    }
                }
                if !good || cut.len() != d {
                    continue;
                }
                if cut.iter().collect::<HashSet<_>>().len() != d {
                    continue;
                }
                for x in &cut {
                    seen_pts.insert(x.clone());
                }
                curve_lines.push((g, cut));
                ok = true;
                break;
            }
            if !ok {
                continue 'attempt;
            }
        }
        // transversal line: a second ruling-B line, meeting every plane in a
        // grid point
        let m2 = ruling_b(&bparams[1])?;
        let mut transversal_pts = Vec::with_capacity(d);
        for ab in &aparams {
            let y = grid_point(ab, &bparams[1])?;
            if seen_pts.contains(&y) {
                continue 'attempt;
            }
            transversal_pts.push(y);
        }

        // assemble: per curve line, then the transversal points; plane pi_i
        // owns one point from each curve line plus one transversal point
        let mut line_indices: Vec<Vec<usize>> = Vec::new();
        for (_, cut) in &curve_lines {
            let start = points.len();
            points.extend(cut.iter().cloned());
            line_indices.push((start..start + d).collect());
        }
        let tstart = points.len();
        points.extend(transversal_pts.iter().cloned());
        let Ok(cfg) = PointConfig::new(points) else {
            continue 'attempt;
        };
        if span(cfg.points())?.dim() != 4 {
            continue 'attempt;
        }

        let change = sample_invertible(rs, &field, 5);
        let cfg = cfg.apply_matrix(&change)?;
        let mut record = ConstructionRecord::new(ConstructionKind::TrivialPlanesLines);
        record.parameters.insert("b".into(), b.into());
        record.parameters.insert("d".into(), d.into());
        record
            .named_points
            .push(("P0".into(), ProjPoint::new(change.mul_vec(p0.coords())?)?));
        // surface planes pi_i = <ruling_a line, P0>
        for (i, ab) in aparams.iter().enumerate() {
            let la = ruling_a(ab)?;
            let basis: Vec<ProjPoint> = la
                .basis()
                .iter()
                .cloned()
                .chain(std::iter::once(p0.clone()))
                .collect();
            let Ok(pi) = span(&basis) else {
                continue 'attempt;
            };
            if pi.dim() != 2 {
                continue 'attempt;
            }
            let mut assigned: Vec<usize> = line_indices.iter().map(|idx| idx[i]).collect();
            assigned.push(tstart + i);
            record.flats.push(RecordFlat {
                label: format!("pi{}", i + 1),
                role: "surface_plane".into(),
                flat: pi.apply_matrix(&change)?,
                points: assigned,
            });
        }
        record.flats.push(RecordFlat {
            label: "Pi".into(),
            role: "curve_plane".into(),
            flat: big_plane.apply_matrix(&change)?,
            points: (0..(b - 1) * d).collect(),
        });
        for (k, (g, _)) in curve_lines.iter().enumerate() {
            record.flats.push(RecordFlat {
                label: format!("g{}", k + 1),
                role: "curve_line".into(),
                flat: g.apply_matrix(&change)?,
                points: line_indices[k].clone(),
            });
        }
        record.flats.push(RecordFlat {
            label: "L1".into(),
            role: "curve_line".into(),
            flat: m2.apply_matrix(&change)?,
            points: (tstart..tstart + d).collect(),
        });
        if record.verify(&cfg).is_err() {
            continue 'attempt;
        }
        return Ok((cfg, record));
    }
    Err(Error::Genericity(
        "trivial_planes_lines resampling budget exhausted".into(),
    ))
}

/// Outcome of the finite-field liaison construction.
pub enum LiaisonOutcome {
    Found {
        cfg: PointConfig,
        record: ConstructionRecord,
    },
    /// No 16-point rational intersection within the retry budget; this is an
    /// oracle limitation, not a correctness failure (rationality over F_p is
    /// not guaranteed).
    Incomplete { attempts: usize },
}

/// Residual construction over F_p: six points in a hyperplane, four quadrics
/// through them, and the ten residual points of their 16-point intersection,
/// found by exhaustive enumeration.
///
/// Plainly random quadrics through six points almost never have a fully
/// rational intersection over a small field (the Frobenius action permutes
/// the ten residual points), so after a few literal attempts the sampler
/// switches to sign-orbit complete intersections x_i^2 = v_i x_4^2 whose 16
/// geometric points are all rational by construction. Every postcondition
/// (16-point locus, 6-point hyperplane section, residual h-vector) is still
/// verified by enumeration.
pub fn liaison_ff(p: u64, rs: &mut RandomSource) -> Result<LiaisonOutcome> {
    let field = Field::prime(p)?;
    let space = oracle::enumerate(p, 4)?;
    let mut attempts = 0;

    // literal sampling: 6 random points in a random hyperplane, 4 random
    // quadrics through them
    for _ in 0..4 {
        attempts += 1;
        let h: Vec<FieldElement> = loop {
            let v = rs.sample(&field, 5).unwrap();
            if v.iter().any(|c| !c.is_zero()) {
                break v;
            }
        };
        let lead = h.iter().position(|c| !c.is_zero()).unwrap();
        let mut six = Vec::new();
        let mut seen = HashSet::new();
        let mut guard = 0;
        while six.len() < 6 && guard < 200 {
            guard += 1;
            let mut coords = rs.sample(&field, 5).unwrap();
            // solve the hyperplane equation for the pivot coordinate
            let mut rest = field.zero();
            for (k, c) in coords.iter().enumerate() {
                if k != lead {
                    rest = rest.add(&h[k].mul(c));
                }
            }
            coords[lead] = rest.neg().div(&h[lead]).unwrap();
            if let Ok(pt) = ProjPoint::new(coords) {
                if seen.insert(pt.clone()) {
                    six.push(pt);
                }
            }
        }
        if six.len() < 6 {
            continue;
        }
        let w = PointConfig::new(six)?;
        let slice = ideal_slice(&w, 2);
        if slice.dim() < 4 {
            continue;
        }
        let quadrics: Vec<Form> = (0..4)
            .map(|_| {
                let coeffs: Vec<FieldElement> =
                    (0..slice.dim()).map(|_| rs.sample_one(&field)).collect();
                slice.combination(&coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(out) = finish_liaison(&space, &w, &quadrics, None)? {
            return Ok(out);
        }
    }

    // sign-orbit complete intersections
    for _ in 0..64 {
        attempts += 1;
        if p == 2 {
            break; // +1 = -1, the orbit collapses
        }
        let s: Vec<FieldElement> = (0..5).map(|_| rs.sample_nonzero(&field)).collect();
        let v: Vec<FieldElement> = s.iter().map(|x| x.mul(x)).collect();
        if v.iter().collect::<HashSet<_>>().len() < 5 {
            continue;
        }
        // quadrics x_k^2 - (v_k / v_4) x_4^2 for k = 0..3
        let basis = crate::ideals::MonomialBasis::new(5, 2);
        let mut quadrics = Vec::with_capacity(4);
        for k in 0..4 {
            let mut coeffs = vec![field.zero(); basis.len()];
            let mut ek = vec![0u32; 5];
            ek[k] = 2;
            coeffs[basis.index_of(&ek).unwrap()] = field.one();
            let mut e4 = vec![0u32; 5];
            e4[4] = 2;
            coeffs[basis.index_of(&e4).unwrap()] = v[k].div(&v[4])?.neg();
            quadrics.push(Form::new(5, 2, coeffs)?);
        }
        // hyperplane sum_{i<4} x_i / s_i = 0 picks out six of the sixteen
        let mut hcoeffs: Vec<FieldElement> = s[..4]
            .iter()
            .map(|x| x.inverse())
            .collect::<Result<Vec<_>>>()?;
        hcoeffs.push(field.zero());
        let hform = Form::new(5, 1, hcoeffs)?;
        let locus = oracle::variety_points(&space, &quadrics)?;
        if locus.len() != 16 {
            continue;
        }
        let six: Vec<ProjPoint> = locus
            .points()
            .iter()
            .filter(|pt| hform.eval_point(pt).is_zero())
            .cloned()
            .collect();
        if six.len() != 6 {
            continue;
        }
        let w = PointConfig::new(six)?;
        if let Some(out) = finish_liaison(&space, &w, &quadrics, Some(hform))? {
            return Ok(out);
        }
    }
    Ok(LiaisonOutcome::Incomplete { attempts })
}

fn finish_liaison(
    space: &oracle::EnumeratedSpace,
    w: &PointConfig,
    quadrics: &[Form],
    hyperplane: Option<Form>,
) -> Result<Option<LiaisonOutcome>> {
    let locus = oracle::variety_points(space, quadrics)?;
    if locus.len() != 16 {
        return Ok(None);
    }
    if !w.points().iter().all(|pt| locus.contains(pt)) {
        return Ok(None);
    }
    let residual: Vec<ProjPoint> = locus
        .points()
        .iter()
        .filter(|pt| !w.contains(pt))
        .cloned()
        .collect();
    if residual.len() != 10 {
        return Ok(None);
    }
    let cfg = PointConfig::new(residual)?;
    if hilbert(&cfg)?.h_vector != vec![1, 4, 4, 1] {
        return Ok(None);
    }
    if eval_matrix(w, 2).rank() != 6 {
        return Ok(None);
    }
    let mut record = ConstructionRecord::new(ConstructionKind::LiaisonFf);
    let (p, _) = cfg.point(0).coords()[0]
        .as_modular()
        .expect("modular field");
    record.parameters.insert("p".into(), p.into());
    for (k, pt) in w.points().iter().enumerate() {
        record
            .named_points
            .push((format!("w{}", k + 1), pt.clone()));
    }
    let wnames: Vec<String> = (1..=6).map(|k| format!("w{k}")).collect();
    for (k, q) in quadrics.iter().enumerate() {
        record.forms.push(RecordForm {
            label: format!("Q{}", k + 1),
            form: q.clone(),
            cfg_points: (0..cfg.len()).collect(),
            named_points: wnames.clone(),
        });
    }
    if let Some(h) = hyperplane {
        record.forms.push(RecordForm {
            label: "H".into(),
            form: h,
            cfg_points: Vec::new(),
            named_points: wnames,
        });
    }
    record.verify(&cfg)?;
    Ok(Some(LiaisonOutcome::Found { cfg, record }))
}
