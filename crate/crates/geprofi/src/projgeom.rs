//! Projective points, configurations, linear flats, projections from a
//! point, the Segre embedding of P^1 x P^2, and parametrized rational curves.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::field::{Field, FieldElement};

/// A point of P^N with canonical homogeneous coordinates: the first nonzero
/// coordinate equals 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<FieldElement>,
}

impl ProjPoint {
    pub fn new(coords: Vec<FieldElement>) -> Result<ProjPoint> {
        let Some(lead) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::ZeroVector);
        };
        let inv = coords[lead].inverse().expect("leading coordinate nonzero");
        let coords = coords.iter().map(|c| c.mul(&inv)).collect();
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> Result<ProjPoint> {
        ProjPoint::new(coords.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }
}

/// An ordered list of pairwise distinct points of a common P^N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    ambient_dim: usize,
    field: Field,
    points: Vec<ProjPoint>,
}

impl PointConfig {
    pub fn new(points: Vec<ProjPoint>) -> Result<PointConfig> {
        let Some(first) = points.first() else {
            return Err(Error::Precondition(
                "use PointConfig::empty for the empty configuration".into(),
            ));
        };
        let ambient_dim = first.ambient_dim();
        let field = first.field();
        let mut seen = HashSet::new();
        for p in &points {
            if p.ambient_dim() != ambient_dim || p.field() != field {
                return Err(Error::Shape("mixed ambient spaces in configuration".into()));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::Precondition(
                    "configuration points must be distinct".into(),
                ));
            }
        }
        Ok(PointConfig {
            ambient_dim,
            field,
            points,
        })
    }

    pub fn empty(field: Field, ambient_dim: usize) -> PointConfig {
        PointConfig {
            ambient_dim,
            field,
            points: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &ProjPoint {
        &self.points[i]
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }

    /// Applies an invertible linear change of coordinates.
    pub fn apply_matrix(&self, m: &Matrix) -> Result<PointConfig> {
        if m.rows() != self.ambient_dim + 1 || m.cols() != self.ambient_dim + 1 {
            return Err(Error::Shape("coordinate change has wrong size".into()));
        }
        if m.rank() != m.rows() {
            return Err(Error::Precondition(
                "coordinate change must be invertible".into(),
            ));
        }
        let points = self
            .points
            .iter()
            .map(|p| ProjPoint::new(m.mul_vec(p.coords())?))
            .collect::<Result<Vec<_>>>()?;
        PointConfig::new(points)
    }

    /// Subset by indices, preserving order.
    pub fn subset(&self, indices: &[usize]) -> Result<PointConfig> {
        PointConfig::new(indices.iter().map(|&i| self.points[i].clone()).collect())
    }

    /// Coordinate matrix: one row per point.
    pub fn coordinate_matrix(&self) -> Matrix {
        Matrix::from_rows(
            self.field,
            self.points.iter().map(|p| p.coords().to_vec()).collect(),
        )
        .expect("points share a common ambient space")
    }
}

/// A linear flat stored as a spanning basis of linearly independent points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    ambient_dim: usize,
    basis: Vec<ProjPoint>,
}

impl Flat {
    pub fn new(basis: Vec<ProjPoint>) -> Result<Flat> {
        if basis.is_empty() {
            return Err(Error::Precondition("flat needs a nonempty basis".into()));
        }
        let ambient_dim = basis[0].ambient_dim();
        let m = Matrix::from_rows(
            basis[0].field(),
            basis.iter().map(|p| p.coords().to_vec()).collect(),
        )?;
        if m.rank() != basis.len() {
            return Err(Error::Precondition("flat basis must be independent".into()));
        }
        Ok(Flat { ambient_dim, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[ProjPoint] {
        &self.basis
    }

    pub fn field(&self) -> Field {
        self.basis[0].field()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        if p.ambient_dim() != self.ambient_dim {
            return false;
        }
        let mut rows: Vec<Vec<FieldElement>> =
            self.basis.iter().map(|b| b.coords().to_vec()).collect();
        rows.push(p.coords().to_vec());
        let m = Matrix::from_rows(self.field(), rows).expect("rectangular");
        m.rank() == self.basis.len()
    }

    /// Image under an invertible linear change of coordinates.
    pub fn apply_matrix(&self, m: &Matrix) -> Result<Flat> {
        let basis = self
            .basis
            .iter()
            .map(|p| ProjPoint::new(m.mul_vec(p.coords())?))
            .collect::<Result<Vec<_>>>()?;
        Flat::new(basis)
    }

    /// Dual linear equations cutting out the flat (one row per equation).
    pub fn dual_equations(&self) -> Matrix {
        let m = Matrix::from_rows(
            self.field(),
            self.basis.iter().map(|b| b.coords().to_vec()).collect(),
        )
        .expect("rectangular");
        let ns = m.nullspace();
        Matrix::from_rows(self.field(), ns).expect("rectangular")
    }
}

/// Span of a nonempty point list: the flat of dimension rank - 1 containing
/// all of them.
pub fn span(points: &[ProjPoint]) -> Result<Flat> {
    if points.is_empty() {
        return Err(Error::Precondition("span of an empty set".into()));
    }
    let field = points[0].field();
    let m = Matrix::from_rows(field, points.iter().map(|p| p.coords().to_vec()).collect())?;
    let (rref, pivots) = m.rref();
    let basis = (0..pivots.len())
        .map(|r| ProjPoint::new(rref.row(r).to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Flat::new(basis)
}

/// Dimension of the span of a point list.
pub fn span_dim(points: &[ProjPoint]) -> Result<usize> {
    Ok(span(points)?.dim())
}

/// Result of projecting a configuration from a center.
#[derive(Clone, Debug)]
pub struct Projection {
    /// Distinct image points, multiplicity collapsed.
    pub image: PointConfig,
    /// True when two input points were collinear with the center.
    pub collided: bool,
    /// For each input index, the index of its image point.
    pub index_map: Vec<usize>,
}

/// Projects a single point from `center` into the hyperplane {x_i* = 0},
/// i* being the first nonzero coordinate of the center; the i* coordinate is
/// then dropped. Returns None when `x` equals the center.
pub fn project_point(x: &ProjPoint, center: &ProjPoint) -> Option<ProjPoint> {
    let i = center
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .expect("center is a valid point");
    let ci = &center.coords()[i];
    let xi = &x.coords()[i];
    let mut out = Vec::with_capacity(x.coords().len() - 1);
    for j in 0..x.coords().len() {
        if j == i {
            continue;
        }
        out.push(x.coords()[j].mul(ci).sub(&center.coords()[j].mul(xi)));
    }
    ProjPoint::new(out).ok()
}

/// Projects a configuration from a point outside it. Collisions between
/// image points are collapsed and flagged, not treated as errors.
pub fn project(cfg: &PointConfig, center: &ProjPoint) -> Result<Projection> {
    if center.ambient_dim() != cfg.ambient_dim() || center.field() != cfg.field() {
        return Err(Error::Shape(
            "center must live in the configuration's space".into(),
        ));
    }
    if cfg.contains(center) {
        return Err(Error::Precondition(
            "projection center lies in the configuration".into(),
        ));
    }
    let mut image: Vec<ProjPoint> = Vec::new();
    let mut index_map = Vec::with_capacity(cfg.len());
    let mut collided = false;
    for p in cfg.points() {
        let q = project_point(p, center).expect("center excluded above");
        match image.iter().position(|r| *r == q) {
            Some(k) => {
                collided = true;
                index_map.push(k);
            }
            None => {
                image.push(q);
                index_map.push(image.len() - 1);
            }
        }
    }
    Ok(Projection {
        image: PointConfig::new(image)?,
        collided,
        index_map,
    })
}

/// Segre embedding P^1 x P^2 -> P^5, coordinates a_i b_j in lexicographic
/// (i, j) order.
pub fn segre_p1xp2(a: &ProjPoint, b: &ProjPoint) -> Result<ProjPoint> {
    if a.ambient_dim() != 1 || b.ambient_dim() != 2 {
        return Err(Error::Shape(
            "segre factors must be P^1 and P^2 points".into(),
        ));
    }
    let mut coords = Vec::with_capacity(6);
    for i in 0..2 {
        for j in 0..3 {
            coords.push(a.coords()[i].mul(&b.coords()[j]));
        }
    }
    ProjPoint::new(coords)
}

/// Outcome of intersecting a list of flats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatMeet {
    /// The intersection is a single point.
    Point(ProjPoint),
    Empty,
    /// The intersection has the given positive dimension.
    Positive(usize),
}

/// Intersects two or more flats of the same ambient space by stacking their
/// dual equations.
pub fn common_point(flats: &[Flat]) -> Result<FlatMeet> {
    if flats.len() < 2 {
        return Err(Error::Precondition(
            "common_point needs at least two flats".into(),
        ));
    }
    let dim = flats[0].ambient_dim();
    if flats.iter().any(|f| f.ambient_dim() != dim) {
        return Err(Error::Shape(
            "flats live in different ambient spaces".into(),
        ));
    }
    let mut eqs = flats[0].dual_equations();
    for f in &flats[1..] {
        eqs = eqs.stack(&f.dual_equations())?;
    }
    let ns = eqs.nullspace();
    match ns.len() {
        0 => Ok(FlatMeet::Empty),
        1 => Ok(FlatMeet::Point(ProjPoint::new(
            ns.into_iter().next().unwrap(),
        )?)),
        k => Ok(FlatMeet::Positive(k - 1)),
    }
}

/// Finds a minimal subset violating linear general position: a k-subset,
/// k <= N+1, spanning a flat of dimension < k-1. Returns None when the
/// configuration is in LGP. Subsets are scanned by size, so the first hit is
/// minimal.
pub fn lgp_violation(cfg: &PointConfig) -> Option<Vec<usize>> {
    let n = cfg.len();
    let max_k = (cfg.ambient_dim() + 1).min(n);
    let degenerate = |subset: &[usize]| -> bool {
        let rows: Vec<Vec<FieldElement>> = subset
            .iter()
            .map(|&i| cfg.point(i).coords().to_vec())
            .collect();
        Matrix::from_rows(cfg.field(), rows)
            .expect("rectangular")
            .rank()
            < subset.len()
    };
    // a degenerate subset of any size extends to a degenerate subset of
    // size max_k, so scanning the largest size settles the yes/no question
    let mut any = false;
    for_each_subset(n, max_k, &mut |subset| {
        if !any && degenerate(subset) {
            any = true;
        }
    });
    if !any {
        return None;
    }
    // minimal witness: rescan sizes in ascending order
    for k in 2..=max_k {
        let mut found = None;
        for_each_subset(n, k, &mut |subset| {
            if found.is_none() && degenerate(subset) {
                found = Some(subset.to_vec());
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Calls `f` on every k-subset of 0..n in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A homogeneous binary form in (s, t); `coeffs[k]` multiplies s^(d-k) t^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<FieldElement>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<FieldElement>) -> BinaryForm {
        assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub fn constant(c: FieldElement) -> BinaryForm {
        BinaryForm { coeffs: vec![c] }
    }

    /// The linear form t0 s - s0 t vanishing at (s0 : t0).
    pub fn vanishing_at(s0: &FieldElement, t0: &FieldElement) -> BinaryForm {
        BinaryForm {
            coeffs: vec![t0.clone(), s0.neg()],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, s: &FieldElement, t: &FieldElement) -> FieldElement {
        let field = self.field();
        let d = self.degree();
        // Horner in t with powers of s folded in.
        let mut acc = field.zero();
        for k in 0..=d {
            acc = acc.mul(t).add(&self.coeffs[d - k].mul(&pow(s, k)));
        }
        acc
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn scale(&self, c: &FieldElement) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let field = self.field();
        let d = self.degree() + other.degree();
        let mut out = vec![field.zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BinaryForm::new(out)
    }

    pub fn pow(&self, e: usize) -> BinaryForm {
        let mut acc = BinaryForm::constant(self.field().one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Product of the linear forms vanishing at the given parameters.
    pub fn from_roots(field: Field, params: &[(FieldElement, FieldElement)]) -> BinaryForm {
        let mut acc = BinaryForm::constant(field.one());
        for (s, t) in params {
            acc = acc.mul(&BinaryForm::vanishing_at(s, t));
        }
        acc
    }

    /// True when `self` = c * `other` for a nonzero scalar c.
    pub fn proportional_to(&self, other: &BinaryForm) -> bool {
        if self.degree() != other.degree() || self.is_zero() != other.is_zero() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if other.coeffs[lead].is_zero() {
            return false;
        }
        let c = self.coeffs[lead].div(&other.coeffs[lead]).unwrap();
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| *a == b.mul(&c))
    }

    /// GCD of two binary forms (monic-normalized), including common s and t
    /// monomial factors.
    pub fn gcd(&self, other: &BinaryForm) -> BinaryForm {
        let field = self.field();
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // split off t^a (leading zero coeffs) and s^b (trailing zero coeffs)
        let split = |f: &BinaryForm| -> (usize, usize, Vec<FieldElement>) {
            let lead = f.coeffs.iter().position(|c| !c.is_zero()).unwrap();
            let trail = f.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
            (lead, f.degree() - trail, f.coeffs[lead..=trail].to_vec())
        };
        let (ta, sa, mut pa) = split(self);
        let (tb, sb, mut pb) = split(other);
        // univariate gcd in u = t/s of the dehomogenized middle parts
        pa.reverse(); // now coefficient of u^k at index k
        pb.reverse();
        let mut a = pa;
        let mut b = pb;
        while !b.iter().all(|c| c.is_zero()) {
            let r = poly_rem(field, &a, &b);
            a = b;
            b = r;
        }
        let lead = a.iter().rposition(|c| !c.is_zero()).unwrap();
        let inv = a[lead].inverse().unwrap();
        let mut core: Vec<FieldElement> = a[..=lead].iter().map(|c| c.mul(&inv)).collect();
        core.reverse();
        let mut g = BinaryForm::new(core);
        let t_common = ta.min(tb);
        let s_common = sa.min(sb);
        if t_common > 0 {
            let mut t_part = vec![field.zero(); t_common + 1];
            t_part[t_common] = field.one();
            g = g.mul(&BinaryForm::new(t_part));
        }
        if s_common > 0 {
            let mut s_part = vec![field.zero(); s_common + 1];
            s_part[0] = field.one();
            g = g.mul(&BinaryForm::new(s_part));
        }
        g
    }
}

fn poly_rem(field: Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let db = b.iter().rposition(|c| !c.is_zero()).expect("b nonzero");
    let mut r = a.to_vec();
    loop {
        let Some(dr) = r.iter().rposition(|c| !c.is_zero()) else {
            return vec![field.zero()];
        };
        if dr < db {
            return r;
        }
        let f = r[dr].div(&b[db]).unwrap();
        for k in 0..=db {
            let v = r[dr - db + k].sub(&f.mul(&b[k]));
            r[dr - db + k] = v;
        }
    }
}

fn pow(x: &FieldElement, e: usize) -> FieldElement {
    let mut acc = x.field().one();
    for _ in 0..e {
        acc = acc.mul(x);
    }
    acc
}

/// A rational curve in P^N given by N+1 binary forms of a common degree with
/// no common factor. Generic injectivity of the parametrization is not
/// assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCurve {
    forms: Vec<BinaryForm>,
}

impl RationalCurve {
    pub fn new(forms: Vec<BinaryForm>) -> Result<RationalCurve> {
        if forms.len() < 2 {
            return Err(Error::Shape(
                "curve needs at least two coordinate forms".into(),
            ));
        }
        let d = forms[0].degree();
        if forms.iter().any(|f| f.degree() != d) {
            return Err(Error::Shape("coordinate forms must share a degree".into()));
        }
        if forms.iter().all(|f| f.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let mut g: Option<BinaryForm> = None;
        for f in &forms {
            if f.is_zero() {
                continue;
            }
            g = Some(match g {
                None => f.clone(),
                Some(acc) => acc.gcd(f),
            });
        }
        if g.expect("some form nonzero").degree() != 0 {
            return Err(Error::Precondition(
                "coordinate forms share a common binary factor".into(),
            ));
        }
        Ok(RationalCurve { forms })
    }

    /// The degree-N rational normal curve of P^N: (s:t) -> (s^N : ... : t^N).
    pub fn rational_normal(field: Field, n: usize) -> RationalCurve {
        let forms = (0..=n)
            .map(|k| {
                let mut coeffs = vec![field.zero(); n + 1];
                coeffs[k] = field.one();
                BinaryForm::new(coeffs)
            })
            .collect();
        RationalCurve::new(forms).expect("monomial parametrization is primitive")
    }

    pub fn degree(&self) -> usize {
        self.forms[0].degree()
    }

    pub fn ambient_dim(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn forms(&self) -> &[BinaryForm] {
        &self.forms
    }

    pub fn field(&self) -> Field {
        self.forms[0].field()
    }

    /// Evaluates the parametrization; errors on (0,0) or a base point.
    pub fn eval(&self, s: &FieldElement, t: &FieldElement) -> Result<ProjPoint> {
        if s.is_zero() && t.is_zero() {
            return Err(Error::Precondition("(0,0) is not a parameter".into()));
        }
        let coords: Vec<FieldElement> = self.forms.iter().map(|f| f.eval(s, t)).collect();
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Precondition(
                "base point of the parametrization".into(),
            ));
        }
        ProjPoint::new(coords)
    }

    /// Composes with an invertible coordinate change of the ambient space.
    pub fn apply_matrix(&self, m: &Matrix) -> Result<RationalCurve> {
        if m.rows() != self.forms.len() || m.cols() != self.forms.len() {
            return Err(Error::Shape("coordinate change has wrong size".into()));
        }
        let field = self.field();
        let d = self.degree();
        let mut out = Vec::with_capacity(self.forms.len());
        for r in 0..m.rows() {
            let mut acc = BinaryForm::new(vec![field.zero(); d + 1]);
            for c in 0..m.cols() {
                acc = acc.add(&self.forms[c].scale(m.at(r, c)));
            }
            out.push(acc);
        }
        RationalCurve::new(out)
    }

    /// Composes the parametrization with projection from `center`, yielding a
    /// curve in P^(N-1). Errors if the composed forms acquire a common factor
    /// (the center sits in a special position relative to the curve).
    pub fn project(&self, center: &ProjPoint) -> Result<RationalCurve> {
        if center.ambient_dim() != self.ambient_dim() {
            return Err(Error::Shape("center must live in the curve's space".into()));
        }
        let i = center
            .coords()
            .iter()
            .position(|c| !c.is_zero())
            .expect("center is a valid point");
        let ci = &center.coords()[i];
        let mut out = Vec::with_capacity(self.forms.len() - 1);
        for j in 0..self.forms.len() {
            if j == i {
                continue;
            }
            out.push(
                self.forms[j]
                    .scale(ci)
                    .add(&self.forms[i].scale(&center.coords()[j].neg())),
            );
        }
        RationalCurve::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RandomSource;

    fn qpt(coords: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(Field::Q, coords).unwrap()
    }

    #[test]
    fn canonical_form() {
        let p = qpt(&[0, 2, 4]);
        assert_eq!(p.coords()[1], Field::Q.one());
        assert_eq!(p, qpt(&[0, 3, 6]));
        assert!(ProjPoint::from_i64(Field::Q, &[0, 0, 0]).is_err());
    }

    #[test]
    fn span_examples() {
        let a = qpt(&[1, 0, 0, 0, 0]);
        let b = qpt(&[0, 1, 0, 0, 0]);
        assert_eq!(span(&[a.clone(), b.clone()]).unwrap().dim(), 1);
        let e: Vec<ProjPoint> = (0..5)
            .map(|i| {
                let mut c = [0i64; 5];
                c[i] = 1;
                qpt(&c)
            })
            .collect();
        assert_eq!(span(&e).unwrap().dim(), 4);
        // P1, P2, P10 of the ten-point example span a plane
        let p1 = qpt(&[1, 0, 0, 0, 0]);
        let p2 = qpt(&[0, 1, 0, 0, 0]);
        let p10 = qpt(&[0, 1, 1, 1, 1]);
        assert_eq!(span(&[p1, p2, p10]).unwrap().dim(), 2);
    }

    #[test]
    fn span_is_monotone() {
        let mut rs = RandomSource::with_bound(31, 9);
        let field = Field::Q;
        for _ in 0..30 {
            let pts: Vec<ProjPoint> = (0..4)
                .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
                .collect();
            let small = span(&pts[..3]).unwrap();
            let big = span(&pts).unwrap();
            assert!(pts[..3].iter().all(|p| big.contains(p)));
            assert!(big.dim() <= small.dim() + 1);
            assert!(big.dim() >= small.dim());
        }
    }

    #[test]
    fn projection_examples() {
        // project e1, e2 in P^2 from (0:0:1)
        let cfg = PointConfig::new(vec![qpt(&[1, 0, 0]), qpt(&[0, 1, 0])]).unwrap();
        let center = qpt(&[0, 0, 1]);
        let pr = project(&cfg, &center).unwrap();
        assert_eq!(pr.image.len(), 2);
        assert!(!pr.collided);

        // projecting the center is an error
        let bad = project(&cfg, &qpt(&[1, 0, 0]));
        assert!(bad.is_err());
    }

    #[test]
    fn ten_point_projection_from_the_common_point_collapses_pairs() {
        // the five spanning lines meet in (1:1:1:1:1); projecting from it
        // identifies the two points on each line
        let pts = vec![
            qpt(&[1, 0, 0, 0, 0]),
            qpt(&[0, 1, 0, 0, 0]),
            qpt(&[0, 0, 1, 0, 0]),
            qpt(&[0, 0, 0, 1, 0]),
            qpt(&[0, 0, 0, 0, 1]),
            qpt(&[1, 1, 1, 1, 0]),
            qpt(&[1, 1, 1, 0, 1]),
            qpt(&[1, 1, 0, 1, 1]),
            qpt(&[1, 0, 1, 1, 1]),
            qpt(&[0, 1, 1, 1, 1]),
        ];
        let cfg = PointConfig::new(pts).unwrap();
        let center = qpt(&[1, 1, 1, 1, 1]);
        let pr = project(&cfg, &center).unwrap();
        assert!(pr.collided);
        assert_eq!(pr.image.len(), 5);
        for i in 0..5 {
            assert_eq!(pr.index_map[i], pr.index_map[9 - i]);
        }
    }

    #[test]
    fn projection_is_projectively_invariant() {
        let field = Field::Q;
        let mut rs = RandomSource::with_bound(77, 40);
        for _ in 0..40 {
            let x = rs.sample(&field, 5).unwrap();
            if x.iter().all(|c| c.is_zero()) {
                continue;
            }
            let lambda = rs.sample_nonzero(&field);
            let scaled: Vec<FieldElement> = x.iter().map(|c| c.mul(&lambda)).collect();
            let center = ProjPoint::new(rs.sample(&field, 5).unwrap());
            let (Ok(center), Ok(p), Ok(q)) = (center, ProjPoint::new(x), ProjPoint::new(scaled))
            else {
                continue;
            };
            assert_eq!(p, q);
            if p == center {
                continue;
            }
            assert_eq!(
                project_point(&p, &center).unwrap(),
                project_point(&q, &center).unwrap()
            );
        }
    }

    #[test]
    fn segre_examples() {
        let a = qpt(&[1, 0]);
        let b = qpt(&[1, 0, 0]);
        assert_eq!(segre_p1xp2(&a, &b).unwrap(), qpt(&[1, 0, 0, 0, 0, 0]));
        assert_eq!(
            segre_p1xp2(&qpt(&[1, 1]), &qpt(&[1, 1, 1])).unwrap(),
            qpt(&[1, 1, 1, 1, 1, 1])
        );
        assert_eq!(
            segre_p1xp2(&qpt(&[1, 2]), &qpt(&[1, 0, 3])).unwrap(),
            qpt(&[1, 0, 3, 2, 0, 6])
        );
    }

    #[test]
    fn rnc_eval_examples() {
        let c = RationalCurve::rational_normal(Field::Q, 4);
        let one = Field::Q.one();
        let zero = Field::Q.zero();
        assert_eq!(c.eval(&one, &zero).unwrap(), qpt(&[1, 0, 0, 0, 0]));
        assert_eq!(c.eval(&one, &one).unwrap(), qpt(&[1, 1, 1, 1, 1]));
        assert_eq!(
            c.eval(&one, &Field::Q.from_i64(2)).unwrap(),
            qpt(&[1, 2, 4, 8, 16])
        );
        assert!(c.eval(&zero, &zero).is_err());
    }

    #[test]
    fn rnc_satisfies_catalecticant_minors() {
        // points of the standard degree-N curve satisfy the 2x2 minors
        // x_i x_{j+1} - x_{i+1} x_j of the catalecticant
        let c = RationalCurve::rational_normal(Field::Q, 4);
        let mut rs = RandomSource::with_bound(3, 25);
        for _ in 0..25 {
            let s = rs.sample_one(&Field::Q);
            let t = rs.sample_one(&Field::Q);
            let Ok(p) = c.eval(&s, &t) else { continue };
            let x = p.coords();
            for i in 0..4 {
                for j in 0..4 {
                    let m = x[i].mul(&x[j + 1]).sub(&x[i + 1].mul(&x[j]));
                    if i == j {
                        assert!(m.is_zero());
                    }
                    // all shifted minors vanish too
                    let m2 = x[i].mul(&x[j + 1]).sub(&x[j].mul(&x[i + 1]));
                    assert_eq!(m, m2);
                }
            }
            for i in 0..3 {
                for j in i + 1..4 {
                    let m = x[i].mul(&x[j + 1]).sub(&x[i + 1].mul(&x[j]));
                    assert!(m.is_zero());
                }
            }
        }
    }

    #[test]
    fn common_point_examples() {
        // two coordinate planes in P^4 meeting in a point
        let pi1 = Flat::new(vec![
            qpt(&[1, 0, 0, 0, 0]),
            qpt(&[0, 1, 0, 0, 0]),
            qpt(&[0, 0, 1, 0, 0]),
        ])
        .unwrap();
        let pi2 = Flat::new(vec![
            qpt(&[0, 0, 1, 0, 0]),
            qpt(&[0, 0, 0, 1, 0]),
            qpt(&[0, 0, 0, 0, 1]),
        ])
        .unwrap();
        assert_eq!(
            common_point(&[pi1.clone(), pi2]).unwrap(),
            FlatMeet::Point(qpt(&[0, 0, 1, 0, 0]))
        );

        // two planes sharing a line
        let pi3 = Flat::new(vec![
            qpt(&[1, 0, 0, 0, 0]),
            qpt(&[0, 1, 0, 0, 0]),
            qpt(&[0, 0, 0, 1, 0]),
        ])
        .unwrap();
        assert_eq!(
            common_point(&[pi1.clone(), pi3]).unwrap(),
            FlatMeet::Positive(1)
        );

        // three coordinate 2-flats meeting only pairwise
        let a = Flat::new(vec![
            qpt(&[1, 0, 0, 0, 0]),
            qpt(&[0, 1, 0, 0, 0]),
            qpt(&[0, 0, 1, 0, 0]),
        ])
        .unwrap();
        let b = Flat::new(vec![
            qpt(&[0, 0, 1, 0, 0]),
            qpt(&[0, 0, 0, 1, 0]),
            qpt(&[0, 0, 0, 0, 1]),
        ])
        .unwrap();
        let c = Flat::new(vec![
            qpt(&[0, 1, 0, 0, 0]),
            qpt(&[0, 0, 0, 1, 0]),
            qpt(&[1, 0, 0, 0, 1]),
        ])
        .unwrap();
        assert_eq!(common_point(&[a, b, c]).unwrap(), FlatMeet::Empty);
    }

    #[test]
    fn generic_planes_meet_in_a_point() {
        let field = Field::Q;
        let mut rs = RandomSource::with_bound(5, 30);
        let mut hits = 0;
        for _ in 0..10 {
            let mk = |rs: &mut RandomSource| {
                Flat::new(
                    (0..3)
                        .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
                        .collect(),
                )
                .unwrap()
            };
            let f1 = mk(&mut rs);
            let f2 = mk(&mut rs);
            if let FlatMeet::Point(p) = common_point(&[f1.clone(), f2.clone()]).unwrap() {
                assert!(f1.contains(&p) && f2.contains(&p));
                hits += 1;
            }
        }
        assert!(hits >= 9, "generic planes in P^4 meet in a single point");
    }

    #[test]
    fn dual_equations_cut_out_the_flat() {
        let field = Field::Q;
        let mut rs = RandomSource::with_bound(45, 20);
        for _ in 0..10 {
            let basis: Vec<ProjPoint> = (0..3)
                .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
                .collect();
            let Ok(flat) = Flat::new(basis) else { continue };
            let duals = flat.dual_equations();
            assert_eq!(duals.rows(), 5 - flat.basis().len());
            for b in flat.basis() {
                for r in 0..duals.rows() {
                    let mut acc = field.zero();
                    for (c, x) in duals.row(r).iter().zip(b.coords()) {
                        acc = acc.add(&c.mul(x));
                    }
                    assert!(acc.is_zero());
                }
            }
            // a random point off the flat violates some equation
            let q = ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap();
            if !flat.contains(&q) {
                let violated = (0..duals.rows()).any(|r| {
                    let mut acc = field.zero();
                    for (c, x) in duals.row(r).iter().zip(q.coords()) {
                        acc = acc.add(&c.mul(x));
                    }
                    !acc.is_zero()
                });
                assert!(violated);
            }
        }
    }

    #[test]
    fn binary_gcd_with_monomial_factors() {
        let field = Field::Q;
        let s = BinaryForm::new(vec![field.one(), field.zero()]);
        let t = BinaryForm::new(vec![field.zero(), field.one()]);
        // gcd(s^2 t, s t^2) = s t
        let a = s.pow(2).mul(&t);
        let b = s.mul(&t.pow(2));
        let g = a.gcd(&b);
        assert_eq!(g.degree(), 2);
        assert!(g.proportional_to(&s.mul(&t)));
    }

    #[test]
    fn common_point_preconditions() {
        let line = Flat::new(vec![qpt(&[1, 0, 0, 0, 0]), qpt(&[0, 1, 0, 0, 0])]).unwrap();
        assert!(common_point(&[line.clone()]).is_err());
        let other = Flat::new(vec![qpt(&[1, 0, 0]), qpt(&[0, 1, 0])]).unwrap();
        assert!(common_point(&[line, other]).is_err());
    }

    #[test]
    fn binary_gcd_and_roots() {
        let field = Field::Q;
        let a = (field.from_i64(1), field.from_i64(2));
        let b = (field.from_i64(1), field.from_i64(-3));
        let f = BinaryForm::from_roots(field, &[a.clone(), b.clone()]);
        let g = BinaryForm::from_roots(field, &[a.clone()]);
        let gcd = f.gcd(&g);
        assert_eq!(gcd.degree(), 1);
        assert!(gcd.eval(&a.0, &a.1).is_zero());
        assert!(f.eval(&b.0, &b.1).is_zero());
        assert!(!f.proportional_to(&g));
        assert!(f.scale(&field.from_i64(7)).proportional_to(&f));
    }

    #[test]
    fn curve_with_common_factor_rejected() {
        let field = Field::Q;
        let s = BinaryForm::new(vec![field.one(), field.zero()]);
        let t = BinaryForm::new(vec![field.zero(), field.one()]);
        // (s^2, st): common factor s
        assert!(RationalCurve::new(vec![s.mul(&s), s.mul(&t)]).is_err());
        assert!(RationalCurve::new(vec![s.mul(&s), t.mul(&t)]).is_ok());
    }
}
