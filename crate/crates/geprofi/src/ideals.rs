//! Degree slices of vanishing ideals through evaluation matrices: Hilbert
//! functions and h-vectors, singular-point (cone) slices, Weddle excess, and
//! the Macaulay-duality multiplication cokernel.

use crate::error::{Error, Result};
use crate::exactlin::{echelonize, Matrix};
use crate::field::{Field, FieldElement};
use crate::projgeom::{lgp_violation, BinaryForm, PointConfig, ProjPoint, RationalCurve};

/// Monomials of a fixed degree in a fixed number of variables, in
/// graded-lexicographic order with x_0 > x_1 > ... > x_N. Size C(N+d, d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    num_vars: usize,
    degree: usize,
    exponents: Vec<Vec<u32>>,
}

impl MonomialBasis {
    pub fn new(num_vars: usize, degree: usize) -> MonomialBasis {
        assert!(num_vars >= 1);
        let mut exponents = Vec::new();
        let mut current = vec![0u32; num_vars];
        gen_exponents(num_vars, degree as u32, 0, &mut current, &mut exponents);
        MonomialBasis {
            num_vars,
            degree,
            exponents,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.exponents.iter().position(|e| e == exps)
    }

    /// Monomial value at a coordinate vector.
    pub fn eval_monomial(&self, idx: usize, coords: &[FieldElement]) -> FieldElement {
        let field = coords[0].field();
        let mut acc = field.one();
        for (i, &e) in self.exponents[idx].iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&coords[i]);
            }
        }
        acc
    }
}

// lexicographic descent on x_0 first gives graded-lex within a fixed degree
fn gen_exponents(
    nv: usize,
    remaining: u32,
    pos: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if pos == nv - 1 {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        gen_exponents(nv, remaining - e, pos + 1, current, out);
    }
    current[pos] = 0;
}

/// A homogeneous form stored as a coefficient vector over the canonical
/// monomial basis of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    num_vars: usize,
    degree: usize,
    coeffs: Vec<FieldElement>,
}

impl Form {
    pub fn new(num_vars: usize, degree: usize, coeffs: Vec<FieldElement>) -> Result<Form> {
        let basis = MonomialBasis::new(num_vars, degree);
        if coeffs.len() != basis.len() {
            return Err(Error::Shape(format!(
                "form needs {} coefficients, got {}",
                basis.len(),
                coeffs.len()
            )));
        }
        Ok(Form {
            num_vars,
            degree,
            coeffs,
        })
    }

    pub fn zero(field: Field, num_vars: usize, degree: usize) -> Form {
        let n = MonomialBasis::new(num_vars, degree).len();
        Form {
            num_vars,
            degree,
            coeffs: vec![field.zero(); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
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

    pub fn basis(&self) -> MonomialBasis {
        MonomialBasis::new(self.num_vars, self.degree)
    }

    pub fn eval(&self, coords: &[FieldElement]) -> FieldElement {
        assert_eq!(coords.len(), self.num_vars, "coordinate count mismatch");
        let field = coords[0].field();
        let basis = self.basis();
        let mut acc = field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&basis.eval_monomial(i, coords)));
        }
        acc
    }

    pub fn eval_point(&self, p: &ProjPoint) -> FieldElement {
        self.eval(p.coords())
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!((self.num_vars, self.degree), (other.num_vars, other.degree));
        Form {
            num_vars: self.num_vars,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Form {
        Form {
            num_vars: self.num_vars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Partial derivative with respect to variable `var`, a form of degree
    /// one less.
    pub fn partial(&self, var: usize) -> Form {
        let field = self.field();
        assert!(self.degree >= 1);
        let basis = self.basis();
        let target = MonomialBasis::new(self.num_vars, self.degree - 1);
        let mut out = vec![field.zero(); target.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = &basis.exponents()[i];
            if e[var] == 0 {
                continue;
            }
            let mut de = e.clone();
            de[var] -= 1;
            let j = target.index_of(&de).expect("derivative monomial exists");
            let factor = field.from_i64(e[var] as i64);
            out[j] = out[j].add(&c.mul(&factor));
        }
        Form {
            num_vars: self.num_vars,
            degree: self.degree - 1,
            coeffs: out,
        }
    }

    /// Product with another form.
    pub fn mul(&self, other: &Form) -> Form {
        assert_eq!(self.num_vars, other.num_vars);
        let field = self.field();
        let sb = self.basis();
        let ob = other.basis();
        let target = MonomialBasis::new(self.num_vars, self.degree + other.degree);
        let mut out = vec![field.zero(); target.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e: Vec<u32> = sb.exponents()[i]
                    .iter()
                    .zip(&ob.exponents()[j])
                    .map(|(x, y)| x + y)
                    .collect();
                let k = target.index_of(&e).expect("product monomial exists");
                out[k] = out[k].add(&a.mul(b));
            }
        }
        Form {
            num_vars: self.num_vars,
            degree: self.degree + other.degree,
            coeffs: out,
        }
    }

    /// Substitutes linear forms for the variables: given rows l_0, ..,
    /// l_{k-1} (each a coefficient vector over `target_vars` variables),
    /// returns F(l_0, ..., l_{k-1}) as a form in the target variables.
    pub fn substitute_linear(&self, rows: &[Vec<FieldElement>], target_vars: usize) -> Form {
        assert_eq!(rows.len(), self.num_vars);
        let field = self.field();
        let linears: Vec<Form> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), target_vars);
                Form::new(target_vars, 1, r.clone()).expect("linear form")
            })
            .collect();
        let basis = self.basis();
        let mut acc = Form::zero(field, target_vars, self.degree);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = Form::new(target_vars, 0, vec![c.clone()]).expect("constant");
            for (v, &e) in basis.exponents()[i].iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&linears[v]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Restriction to the line through A and B: the binary form
    /// F(s A + t B) of degree deg F.
    pub fn pullback_line(&self, a: &ProjPoint, b: &ProjPoint) -> BinaryForm {
        let field = self.field();
        let basis = self.basis();
        let lines: Vec<BinaryForm> = (0..self.num_vars)
            .map(|i| BinaryForm::new(vec![a.coords()[i].clone(), b.coords()[i].clone()]))
            .collect();
        let mut acc = BinaryForm::new(vec![field.zero(); self.degree + 1]);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = BinaryForm::constant(field.one());
            for (v, &e) in basis.exponents()[i].iter().enumerate() {
                term = term.mul(&lines[v].pow(e as usize));
            }
            acc = acc.add(&term.scale(c));
        }
        acc
    }

    /// Pullback along a rational curve: the binary form F(c_0(s,t), ...,
    /// c_N(s,t)) of degree (deg F)(deg curve).
    pub fn pullback_curve(&self, curve: &RationalCurve) -> BinaryForm {
        assert_eq!(curve.ambient_dim() + 1, self.num_vars);
        let field = self.field();
        let basis = self.basis();
        let total = self.degree * curve.degree();
        let mut acc = BinaryForm::new(vec![field.zero(); total + 1]);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = BinaryForm::constant(field.one());
            for (v, &e) in basis.exponents()[i].iter().enumerate() {
                term = term.mul(&curve.forms()[v].pow(e as usize));
            }
            acc = acc.add(&term.scale(c));
        }
        acc
    }

    /// Rescales a rational form to primitive integer coefficients with a
    /// positive leading entry (the same hypersurface, reduction-friendly).
    /// Prime-field forms are returned unchanged.
    pub fn primitive(&self) -> Form {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        if self.field() != Field::Q || self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            if let Some(r) = c.as_rational() {
                if !r.is_zero() {
                    den_lcm = den_lcm.lcm(r.denom());
                }
            }
        }
        let mut nums: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c.as_rational().expect("rational form");
                (r * num_rational::BigRational::from_integer(den_lcm.clone())).to_integer()
            })
            .collect();
        let mut content = BigInt::zero();
        for n in &nums {
            content = content.gcd(n);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        let lead_negative = nums
            .iter()
            .find(|n| !n.is_zero())
            .map(|n| n.is_negative())
            .unwrap_or(false);
        if lead_negative {
            content = -content;
        }
        for n in &mut nums {
            *n = &*n / &content;
        }
        Form {
            num_vars: self.num_vars,
            degree: self.degree,
            coeffs: nums
                .into_iter()
                .map(|n| FieldElement::Rational(num_rational::BigRational::from_integer(n)))
                .collect(),
        }
    }

    /// True when `self` = c * `other` for some nonzero scalar c.
    pub fn proportional_to(&self, other: &Form) -> bool {
        if (self.num_vars, self.degree) != (other.num_vars, other.degree)
            || self.is_zero() != other.is_zero()
        {
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
}

/// An echelonized basis of a space of forms of a common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    num_vars: usize,
    degree: usize,
    vectors: Vec<Vec<FieldElement>>,
}

impl FormSpace {
    pub fn from_vectors(
        field: Field,
        num_vars: usize,
        degree: usize,
        vectors: Vec<Vec<FieldElement>>,
    ) -> FormSpace {
        FormSpace {
            num_vars,
            degree,
            vectors: echelonize(field, vectors),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vectors(&self) -> &[Vec<FieldElement>] {
        &self.vectors
    }

    pub fn form(&self, i: usize) -> Form {
        Form::new(self.num_vars, self.degree, self.vectors[i].clone()).expect("stored vector")
    }

    pub fn forms(&self) -> Vec<Form> {
        (0..self.dim()).map(|i| self.form(i)).collect()
    }

    /// A combination of the basis with the given coefficients.
    pub fn combination(&self, coeffs: &[FieldElement]) -> Result<Form> {
        if coeffs.len() != self.dim() {
            return Err(Error::Shape("combination length mismatch".into()));
        }
        let field = coeffs
            .first()
            .map(|c| c.field())
            .ok_or_else(|| Error::Precondition("empty combination".into()))?;
        let mut acc = Form::zero(field, self.num_vars, self.degree);
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            let f = Form::new(self.num_vars, self.degree, v.clone())?;
            acc = acc.add(&f.scale(c));
        }
        Ok(acc)
    }
}

/// Evaluation matrix of a configuration in degree d: entry (i, j) is
/// monomial j at the canonical representative of point i.
pub fn eval_matrix(cfg: &PointConfig, d: usize) -> Matrix {
    let basis = MonomialBasis::new(cfg.ambient_dim() + 1, d);
    let rows: Vec<Vec<FieldElement>> = cfg
        .points()
        .iter()
        .map(|p| {
            (0..basis.len())
                .map(|j| basis.eval_monomial(j, p.coords()))
                .collect()
        })
        .collect();
    if cfg.is_empty() {
        return Matrix::zero(0, basis.len(), cfg.field());
    }
    Matrix::from_rows(cfg.field(), rows).expect("rectangular")
}

/// Hilbert function values and h-vector of a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertProfile {
    /// H(0), H(1), ..., H(s) where s is the first degree with H(s) = |Z|.
    pub sizes: Vec<usize>,
    /// First differences (1, h_1, ..., h_s).
    pub h_vector: Vec<usize>,
}

/// Hilbert function H(d) = rank of the degree-d evaluation matrix, computed
/// until it reaches |Z|.
pub fn hilbert(cfg: &PointConfig) -> Result<HilbertProfile> {
    if cfg.is_empty() {
        return Err(Error::Precondition(
            "hilbert needs a nonempty configuration".into(),
        ));
    }
    let mut sizes = Vec::new();
    let mut d = 0;
    loop {
        let h = eval_matrix(cfg, d).rank();
        sizes.push(h);
        if h == cfg.len() {
            break;
        }
        d += 1;
        // |Z| distinct points are always separated in degree |Z| - 1
        assert!(d <= cfg.len(), "Hilbert function failed to reach |Z|");
    }
    let h_vector = first_differences(&sizes);
    Ok(HilbertProfile { sizes, h_vector })
}

fn first_differences(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut prev = 0;
    for &s in sizes {
        out.push(s - prev);
        prev = s;
    }
    out
}

/// The degree-d slice of the vanishing ideal, as an echelonized nullspace of
/// the evaluation matrix. Dimension C(N+d, d) - H(d).
pub fn ideal_slice(cfg: &PointConfig, d: usize) -> FormSpace {
    let m = eval_matrix(cfg, d);
    FormSpace::from_vectors(cfg.field(), cfg.ambient_dim() + 1, d, m.nullspace())
}

/// Forms of degree d through the configuration that are singular at
/// `vertex`: the slice [I_Z ∩ I_vertex^2]_d, realized by appending the N+1
/// partial-derivative evaluation rows at the vertex. Over F_p requires
/// p not dividing d, otherwise the Euler relation degenerates and the
/// partials no longer cut out I_vertex^2.
pub fn singular_slice(cfg: &PointConfig, vertex: &ProjPoint, d: usize) -> Result<FormSpace> {
    if d < 2 {
        return Err(Error::Precondition(
            "singular slice needs degree >= 2".into(),
        ));
    }
    if vertex.ambient_dim() != cfg.ambient_dim() || vertex.field() != cfg.field() {
        return Err(Error::Shape(
            "vertex must live in the configuration's space".into(),
        ));
    }
    if let Field::Fp(p) = cfg.field() {
        if (d as u64) % p == 0 {
            return Err(Error::Precondition(format!(
                "characteristic {p} divides degree {d}"
            )));
        }
    }
    let nv = cfg.ambient_dim() + 1;
    let basis = MonomialBasis::new(nv, d);
    let field = cfg.field();
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(cfg.len() + nv);
    for p in cfg.points() {
        rows.push(
            (0..basis.len())
                .map(|j| basis.eval_monomial(j, p.coords()))
                .collect(),
        );
    }
    // row per variable: d/dx_v of each monomial, evaluated at the vertex
    let dbasis = MonomialBasis::new(nv, d - 1);
    for v in 0..nv {
        let mut row = Vec::with_capacity(basis.len());
        for e in basis.exponents() {
            if e[v] == 0 {
                row.push(field.zero());
                continue;
            }
            let mut de = e.clone();
            de[v] -= 1;
            let j = dbasis.index_of(&de).expect("derivative monomial");
            let val = dbasis
                .eval_monomial(j, vertex.coords())
                .mul(&field.from_i64(e[v] as i64));
            row.push(val);
        }
        rows.push(row);
    }
    let m = Matrix::from_rows(field, rows)?;
    Ok(FormSpace::from_vectors(field, nv, d, m.nullspace()))
}

/// Weddle excess at p: dim of the singular slice minus the expected cone
/// dimension max(0, s - (N+1)) for s the ideal-slice dimension. A positive
/// point certifies an unexpected cone.
pub fn weddle_excess(cfg: &PointConfig, p: &ProjPoint, d: usize) -> Result<i64> {
    let sing = singular_slice(cfg, p, d)?.dim() as i64;
    let slice = ideal_slice(cfg, d).dim() as i64;
    let expected = (slice - (cfg.ambient_dim() as i64 + 1)).max(0);
    Ok(sing - expected)
}

/// Macaulay-dual cokernel dimension dim [I_Z ∩ I_p^2]_2 for a configuration
/// imposing independent conditions on quadrics. Zero at a general p means
/// multiplication by the dual linear form has maximal rank from degree 1 to
/// degree 2 in R/(L_1^2, ..., L_q^2).
pub fn wlp_cokernel(cfg: &PointConfig, p: &ProjPoint) -> Result<usize> {
    let n2 = MonomialBasis::new(cfg.ambient_dim() + 1, 2).len();
    if cfg.len() > n2 {
        return Err(Error::Precondition(format!(
            "configuration of {} points cannot impose independent conditions on quadrics",
            cfg.len()
        )));
    }
    let h2 = eval_matrix(cfg, 2).rank();
    if h2 != cfg.len() {
        return Err(Error::Precondition(format!(
            "dependent conditions on quadrics: H(2) = {h2} for {} points",
            cfg.len()
        )));
    }
    Ok(singular_slice(cfg, p, 2)?.dim())
}

/// Coefficients (constant first) of the determinant of the cone-condition
/// matrix along the parametrized line a + t*b: for a configuration whose
/// quadric slice has dimension exactly five with basis F_1..F_5, the entry
/// (j, i) of the matrix is dF_i/dx_j evaluated at a + t*b, and a cone with
/// vertex at that point exists precisely where the determinant vanishes.
pub fn cone_determinant_on_line(
    cfg: &PointConfig,
    a: &ProjPoint,
    b: &ProjPoint,
) -> Result<Vec<FieldElement>> {
    if cfg.ambient_dim() != 4 {
        return Err(Error::Shape("cone determinant is defined in P^4".into()));
    }
    let slice = ideal_slice(cfg, 2);
    if slice.dim() != 5 {
        return Err(Error::Precondition(format!(
            "need a five-dimensional quadric slice, found {}",
            slice.dim()
        )));
    }
    let field = cfg.field();
    let partials: Vec<Vec<Form>> = slice
        .forms()
        .iter()
        .map(|f| (0..5).map(|v| f.partial(v)).collect())
        .collect();
    let eval_det = |t: &FieldElement| -> Result<FieldElement> {
        let coords: Vec<FieldElement> = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| x.add(&y.mul(t)))
            .collect();
        let mut m = Matrix::zero(5, 5, field);
        for (i, dfi) in partials.iter().enumerate() {
            for (j, d) in dfi.iter().enumerate() {
                m.set(j, i, d.eval(&coords));
            }
        }
        m.det()
    };
    // the determinant is a polynomial of degree at most 5 in t; interpolate
    // from six samples and confirm on a seventh
    let ts: Vec<FieldElement> = (0..7).map(|k| field.from_i64(k)).collect();
    let vals: Vec<FieldElement> = ts.iter().map(&eval_det).collect::<Result<Vec<_>>>()?;
    let mut vrows = Vec::with_capacity(6);
    for t in &ts[..6] {
        let mut row = Vec::with_capacity(6);
        let mut acc = field.one();
        for _ in 0..6 {
            row.push(acc.clone());
            acc = acc.mul(t);
        }
        vrows.push(row);
    }
    let vmat = Matrix::from_rows(field, vrows)?;
    let coeffs = vmat
        .solve(&vals[..6])
        .ok_or_else(|| Error::Shape("Vandermonde solve failed".into()))?;
    // consistency at the seventh sample
    let mut check = field.zero();
    let mut acc = field.one();
    for c in &coeffs {
        check = check.add(&c.mul(&acc));
        acc = acc.mul(&ts[6]);
    }
    if check != vals[6] {
        return Err(Error::Shape(
            "determinant is not a degree-5 polynomial".into(),
        ));
    }
    Ok(coeffs)
}

/// Numeric Castelnuovo/pencil flag for LGP configurations in P^4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CastelnuovoFlag {
    /// At least 11 points with H(2) <= 9: the configuration lies on a
    /// rational normal curve.
    RncForced,
    /// At least 9 points: the general projection cannot lie on a pencil of
    /// quadrics.
    PencilExcluded,
    None,
}

/// Purely numeric flag; no curve is constructed. Errors when the
/// configuration is not in LGP.
pub fn castelnuovo_flag(cfg: &PointConfig) -> Result<CastelnuovoFlag> {
    if cfg.ambient_dim() != 4 {
        return Err(Error::Shape("castelnuovo flag is defined in P^4".into()));
    }
    if let Some(witness) = lgp_violation(cfg) {
        return Err(Error::Precondition(format!(
            "configuration is not in LGP (violating subset {witness:?})"
        )));
    }
    let h2 = eval_matrix(cfg, 2).rank();
    if cfg.len() >= 11 && h2 <= 9 {
        Ok(CastelnuovoFlag::RncForced)
    } else if cfg.len() >= 9 {
        Ok(CastelnuovoFlag::PencilExcluded)
    } else {
        Ok(CastelnuovoFlag::None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RandomSource;
    use crate::projgeom::project;

    fn qpt(coords: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(Field::Q, coords).unwrap()
    }

    pub fn ten_point_example() -> PointConfig {
        PointConfig::new(vec![
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
        ])
        .unwrap()
    }

    #[test]
    fn monomial_basis_shape() {
        let b = MonomialBasis::new(5, 2);
        assert_eq!(b.len(), 15);
        assert_eq!(b.exponents()[0], vec![2, 0, 0, 0, 0]);
        assert_eq!(b.exponents()[1], vec![1, 1, 0, 0, 0]);
        assert_eq!(b.exponents()[14], vec![0, 0, 0, 0, 2]);
        assert!(b.exponents().iter().all(|e| e.iter().sum::<u32>() == 2));
    }

    #[test]
    fn eval_matrix_examples() {
        let one = PointConfig::new(vec![qpt(&[1, 2, 3, 4, 5])]).unwrap();
        let m = eval_matrix(&one, 1);
        assert_eq!((m.rows(), m.cols()), (1, 5));
        assert_eq!(m.row(0), one.point(0).coords());

        let coords: Vec<ProjPoint> = (0..5)
            .map(|i| {
                let mut c = [0i64; 5];
                c[i] = 1;
                qpt(&c)
            })
            .collect();
        let cfg = PointConfig::new(coords).unwrap();
        assert_eq!(eval_matrix(&cfg, 1).rank(), 5);

        assert_eq!(eval_matrix(&ten_point_example(), 2).rank(), 10);
    }

    #[test]
    fn ten_points_h_vector() {
        let h = hilbert(&ten_point_example()).unwrap();
        assert_eq!(h.h_vector, vec![1, 4, 5]);
        assert_eq!(h.sizes, vec![1, 5, 10]);
    }

    #[test]
    fn ten_points_quadric_slice() {
        let s = ideal_slice(&ten_point_example(), 2);
        assert_eq!(s.dim(), 5);
        for f in s.forms() {
            for p in ten_point_example().points() {
                assert!(f.eval_point(p).is_zero());
            }
        }
    }

    #[test]
    fn rnc_points_h_vector() {
        let c = RationalCurve::rational_normal(Field::Q, 4);
        let field = Field::Q;
        let pts: Vec<ProjPoint> = (0..10)
            .map(|k| c.eval(&field.one(), &field.from_i64(k - 4)).unwrap())
            .collect();
        let cfg = PointConfig::new(pts).unwrap();
        let h = hilbert(&cfg).unwrap();
        assert_eq!(h.h_vector, vec![1, 4, 4, 1]);
        assert_eq!(ideal_slice(&cfg, 2).dim(), 6);
    }

    #[test]
    fn empty_configuration_singular_slice() {
        let cfg = PointConfig::empty(Field::Q, 4);
        let v = qpt(&[1, 2, 3, 4, 5]);
        let s = singular_slice(&cfg, &v, 2).unwrap();
        assert_eq!(s.dim(), 15 - 5);
    }

    #[test]
    fn singular_slice_of_ten_points_is_a_cone_line() {
        let cfg = ten_point_example();
        let mut rs = RandomSource::new(404);
        let field = Field::Q;
        for _ in 0..5 {
            let v = ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap();
            let s = singular_slice(&cfg, &v, 2).unwrap();
            assert_eq!(s.dim(), 1);
            let f = s.form(0);
            // singular at the vertex: all partials vanish
            for var in 0..5 {
                assert!(f.partial(var).eval_point(&v).is_zero());
            }
        }
    }

    #[test]
    fn singular_slice_at_a_configuration_point_has_expected_dimension() {
        // for seven or more LGP points the general projection lies in no
        // quadric cone with vertex at an image point: a vertex inside the
        // configuration imposes exactly four new conditions (vanishing is
        // already forced and the Euler relation absorbs one partial)
        let field = Field::Q;
        for seed in [90u64, 91, 92] {
            let mut rs = RandomSource::new(seed);
            let pts: Vec<ProjPoint> = (0..7)
                .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
                .collect();
            let cfg = PointConfig::new(pts).unwrap();
            if lgp_violation(&cfg).is_some() {
                continue;
            }
            let full = ideal_slice(&cfg, 2).dim();
            for k in 0..cfg.len() {
                let s = singular_slice(&cfg, cfg.point(k), 2).unwrap();
                assert_eq!(s.dim(), full - 4);
            }
        }
    }

    #[test]
    fn singular_slice_rejects_degree_divisible_by_characteristic() {
        // over F_2 the Euler relation degenerates in degree 2
        let f2 = Field::prime(2).unwrap();
        let cfg =
            PointConfig::new(vec![ProjPoint::from_i64(f2, &[1, 0, 1, 0, 1]).unwrap()]).unwrap();
        let v = ProjPoint::from_i64(f2, &[1, 1, 1, 1, 1]).unwrap();
        assert!(singular_slice(&cfg, &v, 2).is_err());
        // degree 3 over F_3 is rejected, degree 2 over F_3 is fine
        let f3 = Field::prime(3).unwrap();
        let cfg3 =
            PointConfig::new(vec![ProjPoint::from_i64(f3, &[1, 0, 1, 0, 1]).unwrap()]).unwrap();
        let v3 = ProjPoint::from_i64(f3, &[1, 1, 2, 1, 1]).unwrap();
        assert!(singular_slice(&cfg3, &v3, 3).is_err());
        assert!(singular_slice(&cfg3, &v3, 2).is_ok());
    }

    #[test]
    fn weddle_excess_examples() {
        let mut rs = RandomSource::new(2024);
        let field = Field::Q;
        let v = ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap();
        assert_eq!(weddle_excess(&ten_point_example(), &v, 2).unwrap(), 1);

        // ten random points: no unexpected cone
        let pts: Vec<ProjPoint> = (0..10)
            .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
            .collect();
        let cfg = PointConfig::new(pts).unwrap();
        let w = ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap();
        assert_eq!(weddle_excess(&cfg, &w, 2).unwrap(), 0);
    }

    #[test]
    fn wlp_cokernel_examples() {
        let mut rs = RandomSource::new(11);
        let field = Field::Q;
        let p = ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap();
        assert_eq!(wlp_cokernel(&ten_point_example(), &p).unwrap(), 1);

        let pts: Vec<ProjPoint> = (0..10)
            .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
            .collect();
        let cfg = PointConfig::new(pts).unwrap();
        assert_eq!(wlp_cokernel(&cfg, &p).unwrap(), 0);

        // single point: the library value agrees with an independent route
        // (restrict the space of quadrics singular at p to the point)
        let single = PointConfig::new(vec![qpt(&[1, 2, 3, 4, 5])]).unwrap();
        let direct = {
            let singular_at_p = singular_slice(&PointConfig::empty(field, 4), &p, 2).unwrap();
            let ev = eval_matrix(&single, 2);
            let restricted = ev
                .mul(
                    &Matrix::from_rows(field, singular_at_p.vectors().to_vec())
                        .unwrap()
                        .transpose(),
                )
                .unwrap();
            singular_at_p.dim() - restricted.rank()
        };
        assert_eq!(wlp_cokernel(&single, &p).unwrap(), direct);
        assert!(ev_dependent_error_check());
    }

    fn ev_dependent_error_check() -> bool {
        // 16 points cannot impose independent conditions on the 15 quadric
        // monomials of P^4
        let mut rs = RandomSource::new(5150);
        let field = Field::Q;
        let pts: Vec<ProjPoint> = (0..16)
            .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
            .collect();
        let cfg = PointConfig::new(pts).unwrap();
        let p = ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap();
        wlp_cokernel(&cfg, &p).is_err()
    }

    #[test]
    fn castelnuovo_flag_examples() {
        let c = RationalCurve::rational_normal(Field::Q, 4);
        let field = Field::Q;
        let on_rnc = |n: i64| {
            PointConfig::new(
                (0..n)
                    .map(|k| c.eval(&field.one(), &field.from_i64(k - 5)).unwrap())
                    .collect(),
            )
            .unwrap()
        };
        assert_eq!(
            castelnuovo_flag(&on_rnc(12)).unwrap(),
            CastelnuovoFlag::RncForced
        );
        assert_eq!(
            castelnuovo_flag(&on_rnc(14)).unwrap(),
            CastelnuovoFlag::RncForced
        );

        let mut rs = RandomSource::new(88);
        let rand_cfg = |rs: &mut RandomSource, n: usize| {
            PointConfig::new(
                (0..n)
                    .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
                    .collect(),
            )
            .unwrap()
        };
        let nine = rand_cfg(&mut rs, 9);
        assert_eq!(
            castelnuovo_flag(&nine).unwrap(),
            CastelnuovoFlag::PencilExcluded
        );
        let six = rand_cfg(&mut rs, 6);
        assert_eq!(castelnuovo_flag(&six).unwrap(), CastelnuovoFlag::None);

        // non-LGP input is a precondition error
        assert!(castelnuovo_flag(&ten_point_example()).is_err());
    }

    #[test]
    fn nine_lgp_points_have_expected_h_vector() {
        let field = Field::Q;
        let mut rs = RandomSource::new(314);
        let pts: Vec<ProjPoint> = (0..9)
            .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
            .collect();
        let cfg = PointConfig::new(pts).unwrap();
        assert!(lgp_violation(&cfg).is_none());
        assert_eq!(hilbert(&cfg).unwrap().h_vector, vec![1, 4, 4]);
    }

    #[test]
    fn lgp_h_vectors_have_no_small_intermediate_entries() {
        // Maroscia: an intermediate entry < 4 for points in P^4 would force
        // five points into a hyperplane, impossible under LGP.
        let field = Field::Q;
        for seed in 0..12 {
            let mut rs = RandomSource::new(7000 + seed);
            let n = 6 + (seed as usize % 7);
            let pts: Vec<ProjPoint> = (0..n)
                .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
                .collect();
            let cfg = PointConfig::new(pts).unwrap();
            if lgp_violation(&cfg).is_some() {
                continue;
            }
            let h = hilbert(&cfg).unwrap().h_vector;
            assert!(h.iter().sum::<usize>() == n);
            for (i, &hi) in h.iter().enumerate() {
                if i >= 1 && i + 1 < h.len() {
                    assert!(hi >= 4, "intermediate h_{i} = {hi} in {h:?}");
                }
            }
            if n > 5 {
                assert_eq!(h[1], 4);
            }
        }
    }

    #[test]
    fn cone_determinant_has_degree_five() {
        // ten general points: the locus of cone vertices is a quintic
        // threefold, so the restriction to a random line has degree five
        let field = Field::Q;
        let mut rs = RandomSource::new(271828);
        let pts: Vec<ProjPoint> = (0..10)
            .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
            .collect();
        let cfg = PointConfig::new(pts).unwrap();
        let a = ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap();
        let b = ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap();
        let coeffs = cone_determinant_on_line(&cfg, &a, &b).unwrap();
        assert_eq!(coeffs.len(), 6);
        assert!(!coeffs[5].is_zero(), "leading coefficient must be nonzero");
    }

    #[test]
    fn hilbert_is_invariant_under_coordinate_changes() {
        let field = Field::Q;
        let cfg = ten_point_example();
        let mut rs = RandomSource::new(99);
        for _ in 0..4 {
            let m = loop {
                let cand = Matrix::new(5, 5, field, rs.sample(&field, 25).unwrap()).unwrap();
                if cand.rank() == 5 {
                    break cand;
                }
            };
            let moved = cfg.apply_matrix(&m).unwrap();
            assert_eq!(
                hilbert(&moved).unwrap().h_vector,
                hilbert(&cfg).unwrap().h_vector
            );
        }
    }

    #[test]
    fn eight_random_p3_points_quadric_count() {
        let field = Field::Q;
        let mut rs = RandomSource::new(606);
        // sample 8 points in P^3 via projection of LGP-verified sample in P^4
        let pts: Vec<ProjPoint> = (0..8)
            .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
            .collect();
        let cfg = PointConfig::new(pts).unwrap();
        assert!(lgp_violation(&cfg).is_none());
        let center = ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap();
        let pr = project(&cfg, &center).unwrap();
        assert!(!pr.collided);
        assert_eq!(ideal_slice(&pr.image, 2).dim(), 2);
    }
}
