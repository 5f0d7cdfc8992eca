//! Finite-field exhaustive verification: enumerate projective spaces over
//! F_p, compute rational point sets of varieties, and independently recount
//! full-intersection cardinalities for certificates reduced mod p.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{is_prime_u64, Field, FieldElement};
use crate::ideals::{Form, MonomialBasis};
use crate::projgeom::{PointConfig, ProjPoint, RationalCurve};

const ENUMERATION_GUARD: u128 = 10_000_000;

/// All points of P^dim(F_p), canonical representatives (first nonzero
/// coordinate 1) in a fixed deterministic order, stored as a flat u64 array.
pub struct EnumeratedSpace {
    p: u64,
    dim: usize,
    coords: Vec<u64>,
}

impl EnumeratedSpace {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / (self.dim + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[u64] {
        let w = self.dim + 1;
        &self.coords[i * w..(i + 1) * w]
    }

    pub fn to_proj_point(&self, i: usize) -> ProjPoint {
        let field = Field::Fp(self.p);
        ProjPoint::new(
            self.point(i)
                .iter()
                .map(|&v| field.from_i64(v as i64))
                .collect(),
        )
        .expect("enumerated points are nonzero")
    }
}

/// Number of points of P^dim(F_p): (p^(dim+1) - 1) / (p - 1).
pub fn space_size(p: u64, dim: usize) -> u128 {
    let mut acc: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..=dim {
        acc += power;
        power *= p as u128;
    }
    acc
}

/// Enumerates P^dim(F_p). Guarded at 10^7 points.
pub fn enumerate(p: u64, dim: usize) -> Result<EnumeratedSpace> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let count = space_size(p, dim);
    if count > ENUMERATION_GUARD {
        return Err(Error::SizeGuard(format!(
            "P^{dim}(F_{p}) has {count} points, above the 10^7 enumeration guard"
        )));
    }
    let w = dim + 1;
    let mut coords = Vec::with_capacity(count as usize * w);
    // leading-one canonical representatives: position of the 1 first, then
    // free trailing coordinates counted lexicographically
    for lead in 0..w {
        let free = w - lead - 1;
        let mut digits = vec![0u64; free];
        loop {
            for _ in 0..lead {
                coords.push(0);
            }
            coords.push(1);
            coords.extend_from_slice(&digits);
            // increment
            let mut k = free;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if free == 0 || k == usize::MAX {
                break;
            }
        }
    }
    debug_assert_eq!(coords.len() as u128, count * w as u128);
    Ok(EnumeratedSpace { p, dim, coords })
}

/// A form compiled for fast evaluation on u64 coordinate slices.
struct CompiledForm {
    coeffs: Vec<u64>,
    exps: Vec<Vec<u32>>,
}

fn compile_form(form: &Form, p: u64) -> Result<CompiledForm> {
    if form.field() != Field::Fp(p) {
        return Err(Error::Shape("form is not over the enumerated field".into()));
    }
    let basis = MonomialBasis::new(form.num_vars(), form.degree());
    let mut coeffs = Vec::new();
    let mut exps = Vec::new();
    for (i, c) in form.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (_, v) = c.as_modular().expect("modular coefficient");
        coeffs.push(v);
        exps.push(basis.exponents()[i].clone());
    }
    Ok(CompiledForm { coeffs, exps })
}

fn eval_compiled(f: &CompiledForm, pt: &[u64], p: u64) -> u64 {
    let mut acc: u128 = 0;
    for (c, e) in f.coeffs.iter().zip(&f.exps) {
        let mut t: u128 = *c as u128;
        for (x, &k) in pt.iter().zip(e) {
            for _ in 0..k {
                t = (t * *x as u128) % p as u128;
            }
        }
        acc = (acc + t) % p as u128;
    }
    acc as u64
}

/// All rational points of the enumerated space where every form vanishes.
pub fn variety_points(space: &EnumeratedSpace, forms: &[Form]) -> Result<PointConfig> {
    let compiled = forms
        .iter()
        .map(|f| compile_form(f, space.p))
        .collect::<Result<Vec<_>>>()?;
    let mut pts = Vec::new();
    for i in 0..space.len() {
        let pt = space.point(i);
        if compiled.iter().all(|f| eval_compiled(f, pt, space.p) == 0) {
            pts.push(space.to_proj_point(i));
        }
    }
    if pts.is_empty() {
        return Ok(PointConfig::empty(Field::Fp(space.p), space.dim));
    }
    PointConfig::new(pts)
}

/// Counts the rational points of the variety without materializing them.
pub fn variety_count(space: &EnumeratedSpace, forms: &[Form]) -> Result<usize> {
    let compiled = forms
        .iter()
        .map(|f| compile_form(f, space.p))
        .collect::<Result<Vec<_>>>()?;
    let mut n = 0;
    for i in 0..space.len() {
        let pt = space.point(i);
        if compiled.iter().all(|f| eval_compiled(f, pt, space.p) == 0) {
            n += 1;
        }
    }
    Ok(n)
}

/// Counts the curve points on which the surface form vanishes: the
/// independent cross-check of a certificate's full-intersection cardinality
/// after reduction mod p.
pub fn full_intersection_count(curve_points: &PointConfig, surface: &Form) -> Result<usize> {
    if surface.is_zero() {
        return Err(Error::Precondition("surface form is zero".into()));
    }
    if surface.field() != curve_points.field() {
        return Err(Error::Shape(
            "curve points and surface live over different fields".into(),
        ));
    }
    if surface.num_vars() != curve_points.ambient_dim() + 1 {
        return Err(Error::Shape("surface variable count mismatch".into()));
    }
    Ok(curve_points
        .points()
        .iter()
        .filter(|pt| surface.eval_point(pt).is_zero())
        .count())
}

/// Reduces a rational scalar mod p; errors when the denominator vanishes
/// mod p.
pub fn reduce_scalar(x: &FieldElement, p: u64) -> Result<FieldElement> {
    match x {
        FieldElement::Modular { p: q, .. } => {
            if *q == p {
                Ok(x.clone())
            } else {
                Err(Error::Reduction {
                    p,
                    reason: format!("element already lives in F_{q}"),
                })
            }
        }
        FieldElement::Rational(r) => {
            let field = Field::Fp(p);
            let pb = num_bigint::BigInt::from(p);
            // fold a signed remainder into [0, p)
            let to_residue = |v: &num_bigint::BigInt| -> u64 {
                let v = ((v % &pb) + &pb) % &pb;
                let (_, digits) = v.to_u64_digits();
                digits.first().copied().unwrap_or(0)
            };
            let den_r = field.from_i64(to_residue(r.denom()) as i64);
            if den_r.is_zero() {
                return Err(Error::Reduction {
                    p,
                    reason: "denominator divisible by p".into(),
                });
            }
            let num_r = field.from_i64(to_residue(r.numer()) as i64);
            num_r.div(&den_r)
        }
    }
}

pub fn reduce_point(pt: &ProjPoint, p: u64) -> Result<ProjPoint> {
    let coords = pt
        .coords()
        .iter()
        .map(|c| reduce_scalar(c, p))
        .collect::<Result<Vec<_>>>()?;
    ProjPoint::new(coords).map_err(|_| Error::Reduction {
        p,
        reason: "point reduces to the zero vector".into(),
    })
}

pub fn reduce_form(form: &Form, p: u64) -> Result<Form> {
    let coeffs = form
        .coeffs()
        .iter()
        .map(|c| reduce_scalar(c, p))
        .collect::<Result<Vec<_>>>()?;
    Form::new(form.num_vars(), form.degree(), coeffs)
}

pub fn reduce_curve(curve: &RationalCurve, p: u64) -> Result<RationalCurve> {
    let forms = curve
        .forms()
        .iter()
        .map(|f| {
            let coeffs = f
                .coeffs()
                .iter()
                .map(|c| reduce_scalar(c, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(crate::projgeom::BinaryForm::new(coeffs))
        })
        .collect::<Result<Vec<_>>>()?;
    RationalCurve::new(forms).map_err(|e| Error::Reduction {
        p,
        reason: format!("curve degenerates mod p: {e}"),
    })
}

/// All p+1 rational points of the line through two reduced points.
pub fn line_points_mod_p(a: &ProjPoint, b: &ProjPoint, p: u64) -> Result<Vec<ProjPoint>> {
    let field = Field::Fp(p);
    if a.field() != field || b.field() != field {
        return Err(Error::Shape("line basis must be reduced first".into()));
    }
    if a == b {
        return Err(Error::Reduction {
            p,
            reason: "line basis collapses mod p".into(),
        });
    }
    let mut out = Vec::with_capacity(p as usize + 1);
    // (s : t) = (0 : 1), then (1 : t)
    out.push(b.clone());
    for t in 0..p {
        let tf = field.from_i64(t as i64);
        let coords: Vec<FieldElement> = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| x.add(&y.mul(&tf)))
            .collect();
        out.push(ProjPoint::new(coords).map_err(|_| Error::Reduction {
            p,
            reason: "degenerate line point".into(),
        })?);
    }
    Ok(out)
}

/// Distinct rational image points of a curve parametrized over F_p.
pub fn curve_points_mod_p(curve: &RationalCurve, p: u64) -> Result<Vec<ProjPoint>> {
    let field = Field::Fp(p);
    if curve.field() != field {
        return Err(Error::Shape("curve must be reduced first".into()));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |pt: ProjPoint| {
        if seen.insert(pt.clone()) {
            out.push(pt);
        }
    };
    if let Ok(pt) = curve.eval(&field.zero(), &field.one()) {
        push(pt);
    }
    for t in 0..p {
        if let Ok(pt) = curve.eval(&field.one(), &field.from_i64(t as i64)) {
            push(pt);
        }
    }
    Ok(out)
}
