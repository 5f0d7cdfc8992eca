//! JSON serialization for every document the command line reads or writes.
//!
//! Scalars follow the field conventions: rationals as `"num/den"` strings
//! (denominator omitted when 1), prime-field elements as decimal integers,
//! with the field tag carried by the enclosing document.

use serde_json::{json, Map, Value};

use crate::certify::{
    CurveWitness, GeprofiCertificate, TranscriptEntry, TrivialityReport, TrivialityVerdict,
    WitnessLine,
};
use crate::constructions::{ConstructionKind, ConstructionRecord, RecordFlat, RecordForm};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::ideals::{Form, FormSpace, HilbertProfile, MonomialBasis};
use crate::projgeom::{span, BinaryForm, Flat, PointConfig, ProjPoint, RationalCurve};

fn bad(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

pub fn field_to_json(f: &Field) -> Value {
    match f {
        Field::Q => json!("Q"),
        Field::Fp(p) => json!({ "Fp": p }),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    if v.as_str() == Some("Q") {
        return Ok(Field::Q);
    }
    if let Some(p) = v.get("Fp").and_then(Value::as_u64) {
        return Field::prime(p);
    }
    Err(bad("field must be \"Q\" or {\"Fp\": p}"))
}

/// Parses a `--field` style spec: `Q` or `Fp:<p>`.
pub fn field_from_spec(s: &str) -> Result<Field> {
    if s == "Q" {
        return Ok(Field::Q);
    }
    if let Some(p) = s.strip_prefix("Fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| bad(format!("bad field spec `{s}`")))?;
        return Field::prime(p);
    }
    Err(bad(format!("bad field spec `{s}`, expected Q or Fp:<p>")))
}

pub fn scalar_to_json(x: &FieldElement) -> Value {
    match x {
        FieldElement::Rational(_) => json!(x.repr()),
        FieldElement::Modular { value, .. } => json!(value),
    }
}

pub fn scalar_from_json(v: &Value, field: &Field) -> Result<FieldElement> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(field.from_i64(i))
            } else {
                Err(bad(format!("non-integer scalar {n}")))
            }
        }
        _ => Err(bad(format!("scalar must be a string or integer, got {v}"))),
    }
}

pub fn point_to_json(p: &ProjPoint) -> Value {
    Value::Array(p.coords().iter().map(scalar_to_json).collect())
}

pub fn point_from_json(v: &Value, field: &Field) -> Result<ProjPoint> {
    let arr = v.as_array().ok_or_else(|| bad("point must be an array"))?;
    let coords = arr
        .iter()
        .map(|c| scalar_from_json(c, field))
        .collect::<Result<Vec<_>>>()?;
    ProjPoint::new(coords)
}

pub fn config_to_json(cfg: &PointConfig) -> Value {
    json!({
        "ambient_dim": cfg.ambient_dim(),
        "field": field_to_json(&cfg.field()),
        "points": cfg.points().iter().map(point_to_json).collect::<Vec<_>>(),
    })
}

pub fn config_from_json(v: &Value) -> Result<PointConfig> {
    let dim = v
        .get("ambient_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("configuration lacks ambient_dim"))? as usize;
    let field = field_from_json(
        v.get("field")
            .ok_or_else(|| bad("configuration lacks field"))?,
    )?;
    let pts = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("configuration lacks points"))?;
    if pts.is_empty() {
        return Ok(PointConfig::empty(field, dim));
    }
    let points = pts
        .iter()
        .map(|p| point_from_json(p, &field))
        .collect::<Result<Vec<_>>>()?;
    let cfg = PointConfig::new(points)?;
    if cfg.ambient_dim() != dim {
        return Err(bad("ambient_dim does not match point lengths"));
    }
    Ok(cfg)
}

pub fn form_to_json(f: &Form) -> Value {
    let basis = MonomialBasis::new(f.num_vars(), f.degree());
    json!({
        "num_vars": f.num_vars(),
        "degree": f.degree(),
        "monomials": basis.exponents(),
        "coefficients": f.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>(),
    })
}

pub fn form_from_json(v: &Value, field: &Field) -> Result<Form> {
    let num_vars = v
        .get("num_vars")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("form lacks num_vars"))? as usize;
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("form lacks degree"))? as usize;
    let coeffs = v
        .get("coefficients")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("form lacks coefficients"))?
        .iter()
        .map(|c| scalar_from_json(c, field))
        .collect::<Result<Vec<_>>>()?;
    // the monomial list is informative; when present it must match the
    // canonical graded-lex basis
    if let Some(mons) = v.get("monomials").and_then(Value::as_array) {
        let basis = MonomialBasis::new(num_vars, degree);
        if mons.len() != basis.len() {
            return Err(bad("monomial list does not match the canonical basis"));
        }
        for (k, m) in mons.iter().enumerate() {
            let got: Vec<u64> = m
                .as_array()
                .ok_or_else(|| bad("monomial must be an array"))?
                .iter()
                .map(|e| e.as_u64().ok_or_else(|| bad("bad exponent")))
                .collect::<Result<Vec<_>>>()?;
            let want: Vec<u64> = basis.exponents()[k].iter().map(|&e| e as u64).collect();
            if got != want {
                return Err(bad("monomial order differs from the canonical basis"));
            }
        }
    }
    Form::new(num_vars, degree, coeffs)
}

pub fn formspace_to_json(s: &FormSpace, field: &Field) -> Value {
    let basis = MonomialBasis::new(s.num_vars(), s.degree());
    json!({
        "num_vars": s.num_vars(),
        "degree": s.degree(),
        "field": field_to_json(field),
        "monomials": basis.exponents(),
        "vectors": s
            .vectors()
            .iter()
            .map(|v| Value::Array(v.iter().map(scalar_to_json).collect()))
            .collect::<Vec<_>>(),
    })
}

pub fn formspace_from_json(v: &Value) -> Result<FormSpace> {
    let num_vars = v
        .get("num_vars")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("form space lacks num_vars"))? as usize;
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("form space lacks degree"))? as usize;
    let field = field_from_json(
        v.get("field")
            .ok_or_else(|| bad("form space lacks field"))?,
    )?;
    let expected = MonomialBasis::new(num_vars, degree).len();
    let vectors = v
        .get("vectors")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("form space lacks vectors"))?
        .iter()
        .map(|row| {
            let row = row
                .as_array()
                .ok_or_else(|| bad("form space vector must be an array"))?;
            if row.len() != expected {
                return Err(bad("form space vector has the wrong length"));
            }
            row.iter().map(|c| scalar_from_json(c, &field)).collect()
        })
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok(FormSpace::from_vectors(field, num_vars, degree, vectors))
}

pub fn binary_form_to_json(f: &BinaryForm) -> Value {
    Value::Array(f.coeffs().iter().map(scalar_to_json).collect())
}

pub fn binary_form_from_json(v: &Value, field: &Field) -> Result<BinaryForm> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad("binary form must be an array"))?;
    if arr.is_empty() {
        return Err(bad("binary form needs at least one coefficient"));
    }
    Ok(BinaryForm::new(
        arr.iter()
            .map(|c| scalar_from_json(c, field))
            .collect::<Result<Vec<_>>>()?,
    ))
}

pub fn curve_to_json(c: &RationalCurve) -> Value {
    json!({
        "ambient_dim": c.ambient_dim(),
        "degree": c.degree(),
        "forms": c.forms().iter().map(binary_form_to_json).collect::<Vec<_>>(),
    })
}

pub fn curve_from_json(v: &Value, field: &Field) -> Result<RationalCurve> {
    let forms = v
        .get("forms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("curve lacks forms"))?
        .iter()
        .map(|f| binary_form_from_json(f, field))
        .collect::<Result<Vec<_>>>()?;
    RationalCurve::new(forms)
}

pub fn param_to_json(p: &(FieldElement, FieldElement)) -> Value {
    json!([scalar_to_json(&p.0), scalar_to_json(&p.1)])
}

pub fn param_from_json(v: &Value, field: &Field) -> Result<(FieldElement, FieldElement)> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad("parameter must be a pair"))?;
    if arr.len() != 2 {
        return Err(bad("parameter must be a pair"));
    }
    Ok((
        scalar_from_json(&arr[0], field)?,
        scalar_from_json(&arr[1], field)?,
    ))
}

fn witness_line_to_json(l: &WitnessLine) -> Value {
    json!({
        "basis": [point_to_json(&l.basis.0), point_to_json(&l.basis.1)],
        "assigned": l.assigned,
    })
}

fn witness_line_from_json(v: &Value, field: &Field) -> Result<WitnessLine> {
    let basis = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("witness line lacks basis"))?;
    if basis.len() != 2 {
        return Err(bad("witness line basis must have two points"));
    }
    let assigned = v
        .get("assigned")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("witness line lacks assigned points"))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| bad("bad index"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessLine {
        basis: (
            point_from_json(&basis[0], field)?,
            point_from_json(&basis[1], field)?,
        ),
        assigned,
    })
}

pub fn certificate_to_json(c: &GeprofiCertificate) -> Value {
    let data = match &c.witness {
        CurveWitness::PairedLines { lines } => json!({
            "lines": lines.iter().map(witness_line_to_json).collect::<Vec<_>>(),
        }),
        CurveWitness::ConeLines { vertex, lines } => json!({
            "vertex": point_to_json(vertex),
            "lines": lines.iter().map(witness_line_to_json).collect::<Vec<_>>(),
        }),
        CurveWitness::ParamCurve { curve, params } => json!({
            "curve": curve_to_json(curve),
            "params": params.iter().map(param_to_json).collect::<Vec<_>>(),
        }),
    };
    json!({
        "b": c.b,
        "d": c.d,
        "center": point_to_json(&c.center),
        "image": config_to_json(&c.image),
        "surface_witness": form_to_json(&c.surface),
        "curve_witness": { "kind": c.witness.kind_name(), "data": data },
        "transcript": c.transcript.iter().map(|e| json!({
            "check": e.check,
            "status": if e.status { "pass" } else { "fail" },
        })).collect::<Vec<_>>(),
    })
}

pub fn certificate_from_json(v: &Value) -> Result<GeprofiCertificate> {
    let b = v
        .get("b")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("certificate lacks b"))? as usize;
    let d = v
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("certificate lacks d"))? as usize;
    let image = config_from_json(
        v.get("image")
            .ok_or_else(|| bad("certificate lacks image"))?,
    )?;
    let field = image.field();
    let center = point_from_json(
        v.get("center")
            .ok_or_else(|| bad("certificate lacks center"))?,
        &field,
    )?;
    let surface = form_from_json(
        v.get("surface_witness")
            .ok_or_else(|| bad("certificate lacks surface_witness"))?,
        &field,
    )?;
    let cw = v
        .get("curve_witness")
        .ok_or_else(|| bad("certificate lacks curve_witness"))?;
    let kind = cw
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("curve_witness lacks kind"))?;
    let data = cw
        .get("data")
        .ok_or_else(|| bad("curve_witness lacks data"))?;
    let witness = match kind {
        "PAIRED_LINES" => CurveWitness::PairedLines {
            lines: data
                .get("lines")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("paired witness lacks lines"))?
                .iter()
                .map(|l| witness_line_from_json(l, &field))
                .collect::<Result<Vec<_>>>()?,
        },
        "CONE_LINES" => CurveWitness::ConeLines {
            vertex: point_from_json(
                data.get("vertex")
                    .ok_or_else(|| bad("cone witness lacks vertex"))?,
                &field,
            )?,
            lines: data
                .get("lines")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("cone witness lacks lines"))?
                .iter()
                .map(|l| witness_line_from_json(l, &field))
                .collect::<Result<Vec<_>>>()?,
        },
        "PARAM_CURVE" => CurveWitness::ParamCurve {
            curve: curve_from_json(
                data.get("curve")
                    .ok_or_else(|| bad("param witness lacks curve"))?,
                &field,
            )?,
            params: data
                .get("params")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("param witness lacks params"))?
                .iter()
                .map(|p| param_from_json(p, &field))
                .collect::<Result<Vec<_>>>()?,
        },
        other => return Err(bad(format!("unknown curve witness kind `{other}`"))),
    };
    let transcript = v
        .get("transcript")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("certificate lacks transcript"))?
        .iter()
        .map(|e| {
            let check = e
                .get("check")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("transcript entry lacks check"))?;
            let status = match e.get("status").and_then(Value::as_str) {
                Some("pass") => true,
                Some("fail") => false,
                _ => return Err(bad("transcript status must be pass or fail")),
            };
            Ok(TranscriptEntry {
                check: check.into(),
                status,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeprofiCertificate {
        b,
        d,
        center,
        image,
        surface,
        witness,
        transcript,
    })
}

pub fn hilbert_to_json(h: &HilbertProfile) -> Value {
    json!({ "sizes": h.sizes, "h_vector": h.h_vector })
}

fn flat_to_json(f: &Flat) -> Value {
    Value::Array(f.basis().iter().map(point_to_json).collect())
}

fn flat_from_json(v: &Value, field: &Field) -> Result<Flat> {
    let basis = v
        .as_array()
        .ok_or_else(|| bad("flat must be a basis array"))?
        .iter()
        .map(|p| point_from_json(p, field))
        .collect::<Result<Vec<_>>>()?;
    span(&basis)
}

pub fn record_to_json(r: &ConstructionRecord) -> Value {
    let mut named = Map::new();
    for (name, p) in &r.named_points {
        named.insert(name.clone(), point_to_json(p));
    }
    let mut doc = Map::new();
    doc.insert("kind".into(), json!(r.kind.name()));
    doc.insert("parameters".into(), Value::Object(r.parameters.clone()));
    doc.insert("named_points".into(), Value::Object(named));
    doc.insert(
        "flats".into(),
        Value::Array(
            r.flats
                .iter()
                .map(|f: &RecordFlat| {
                    json!({
                        "label": f.label,
                        "role": f.role,
                        "basis": flat_to_json(&f.flat),
                        "points": f.points,
                    })
                })
                .collect(),
        ),
    );
    if !r.forms.is_empty() {
        doc.insert(
            "forms".into(),
            Value::Array(
                r.forms
                    .iter()
                    .map(|f: &RecordForm| {
                        json!({
                            "label": f.label,
                            "form": form_to_json(&f.form),
                            "cfg_points": f.cfg_points,
                            "named_points": f.named_points,
                        })
                    })
                    .collect(),
            ),
        );
    }
    if let Some((curve, params)) = &r.curve {
        doc.insert(
            "curve".into(),
            json!({
                "curve": curve_to_json(curve),
                "params": params.iter().map(param_to_json).collect::<Vec<_>>(),
            }),
        );
    }
    Value::Object(doc)
}

pub fn record_from_json(v: &Value, field: &Field) -> Result<ConstructionRecord> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .and_then(ConstructionKind::from_name)
        .ok_or_else(|| bad("record lacks a known kind"))?;
    let parameters = v
        .get("parameters")
        .and_then(Value::as_object)
        .cloned()
        .unwrap_or_default();
    let mut named_points = Vec::new();
    if let Some(named) = v.get("named_points").and_then(Value::as_object) {
        for (name, pv) in named {
            named_points.push((name.clone(), point_from_json(pv, field)?));
        }
    }
    let mut flats = Vec::new();
    if let Some(arr) = v.get("flats").and_then(Value::as_array) {
        for fv in arr {
            let label = fv
                .get("label")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("flat lacks label"))?;
            let role = fv
                .get("role")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("flat lacks role"))?;
            let flat = flat_from_json(
                fv.get("basis").ok_or_else(|| bad("flat lacks basis"))?,
                field,
            )?;
            let points = fv
                .get("points")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("flat lacks points"))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|u| u as usize)
                        .ok_or_else(|| bad("bad index"))
                })
                .collect::<Result<Vec<_>>>()?;
            flats.push(RecordFlat {
                label: label.into(),
                role: role.into(),
                flat,
                points,
            });
        }
    }
    let mut forms = Vec::new();
    if let Some(arr) = v.get("forms").and_then(Value::as_array) {
        for fv in arr {
            forms.push(RecordForm {
                label: fv
                    .get("label")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("form lacks label"))?
                    .into(),
                form: form_from_json(
                    fv.get("form").ok_or_else(|| bad("form entry lacks form"))?,
                    field,
                )?,
                cfg_points: fv
                    .get("cfg_points")
                    .and_then(Value::as_array)
                    .map(|a| {
                        a.iter()
                            .map(|x| {
                                x.as_u64()
                                    .map(|u| u as usize)
                                    .ok_or_else(|| bad("bad index"))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .transpose()?
                    .unwrap_or_default(),
                named_points: fv
                    .get("named_points")
                    .and_then(Value::as_array)
                    .map(|a| {
                        a.iter()
                            .map(|x| {
                                x.as_str()
                                    .map(String::from)
                                    .ok_or_else(|| bad("bad named point"))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .transpose()?
                    .unwrap_or_default(),
            });
        }
    }
    let curve = match v.get("curve") {
        Some(cv) => {
            let curve = curve_from_json(
                cv.get("curve")
                    .ok_or_else(|| bad("curve entry lacks curve"))?,
                field,
            )?;
            let params = cv
                .get("params")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("curve entry lacks params"))?
                .iter()
                .map(|p| param_from_json(p, field))
                .collect::<Result<Vec<_>>>()?;
            Some((curve, params))
        }
        None => None,
    };
    Ok(ConstructionRecord {
        kind,
        parameters,
        named_points,
        flats,
        forms,
        curve,
    })
}

pub fn census_to_json(r: &TrivialityReport) -> Value {
    json!({
        "collinear_families": r.collinear_families,
        "coplanar_families": r.coplanar_families,
        "hypergrid": r.hypergrid.as_ref().map(|w| json!({
            "lines": w.lines,
            "planes": w.planes,
        })),
        "verdict": match r.verdict {
            TrivialityVerdict::TrivialWitnessFound => "TRIVIAL_WITNESS_FOUND",
            TrivialityVerdict::NoEvidence => "NO_EVIDENCE",
            TrivialityVerdict::Inconclusive => "INCONCLUSIVE",
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{certify_b2, verify_certificate};
    use crate::constructions;
    use crate::field::RandomSource;

    #[test]
    fn config_round_trip() {
        let (cfg, record) = constructions::example_3_2();
        let v = config_to_json(&cfg);
        let back = config_from_json(&v).unwrap();
        assert_eq!(cfg, back);
        let rv = record_to_json(&record);
        let rback = record_from_json(&rv, &cfg.field()).unwrap();
        rback.verify(&cfg).unwrap();
    }

    #[test]
    fn fp_config_round_trip() {
        let field = Field::prime(11).unwrap();
        let cfg = PointConfig::new(vec![
            ProjPoint::from_i64(field, &[1, 3, 5, 7, 9]).unwrap(),
            ProjPoint::from_i64(field, &[0, 1, 2, 3, 4]).unwrap(),
        ])
        .unwrap();
        let back = config_from_json(&config_to_json(&cfg)).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn certificate_round_trip() {
        let field = Field::Q;
        let mut rs = RandomSource::new(777);
        let cfg = PointConfig::new(
            (0..8)
                .map(|_| ProjPoint::new(rs.sample(&field, 5).unwrap()).unwrap())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let cert = certify_b2(&cfg, &mut rs).unwrap().unwrap();
        let v = certificate_to_json(&cert);
        let back = certificate_from_json(&v).unwrap();
        assert_eq!(cert, back);
        assert!(verify_certificate(&back).ok);
    }

    #[test]
    fn formspace_round_trip() {
        let (cfg, _) = constructions::example_3_2();
        let slice = crate::ideals::ideal_slice(&cfg, 2);
        let v = formspace_to_json(&slice, &cfg.field());
        let back = formspace_from_json(&v).unwrap();
        assert_eq!(slice, back);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(config_from_json(&json!({"points": []})).is_err());
        assert!(field_from_json(&json!("R")).is_err());
        assert!(field_from_spec("Fp:10").is_err());
        assert!(scalar_from_json(&json!(1.5), &Field::Q).is_err());
        assert!(point_from_json(&json!(["0", "0"]), &Field::Q).is_err());
    }
}
