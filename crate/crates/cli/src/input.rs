//! JSON problem-file schema and the textual argument parsers.

use diophant::poly::MPoly;
use diophant::quadform::QuadForm4;
use diophant::quartic::{QuarticCurve, QuarticPoint};
use diophant::rational::parse_rational;
use diophant::{Int, ProjVec4, Rational};
use serde::Deserialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::path::Path;

/// Top-level problem file: a kind tag, the kind-specific payload, and
/// optional solver options. All rationals are integer literals or `"p/q"`
/// strings; non-reduced input is accepted and reduced.
#[derive(Deserialize)]
pub struct ProblemFile {
    pub kind: String,
    pub payload: Value,
    #[serde(default)]
    pub options: Options,
    /// claims to re-check for the `verify` subcommand
    #[serde(default)]
    pub claims: Claims,
}

#[derive(Deserialize, Default)]
pub struct Options {
    pub height: Option<u32>,
    pub depth: Option<u32>,
    pub seed: Option<String>,
    pub xi: Option<String>,
}

#[derive(Deserialize, Default)]
pub struct Claims {
    #[serde(default)]
    pub families: Vec<Vec<String>>,
    #[serde(default)]
    pub points: Vec<Value>,
}

pub type SchemaResult<T> = Result<T, String>;

impl ProblemFile {
    pub fn load(path: &Path) -> SchemaResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let file: ProblemFile =
            serde_json::from_str(&text).map_err(|e| format!("invalid JSON: {e}"))?;
        match file.kind.as_str() {
            "form" | "pair" | "quartic" => Ok(file),
            other => Err(format!("unknown kind {other:?}")),
        }
    }

    pub fn form(&self) -> SchemaResult<QuadForm4> {
        if self.kind != "form" {
            return Err(format!("expected kind \"form\", found {:?}", self.kind));
        }
        form_from_value(&self.payload)
    }

    pub fn pair(&self) -> SchemaResult<(QuadForm4, QuadForm4)> {
        if self.kind != "pair" {
            return Err(format!("expected kind \"pair\", found {:?}", self.kind));
        }
        let q1 = self
            .payload
            .get("q1")
            .ok_or_else(|| "payload.q1 missing".to_string())?;
        let q2 = self
            .payload
            .get("q2")
            .ok_or_else(|| "payload.q2 missing".to_string())?;
        Ok((form_from_value(q1)?, form_from_value(q2)?))
    }

    pub fn curve(&self) -> SchemaResult<QuarticCurve> {
        if self.kind != "quartic" {
            return Err(format!("expected kind \"quartic\", found {:?}", self.kind));
        }
        let coeffs = self
            .payload
            .get("curve")
            .and_then(Value::as_array)
            .ok_or_else(|| "payload.curve must be a 5-element array [a0..a4]".to_string())?;
        if coeffs.len() != 5 {
            return Err("payload.curve must have exactly 5 coefficients".into());
        }
        let mut a: Vec<Rational> = Vec::with_capacity(5);
        for c in coeffs {
            a.push(rational_from_value(c)?);
        }
        QuarticCurve::new([
            a[0].clone(),
            a[1].clone(),
            a[2].clone(),
            a[3].clone(),
            a[4].clone(),
        ])
        .map_err(|e| e.to_string())
    }

    /// Points listed in a quartic payload.
    pub fn points(&self) -> SchemaResult<Vec<QuarticPoint>> {
        let Some(list) = self.payload.get("points") else {
            return Ok(Vec::new());
        };
        quartic_points_from_value(list)
    }

    pub fn claimed_families(&self) -> SchemaResult<Vec<[MPoly; 4]>> {
        let mut out = Vec::new();
        for fam in &self.claims.families {
            if fam.len() != 4 {
                return Err("each claimed family needs exactly 4 forms".into());
            }
            let mut forms = Vec::with_capacity(4);
            for f in fam {
                forms.push(MPoly::parse(f).map_err(|e| e.to_string())?);
            }
            out.push([
                forms[0].clone(),
                forms[1].clone(),
                forms[2].clone(),
                forms[3].clone(),
            ]);
        }
        Ok(out)
    }

    pub fn claimed_points(&self) -> SchemaResult<Vec<ProjVec4>> {
        let mut out = Vec::new();
        for v in &self.claims.points {
            let arr = v
                .as_array()
                .ok_or_else(|| "claimed point must be a 4-element array".to_string())?;
            if arr.len() != 4 {
                return Err("claimed point must have 4 coordinates".into());
            }
            let mut coords = Vec::with_capacity(4);
            for c in arr {
                coords.push(rational_from_value(c)?);
            }
            out.push(
                ProjVec4::normalize(&[
                    coords[0].clone(),
                    coords[1].clone(),
                    coords[2].clone(),
                    coords[3].clone(),
                ])
                .map_err(|e| e.to_string())?,
            );
        }
        Ok(out)
    }

    pub fn claimed_quartic_points(&self) -> SchemaResult<Vec<QuarticPoint>> {
        let mut out = Vec::new();
        for v in &self.claims.points {
            out.push(quartic_point_from_value(v)?);
        }
        Ok(out)
    }
}

fn rational_from_value(v: &Value) -> SchemaResult<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| format!("non-integer numeric literal {n}"))?;
            Ok(Rational::from_integer(Int::from(i)))
        }
        other => Err(format!("expected rational, found {other}")),
    }
}

/// Builds a form from `{"coeffs": {"x1^2": r, "x1*x2": r, ...}}` with all
/// ten quadratic monomials optional.
fn form_from_value(v: &Value) -> SchemaResult<QuadForm4> {
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_object)
        .ok_or_else(|| "form payload needs a \"coeffs\" object".to_string())?;
    // deterministic iteration for reproducible error messages
    let sorted: BTreeMap<&String, &Value> = coeffs.iter().collect();
    let mut list: Vec<((usize, usize), Rational)> = Vec::new();
    for (key, val) in sorted {
        let (i, j) = parse_monomial_key(key)?;
        list.push(((i, j), rational_from_value(val)?));
    }
    QuadForm4::from_coeffs(&list).map_err(|e| e.to_string())
}

fn parse_monomial_key(key: &str) -> SchemaResult<(usize, usize)> {
    let bad = || format!("bad monomial key {key:?} (expected \"xi^2\" or \"xi*xj\")");
    let var_index = |s: &str| -> SchemaResult<usize> {
        match s {
            "x1" => Ok(1),
            "x2" => Ok(2),
            "x3" => Ok(3),
            "x4" => Ok(4),
            _ => Err(bad()),
        }
    };
    if let Some(base) = key.strip_suffix("^2") {
        let i = var_index(base)?;
        Ok((i, i))
    } else if let Some((a, b)) = key.split_once('*') {
        let i = var_index(a)?;
        let j = var_index(b)?;
        if i < j {
            Ok((i, j))
        } else {
            Err(bad())
        }
    } else {
        Err(bad())
    }
}

fn quartic_points_from_value(v: &Value) -> SchemaResult<Vec<QuarticPoint>> {
    let arr = v
        .as_array()
        .ok_or_else(|| "points must be an array".to_string())?;
    arr.iter().map(quartic_point_from_value).collect()
}

fn quartic_point_from_value(v: &Value) -> SchemaResult<QuarticPoint> {
    let t = v
        .get("t")
        .ok_or_else(|| "point needs a \"t\" field".to_string())?;
    let y = v
        .get("y")
        .ok_or_else(|| "point needs a \"y\" field".to_string())?;
    Ok(QuarticPoint::new(
        rational_from_value(t)?,
        rational_from_value(y)?,
    ))
}

/// Parses `"x1,x2,x3,x4"` into a projective vector.
pub fn parse_proj_vec(s: &str) -> SchemaResult<ProjVec4> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected 4 comma-separated coordinates, found {}", parts.len()));
    }
    let mut coords = Vec::with_capacity(4);
    for p in parts {
        coords.push(parse_rational(p).map_err(|e| e.to_string())?);
    }
    ProjVec4::normalize(&[
        coords[0].clone(),
        coords[1].clone(),
        coords[2].clone(),
        coords[3].clone(),
    ])
    .map_err(|e| e.to_string())
}

/// Parses `"a,b"` into an integer pencil point.
pub fn parse_xi_pair(s: &str) -> SchemaResult<(Int, Int)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err("expected \"a,b\"".into());
    }
    let a: Int = parts[0]
        .parse()
        .map_err(|_| format!("bad integer {:?}", parts[0]))?;
    let b: Int = parts[1]
        .parse()
        .map_err(|_| format!("bad integer {:?}", parts[1]))?;
    Ok((a, b))
}

/// Parses `"(t1,y1),(t2,y2),..."`.
pub fn parse_point_list(s: &str) -> SchemaResult<Vec<QuarticPoint>> {
    let mut out = Vec::new();
    let trimmed = s.trim();
    let mut rest = trimmed;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| format!("bad point list {s:?}"))?;
        let close = rest[open..]
            .find(')')
            .ok_or_else(|| format!("bad point list {s:?}"))?
            + open;
        let body = &rest[open + 1..close];
        let (t, y) = body
            .split_once(',')
            .ok_or_else(|| format!("bad point {body:?}"))?;
        out.push(QuarticPoint::new(
            parse_rational(t.trim()).map_err(|e| e.to_string())?,
            parse_rational(y.trim()).map_err(|e| e.to_string())?,
        ));
        rest = &rest[close + 1..];
        rest = rest.trim_start_matches([',', ' ']);
    }
    if out.is_empty() {
        return Err(format!("no points in {s:?}"));
    }
    Ok(out)
}
