//! JSON encodings of instances, generating functions and quasi-polynomials.
//!
//! Integers are written as decimal strings so that arbitrary precision
//! survives any JSON tooling. On input, plain JSON integers are accepted too
//! as long as they are exact; floats are rejected.

use std::str::FromStr;

use latcount_core::{
    Form, HRepPolyhedron, Int, IntMatrix, Monomial, QuasiPolynomial, Rat, ShortRationalFunction, SrfTerm,
};
use num_bigint::Sign;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
}

fn schema<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Schema(msg.into()))
}

/// A parsed instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    H(HRepPolyhedron),
    /// Points and rays as matrix columns.
    V {
        points: IntMatrix,
        rays: IntMatrix,
    },
}

impl Instance {
    pub fn dim(&self) -> usize {
        match self {
            Instance::H(p) => p.dim(),
            Instance::V { points, .. } => points.rows(),
        }
    }
}

fn is_decimal(s: &str) -> bool {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
}

fn parse_int(v: &Value, what: &str) -> Result<Int, ParseError> {
    match v {
        Value::String(s) if is_decimal(s) => Ok(Int::from_str(s).expect("checked decimal")),
        Value::Number(n) if n.is_i64() => Ok(Int::from(n.as_i64().unwrap())),
        Value::Number(n) if n.is_u64() => Ok(Int::from(n.as_u64().unwrap())),
        _ => schema(format!("{what}: expected an integer, found {v}")),
    }
}

fn parse_vec(v: &Value, what: &str) -> Result<Vec<Int>, ParseError> {
    let Value::Array(items) = v else {
        return schema(format!("{what}: expected an array"));
    };
    items.iter().map(|x| parse_int(x, what)).collect()
}

fn parse_rows(v: &Value, what: &str) -> Result<Vec<Vec<Int>>, ParseError> {
    let Value::Array(items) = v else {
        return schema(format!("{what}: expected an array of rows"));
    };
    items.iter().map(|r| parse_vec(r, what)).collect()
}

fn rows_to_matrix(rows: Vec<Vec<Int>>, ncols: usize, what: &str) -> Result<IntMatrix, ParseError> {
    if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
        return schema(format!("{what}: row {bad} has {} entries, expected {ncols}", rows[bad].len()));
    }
    Ok(IntMatrix::from_big_rows(rows, ncols).expect("row lengths checked"))
}

/// Parses an instance file: `{"form": "inequality"|"standard", "A": rows,
/// "b": vector}` or `{"form": "vrep", "P": point rows, "R": ray rows}`.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let root: Value = serde_json::from_str(text)?;
    let Value::Object(obj) = &root else {
        return schema("instance must be a JSON object");
    };
    let form = match obj.get("form") {
        Some(Value::String(s)) => s.as_str(),
        _ => return schema("missing string field \"form\""),
    };
    match form {
        "inequality" | "standard" => {
            let rows = parse_rows(obj.get("A").unwrap_or(&Value::Null), "A")?;
            let b = parse_vec(obj.get("b").unwrap_or(&Value::Null), "b")?;
            let ncols = rows.first().map_or(0, Vec::len);
            if ncols == 0 {
                return schema("A must have at least one row and one column");
            }
            let a = rows_to_matrix(rows, ncols, "A")?;
            if a.rows() != b.len() {
                return schema(format!("b has {} entries but A has {} rows", b.len(), a.rows()));
            }
            let form = if form == "inequality" { Form::Inequality } else { Form::Standard };
            Ok(Instance::H(HRepPolyhedron::new(form, a, b).expect("dimensions checked")))
        }
        "vrep" => {
            let pts = parse_rows(obj.get("P").unwrap_or(&Value::Null), "P")?;
            let n = pts.first().map_or(0, Vec::len);
            if n == 0 {
                return schema("P must contain at least one point of positive dimension");
            }
            let rays = match obj.get("R") {
                None | Some(Value::Null) => Vec::new(),
                Some(v) => parse_rows(v, "R")?,
            };
            let points = rows_to_matrix(pts, n, "P")?.transpose();
            let rays = if rays.is_empty() { IntMatrix::zeros(n, 0) } else { rows_to_matrix(rays, n, "R")?.transpose() };
            Ok(Instance::V { points, rays })
        }
        other => schema(format!("unknown form \"{other}\"")),
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    c: String,
    e: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    num: Vec<MonomialJson>,
    den: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct SrfJson {
    n: usize,
    terms: Vec<TermJson>,
}

fn strings(v: &[Int]) -> Vec<String> {
    v.iter().map(Int::to_string).collect()
}

fn ints(v: &[String], what: &str) -> Result<Vec<Int>, ParseError> {
    v.iter()
        .map(
            |s| {
                if is_decimal(s) {
                    Ok(Int::from_str(s).unwrap())
                } else {
                    schema(format!("{what}: bad integer {s:?}"))
                }
            },
        )
        .collect()
}

pub fn srf_to_json(f: &ShortRationalFunction) -> String {
    let doc = SrfJson {
        n: f.dim,
        terms: f
            .terms
            .iter()
            .map(|t| TermJson {
                num: t
                    .numerator
                    .iter()
                    .map(|m| MonomialJson { c: m.coeff.to_string(), e: strings(&m.exponent) })
                    .collect(),
                den: t.denominator.iter().map(|u| strings(u)).collect(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn srf_from_json(text: &str) -> Result<ShortRationalFunction, ParseError> {
    let doc: SrfJson = serde_json::from_str(text)?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (i, t) in doc.terms.into_iter().enumerate() {
        let mut numerator = Vec::with_capacity(t.num.len());
        for m in t.num {
            let exponent = ints(&m.e, "exponent")?;
            if exponent.len() != doc.n {
                return schema(format!("term {i}: exponent length {} differs from n = {}", exponent.len(), doc.n));
            }
            let coeff = ints(std::slice::from_ref(&m.c), "coefficient")?.remove(0);
            numerator.push(Monomial { coeff, exponent });
        }
        let denominator = t.den.iter().map(|u| ints(u, "denominator")).collect::<Result<Vec<_>, _>>()?;
        if denominator.iter().any(|u| u.len() != doc.n) {
            return schema(format!("term {i}: denominator vector length differs from n = {}", doc.n));
        }
        if denominator.iter().any(|u| u.iter().all(|x| x.sign() == Sign::NoSign)) {
            return schema(format!("term {i}: zero denominator vector"));
        }
        terms.push(SrfTerm { numerator, denominator });
    }
    Ok(ShortRationalFunction { dim: doc.n, terms })
}

#[derive(Serialize, Deserialize)]
struct QuasiPolynomialJson {
    period: Value,
    coeffs: Vec<Vec<String>>,
}

fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Coefficient row `i` belongs to the residue class `m ≡ i (mod period)`;
/// entry `j` is the coefficient of `m^j`.
pub fn quasi_polynomial_to_json(qp: &QuasiPolynomial) -> String {
    let doc = QuasiPolynomialJson {
        period: match u64::try_from(&qp.period) {
            Ok(t) => Value::from(t),
            Err(_) => Value::String(qp.period.to_string()),
        },
        coeffs: qp.coeffs.iter().map(|row| row.iter().map(rat_string).collect()).collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn quasi_polynomial_from_json(text: &str) -> Result<QuasiPolynomial, ParseError> {
    let doc: QuasiPolynomialJson = serde_json::from_str(text)?;
    let period = parse_int(&doc.period, "period")?;
    let dim = doc.coeffs.first().map_or(0, |r| r.len().saturating_sub(1));
    let mut coeffs = Vec::with_capacity(doc.coeffs.len());
    for row in &doc.coeffs {
        if row.len() != dim + 1 {
            return schema("coefficient rows differ in length");
        }
        let parsed = row
            .iter()
            .map(|s| match s.split_once('/') {
                Some((p, q)) if is_decimal(p) && is_decimal(q) && !q.trim_start_matches(['+', '0']).is_empty() => {
                    Ok(Rat::new(Int::from_str(p).unwrap(), Int::from_str(q).unwrap()))
                }
                None if is_decimal(s) => Ok(Rat::from_integer(Int::from_str(s).unwrap())),
                _ => schema(format!("bad rational {s:?}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        coeffs.push(parsed);
    }
    if Int::from(coeffs.len()) != period {
        return schema("number of coefficient rows differs from the period");
    }
    Ok(QuasiPolynomial { dim, period, coeffs })
}
