//! JSON encoding of exact data.
//!
//! Integers are bare JSON numbers when they fit in an `i64` and decimal
//! strings otherwise; non-integral rationals are `"p/q"` strings. Floats are
//! only accepted where the data is numeric by nature (generator matrices and
//! flow moves).

use nalgebra::DMatrix;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::clifford::{LogicalClifford, PauliLabel};
use crate::code::{GkpCode, Turn};
use crate::error::{Error, Result};
use crate::exact::{Int, IntMatrix, Matrix, Rat, Scalar};
use crate::lattice::{DualCoords, GramMatrix};
use crate::normal_form::LatticeType;
use crate::transport::{Move, PathWord};

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

pub fn int_to_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

pub fn rat_to_json(x: &Rat) -> Value {
    if x.is_integer() {
        int_to_json(x.numer())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn parse_int(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(malformed(format!("expected an integer, got {n}")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<Int>()
            .map_err(|_| malformed(format!("expected an integer, got {s:?}"))),
        other => Err(malformed(format!("expected an integer, got {other}"))),
    }
}

pub fn parse_rat_str(s: &str) -> Result<Rat> {
    let bad = || malformed(format!("expected a rational \"p/q\", got {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(malformed("zero denominator"));
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat_str(s),
        Value::Number(_) => parse_int(v)
            .map(Rat::from_integer)
            .map_err(|_| malformed(format!("exact value expected, got float {v}"))),
        other => Err(malformed(format!("expected a rational, got {other}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| malformed(format!("{what} must be an array")))
}

fn parse_rows<T>(
    v: &Value,
    what: &str,
    entry: impl Fn(&Value) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    let rows = array(v, what)?;
    let parsed = rows
        .iter()
        .map(|r| {
            array(r, what)?
                .iter()
                .map(&entry)
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(first) = parsed.first() {
        if parsed.iter().any(|r| r.len() != first.len()) {
            return Err(malformed(format!("{what} has rows of unequal length")));
        }
    }
    Ok(parsed)
}

fn matrix_from_rows<T: Clone>(rows: Vec<Vec<T>>) -> Result<Matrix<T>> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    Matrix::new(r, c, rows.into_iter().flatten().collect())
}

pub fn parse_int_matrix(v: &Value) -> Result<IntMatrix> {
    matrix_from_rows(parse_rows(v, "integer matrix", parse_int)?)
}

pub fn parse_float_rows(v: &Value) -> Result<Vec<Vec<f64>>> {
    parse_rows(v, "float matrix", |x| {
        x.as_f64()
            .ok_or_else(|| malformed(format!("expected a number, got {x}")))
    })
}

pub fn parse_float_matrix(v: &Value) -> Result<DMatrix<f64>> {
    let rows = parse_float_rows(v)?;
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    Ok(DMatrix::from_fn(r, c, |i, j| rows[i][j]))
}

pub fn matrix_to_json<T: Scalar>(m: &Matrix<T>, entry: impl Fn(&T) -> Value) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(&entry).collect()))
            .collect(),
    )
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    matrix_to_json(m, int_to_json)
}

fn float_matrix_to_json(m: &DMatrix<f64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| json!(m[(i, j)])).collect()))
            .collect(),
    )
}

pub fn rat_vec_to_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_json).collect())
}

pub fn int_vec_to_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn parse_rat_vec(v: &Value) -> Result<Vec<Rat>> {
    array(v, "vector")?.iter().map(parse_rat).collect()
}

/// Looks through a wrapping object for `key`, so that whole documents
/// emitted by one command can be fed to another.
fn unwrap<'a>(v: &'a Value, key: &str) -> &'a Value {
    match v {
        Value::Object(o) => o.get(key).unwrap_or(v),
        _ => v,
    }
}

/// A bare matrix, or any object with a `"gram"` field (codes included).
pub fn parse_gram(v: &Value) -> Result<GramMatrix> {
    GramMatrix::new(parse_int_matrix(unwrap(v, "gram"))?)
}

/// A bare matrix or an object with a `"u"` field.
pub fn parse_unimodular(v: &Value) -> Result<IntMatrix> {
    parse_int_matrix(unwrap(v, "u"))
}

pub fn parse_dual_coords(v: &Value) -> Result<DualCoords> {
    let v = match v {
        Value::Object(o) => o
            .get("h")
            .or_else(|| o.get("eta_s"))
            .ok_or_else(|| malformed("expected a displacement vector"))?,
        _ => v,
    };
    parse_rat_vec(v).map(DualCoords)
}

pub fn turns_to_json(t: &[Turn]) -> Value {
    Value::Array(t.iter().map(|x| rat_to_json(x.value())).collect())
}

pub fn code_to_json(c: &GkpCode) -> Value {
    json!({
        "gram": int_matrix_to_json(c.gram().matrix()),
        "sector": turns_to_json(c.sector()),
    })
}

/// Code object; a missing sector means the trivial one.
pub fn parse_code(v: &Value) -> Result<GkpCode> {
    let o = v
        .as_object()
        .ok_or_else(|| malformed("code must be an object"))?;
    let gram = parse_gram(
        o.get("gram")
            .ok_or_else(|| malformed("code needs a \"gram\""))?,
    )?;
    match o.get("sector") {
        None | Some(Value::Null) => Ok(GkpCode::trivial_sector(gram)),
        Some(s) => {
            let t = parse_rat_vec(s)?.into_iter().map(Turn::new).collect();
            GkpCode::new(gram, t)
        }
    }
}

pub fn type_to_json(t: &LatticeType) -> Value {
    int_vec_to_json(t.entries())
}

pub fn gate_to_json(g: &LogicalClifford) -> Value {
    json!({
        "type": type_to_json(g.lattice_type()),
        "vT_modD": int_matrix_to_json(g.vt_mod_d()),
        "pauli": int_vec_to_json(g.pauli().components()),
    })
}

pub fn parse_gate(v: &Value) -> Result<LogicalClifford> {
    let o = v
        .as_object()
        .ok_or_else(|| malformed("gate must be an object"))?;
    let field = |k: &str| {
        o.get(k)
            .ok_or_else(|| malformed(format!("gate needs {k:?}")))
    };
    let ty = LatticeType::new(
        array(field("type")?, "type")?
            .iter()
            .map(parse_int)
            .collect::<Result<_>>()?,
    )?;
    let vt = parse_int_matrix(field("vT_modD")?)?;
    let pauli = array(field("pauli")?, "pauli")?
        .iter()
        .map(parse_int)
        .collect::<Result<_>>()?;
    LogicalClifford::new(vt, PauliLabel::new(ty, pauli)?)
}

pub fn move_to_json(m: &Move) -> Value {
    match m {
        Move::Aut(u) => json!({ "aut": int_matrix_to_json(u) }),
        Move::Displace(h) => json!({ "displace": rat_vec_to_json(&h.0) }),
        Move::Flow { x, duration } => json!({
            "flow": { "x": float_matrix_to_json(x), "t": duration }
        }),
    }
}

pub fn parse_move(v: &Value) -> Result<Move> {
    let o = v
        .as_object()
        .ok_or_else(|| malformed("move must be an object"))?;
    if o.len() != 1 {
        return Err(malformed(
            "move must have exactly one of \"aut\", \"displace\", \"flow\"",
        ));
    }
    let (k, body) = o.iter().next().expect("one entry");
    match k.as_str() {
        "aut" => Ok(Move::Aut(parse_int_matrix(body)?)),
        "displace" => Ok(Move::Displace(DualCoords(parse_rat_vec(body)?))),
        "flow" => {
            let f = body
                .as_object()
                .ok_or_else(|| malformed("flow must be an object"))?;
            let x = parse_float_matrix(f.get("x").ok_or_else(|| malformed("flow needs \"x\""))?)?;
            let duration = match f.get("t") {
                None => 1.0,
                Some(t) => t
                    .as_f64()
                    .ok_or_else(|| malformed("flow \"t\" must be a number"))?,
            };
            Ok(Move::Flow { x, duration })
        }
        other => Err(malformed(format!("unknown move {other:?}"))),
    }
}

pub fn path_to_json(w: &PathWord) -> Value {
    json!({
        "base": code_to_json(&w.base),
        "moves": Value::Array(w.moves.iter().map(move_to_json).collect()),
    })
}

pub fn parse_path(v: &Value) -> Result<PathWord> {
    let o = v
        .as_object()
        .ok_or_else(|| malformed("path must be an object"))?;
    let base = parse_code(
        o.get("base")
            .ok_or_else(|| malformed("path needs a \"base\""))?,
    )?;
    let moves = match o.get("moves") {
        None => Vec::new(),
        Some(m) => array(m, "moves")?
            .iter()
            .map(parse_move)
            .collect::<Result<_>>()?,
    };
    Ok(PathWord::new(base, moves))
}
