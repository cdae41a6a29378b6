//! JSON text formats. Integers are written as bare JSON numbers of any size
//! and read back from numbers or decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactmat::{IntMatrix, Sublattice};
use crate::heis::{HeisElement, HeisSubgroupData};
use crate::numth::format_decimal;
use crate::quotient::{BoundReport, FiniteGroupTable, Gamma0Part, NormalSubgroupSpec, Quotient};
use crate::wang::{Fiber, WangDescriptor, WangElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("BAD_INPUT: {0}")]
pub struct WireError(pub String);

fn bad<T>(msg: impl Into<String>) -> Result<T, WireError> {
    Err(WireError(msg.into()))
}

pub fn int(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse().expect("integer text is a JSON number"))
}

pub fn int_list(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn parse_int(v: &Value, what: &str) -> Result<BigInt, WireError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return bad(format!("{what}: expected an integer, got {v}")),
    };
    text.parse().or_else(|_| bad(format!("{what}: {text:?} is not an integer")))
}

pub fn parse_int_list(v: &Value, what: &str) -> Result<Vec<BigInt>, WireError> {
    match v {
        Value::Array(xs) => xs.iter().map(|x| parse_int(x, what)).collect(),
        _ => bad(format!("{what}: expected an array of integers")),
    }
}

fn parse_int3(v: &Value, what: &str) -> Result<[BigInt; 3], WireError> {
    let xs = parse_int_list(v, what)?;
    xs.try_into().or_else(|_| bad(format!("{what}: expected exactly three integers")))
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, WireError> {
    v.get(key).ok_or_else(|| WireError(format!("missing field {key:?}")))
}

/// Parses JSON text, mapping syntax errors to [`WireError`].
pub fn parse_text(text: &str) -> Result<Value, WireError> {
    serde_json::from_str(text).or_else(|e| bad(format!("malformed JSON: {e}")))
}

/// `"p/q"` or `"p"`.
pub fn rational(q: &BigRational) -> Value {
    if q.is_integer() {
        Value::String(q.numer().to_string())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

/// Exact value plus its decimal expansion truncated toward zero.
pub fn rational_with_decimal(q: &BigRational, digits: u32) -> Value {
    json!({ "exact": rational(q), "decimal": format_decimal(q, digits) })
}

pub fn matrix(m: &IntMatrix) -> Value {
    let rows: Vec<Value> = m.to_rows().iter().map(|r| int_list(r)).collect();
    let mut o = Map::new();
    if m.is_square() {
        o.insert("n".into(), json!(m.nrows()));
    }
    o.insert("rows".into(), Value::Array(rows));
    Value::Object(o)
}

/// `{"n": 2, "rows": [[2,1],[1,1]]}`; `n` may be omitted, and a bare array of
/// rows is accepted too.
pub fn parse_matrix(v: &Value) -> Result<IntMatrix, WireError> {
    let rows_v = match v {
        Value::Array(_) => v,
        _ => field(v, "rows")?,
    };
    let Value::Array(rows) = rows_v else { return bad("rows: expected an array of arrays") };
    let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| parse_int_list(r, "matrix row")).collect::<Result<_, _>>()?;
    if let Some(n) = v.get("n") {
        let n = parse_int(n, "n")?;
        if n != BigInt::from(rows.len()) || rows.iter().any(|r| r.len() != rows.len()) {
            return bad(format!("matrix declared n = {n} but rows are not {n}×{n}"));
        }
    }
    IntMatrix::from_rows(rows).map_err(|e| WireError(e.to_string()))
}

pub fn heis(x: &HeisElement) -> Value {
    json!({ "a": int(&x.a), "b": int(&x.b), "c": int(&x.c) })
}

pub fn parse_heis(v: &Value) -> Result<HeisElement, WireError> {
    Ok(HeisElement::new(parse_int(field(v, "a")?, "a")?, parse_int(field(v, "b")?, "b")?, parse_int(field(v, "c")?, "c")?))
}

pub fn subgroup(s: &HeisSubgroupData) -> Value {
    json!({ "zeta": int_list(&s.zeta), "xi": int_list(&s.xi), "c": int(&s.c), "r": int(&s.r) })
}

pub fn parse_subgroup(v: &Value) -> Result<HeisSubgroupData, WireError> {
    HeisSubgroupData::new(
        parse_int3(field(v, "zeta")?, "zeta")?,
        parse_int3(field(v, "xi")?, "xi")?,
        parse_int(field(v, "c")?, "c")?,
        parse_int(field(v, "r")?, "r")?,
    )
    .map_err(|e| WireError(e.to_string()))
}

pub fn descriptor(d: &WangDescriptor) -> Value {
    match d {
        WangDescriptor::Sm { m } => json!({ "shape": "SM", "M": matrix(m) }),
        WangDescriptor::Spm { m, r, p, center_exponent } => {
            let mut o = json!({ "shape": "SPM", "M": matrix(m), "r": int(r), "p": int_list(p) });
            if let Some(e) = center_exponent {
                o["center_exponent"] = int(e);
            }
            o
        }
        WangDescriptor::Kodaira { r } => json!({ "shape": "KODAIRA", "r": int(r) }),
    }
}

/// Reads a descriptor without validating it.
pub fn parse_descriptor(v: &Value) -> Result<WangDescriptor, WireError> {
    let shape = field(v, "shape")?.as_str().ok_or_else(|| WireError("shape: expected a string".into()))?;
    match shape {
        "SM" => Ok(WangDescriptor::Sm { m: parse_matrix(field(v, "M")?)? }),
        "SPM" => {
            let p = parse_int_list(field(v, "p")?, "p")?;
            let Ok(p) = <[BigInt; 2]>::try_from(p) else { return bad("p: expected two integers") };
            let center_exponent = v.get("center_exponent").map(|e| parse_int(e, "center_exponent")).transpose()?;
            Ok(WangDescriptor::Spm { m: parse_matrix(field(v, "M")?)?, r: parse_int(field(v, "r")?, "r")?, p, center_exponent })
        }
        "KODAIRA" => Ok(WangDescriptor::Kodaira { r: parse_int(field(v, "r")?, "r")? }),
        other => bad(format!("unknown shape {other:?}")),
    }
}

pub fn fiber(h: &Fiber) -> Value {
    match h {
        Fiber::Lattice(v) => int_list(v),
        Fiber::Heis(x) => heis(x),
    }
}

/// An array is a lattice vector, an object a Heisenberg element.
pub fn parse_fiber(v: &Value) -> Result<Fiber, WireError> {
    match v {
        Value::Array(_) => Ok(Fiber::Lattice(parse_int_list(v, "lattice vector")?)),
        Value::Object(_) => Ok(Fiber::Heis(parse_heis(v)?)),
        _ => bad("fiber: expected an array or an {a,b,c} object"),
    }
}

pub fn wang_element(x: &WangElement) -> Value {
    json!({ "h": fiber(&x.h), "t": int(&x.t) })
}

pub fn parse_wang_element(v: &Value) -> Result<WangElement, WireError> {
    Ok(WangElement::new(parse_fiber(field(v, "h")?)?, parse_int(field(v, "t")?, "t")?))
}

pub fn sublattice(l: &Sublattice) -> Value {
    json!({ "basis": Value::Array(l.basis_vectors().iter().map(|b| int_list(b)).collect()) })
}

pub fn parse_sublattice(v: &Value) -> Result<Sublattice, WireError> {
    let Value::Array(vs) = field(v, "basis")? else { return bad("basis: expected an array of vectors") };
    let vs: Vec<Vec<BigInt>> = vs.iter().map(|x| parse_int_list(x, "basis vector")).collect::<Result<_, _>>()?;
    let dim = vs.first().map_or(0, Vec::len);
    if dim == 0 || vs.iter().any(|x| x.len() != dim) {
        return bad("basis: vectors must be nonempty and of equal length");
    }
    Sublattice::from_vectors(dim, &vs).map_err(|e| WireError(e.to_string()))
}

pub fn spec(s: &NormalSubgroupSpec) -> Value {
    let part = match &s.gamma0_part {
        Gamma0Part::Lattice(l) => sublattice(l),
        Gamma0Part::Heis(d) => subgroup(d),
    };
    json!({ "ambient": descriptor(&s.ambient), "gamma0_part": part, "k": int(&s.k), "delta": fiber(&s.delta) })
}

/// `{"ambient", "gamma0_part", "k", "delta"}`; `delta` defaults to the identity.
/// The shape checks of [`NormalSubgroupSpec::new`] run here, normality does not.
pub fn parse_spec(v: &Value) -> Result<NormalSubgroupSpec, WireError> {
    let ambient = parse_descriptor(field(v, "ambient")?)?;
    let pv = field(v, "gamma0_part")?;
    let part = if pv.get("basis").is_some() { Gamma0Part::Lattice(parse_sublattice(pv)?) } else { Gamma0Part::Heis(parse_subgroup(pv)?) };
    let delta = match v.get("delta") {
        Some(d) => parse_fiber(d)?,
        None => match &part {
            Gamma0Part::Lattice(l) => Fiber::Lattice(vec![BigInt::from(0); l.dim()]),
            Gamma0Part::Heis(_) => Fiber::Heis(HeisElement::identity()),
        },
    };
    NormalSubgroupSpec::new(ambient, part, parse_int(field(v, "k")?, "k")?, delta).map_err(|e| WireError(e.to_string()))
}

pub fn table(t: &FiniteGroupTable) -> Value {
    let n = t.order();
    let rows: Vec<Value> = (0..n).map(|i| Value::Array((0..n).map(|j| json!(t.mul(i, j))).collect())).collect();
    json!({ "order": n, "identity": t.identity(), "labels": t.labels(), "table": rows })
}

pub fn quotient(q: &Quotient) -> Value {
    let mut v = table(&q.table);
    v["spec"] = spec(&q.spec);
    v["abelian"] = json!(q.table.is_abelian());
    v["structure_ok"] = json!(q.structure_holds());
    v
}

pub fn report(r: &BoundReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "value": int(&c.value), "holds": c.holds, "informational": c.informational, "observed": c.observed }))
        .collect();
    let mut v = json!({
        "order": r.order,
        "observed_min_index": r.observed_min_index,
        "bound": int(&r.bound),
        "structure_ok": r.structure_ok,
        "pass": r.pass(),
        "checks": checks,
    });
    if let Some(g) = &r.gamma_r {
        v["gamma_r"] = int(g);
    }
    v
}
