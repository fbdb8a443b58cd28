//! JSON wire formats. The algebra format is a stable contract:
//!
//! ```json
//! { "field": "rational" | {"prime": P},
//!   "dim": N,
//!   "basis": ["e1", ...],
//!   "bracket": [ {"i": 0, "j": 1, "value": ["0", "0", "1"]} ],
//!   "alpha": [ ["0","0","1"], ["0","1","0"], ["0","0","0"] ] }
//! ```
//!
//! Bracket entries carry `i < j` only; absent pairs are zero. `alpha[i]`
//! lists the coordinates of the image of the i-th basis vector. Rationals
//! travel as strings `"p/q"` (plain `"p"` for integers); prime-field
//! elements as integers `0..P-1`.

use serde_json::{json, Value};

use crate::actions::HomAction;
use crate::algebra::HomLieAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Matrix, Scalar};

pub fn field_to_json(field: FieldSpec) -> Value {
    match field {
        FieldSpec::Rational => json!("rational"),
        FieldSpec::Prime(p) => json!({ "prime": p }),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    if let Some(s) = v.as_str() {
        if s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        return Err(Error::Parse(format!("unknown field name {s:?}")));
    }
    if let Some(obj) = v.as_object() {
        if let Some(p) = obj.get("prime").and_then(Value::as_u64) {
            return FieldSpec::prime(p);
        }
    }
    Err(Error::Parse(format!("malformed field specification: {v}")))
}

pub fn algebra_to_json(l: &HomLieAlgebra) -> Value {
    let mut bracket = Vec::new();
    for i in 0..l.dim() {
        for j in (i + 1)..l.dim() {
            let v = l.bracket_basis(i, j);
            if v.iter().any(|s| !s.is_zero()) {
                bracket.push(json!({
                    "i": i,
                    "j": j,
                    "value": v.iter().map(Scalar::to_json).collect::<Vec<_>>(),
                }));
            }
        }
    }
    // alpha rows are images of basis vectors, i.e. columns of the matrix
    let alpha: Vec<Vec<Value>> = (0..l.dim())
        .map(|i| l.alpha().col_vec(i).iter().map(Scalar::to_json).collect())
        .collect();
    json!({
        "field": field_to_json(l.field()),
        "dim": l.dim(),
        "basis": l.basis_names(),
        "bracket": bracket,
        "alpha": alpha,
    })
}

pub fn algebra_from_json(v: &Value) -> Result<HomLieAlgebra> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("algebra document must be a JSON object".into()))?;
    let field = field_from_json(
        obj.get("field")
            .ok_or_else(|| Error::Parse("missing \"field\"".into()))?,
    )?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing or malformed \"dim\"".into()))? as usize;
    let names: Vec<String> = match obj.get("basis") {
        Some(Value::Array(a)) => {
            let names: Option<Vec<String>> = a.iter().map(|x| x.as_str().map(String::from)).collect();
            names.ok_or_else(|| Error::Parse("basis names must be strings".into()))?
        }
        None => (0..dim).map(|i| format!("e{}", i + 1)).collect(),
        Some(other) => return Err(Error::Parse(format!("malformed \"basis\": {other}"))),
    };
    if names.len() != dim {
        return Err(Error::Parse(format!(
            "\"basis\" lists {} names for dimension {dim}",
            names.len()
        )));
    }
    let alpha_rows = obj
        .get("alpha")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing or malformed \"alpha\"".into()))?;
    if alpha_rows.len() != dim {
        return Err(Error::Parse(format!(
            "\"alpha\" has {} rows for dimension {dim}",
            alpha_rows.len()
        )));
    }
    let mut alpha = Matrix::zeros(dim, dim, field);
    for (i, row) in alpha_rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("alpha rows must be arrays".into()))?;
        if row.len() != dim {
            return Err(Error::Parse(format!(
                "alpha row {i} has length {} for dimension {dim}",
                row.len()
            )));
        }
        for (r, cell) in row.iter().enumerate() {
            // row i of the file is the image of e_i: column i of the matrix
            alpha[(r, i)] = field.parse_scalar(cell)?;
        }
    }
    let mut l = HomLieAlgebra::with_zero_bracket(names, alpha)?;
    if let Some(entries) = obj.get("bracket") {
        let entries = entries
            .as_array()
            .ok_or_else(|| Error::Parse("\"bracket\" must be an array".into()))?;
        for e in entries {
            let i = e
                .get("i")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("bracket entry missing \"i\"".into()))? as usize;
            let j = e
                .get("j")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("bracket entry missing \"j\"".into()))? as usize;
            if i >= j || j >= dim {
                return Err(Error::Parse(format!(
                    "bracket entry needs i < j < dim, got ({i}, {j})"
                )));
            }
            let value = e
                .get("value")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("bracket entry missing \"value\"".into()))?;
            if value.len() != dim {
                return Err(Error::Parse(format!(
                    "bracket value for ({i}, {j}) has length {}",
                    value.len()
                )));
            }
            let coords: Result<Vec<Scalar>> = value.iter().map(|c| field.parse_scalar(c)).collect();
            l.set_bracket(i, j, coords?);
        }
    }
    Ok(l)
}

pub fn algebra_from_str(s: &str) -> Result<HomLieAlgebra> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    algebra_from_json(&v)
}

/// Action format, mirroring the algebra format: coefficients indexed by
/// actor basis x actee basis, nonzero entries only.
pub fn action_to_json(a: &HomAction, field: FieldSpec) -> Value {
    let mut coeffs = Vec::new();
    for i in 0..a.actor_dim() {
        for j in 0..a.actee_dim() {
            let v = a.act_basis(i, j);
            if v.iter().any(|s| !s.is_zero()) {
                coeffs.push(json!({
                    "i": i,
                    "j": j,
                    "value": v.iter().map(Scalar::to_json).collect::<Vec<_>>(),
                }));
            }
        }
    }
    json!({
        "field": field_to_json(field),
        "actor_dim": a.actor_dim(),
        "actee_dim": a.actee_dim(),
        "coeffs": coeffs,
    })
}

pub fn action_from_json(v: &Value) -> Result<HomAction> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("action document must be a JSON object".into()))?;
    let field = field_from_json(
        obj.get("field")
            .ok_or_else(|| Error::Parse("missing \"field\"".into()))?,
    )?;
    let actor_dim = obj
        .get("actor_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing \"actor_dim\"".into()))? as usize;
    let actee_dim = obj
        .get("actee_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing \"actee_dim\"".into()))? as usize;
    let mut coeffs = vec![vec![vec![field.zero(); actee_dim]; actee_dim]; actor_dim];
    if let Some(entries) = obj.get("coeffs").and_then(Value::as_array) {
        for e in entries {
            let i = e.get("i").and_then(Value::as_u64).ok_or_else(|| Error::Parse("coeff entry missing \"i\"".into()))? as usize;
            let j = e.get("j").and_then(Value::as_u64).ok_or_else(|| Error::Parse("coeff entry missing \"j\"".into()))? as usize;
            if i >= actor_dim || j >= actee_dim {
                return Err(Error::Parse(format!("coeff entry ({i}, {j}) out of range")));
            }
            let value = e
                .get("value")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("coeff entry missing \"value\"".into()))?;
            if value.len() != actee_dim {
                return Err(Error::Parse("coeff value has wrong length".into()));
            }
            let parsed: Result<Vec<Scalar>> = value.iter().map(|c| field.parse_scalar(c)).collect();
            coeffs[i][j] = parsed?;
        }
    }
    HomAction::new(actor_dim, actee_dim, field, coeffs)
}
