//! Input document schema: parsing and validation with JSON-pointer
//! error locations.
//!
//! Complex numbers serialize as `[re, im]` pairs everywhere; matrices are
//! arrays of rows of pairs; the `mult` tensor of a star algebra is indexed
//! `mult[i][j][k]` with `b_i b_j = sum_k mult[i][j][k] b_k`.

use std::sync::Arc;

use num_complex::Complex64;
use serde_json::Value;

use crate::algebra::StarAlgebra;
use crate::instances::FiniteGroupPresentation;
use crate::numkit::CMatrix;

use super::CliError;

/// Which quantum group a finite group table should generate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroupModel {
    FunctionAlgebra,
    GroupAlgebra,
}

/// Quantum-group input: a named builtin or explicit Hopf data.
#[derive(Debug, Clone)]
pub enum QuantumGroupSpec {
    Builtin(String),
    FiniteGroup { group: FiniteGroupPresentation, model: GroupModel },
    Explicit { algebra: Arc<StarAlgebra>, comult: CMatrix, counit: CMatrix, antipode: CMatrix },
}

/// Coaction input: explicit delta or one of the builders.
#[derive(Debug, Clone)]
pub enum CoactionSpec {
    Explicit { group: QuantumGroupSpec, algebra: Arc<StarAlgebra>, delta: CMatrix },
    Translation { group: QuantumGroupSpec },
    GSet { group: FiniteGroupPresentation, action: Vec<Vec<usize>> },
    Grading { group: FiniteGroupPresentation, algebra: Arc<StarAlgebra>, grading: Vec<usize> },
    Inflate { target: Box<CoactionSpec>, algebra: Arc<StarAlgebra>, q: CMatrix, s: CMatrix },
}

/// A parsed, shape-validated input document.
#[derive(Debug, Clone)]
pub enum SpecDocument {
    FiniteGroup { group: FiniteGroupPresentation, model: GroupModel },
    StarAlgebra { algebra: Arc<StarAlgebra> },
    QuantumGroup { spec: QuantumGroupSpec },
    Coaction { spec: CoactionSpec },
}

fn schema_err(pointer: &str, message: impl Into<String>) -> CliError {
    CliError::Schema { pointer: pointer.to_string(), message: message.into() }
}

fn field<'v>(v: &'v Value, key: &str, ptr: &str) -> Result<&'v Value, CliError> {
    v.get(key).ok_or_else(|| schema_err(&format!("{ptr}/{key}"), "missing field"))
}

fn as_object<'v>(v: &'v Value, ptr: &str) -> Result<&'v serde_json::Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| schema_err(ptr, "expected an object"))
}

fn as_array<'v>(v: &'v Value, ptr: &str) -> Result<&'v Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| schema_err(ptr, "expected an array"))
}

fn as_str<'v>(v: &'v Value, ptr: &str) -> Result<&'v str, CliError> {
    v.as_str().ok_or_else(|| schema_err(ptr, "expected a string"))
}

fn as_usize(v: &Value, ptr: &str) -> Result<usize, CliError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| schema_err(ptr, "expected a nonnegative integer"))
}

fn parse_complex(v: &Value, ptr: &str) -> Result<Complex64, CliError> {
    let pair = as_array(v, ptr)?;
    if pair.len() != 2 {
        return Err(schema_err(ptr, "complex scalar must be a [re, im] pair"));
    }
    let re = pair[0].as_f64().ok_or_else(|| schema_err(&format!("{ptr}/0"), "expected a number"))?;
    let im = pair[1].as_f64().ok_or_else(|| schema_err(&format!("{ptr}/1"), "expected a number"))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(schema_err(ptr, "complex scalar must be finite"));
    }
    Ok(Complex64::new(re, im))
}

/// Matrix as array of rows of `[re, im]` pairs, with exact expected shape.
fn parse_matrix(v: &Value, rows: usize, cols: usize, ptr: &str) -> Result<CMatrix, CliError> {
    let row_vals = as_array(v, ptr)?;
    if row_vals.len() != rows {
        return Err(schema_err(ptr, format!("expected {rows} rows, got {}", row_vals.len())));
    }
    let mut out = CMatrix::zeros(rows, cols);
    for (i, row) in row_vals.iter().enumerate() {
        let row_ptr = format!("{ptr}/{i}");
        let entries = as_array(row, &row_ptr)?;
        if entries.len() != cols {
            return Err(schema_err(&row_ptr, format!("expected {cols} entries, got {}", entries.len())));
        }
        for (j, e) in entries.iter().enumerate() {
            out[(i, j)] = parse_complex(e, &format!("{row_ptr}/{j}"))?;
        }
    }
    Ok(out)
}

fn parse_cayley(v: &Value, ptr: &str) -> Result<FiniteGroupPresentation, CliError> {
    let rows = as_array(v, ptr)?;
    let mut table = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row_ptr = format!("{ptr}/{i}");
        let entries = as_array(row, &row_ptr)?;
        let mut out = Vec::with_capacity(entries.len());
        for (j, e) in entries.iter().enumerate() {
            out.push(as_usize(e, &format!("{row_ptr}/{j}"))?);
        }
        table.push(out);
    }
    FiniteGroupPresentation::new(table).map_err(|e| schema_err(ptr, e.to_string()))
}

fn parse_finite_group(v: &Value, ptr: &str) -> Result<(FiniteGroupPresentation, GroupModel), CliError> {
    let order = as_usize(field(v, "order", ptr)?, &format!("{ptr}/order"))?;
    let group = parse_cayley(field(v, "cayley", ptr)?, &format!("{ptr}/cayley"))?;
    if group.order() != order {
        return Err(schema_err(&format!("{ptr}/order"), format!(
            "declared order {order} but cayley table has {} elements",
            group.order()
        )));
    }
    let model = match as_str(field(v, "model", ptr)?, &format!("{ptr}/model"))? {
        "function_algebra" => GroupModel::FunctionAlgebra,
        "group_algebra" => GroupModel::GroupAlgebra,
        other => {
            return Err(schema_err(&format!("{ptr}/model"), format!(
                "unknown model `{other}` (expected function_algebra or group_algebra)"
            )))
        }
    };
    Ok((group, model))
}

fn parse_star_algebra(v: &Value, ptr: &str) -> Result<Arc<StarAlgebra>, CliError> {
    let dim = as_usize(field(v, "dim", ptr)?, &format!("{ptr}/dim"))?;
    if dim == 0 {
        return Err(schema_err(&format!("{ptr}/dim"), "dimension must be positive"));
    }
    let mult_ptr = format!("{ptr}/mult");
    let mult_rows = as_array(field(v, "mult", ptr)?, &mult_ptr)?;
    if mult_rows.len() != dim {
        return Err(schema_err(&mult_ptr, format!("expected {dim} outer entries")));
    }
    // mult[i][j][k]: reshape to the n x n^2 multiplication map
    let mut mult = CMatrix::zeros(dim, dim * dim);
    for (i, row_i) in mult_rows.iter().enumerate() {
        let pi = format!("{mult_ptr}/{i}");
        let cols_j = as_array(row_i, &pi)?;
        if cols_j.len() != dim {
            return Err(schema_err(&pi, format!("expected {dim} entries")));
        }
        for (j, entry_j) in cols_j.iter().enumerate() {
            let pj = format!("{pi}/{j}");
            let ks = as_array(entry_j, &pj)?;
            if ks.len() != dim {
                return Err(schema_err(&pj, format!("expected {dim} entries")));
            }
            for (k, e) in ks.iter().enumerate() {
                mult[(k, i * dim + j)] = parse_complex(e, &format!("{pj}/{k}"))?;
            }
        }
    }
    let unit_vals = as_array(field(v, "unit", ptr)?, &format!("{ptr}/unit"))?;
    if unit_vals.len() != dim {
        return Err(schema_err(&format!("{ptr}/unit"), format!("expected {dim} entries")));
    }
    let mut unit = CMatrix::zeros(dim, 1);
    for (k, e) in unit_vals.iter().enumerate() {
        unit[(k, 0)] = parse_complex(e, &format!("{ptr}/unit/{k}"))?;
    }
    let star = parse_matrix(field(v, "star_matrix", ptr)?, dim, dim, &format!("{ptr}/star_matrix"))?;
    let labels = match v.get("labels") {
        None | Some(Value::Null) => None,
        Some(l) => {
            let arr = as_array(l, &format!("{ptr}/labels"))?;
            if arr.len() != dim {
                return Err(schema_err(&format!("{ptr}/labels"), format!("expected {dim} labels")));
            }
            let mut out = Vec::with_capacity(dim);
            for (k, e) in arr.iter().enumerate() {
                out.push(as_str(e, &format!("{ptr}/labels/{k}"))?.to_string());
            }
            Some(out)
        }
    };
    let algebra =
        StarAlgebra::new(dim, mult, unit, star, labels).map_err(|e| schema_err(ptr, e.to_string()))?;
    Ok(Arc::new(algebra))
}

fn parse_quantum_group(v: &Value, ptr: &str) -> Result<QuantumGroupSpec, CliError> {
    let obj = as_object(v, ptr)?;
    if let Some(b) = obj.get("builtin") {
        let name = as_str(b, &format!("{ptr}/builtin"))?;
        if name != "kac_paljutkin" {
            return Err(schema_err(&format!("{ptr}/builtin"), format!("unknown builtin `{name}`")));
        }
        return Ok(QuantumGroupSpec::Builtin(name.to_string()));
    }
    // a nested finite_group document is accepted wherever a quantum group is
    if obj.get("cayley").is_some() {
        let (group, model) = parse_finite_group(v, ptr)?;
        return Ok(QuantumGroupSpec::FiniteGroup { group, model });
    }
    let algebra = parse_star_algebra(field(v, "algebra", ptr)?, &format!("{ptr}/algebra"))?;
    let n = algebra.dim();
    let comult = parse_matrix(field(v, "comult", ptr)?, n * n, n, &format!("{ptr}/comult"))?;
    let counit = parse_matrix(field(v, "counit", ptr)?, 1, n, &format!("{ptr}/counit"))?;
    let antipode = parse_matrix(field(v, "antipode", ptr)?, n, n, &format!("{ptr}/antipode"))?;
    Ok(QuantumGroupSpec::Explicit { algebra, comult, counit, antipode })
}

fn parse_usize_table(v: &Value, ptr: &str) -> Result<Vec<Vec<usize>>, CliError> {
    let rows = as_array(v, ptr)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row_ptr = format!("{ptr}/{i}");
        let entries = as_array(row, &row_ptr)?;
        let mut r = Vec::with_capacity(entries.len());
        for (j, e) in entries.iter().enumerate() {
            r.push(as_usize(e, &format!("{row_ptr}/{j}"))?);
        }
        out.push(r);
    }
    Ok(out)
}

fn parse_coaction(v: &Value, ptr: &str) -> Result<CoactionSpec, CliError> {
    let obj = as_object(v, ptr)?;
    if let Some(b) = obj.get("builder") {
        let builder = as_str(b, &format!("{ptr}/builder"))?;
        return match builder {
            "translation" => {
                let group = parse_quantum_group(field(v, "group", ptr)?, &format!("{ptr}/group"))?;
                Ok(CoactionSpec::Translation { group })
            }
            "gset" => {
                let (group, model) =
                    parse_finite_group(field(v, "group", ptr)?, &format!("{ptr}/group"))?;
                if model != GroupModel::FunctionAlgebra {
                    return Err(schema_err(&format!("{ptr}/group/model"), "gset actions live over function_algebra"));
                }
                let action = parse_usize_table(field(v, "action", ptr)?, &format!("{ptr}/action"))?;
                Ok(CoactionSpec::GSet { group, action })
            }
            "grading" => {
                let (group, model) =
                    parse_finite_group(field(v, "group", ptr)?, &format!("{ptr}/group"))?;
                if model != GroupModel::GroupAlgebra {
                    return Err(schema_err(&format!("{ptr}/group/model"), "gradings live over group_algebra"));
                }
                let algebra =
                    parse_star_algebra(field(v, "algebra", ptr)?, &format!("{ptr}/algebra"))?;
                let grading_vals = as_array(field(v, "grading", ptr)?, &format!("{ptr}/grading"))?;
                let mut grading = Vec::with_capacity(grading_vals.len());
                for (k, e) in grading_vals.iter().enumerate() {
                    grading.push(as_usize(e, &format!("{ptr}/grading/{k}"))?);
                }
                if grading.len() != algebra.dim() {
                    return Err(schema_err(&format!("{ptr}/grading"), format!(
                        "expected {} grades, got {}",
                        algebra.dim(),
                        grading.len()
                    )));
                }
                Ok(CoactionSpec::Grading { group, algebra, grading })
            }
            "inflate" => {
                let target = parse_coaction(field(v, "target", ptr)?, &format!("{ptr}/target"))?;
                let algebra =
                    parse_star_algebra(field(v, "algebra", ptr)?, &format!("{ptr}/algebra"))?;
                let target_dim = coaction_spec_algebra_dim(&target);
                let q = parse_matrix(
                    field(v, "q", ptr)?,
                    target_dim,
                    algebra.dim(),
                    &format!("{ptr}/q"),
                )?;
                let s = parse_matrix(
                    field(v, "s", ptr)?,
                    algebra.dim(),
                    target_dim,
                    &format!("{ptr}/s"),
                )?;
                Ok(CoactionSpec::Inflate { target: Box::new(target), algebra, q, s })
            }
            other => Err(schema_err(&format!("{ptr}/builder"), format!("unknown builder `{other}`"))),
        };
    }
    let group = parse_quantum_group(field(v, "group", ptr)?, &format!("{ptr}/group"))?;
    let algebra = parse_star_algebra(field(v, "algebra", ptr)?, &format!("{ptr}/algebra"))?;
    let na = quantum_group_spec_dim(&group);
    let nb = algebra.dim();
    let delta = parse_matrix(field(v, "delta", ptr)?, nb * na, nb, &format!("{ptr}/delta"))?;
    Ok(CoactionSpec::Explicit { group, algebra, delta })
}

/// Dimension of the carrier a quantum-group spec will produce.
pub fn quantum_group_spec_dim(spec: &QuantumGroupSpec) -> usize {
    match spec {
        QuantumGroupSpec::Builtin(_) => 8,
        QuantumGroupSpec::FiniteGroup { group, .. } => group.order(),
        QuantumGroupSpec::Explicit { algebra, .. } => algebra.dim(),
    }
}

/// Dimension of the algebra a coaction spec acts on.
pub fn coaction_spec_algebra_dim(spec: &CoactionSpec) -> usize {
    match spec {
        CoactionSpec::Explicit { algebra, .. } => algebra.dim(),
        CoactionSpec::Translation { group } => quantum_group_spec_dim(group),
        CoactionSpec::GSet { action, .. } => action.len(),
        CoactionSpec::Grading { algebra, .. } => algebra.dim(),
        CoactionSpec::Inflate { algebra, .. } => algebra.dim(),
    }
}

/// Parses and shape-validates a document; the first violation is reported
/// with its JSON-pointer location.
pub fn parse_spec_value(v: &Value) -> Result<SpecDocument, CliError> {
    let kind = as_str(field(v, "kind", "")?, "/kind")?;
    match kind {
        "finite_group" => {
            let (group, model) = parse_finite_group(v, "")?;
            Ok(SpecDocument::FiniteGroup { group, model })
        }
        "star_algebra" => Ok(SpecDocument::StarAlgebra { algebra: parse_star_algebra(v, "")? }),
        "quantum_group" => Ok(SpecDocument::QuantumGroup { spec: parse_quantum_group(v, "")? }),
        "coaction" => Ok(SpecDocument::Coaction { spec: parse_coaction(v, "")? }),
        other => Err(schema_err("/kind", format!("unknown kind `{other}`"))),
    }
}

/// Reads and parses a document from disk.
pub fn parse_spec(path: &std::path::Path) -> Result<SpecDocument, CliError> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Schema { pointer: String::new(), message: format!("invalid JSON: {e}") })?;
    parse_spec_value(&value)
}
