//! Peter-Weyl cache: JSON documents keyed by a content hash of the
//! quantum group.
//!
//! Loaded entries are revalidated against the Peter-Weyl invariants before
//! use; a corrupted or stale entry is discarded with a warning and the data
//! recomputed.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::numkit::{CMatrix, ToleranceConfig};
use crate::peterweyl::{IrrepBlock, PeterWeylData, PeterWeylError};
use crate::qgroup::FiniteQuantumGroup;

use super::CliError;

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "FQG_CACHE_DIR";

/// FNV-1a 64 over the canonicalized structure constants (12 significant
/// digits, negative zero normalized).
pub fn content_hash(g: &FiniteQuantumGroup) -> String {
    let mut state: u64 = 0xcbf29ce484222325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            state ^= b as u64;
            state = state.wrapping_mul(0x100000001b3);
        }
    };
    let mut eat_matrix = |tag: &str, m: &CMatrix| {
        eat(tag.as_bytes());
        eat(&m.rows().to_le_bytes());
        eat(&m.cols().to_le_bytes());
        for z in m.as_slice() {
            let re = if z.re == 0.0 { 0.0 } else { z.re };
            let im = if z.im == 0.0 { 0.0 } else { z.im };
            eat(format!("{re:.12e},{im:.12e};").as_bytes());
        }
    };
    eat_matrix("mult", g.carrier().mult_map());
    eat_matrix("unit", g.carrier().unit());
    eat_matrix("star", g.carrier().star_matrix());
    eat_matrix("comult", g.comult());
    eat_matrix("counit", g.counit());
    eat_matrix("antipode", g.antipode());
    format!("{state:016x}")
}

fn cache_path(g: &FiniteQuantumGroup, dir: &Path) -> PathBuf {
    dir.join(format!("fqg-pw-{}.json", content_hash(g)))
}

fn matrix_to_json(m: &CMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<Value> = (0..m.cols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Option<CMatrix> {
    let row_vals = v.as_array()?;
    if row_vals.len() != rows {
        return None;
    }
    let mut out = CMatrix::zeros(rows, cols);
    for (i, row) in row_vals.iter().enumerate() {
        let entries = row.as_array()?;
        if entries.len() != cols {
            return None;
        }
        for (j, e) in entries.iter().enumerate() {
            let pair = e.as_array()?;
            if pair.len() != 2 {
                return None;
            }
            out[(i, j)] = Complex64::new(pair[0].as_f64()?, pair[1].as_f64()?);
        }
    }
    Some(out)
}

/// Writes the Peter-Weyl data under the group's content hash.
pub fn cache_peterweyl(
    g: &FiniteQuantumGroup,
    data: &PeterWeylData,
    tol: &ToleranceConfig,
    dir: &Path,
) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)?;
    let blocks: Vec<Value> = data
        .blocks
        .iter()
        .map(|b| {
            json!({
                "alpha": b.alpha,
                "N": b.n_alpha,
                "coeff_vectors": b.coefficients.iter().map(matrix_to_json).collect::<Vec<_>>(),
                "functional_vectors": b.functionals.iter().map(matrix_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let doc = json!({
        "version": 1,
        "hash": content_hash(g),
        "seed": data.seed,
        "tolerances": {"rank_tol": tol.rank_tol, "eq_tol": tol.eq_tol},
        "trivial_index": data.trivial_index,
        "blocks": blocks,
    });
    let path = cache_path(g, dir);
    std::fs::write(&path, serde_json::to_string(&doc)?)?;
    Ok(path)
}

/// Attempts to load cached Peter-Weyl data for `g`. Returns `Ok(None)` on a
/// cache miss; a present-but-invalid entry is removed and treated as a miss
/// (with a warning on stderr).
pub fn load_peterweyl(
    g: &FiniteQuantumGroup,
    tol: &ToleranceConfig,
    dir: &Path,
) -> Result<Option<PeterWeylData>, CliError> {
    let path = cache_path(g, dir);
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    match revalidate(g, &text, tol) {
        Ok(data) => Ok(Some(data)),
        Err(reason) => {
            eprintln!(
                "warning: discarding invalid Peter-Weyl cache entry {} ({reason})",
                path.display()
            );
            let _ = std::fs::remove_file(&path);
            Ok(None)
        }
    }
}

fn revalidate(
    g: &FiniteQuantumGroup,
    text: &str,
    tol: &ToleranceConfig,
) -> Result<PeterWeylData, String> {
    let doc: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let n = g.dim();
    let seed = doc.get("seed").and_then(Value::as_u64).ok_or("missing seed")?;
    let blocks_json = doc.get("blocks").and_then(Value::as_array).ok_or("missing blocks")?;
    let mut blocks = Vec::with_capacity(blocks_json.len());
    for (i, b) in blocks_json.iter().enumerate() {
        let alpha = b.get("alpha").and_then(Value::as_u64).ok_or("missing alpha")? as usize;
        let nb = b.get("N").and_then(Value::as_u64).ok_or("missing N")? as usize;
        if alpha != i {
            return Err("blocks out of order".into());
        }
        let parse_vecs = |key: &str| -> Result<Vec<CMatrix>, String> {
            let arr = b.get(key).and_then(Value::as_array).ok_or_else(|| format!("missing {key}"))?;
            if arr.len() != nb * nb {
                return Err(format!("{key} has wrong length"));
            }
            arr.iter()
                .map(|v| matrix_from_json(v, n, 1).ok_or_else(|| format!("bad vector in {key}")))
                .collect()
        };
        blocks.push(IrrepBlock {
            alpha,
            n_alpha: nb,
            coefficients: parse_vecs("coeff_vectors")?,
            functionals: parse_vecs("functional_vectors")?,
        });
    }
    PeterWeylData::from_parts(g, blocks, seed, tol).map_err(|e: PeterWeylError| e.to_string())
}
