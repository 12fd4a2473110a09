//! Exact matrices from JSON: an array of rows, each entry `[re, im]` with
//! parts given as `"p/q"` strings or JSON numbers. A bare string or number
//! is accepted as a real entry.

use haarmoments::weingarten::{from_parts, parse_rational, ExactOperator, GaussianRational};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use crate::CliError;

fn part(value: &Value, row: usize, col: usize) -> Result<BigRational, CliError> {
    let text = match value {
        Value::String(s) => s.clone(),
        // the textual form keeps decimals exact
        Value::Number(n) => n.to_string(),
        other => {
            return Err(CliError::input(format!(
                "row {row}, col {col}: expected a number or \"p/q\" string, found {other}"
            )))
        }
    };
    parse_rational(&text).map_err(|e| CliError::input(format!("row {row}, col {col}: {e}")))
}

fn entry(value: &Value, row: usize, col: usize) -> Result<GaussianRational, CliError> {
    match value {
        Value::Array(pair) if pair.len() == 2 => Ok(from_parts(part(&pair[0], row, col)?, part(&pair[1], row, col)?)),
        Value::Array(pair) => Err(CliError::input(format!(
            "row {row}, col {col}: expected [re, im], found {} components",
            pair.len()
        ))),
        scalar => Ok(from_parts(part(scalar, row, col)?, BigRational::zero())),
    }
}

/// Parses a square matrix; rows and columns in messages are 0-based.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<GaussianRational>>, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CliError::input(format!("matrix file is not JSON: {e}")))?;
    let rows = doc
        .as_array()
        .ok_or_else(|| CliError::input("matrix file must hold an array of rows"))?;
    if rows.is_empty() {
        return Err(CliError::input("matrix has no rows"));
    }
    let n = rows.len();
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let row = row
                .as_array()
                .ok_or_else(|| CliError::input(format!("row {r}: expected an array of entries")))?;
            if row.len() != n {
                return Err(CliError::input(format!(
                    "row {r}: has {} entries but the matrix has {n} rows",
                    row.len()
                )));
            }
            row.iter().enumerate().map(|(c, v)| entry(v, r, c)).collect()
        })
        .collect()
}

/// Reads a matrix as an operator on `(ℂ^d)^{⊗k}`; the side must be a
/// perfect `k`-th power.
pub fn operator_from_rows(rows: Vec<Vec<GaussianRational>>, k: usize) -> Result<ExactOperator, CliError> {
    let side = rows.len();
    let d = (1..=side)
        .find(|d| d.checked_pow(k as u32) == Some(side))
        .ok_or_else(|| CliError::input(format!("matrix side {side} is not a {k}-th power")))?;
    Ok(ExactOperator::from_rows(rows)?.reshaped(d, k)?)
}
