//! JSON documents read and written by the CLI.

use std::collections::BTreeMap;

use abhy_core::{ExchangeMatrix, IntMatrix, RatVector, Rational, VPolytope};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// An `(n+m)×n` exchange matrix: `n` mutable rows followed by `m` frozen rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub m: usize,
    pub rows: Vec<Vec<i64>>,
}

impl MatrixDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: MatrixDocument =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed matrix document: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.n == 0 {
            return Err(CliError::Input("field `n`: must be at least 1".into()));
        }
        if self.rows.len() != self.n + self.m {
            return Err(CliError::Input(format!(
                "field `rows`: expected n+m = {} rows, got {}",
                self.n + self.m,
                self.rows.len()
            )));
        }
        if let Some(i) = self.rows.iter().position(|r| r.len() != self.n) {
            return Err(CliError::Input(format!("field `rows`: row {} does not have n = {} entries", i + 1, self.n)));
        }
        Ok(())
    }

    pub fn from_matrix(b: &IntMatrix) -> Result<Self, CliError> {
        let rows = b
            .row_vecs()
            .into_iter()
            .map(|r| r.iter().map(|x| x.to_i64().ok_or_else(|| overflow(x))).collect())
            .collect::<Result<Vec<Vec<i64>>, _>>()?;
        Ok(MatrixDocument { n: b.cols(), m: b.rows() - b.cols(), rows })
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        IntMatrix::from_rows(self.n, &rows).expect("validated shape")
    }

    pub fn exchange_matrix(&self) -> Result<ExchangeMatrix, CliError> {
        Ok(ExchangeMatrix::new(self.to_matrix())?)
    }

    /// The square matrix `B`; frozen rows are rejected.
    pub fn square(&self) -> Result<IntMatrix, CliError> {
        if self.m != 0 {
            return Err(CliError::Input("field `m`: this command takes a square matrix (m = 0)".into()));
        }
        self.exchange_matrix()?;
        Ok(self.to_matrix())
    }
}

fn overflow(x: &BigInt) -> CliError {
    CliError::Input(format!("entry {x} does not fit in 64 bits"))
}

/// Vertices as exact rationals in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PolytopeDocument {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<String>>,
    /// 1-based cluster index per vertex, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
}

impl PolytopeDocument {
    pub fn from_polytope(p: &VPolytope, labels: Option<Vec<usize>>) -> Self {
        PolytopeDocument {
            ambient_dim: p.ambient_dim(),
            vertices: p.vertices().iter().map(|v| v.iter().map(ToString::to_string).collect()).collect(),
            labels,
        }
    }

    #[cfg(test)]
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: PolytopeDocument =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed polytope document: {e}")))?;
        let verts = doc.rational_vertices()?;
        if verts.iter().any(|v| v.len() != doc.ambient_dim) {
            return Err(CliError::Input("field `vertices`: wrong number of coordinates".into()));
        }
        if !verts.windows(2).all(|w| w[0] < w[1]) {
            return Err(CliError::Input("field `vertices`: not strictly sorted".into()));
        }
        Ok(doc)
    }

    pub fn rational_vertices(&self) -> Result<Vec<RatVector>, CliError> {
        self.vertices
            .iter()
            .map(|v| v.iter().map(|s| parse_rational(s).map_err(|e| CliError::Input(format!("field `vertices`: {e}")))).collect())
            .collect()
    }

    /// OFF text: vertex count header and one line of decimals per vertex.
    pub fn to_off(&self, precision: usize) -> Result<String, CliError> {
        let mut out = format!("OFF\n{} 0 0\n", self.vertices.len());
        for v in self.rational_vertices()? {
            let line: Vec<String> = v.iter().map(|x| decimal(x, precision)).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        Ok(out)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|_| format!("`{s}` is not an exact rational"))
}

/// Rounded decimal expansion, computed exactly before formatting.
fn decimal(x: &Rational, precision: usize) -> String {
    let scale = BigInt::from(10u32).pow(precision as u32);
    let scaled = (x * Rational::from_integer(scale.clone())).round().to_integer();
    let negative = scaled < BigInt::from(0);
    let digits = scaled.magnitude().to_string();
    let digits = format!("{digits:0>width$}", width = precision + 1);
    let (int, frac) = digits.split_at(digits.len() - precision);
    let sign = if negative { "-" } else { "" };
    if precision == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Canonical JSON: object keys sorted, two-space indent, trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let v: serde_json::Value = serde_json::to_value(value).map_err(|e| CliError::Input(e.to_string()))?;
    let sorted = sort_keys(v);
    let mut s = serde_json::to_string_pretty(&sorted).map_err(|e| CliError::Input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn sort_keys(v: serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match v {
        Value::Object(map) => {
            let sorted: BTreeMap<String, Value> = map.into_iter().map(|(k, v)| (k, sort_keys(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(sort_keys).collect()),
        other => other,
    }
}
