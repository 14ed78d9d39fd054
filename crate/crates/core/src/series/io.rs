//! Line-oriented text and JSON encodings of [`TruncatedSeries`].
//!
//! Text: a `T=<trunc>` header, then one decimal coefficient per line.
//! JSON: `{"trunc": T, "coeffs": [c0, c1, ...]}` with coefficients as JSON
//! integers of arbitrary length.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use super::TruncatedSeries;
use crate::{Error, Result};

impl TruncatedSeries {
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.trunc() * 8 + 16);
        let _ = writeln!(out, "T={}", self.trunc());
        for c in self.coeffs() {
            let _ = writeln!(out, "{c}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let trunc: usize = header
            .strip_prefix("T=")
            .ok_or_else(|| Error::Parse(format!("expected `T=<trunc>` header, got `{header}`")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad truncation: {e}")))?;
        let coeffs = lines
            .map(|l| {
                l.parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("`{l}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != trunc {
            return Err(Error::Parse(format!(
                "header says T={trunc} but {} coefficients follow",
                coeffs.len()
            )));
        }
        TruncatedSeries::new(coeffs)
    }

    pub fn to_json_value(&self) -> Value {
        let coeffs = self
            .coeffs()
            .iter()
            .map(|c| Value::Number(c.to_string().parse::<Number>().expect("decimal integer")))
            .collect();
        let mut obj = Map::new();
        obj.insert("trunc".into(), Value::from(self.trunc()));
        obj.insert("coeffs".into(), Value::Array(coeffs));
        Value::Object(obj)
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(value: &Value) -> Result<Self> {
        let trunc = value
            .get("trunc")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field `trunc`".into()))?;
        let coeffs = value
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array field `coeffs`".into()))?
            .iter()
            .map(|v| match v {
                Value::Number(n) => n
                    .to_string()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("coefficient `{n}`: {e}"))),
                other => Err(Error::Parse(format!(
                    "coefficient `{other}` is not an integer"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() as u64 != trunc {
            return Err(Error::Parse(format!(
                "trunc is {trunc} but {} coefficients given",
                coeffs.len()
            )));
        }
        TruncatedSeries::new(coeffs)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("json: {e}")))?;
        Self::from_json_value(&value)
    }
}
