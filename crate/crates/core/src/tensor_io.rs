//! JSON tensor files: `{"shape": [..], "degree": p, "entries": [..]}` with
//! entries as integers or `"num/den"` strings in lexicographic order of `I_p`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational};
use crate::shape::Shape;
use crate::tensor::Tensor;
use crate::Rational;

#[derive(Serialize, Deserialize)]
struct TensorFile {
    shape: Vec<i64>,
    degree: usize,
    entries: Vec<Value>,
}

fn parse_entry(v: &Value) -> Result<Rational> {
    let parsed = match v {
        Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())),
        Value::String(s) => parse_rational(s),
        _ => None,
    };
    parsed.ok_or_else(|| Error::Parse(format!("entry {v} is not an integer or \"num/den\" string")))
}

/// Parses a tensor file.
pub fn parse_tensor(text: &str) -> Result<Tensor<Rational>> {
    let file: TensorFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("tensor file: {e}")))?;
    let entries: Vec<usize> = file
        .shape
        .iter()
        .map(|&e| {
            usize::try_from(e).map_err(|_| Error::InvalidShape(format!("entry {e} is negative")))
        })
        .collect::<Result<_>>()?;
    let shape = Shape::new(entries)?;
    let coeffs = file
        .entries
        .iter()
        .map(parse_entry)
        .collect::<Result<Vec<_>>>()?;
    Tensor::new(shape, file.degree, coeffs)
}

/// Renders a tensor file with every entry as an explicit fraction.
pub fn format_tensor(t: &Tensor<Rational>) -> String {
    let file = TensorFile {
        shape: t.shape().entries().iter().map(|&e| e as i64).collect(),
        degree: t.degree(),
        entries: t
            .coeffs()
            .iter()
            .map(|c| Value::String(format_rational(c)))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("tensor files always serialize")
}
