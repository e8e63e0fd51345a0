//! Machine-readable output: JSON with 17 significant digits, complex values
//! as `[re, im]` pairs, and plain CSV tables.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{Map, Number, Value};

use crate::csym::GramTable;

pub const SCHEMA: &str = "bergman-csym/1";

/// A float as a JSON number with 17 significant digits (`null` if not finite).
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(text.parse::<Number>().expect("formatted float is a valid JSON number"))
}

pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

pub fn complex_list(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|&z| complex(z)).collect())
}

pub fn real_list(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Row-major array of rows of `[re, im]` pairs.
pub fn matrix(m: &DMatrix<Complex64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect()))
            .collect(),
    )
}

/// A JSON object whose first key is `"schema"`, followed by `fields` in order.
pub fn document(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), Value::String(SCHEMA.into()));
    for (k, v) in fields {
        map.insert(k.into(), v);
    }
    Value::Object(map)
}

pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

/// Matrix as CSV with interleaved `re,im` columns per entry, so that
/// `numpy.loadtxt(path, delimiter=",").view(complex)` recovers it.
pub fn matrix_csv(m: &DMatrix<Complex64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| format!("{},{}", fmt_f(m[(i, j)].re), fmt_f(m[(i, j)].im)))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// `n,re,im` rows with a header line.
pub fn indexed_csv(values: &[Complex64]) -> String {
    let mut out = String::from("n,re,im\n");
    for (n, z) in values.iter().enumerate() {
        let _ = writeln!(out, "{n},{},{}", fmt_f(z.re), fmt_f(z.im));
    }
    out
}

/// `n,m,re,im` rows with a header line.
pub fn gram_csv(g: &GramTable) -> String {
    let mut out = String::from("n,m,re,im\n");
    let k = g.size();
    for n in 0..k {
        for m in 0..k {
            let z = g.get(n, m);
            let _ = writeln!(out, "{n},{m},{},{}", fmt_f(z.re), fmt_f(z.im));
        }
    }
    out
}

pub fn gram_json(g: &GramTable, extra: Vec<(&str, Value)>) -> Value {
    let mut fields = vec![
        ("beta", num(g.beta)),
        ("alpha", complex(g.alpha)),
        ("n_max", Value::from(g.size() - 1)),
    ];
    fields.extend(extra);
    fields.push(("entries", matrix(g.entries())));
    document(fields)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, 0.0] {
            let v = num(x);
            let text = serde_json::to_string(&v).unwrap();
            assert_eq!(text.parse::<f64>().unwrap(), x, "{text}");
        }
        assert_eq!(serde_json::to_string(&num(0.5)).unwrap(), "5.0000000000000000e-1");
        assert_eq!(num(f64::NAN), Value::Null);
    }

    #[test]
    fn schema_first() {
        let d = document(vec![("a", Value::from(1)), ("b", Value::from(2))]);
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.starts_with("{\"schema\":\"bergman-csym/1\",\"a\""));
    }

    #[test]
    fn matrix_csv_layout() {
        let m = DMatrix::from_row_slice(1, 2, &[Complex64::new(1.0, 2.0), Complex64::new(3.0, 4.0)]);
        let csv = matrix_csv(&m);
        let fields: Vec<f64> = csv.trim().split(',').map(|t| t.parse().unwrap()).collect();
        assert_eq!(fields, [1.0, 2.0, 3.0, 4.0]);
    }
}
