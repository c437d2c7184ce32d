//! Canonical JSON encodings of the domain types. All exact scalars travel
//! as strings ("a/b" with positive denominator, plain "a" for integers);
//! object keys are emitted in sorted order, so equal values serialize to
//! identical bytes.

use crate::linalg::{IMat, PMat, QMat};
use crate::padic::PadicNumber;
use crate::poly::MultiPoly;
use crate::rat::{parse_rat, Int, Rat};
use crate::series::TruncatedSeries;
use crate::symbolic::{LinCombo, SymbolSpace, SymbolicMatrix};
use num_traits::Zero;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonError {
    pub path: String,
    pub message: String,
}

impl JsonError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        JsonError {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for JsonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at {}: {}", self.path, self.message)
    }
}

impl std::error::Error for JsonError {}

type R<T> = Result<T, JsonError>;

pub fn get<'a>(v: &'a Value, key: &str, path: &str) -> R<&'a Value> {
    v.get(key)
        .ok_or_else(|| JsonError::new(format!("{path}/{key}"), "missing field"))
}

pub fn as_usize(v: &Value, path: &str) -> R<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| JsonError::new(path, "expected a nonnegative integer"))
}

pub fn as_i64(v: &Value, path: &str) -> R<i64> {
    v.as_i64()
        .ok_or_else(|| JsonError::new(path, "expected an integer"))
}

pub fn as_array<'a>(v: &'a Value, path: &str) -> R<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| JsonError::new(path, "expected an array"))
}

pub fn as_str<'a>(v: &'a Value, path: &str) -> R<&'a str> {
    v.as_str()
        .ok_or_else(|| JsonError::new(path, "expected a string"))
}

pub fn parse_rat_value(v: &Value, path: &str) -> R<Rat> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|e| JsonError::new(path, e)),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(Int::from(i)))
            } else {
                Err(JsonError::new(path, "expected an exact integer or \"a/b\""))
            }
        }
        _ => Err(JsonError::new(path, "expected a rational as string")),
    }
}

pub fn rat_to_value(x: &Rat) -> Value {
    Value::String(x.to_string())
}

pub fn parse_int_value(v: &Value, path: &str) -> R<Int> {
    let r = parse_rat_value(v, path)?;
    if !r.is_integer() {
        return Err(JsonError::new(path, "expected an integer"));
    }
    Ok(r.to_integer())
}

pub fn int_to_value(x: &Int) -> Value {
    Value::String(x.to_string())
}

pub fn parse_rat_vec(v: &Value, path: &str) -> R<Vec<Rat>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_rat_value(x, &format!("{path}/{i}")))
        .collect()
}

pub fn parse_int_vec(v: &Value, path: &str) -> R<Vec<Int>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_int_value(x, &format!("{path}/{i}")))
        .collect()
}

pub fn rat_vec_to_value(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_value).collect())
}

pub fn int_vec_to_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_to_value).collect())
}

/// {"rows": r, "cols": c, "entries": [["a/b", ...], ...]}
pub fn parse_qmat(v: &Value, path: &str) -> R<QMat> {
    let rows = as_usize(get(v, "rows", path)?, &format!("{path}/rows"))?;
    let cols = as_usize(get(v, "cols", path)?, &format!("{path}/cols"))?;
    let entries = as_array(get(v, "entries", path)?, &format!("{path}/entries"))?;
    if entries.len() != rows {
        return Err(JsonError::new(
            format!("{path}/entries"),
            format!("expected {rows} rows, got {}", entries.len()),
        ));
    }
    let mut grid = Vec::with_capacity(rows);
    for (i, row) in entries.iter().enumerate() {
        let row = parse_rat_vec(row, &format!("{path}/entries/{i}"))?;
        if row.len() != cols {
            return Err(JsonError::new(
                format!("{path}/entries/{i}"),
                format!("expected {cols} entries, got {}", row.len()),
            ));
        }
        grid.push(row);
    }
    Ok(QMat::from_rows(grid))
}

pub fn qmat_to_value(m: &QMat) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": (0..m.rows())
            .map(|i| rat_vec_to_value(m.row(i)))
            .collect::<Vec<_>>(),
    })
}

pub fn parse_imat(v: &Value, path: &str) -> R<IMat> {
    let q = parse_qmat(v, path)?;
    let mut rows = Vec::with_capacity(q.rows());
    for i in 0..q.rows() {
        let mut row = Vec::with_capacity(q.cols());
        for (j, x) in q.row(i).iter().enumerate() {
            if !x.is_integer() {
                return Err(JsonError::new(
                    format!("{path}/entries/{i}/{j}"),
                    "expected an integer entry",
                ));
            }
            row.push(x.to_integer());
        }
        rows.push(row);
    }
    Ok(IMat::from_rows(rows))
}

pub fn imat_to_value(m: &IMat) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": (0..m.rows())
            .map(|i| int_vec_to_value(m.row(i)))
            .collect::<Vec<_>>(),
    })
}

/// Lattice basis as a list of columns.
pub fn imat_cols_to_value(m: &IMat) -> Value {
    Value::Array((0..m.cols()).map(|j| int_vec_to_value(&m.col(j))).collect())
}

pub fn parse_imat_cols(v: &Value, rows: usize, path: &str) -> R<IMat> {
    let arr = as_array(v, path)?;
    let mut cols = Vec::with_capacity(arr.len());
    for (j, c) in arr.iter().enumerate() {
        let col = parse_int_vec(c, &format!("{path}/{j}"))?;
        if col.len() != rows {
            return Err(JsonError::new(
                format!("{path}/{j}"),
                format!("expected a column of length {rows}"),
            ));
        }
        cols.push(col);
    }
    if cols.is_empty() {
        return Ok(IMat::zeros(rows, 0));
    }
    Ok(IMat::from_cols(cols))
}

/// Polynomial as a term list [{"exps": [...], "coef": "a/b"}, ...] in
/// graded-lex order, or {"nvars": n, "terms": [...]} when the variable
/// count cannot be inferred (the zero polynomial).
pub fn parse_poly(v: &Value, path: &str) -> R<MultiPoly> {
    let (terms, nvars_hint) = match v {
        Value::Array(a) => (a, None),
        Value::Object(_) => {
            let n = as_usize(get(v, "nvars", path)?, &format!("{path}/nvars"))?;
            let t = as_array(get(v, "terms", path)?, &format!("{path}/terms"))?;
            (t, Some(n))
        }
        _ => return Err(JsonError::new(path, "expected a term list")),
    };
    let mut parsed: Vec<(Vec<u32>, Rat)> = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let tpath = format!("{path}/{i}");
        let exps = as_array(get(t, "exps", &tpath)?, &format!("{tpath}/exps"))?;
        let exps: Vec<u32> = exps
            .iter()
            .enumerate()
            .map(|(j, e)| {
                as_usize(e, &format!("{tpath}/exps/{j}")).map(|x| x as u32)
            })
            .collect::<R<_>>()?;
        let coef = parse_rat_value(get(t, "coef", &tpath)?, &format!("{tpath}/coef"))?;
        parsed.push((exps, coef));
    }
    let nvars = match nvars_hint {
        Some(n) => n,
        None => parsed
            .first()
            .map(|(e, _)| e.len())
            .ok_or_else(|| JsonError::new(path, "empty term list needs {\"nvars\": n}"))?,
    };
    for (i, (e, _)) in parsed.iter().enumerate() {
        if e.len() != nvars {
            return Err(JsonError::new(
                format!("{path}/{i}/exps"),
                format!("expected {nvars} exponents, got {}", e.len()),
            ));
        }
    }
    Ok(MultiPoly::from_terms(nvars, parsed))
}

pub fn poly_to_value(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            json!({
                "exps": m.0.clone(),
                "coef": c.to_string(),
            })
        })
        .collect();
    if terms.is_empty() {
        json!({ "nvars": p.nvars(), "terms": [] })
    } else {
        Value::Array(terms)
    }
}

pub fn parse_pmat(v: &Value, path: &str) -> R<PMat> {
    let rows = as_usize(get(v, "rows", path)?, &format!("{path}/rows"))?;
    let cols = as_usize(get(v, "cols", path)?, &format!("{path}/cols"))?;
    let nvars = as_usize(get(v, "nvars", path)?, &format!("{path}/nvars"))?;
    let entries = as_array(get(v, "entries", path)?, &format!("{path}/entries"))?;
    if entries.len() != rows {
        return Err(JsonError::new(
            format!("{path}/entries"),
            format!("expected {rows} rows"),
        ));
    }
    let mut grid = Vec::with_capacity(rows);
    for (i, row) in entries.iter().enumerate() {
        let row = as_array(row, &format!("{path}/entries/{i}"))?;
        if row.len() != cols {
            return Err(JsonError::new(
                format!("{path}/entries/{i}"),
                format!("expected {cols} entries"),
            ));
        }
        let mut out = Vec::with_capacity(cols);
        for (j, e) in row.iter().enumerate() {
            let p = parse_poly(e, &format!("{path}/entries/{i}/{j}"))?;
            if p.nvars() != nvars && !p.is_zero() {
                return Err(JsonError::new(
                    format!("{path}/entries/{i}/{j}"),
                    "variable count differs from the matrix header",
                ));
            }
            out.push(if p.is_zero() && p.nvars() != nvars {
                MultiPoly::zero(nvars)
            } else {
                p
            });
        }
        grid.push(out);
    }
    Ok(PMat::from_rows(nvars, grid))
}

pub fn pmat_to_value(m: &PMat) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "nvars": m.nvars(),
        "entries": (0..m.rows())
            .map(|i| {
                Value::Array((0..m.cols()).map(|j| poly_to_value(m.at(i, j))).collect())
            })
            .collect::<Vec<_>>(),
    })
}

/// {"symbols": ["l1", ...], "includes_one": bool, "rows": m, "cols": n,
///  "entries": [[{"l1": "1/2", ...}, ...], ...]}; omitted symbol keys are 0.
/// When `includes_one` is set, exactly one symbol must be named "1".
pub fn parse_symbolic(v: &Value, path: &str) -> R<SymbolicMatrix> {
    let syms = as_array(get(v, "symbols", path)?, &format!("{path}/symbols"))?;
    let names: Vec<String> = syms
        .iter()
        .enumerate()
        .map(|(i, s)| as_str(s, &format!("{path}/symbols/{i}")).map(str::to_owned))
        .collect::<R<_>>()?;
    let includes_one = get(v, "includes_one", path)?
        .as_bool()
        .ok_or_else(|| JsonError::new(format!("{path}/includes_one"), "expected a bool"))?;
    let space = SymbolSpace::new(names.clone())
        .map_err(|e| JsonError::new(format!("{path}/symbols"), e.to_string()))?;
    if includes_one != space.includes_one() {
        return Err(JsonError::new(
            format!("{path}/includes_one"),
            "inconsistent with the symbol list (the constant symbol is named \"1\")",
        ));
    }
    let rows = as_usize(get(v, "rows", path)?, &format!("{path}/rows"))?;
    let cols = as_usize(get(v, "cols", path)?, &format!("{path}/cols"))?;
    let entries = as_array(get(v, "entries", path)?, &format!("{path}/entries"))?;
    if entries.len() != rows {
        return Err(JsonError::new(
            format!("{path}/entries"),
            format!("expected {rows} rows"),
        ));
    }
    let mut combos = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row = as_array(row, &format!("{path}/entries/{i}"))?;
        if row.len() != cols {
            return Err(JsonError::new(
                format!("{path}/entries/{i}"),
                format!("expected {cols} entries"),
            ));
        }
        for (j, cell) in row.iter().enumerate() {
            let cpath = format!("{path}/entries/{i}/{j}");
            let obj = cell
                .as_object()
                .ok_or_else(|| JsonError::new(&cpath, "expected a {symbol: coeff} object"))?;
            let mut coeffs = vec![Rat::zero(); names.len()];
            for (key, val) in obj {
                let Some(idx) = names.iter().position(|n| n == key) else {
                    return Err(JsonError::new(
                        format!("{cpath}/{key}"),
                        "unknown symbol",
                    ));
                };
                coeffs[idx] = parse_rat_value(val, &format!("{cpath}/{key}"))?;
            }
            combos.push(LinCombo(coeffs));
        }
    }
    SymbolicMatrix::new(space, rows, cols, combos)
        .map_err(|e| JsonError::new(path, e.to_string()))
}

pub fn symbolic_to_value(m: &SymbolicMatrix) -> Value {
    let names = m.space().names();
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| {
                        let mut obj = Map::new();
                        for (k, c) in m.entry(i, j).0.iter().enumerate() {
                            if !c.is_zero() {
                                obj.insert(names[k].clone(), rat_to_value(c));
                            }
                        }
                        Value::Object(obj)
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "symbols": names,
        "includes_one": m.space().includes_one(),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

/// {"order": T, "coeffs": ["a/b", ...]}
pub fn parse_series(v: &Value, path: &str) -> R<TruncatedSeries> {
    let order = as_usize(get(v, "order", path)?, &format!("{path}/order"))?;
    if order == 0 {
        return Err(JsonError::new(format!("{path}/order"), "order must be positive"));
    }
    let coeffs = parse_rat_vec(get(v, "coeffs", path)?, &format!("{path}/coeffs"))?;
    if coeffs.len() != order {
        return Err(JsonError::new(
            format!("{path}/coeffs"),
            format!("expected {order} coefficients, got {}", coeffs.len()),
        ));
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

pub fn series_to_value(s: &TruncatedSeries) -> Value {
    json!({
        "order": s.order(),
        "coeffs": rat_vec_to_value(s.coeffs()),
    })
}

/// Exact encoding of a p-adic number: valuation + unit representative +
/// absolute precision, plus a human-readable digit expansion.
pub fn padic_to_value(x: &PadicNumber) -> Value {
    json!({
        "prime": x.prime(),
        "valuation": x.valuation(),
        "unit": x.unit_part().to_string(),
        "abs_prec": x.abs_prec(),
        "digits": x.to_string(),
    })
}

pub fn parse_padic(v: &Value, path: &str) -> R<PadicNumber> {
    let prime = get(v, "prime", path)?
        .as_u64()
        .ok_or_else(|| JsonError::new(format!("{path}/prime"), "expected a prime"))?;
    let abs_prec = as_i64(get(v, "abs_prec", path)?, &format!("{path}/abs_prec"))?;
    let val = get(v, "valuation", path)?;
    if val.is_null() {
        return Ok(PadicNumber::zero_at(prime, abs_prec));
    }
    let val = as_i64(val, &format!("{path}/valuation"))?;
    let unit = parse_int_value(get(v, "unit", path)?, &format!("{path}/unit"))?;
    if abs_prec <= val {
        return Err(JsonError::new(
            format!("{path}/abs_prec"),
            "absolute precision must exceed the valuation",
        ));
    }
    let shifted = unit * Int::from(prime).pow((val.max(0)) as u32);
    if val >= 0 {
        Ok(PadicNumber::from_int_mod(prime, shifted, abs_prec))
    } else {
        // negative valuation: value = unit * p^val
        let unit_num = PadicNumber::from_int_mod(prime, shifted, abs_prec - val);
        let p_pow = PadicNumber::from_rat(
            &crate::rat::rat_pow(&Rat::from_integer(Int::from(prime)), val),
            prime,
            abs_prec,
        );
        unit_num
            .mul(&p_pow)
            .map_err(|e| JsonError::new(path, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use crate::symbolic::singular_3x3_example;

    #[test]
    fn rational_roundtrip() {
        let v = rat_to_value(&rat(-3, 2));
        assert_eq!(v, json!("-3/2"));
        assert_eq!(parse_rat_value(&v, "x").unwrap(), rat(-3, 2));
        assert!(parse_rat_value(&json!("1/0"), "x").is_err());
        assert_eq!(parse_rat_value(&json!(7), "x").unwrap(), rat_int(7));
    }

    #[test]
    fn matrix_roundtrip() {
        let m = QMat::from_rows(vec![
            vec![rat(1, 2), rat_int(0)],
            vec![rat_int(-3), rat(7, 5)],
        ]);
        let v = qmat_to_value(&m);
        assert_eq!(parse_qmat(&v, "m").unwrap(), m);
        // shape violation is caught with a path
        let bad = json!({"rows": 2, "cols": 2, "entries": [["1", "2"]]});
        let err = parse_qmat(&bad, "m").unwrap_err();
        assert_eq!(err.path, "m/entries");
    }

    #[test]
    fn poly_roundtrip_graded_lex() {
        let p = MultiPoly::from_terms(
            2,
            [
                (vec![2, 0], rat_int(1)),
                (vec![0, 1], rat(-1, 3)),
                (vec![0, 0], rat_int(4)),
            ],
        );
        let v = poly_to_value(&p);
        // graded-lex order: constant, then degree-1, then degree-2
        let arr = v.as_array().unwrap();
        assert_eq!(arr[0]["exps"], json!([0, 0]));
        assert_eq!(arr[1]["exps"], json!([0, 1]));
        assert_eq!(arr[2]["exps"], json!([2, 0]));
        assert_eq!(parse_poly(&v, "p").unwrap(), p);
        // zero polynomial needs the wrapped form
        let z = MultiPoly::zero(3);
        assert_eq!(parse_poly(&poly_to_value(&z), "z").unwrap(), z);
    }

    #[test]
    fn symbolic_roundtrip() {
        let m = singular_3x3_example();
        let v = symbolic_to_value(&m);
        assert_eq!(parse_symbolic(&v, "m").unwrap(), m);
        // unknown symbol key
        let bad = json!({
            "symbols": ["a"], "includes_one": false, "rows": 1, "cols": 1,
            "entries": [[{"b": "1"}]]
        });
        let err = parse_symbolic(&bad, "m").unwrap_err();
        assert!(err.path.contains("/b"));
    }

    #[test]
    fn series_and_padic_roundtrip() {
        let s = TruncatedSeries::from_coeffs(vec![rat_int(0), rat(1, 2), rat_int(3)]);
        assert_eq!(parse_series(&series_to_value(&s), "s").unwrap(), s);

        let x = PadicNumber::from_rat(&rat(7, 5), 5, 12);
        let v = padic_to_value(&x);
        assert_eq!(parse_padic(&v, "x").unwrap(), x);
        let z = PadicNumber::zero_at(3, 8);
        assert_eq!(parse_padic(&padic_to_value(&z), "z").unwrap(), z);
    }

    #[test]
    fn pmat_roundtrip() {
        let m = crate::det_rep::determinantal_rep(&MultiPoly::from_terms(
            2,
            [(vec![1, 1], rat_int(1)), (vec![0, 0], rat_int(-1))],
        ));
        let v = pmat_to_value(&m);
        assert_eq!(parse_pmat(&v, "m").unwrap(), m);
    }
}
