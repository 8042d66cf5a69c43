//! JSON expression trees: `{"op": "rat" | "add" | "sub" | "mul" | "div" | "neg" | "sqrt", "args": [...]}`.
//! A `rat` node carries a single string argument in `p/q` or decimal form.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{parse_rational, AlgebraError, Real};

pub fn to_expr(x: &Real) -> Value {
    match x.radical_parts() {
        None => json!({"op": "rat", "args": [x.to_string()]}),
        Some((a, b, r)) => {
            let root = json!({"op": "sqrt", "args": [to_expr(r)]});
            let term = if b.as_rational().is_some_and(One::is_one) {
                root
            } else {
                json!({"op": "mul", "args": [to_expr(b), root]})
            };
            if a.as_rational().is_some_and(Zero::is_zero) {
                term
            } else {
                json!({"op": "add", "args": [to_expr(a), term]})
            }
        }
    }
}

/// Like [`to_expr`], but a rational value becomes a bare `"p/q"` string.
pub fn to_json(x: &Real) -> Value {
    match x.as_rational() {
        Some(q) => Value::String(q.to_string()),
        None => to_expr(x),
    }
}

pub fn from_expr(v: &Value) -> Result<Real, AlgebraError> {
    let bad = |m: &str| AlgebraError::Expr(m.to_string());
    // Bare numbers and strings are accepted as rational leaves.
    match v {
        Value::String(s) => return Ok(Real::from(parse_rational(s)?)),
        Value::Number(n) => return Ok(Real::from(parse_rational(&n.to_string())?)),
        _ => {}
    }
    let op = v.get("op").and_then(Value::as_str).ok_or_else(|| bad("missing op"))?;
    let args = v
        .get("args")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing args"))?;
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(AlgebraError::Expr(format!("`{op}` takes {n} argument(s)")))
        }
    };
    match op {
        "rat" => {
            arity(1)?;
            from_expr(&args[0])
        }
        "neg" => {
            arity(1)?;
            Ok(-from_expr(&args[0])?)
        }
        "sqrt" => {
            arity(1)?;
            from_expr(&args[0])?.sqrt()
        }
        "add" | "sub" | "mul" | "div" => {
            arity(2)?;
            let x = from_expr(&args[0])?;
            let y = from_expr(&args[1])?;
            Ok(match op {
                "add" => x + y,
                "sub" => x - y,
                "mul" => x * y,
                _ => x.checked_div(&y)?,
            })
        }
        other => Err(AlgebraError::Expr(format!("unknown op `{other}`"))),
    }
}
