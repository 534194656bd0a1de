//! Exact integers in JSON: numbers when they fit, arbitrary-precision otherwise.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde_json::{Number, Value};

use crate::error::{Error, Result};

pub fn bigint_value(x: &BigInt) -> Value {
    // arbitrary_precision keeps every digit of the decimal string
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

pub fn biguint_value(x: &BigUint) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

pub fn value_bigint(v: &Value) -> Result<BigInt> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(Error::Parse(format!("expected integer, got {other}"))),
    };
    BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("not an integer: {s}")))
}

pub fn value_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::Parse(format!("{what}: expected non-negative integer")))
}
