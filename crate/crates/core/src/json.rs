//! JSON helpers: big integers are emitted as exact JSON numbers.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde_json::{Number, Value};

pub fn big_int(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integer is a JSON number"))
}

pub fn big_uint(v: &BigUint) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integer is a JSON number"))
}
