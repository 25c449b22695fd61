//! Naturals serialize as JSON numbers of arbitrary size.

use std::str::FromStr;

use serde::Serializer;
use serde_json::Number;

use crate::Nat;

pub fn to_number(n: &Nat) -> Number {
    Number::from_str(&n.to_string()).expect("decimal digits form a JSON number")
}

pub fn nat<S: Serializer>(n: &Nat, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&to_number(n), s)
}

pub fn opt_nat<S: Serializer>(n: &Option<Nat>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => nat(n, s),
        None => s.serialize_none(),
    }
}
