//! Serde helpers: exact numbers travel as decimal strings so JSON never
//! rounds them.

use num_bigint::BigInt;
use serde::ser::{SerializeSeq, Serializer};

use super::poly::rat_to_string;
use super::BigRat;

pub fn rat<S: Serializer>(r: &BigRat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(r))
}

pub fn rats<S: Serializer>(v: &[BigRat], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&rat_to_string(r))?;
    }
    seq.end()
}

pub fn opt_rat<S: Serializer>(r: &Option<BigRat>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&rat_to_string(r)),
        None => s.serialize_none(),
    }
}

pub fn int<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub fn ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for n in v {
        seq.serialize_element(&n.to_string())?;
    }
    seq.end()
}

pub fn opt_int<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => s.serialize_some(&n.to_string()),
        None => s.serialize_none(),
    }
}
