//! Exact number encodings shared by the JSON schemas.
//!
//! Integers are written as JSON numbers while they fit in an `i64` and as
//! decimal strings beyond that; both forms are accepted on input. Rationals
//! are always decimal strings, `"p/q"` or `"p"`.

use super::{Int, Rat};
use num_traits::{One, ToPrimitive};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::fmt;

pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let d: Int = d.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if d == Int::from(0) {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: Int = s.parse().map_err(|_| format!("bad rational `{s}`"))?;
            Ok(Rat::from_integer(n))
        }
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Wrapper giving a BigInt the number-or-string encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub Int);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(Int::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(Int::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.trim().parse().map(JsonInt).map_err(|_| E::custom(format!("bad integer string `{v}`")))
            }
        }
        d.deserialize_any(V)
    }
}

/// Wrapper giving a BigRational the decimal-string encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRat(pub Rat);

impl Serialize for JsonRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for JsonRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonRat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string such as \"3/4\", or an integer")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rat::from_integer(Int::from(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rat::from_integer(Int::from(v))))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonRat, E> {
                parse_rat(v).map(JsonRat).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}
