//! JSON encodings for exact integers and rationals.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings. Both forms are accepted on input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

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
        impl<'de> Visitor<'de> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(BigInt::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(BigInt::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.trim().parse::<BigInt>().map(JsonInt).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// A rational as `[num, den]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRational(pub JsonInt, pub JsonInt);

impl JsonRational {
    pub fn from_rational(q: &BigRational) -> Self {
        JsonRational(JsonInt(q.numer().clone()), JsonInt(q.denom().clone()))
    }

    pub fn to_rational(&self) -> crate::Result<BigRational> {
        if self.1 .0.is_zero() {
            return Err(crate::Error::Parse("rational with zero denominator".into()));
        }
        Ok(BigRational::new(self.0 .0.clone(), self.1 .0.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_values_become_strings() {
        let big = BigInt::from(1u8) << 80usize;
        let s = serde_json::to_string(&JsonInt(big.clone())).unwrap();
        assert_eq!(s, format!("\"{big}\""));
        let back: JsonInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, big);
        let small: JsonRational = serde_json::from_str("[-3, 4]").unwrap();
        assert_eq!(small.to_rational().unwrap(), BigRational::new((-3).into(), 4.into()));
        assert!(serde_json::from_str::<JsonRational>("[1, 0]").unwrap().to_rational().is_err());
    }
}
