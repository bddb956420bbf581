//! Big integers and rationals as decimal strings in JSON.

use num_bigint::BigInt;
use serde::{de::Error, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(D::Error::custom)
}

pub mod vec {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}

pub mod opt {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|x| x.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(D::Error::custom))
            .transpose()
    }
}

/// `p/q` strings for rationals.
pub mod rational {
    use num_rational::BigRational;

    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Polynomials as their printed form.
pub mod poly_vec {
    use serde::Serialize;

    use super::*;
    use crate::poly::MultiPoly;

    pub fn serialize<S: Serializer>(v: &[MultiPoly], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|p| p.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<MultiPoly>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| MultiPoly::parse_with_arity(s, 3).map_err(D::Error::custom))
            .collect()
    }
}

pub mod opt_vec {
    use serde::Serialize;

    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        Option::<Vec<String>>::deserialize(d)?
            .map(|v| v.iter().map(|s| s.parse().map_err(D::Error::custom)).collect())
            .transpose()
    }
}

/// A trivariate polynomial as its printed form.
pub mod poly {
    use serde::Serialize;

    use super::*;
    use crate::poly::MultiPoly;

    pub fn serialize<S: Serializer>(p: &MultiPoly, s: S) -> Result<S::Ok, S::Error> {
        p.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<MultiPoly, D::Error> {
        let s = String::deserialize(d)?;
        MultiPoly::parse_with_arity(&s, 3).map_err(D::Error::custom)
    }
}
