//! Exact rationals and their `"num/den"` string encoding.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn from_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Always renders as `num/den`, including integers (`3/1`).
pub fn format(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Scales a nonnegative vector to coprime integers. The zero vector is returned unchanged.
pub fn to_primitive_integers(values: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    if values.iter().all(Zero::is_zero) {
        return values.to_vec();
    }
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    let gcd = scaled
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
        .abs();
    scaled
        .into_iter()
        .map(|v| Rational::from_integer(v / &gcd))
        .collect()
}

pub(crate) mod serde_rational_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        values.iter().map(format).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub(crate) mod serde_rational_map {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        values: &BTreeMap<u32, Rational>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        values
            .iter()
            .map(|(k, v)| (*k, format(v)))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<u32, Rational>, D::Error> {
        // Keys come in as strings; inside tagged enums serde buffers them
        // and no longer coerces them to integers on its own.
        BTreeMap::<String, String>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| {
                let key = k.parse::<u32>().map_err(serde::de::Error::custom)?;
                Ok((key, parse(&v).map_err(serde::de::Error::custom)?))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        let half = Rational::new(BigInt::from(-2), BigInt::from(4));
        assert_eq!(format(&half), "-1/2");
        assert_eq!(parse("-1/2").unwrap(), half);
        assert_eq!(parse("7").unwrap(), from_int(7));
        assert_eq!(format(&from_int(7)), "7/1");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn primitive_integers() {
        let v = vec![
            Rational::new(BigInt::from(1), BigInt::from(2)),
            Rational::new(BigInt::from(3), BigInt::from(4)),
            Rational::zero(),
        ];
        assert_eq!(
            to_primitive_integers(&v),
            vec![from_int(2), from_int(3), from_int(0)]
        );
    }
}
