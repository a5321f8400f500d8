//! Exact rational scalars and their textual form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// The default exact rational used throughout the crate.
pub type Rat = BigRational;

/// Item values are non-negative integers.
pub type Value = u64;

/// Ordered exact field used by the generic numeric kernels (LP, knapsack).
///
/// Any `num_rational::Ratio` over a signed integer type qualifies.
pub trait Scalar: Num + Signed + Clone + Ord + fmt::Debug {}

impl<T> Scalar for T where T: Num + Signed + Clone + Ord + fmt::Debug {}

/// Builds `n/d` in lowest terms. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Lifts an item value into the rationals.
pub fn int(v: Value) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or an integer string.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("`{text}` is not a rational of the form p/q"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("`{text}` is not a rational of the form p/q"))?;
    if den.is_zero() {
        return Err(format!("`{text}` has a zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Formats as `"p/q"` in lowest terms, including integers (`"2/1"`).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering rounded half away from zero, for human-facing output only.
pub fn decimal(r: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r.abs() * Rat::from_integer(scale.clone());
    let rounded = (scaled + rat(1, 2)).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits as usize)
}

/// Largest integer not above a non-negative rational, as an item value.
pub fn floor_value(r: &Rat) -> Value {
    r.floor().to_integer().to_u64().unwrap_or(0)
}

/// `ceil(1/b)` for `0 < b <= 1`.
pub fn ceil_inverse(b: &Rat) -> usize {
    b.recip().ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// `floor(1/b)` for `0 < b <= 1`.
pub fn floor_inverse(b: &Rat) -> usize {
    b.recip().floor().to_integer().to_usize().unwrap_or(usize::MAX)
}

pub(crate) fn is_valid_entitlement(b: &Rat) -> bool {
    b.is_positive() && *b <= Rat::one()
}

/// Serde adapter writing a [`Rat`] as a `"p/q"` string.
pub mod serde_rat {
    use super::{format_rat, parse_rat, Rat};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        parse_rat(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter for `Vec<Rat>`.
pub mod serde_rat_vec {
    use super::{format_rat, parse_rat, Rat};
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rat(t).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Option<Rat>`.
pub mod serde_rat_opt {
    use super::{format_rat, parse_rat, Rat};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&format_rat(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| parse_rat(&t).map_err(D::Error::custom)).transpose()
    }
}
