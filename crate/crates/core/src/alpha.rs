//! The weight parameter α, carried as an exact rational with a float shadow.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Weight parameter of the α-Laplacian.
///
/// Exact rational value plus the nearest `f64`. Values given as decimals
/// (`"-0.9"`) are parsed exactly, so `-0.9` is stored as `-9/10`.
#[derive(Clone, Debug)]
pub struct AlphaParam {
    value: BigRational,
    approx: f64,
}

impl AlphaParam {
    pub fn new(value: BigRational) -> Self {
        let approx = ratio_to_f64(&value);
        AlphaParam { value, approx }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Exact binary value of `x`. Prefer [`AlphaParam::from_str`] for decimals.
    pub fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_float(x)
            .map(Self::new)
            .ok_or_else(|| Error::Parse(format!("alpha must be finite, got {x}")))
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn to_f64(&self) -> f64 {
        self.approx
    }

    /// α > −1, the range where the half-plane theory applies.
    pub fn half_plane_valid(&self) -> bool {
        self.value > -BigRational::one()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `Some(n)` when α is the negative integer `n`.
    pub fn negative_integer(&self) -> Option<i64> {
        if self.value.is_integer() && self.value.is_negative() {
            self.value.to_integer().to_i64()
        } else {
            None
        }
    }

    /// α + 1 as an exact rational.
    pub fn plus_one(&self) -> BigRational {
        &self.value + BigRational::one()
    }

    pub fn require_half_plane(&self) -> Result<()> {
        if self.half_plane_valid() {
            Ok(())
        } else {
            Err(Error::Domain(format!("alpha = {self} must exceed -1")))
        }
    }
}

impl PartialEq for AlphaParam {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for AlphaParam {}

impl fmt::Display for AlphaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_ratio(&self.value))
    }
}

impl FromStr for AlphaParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Self::new)
    }
}

impl Serialize for AlphaParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_ratio(&self.value))
    }
}

impl<'de> Deserialize<'de> for AlphaParam {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(f64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            // Floats go through their shortest decimal form so 0.1 means 1/10.
            Raw::Number(x) => x.to_string().parse().map_err(serde::de::Error::custom),
        }
    }
}

/// `"num/den"` always, including integers (`"3/1"`).
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"`, an integer, or a decimal such as `"-0.25"` / `"1e-3"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(all);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -r } else { r })
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Very large numerator or denominator: rescale before dividing.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000) as usize;
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}
