//! The extended line: rationals together with the two infinite endpoints.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A point of `{-inf} ∪ ℚ ∪ {+inf}`, totally ordered the obvious way.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtPoint {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl ExtPoint {
    pub fn from_int(n: i64) -> Self {
        ExtPoint::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExtPoint::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtPoint::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtPoint::Finite(q) => Some(q),
            _ => None,
        }
    }
}

impl From<BigRational> for ExtPoint {
    fn from(q: BigRational) -> Self {
        ExtPoint::Finite(q)
    }
}

impl PartialOrd for ExtPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtPoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

/// Renders a rational as `p` when integral, `p/q` otherwise (always reduced).
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParsePointError {
    #[error("empty point literal")]
    Empty,
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p`, `p/q`, `-inf`, `inf` or `+inf`.
pub fn parse_rational(s: &str) -> Result<BigRational, ParsePointError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParsePointError::Empty);
    }
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n = BigInt::from_str(numer).map_err(|_| ParsePointError::BadRational(s.to_string()))?;
    let d = match denom {
        Some(d) => BigInt::from_str(d).map_err(|_| ParsePointError::BadRational(s.to_string()))?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(ParsePointError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::NegInf => write!(f, "-inf"),
            ExtPoint::PosInf => write!(f, "+inf"),
            ExtPoint::Finite(q) => write!(f, "{}", format_rational(q)),
        }
    }
}

impl FromStr for ExtPoint {
    type Err = ParsePointError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(ExtPoint::NegInf),
            "+inf" | "inf" => Ok(ExtPoint::PosInf),
            other => parse_rational(other).map(ExtPoint::Finite),
        }
    }
}

impl Serialize for ExtPoint {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtPoint {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_total_with_infinities_at_ends() {
        let pts = [
            ExtPoint::NegInf,
            ExtPoint::from_ratio(-5, 3),
            ExtPoint::from_int(0),
            ExtPoint::from_ratio(1, 2),
            ExtPoint::PosInf,
        ];
        for w in pts.windows(2) {
            assert!(w[0] < w[1], "{} !< {}", w[0], w[1]);
        }
        assert_eq!(ExtPoint::NegInf, ExtPoint::NegInf);
        assert_eq!(ExtPoint::PosInf, ExtPoint::PosInf);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["-inf", "+inf", "0", "7", "-3", "1/2", "-22/7"] {
            let p: ExtPoint = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        // Non-canonical inputs normalize.
        let p: ExtPoint = "4/8".parse().unwrap();
        assert_eq!(p.to_string(), "1/2");
        let p: ExtPoint = "3/-9".parse().unwrap();
        assert_eq!(p.to_string(), "-1/3");
        let p: ExtPoint = "inf".parse().unwrap();
        assert_eq!(p, ExtPoint::PosInf);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<ExtPoint>().is_err());
        assert!("1/0".parse::<ExtPoint>().is_err());
        assert!("x/2".parse::<ExtPoint>().is_err());
        assert!("1.5".parse::<ExtPoint>().is_err());
    }

    #[test]
    fn serde_uses_string_form() {
        let p = ExtPoint::from_ratio(-1, 7);
        assert_eq!(serde_json::to_string(&p).unwrap(), "\"-1/7\"");
        let back: ExtPoint = serde_json::from_str("\"-inf\"").unwrap();
        assert_eq!(back, ExtPoint::NegInf);
    }
}
