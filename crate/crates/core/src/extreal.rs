//! Extended reals: finite values plus the two infinities, totally ordered.
//!
//! Log-diameters and Mahalanobis norms take the value -inf (log of zero) or
//! +inf (vector outside the column space), and both must flow through
//! sorting and threshold tests. NaN is rejected at construction so the
//! ordering is total.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, Copy)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const NEG_INFINITY: ExtReal = ExtReal(f64::NEG_INFINITY);
    pub const INFINITY: ExtReal = ExtReal(f64::INFINITY);
    pub const ZERO: ExtReal = ExtReal(0.0);

    pub fn new(v: f64) -> ExtReal {
        assert!(!v.is_nan(), "ExtReal cannot hold NaN");
        ExtReal(v)
    }

    /// Natural log extended by log(0) = -inf. Panics on negative input.
    pub fn ln_of(x: f64) -> ExtReal {
        assert!(x >= 0.0, "ln_of requires a nonnegative argument");
        if x == 0.0 {
            ExtReal::NEG_INFINITY
        } else {
            ExtReal::new(x.ln())
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Square root on [0, +inf].
    pub fn sqrt(self) -> ExtReal {
        assert!(self.0 >= 0.0 || self.0 == f64::NEG_INFINITY);
        if self.0 == f64::NEG_INFINITY {
            ExtReal::NEG_INFINITY
        } else {
            ExtReal(self.0.sqrt())
        }
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.0.total_cmp(&other.0) == Ordering::Equal
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        ExtReal::new(v)
    }
}

impl Add<f64> for ExtReal {
    type Output = ExtReal;
    // inf + finite keeps the infinity; IEEE arithmetic does the right thing
    // because the rhs is always finite here.
    fn add(self, rhs: f64) -> ExtReal {
        assert!(rhs.is_finite(), "can only shift by a finite amount");
        ExtReal(self.0 + rhs)
    }
}

impl Sub<f64> for ExtReal {
    type Output = ExtReal;
    fn sub(self, rhs: f64) -> ExtReal {
        assert!(rhs.is_finite(), "can only shift by a finite amount");
        ExtReal(self.0 - rhs)
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        ExtReal(-self.0)
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            write!(f, "inf")
        } else if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

// JSON form: a plain number, or the strings "inf" / "-inf".
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            ser.serialize_f64(self.0)
        } else if self.0 > 0.0 {
            ser.serialize_str("inf")
        } else {
            ser.serialize_str("-inf")
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(v) if !v.is_nan() => Ok(ExtReal(v)),
            Raw::Num(_) => Err(D::Error::custom("NaN is not an extended real")),
            Raw::Str(s) => match s.as_str() {
                "inf" => Ok(ExtReal::INFINITY),
                "-inf" => Ok(ExtReal::NEG_INFINITY),
                _ => Err(D::Error::custom("expected \"inf\" or \"-inf\"")),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_order_with_infinities() {
        let mut v = vec![
            ExtReal::INFINITY,
            ExtReal::new(-3.0),
            ExtReal::NEG_INFINITY,
            ExtReal::new(2.0),
        ];
        v.sort();
        assert_eq!(v[0], ExtReal::NEG_INFINITY);
        assert_eq!(v[3], ExtReal::INFINITY);
        assert_eq!(v[1].value(), -3.0);
    }

    #[test]
    fn log_of_zero_is_neg_infinity() {
        assert_eq!(ExtReal::ln_of(0.0), ExtReal::NEG_INFINITY);
        assert!((ExtReal::ln_of(2.0).value() - 2.0_f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn shifting_keeps_infinities() {
        assert_eq!(ExtReal::NEG_INFINITY + 5.0, ExtReal::NEG_INFINITY);
        assert_eq!(ExtReal::INFINITY + -5.0, ExtReal::INFINITY);
    }

    #[test]
    fn serde_round_trip() {
        for v in [ExtReal::new(1.25), ExtReal::INFINITY, ExtReal::NEG_INFINITY] {
            let s = serde_json::to_string(&v).unwrap();
            let back: ExtReal = serde_json::from_str(&s).unwrap();
            assert_eq!(v, back);
        }
    }
}
