//! The extended complex plane `C ∪ {∞}`.
//!
//! Square roots always use the principal branch: arguments live in
//! `(-π, π]`, so a negative real number (including one carrying a `-0.0`
//! imaginary part) has argument `+π` and its root lies on the positive
//! imaginary axis.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

use ExtendedComplex::{Finite, Infinity};

impl ExtendedComplex {
    pub const ZERO: Self = Finite(Complex64::new(0.0, 0.0));
    pub const ONE: Self = Finite(Complex64::new(1.0, 0.0));

    pub fn new(re: f64, im: f64) -> Self {
        Self::from(Complex64::new(re, im))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Infinity)
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    pub fn finite(self) -> Option<Complex64> {
        match self {
            Finite(z) => Some(z),
            Infinity => None,
        }
    }

    /// The finite value, or [`Error::NonFinite`] naming `what`.
    pub fn require_finite(self, what: &'static str) -> Result<Complex64> {
        self.finite().ok_or(Error::NonFinite(what))
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Finite(z) if z.re == 0.0 && z.im == 0.0)
    }

    pub fn conj(self) -> Self {
        match self {
            Finite(z) => Finite(z.conj()),
            Infinity => Infinity,
        }
    }

    /// `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(self) -> Self {
        match self {
            Infinity => Self::ZERO,
            Finite(z) if z.re == 0.0 && z.im == 0.0 => Infinity,
            Finite(z) => Self::from(z.inv()),
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Ok(Self::from(a + b)),
            (Infinity, Infinity) => Err(Error::Indeterminate("inf + inf")),
            _ => Ok(Infinity),
        }
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (Infinity, Infinity) => Err(Error::Indeterminate("inf - inf")),
            _ => self.checked_add(-rhs),
        }
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Ok(Self::from(a * b)),
            (Infinity, other) | (other, Infinity) => {
                if other.is_zero() {
                    Err(Error::Indeterminate("inf * 0"))
                } else {
                    Ok(Infinity)
                }
            }
        }
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (Infinity, Infinity) => Err(Error::Indeterminate("inf / inf")),
            (a, b) if a.is_zero() && b.is_zero() => Err(Error::Indeterminate("0 / 0")),
            _ => self.checked_mul(rhs.recip()),
        }
    }

    pub fn principal_sqrt(self) -> Self {
        match self {
            Finite(z) => Finite(principal_sqrt(z)),
            Infinity => Infinity,
        }
    }

    /// Chordal distance on the Riemann sphere of diameter 1 scaled to 2,
    /// i.e. `2|z - w| / sqrt((1 + |z|²)(1 + |w|²))`. Bounded by 2.
    pub fn chordal_distance(self, other: Self) -> f64 {
        match (self, other) {
            (Infinity, Infinity) => 0.0,
            (Finite(z), Infinity) | (Infinity, Finite(z)) => 2.0 / 1f64.hypot(z.norm()),
            (Finite(z), Finite(w)) => {
                2.0 * (z - w).norm() / (1f64.hypot(z.norm()) * 1f64.hypot(w.norm()))
            }
        }
    }
}

/// Any non-finite part collapses to the single point at infinity.
impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            Finite(z)
        } else {
            Infinity
        }
    }
}

impl From<f64> for ExtendedComplex {
    fn from(x: f64) -> Self {
        Self::new(x, 0.0)
    }
}

/// Argument in `(-π, π]`; a `-0.0` imaginary part on the negative real
/// axis still maps to `+π`.
pub fn principal_arg(z: Complex64) -> f64 {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    im.atan2(z.re)
}

/// Principal square root: `arg(result) ∈ (-π/2, π/2]`.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    let z = Complex64::new(z.re, if z.im == 0.0 { 0.0 } else { z.im });
    z.sqrt()
}

/// `√(z1 z2) := √z1 · √z2`, which is not in general `principal_sqrt(z1 z2)`.
pub fn sqrt_pair(z1: Complex64, z2: Complex64) -> Complex64 {
    principal_sqrt(z1) * principal_sqrt(z2)
}

/// Extended form of [`sqrt_pair`]; `∞ · 0` is indeterminate.
pub fn sqrt_pair_ext(z1: ExtendedComplex, z2: ExtendedComplex) -> Result<ExtendedComplex> {
    z1.principal_sqrt().checked_mul(z2.principal_sqrt())
}

impl std::ops::Neg for ExtendedComplex {
    type Output = Self;

    fn neg(self) -> Self {
        match self {
            Finite(z) => Finite(-z),
            Infinity => Infinity,
        }
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infinity => write!(f, "inf"),
            Finite(z) => {
                if z.im.is_sign_negative() {
                    write!(f, "{}-{}i", z.re, -z.im)
                } else {
                    write!(f, "{}+{}i", z.re, z.im)
                }
            }
        }
    }
}

impl FromStr for ExtendedComplex {
    type Err = String;

    /// Accepts `a+bi`, `a-bi`, bare reals, `bi`, `i`, `-i` and `inf`
    /// (also `∞`). Whitespace is ignored and `j` may stand in for `i`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        let lower = t.to_ascii_lowercase();
        if matches!(lower.as_str(), "inf" | "+inf" | "infinity" | "∞") {
            return Ok(Infinity);
        }
        if lower.is_empty() {
            return Err("empty complex number".into());
        }
        let bad = || format!("cannot parse complex number {s:?}");
        let parse_real = |r: &str| r.parse::<f64>().map_err(|_| bad());
        let z = if let Some(body) = lower.strip_suffix(['i', 'j']) {
            // split at the last sign that is not a leading sign or an exponent sign
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'e');
            let (re_part, im_part) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("", body),
            };
            let re = if re_part.is_empty() { 0.0 } else { parse_real(re_part)? };
            let im = match im_part {
                "" | "+" => 1.0,
                "-" => -1.0,
                other => parse_real(other)?,
            };
            Complex64::new(re, im)
        } else {
            Complex64::new(parse_real(&lower)?, 0.0)
        };
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(bad());
        }
        Ok(Finite(z))
    }
}

/// Finite values serialize as `[re, im]`, infinity as `"inf"`.
impl Serialize for ExtendedComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Infinity => serializer.serialize_str("inf"),
            Finite(z) => {
                let mut t = serializer.serialize_tuple(2)?;
                t.serialize_element(&z.re)?;
                t.serialize_element(&z.im)?;
                t.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair([f64; 2]),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Pair([re, im]) => Ok(Self::new(re, im)),
            Repr::Text(s) if s == "inf" => Ok(Infinity),
            Repr::Text(s) => Err(de::Error::custom(format!("expected \"inf\", got {s:?}"))),
        }
    }
}
