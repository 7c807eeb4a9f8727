//! Exact rational scalars and the symbolic `b + a·ε` values used for
//! "sufficiently small ε" arguments.
//!
//! Every intersection number in the engine is a [`Rat`]. There is no
//! conversion from floating point; values are built from integers or parsed
//! from `p/q` text.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

/// Error returned when text is not an exact fraction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an exact fraction: {text:?} (expected an integer or p/q)")]
pub struct ParseRatError {
    /// The offending input.
    pub text: String,
}

impl Rat {
    /// `n / d`. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Rat {
        assert!(d != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The integer `n`.
    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds a value from arbitrary-precision parts. Panics if `d == 0`.
    pub fn from_big(n: BigInt, d: BigInt) -> Rat {
        assert!(!d.is_zero(), "zero denominator");
        Rat(BigRational::new(n, d))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, e: i32) -> Rat {
        Rat(num_traits::Pow::pow(&self.0, e))
    }

    /// Parses `n` or `p/q` (optionally signed). Decimal notation is rejected.
    pub fn parse(text: &str) -> Result<Rat, ParseRatError> {
        let err = || ParseRatError { text: text.to_string() };
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let int = |s: &str| -> Result<BigInt, ParseRatError> {
            let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).map_err(|_| err())
        };
        let n = int(num)?;
        let d = match den {
            Some(d) => int(d)?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rat(BigRational::new(n, d)))
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;
    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        Rat::parse(s)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        struct RatVisitor;
        impl serde::de::Visitor<'_> for RatVisitor {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an exact fraction such as \"-4/9\" or an integer")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Rat, E> {
                Rat::parse(v).map_err(E::custom)
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat::int(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(BigRational::from_integer(BigInt::from(v))))
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> Result<Rat, E> {
                Err(E::custom(format!("decimal notation {v} is not allowed; write an exact fraction such as \"-4/9\"")))
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0.$m(o.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat(self.0.$m(&o.0))
            }
        }
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat((&self.0).$m(&o.0))
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat((&self.0).$m(o.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, o: &Rat) {
        self.0 += &o.0;
    }
}

impl AddAssign<Rat> for Rat {
    fn add_assign(&mut self, o: Rat) {
        self.0 += o.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, o: &Rat) {
        self.0 -= &o.0;
    }
}

impl SubAssign<Rat> for Rat {
    fn sub_assign(&mut self, o: Rat) {
        self.0 -= o.0;
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

/// Shorthand for `Rat::new(n, d)`.
pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// Sign of a value "for all sufficiently small ε > 0".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Zero,
    Negative,
}

/// The symbolic value `constant + eps_coeff·ε`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EpsLinear {
    pub constant: Rat,
    pub eps_coeff: Rat,
}

impl EpsLinear {
    pub fn new(constant: Rat, eps_coeff: Rat) -> EpsLinear {
        EpsLinear { constant, eps_coeff }
    }

    /// A value with no ε part.
    pub fn constant(c: Rat) -> EpsLinear {
        EpsLinear::new(c, Rat::zero())
    }

    /// `k·ε`.
    pub fn eps(k: Rat) -> EpsLinear {
        EpsLinear::new(Rat::zero(), k)
    }

    /// The log weight `2/3 + ε` used throughout.
    pub fn weight() -> EpsLinear {
        EpsLinear::new(q(2, 3), Rat::one())
    }

    pub fn zero() -> EpsLinear {
        EpsLinear::default()
    }

    /// Scales by an exact rational.
    pub fn scale(&self, k: &Rat) -> EpsLinear {
        EpsLinear::new(&self.constant * k, &self.eps_coeff * k)
    }

    pub fn sign(&self) -> Sign {
        eps_sign(self)
    }
}

/// Sign for all sufficiently small ε > 0: decided by the constant, then by
/// the ε coefficient.
pub fn eps_sign(v: &EpsLinear) -> Sign {
    let s = if v.constant.is_zero() {
        v.eps_coeff.signum()
    } else {
        v.constant.signum()
    };
    match s {
        1 => Sign::Positive,
        0 => Sign::Zero,
        _ => Sign::Negative,
    }
}

impl Add for EpsLinear {
    type Output = EpsLinear;
    fn add(self, o: EpsLinear) -> EpsLinear {
        EpsLinear::new(self.constant + o.constant, self.eps_coeff + o.eps_coeff)
    }
}

impl Sub for EpsLinear {
    type Output = EpsLinear;
    fn sub(self, o: EpsLinear) -> EpsLinear {
        EpsLinear::new(self.constant - o.constant, self.eps_coeff - o.eps_coeff)
    }
}

impl fmt::Display for EpsLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eps_term = |k: &Rat| -> String {
            if *k == Rat::one() {
                "ε".to_string()
            } else if *k == -Rat::one() {
                "-ε".to_string()
            } else {
                format!("{k}ε")
            }
        };
        match (self.constant.is_zero(), self.eps_coeff.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.constant),
            (true, false) => write!(f, "{}", eps_term(&self.eps_coeff)),
            (false, false) => {
                if self.eps_coeff.is_negative() {
                    write!(f, "{} - {}", self.constant, eps_term(&-&self.eps_coeff))
                } else {
                    write!(f, "{} + {}", self.constant, eps_term(&self.eps_coeff))
                }
            }
        }
    }
}

impl fmt::Debug for EpsLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_fractions() {
        assert_eq!(Rat::parse("-4/9").unwrap(), q(-4, 9));
        assert_eq!(Rat::parse("8/-18").unwrap(), q(-4, 9));
        assert_eq!(Rat::parse("+3").unwrap(), Rat::int(3));
        assert_eq!(q(-4, 9).to_string(), "-4/9");
        assert_eq!(q(6, 3).to_string(), "2");
    }

    #[test]
    fn decimals_and_garbage_are_rejected() {
        for bad in ["0.5", "1e3", "", "/3", "1/", "1/0", "a/b", "--1"] {
            assert!(Rat::parse(bad).is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn eps_sign_follows_constant_then_coefficient() {
        assert_eq!(eps_sign(&EpsLinear::eps(Rat::one())), Sign::Positive);
        assert_eq!(eps_sign(&EpsLinear::zero()), Sign::Zero);
        assert_eq!(eps_sign(&EpsLinear::new(q(1, 6), Rat::one())), Sign::Positive);
        assert_eq!(eps_sign(&EpsLinear::new(q(-1, 100), Rat::int(1000))), Sign::Negative);
        assert_eq!(eps_sign(&EpsLinear::eps(Rat::int(-3))), Sign::Negative);
    }

    #[test]
    fn eps_display() {
        assert_eq!(EpsLinear::eps(Rat::one()).to_string(), "ε");
        assert_eq!(EpsLinear::eps(Rat::int(3)).to_string(), "3ε");
        assert_eq!(EpsLinear::new(q(1, 6), Rat::one()).to_string(), "1/6 + ε");
        assert_eq!(EpsLinear::zero().to_string(), "0");
    }
}
