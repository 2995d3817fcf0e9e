//! Exact complex-rational scalars.
//!
//! Every coefficient in the operator engine is a Gaussian rational: a complex
//! number whose real and imaginary parts are arbitrary-precision rationals.
//! Both parts are kept canonical (coprime, positive denominator) by the
//! underlying `num` rationals, so equality is structural and no floating
//! point ever enters the exact path.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact complex scalar with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        GaussianRational::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// Exact rational `numer/denom`. Panics on a zero denominator.
    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(numer), BigInt::from(denom)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }

    /// `i^k` for any signed exponent, computed exactly.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussianRational::one(),
            1 => GaussianRational::i(),
            2 => -GaussianRational::one(),
            _ => -GaussianRational::i(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2` as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact multiplicative inverse. Fails on zero.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// Size proxy used to pick the "worst" offender in reports: |re| + |im|.
    pub fn magnitude_proxy(&self) -> BigRational {
        self.re.abs() + self.im.abs()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar literal `{0}`")]
    Parse(String),
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        if rhs.is_zero() {
            return self.clone();
        }
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.is_zero() || rhs.is_zero() {
            return GaussianRational::zero();
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self - rhs;
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical text form: `0`, `-3/2`, `1i`, `-1/2i`, `1/2-3/4i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScalarError::Parse(s.to_string());
        let parse_rat = |t: &str| BigRational::from_str(t).map_err(|_| bad());
        match s.strip_suffix('i') {
            None => Ok(GaussianRational::from_rational(parse_rat(s)?)),
            Some(body) => {
                // The split between real and imaginary part is the last sign
                // that is not a leading sign: rational literals contain signs
                // only at the front.
                let split = body
                    .char_indices()
                    .rev()
                    .find(|&(k, c)| (c == '+' || c == '-') && k > 0)
                    .map(|(k, _)| k);
                match split {
                    None => Ok(GaussianRational::new(BigRational::zero(), parse_rat(body)?)),
                    Some(k) => {
                        let re = parse_rat(&body[..k])?;
                        let im_text = &body[k..];
                        let im = parse_rat(im_text.strip_prefix('+').unwrap_or(im_text))?;
                        Ok(GaussianRational::new(re, im))
                    }
                }
            }
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a real rational CLI argument of the form `a/b` or `a`.
pub fn parse_rational(text: &str) -> Result<BigRational, ScalarError> {
    BigRational::from_str(text).map_err(|_| ScalarError::Parse(text.to_string()))
}
