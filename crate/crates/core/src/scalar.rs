//! Gaussian rationals: exact elements of ℚ(i).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact complex number `re + im·i` with big-rational parts.
///
/// Both parts are kept in lowest terms with positive denominators (the
/// `BigRational` invariant), so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar::new(re, BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Scalar::one(),
            1 => Scalar::i(),
            2 => -Scalar::one(),
            _ => -Scalar::i(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Scalar::from_rational(self.re.recip()));
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Scalar::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `n!` as a scalar.
    pub fn factorial(n: u32) -> Self {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= BigInt::from(k);
        }
        Scalar::from_rational(BigRational::from_integer(acc))
    }

    pub fn binomial(n: u32, k: u32) -> Self {
        if k > n {
            return Scalar::zero();
        }
        let mut acc = BigRational::one();
        for j in 0..k {
            acc = acc * BigRational::from_integer(BigInt::from(n - j))
                / BigRational::from_integer(BigInt::from(j + 1));
        }
        Scalar::from_rational(acc)
    }
}

/// "p/q" with the denominator always written.
pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

impl Scalar {
    /// Compact lossless text form: "p/q" when real, "p/q+r/si" otherwise.
    pub fn to_coef_string(&self) -> String {
        if self.im.is_zero() {
            return rational_to_string(&self.re);
        }
        let sign = if self.im.is_negative() { "" } else { "+" };
        format!("{}{}{}i", rational_to_string(&self.re), sign, rational_to_string(&self.im))
    }

    pub fn parse_coef_string(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Scalar::from_rational(parse_rational(s)?));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last()
            .ok_or_else(|| Error::Parse(format!("not a coefficient: {s:?}")))?;
        let re = parse_rational(&body[..split])?;
        let im = parse_rational(body[split..].trim_start_matches('+'))?;
        Ok(Scalar::new(re, im))
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl fmt::Display for Scalar {
    /// Zero parts are elided: `3/2`, `-i`, `1/2 + 5/3·i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |q: &BigRational| -> String {
            if q.is_one() {
                "i".to_string()
            } else if (-q).is_one() {
                "-i".to_string()
            } else {
                format!("{}·i", fmt_rational(q))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}", fmt_rational(&self.re), sign, im_part(&self.im.abs()))
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // Most arithmetic in this crate is real; skip the cross terms then.
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::from_rational(&self.re * &rhs.re);
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    re: String,
    im: String,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            re: rational_to_string(&self.re),
            im: rational_to_string(&self.im),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let re = parse_rational(&repr.re).map_err(serde::de::Error::custom)?;
        let im = parse_rational(&repr.im).map_err(serde::de::Error::custom)?;
        Ok(Scalar::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coef_strings_round_trip() {
        for z in [Scalar::from_ratio(-3, 4), Scalar::i(), -Scalar::i(), &Scalar::from_int(2) - &Scalar::i(), Scalar::zero()] {
            assert_eq!(Scalar::parse_coef_string(&z.to_coef_string()).unwrap(), z);
        }
        assert_eq!(Scalar::from_ratio(1, 2).to_coef_string(), "1/2");
        assert_eq!((&Scalar::from_int(-1) - &Scalar::i()).to_coef_string(), "-1/1-1/1i");
        assert!(Scalar::parse_coef_string("3i").is_err());
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
        assert_eq!(Scalar::i_pow(3), -Scalar::i());
        assert_eq!(Scalar::i_pow(-1), -Scalar::i());
    }

    #[test]
    fn inverse_of_gaussian() {
        let z = Scalar::new(BigRational::from_integer(3.into()), BigRational::from_integer(4.into()));
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, Scalar::one());
        assert_eq!(w.to_string(), "3/25 - 4/25·i");
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn canonical_form_is_reduced() {
        let a = Scalar::from_ratio(4, -6);
        assert_eq!(a, Scalar::from_ratio(-2, 3));
        assert_eq!(rational_to_string(a.re()), "-2/3");
        assert_eq!(rational_to_string(Scalar::from_int(8).re()), "8/1");
    }

    #[test]
    fn display_elides_zero_parts() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!((-Scalar::i()).to_string(), "-i");
        assert_eq!(Scalar::from_ratio(32, 3).to_string(), "32/3");
    }

    #[test]
    fn json_round_trip() {
        let z = Scalar::new(parse_rational("-7/3").unwrap(), parse_rational("5").unwrap());
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":"-7/3","im":"5/1"}"#);
        let back: Scalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(Scalar::factorial(5), Scalar::from_int(120));
        assert_eq!(Scalar::binomial(8, 5), Scalar::from_int(56));
        assert_eq!(Scalar::binomial(3, 5), Scalar::zero());
    }
}
