use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Coefficient field of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Q,
    Qi,
}

impl Field {
    pub fn contains(self, s: &Scalar) -> bool {
        match self {
            Field::Q => s.is_rational(),
            Field::Qi => true,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Qi => write!(f, "Qi"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "Q" | "q" => Ok(Field::Q),
            "Qi" | "qi" | "Q(i)" => Ok(Field::Qi),
            _ => Err(Error::Parse(format!("unknown field {s:?}"))),
        }
    }
}

/// An element `re + im*i` of Q(i). Rational scalars have `im == 0`.
///
/// Both parts are reduced fractions with positive denominators, which
/// `BigRational` maintains on every operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    /// The primitive fourth root of unity `i`.
    pub fn zeta() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn int(n: i64) -> Self {
        Scalar { re: BigRational::from_integer(n.into()), im: BigRational::zero() }
    }

    pub fn frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar { re: BigRational::new(p.into(), q.into()), im: BigRational::zero() }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar { re, im: BigRational::zero() }
    }

    pub fn complex(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.re)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        match self.to_rational() {
            Some(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| i64::try_from(n).ok())
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
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
        Some(Scalar { re: &self.re / &norm, im: -(&self.im / &norm) })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power allowing negative exponents; `None` for `0^(-k)`.
    pub fn powi(&self, e: i64) -> Option<Self> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e >= 0 {
            Some(p)
        } else {
            p.inv()
        }
    }

    /// `i^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Scalar::int(1),
            1 => Scalar::zeta(),
            2 => Scalar::int(-1),
            _ => -Scalar::zeta(),
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*i", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
    }
}

fn parse_rat(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_imag(s: &str) -> Result<BigRational, Error> {
    // s has its trailing "i" removed; may end with '*' and carry a sign.
    let s = s.trim().trim_end_matches('*').trim();
    match s {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_rat(s.trim_start_matches('+')),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, `p/q+r/s*i`, `p/q-r/s*i`, `r/s*i`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not the leading character
            let split = body
                .char_indices()
                .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
                .map(|(k, _)| k)
                .last();
            let (re, im) = match split {
                Some(k) => (parse_rat(&body[..k])?, parse_imag(&body[k..])?),
                None => (BigRational::zero(), parse_imag(body)?),
            };
            Ok(Scalar { re, im })
        } else {
            Ok(Scalar::from_rational(parse_rat(&t)?))
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Scalar::int)
                .ok_or_else(|| serde::de::Error::custom("scalar numbers must be integers")),
            _ => Err(serde::de::Error::custom("expected scalar string")),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re + &o.re);
        }
        Scalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re - &o.re);
        }
        Scalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => Scalar::from_rational(&self.re * &o.re),
            (true, false) => Scalar { re: &self.re * &o.re, im: &self.re * &o.im },
            (false, true) => Scalar { re: &self.re * &o.re, im: &self.im * &o.re },
            (false, false) => Scalar {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like integer division.
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self += &o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut a, b| {
            a += &b;
            a
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "3", "-7/2", "1/3+2/5*i", "0-1*i", "5+1*i"] {
            let x: Scalar = s.parse().unwrap();
            let y: Scalar = x.to_string().parse().unwrap();
            assert_eq!(x, y, "{s}");
        }
        assert_eq!("i".parse::<Scalar>().unwrap(), Scalar::zeta());
        assert_eq!("-i".parse::<Scalar>().unwrap(), -Scalar::zeta());
        assert_eq!("2*i".parse::<Scalar>().unwrap(), Scalar::zeta() * Scalar::int(2));
        assert_eq!("-1/2-i".parse::<Scalar>().unwrap().to_string(), "-1/2-1*i");
        assert_eq!("6/4".parse::<Scalar>().unwrap().to_string(), "3/2");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn zeta_is_primitive_fourth_root() {
        let z = Scalar::zeta();
        assert!(z.pow(4).is_one());
        assert!(!z.pow(2).is_one());
        assert_eq!(Scalar::zeta_pow(-1), -z.clone());
        assert_eq!(Scalar::zeta_pow(7), -z);
    }

    #[test]
    fn inverse_in_qi() {
        let x: Scalar = "3-4*i".parse().unwrap();
        assert!((&x * &x.inv().unwrap()).is_one());
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(Scalar::int(2).powi(-2).unwrap(), Scalar::frac(1, 4));
    }
}
