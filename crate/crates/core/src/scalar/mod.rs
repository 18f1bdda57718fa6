//! The two number regimes everything else computes in.
//!
//! [`Scalar::Exact`] is an unbounded rational; every ring operation on it is
//! error-free. [`Scalar::Float`] is a binary big-float with an explicit
//! decimal precision. Mixing regimes promotes the rational to the float's
//! precision. Comparisons across regimes are exact, since every big-float is a
//! dyadic rational.

mod complex;
mod float;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use complex::ComplexScalar;
pub use float::{default_precision, set_default_precision, Float, Precision};

const LOG10_2: f64 = std::f64::consts::LOG10_2;

#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(Float),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Exact(BigRational::from_integer(n))
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// `2^exp` as an exact rational; negative exponents give dyadic fractions.
    pub fn pow2(exp: i64) -> Self {
        let p = BigInt::one() << exp.unsigned_abs() as usize;
        if exp >= 0 {
            Scalar::from_bigint(p)
        } else {
            Scalar::Exact(BigRational::new(BigInt::one(), p))
        }
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Scalar::Exact)
    }

    pub fn float_from_f64(x: f64, precision: Precision) -> Self {
        Scalar::Float(Float::from_f64(x, precision))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Float(_) => None,
        }
    }

    /// `None` for exact values.
    pub fn precision(&self) -> Option<Precision> {
        match self {
            Scalar::Exact(_) => None,
            Scalar::Float(f) => Some(f.precision()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(f) => f.is_zero(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Exact(q) => {
                if q.is_zero() {
                    0
                } else if q.is_negative() {
                    -1
                } else {
                    1
                }
            }
            Scalar::Float(f) => f.signum(),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.abs()),
            Scalar::Float(f) => Scalar::Float(f.abs()),
        }
    }

    /// Converts to the float regime. Floats are re-rounded to `precision`.
    pub fn to_float(&self, precision: Precision) -> Self {
        match self {
            Scalar::Exact(q) => Scalar::Float(Float::from_rational(q, precision)),
            Scalar::Float(f) if f.precision() == precision => self.clone(),
            Scalar::Float(f) => Scalar::Float(f.with_precision(precision)),
        }
    }

    /// Converts to `precision` unless already exact-and-wanted-exact.
    pub fn promote(&self, precision: Option<Precision>) -> Self {
        match precision {
            Some(p) => self.to_float(p),
            None => self.clone(),
        }
    }

    /// The exact rational value. Lossless for both regimes.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Exact(q) => q.clone(),
            Scalar::Float(f) => f.to_rational(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => {
                if q.is_zero() {
                    return 0.0;
                }
                let l = log10_rational(q);
                if l > 308.5 {
                    return f64::INFINITY * self.signum() as f64;
                }
                if l < -330.0 {
                    return 0.0;
                }
                Float::from_rational(q, Precision::digits(20)).to_f64()
            }
            Scalar::Float(f) => f.to_f64(),
        }
    }

    /// `log10 |s|`, valid far outside the `f64` exponent range.
    pub fn log10_abs(&self) -> Result<f64> {
        if self.is_zero() {
            return Err(Error::Domain("log10 of zero".into()));
        }
        Ok(match self {
            Scalar::Exact(q) => log10_rational(q),
            Scalar::Float(f) => f.log10_abs().expect("nonzero float"),
        })
    }

    /// `log10 |s|`, with `-inf` for zero.
    pub fn log10_abs_or_neg_inf(&self) -> f64 {
        self.log10_abs().unwrap_or(f64::NEG_INFINITY)
    }

    /// Square root; always a float. Exact inputs are rounded first.
    pub fn sqrt(&self, precision: Precision) -> Result<Self> {
        if self.signum() < 0 {
            return Err(Error::Domain("square root of a negative number".into()));
        }
        let f = match self {
            Scalar::Exact(q) => Float::from_rational(q, precision),
            Scalar::Float(f) => f.clone(),
        };
        Ok(Scalar::Float(f.sqrt()))
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(&Scalar::one() / self)
    }

    /// True when `|self| < 10^-(precision-2)`, the near-collision threshold of
    /// the float regime. Exact values are negligible only when zero.
    pub fn is_negligible(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(f) => match f.log10_abs() {
                None => true,
                Some(l) => l < -(f.precision().get() as f64 - 2.0),
            },
        }
    }

    pub fn max_of<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Option<Scalar> {
        values.into_iter().fold(None, |best, v| match best {
            None => Some(v.clone()),
            Some(b) => Some(if v > &b { v.clone() } else { b }),
        })
    }
}

/// log10 |n| for a nonzero big integer from its bit length and top 64 bits.
pub fn log10_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        let (_, d) = n.to_u64_digits();
        return (d[0] as f64).log10();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift as usize;
    let (_, d) = top.to_u64_digits();
    (d[0] as f64).log10() + shift as f64 * LOG10_2
}

fn log10_rational(q: &BigRational) -> f64 {
    log10_bigint(q.numer()) - log10_bigint(q.denom())
}

fn promote_pair(a: &Float, q: &BigRational) -> Float {
    Float::from_rational(q, a.precision())
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $fop:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact($trait::$method(a, b)),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a.$fop(b)),
                    (Scalar::Float(a), Scalar::Exact(b)) => {
                        Scalar::Float(a.$fop(&promote_pair(a, b)))
                    }
                    (Scalar::Exact(a), Scalar::Float(b)) => {
                        Scalar::Float(promote_pair(b, a).$fop(b))
                    }
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }

        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                $trait::$method(&self, rhs)
            }
        }
    };
}

scalar_binop!(Add, add, add);
scalar_binop!(Sub, sub, sub);
scalar_binop!(Mul, mul, mul);
scalar_binop!(Div, div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q),
            Scalar::Float(f) => Scalar::Float(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            (Scalar::Float(a), Scalar::Float(b)) => a.cmp_value(b),
            (a, b) => a.to_rational().cmp(&b.to_rational()),
        })
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Exact(q)
    }
}

impl From<Float> for Scalar {
    fn from(f: Float) -> Self {
        Scalar::Float(f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Parses `7`, `-3/5`, `2^-10`, or a decimal such as `1.25e-3` (exactly).
impl std::str::FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Argument(format!("cannot parse number `{s}`"));
        if let Some((base, exp)) = s.split_once('^') {
            if base.trim() != "2" {
                return Err(bad());
            }
            let e: i64 = exp.trim().parse().map_err(|_| bad())?;
            return Ok(Scalar::pow2(e));
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Scalar::Exact(BigRational::new(n, d)));
        }
        if let Ok(n) = s.parse::<BigInt>() {
            return Ok(Scalar::from_bigint(n));
        }
        parse_decimal(s).ok_or_else(bad)
    }
}

fn parse_decimal(s: &str) -> Option<Scalar> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(digits);
    if scale >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(Scalar::Exact(if neg { -q } else { q }))
}

/// Arithmetic shared by real and complex scalars, so basis and polynomial
/// evaluation can be written once.
pub trait Number: Clone + Send + Sync + fmt::Debug {
    fn from_scalar(s: &Scalar) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
    /// Zero in the exact regime, or below the near-collision threshold.
    fn is_negligible(&self) -> bool;
    fn conj(&self) -> Self;
    /// `|self|`; exact when the regime allows, otherwise a float at
    /// `precision` (or the value's own precision if it has one).
    fn modulus(&self, precision: Precision) -> Scalar;
    fn precision(&self) -> Option<Precision>;
    fn promote(&self, precision: Option<Precision>) -> Self;
    /// The value as an exact real rational, when it is one.
    fn as_real_exact(&self) -> Option<BigRational>;
}

impl Number for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn is_negligible(&self) -> bool {
        Scalar::is_negligible(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn modulus(&self, _precision: Precision) -> Scalar {
        self.abs()
    }
    fn precision(&self) -> Option<Precision> {
        Scalar::precision(self)
    }
    fn promote(&self, precision: Option<Precision>) -> Self {
        Scalar::promote(self, precision)
    }
    fn as_real_exact(&self) -> Option<BigRational> {
        self.as_exact().cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log10_of_power_of_ten() {
        assert!((Scalar::from_int(1000).log10_abs().unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn log10_of_twenty_factorial() {
        let f: BigInt = (1..=20u32).map(BigInt::from).product();
        assert_eq!(f.to_string(), "2432902008176640000");
        let got = Scalar::from_bigint(f).log10_abs().unwrap();
        // 19 digits, leading mantissa 2.43290200817664
        let expected = 18.0 + 2.432_902_008_176_64f64.log10();
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 18.386).abs() < 1e-3);
    }

    #[test]
    fn log10_of_zero_is_a_domain_error() {
        assert!(matches!(Scalar::zero().log10_abs(), Err(Error::Domain(_))));
        let z = Scalar::Float(Float::zero(Precision::digits(30)));
        assert!(z.log10_abs().is_err());
    }

    #[test]
    fn log10_beyond_f64_range() {
        let big = Scalar::pow2(5000);
        assert!((big.log10_abs().unwrap() - 5000.0 * LOG10_2).abs() < 1e-9);
        let tiny = Scalar::pow2(-5000).to_float(Precision::digits(30));
        assert!((tiny.log10_abs().unwrap() + 5000.0 * LOG10_2).abs() < 1e-9);
    }

    #[test]
    fn mixed_regime_promotes_and_compares_exactly() {
        let p = Precision::digits(30);
        let third = Scalar::ratio(1, 3);
        let f = third.to_float(p);
        let sum = &f + &Scalar::one();
        assert_eq!(sum.precision(), Some(p));
        assert!(f != third);
        assert!((f.to_f64() - 1.0 / 3.0).abs() < 1e-17);
        assert!(Scalar::ratio(1, 4).to_float(p) == Scalar::ratio(1, 4));
    }

    #[test]
    fn parse_forms() {
        assert_eq!("7".parse::<Scalar>().unwrap(), Scalar::from_int(7));
        assert_eq!("-3/5".parse::<Scalar>().unwrap(), Scalar::ratio(-3, 5));
        assert_eq!("2^-10".parse::<Scalar>().unwrap(), Scalar::ratio(1, 1024));
        assert_eq!("1.25e-3".parse::<Scalar>().unwrap(), Scalar::ratio(1, 800));
        assert_eq!("-.5".parse::<Scalar>().unwrap(), Scalar::ratio(-1, 2));
        assert!("abc".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn powi_matches_repeated_product() {
        let x = Scalar::ratio(-2, 3);
        assert_eq!(x.powi(5), Scalar::ratio(-32, 243));
        assert_eq!(x.powi(0), Scalar::one());
    }
}
