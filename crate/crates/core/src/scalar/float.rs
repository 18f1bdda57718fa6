use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{One, Zero};

const RM: RoundingMode = RoundingMode::ToEven;
const LOG10_2: f64 = std::f64::consts::LOG10_2;

static DEFAULT_DIGITS: AtomicU32 = AtomicU32::new(60);

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

/// Working precision in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const fn digits(digits: u32) -> Self {
        Precision(if digits == 0 { 1 } else { digits })
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Binary precision handed to the float backend, rounded up to whole words.
    pub fn bits(self) -> usize {
        let raw = (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as usize;
        raw.div_ceil(64).max(1) * 64
    }

    pub fn doubled(self) -> Self {
        Precision(self.0.saturating_mul(2))
    }
}

impl Default for Precision {
    fn default() -> Self {
        default_precision()
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} digits", self.0)
    }
}

/// The process-wide default used when a caller does not pass a precision.
pub fn default_precision() -> Precision {
    Precision(DEFAULT_DIGITS.load(AtomicOrdering::Relaxed))
}

pub fn set_default_precision(p: Precision) {
    DEFAULT_DIGITS.store(p.0, AtomicOrdering::Relaxed);
}

/// Binary floating-point number carrying its decimal working precision.
#[derive(Clone, Debug)]
pub struct Float {
    value: BigFloat,
    precision: Precision,
}

impl Float {
    fn wrap(value: BigFloat, precision: Precision) -> Self {
        debug_assert!(!value.is_nan(), "big-float operation produced NaN");
        Float { value, precision }
    }

    pub fn zero(precision: Precision) -> Self {
        Self::wrap(BigFloat::new(precision.bits()), precision)
    }

    pub fn from_f64(x: f64, precision: Precision) -> Self {
        Self::wrap(BigFloat::from_f64(x, precision.bits()), precision)
    }

    pub fn from_bigint(n: &BigInt, precision: Precision) -> Self {
        let mut f = bigint_to_bigfloat(n);
        if !f.is_zero() {
            f.set_precision(precision.bits(), RM)
                .expect("valid big-float precision");
        }
        Self::wrap(f, precision)
    }

    /// Correctly rounded conversion of an exact rational.
    pub fn from_rational(q: &BigRational, precision: Precision) -> Self {
        if q.denom().is_one() {
            return Self::from_bigint(q.numer(), precision);
        }
        let n = bigint_to_bigfloat(q.numer());
        let d = bigint_to_bigfloat(q.denom());
        Self::wrap(n.div(&d, precision.bits(), RM), precision)
    }

    pub fn pi(precision: Precision) -> Self {
        let v = CONSTS.with(|cc| cc.borrow_mut().pi(precision.bits(), RM));
        Self::wrap(v, precision)
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Rounds (or widens) to another precision.
    pub fn with_precision(&self, precision: Precision) -> Self {
        let mut v = self.value.clone();
        if !v.is_zero() {
            v.set_precision(precision.bits(), RM)
                .expect("valid big-float precision");
        }
        Self::wrap(v, precision)
    }

    fn joint(&self, other: &Float) -> Precision {
        self.precision.max(other.precision)
    }

    pub fn add(&self, other: &Float) -> Float {
        let p = self.joint(other);
        Self::wrap(self.value.add(&other.value, p.bits(), RM), p)
    }

    pub fn sub(&self, other: &Float) -> Float {
        let p = self.joint(other);
        Self::wrap(self.value.sub(&other.value, p.bits(), RM), p)
    }

    pub fn mul(&self, other: &Float) -> Float {
        let p = self.joint(other);
        Self::wrap(self.value.mul(&other.value, p.bits(), RM), p)
    }

    pub fn div(&self, other: &Float) -> Float {
        assert!(!other.is_zero(), "big-float division by zero");
        let p = self.joint(other);
        Self::wrap(self.value.div(&other.value, p.bits(), RM), p)
    }

    pub fn neg(&self) -> Float {
        Self::wrap(self.value.neg(), self.precision)
    }

    pub fn abs(&self) -> Float {
        Self::wrap(self.value.abs(), self.precision)
    }

    pub fn sqrt(&self) -> Float {
        assert!(!self.is_negative(), "square root of a negative big-float");
        if self.is_zero() {
            return self.clone();
        }
        Self::wrap(self.value.sqrt(self.precision.bits(), RM), self.precision)
    }

    pub fn cos(&self) -> Float {
        let v = CONSTS.with(|cc| self.value.cos(self.precision.bits(), RM, &mut cc.borrow_mut()));
        Self::wrap(v, self.precision)
    }

    pub fn sin(&self) -> Float {
        let v = CONSTS.with(|cc| self.value.sin(self.precision.bits(), RM, &mut cc.borrow_mut()));
        Self::wrap(v, self.precision)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.value.is_zero() && self.value.is_negative()
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.value.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Exact value as a dyadic rational.
    pub fn to_rational(&self) -> BigRational {
        let Some((words, _, sign, exp, _)) = self.value.as_raw_parts() else {
            return BigRational::zero();
        };
        if self.value.is_zero() {
            return BigRational::zero();
        }
        let mut digits = Vec::with_capacity(words.len() * 2);
        for w in words {
            digits.push(*w as u32);
            digits.push((*w >> 32) as u32);
        }
        let mag = BigInt::from_biguint(IntSign::Plus, BigUint::new(digits));
        let mag = if sign == Sign::Neg { -mag } else { mag };
        let shift = exp as i64 - (words.len() * Word::BITS as usize) as i64;
        if shift >= 0 {
            BigRational::from_integer(mag << shift as usize)
        } else {
            BigRational::new(mag, BigInt::one() << (-shift) as usize)
        }
    }

    /// log10 of the magnitude from exponent and leading mantissa word; never overflows.
    pub fn log10_abs(&self) -> Option<f64> {
        if self.is_zero() {
            return None;
        }
        let (words, _, _, exp, _) = self.value.as_raw_parts()?;
        let top = *words.last()?;
        let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
        let lead = top as f64 + next as f64 / 2f64.powi(64);
        Some(lead.log10() + (exp as f64 - 64.0) * LOG10_2)
    }

    pub fn to_f64(&self) -> f64 {
        match self.log10_abs() {
            None => 0.0,
            Some(l) if l > 308.5 => f64::INFINITY * self.signum() as f64,
            Some(l) if l < -330.0 => 0.0,
            Some(_) => {
                let (words, _, _, exp, _) = self.value.as_raw_parts().expect("finite value");
                let top = *words.last().expect("nonempty mantissa");
                let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
                let mant = top as f64 / 2f64.powi(64) + next as f64 / 2f64.powi(128);
                ldexp(mant, exp as i64) * self.signum() as f64
            }
        }
    }

    pub(crate) fn cmp_value(&self, other: &Float) -> Ordering {
        match self.value.cmp(&other.value) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

fn ldexp(m: f64, e: i64) -> f64 {
    let mut x = m;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

fn bigint_to_bigfloat(n: &BigInt) -> BigFloat {
    let (sign, words) = n.to_u64_digits();
    if words.is_empty() {
        return BigFloat::new(64);
    }
    let s = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
    let words: Vec<Word> = words.into_iter().map(|w| w as Word).collect();
    let bits = (words.len() * Word::BITS as usize) as i32;
    BigFloat::from_words(&words, s, bits)
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
