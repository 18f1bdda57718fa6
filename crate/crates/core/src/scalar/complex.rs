use std::fmt;

use num_rational::BigRational;

use super::{Number, Precision, Scalar};

/// A complex number whose parts share one regime.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        ComplexScalar { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        ComplexScalar {
            re,
            im: Scalar::zero(),
        }
    }

    pub fn from_f64(re: f64, im: f64, precision: Precision) -> Self {
        ComplexScalar {
            re: Scalar::float_from_f64(re, precision),
            im: Scalar::float_from_f64(im, precision),
        }
    }

    pub fn norm_sqr(&self) -> Scalar {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Number for ComplexScalar {
    fn from_scalar(s: &Scalar) -> Self {
        ComplexScalar::real(s.clone())
    }

    fn add(&self, o: &Self) -> Self {
        ComplexScalar::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        ComplexScalar::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        if o.im.is_zero() {
            return self.scale(&o.re);
        }
        if self.im.is_zero() {
            return o.scale(&self.re);
        }
        ComplexScalar::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }

    fn div(&self, o: &Self) -> Self {
        if o.im.is_zero() {
            return ComplexScalar::new(&self.re / &o.re, &self.im / &o.re);
        }
        let d = o.norm_sqr();
        let num = self.mul(&o.conj());
        ComplexScalar::new(&num.re / &d, &num.im / &d)
    }

    fn neg(&self) -> Self {
        ComplexScalar::new(-&self.re, -&self.im)
    }

    fn scale(&self, s: &Scalar) -> Self {
        ComplexScalar::new(&self.re * s, &self.im * s)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_negligible(&self) -> bool {
        self.re.is_negligible() && self.im.is_negligible()
    }

    fn conj(&self) -> Self {
        ComplexScalar::new(self.re.clone(), -&self.im)
    }

    fn modulus(&self, precision: Precision) -> Scalar {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        let p = Number::precision(self).unwrap_or(precision);
        self.norm_sqr()
            .sqrt(p)
            .expect("norm is nonnegative")
    }

    fn precision(&self) -> Option<Precision> {
        match (self.re.precision(), self.im.precision()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    fn promote(&self, precision: Option<Precision>) -> Self {
        ComplexScalar::new(self.re.promote(precision), self.im.promote(precision))
    }

    fn as_real_exact(&self) -> Option<BigRational> {
        if self.im.is_exact() && self.im.is_zero() {
            self.re.as_exact().cloned()
        } else {
            None
        }
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}
