//! Scalar traits shared by the exact and floating-point halves of the crate.
//!
//! Matrices, polynomials and operators are written once against [`Scalar`];
//! the exact pipeline instantiates them with [`GaussianRational`] (or
//! [`SurdNumber`](crate::exactmath::SurdNumber) once energies appear), the
//! spectral solver with `Complex<f64>`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, One, Zero};

/// Fixed-width exact rationals. Overflow panics (see workspace profiles).
pub type Rational = Ratio<i128>;

/// `a + b i` with rational `a`, `b`.
pub type GaussianRational = Complex<Rational>;

/// Ring operations plus complex conjugation.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn conj(&self) -> Self;

    /// Embeds an exact Gaussian rational. Lossy for floating-point scalars.
    fn from_gaussian(z: &GaussianRational) -> Self;

    fn to_c64(&self) -> Complex<f64>;

    fn from_i64(n: i64) -> Self {
        Self::from_gaussian(&gi(n, 0))
    }
}

/// Scalars with a multiplicative inverse for every nonzero element.
pub trait FieldScalar: Scalar + Div<Output = Self> {
    fn inverse(&self) -> Option<Self>;
}

/// Marker for the IEEE types usable as the real part of a floating scalar.
pub trait RealFloat: Float + Debug + Send + Sync + 'static {}
impl RealFloat for f32 {}
impl RealFloat for f64 {}

impl Scalar for GaussianRational {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_gaussian(z: &GaussianRational) -> Self {
        *z
    }
    fn to_c64(&self) -> Complex<f64> {
        Complex::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl FieldScalar for GaussianRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(GaussianRational::one() / *self)
        }
    }
}

impl<T: RealFloat> Scalar for Complex<T> {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_gaussian(z: &GaussianRational) -> Self {
        Complex::new(
            T::from(rat_to_f64(&z.re)).unwrap(),
            T::from(rat_to_f64(&z.im)).unwrap(),
        )
    }
    fn to_c64(&self) -> Complex<f64> {
        Complex::new(self.re.to_f64().unwrap(), self.im.to_f64().unwrap())
    }
}

impl<T: RealFloat> FieldScalar for Complex<T> {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Integer rational `n / d`.
pub fn q(n: i128, d: i128) -> Rational {
    Ratio::new(n, d)
}

/// Gaussian integer `re + im i`.
pub fn gi(re: i64, im: i64) -> GaussianRational {
    Complex::new(Ratio::from_integer(re as i128), Ratio::from_integer(im as i128))
}

pub fn gr(r: Rational) -> GaussianRational {
    Complex::new(r, Rational::zero())
}

/// The imaginary unit.
pub fn imag() -> GaussianRational {
    gi(0, 1)
}

/// Renders `a`, `a i`, or `a+b i` with reduced fractions.
pub fn fmt_gaussian(z: &GaussianRational) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => z.re.to_string(),
        (true, false) => format!("{}i", z.im),
        (false, false) => {
            if z.im < Rational::zero() {
                format!("{}-{}i", z.re, -z.im)
            } else {
                format!("{}+{}i", z.re, z.im)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_inverse_is_exact() {
        let z = Complex::new(q(3, 2), q(-1, 5));
        let inv = z.inverse().unwrap();
        assert_eq!(z * inv, GaussianRational::one());
        assert!(GaussianRational::zero().inverse().is_none());
    }

    #[test]
    fn float_embedding_round_trips_small_values() {
        let z = Complex::new(q(1, 4), q(-3, 8));
        let f: Complex<f64> = Scalar::from_gaussian(&z);
        assert_eq!(f, Complex::new(0.25, -0.375));
        let g: Complex<f32> = Scalar::from_gaussian(&z);
        assert_eq!(g.to_c64(), Complex::new(0.25, -0.375));
    }

    #[test]
    fn formatting() {
        assert_eq!(fmt_gaussian(&gi(0, 0)), "0");
        assert_eq!(fmt_gaussian(&gi(0, -1)), "-1i");
        assert_eq!(fmt_gaussian(&Complex::new(q(1, 2), q(-1, 3))), "1/2-1/3i");
    }
}

/// Serde adapter writing a [`Rational`] as the pair `[num, den]`.
pub mod rational_pair {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        let num = i64::try_from(*r.numer()).map_err(serde::ser::Error::custom)?;
        let den = i64::try_from(*r.denom()).map_err(serde::ser::Error::custom)?;
        [num, den].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let [num, den] = <[i64; 2]>::deserialize(d)?;
        if den == 0 {
            return Err(D::Error::custom("rational with zero denominator"));
        }
        Ok(Rational::new(num as i128, den as i128))
    }
}
