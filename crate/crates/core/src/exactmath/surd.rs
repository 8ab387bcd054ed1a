//! Exact numbers in `Q(i)(√2, √3, √5, ...)`.
//!
//! An element is stored as `Σ c_s √s` over distinct square-free radicands
//! `s ≥ 1` with Gaussian-rational coefficients. Square roots of distinct
//! square-free integers are linearly independent over `Q(i)`, so this
//! representation is canonical and `is_zero` is an exact test.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{fmt_gaussian, gr, FieldScalar, GaussianRational, Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SurdNumber {
    terms: BTreeMap<u64, GaussianRational>,
}

/// Splits a positive integer into `k² · s` with `s` square-free.
fn square_free_split(mut n: i128) -> (i128, i128) {
    assert!(n > 0, "square_free_split needs a positive integer");
    let mut k = 1i128;
    let mut s = 1i128;
    let mut p = 2i128;
    while p * p <= n {
        let mut e = 0u32;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    s *= n;
    (k, s)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl SurdNumber {
    pub fn from_gaussian(z: GaussianRational) -> Self {
        let mut out = Self::default();
        if !z.is_zero() {
            out.terms.insert(1, z);
        }
        out
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_gaussian(gr(r))
    }

    /// Positive square root of a nonnegative rational.
    pub fn sqrt_of(r: Rational) -> Self {
        assert!(!r.is_negative(), "sqrt of negative rational {r}");
        if r.is_zero() {
            return Self::zero();
        }
        // √(p/q) = √(pq)/q
        let pq = r.numer() * r.denom();
        let (k, s) = square_free_split(pq);
        let coeff = Rational::new(k, *r.denom());
        let mut out = Self::default();
        out.terms.insert(s as u64, gr(coeff));
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &GaussianRational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    /// The Gaussian-rational value, if no radical survives.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&1).copied(),
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(s, v)| (*s, *v * *c)).collect(),
        }
    }

    pub fn to_f64_complex(&self) -> Complex<f64> {
        self.terms
            .iter()
            .map(|(s, c)| c.to_c64() * (*s as f64).sqrt())
            .sum()
    }

    /// Sign of a real element; `None` for non-real input.
    pub fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        if self.is_zero() {
            return Some(Ordering::Equal);
        }
        // Float evaluation decides unless the terms nearly cancel.
        let v = self.to_f64_complex().re;
        if v.abs() > 1e-9 * self.magnitude_bound() {
            return Some(if v > 0.0 { Ordering::Greater } else { Ordering::Less });
        }
        // Near-cancellation: split as a + b√p and compare a² with p·b².
        let p = self.primes().into_iter().max()?;
        let (a, b) = self.split_on(p);
        let sa = a.real_sign()?;
        let sb = b.real_sign()?;
        if sa == sb || sb == Ordering::Equal {
            return Some(if sa == Ordering::Equal { sb } else { sa });
        }
        if sa == Ordering::Equal {
            return Some(sb);
        }
        // a and b√p have opposite signs: compare a² with p b².
        let a2 = a.clone() * a;
        let pb2 = (b.clone() * b).scale(&gr(Rational::from_integer(p as i128)));
        match (a2 - pb2).real_sign()? {
            Ordering::Greater => Some(sa),
            Ordering::Less => Some(sb),
            Ordering::Equal => Some(Ordering::Equal),
        }
    }

    fn magnitude_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|(s, c)| c.to_c64().norm() * (*s as f64).sqrt())
            .sum::<f64>()
            .max(f64::MIN_POSITIVE)
    }

    fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.terms.keys().flat_map(|s| prime_factors(*s)).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Writes `self = a + b √p` with `a`, `b` free of `√p`.
    fn split_on(&self, p: u64) -> (Self, Self) {
        let mut a = Self::default();
        let mut b = Self::default();
        for (s, c) in &self.terms {
            if s % p == 0 {
                b.terms.insert(s / p, *c);
            } else {
                a.terms.insert(*s, *c);
            }
        }
        (a, b)
    }

    /// Galois conjugate flipping the sign of `√p`.
    fn flip(&self, p: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (*s, if s % p == 0 { -*c } else { *c }))
                .collect(),
        }
    }

    fn insert_add(&mut self, s: u64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s).or_insert_with(GaussianRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }
}

impl Zero for SurdNumber {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SurdNumber {
    fn one() -> Self {
        Self::from_gaussian(GaussianRational::one())
    }
}

impl Add for SurdNumber {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (s, c) in rhs.terms {
            self.insert_add(s, c);
        }
        self
    }
}

impl Sub for SurdNumber {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for SurdNumber {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(s, c)| (s, -c)).collect(),
        }
    }
}

impl Mul for SurdNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::default();
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                let g = s.gcd(t);
                let radicand = (s / g) * (t / g);
                let c = *a * *b * gr(Rational::from_integer(g as i128));
                out.insert_add(radicand, c);
            }
        }
        out
    }
}

impl Div for SurdNumber {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by exact zero")
    }
}

impl Scalar for SurdNumber {
    fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(s, c)| (*s, c.conj())).collect(),
        }
    }
    fn from_gaussian(z: &GaussianRational) -> Self {
        SurdNumber::from_gaussian(*z)
    }
    fn to_c64(&self) -> Complex<f64> {
        self.to_f64_complex()
    }
}

impl FieldScalar for SurdNumber {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut acc = Self::one();
        let mut x = self.clone();
        for p in self.primes() {
            let c = x.flip(p);
            x = x * c.clone();
            acc = acc * c;
        }
        let base = x.as_gaussian().expect("conjugate product is rational");
        Some(acc.scale(&(GaussianRational::one() / base)))
    }
}

impl From<GaussianRational> for SurdNumber {
    fn from(z: GaussianRational) -> Self {
        Self::from_gaussian(z)
    }
}

impl PartialOrd for SurdNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural total order, used only for canonical term ordering.
impl Ord for SurdNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |(s, c): (&u64, &GaussianRational)| (*s, c.re, c.im);
        self.terms.iter().map(key).cmp(other.terms.iter().map(key))
    }
}

impl fmt::Debug for SurdNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SurdNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                if *s == 1 {
                    format!("({})", fmt_gaussian(c))
                } else {
                    format!("({})√{}", fmt_gaussian(c), s)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gi, q};

    #[test]
    fn square_roots_canonicalize() {
        let a = SurdNumber::sqrt_of(q(8, 1));
        let b = SurdNumber::sqrt_of(q(2, 1));
        assert_eq!(a, b.scale(&gi(2, 0)));
        assert_eq!(SurdNumber::sqrt_of(q(9, 4)).as_gaussian(), Some(gr(q(3, 2))));
        assert_eq!(SurdNumber::sqrt_of(q(1, 2)), SurdNumber::sqrt_of(q(2, 1)).scale(&gr(q(1, 2))));
    }

    #[test]
    fn products_of_radicals_reduce() {
        let s6 = SurdNumber::sqrt_of(q(2, 1)) * SurdNumber::sqrt_of(q(3, 1));
        assert_eq!(s6, SurdNumber::sqrt_of(q(6, 1)));
        let e = SurdNumber::sqrt_of(q(5, 1));
        assert_eq!(e.clone() * e, SurdNumber::from_rational(q(5, 1)));
    }

    #[test]
    fn inverse_over_two_radicals() {
        let x = SurdNumber::one() + SurdNumber::sqrt_of(q(2, 1)) + SurdNumber::sqrt_of(q(3, 1)).scale(&gi(0, 1));
        let y = x.inverse().unwrap();
        assert_eq!(x * y, SurdNumber::one());
    }

    #[test]
    fn exact_sign() {
        // √2 + √3 ≈ 3.146 sits just below √10 ≈ 3.162.
        let v = SurdNumber::sqrt_of(q(2, 1)) + SurdNumber::sqrt_of(q(3, 1)) - SurdNumber::sqrt_of(q(10, 1));
        assert_eq!(v.real_sign(), Some(Ordering::Less));
        let w = SurdNumber::sqrt_of(q(2, 1)) - SurdNumber::from_rational(q(1, 1));
        assert_eq!(w.real_sign(), Some(Ordering::Greater));
    }
}
