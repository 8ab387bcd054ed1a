//! Polynomials in the space-time coordinates `(t, x, y, z)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{GaussianRational, Rational, Scalar};

/// Exponents of `(t, x, y, z)`.
pub type Exponent = [u8; 4];

/// Sparse polynomial with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial<C> {
    terms: BTreeMap<Exponent, C>,
}

/// Polynomial with Gaussian-rational coefficients: potentials, field
/// strengths and test functions.
pub type CoordPolynomial = Polynomial<GaussianRational>;

pub fn total_degree(e: &Exponent) -> u32 {
    e.iter().map(|&k| k as u32).sum()
}

/// All exponents of total degree `<= d`, graded then lexicographic.
pub fn monomials_up_to(d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for deg in 0..=d {
        for a in 0..=deg {
            for b in 0..=deg - a {
                for c in 0..=deg - a - b {
                    let e = deg - a - b - c;
                    out.push([a as u8, b as u8, c as u8, e as u8]);
                }
            }
        }
    }
    out
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn monomial(e: Exponent, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// The coordinate `x^axis` itself.
    pub fn coordinate(axis: usize) -> Self {
        let mut e = [0u8; 4];
        e[axis] = 1;
        Self::monomial(e, C::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(total_degree).max()
    }

    /// Largest power of the given coordinate.
    pub fn degree_in(&self, axis: usize) -> u32 {
        self.terms.keys().map(|e| e[axis] as u32).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                let sum = slot.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v.clone() * c.clone());
        }
        out
    }

    /// `∂/∂x^axis` (lower-index derivative).
    pub fn partial(&self, axis: usize) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            let k = e[axis];
            if k == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[axis] -= 1;
            out.add_term(e2, v.clone() * C::from_i64(k as i64));
        }
        out
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, f(v));
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }

    pub fn eval(&self, point: &[C; 4]) -> C {
        let mut acc = C::zero();
        for (e, v) in &self.terms {
            let mut term = v.clone();
            for (axis, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term * point[axis].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64; 4]) -> Complex<f64> {
        self.terms
            .iter()
            .map(|(e, v)| {
                let mono: f64 = e
                    .iter()
                    .zip(point)
                    .map(|(&k, &x)| x.powi(k as i32))
                    .product();
                v.to_c64() * mono
            })
            .sum()
    }

    /// Substitutes `t = 0` and returns the spatial polynomial.
    pub fn at_time_zero(&self) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            if e[0] == 0 {
                out.add_term(*e, v.clone());
            }
        }
        out
    }

    /// Polynomial independent of all coordinates.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }
}

impl CoordPolynomial {
    /// `constant + Σ_μ linear[μ] x^μ`.
    pub fn affine(constant: GaussianRational, linear: [GaussianRational; 4]) -> Self {
        let mut p = Self::constant(constant);
        for (axis, c) in linear.into_iter().enumerate() {
            p = p + Self::coordinate(axis).scale(&c);
        }
        p
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(Complex::new(r, Rational::zero()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(GaussianRational::one());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl<'a, C: Scalar> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(*e, v.clone());
        }
        out
    }
}

impl<C: Scalar> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(mut self, rhs: Polynomial<C>) -> Polynomial<C> {
        for (e, v) in rhs.terms {
            self.add_term(e, v);
        }
        self
    }
}

impl<C: Scalar> AddAssign<&Polynomial<C>> for Polynomial<C> {
    fn add_assign(&mut self, rhs: &Polynomial<C>) {
        for (e, v) in &rhs.terms {
            self.add_term(*e, v.clone());
        }
    }
}

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            terms: self.terms.into_iter().map(|(e, v)| (e, -v)).collect(),
        }
    }
}

impl<'a, C: Scalar> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(*e, -v.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self - &rhs
    }
}

impl<'a, C: Scalar> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (e1, v1) in &self.terms {
            for (e2, v2) in &rhs.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, v1.clone() * v2.clone());
            }
        }
        out
    }
}

impl<C: Scalar> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial<crate::exactmath::SurdNumber> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.terms, |c| c.to_string())
    }
}

impl fmt::Debug for CoordPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.terms, crate::scalar::fmt_gaussian)
    }
}

impl fmt::Display for CoordPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.terms, crate::scalar::fmt_gaussian)
    }
}

impl fmt::Debug for Polynomial<crate::exactmath::SurdNumber> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.terms, |c| c.to_string())
    }
}

fn write_poly<C>(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<Exponent, C>,
    show: impl Fn(&C) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    const NAMES: [&str; 4] = ["t", "x", "y", "z"];
    let parts: Vec<String> = terms
        .iter()
        .map(|(e, c)| {
            let mut s = format!("({})", show(c));
            for (axis, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => s.push_str(NAMES[axis]),
                    _ => s.push_str(&format!("{}^{}", NAMES[axis], k)),
                }
            }
            s
        })
        .collect();
    write!(f, "{}", parts.join(" + "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gi, q};

    fn x() -> CoordPolynomial {
        CoordPolynomial::coordinate(1)
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert!(CoordPolynomial::constant(gi(3, 1)).partial(1).is_zero());
    }

    #[test]
    fn monomial_rule() {
        let p = x().pow(3);
        assert_eq!(p.partial(1), x().pow(2).scale(&gi(3, 0)));
        assert_eq!(x().partial(1), CoordPolynomial::constant(gi(1, 0)));
    }

    #[test]
    fn canonical_form_drops_cancelled_terms() {
        let p = &x() - &x();
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn monomial_count() {
        // C(d+4, 4)
        assert_eq!(monomials_up_to(3).len(), 35);
        assert_eq!(monomials_up_to(4).len(), 70);
    }

    #[test]
    fn evaluation() {
        let p = &x().pow(2) + &CoordPolynomial::coordinate(0).scale(&gi(0, 1));
        let v = p.eval(&[gi(2, 0), gi(3, 0), gi(0, 0), gi(0, 0)]);
        assert_eq!(v, gi(9, 2));
        let r = CoordPolynomial::from_rational(q(1, 2)).eval_f64(&[0.0; 4]);
        assert_eq!(r.re, 0.5);
    }
}
