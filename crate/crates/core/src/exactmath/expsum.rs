//! Sums of polynomial × plane-wave terms with exact symbolic energies.
//!
//! A term is `P(t,x,y,z) · exp(i(k·x − ω t))` with an integer lattice
//! momentum `k` (in units of `2π/L`, which is the unit of momentum and mass
//! throughout) and a real frequency `ω` in the surd field. Energies enter
//! as `√(m² + |k|²)` and reduce automatically through `E² → m² + |k|²`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::poly::{CoordPolynomial, Polynomial};
use super::surd::SurdNumber;
use crate::error::{KdpError, Result};
use crate::matrix::Matrix;
use crate::scalar::{gi, GaussianRational, Rational, Scalar};

/// Polynomial amplitude with surd coefficients.
pub type SurdPolynomial = Polynomial<SurdNumber>;

/// Exponent of the plane wave: `exp(i(k·x − ω t))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Phase {
    pub momentum: [i64; 3],
    pub frequency: SurdNumber,
}

impl Phase {
    pub fn zero() -> Self {
        Self { momentum: [0; 3], frequency: SurdNumber::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.momentum == [0; 3] && self.frequency.is_zero()
    }

    fn add(&self, other: &Phase) -> Phase {
        Phase {
            momentum: [
                self.momentum[0] + other.momentum[0],
                self.momentum[1] + other.momentum[1],
                self.momentum[2] + other.momentum[2],
            ],
            frequency: self.frequency.clone() + other.frequency.clone(),
        }
    }

    fn negate(&self) -> Phase {
        Phase {
            momentum: self.momentum.map(|k| -k),
            frequency: -self.frequency.clone(),
        }
    }

    /// `∂_μ` of the exponent: `(−iω, ik_1, ik_2, ik_3)`.
    fn log_derivative(&self, axis: usize) -> SurdNumber {
        let i = SurdNumber::from_gaussian(gi(0, 1));
        if axis == 0 {
            -(i * self.frequency.clone())
        } else {
            i.scale(&gi(self.momentum[axis - 1], 0))
        }
    }
}

/// Symbolic energy `E` with `E² = m² + |p|²`.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergySymbol {
    pub label: String,
    pub squared: Rational,
}

impl EnergySymbol {
    pub fn new(label: impl Into<String>, squared: Rational) -> Self {
        Self { label: label.into(), squared }
    }

    /// Energy of a particle of mass `m` at lattice momentum `k`.
    pub fn on_shell(mass: Rational, momentum: [i64; 3]) -> Self {
        let k2: i64 = momentum.iter().map(|k| k * k).sum();
        Self::new(format!("E{:?}", momentum), mass * mass + Rational::from_integer(k2 as i128))
    }

    pub fn value(&self) -> SurdNumber {
        SurdNumber::sqrt_of(self.squared)
    }

    /// Reduces `Σ_k c_k E^k` to the form `a + b E`, returned as an exact surd.
    pub fn reduce(&self, coeffs: &[GaussianRational]) -> SurdNumber {
        let e = self.value();
        let mut power = SurdNumber::one();
        let mut acc = SurdNumber::zero();
        for c in coeffs {
            acc = acc + power.scale(c);
            power = power * e.clone();
        }
        acc
    }
}

/// Scalar exponential sum; a wave function is a `Vec<ExpSum>`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpSum {
    terms: BTreeMap<Phase, SurdPolynomial>,
}

pub type Wavefunction = Vec<ExpSum>;

impl ExpSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn plane_wave(momentum: [i64; 3], frequency: SurdNumber, amplitude: SurdNumber) -> Self {
        Self::term(Phase { momentum, frequency }, SurdPolynomial::constant(amplitude))
    }

    pub fn term(phase: Phase, amplitude: SurdPolynomial) -> Self {
        let mut out = Self::zero();
        out.add_term(phase, amplitude);
        out
    }

    pub fn from_poly(p: &CoordPolynomial) -> Self {
        Self::term(Phase::zero(), p.map_coeffs(|c| SurdNumber::from_gaussian(*c)))
    }

    pub fn constant(c: SurdNumber) -> Self {
        Self::term(Phase::zero(), SurdPolynomial::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Phase, &SurdPolynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, phase: Phase, amplitude: SurdPolynomial) {
        if amplitude.is_zero() {
            return;
        }
        match self.terms.get_mut(&phase) {
            Some(slot) => {
                *slot += &amplitude;
                if slot.is_zero() {
                    self.terms.remove(&phase);
                }
            }
            None => {
                self.terms.insert(phase, amplitude);
            }
        }
    }

    pub fn add(&self, other: &ExpSum) -> ExpSum {
        let mut out = self.clone();
        for (p, a) in &other.terms {
            out.add_term(p.clone(), a.clone());
        }
        out
    }

    pub fn sub(&self, other: &ExpSum) -> ExpSum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExpSum {
        ExpSum {
            terms: self.terms.iter().map(|(p, a)| (p.clone(), -a.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &SurdNumber) -> ExpSum {
        let mut out = ExpSum::zero();
        for (p, a) in &self.terms {
            out.add_term(p.clone(), a.scale(c));
        }
        out
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> ExpSum {
        self.scale(&SurdNumber::from_gaussian(*c))
    }

    pub fn mul(&self, other: &ExpSum) -> ExpSum {
        let mut out = ExpSum::zero();
        for (p1, a1) in &self.terms {
            for (p2, a2) in &other.terms {
                out.add_term(p1.add(p2), a1 * a2);
            }
        }
        out
    }

    pub fn mul_poly(&self, p: &CoordPolynomial) -> ExpSum {
        if p.is_zero() {
            return ExpSum::zero();
        }
        let lifted = p.map_coeffs(|c| SurdNumber::from_gaussian(*c));
        let mut out = ExpSum::zero();
        for (ph, a) in &self.terms {
            out.add_term(ph.clone(), a * &lifted);
        }
        out
    }

    /// Exact `∂/∂x^axis` by the product rule.
    pub fn partial(&self, axis: usize) -> ExpSum {
        let mut out = ExpSum::zero();
        for (ph, a) in &self.terms {
            let mut d = a.partial(axis);
            let log = ph.log_derivative(axis);
            if !log.is_zero() {
                d = d + a.scale(&log);
            }
            out.add_term(ph.clone(), d);
        }
        out
    }

    /// Complex conjugate: amplitudes conjugated, phase negated.
    pub fn conj(&self) -> ExpSum {
        ExpSum {
            terms: self
                .terms
                .iter()
                .map(|(p, a)| (p.negate(), a.conj()))
                .collect(),
        }
    }

    pub fn eval_f64(&self, point: &[f64; 4]) -> Complex<f64> {
        self.terms
            .iter()
            .map(|(ph, a)| {
                let kx: f64 = (0..3).map(|i| ph.momentum[i] as f64 * point[i + 1]).sum();
                let w = ph.frequency.to_f64_complex().re;
                let phase = Complex::from_polar(1.0, kx - w * point[0]);
                a.eval_f64(point) * phase
            })
            .sum()
    }

    /// The amplitude if this is a single zero-phase term.
    pub fn as_polynomial(&self) -> Option<SurdPolynomial> {
        match self.terms.len() {
            0 => Some(SurdPolynomial::zero()),
            1 => self.terms.get(&Phase::zero()).cloned(),
            _ => None,
        }
    }
}

impl fmt::Debug for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, a)| {
                if p.is_zero() {
                    format!("[{a}]")
                } else {
                    format!("[{a}]·exp(i({:?}·x − ({})t))", p.momentum, p.frequency)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `f† M g` as a scalar exponential sum.
pub fn pointwise_sesquilinear(
    f: &[ExpSum],
    m: &Matrix<GaussianRational>,
    g: &[ExpSum],
) -> Result<ExpSum> {
    if m.rows() != f.len() {
        return Err(KdpError::DimensionMismatch { expected: m.rows(), found: f.len() });
    }
    if m.cols() != g.len() {
        return Err(KdpError::DimensionMismatch { expected: m.cols(), found: g.len() });
    }
    let fc: Vec<ExpSum> = f.iter().map(ExpSum::conj).collect();
    let mut out = ExpSum::zero();
    for (a, fa) in fc.iter().enumerate() {
        if fa.is_zero() {
            continue;
        }
        let mut mg = ExpSum::zero();
        for (b, gb) in g.iter().enumerate() {
            let c = m.get(a, b);
            if !c.is_zero() && !gb.is_zero() {
                mg = mg.add(&gb.scale_gaussian(c));
            }
        }
        out = out.add(&fa.mul(&mg));
    }
    Ok(out)
}

/// Derivative of every component of a wave function.
pub fn derive(f: &[ExpSum], axis: usize) -> Wavefunction {
    f.iter().map(|c| c.partial(axis)).collect()
}

impl Scalar for SurdPolynomial {
    fn conj(&self) -> Self {
        Polynomial::conj(self)
    }
    fn from_gaussian(z: &GaussianRational) -> Self {
        SurdPolynomial::constant(SurdNumber::from_gaussian(*z))
    }
    fn to_c64(&self) -> Complex<f64> {
        self.as_constant().map(|c| c.to_f64_complex()).unwrap_or_default()
    }
}

impl Zero for SurdPolynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
}

impl One for SurdPolynomial {
    fn one() -> Self {
        SurdPolynomial::constant(SurdNumber::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn x_poly() -> ExpSum {
        ExpSum::from_poly(&CoordPolynomial::coordinate(1))
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let f = ExpSum::constant(SurdNumber::from_rational(q(7, 3)));
        assert!(f.partial(1).is_zero());
    }

    #[test]
    fn derivative_of_x_is_one() {
        assert_eq!(x_poly().partial(1), ExpSum::constant(SurdNumber::one()));
    }

    #[test]
    fn time_derivative_pulls_down_minus_i_energy() {
        let e = EnergySymbol::on_shell(q(1, 1), [1, 0, 0]);
        let f = ExpSum::plane_wave([1, 0, 0], e.value(), SurdNumber::one());
        let d = f.partial(0);
        // Hand computation: ∂_t e^{i(x − Et)} = −iE e^{i(x − Et)}, E = √2.
        let expected = ExpSum::plane_wave(
            [1, 0, 0],
            e.value(),
            SurdNumber::sqrt_of(q(2, 1)).scale(&gi(0, -1)),
        );
        assert_eq!(d, expected);
        // Second derivative reduces E² → 2.
        let dd = d.partial(0);
        assert_eq!(dd, f.scale_gaussian(&gi(-2, 0)));
    }

    #[test]
    fn energy_reduction_is_idempotent() {
        let e = EnergySymbol::new("E", q(5, 1));
        let once = e.reduce(&[gi(1, 0), gi(2, 0), gi(3, 0), gi(0, 1)]);
        // 1 + 2E + 3E² + iE³ = 16 + (2 + 5i)E
        let expected = SurdNumber::from_rational(q(16, 1)) + e.value().scale(&gi(2, 5));
        assert_eq!(once, expected);
        let parts: Vec<GaussianRational> = once
            .terms()
            .map(|(s, c)| if s == 1 { *c } else { GaussianRational::zero() })
            .collect();
        let linear = once.clone() - SurdNumber::from_gaussian(parts[0]);
        let again = SurdNumber::from_gaussian(parts[0]) + linear;
        assert_eq!(again, once);
    }

    #[test]
    fn sesquilinear_normalization_and_orthogonality() {
        let id = Matrix::<GaussianRational>::identity(2);
        let e = EnergySymbol::on_shell(q(1, 1), [0, 1, 0]).value();
        let wave = ExpSum::plane_wave([0, 1, 0], e, SurdNumber::one());
        let f = vec![wave.clone(), ExpSum::zero()];
        let g = vec![ExpSum::zero(), wave.clone()];
        assert_eq!(pointwise_sesquilinear(&f, &id, &f).unwrap(), ExpSum::constant(SurdNumber::one()));
        assert!(pointwise_sesquilinear(&f, &id, &g).unwrap().is_zero());
        assert!(matches!(
            pointwise_sesquilinear(&f, &Matrix::identity(3), &f),
            Err(KdpError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sesquilinear_cross_term_sits_at_momentum_difference() {
        let id = Matrix::<GaussianRational>::identity(1);
        let m = q(1, 1);
        let e1 = EnergySymbol::on_shell(m, [1, 0, 0]).value();
        let e2 = EnergySymbol::on_shell(m, [0, 0, 2]).value();
        let a = ExpSum::plane_wave([1, 0, 0], e1.clone(), SurdNumber::one());
        let b = ExpSum::plane_wave([0, 0, 2], e2.clone(), SurdNumber::from_gaussian(gi(0, 1)));
        let f = vec![a.add(&b)];
        let s = pointwise_sesquilinear(&f, &id, &f).unwrap();
        // |a|² + |b|² = 2, plus conj(a) b at (k2 − k1, E2 − E1) and its conjugate.
        assert_eq!(s.num_terms(), 3);
        let cross = Phase { momentum: [-1, 0, 2], frequency: e2 - e1 };
        let amp = s.terms().find(|(p, _)| **p == cross).unwrap().1.clone();
        assert_eq!(amp, SurdPolynomial::constant(SurdNumber::from_gaussian(gi(0, 1))));
    }
}
