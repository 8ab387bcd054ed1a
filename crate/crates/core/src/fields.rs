//! External electromagnetic fields with polynomial four-potentials.
//!
//! Potentials are stored with upper indices, `A^μ`, and the field strength
//! is `F^{μν} = ∂^μA^ν − ∂^νA^μ` with `∂^0 = ∂_t`, `∂^i = −∂/∂x^i`. The
//! magnetic vector is `B^k = −½ ε_kij F^{ij}`, so `B_z = F_{21}`.

use serde::{Deserialize, Serialize};

use crate::algebra::{eps3, metric};
use crate::error::{KdpError, Result};
use crate::exactmath::CoordPolynomial;
use crate::scalar::{gi, gr, q, GaussianRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gauge {
    /// `A = (0, 0, Bx, 0)`.
    Landau,
    /// `A = (0, −By/2, Bx/2, 0)`.
    Symmetric,
}

/// Field configurations shipped with the toolkit.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldKind {
    Zero,
    UniformB { b: Rational, gauge: Gauge },
    UniformE { e: Rational },
    /// `A^μ = amplitude · ε^μ (t − z)^n` with `ε = (0, 1, 0, 0)`.
    NullWave { n: u32, amplitude: Rational },
    /// Arbitrary polynomial potential, validated against the free Maxwell
    /// equations.
    Custom { potential: Vec<CoordPolynomial> },
}

impl FieldKind {
    pub fn tag(&self) -> &'static str {
        match self {
            FieldKind::Zero => "zero",
            FieldKind::UniformB { .. } => "uniform-B",
            FieldKind::UniformE { .. } => "uniform-E",
            FieldKind::NullWave { .. } => "null-wave-poly",
            FieldKind::Custom { .. } => "custom",
        }
    }
}

/// A free external field plus the charge of the coupled particle.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldConfig {
    pub kind: FieldKind,
    pub charge: Rational,
    /// `A^0..A^3`.
    pub a: [CoordPolynomial; 4],
    /// `F^{μν}`, upper indices.
    pub f: [[CoordPolynomial; 4]; 4],
}

/// `∂^μ p`.
pub fn d_upper(p: &CoordPolynomial, mu: usize) -> CoordPolynomial {
    let d = p.partial(mu);
    if mu == 0 {
        d
    } else {
        d.scale(&gi(-1, 0))
    }
}

fn field_strength(a: &[CoordPolynomial; 4]) -> [[CoordPolynomial; 4]; 4] {
    std::array::from_fn(|mu| std::array::from_fn(|nu| &d_upper(&a[nu], mu) - &d_upper(&a[mu], nu)))
}

/// Builds a field and rejects potentials that are not free Maxwell fields.
pub fn make_field(kind: FieldKind, charge: Rational) -> Result<FieldConfig> {
    let x = |axis: usize| CoordPolynomial::coordinate(axis);
    let zero = CoordPolynomial::zero;
    let a: [CoordPolynomial; 4] = match &kind {
        FieldKind::Zero => std::array::from_fn(|_| zero()),
        FieldKind::UniformB { b, gauge } => match gauge {
            Gauge::Landau => [zero(), zero(), x(1).scale(&gr(*b)), zero()],
            Gauge::Symmetric => [
                zero(),
                x(2).scale(&gr(-*b / Rational::from_integer(2))),
                x(1).scale(&gr(*b / Rational::from_integer(2))),
                zero(),
            ],
        },
        FieldKind::UniformE { e } => [x(3).scale(&gr(-*e)), zero(), zero(), zero()],
        FieldKind::NullWave { n, amplitude } => {
            if !(1..=3).contains(n) {
                return Err(KdpError::InvalidParameter(format!("null-wave degree {n} outside 1..=3")));
            }
            let u = &x(0) - &x(3);
            [zero(), u.pow(*n).scale(&gr(*amplitude)), zero(), zero()]
        }
        FieldKind::Custom { potential } => {
            if potential.len() != 4 {
                return Err(KdpError::DimensionMismatch { expected: 4, found: potential.len() });
            }
            std::array::from_fn(|mu| potential[mu].clone())
        }
    };
    let f = field_strength(&a);
    let cfg = FieldConfig { kind, charge, a, f };
    if let Some(nu) = cfg.maxwell_violation() {
        return Err(KdpError::FreeMaxwellViolation { nu });
    }
    Ok(cfg)
}

impl FieldConfig {
    pub fn zero(charge: Rational) -> Self {
        make_field(FieldKind::Zero, charge).expect("zero field is free")
    }

    /// The fields used in exhaustive sweeps: zero, uniform B (Landau gauge),
    /// uniform E, and null waves of degree 1 and 2.
    pub fn shipped(charge: Rational) -> Vec<FieldConfig> {
        let kinds = vec![
            FieldKind::Zero,
            FieldKind::UniformB { b: q(3, 1), gauge: Gauge::Landau },
            FieldKind::UniformE { e: q(2, 1) },
            FieldKind::NullWave { n: 1, amplitude: q(1, 1) },
            FieldKind::NullWave { n: 2, amplitude: q(1, 2) },
        ];
        kinds.into_iter().map(|k| make_field(k, charge).expect("shipped fields are free")).collect()
    }

    /// Short label for reports.
    pub fn label(&self) -> String {
        match &self.kind {
            FieldKind::NullWave { n, .. } => format!("null-wave-poly(n={n})"),
            FieldKind::UniformB { gauge, .. } => format!("uniform-B({gauge:?})"),
            k => k.tag().to_string(),
        }
    }

    /// First `ν` with `∂_μ F^{μν} ≠ 0`.
    pub fn maxwell_violation(&self) -> Option<usize> {
        (0..4).find(|&nu| {
            let mut div = CoordPolynomial::zero();
            for mu in 0..4 {
                div += &self.f[mu][nu].partial(mu);
            }
            !div.is_zero()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(CoordPolynomial::is_zero)
    }

    /// `e A^μ`, the coupling term inside `D^μ`.
    pub fn coupling(&self, mu: usize) -> CoordPolynomial {
        self.a[mu].scale(&gr(self.charge))
    }

    pub fn e(&self) -> GaussianRational {
        gr(self.charge)
    }

    /// `F_{μν}`.
    pub fn f_lower(&self, mu: usize, nu: usize) -> CoordPolynomial {
        self.f[mu][nu].scale(&gi(metric(mu, mu) * metric(nu, nu), 0))
    }

    /// `∂^ρ F^{μν}`.
    pub fn df(&self, rho: usize, mu: usize, nu: usize) -> CoordPolynomial {
        d_upper(&self.f[mu][nu], rho)
    }

    pub fn has_scalar_potential(&self) -> bool {
        !self.a[0].is_zero()
    }

    /// True if every `F^{μν}` is constant.
    pub fn is_uniform(&self) -> bool {
        self.f.iter().flatten().all(|p| p.as_constant().is_some())
    }

    /// Constant `F^{μν}` as rationals, if uniform and real.
    pub fn f_constant(&self) -> Option<[[Rational; 4]; 4]> {
        let mut out = [[Rational::from_integer(0); 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                let c = self.f[mu][nu].as_constant()?;
                if c.im != Rational::from_integer(0) {
                    return None;
                }
                out[mu][nu] = c.re;
            }
        }
        Some(out)
    }

    /// The same field after `A^μ → A^μ + ∂^μχ`.
    pub fn gauge_shifted(&self, chi: &CoordPolynomial) -> Self {
        let a: [CoordPolynomial; 4] = std::array::from_fn(|mu| &self.a[mu] + &d_upper(chi, mu));
        let f = field_strength(&a);
        Self { kind: FieldKind::Custom { potential: a.to_vec() }, charge: self.charge, a, f }
    }
}

/// `B^k = −½ ε_kij F^{ij}`.
pub fn magnetic_vector(field: &FieldConfig) -> [CoordPolynomial; 3] {
    std::array::from_fn(|k| {
        let mut acc = CoordPolynomial::zero();
        for i in 1..=3 {
            for j in 1..=3 {
                let e = eps3(k + 1, i, j);
                if e != 0 {
                    acc += &field.f[i][j].scale(&gr(q(-e as i128, 2)));
                }
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CoordPolynomial {
        CoordPolynomial::constant(gi(n, 0))
    }

    #[test]
    fn zero_field_has_no_strength() {
        let f = FieldConfig::zero(q(1, 1));
        assert!(f.f.iter().flatten().all(CoordPolynomial::is_zero));
        assert!(magnetic_vector(&f).iter().all(CoordPolynomial::is_zero));
    }

    #[test]
    fn uniform_b_orientation() {
        let f = make_field(FieldKind::UniformB { b: q(3, 1), gauge: Gauge::Landau }, q(1, 1)).unwrap();
        assert_eq!(f.f[1][2], c(-3));
        assert_eq!(f.f[2][1], c(3));
        for mu in 0..4 {
            for nu in 0..4 {
                if (mu, nu) != (1, 2) && (mu, nu) != (2, 1) {
                    assert!(f.f[mu][nu].is_zero());
                }
            }
        }
        let b = magnetic_vector(&f);
        assert!(b[0].is_zero() && b[1].is_zero());
        assert_eq!(b[2], c(3));
        assert_eq!(f.f_lower(2, 1), c(3));
    }

    #[test]
    fn symmetric_gauge_same_strength() {
        let l = make_field(FieldKind::UniformB { b: q(5, 2), gauge: Gauge::Landau }, q(1, 1)).unwrap();
        let s = make_field(FieldKind::UniformB { b: q(5, 2), gauge: Gauge::Symmetric }, q(1, 1)).unwrap();
        assert_eq!(l.f, s.f);
    }

    #[test]
    fn null_wave_is_free_and_nonconstant() {
        let f = make_field(FieldKind::NullWave { n: 2, amplitude: q(1, 1) }, q(1, 1)).unwrap();
        assert!(!f.is_uniform());
        assert_eq!(f.maxwell_violation(), None);
        let n1 = make_field(FieldKind::NullWave { n: 1, amplitude: q(1, 1) }, q(1, 1)).unwrap();
        let b = magnetic_vector(&n1);
        assert!(b[0].is_zero() && b[2].is_zero());
        assert!(b[1].as_constant().is_some() && !b[1].is_zero());
    }

    #[test]
    fn non_free_custom_is_rejected() {
        // A^1 = x²: ∂_μ F^{μ1} ≠ 0
        let x = CoordPolynomial::coordinate(2);
        let pot = vec![CoordPolynomial::zero(), x.pow(2), CoordPolynomial::zero(), CoordPolynomial::zero()];
        let r = make_field(FieldKind::Custom { potential: pot }, q(1, 1));
        assert!(matches!(r, Err(KdpError::FreeMaxwellViolation { .. })));
    }
}
