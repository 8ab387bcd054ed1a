//! The indefinite current `j^μ = ψ̄β^μψ` and the positive-density current
//! `s^μ = (φ†φ, φ†β̃_iφ)` with `φ = ψ/√(∫ψ†ψ)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{IdentityReport, Representation};
use crate::error::{KdpError, Result};
use crate::exactmath::{box_integrate, pointwise_sesquilinear, BoxIntegral, ExpSum, Wavefunction};
use crate::scalar::{gr, q, Rational};
use crate::spectra::{solve_free, Frequency};
use crate::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurrentKind {
    J,
    S,
}

/// Four scalar components of a current. For `s^μ` the components are
/// `ψ†Mψ` and the common factor `1/∫ψ†ψ` is kept separately in `norm_sq`,
/// so divergence checks stay exact.
#[derive(Clone, Debug)]
pub struct CurrentField {
    pub kind: CurrentKind,
    pub components: [ExpSum; 4],
    pub norm_sq: Option<BoxIntegral>,
}

impl CurrentField {
    /// `∂_μ c^μ`, exact.
    pub fn divergence(&self) -> ExpSum {
        (0..4).fold(ExpSum::zero(), |acc, mu| acc.add(&self.components[mu].partial(mu)))
    }

    /// Density at a point, including the normalization for `s` with the box
    /// length set to `box_length`.
    pub fn density_at(&self, point: &[f64; 4], box_length: f64) -> f64 {
        let raw = self.components[0].eval_f64(point).re;
        match &self.norm_sq {
            Some(n) => raw / eval_box(n, box_length, point[0]),
            None => raw,
        }
    }
}

fn eval_box(n: &BoxIntegral, l: f64, t: f64) -> f64 {
    n.terms()
        .map(|((w, a, b), c)| {
            let phase = num_complex::Complex::from_polar(1.0, -w.to_f64_complex().re * t);
            (c.to_f64_complex() * phase).re * t.powi(*a as i32) * l.powi(*b as i32)
        })
        .sum()
}

fn check_dim(rep: &Representation, psi: &[ExpSum]) -> Result<()> {
    if psi.len() != rep.dim {
        return Err(KdpError::DimensionMismatch { expected: rep.dim, found: psi.len() });
    }
    Ok(())
}

/// `j^μ = ψ†(2β_0² − 1)β^μψ`.
pub fn current_j(rep: &Representation, psi: &[ExpSum]) -> Result<CurrentField> {
    check_dim(rep, psi)?;
    let comps: Vec<ExpSum> = (0..4)
        .map(|mu| pointwise_sesquilinear(psi, &(&rep.eta * &rep.beta_upper(mu)), psi))
        .collect::<Result<_>>()?;
    Ok(CurrentField { kind: CurrentKind::J, components: comps.try_into().expect("four components"), norm_sq: None })
}

/// Matrices of `s^μ`: the identity and `β̃_i = [β_0, β^i]`.
pub fn s_matrices(rep: &Representation) -> [ExactMatrix; 4] {
    [rep.identity(), rep.beta_tilde(1), rep.beta_tilde(2), rep.beta_tilde(3)]
}

/// `s^μ` with the normalization `∫ψ†ψ` over the periodic box.
pub fn current_s(rep: &Representation, psi: &[ExpSum]) -> Result<CurrentField> {
    check_dim(rep, psi)?;
    let mats = s_matrices(rep);
    let comps: Vec<ExpSum> =
        mats.iter().map(|m| pointwise_sesquilinear(psi, m, psi)).collect::<Result<_>>()?;
    let norm = box_integrate(&comps[0]);
    if norm.is_zero() {
        return Err(KdpError::ZeroNorm);
    }
    Ok(CurrentField { kind: CurrentKind::S, components: comps.try_into().expect("four components"), norm_sq: Some(norm) })
}

/// `∂_μ c^μ = 0` exactly.
pub fn verify_conservation(current: &CurrentField, label: &str) -> IdentityReport {
    let (id, desc) = match current.kind {
        CurrentKind::J => ("1.3", "conservation of j^mu"),
        CurrentKind::S => ("1.5", "conservation of s^mu"),
    };
    let mut r = IdentityReport::new(id, desc);
    let div = current.divergence();
    r.check(|| label.to_string(), div.is_zero(), || vec![format!("{div:?}")]);
    r
}

/// `∫ j^0 d³x` has no time dependence.
pub fn verify_charge_constancy(current: &CurrentField, label: &str) -> IdentityReport {
    let mut r = IdentityReport::new("1.3-charge", "box charge of j^0 is time independent");
    let q = box_integrate(&current.components[0]);
    r.check(|| label.to_string(), q.is_time_independent(), || vec![format!("{q:?}")]);
    r
}

/// Sum of free solutions as one wave function.
pub fn superpose(modes: &[Wavefunction]) -> Option<Wavefunction> {
    let first = modes.first()?;
    let mut out = first.clone();
    for m in &modes[1..] {
        for (a, b) in out.iter_mut().zip(m) {
            *a = a.add(b);
        }
    }
    Some(out)
}

/// Samples `s^0` on a deterministic grid of points in `[0, L)³ × [0, T)`
/// and returns the minimum.
pub fn min_density(current: &CurrentField, box_length: f64, samples_per_axis: usize, t_max: f64) -> f64 {
    let n = samples_per_axis.max(1);
    let mut min = f64::INFINITY;
    for it in 0..n {
        for ix in 0..n {
            for iy in 0..n {
                for iz in 0..n {
                    let f = |i: usize, span: f64| span * i as f64 / n as f64;
                    let p = [f(it, t_max), f(ix, box_length), f(iy, box_length), f(iz, box_length)];
                    min = min.min(current.density_at(&p, box_length));
                }
            }
        }
    }
    min
}

/// One free plane-wave mode of a superposition. Momenta are integers in
/// units of `2π/L`; `polarization` indexes the solution basis returned by
/// [`solve_free`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    pub momentum: [i64; 3],
    pub frequency: Frequency,
    #[serde(default)]
    pub polarization: usize,
    #[serde(with = "crate::scalar::rational_pair", default = "unit")]
    pub amplitude: Rational,
}

fn unit() -> Rational {
    q(1, 1)
}

/// `Σ a_k ψ_k` for the given modes.
pub fn build_modes(rep: &Representation, m: Rational, modes: &[ModeSpec]) -> Result<Wavefunction> {
    if modes.is_empty() {
        return Err(KdpError::InvalidParameter("mode list is empty".into()));
    }
    if m <= q(0, 1) {
        return Err(KdpError::InvalidParameter("mass must be positive".into()));
    }
    let waves = modes
        .iter()
        .map(|spec| {
            let sols = solve_free(rep, m, spec.momentum, spec.frequency);
            let sol = sols.get(spec.polarization).ok_or_else(|| {
                KdpError::InvalidParameter(format!(
                    "polarization {} out of range: momentum {:?} has {} solutions",
                    spec.polarization,
                    spec.momentum,
                    sols.len()
                ))
            })?;
            Ok(sol.wave().iter().map(|c| c.scale_gaussian(&gr(spec.amplitude))).collect())
        })
        .collect::<Result<Vec<Wavefunction>>>()?;
    Ok(superpose(&waves).expect("nonempty"))
}

/// Minimum of `s^0` over `count` seeded random points of `[0, L)³ × [0, t_max)`.
pub fn sample_min_density(current: &CurrentField, box_length: f64, count: usize, t_max: f64, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = [
                rng.gen::<f64>() * t_max,
                rng.gen::<f64>() * box_length,
                rng.gen::<f64>() * box_length,
                rng.gen::<f64>() * box_length,
            ];
            current.density_at(&p, box_length)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Conservation, charge constancy and positivity for one superposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurrentsReport {
    pub spin: u8,
    pub modes: usize,
    pub reports: Vec<IdentityReport>,
    /// Smallest sampled `s^0`.
    pub min_s0: f64,
    pub samples: usize,
    pub passed: bool,
}

/// Builds `j` and `s` for the superposition and runs every check. The box
/// length is `2π` in the momentum unit.
pub fn currents_report(rep: &Representation, m: Rational, modes: &[ModeSpec], samples: usize, seed: u64) -> Result<CurrentsReport> {
    let psi = build_modes(rep, m, modes)?;
    let label = format!("{} mode(s)", modes.len());
    let j = current_j(rep, &psi)?;
    let s = current_s(rep, &psi)?;
    let reports = vec![verify_conservation(&j, &label), verify_conservation(&s, &label), verify_charge_constancy(&j, &label)];
    let min_s0 = sample_min_density(&s, std::f64::consts::TAU, samples, 10.0, seed);
    let passed = reports.iter().all(|r| r.passed) && min_s0 >= 0.0;
    Ok(CurrentsReport { spin: rep.sector.spin().unwrap_or(0), modes: modes.len(), reports, min_s0, samples, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use crate::spectra::{solve_free, Frequency};

    #[test]
    fn zero_state_is_rejected_for_s() {
        let rep = Representation::spin(0).unwrap();
        let psi = vec![ExpSum::zero(); 5];
        assert!(matches!(current_s(&rep, &psi), Err(KdpError::ZeroNorm)));
        let j = current_j(&rep, &psi).unwrap();
        assert!(j.components.iter().all(ExpSum::is_zero));
    }

    #[test]
    fn single_mode_current_is_constant() {
        let rep = Representation::spin(1).unwrap();
        let sol = &solve_free(&rep, q(1, 1), [1, 0, 0], Frequency::Positive)[0];
        let j = current_j(&rep, &sol.wave()).unwrap();
        for c in &j.components {
            assert!(c.as_polynomial().and_then(|p| p.as_constant()).is_some());
        }
    }

    #[test]
    fn negative_frequency_charge_is_negative() {
        let rep = Representation::spin(0).unwrap();
        let pos = &solve_free(&rep, q(1, 1), [0, 1, 0], Frequency::Positive)[0];
        let neg = &solve_free(&rep, q(1, 1), [0, 1, 0], Frequency::Negative)[0];
        let jp = current_j(&rep, &pos.wave()).unwrap().density_at(&[0.0; 4], 1.0);
        let jn = current_j(&rep, &neg.wave()).unwrap().density_at(&[0.0; 4], 1.0);
        assert!(jp * jn < 0.0, "j0 signs {jp} {jn}");
    }
}
