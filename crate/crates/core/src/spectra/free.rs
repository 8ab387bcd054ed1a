//! Exact plane-wave solutions of the free KDP equation.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Representation, Sector};
use crate::exactmath::{EnergySymbol, ExpSum, SurdNumber, Wavefunction};
use crate::matrix::Matrix;
use crate::scalar::{gi, gr, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frequency {
    Positive,
    Negative,
}

/// `ψ = v exp(i(k·x − ωt))` with `ω = ±√(m² + |k|²)` and
/// `(β_0ω + β_ik_i + m) v = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeSolution {
    pub sector: Sector,
    pub momentum: [i64; 3],
    pub energy: EnergySymbol,
    pub frequency: Frequency,
    pub amplitude: Vec<SurdNumber>,
}

impl FreeSolution {
    pub fn omega(&self) -> SurdNumber {
        match self.frequency {
            Frequency::Positive => self.energy.value(),
            Frequency::Negative => -self.energy.value(),
        }
    }

    pub fn wave(&self) -> Wavefunction {
        let w = self.omega();
        self.amplitude
            .iter()
            .map(|a| {
                if a.is_zero() {
                    ExpSum::zero()
                } else {
                    ExpSum::plane_wave(self.momentum, w.clone(), a.clone())
                }
            })
            .collect()
    }
}

/// Momentum-space KDP matrix `β_0ω + β_ik_i + m` for `D^μ → p^μ = (ω, k)`.
pub fn momentum_matrix(rep: &Representation, m: Rational, momentum: [i64; 3], omega: &SurdNumber) -> Matrix<SurdNumber> {
    let lift = |x: &crate::GaussianRational| SurdNumber::from_gaussian(*x);
    let mut acc = rep.beta[0].map(lift).scale(omega);
    for i in 0..3 {
        acc = &acc + &rep.beta[i + 1].map(lift).scale(&SurdNumber::from_gaussian(gi(momentum[i], 0)));
    }
    &acc + &rep.identity().map(lift).scale(&SurdNumber::from_gaussian(gr(m)))
}

/// All independent free solutions at lattice momentum `k` with the given
/// sign of the frequency: one for spin-0, three for spin-1.
pub fn solve_free(rep: &Representation, m: Rational, momentum: [i64; 3], frequency: Frequency) -> Vec<FreeSolution> {
    let energy = EnergySymbol::on_shell(m, momentum);
    let omega = match frequency {
        Frequency::Positive => energy.value(),
        Frequency::Negative => -energy.value(),
    };
    momentum_matrix(rep, m, momentum, &omega)
        .nullspace()
        .into_iter()
        .map(|amplitude| FreeSolution { sector: rep.sector, momentum, energy: energy.clone(), frequency, amplitude })
        .collect()
}

/// Solutions of `(β_0ω + β_ik_i + m)v = 0` for an arbitrary rational `ω`;
/// empty off shell.
pub fn solve_at_frequency(rep: &Representation, m: Rational, momentum: [i64; 3], omega: Rational) -> Vec<Vec<SurdNumber>> {
    momentum_matrix(rep, m, momentum, &SurdNumber::from_rational(omega)).nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldConfig;
    use crate::operators::OperatorSet;
    use crate::scalar::q;

    #[test]
    fn solution_counts() {
        let s0 = Representation::spin(0).unwrap();
        let s1 = Representation::spin(1).unwrap();
        assert_eq!(solve_free(&s0, q(1, 1), [0, 0, 0], Frequency::Positive).len(), 1);
        assert_eq!(solve_free(&s1, q(1, 1), [0, 0, 0], Frequency::Positive).len(), 3);
        assert_eq!(solve_free(&s1, q(2, 1), [1, -2, 1], Frequency::Negative).len(), 3);
    }

    #[test]
    fn spin0_rest_frame_pattern() {
        let s0 = Representation::spin(0).unwrap();
        let sol = &solve_free(&s0, q(1, 1), [0, 0, 0], Frequency::Positive)[0];
        for i in 0..3 {
            assert!(sol.amplitude[i].is_zero());
        }
        assert!(!sol.amplitude[3].is_zero() && !sol.amplitude[4].is_zero());
    }

    #[test]
    fn off_shell_has_no_solution() {
        // m = 1, k = (1,0,0): E² = 2, try ω = 3/2
        let s1 = Representation::spin(1).unwrap();
        assert!(solve_at_frequency(&s1, q(1, 1), [1, 0, 0], q(3, 2)).is_empty());
        // k = (0,0,0), ω = 1 is on shell
        assert_eq!(solve_at_frequency(&s1, q(1, 1), [0, 0, 0], q(1, 1)).len(), 3);
    }

    #[test]
    fn lambda_annihilates_free_solutions() {
        for spin in [0, 1] {
            let rep = Representation::spin(spin).unwrap();
            let field = FieldConfig::zero(q(1, 1));
            let ops = OperatorSet::new(&rep, &field, q(1, 1)).unwrap();
            for sol in solve_free(&rep, q(1, 1), [1, 2, 0], Frequency::Positive) {
                let psi = sol.wave();
                assert!(ops.lambda().apply(&psi).iter().all(ExpSum::is_zero));
                assert!(ops.constraint().apply(&psi).iter().all(ExpSum::is_zero));
                let h = ops.hamilton().apply(&psi);
                let dt: Vec<ExpSum> = psi.iter().map(|c| c.partial(0).scale_gaussian(&gi(0, 1))).collect();
                assert_eq!(h, dt);
            }
        }
    }
}
