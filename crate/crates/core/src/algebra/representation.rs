//! The spin-0 (5×5) and spin-1 (10×10) Duffin-Kemmer matrices.
//!
//! Matrices are stored with lower indices; `β^0 = β_0`, `β^i = −β_i`.
//! Conventions fixed here:
//!
//! * spin-0 carrier `(ψ_1..ψ_3, ψ_4, ψ_5)`: auxiliary vector, time
//!   component, and the physical scalar `ψ_5`;
//! * spin-1 carrier `(ψ_1..ψ_3 | ψ_4..ψ_6 | ψ_7..ψ_9 | ψ_10)`: physical
//!   (electric-type) triple, magnetic-type triple, vector potential triple
//!   and its time component;
//! * `β_0` hermitian, `β_i` antihermitian, so `η = 2β_0² − 1` is the
//!   adjoint metric.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{KdpError, Result};
use crate::scalar::{gi, GaussianRational};
use crate::ExactMatrix;

/// Which irreducible representation of the Duffin algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Trivial,
    Spin0,
    Spin1,
}

impl Sector {
    pub fn from_spin(spin: u8) -> Result<Self> {
        match spin {
            0 => Ok(Sector::Spin0),
            1 => Ok(Sector::Spin1),
            s => Err(KdpError::UnsupportedSpin(s)),
        }
    }

    pub fn spin(self) -> Option<u8> {
        match self {
            Sector::Trivial => None,
            Sector::Spin0 => Some(0),
            Sector::Spin1 => Some(1),
        }
    }
}

/// Minkowski metric `diag(1, −1, −1, −1)`; equal for upper and lower indices.
pub fn metric(mu: usize, nu: usize) -> i64 {
    match (mu, nu) {
        (0, 0) => 1,
        (a, b) if a == b => -1,
        _ => 0,
    }
}

/// Levi-Civita symbol on three spatial indices `1..=3`.
pub fn eps3(i: usize, j: usize, k: usize) -> i64 {
    eps4_sign(&[i, j, k])
}

/// Levi-Civita symbol with `ε^{0123} = 1`.
pub fn eps4(a: usize, b: usize, c: usize, d: usize) -> i64 {
    eps4_sign(&[a, b, c, d])
}

fn eps4_sign(idx: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// A complete matrix set for one sector.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub sector: Sector,
    pub dim: usize,
    /// `β_0..β_3`, lower indices.
    pub beta: [ExactMatrix; 4],
    /// The idempotent `β` with `{β, β_μ} = β_μ`.
    pub beta_proj: ExactMatrix,
    pub omega: ExactMatrix,
    /// `S_1..S_3` from `S_ij = −i ε_ijk S_k`.
    pub spin_ops: [ExactMatrix; 3],
    /// Spin-1 only.
    pub xi: Option<ExactMatrix>,
    /// `2β_0² − 1`.
    pub eta: ExactMatrix,
    /// 0-based indices of the physical components.
    pub physical: Vec<usize>,
    /// Dimension of the solution space when `β` was solved for.
    pub beta_solution_dim: usize,
}

fn unit(n: usize, i: usize, j: usize, v: GaussianRational) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    m.set(i - 1, j - 1, v);
    m
}

/// Spin-0 `β_μ` (1-based entries in the comments).
pub fn spin0_betas() -> [ExactMatrix; 4] {
    let n = 5;
    // β_0 = −i E_45 + i E_54
    let b0 = &unit(n, 4, 5, gi(0, -1)) + &unit(n, 5, 4, gi(0, 1));
    // β_i = E_i5 − E_5i
    let bi = |i: usize| &unit(n, i, 5, gi(1, 0)) + &unit(n, 5, i, gi(-1, 0));
    [b0, bi(1), bi(2), bi(3)]
}

/// Spin-1 `β_μ`.
pub fn spin1_betas() -> [ExactMatrix; 4] {
    let n = 10;
    let mut b0 = ExactMatrix::zeros(n, n);
    for k in 1..=3 {
        b0.set(6 + k - 1, k - 1, gi(0, 1));
        b0.set(k - 1, 6 + k - 1, gi(0, -1));
    }
    let bi = |i: usize| {
        let mut m = ExactMatrix::zeros(n, n);
        m.set(9, i - 1, gi(0, -1));
        m.set(i - 1, 9, gi(0, -1));
        for k in 1..=3 {
            for j in 1..=3 {
                let e = eps3(k, i, j);
                if e != 0 {
                    m.set(3 + k - 1, 6 + j - 1, gi(e, 0));
                    m.set(6 + j - 1, 3 + k - 1, gi(-e, 0));
                }
            }
        }
        m
    };
    [b0, bi(1), bi(2), bi(3)]
}

impl Representation {
    pub fn build(sector: Sector) -> Result<Self> {
        match sector {
            Sector::Trivial => Ok(Self::trivial(1)),
            Sector::Spin0 => Self::from_betas(Sector::Spin0, spin0_betas()),
            Sector::Spin1 => Self::from_betas(Sector::Spin1, spin1_betas()),
        }
    }

    pub fn spin(spin: u8) -> Result<Self> {
        Self::build(Sector::from_spin(spin)?)
    }

    /// The trivial representation `β_μ = 0` of the given size.
    pub fn trivial(dim: usize) -> Self {
        let z = ExactMatrix::zeros(dim, dim);
        Self {
            sector: Sector::Trivial,
            dim,
            beta: [z.clone(), z.clone(), z.clone(), z.clone()],
            beta_proj: z.clone(),
            omega: z.clone(),
            spin_ops: [z.clone(), z.clone(), z.clone()],
            xi: None,
            eta: -ExactMatrix::identity(dim),
            physical: Vec::new(),
            beta_solution_dim: dim * dim,
        }
    }

    /// Completes a matrix set from given `β_μ`. Derived matrices are built
    /// from the betas, so a faulty input propagates into every check.
    pub fn from_betas(sector: Sector, beta: [ExactMatrix; 4]) -> Result<Self> {
        let dim = beta[0].rows();
        for b in &beta {
            if b.rows() != dim || b.cols() != dim {
                return Err(KdpError::DimensionMismatch { expected: dim, found: b.rows() });
            }
        }
        let id = ExactMatrix::identity(dim);
        let b0sq = &beta[0] * &beta[0];
        let eta = &b0sq.scale(&gi(2, 0)) - &id;
        let omega = build_omega(&beta);
        let spin_ops = build_spin_ops(&beta);
        let (physical, xi) = match sector {
            Sector::Spin0 => (vec![4], None),
            Sector::Spin1 => (
                vec![0, 1, 2],
                Some(ExactMatrix::diagonal(
                    &[1, 1, 1, -1, -1, -1, -1, -1, -1, 1].map(|v| gi(v, 0)),
                )),
            ),
            Sector::Trivial => (Vec::new(), None),
        };
        let mut rep = Self {
            sector,
            dim,
            beta,
            beta_proj: ExactMatrix::zeros(dim, dim),
            omega,
            spin_ops,
            xi,
            eta,
            physical,
            beta_solution_dim: 0,
        };
        let (bp, sol_dim) = rep.solve_beta_proj()?;
        rep.beta_proj = bp;
        rep.beta_solution_dim = sol_dim;
        Ok(rep)
    }

    /// `β^μ` (upper index).
    pub fn beta_upper(&self, mu: usize) -> ExactMatrix {
        if mu == 0 {
            self.beta[0].clone()
        } else {
            -self.beta[mu].clone()
        }
    }

    pub fn identity(&self) -> ExactMatrix {
        ExactMatrix::identity(self.dim)
    }

    pub fn beta0_sq(&self) -> ExactMatrix {
        &self.beta[0] * &self.beta[0]
    }

    /// `S_{νμ} = β_ν β_μ − β_μ β_ν`, lower indices.
    pub fn s_lower(&self, nu: usize, mu: usize) -> ExactMatrix {
        self.beta[nu].commutator(&self.beta[mu])
    }

    /// `β̃_i = [β_0, β^i]`, the matrix in the positive-density current.
    pub fn beta_tilde(&self, i: usize) -> ExactMatrix {
        self.beta[0].commutator(&self.beta_upper(i))
    }

    /// Returns a copy with one entry of `β_mu` replaced; derived matrices
    /// are recomputed from the mutated set.
    pub fn with_mutation(&self, mu: usize, row: usize, col: usize, value: GaussianRational) -> Result<Self> {
        let mut beta = self.beta.clone();
        beta[mu].set(row, col, value);
        Self::from_betas(self.sector, beta)
    }

    /// Solves `{X, β_μ} = β_μ` plus the sector's selection condition:
    /// spin-1 `X = 1 − ω²`, spin-0 `X` annihilates the physical component
    /// from both sides. Returns the solution and the dimension of the
    /// unconstrained solution space.
    fn solve_beta_proj(&self) -> Result<(ExactMatrix, usize)> {
        let n = self.dim;
        let id = self.identity();
        let mut system = anticommutator_system(&self.beta);
        let free_dim = n * n - system.rank_of_coefficients();
        match self.sector {
            Sector::Spin1 => {
                let target = &id - &(&self.omega * &self.omega);
                system.push_equation(&id, &id, &target);
            }
            Sector::Spin0 => {
                let p = ExactMatrix::unit(n, 4, 4);
                system.push_equation(&id, &p, &ExactMatrix::zeros(n, n));
                system.push_equation(&p, &id, &ExactMatrix::zeros(n, n));
            }
            Sector::Trivial => {}
        }
        let x = system
            .solve()
            .ok_or_else(|| KdpError::Construction("no β satisfies {β, β_μ} = β_μ with the sector condition".into()))?;
        Ok((x, free_dim))
    }
}

/// Linear system in the entries of an unknown `n×n` matrix `X`, built from
/// equations `Σ A X B = C`.
struct MatrixSystem {
    n: usize,
    rows: Vec<Vec<GaussianRational>>,
}

fn anticommutator_system(beta: &[ExactMatrix; 4]) -> MatrixSystem {
    let n = beta[0].rows();
    let mut s = MatrixSystem { n, rows: Vec::new() };
    let id = ExactMatrix::identity(n);
    for b in beta {
        s.push_pair(&[(&id, b), (b, &id)], b);
    }
    s
}

impl MatrixSystem {
    fn push_equation(&mut self, a: &ExactMatrix, b: &ExactMatrix, c: &ExactMatrix) {
        self.push_pair(&[(a, b)], c);
    }

    fn push_pair(&mut self, terms: &[(&ExactMatrix, &ExactMatrix)], c: &ExactMatrix) {
        let n = self.n;
        for ra in 0..n {
            for cb in 0..n {
                let mut row = vec![GaussianRational::zero(); n * n + 1];
                for (a, b) in terms {
                    for i in 0..n {
                        let av = a.get(ra, i);
                        if av.is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let bv = b.get(j, cb);
                            if !bv.is_zero() {
                                row[i * n + j] += av * bv;
                            }
                        }
                    }
                }
                row[n * n] = *c.get(ra, cb);
                if row.iter().any(|v| !v.is_zero()) {
                    self.rows.push(row);
                }
            }
        }
    }

    fn augmented(&self) -> ExactMatrix {
        if self.rows.is_empty() {
            return ExactMatrix::zeros(1, self.n * self.n + 1);
        }
        ExactMatrix::from_rows(self.rows.clone())
    }

    fn rank_of_coefficients(&self) -> usize {
        let nn = self.n * self.n;
        let (_, pivots) = self.augmented().rref();
        pivots.iter().filter(|&&p| p < nn).count()
    }

    /// Particular solution with all free variables zero; `None` if
    /// inconsistent.
    fn solve(&self) -> Option<ExactMatrix> {
        let nn = self.n * self.n;
        let (r, pivots) = self.augmented().rref();
        if pivots.contains(&nn) {
            return None;
        }
        let mut x = vec![GaussianRational::zero(); nn];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = *r.get(row, nn);
        }
        Some(ExactMatrix::from_fn(self.n, self.n, |i, j| x[i * self.n + j]))
    }
}

/// `ω = (i/4) ε^{μνσδ} β_μ β_ν β_σ β_δ`.
pub fn build_omega(beta: &[ExactMatrix; 4]) -> ExactMatrix {
    let n = beta[0].rows();
    let mut acc = ExactMatrix::zeros(n, n);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let e = eps4(a, b, c, d);
                    if e == 0 {
                        continue;
                    }
                    let w = &(&(&beta[a] * &beta[b]) * &beta[c]) * &beta[d];
                    acc = &acc + &w.scale(&gi(e, 0));
                }
            }
        }
    }
    acc.scale(&GaussianRational::new(num_traits::Zero::zero(), crate::scalar::q(1, 4)))
}

/// `S_k = (i/2) ε_ijk S_ij`, the inverse of `S_ij = −i ε_ijk S_k`.
pub fn build_spin_ops(beta: &[ExactMatrix; 4]) -> [ExactMatrix; 3] {
    let n = beta[0].rows();
    let s = |k: usize| {
        let mut acc = ExactMatrix::zeros(n, n);
        for i in 1..=3 {
            for j in 1..=3 {
                let e = eps3(i, j, k);
                if e != 0 {
                    let sij = beta[i].commutator(&beta[j]);
                    acc = &acc + &sij.scale(&gi(e, 0));
                }
            }
        }
        acc.scale(&GaussianRational::new(num_traits::Zero::zero(), crate::scalar::q(1, 2)))
    };
    [s(1), s(2), s(3)]
}

/// `(T_k)_{ij} = i ε_{ikj}`, the adjoint representation of SU(2).
pub fn t_matrix(k: usize) -> ExactMatrix {
    ExactMatrix::from_fn(3, 3, |i, j| gi(0, eps3(i + 1, k, j + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(Representation::spin(0).unwrap().dim, 5);
        assert_eq!(Representation::spin(1).unwrap().dim, 10);
        assert!(matches!(Representation::spin(2), Err(KdpError::UnsupportedSpin(2))));
    }

    #[test]
    fn entries_are_units() {
        for rep in [Representation::spin(0).unwrap(), Representation::spin(1).unwrap()] {
            for b in &rep.beta {
                for (_, _, v) in b.nonzero_entries() {
                    assert!(v.norm_sqr() == crate::scalar::q(1, 1), "entry {v:?}");
                }
            }
        }
    }

    #[test]
    fn spin0_projector_annihilates_physical_component() {
        let rep = Representation::spin(0).unwrap();
        let expected = &ExactMatrix::identity(5) - &ExactMatrix::unit(5, 4, 4);
        assert_eq!(rep.beta_proj, expected);
    }

    #[test]
    fn epsilon_signs() {
        assert_eq!(eps4(0, 1, 2, 3), 1);
        assert_eq!(eps4(1, 0, 2, 3), -1);
        assert_eq!(eps4(3, 2, 1, 0), 1);
        assert_eq!(eps3(3, 1, 2), 1);
        assert_eq!(eps3(3, 2, 1), -1);
    }
}
