//! The KDP operators in a given field: Λ, H, the constraints, Ω₁, d₁, d₂,
//! and the right-hand sides of the commutator identities.

use crate::algebra::{metric, Representation};
use crate::error::{KdpError, Result};
use crate::exactmath::CoordPolynomial;
use crate::fields::FieldConfig;
use crate::scalar::{gi, gr, GaussianRational, Rational};
use crate::ExactMatrix;

use super::diff::{sum, DiffOperator, PolyMatrix};

/// Representation, field and mass bundled for operator construction.
#[derive(Clone, Debug)]
pub struct OperatorSet<'a> {
    pub rep: &'a Representation,
    pub field: &'a FieldConfig,
    pub m: Rational,
}

fn g(mu: usize, nu: usize) -> GaussianRational {
    gi(metric(mu, nu), 0)
}

impl<'a> OperatorSet<'a> {
    pub fn new(rep: &'a Representation, field: &'a FieldConfig, m: Rational) -> Result<Self> {
        if m <= Rational::from_integer(0) {
            return Err(KdpError::InvalidParameter(format!("mass must be positive, got {m}")));
        }
        Ok(Self { rep, field, m })
    }

    fn mass(&self) -> GaussianRational {
        gr(self.m)
    }

    fn inv_m(&self) -> GaussianRational {
        gr(Rational::from_integer(1) / self.m)
    }

    /// `ie/2m`.
    fn ie_2m(&self) -> GaussianRational {
        gi(0, 1) * self.field.e() / (gi(2, 0) * self.mass())
    }

    fn b(&self, mu: usize) -> &ExactMatrix {
        &self.rep.beta[mu]
    }

    fn konst(&self, m: ExactMatrix) -> DiffOperator {
        DiffOperator::Const(m)
    }

    /// `D^μ`.
    pub fn d(&self, mu: usize) -> DiffOperator {
        DiffOperator::Covariant { mu, coupling: self.field.coupling(mu) }
    }

    /// `D_μ`.
    pub fn d_lower(&self, mu: usize) -> DiffOperator {
        self.d(mu).scale(g(mu, mu))
    }

    /// `D^α D_α`.
    pub fn dd(&self) -> DiffOperator {
        sum((0..4).map(|a| (&self.d(a) * &self.d(a)).scale(g(a, a))))
    }

    /// `D^i D_i` (spatial part only).
    pub fn dd_spatial(&self) -> DiffOperator {
        sum((1..4).map(|i| (&self.d(i) * &self.d(i)).scale(gi(-1, 0))))
    }

    /// `F^{μν}` as a scalar multiplier.
    fn f(&self, mu: usize, nu: usize) -> &CoordPolynomial {
        &self.field.f[mu][nu]
    }

    /// `Λ = β_μ D^μ + m`.
    pub fn lambda(&self) -> DiffOperator {
        let mut terms: Vec<DiffOperator> =
            (0..4).map(|mu| &self.konst(self.b(mu).clone()) * &self.d(mu)).collect();
        terms.push(DiffOperator::constant(self.mass()));
        sum(terms)
    }

    /// `(ie/2m) F^{μρ}(β_ρβ_0β_μ + β_ρ g_μ0)` as a matrix multiplier.
    pub fn troublesome_matrix(&self) -> PolyMatrix {
        let mut pm = PolyMatrix::zero(self.rep.dim);
        for mu in 0..4 {
            for rho in 0..4 {
                let f = self.f(mu, rho);
                if f.is_zero() {
                    continue;
                }
                let m = &(&(self.b(rho) * self.b(0)) * self.b(mu)) + &self.b(rho).scale(&g(mu, 0));
                pm.add_matrix_poly(&m, f);
            }
        }
        pm.scale(&self.ie_2m())
    }

    pub fn troublesome_term(&self) -> DiffOperator {
        DiffOperator::Poly(self.troublesome_matrix())
    }

    /// `H` without the troublesome term.
    pub fn hamilton_minimal(&self) -> DiffOperator {
        let mut terms: Vec<DiffOperator> = (1..4)
            .map(|i| &self.d(i) * &self.konst(self.b(i).commutator(self.b(0))))
            .collect();
        terms.push(self.konst(self.b(0).scale(&-self.mass())));
        terms.push(DiffOperator::Scalar(self.field.coupling(0)));
        sum(terms)
    }

    /// `H = D^i[β_i, β_0] − β_0 m + eA_0 + troublesome term`.
    pub fn hamilton(&self) -> DiffOperator {
        &self.hamilton_minimal() + &self.troublesome_term()
    }

    /// `C = β_i β_0² D^i + m(1 − β_0²)`.
    pub fn constraint(&self) -> DiffOperator {
        let b0sq = self.rep.beta0_sq();
        let mut terms: Vec<DiffOperator> =
            (1..4).map(|i| &self.konst(self.b(i) * &b0sq) * &self.d(i)).collect();
        terms.push(self.konst((&self.rep.identity() - &b0sq).scale(&self.mass())));
        sum(terms)
    }

    /// `G_ν = F^{μρ}(β_ρβ_νβ_μ + β_ρ g_μν)`.
    fn g_nu(&self, nu: usize) -> PolyMatrix {
        let mut pm = PolyMatrix::zero(self.rep.dim);
        for mu in 0..4 {
            for rho in 0..4 {
                let f = self.f(mu, rho);
                if f.is_zero() {
                    continue;
                }
                let m = &(&(self.b(rho) * self.b(nu)) * self.b(mu)) + &self.b(rho).scale(&g(mu, nu));
                pm.add_matrix_poly(&m, f);
            }
        }
        pm
    }

    /// `(β_ρβ_νβ_μ + β_ρ g_μν)(∂^ν F^{μρ})`: the derivative-on-F part of
    /// the last Ω₁ term, for the spin-0 vanishing statement.
    pub fn omega1_df_part(&self) -> PolyMatrix {
        let mut pm = PolyMatrix::zero(self.rep.dim);
        for nu in 0..4 {
            for mu in 0..4 {
                for rho in 0..4 {
                    let df = self.field.df(nu, mu, rho);
                    if df.is_zero() {
                        continue;
                    }
                    let m = &(&(self.b(rho) * self.b(nu)) * self.b(mu)) + &self.b(rho).scale(&g(mu, nu));
                    pm.add_matrix_poly(&m, &df);
                }
            }
        }
        pm
    }

    /// `F^{νμ} S_νμ` as a matrix multiplier.
    pub fn fs(&self) -> PolyMatrix {
        let mut pm = PolyMatrix::zero(self.rep.dim);
        for nu in 0..4 {
            for mu in 0..4 {
                pm.add_matrix_poly(&self.rep.s_lower(nu, mu), self.f(nu, mu));
            }
        }
        pm
    }

    /// `Ω₁ = D^αD_α − m² − (ie/2)F^{νμ}S_νμ − (ie/2m)(β_ρβ_νβ_μ + β_ρ g_μν) D^ν F^{μρ}`,
    /// with `D^ν` acting on the product `F^{μρ} ψ`.
    pub fn omega1(&self) -> DiffOperator {
        let ie_2 = gi(0, 1) * self.field.e() / gi(2, 0);
        let mut terms = vec![
            self.dd(),
            DiffOperator::constant(-(self.mass() * self.mass())),
            DiffOperator::Poly(self.fs().scale(&-ie_2)),
        ];
        for nu in 0..4 {
            let gn = self.g_nu(nu);
            if gn.is_zero() {
                continue;
            }
            terms.push((&self.d(nu) * &DiffOperator::Poly(gn)).scale(-self.ie_2m()));
        }
        sum(terms)
    }

    /// `d₁ = (1/m)[D^αD_α − m²] + β_ν D^ν − (1/m) β_σβ_δ D^δ D^σ`.
    pub fn d1(&self) -> DiffOperator {
        let inv_m = self.inv_m();
        let mut terms = vec![
            self.dd().scale(inv_m),
            DiffOperator::constant(-self.mass()),
        ];
        for nu in 0..4 {
            terms.push(&self.konst(self.b(nu).clone()) * &self.d(nu));
        }
        for s in 0..4 {
            for d in 0..4 {
                let m = (self.b(s) * self.b(d)).scale(&-inv_m);
                terms.push(&(&self.konst(m) * &self.d(d)) * &self.d(s));
            }
        }
        sum(terms)
    }

    /// `(ie/2m) S_ρσ F^{ρσ}` as an operator.
    pub fn spin_field_shift(&self) -> DiffOperator {
        DiffOperator::Poly(self.fs().scale(&self.ie_2m()))
    }

    /// `d₂ = d₁ + (ie/2m) S_δσ F^{δσ} − (1/m) D^αD_α`.
    pub fn d2(&self) -> DiffOperator {
        &(&self.d1() + &self.spin_field_shift()) - &self.dd().scale(self.inv_m())
    }

    /// `(e/2m) β_σβ_ρβ_δ (∂^ρ F^{δσ})` as a matrix multiplier.
    pub fn bbb_df(&self) -> PolyMatrix {
        let mut pm = PolyMatrix::zero(self.rep.dim);
        for s in 0..4 {
            for r in 0..4 {
                for d in 0..4 {
                    let df = self.field.df(r, d, s);
                    if !df.is_zero() {
                        pm.add_matrix_poly(&(&(self.b(s) * self.b(r)) * self.b(d)), &df);
                    }
                }
            }
        }
        pm.scale(&(self.field.e() / (gi(2, 0) * self.mass())))
    }

    /// `F^{ρσ} β_σ D_ρ`, F multiplying after the derivative.
    pub fn f_beta_d(&self) -> DiffOperator {
        let mut terms = Vec::new();
        for r in 0..4 {
            for s in 0..4 {
                let f = self.f(r, s);
                if f.is_zero() {
                    continue;
                }
                let pm = PolyMatrix::from_matrix_poly(self.b(s), f);
                terms.push(&DiffOperator::Poly(pm) * &self.d_lower(r));
            }
        }
        sum(terms)
    }

    /// Printed right-hand side of `[d₁, Λ]`:
    /// `(e/2m) β_σβ_ρβ_δ (∂^ρF^{δσ}) − (ie/m) β_σ F^{ρσ} D_ρ`.
    pub fn d1_lambda_commutator_rhs(&self) -> DiffOperator {
        let ie_m = gi(0, 1) * self.field.e() / self.mass();
        &DiffOperator::Poly(self.bbb_df()) - &self.f_beta_d().scale(ie_m)
    }

    /// Printed shifted pair: `d₁' = d₁ + (ie/2m) S_ρσ F^{ρσ}` and
    /// `Ω₁' = Ω₁ − (ie/2m) β_δβ_σβ_μ F^{σδ} D^μ + (ie/2) F^{μν} S_μν`.
    pub fn primed_factorization_pair(&self) -> (DiffOperator, DiffOperator) {
        let d1p = &self.d1() + &self.spin_field_shift();
        let omega1p = &(&self.omega1() - &self.bbb_fd_term().scale(self.ie_2m()))
            + &DiffOperator::Poly(self.fs().scale(&(gi(0, 1) * self.field.e() / gi(2, 0))));
        (d1p, omega1p)
    }

    /// `Ω₁'` as it follows from `d₁'Λ` directly: the `βββ F D` term carries
    /// `ie/m`, twice the printed coefficient.
    pub fn omega1_primed_derived(&self) -> DiffOperator {
        let ie_m = gi(0, 1) * self.field.e() / self.mass();
        &(&self.omega1() - &self.bbb_fd_term().scale(ie_m))
            + &DiffOperator::Poly(self.fs().scale(&(gi(0, 1) * self.field.e() / gi(2, 0))))
    }

    /// `β_δβ_σβ_μ F^{σδ} D^μ`.
    pub fn bbb_fd_term(&self) -> DiffOperator {
        let mut terms = Vec::new();
        for mu in 0..4 {
            let mut pm = PolyMatrix::zero(self.rep.dim);
            for d in 0..4 {
                for s in 0..4 {
                    pm.add_matrix_poly(&(&(self.b(d) * self.b(s)) * self.b(mu)), self.f(s, d));
                }
            }
            if !pm.is_zero() {
                terms.push(&DiffOperator::Poly(pm) * &self.d(mu));
            }
        }
        sum(terms)
    }

    /// Printed right-hand sides of the two commutators
    /// `[D^αD_α/m, Λ] = −2(ie/m) F^{δρ} β_ρ D_δ` and
    /// `[(ie/2m) S F, Λ] = −(ie/m) F^{ρσ}β_σ D_ρ − (e/2m) β_σβ_ρβ_δ (∂^ρF^{δσ})`.
    pub fn d2_third_order_rhs(&self) -> (DiffOperator, DiffOperator) {
        let ie_m = gi(0, 1) * self.field.e() / self.mass();
        let first = self.f_beta_d().scale(gi(-2, 0) * ie_m);
        let second = &self.f_beta_d().scale(-ie_m) - &DiffOperator::Poly(self.bbb_df());
        (first, second)
    }

    /// Printed `Ω₂`, from `−Ω₂ = m² + (ie/2m)(β_σβ_δβ_μ − β_σ g_δμ)F^{μσ}D^δ
    /// − (ie/2m) β_μ S_δσ D^μ F^{δσ} + (1/m) β_μ D^μ D^αD_α`.
    /// In the third term `D^μ` acts on the product `F ψ`.
    pub fn omega2_printed(&self) -> DiffOperator {
        let mut terms = vec![DiffOperator::constant(self.mass() * self.mass())];
        for de in 0..4 {
            let mut pm = PolyMatrix::zero(self.rep.dim);
            for s in 0..4 {
                for mu in 0..4 {
                    let m = &(&(self.b(s) * self.b(de)) * self.b(mu)) - &self.b(s).scale(&g(de, mu));
                    pm.add_matrix_poly(&m, self.f(mu, s));
                }
            }
            if !pm.is_zero() {
                terms.push((&DiffOperator::Poly(pm) * &self.d(de)).scale(self.ie_2m()));
            }
        }
        for mu in 0..4 {
            let mut pm = PolyMatrix::zero(self.rep.dim);
            for de in 0..4 {
                for s in 0..4 {
                    pm.add_matrix_poly(&(self.b(mu) * &self.rep.s_lower(de, s)), self.f(de, s));
                }
            }
            if !pm.is_zero() {
                terms.push((&self.d(mu) * &DiffOperator::Poly(pm)).scale(-self.ie_2m()));
            }
        }
        for mu in 0..4 {
            terms.push((&(&self.konst(self.b(mu).clone()) * &self.d(mu)) * &self.dd()).scale(self.inv_m()));
        }
        -sum(terms)
    }

    /// `D_νψ` rewritten through the constraint, for fixed `ν`:
    /// `β_ρβ_ν D^ρ + (ie/2m) F^{μρ}(β_ρβ_νβ_μ + β_ρ g_μν)`.
    pub fn derivative_via_constraint(&self, nu: usize) -> DiffOperator {
        let mut terms: Vec<DiffOperator> =
            (0..4).map(|rho| &self.konst(self.b(rho) * self.b(nu)) * &self.d(rho)).collect();
        terms.push(DiffOperator::Poly(self.g_nu(nu).scale(&self.ie_2m())));
        sum(terms)
    }

    /// The two sides of the first equality of the e² rewriting:
    /// `(ie/2m)(β_ρβ_νβ_μ − β_ρ g_μν) F^{μρ} D^ν` and
    /// `(e²/4m²) F^{αγ}F^{μρ}(β_ρβ_γβ_μβ_α + β_ρβ_γ g_μα)`.
    pub fn e2_rewrite_sides(&self) -> (DiffOperator, DiffOperator) {
        let mut lhs = Vec::new();
        for nu in 0..4 {
            let mut pm = PolyMatrix::zero(self.rep.dim);
            for mu in 0..4 {
                for rho in 0..4 {
                    let m = &(&(self.b(rho) * self.b(nu)) * self.b(mu)) - &self.b(rho).scale(&g(mu, nu));
                    pm.add_matrix_poly(&m, self.f(mu, rho));
                }
            }
            if !pm.is_zero() {
                lhs.push((&DiffOperator::Poly(pm) * &self.d(nu)).scale(self.ie_2m()));
            }
        }
        let mut pm = PolyMatrix::zero(self.rep.dim);
        for al in 0..4 {
            for ga in 0..4 {
                for mu in 0..4 {
                    for rho in 0..4 {
                        let ff = self.f(al, ga) * self.f(mu, rho);
                        if ff.is_zero() {
                            continue;
                        }
                        let w = &(&(&(self.b(rho) * self.b(ga)) * self.b(mu)) * self.b(al))
                            + &(self.b(rho) * self.b(ga)).scale(&g(mu, al));
                        pm.add_matrix_poly(&w, &ff);
                    }
                }
            }
        }
        let e2_4m2 = self.field.e() * self.field.e() / (gi(4, 0) * self.mass() * self.mass());
        (sum(lhs), DiffOperator::Poly(pm.scale(&e2_4m2)))
    }
}
