//! Residuals of the full KDP system on lifted Landau eigenstates.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{GridContext, GridFunction};
use super::landau::{spin0_solve, spin1_solve, LandauParams, Route};
use crate::algebra::Representation;
use crate::error::{KdpError, Result};
use crate::fields::{make_field, FieldKind, Gauge};
use crate::operators::{DiffOperator, OperatorSet, Wave, WaveComponent};
use crate::reduction::{spin0_lift, spin1_lift};
use crate::scalar::rat_to_f64;

/// The checked relations as `(name, residual operator, mass dimension)`:
/// `Λψ`, `Cψ`, `D_νψ` against its `β_ρβ_νD^ρ + (ie/2m)F…` form, and the
/// first equality of the `e²` rewriting.
fn relations(ops: &OperatorSet) -> Vec<(&'static str, DiffOperator, i32)> {
    let mut out = vec![("lambda", ops.lambda(), 1), ("constraint", ops.constraint(), 1)];
    for nu in 0..4 {
        let name = ["3.3[nu=0]", "3.3[nu=1]", "3.3[nu=2]", "3.3[nu=3]"][nu];
        out.push((name, &ops.d_lower(nu) - &ops.derivative_via_constraint(nu), 1));
    }
    let (lhs, rhs) = ops.e2_rewrite_sides();
    out.push(("3.7-first", &lhs - &rhs, 2));
    out
}

/// Names of relations whose residual is not exactly zero on `psi`; empty
/// for an exact solution of the KDP equation.
pub fn exact_residual_failures<W: WaveComponent>(ops: &OperatorSet, psi: &[W]) -> Vec<&'static str> {
    relations(ops)
        .into_iter()
        .filter(|(_, op, _)| !op.apply(psi).iter().all(W::is_zero))
        .map(|(name, _, _)| name)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub name: String,
    /// `‖r‖ / ‖ψ‖`.
    pub absolute: f64,
    /// `‖r‖ / (m^k ‖ψ‖)` with `k` the mass dimension of the relation.
    pub relative: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub spin: u8,
    pub n: usize,
    pub spin_projection: i8,
    #[serde(rename = "E2")]
    pub e2: f64,
    pub tolerance: f64,
    pub residuals: Vec<Residual>,
    pub passed: bool,
}

fn wave_norm(w: &[GridFunction]) -> f64 {
    w.iter().map(|c| c.norm().powi(2)).sum::<f64>().sqrt()
}

fn measure(ops: &OperatorSet, psi: &[GridFunction], extra: Vec<Residual>, tol: f64) -> (Vec<Residual>, bool) {
    let norm = wave_norm(psi);
    let m = rat_to_f64(&ops.m);
    let mut out = extra;
    for (name, op, dim) in relations(ops) {
        let r = wave_norm(&op.apply(psi)) / norm;
        out.push(Residual { name: name.into(), absolute: r, relative: r / m.powi(dim) });
    }
    let passed = out.iter().all(|r| r.relative <= tol);
    (out, passed)
}

fn column(ctx: &Arc<GridContext>, v: DMatrix<Complex64>) -> GridFunction {
    GridFunction::new(ctx.clone(), v)
}

fn with_energy(ctx: &GridContext, energy: f64) -> Arc<GridContext> {
    Arc::new(GridContext { energy, ..ctx.clone() })
}

/// Lifts the spin-0 level `n` to the five-component KDP spinor and measures
/// the Klein-Gordon residual plus all relations.
pub fn check_residuals_spin0(p: &LandauParams, n: usize, tol: f64) -> Result<ResidualReport> {
    let mut all = residuals_spin0(p, &[n], tol)?;
    Ok(all.remove(0))
}

/// [`check_residuals_spin0`] for several levels, sharing one solve.
pub fn residuals_spin0(p: &LandauParams, levels: &[usize], tol: f64) -> Result<Vec<ResidualReport>> {
    p.validate()?;
    let rep = Representation::spin(0)?;
    let field = make_field(FieldKind::UniformB { b: p.b, gauge: Gauge::Landau }, p.charge)?;
    let ops = OperatorSet::new(&rep, &field, p.m)?;
    let (values, vectors, grid) = spin0_solve(p, p.grid_n)?;
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let m = rat_to_f64(&p.m);
    let kg_op = &ops.dd() - &DiffOperator::constant(crate::scalar::gr(p.m * p.m));
    let mut out = Vec::new();
    for &n in levels {
        let idx = *order.get(n).ok_or_else(|| KdpError::InvalidParameter(format!("level {n} not resolved")))?;
        let e2 = values[idx];
        let ctx = Arc::new(GridContext { grid: grid.clone(), energy: e2.sqrt(), p_y: 0.0, p_z: rat_to_f64(&p.p_z) });
        let phi = column(
            &ctx,
            DMatrix::from_iterator(vectors.nrows(), 1, vectors.column(idx).iter().map(|&x| Complex64::new(x, 0.0))),
        );
        let kg = kg_op.apply(std::slice::from_ref(&phi));
        let kg_res = Residual {
            name: "klein-gordon".into(),
            absolute: kg[0].norm() / phi.norm(),
            relative: kg[0].norm() / (m * m * phi.norm()),
        };
        let psi = spin0_lift(&ops, &phi);
        let (residuals, passed) = measure(&ops, &psi, vec![kg_res], tol);
        out.push(ResidualReport { spin: 0, n, spin_projection: 0, e2, tolerance: tol, residuals, passed });
    }
    Ok(out)
}

/// Lifts the spin-1 level `(s, n)` of the reduced-operator route:
/// `ζ = Yχ/E`, then the remaining four components from the constraints.
pub fn check_residuals_spin1(p: &LandauParams, s: i8, n: usize, tol: f64) -> Result<ResidualReport> {
    let mut all = residuals_spin1(p, &[(s, n)], tol)?;
    Ok(all.remove(0))
}

/// [`check_residuals_spin1`] for several `(s, n)` levels, sharing one solve.
pub fn residuals_spin1(p: &LandauParams, levels: &[(i8, usize)], tol: f64) -> Result<Vec<ResidualReport>> {
    if let Some((s, _)) = levels.iter().find(|(s, _)| !(-1..=1).contains(s)) {
        return Err(KdpError::InvalidParameter(format!("spin projection {s} outside -1..=1")));
    }
    let sol = spin1_solve(p, Route::ORedEigen, p.grid_n)?;
    let rep = Representation::spin(1)?;
    let field = make_field(FieldKind::UniformB { b: p.b, gauge: Gauge::Landau }, p.charge)?;
    let ops = OperatorSet::new(&rep, &field, p.m)?;
    let y = sol.chi_to_zeta.as_ref().expect("reduced-operator route keeps Y");
    let mut out = Vec::new();
    for &(s, n) in levels {
        let idx = *sol.labels[(1 - s) as usize]
            .get(n)
            .ok_or_else(|| KdpError::InvalidParameter(format!("level {n} not resolved")))?;
        let e2 = sol.values[idx];
        let energy = e2.sqrt();
        let ctx = with_energy(&sol.ctx, energy);
        let big_n = ctx.grid.n;
        let chi = sol.vectors.column(idx).into_owned();
        let zeta = (y * &chi) / Complex64::new(energy, 0.0);
        let mut reduced: Wave<GridFunction> = (0..10).map(|_| GridFunction::zero(ctx.clone(), 1)).collect();
        for k in 0..3 {
            reduced[k] = column(&ctx, DMatrix::from_column_slice(big_n, 1, &chi.as_slice()[k * big_n..(k + 1) * big_n]));
            reduced[6 + k] =
                column(&ctx, DMatrix::from_column_slice(big_n, 1, &zeta.as_slice()[k * big_n..(k + 1) * big_n]));
        }
        let psi = spin1_lift(&ops, &reduced)?;
        let (residuals, passed) = measure(&ops, &psi, Vec::new(), tol);
        out.push(ResidualReport { spin: 1, n, spin_projection: s, e2, tolerance: tol, residuals, passed });
    }
    Ok(out)
}
