//! Landau levels in a uniform magnetic field `B ẑ` (Landau gauge,
//! `p_y = 0`), computed on a finite-difference grid in `x`.
//!
//! Spin-0 solves the transverse Klein-Gordon operator directly and is
//! checked against the oscillator-basis oracle. Spin-1 has two independent
//! routes: the reduced first-order operator (its off-diagonal blocks give
//! `E²` as the eigenvalues of a block product) and the factorized
//! fourth-order operator `M_1M_2` on `χ`.

use std::sync::Arc;

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{discretize, Grid, GridContext};
use super::oracle::{gauge_levels, oscillator_levels};
use crate::algebra::{t_matrix, Representation};
use crate::error::{KdpError, Result};
use crate::fields::{make_field, FieldKind, Gauge};
use crate::operators::OperatorSet;
use crate::reduction::{build_o_red, fourth_order_factors, ReducedForm};
use crate::scalar::{q, rat_to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    #[serde(rename = "o_red-eigen")]
    ORedEigen,
    #[serde(rename = "fourth-order")]
    FourthOrder,
    #[serde(rename = "analytic-oracle")]
    AnalyticOracle,
    #[serde(rename = "finite-difference")]
    FiniteDifference,
}

impl Route {
    pub fn tag(self) -> &'static str {
        match self {
            Route::ORedEigen => "o_red-eigen",
            Route::FourthOrder => "fourth-order",
            Route::AnalyticOracle => "analytic-oracle",
            Route::FiniteDifference => "finite-difference",
        }
    }
}

/// One Landau level. `n` counts levels of equal spin projection from the
/// bottom; `est_error` bounds the discretization error in `E²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub spin: u8,
    pub route: Route,
    pub n: usize,
    pub p_z: f64,
    pub spin_projection: i8,
    #[serde(rename = "E2")]
    pub e2: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub est_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LandauParams {
    #[serde(with = "crate::scalar::rational_pair")]
    pub m: Rational,
    #[serde(with = "crate::scalar::rational_pair")]
    pub charge: Rational,
    #[serde(with = "crate::scalar::rational_pair")]
    pub b: Rational,
    #[serde(with = "crate::scalar::rational_pair")]
    pub p_z: Rational,
    /// Highest level index per spin projection.
    pub n_max: usize,
    pub grid_n: usize,
    /// Box width in magnetic lengths `1/√|eB|`.
    pub box_lengths: f64,
    pub order: u32,
}

impl Default for LandauParams {
    fn default() -> Self {
        Self {
            m: q(1, 1),
            charge: q(1, 1),
            b: q(1, 1),
            p_z: q(0, 1),
            n_max: 4,
            grid_n: 512,
            box_lengths: 40.0,
            order: 8,
        }
    }
}

impl LandauParams {
    /// Spin-1 defaults: a weaker field keeps the spin splittings in the
    /// linear regime, and `N = 256` keeps the dual-route solve to seconds.
    pub fn spin1_default() -> Self {
        Self { b: q(1, 10), grid_n: 256, ..Self::default() }
    }

    pub fn eb(&self) -> f64 {
        rat_to_f64(&(self.charge * self.b))
    }

    pub fn validate(&self) -> Result<()> {
        if self.charge * self.b == q(0, 1) {
            return Err(KdpError::InvalidParameter("Landau levels need eB != 0".into()));
        }
        if self.m <= q(0, 1) {
            return Err(KdpError::InvalidParameter("mass must be positive".into()));
        }
        if !(self.box_lengths > 0.0) {
            return Err(KdpError::InvalidParameter("box width must be positive".into()));
        }
        Ok(())
    }

    fn grid(&self, n: usize) -> Result<Grid> {
        Grid::new(n, self.box_lengths / self.eb().abs().sqrt(), self.order)
    }

    fn rest(&self) -> f64 {
        let m = rat_to_f64(&self.m);
        let pz = rat_to_f64(&self.p_z);
        m * m + pz * pz
    }

    /// `E² = m² + p_z² + (2n+1)|eB|`.
    pub fn exact_spin0(&self, n: usize) -> f64 {
        self.rest() + (2 * n + 1) as f64 * self.eb().abs()
    }

    fn richardson(&self) -> f64 {
        2f64.powi(self.order as i32) - 1.0
    }
}

fn level(spin: u8, route: Route, n: usize, p: &LandauParams, s: i8, e2: f64, err: f64) -> Level {
    Level { spin, route, n, p_z: rat_to_f64(&p.p_z), spin_projection: s, e2, e: e2.max(0.0).sqrt(), est_error: err }
}

fn spin0_fd_values(p: &LandauParams, n: usize, eb: f64) -> Result<Vec<f64>> {
    let g = p.grid(n)?;
    let mut h = -g.d2_matrix();
    for (i, &x) in g.x.iter().enumerate() {
        h[(i, i)] += (eb * x) * (eb * x) + p.rest();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev.truncate(p.n_max + 1);
    Ok(ev)
}

/// Spin-0 levels from the transverse Klein-Gordon operator
/// `−∂_x² + (eBx)² + m² + p_z²` on the grid.
pub fn spin0_finite_difference(p: &LandauParams) -> Result<Vec<Level>> {
    p.validate()?;
    let fine = spin0_fd_values(p, p.grid_n, p.eb())?;
    let coarse = spin0_fd_values(p, p.grid_n / 2, p.eb())?;
    Ok(fine
        .iter()
        .zip(&coarse)
        .enumerate()
        .map(|(n, (f, c))| level(0, Route::FiniteDifference, n, p, 0, *f, (f - c).abs() / p.richardson()))
        .collect())
}

/// Spin-0 levels from the oscillator basis (basis frequency `1.25|eB|`,
/// 160 functions), independent of the grid.
pub fn spin0_oracle(p: &LandauParams) -> Result<Vec<Level>> {
    p.validate()?;
    let count = p.n_max + 1;
    let a = oscillator_levels(p.eb(), count, 160, 1.25)?;
    let b = oscillator_levels(p.eb(), count, 120, 1.25)?;
    Ok(a.iter()
        .zip(&b)
        .enumerate()
        .map(|(n, (x, y))| level(0, Route::AnalyticOracle, n, p, 0, x + p.rest(), (x - y).abs()))
        .collect())
}

/// Largest relative difference between spin-0 levels for `B` and `−B`.
pub fn spin0_b_sign_difference(p: &LandauParams) -> Result<f64> {
    p.validate()?;
    let a = spin0_fd_values(p, p.grid_n, p.eb())?;
    let b = spin0_fd_values(p, p.grid_n, -p.eb())?;
    Ok(max_rel(&a, &b))
}

/// Largest relative difference between the transverse spectrum in the
/// Landau and symmetric gauges (2-D oscillator basis), including the rest
/// energy.
pub fn gauge_difference(p: &LandauParams) -> Result<f64> {
    p.validate()?;
    let count = p.n_max + 1;
    let sym = gauge_levels(p.eb(), Gauge::Symmetric, count, 2 * count + 6, 1e-8)?;
    let landau = spin0_fd_values(p, p.grid_n, p.eb())?;
    let sym: Vec<f64> = sym.iter().map(|v| v + p.rest()).collect();
    Ok(max_rel(&sym, &landau))
}

fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| ((x - y) / y).abs()).fold(0.0, f64::max)
}

fn to_c64(m: &crate::ExactMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let z = m.get(i, j);
        Complex64::new(rat_to_f64(&z.re), rat_to_f64(&z.im))
    })
}

fn is_hermitian(a: &DMatrix<Complex64>) -> bool {
    (a - a.adjoint()).norm() <= 1e-9 * a.norm().max(1.0)
}

/// Eigenpairs of `A·B` where some multiple `cA` (`|c| = 1`) is Hermitian
/// positive definite and `B/c` is Hermitian: with `cA = LL†` the problem is
/// the Hermitian `L†(B/c)L`, and eigenvectors are `Lz`.
fn product_eigen(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let phases = [Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0)];
    for c in phases {
        let ca = a * c;
        let bc = b / c;
        if !is_hermitian(&ca) || !is_hermitian(&bc) {
            continue;
        }
        let herm = (&ca + ca.adjoint()) * Complex64::new(0.5, 0.0);
        let Some(chol) = Cholesky::new(herm) else { continue };
        let l = chol.l();
        let core = l.adjoint() * &bc * &l;
        let core = (&core + core.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(core);
        let vectors = &l * &eig.eigenvectors;
        return Ok((eig.eigenvalues.iter().copied().collect(), vectors));
    }
    Err(KdpError::NonConvergence("block product has no Hermitian positive-definite factor".into()))
}

/// `⟨T_3⟩` of a 3-component grid vector stored component-major.
fn t3_expectation(t3: &DMatrix<Complex64>, v: &DVector<Complex64>, n: usize) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        let comp = [v[i], v[n + i], v[2 * n + i]];
        for a in 0..3 {
            den += comp[a].norm_sqr();
            for b in 0..3 {
                num += (comp[a].conj() * t3[(a, b)] * comp[b]).re;
            }
        }
    }
    num / den
}

/// Indices of the lowest `count` eigenpairs per `s = +1, 0, −1`.
fn label_levels(values: &[f64], vectors: &DMatrix<Complex64>, n: usize, count: usize) -> Result<[Vec<usize>; 3]> {
    let t3 = to_c64(&t_matrix(3));
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut out: [Vec<usize>; 3] = Default::default();
    for i in order {
        if out.iter().all(|v| v.len() >= count) {
            break;
        }
        let t = t3_expectation(&t3, &vectors.column(i).into_owned(), n);
        let s = t.round();
        if (t - s).abs() > 0.25 || s.abs() > 1.0 {
            return Err(KdpError::NonConvergence(format!(
                "level E2 = {:.6} has mixed spin projection <T3> = {t:.3}",
                values[i]
            )));
        }
        let slot = &mut out[(1 - s as i64) as usize];
        if slot.len() < count {
            slot.push(i);
        }
    }
    if out.iter().any(|v| v.len() < count) {
        return Err(KdpError::NonConvergence("too few levels resolved on the grid".into()));
    }
    Ok(out)
}

fn spin1_setup(p: &LandauParams) -> Result<(Representation, crate::fields::FieldConfig)> {
    let rep = Representation::spin(1)?;
    let field = make_field(FieldKind::UniformB { b: p.b, gauge: Gauge::Landau }, p.charge)?;
    Ok((rep, field))
}

/// A discretized spin-1 eigenproblem: `E²` values, the `χ` eigenvectors
/// (component-major, 3 blocks of `N`), the label indices, and for route
/// (a) the block `Y` mapping `χ` to `Eζ`.
pub(crate) struct Spin1Solve {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
    pub labels: [Vec<usize>; 3],
    pub chi_to_zeta: Option<DMatrix<Complex64>>,
    pub ctx: Arc<GridContext>,
}

pub(crate) fn spin1_solve(p: &LandauParams, route: Route, n: usize) -> Result<Spin1Solve> {
    let (rep, field) = spin1_setup(p)?;
    let ops = OperatorSet::new(&rep, &field, p.m)?;
    let ctx = Arc::new(GridContext { grid: p.grid(n)?, energy: 0.0, p_y: 0.0, p_z: rat_to_f64(&p.p_z) });
    let chi = [0, 1, 2];
    let (values, vectors, chi_to_zeta) = match route {
        Route::ORedEigen => {
            let o = build_o_red(&ops, ReducedForm::Compact)?.op;
            let x = discretize(&o, &ctx, 10, &chi, &[6, 7, 8]);
            let y = discretize(&o, &ctx, 10, &[6, 7, 8], &chi);
            let (v, w) = product_eigen(&x, &y)?;
            (v, w, Some(y))
        }
        Route::FourthOrder => {
            let (m1, m2) = fourth_order_factors(&ops)?;
            let a = discretize(&m1, &ctx, 3, &chi, &chi);
            let b = discretize(&m2, &ctx, 3, &chi, &chi);
            let (v, w) = product_eigen(&a, &b)?;
            (v, w, None)
        }
        _ => return Err(KdpError::InvalidParameter(format!("route {} is not a spin-1 route", route.tag()))),
    };
    let labels = label_levels(&values, &vectors, n, p.n_max + 1)?;
    Ok(Spin1Solve { values, vectors, labels, chi_to_zeta, ctx })
}

fn spin1_route_values(p: &LandauParams, route: Route, n: usize) -> Result<[Vec<f64>; 3]> {
    let sol = spin1_solve(p, route, n)?;
    Ok(sol.labels.map(|idx| idx.iter().map(|&i| sol.values[i]).collect()))
}

pub(crate) fn spin0_solve(p: &LandauParams, n: usize) -> Result<(Vec<f64>, DMatrix<f64>, Grid)> {
    let g = p.grid(n)?;
    let mut h = -g.d2_matrix();
    for (i, &x) in g.x.iter().enumerate() {
        h[(i, i)] += (p.eb() * x) * (p.eb() * x) + p.rest();
    }
    let eig = SymmetricEigen::new(h);
    Ok((eig.eigenvalues.iter().copied().collect(), eig.eigenvectors, g))
}

/// Spin-1 levels by one route, with a Richardson error estimate from the
/// half-resolution grid.
pub fn spin1_route(p: &LandauParams, route: Route) -> Result<Vec<Level>> {
    p.validate()?;
    let fine = spin1_route_values(p, route, p.grid_n)?;
    let coarse = spin1_route_values(p, route, p.grid_n / 2)?;
    let mut out = Vec::new();
    for (k, s) in [1i8, 0, -1].into_iter().enumerate() {
        for n in 0..=p.n_max {
            let err = (fine[k][n] - coarse[k][n]).abs() / p.richardson();
            out.push(level(1, route, n, p, s, fine[k][n], err));
        }
    }
    Ok(out)
}

/// Largest relative `E²` difference between matching levels of two routes.
pub fn route_disagreement(a: &[Level], b: &[Level]) -> f64 {
    a.iter()
        .filter_map(|x| {
            b.iter()
                .find(|y| y.n == x.n && y.spin_projection == x.spin_projection)
                .map(|y| ((x.e2 - y.e2) / y.e2).abs())
        })
        .fold(0.0, f64::max)
}

/// Spin-1 spectrum from both routes; fails with `RouteDisagreement` if any
/// level differs by more than `tol` (relative).
pub fn landau_spectrum_spin1(p: &LandauParams, tol: f64) -> Result<(Vec<Level>, Vec<Level>)> {
    let a = spin1_route(p, Route::ORedEigen)?;
    let b = spin1_route(p, Route::FourthOrder)?;
    let d = route_disagreement(&a, &b);
    if d > tol {
        return Err(KdpError::RouteDisagreement(format!("max relative difference {d:.3e} exceeds {tol:.1e}")));
    }
    Ok((a, b))
}

/// Spin-0 spectrum: finite differences checked against the oracle.
pub fn landau_spectrum_spin0(p: &LandauParams, tol: f64) -> Result<(Vec<Level>, Vec<Level>)> {
    let fd = spin0_finite_difference(p)?;
    let oracle = spin0_oracle(p)?;
    let d = route_disagreement(&fd, &oracle);
    if d > tol {
        return Err(KdpError::RouteDisagreement(format!("max relative difference {d:.3e} exceeds {tol:.1e}")));
    }
    Ok((fd, oracle))
}

/// Grid-refinement study at `N, 2N, 4N` points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub spin: u8,
    pub route: Route,
    pub order: u32,
    pub grids: [usize; 3],
    /// `log2(|E_N − E_2N| / |E_2N − E_4N|)` per level.
    pub per_level: Vec<f64>,
    /// The same ratio with differences summed over all levels, which is
    /// robust against levels whose error happens to change sign.
    pub pooled: f64,
}

pub fn convergence_study(p: &LandauParams, spin: u8, route: Route, n0: usize) -> Result<ConvergenceStudy> {
    p.validate()?;
    let grids = [n0, 2 * n0, 4 * n0];
    let runs: Vec<Vec<f64>> = grids
        .iter()
        .map(|&n| match spin {
            0 => spin0_fd_values(p, n, p.eb()),
            _ => spin1_route_values(p, route, n).map(|v| v.concat()),
        })
        .collect::<Result<_>>()?;
    let d1: Vec<f64> = (0..runs[0].len()).map(|i| (runs[0][i] - runs[1][i]).abs()).collect();
    let d2: Vec<f64> = (0..runs[0].len()).map(|i| (runs[1][i] - runs[2][i]).abs()).collect();
    Ok(ConvergenceStudy {
        spin,
        route,
        order: p.order,
        grids,
        per_level: d1.iter().zip(&d2).map(|(a, b)| (a / b).log2()).collect(),
        pooled: (d1.iter().sum::<f64>() / d2.iter().sum::<f64>()).log2(),
    })
}

/// Shifts of the `s = ±1` levels from the `s = 0` level of equal `n`,
/// `(δ_+, δ_−)` per `n`.
pub fn spin_splittings(levels: &[Level]) -> Vec<(f64, f64)> {
    let get = |s: i8, n: usize| levels.iter().find(|l| l.spin_projection == s && l.n == n).map(|l| l.e2);
    (0..)
        .map_while(|n| Some((get(1, n)? - get(0, n)?, get(-1, n)? - get(0, n)?)))
        .collect()
}

/// `|δ_+ + δ_−| / |δ_+ − δ_−|` per `n`: zero when the `s = ±1` shifts are
/// exactly opposite.
pub fn splitting_asymmetry(levels: &[Level]) -> Vec<f64> {
    spin_splittings(levels).iter().map(|(up, dn)| ((up + dn) / (up - dn)).abs()).collect()
}

/// Largest relative difference between `E²(s, n)` at `B` and `E²(−s, n)`
/// at `−B` (spin-1, one route).
pub fn spin1_b_sign_mirror(p: &LandauParams, route: Route) -> Result<f64> {
    p.validate()?;
    let plus = spin1_route_values(p, route, p.grid_n)?;
    let flipped = LandauParams { b: -p.b, ..p.clone() };
    let minus = spin1_route_values(&flipped, route, p.grid_n)?;
    Ok((0..3).map(|k| max_rel(&plus[k], &minus[2 - k])).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin0_fd_matches_closed_form() {
        let p = LandauParams::default();
        let fd = spin0_finite_difference(&p).unwrap();
        for l in &fd {
            let exact = p.exact_spin0(l.n);
            assert!(((l.e2 - exact) / exact).abs() < 1e-6, "n={} {} vs {exact}", l.n, l.e2);
            assert!(l.est_error < 1e-6);
        }
    }

    #[test]
    fn zero_field_is_rejected() {
        let p = LandauParams { b: q(0, 1), ..Default::default() };
        assert!(matches!(spin0_finite_difference(&p), Err(KdpError::InvalidParameter(_))));
    }

    #[test]
    fn route_tags_serialize() {
        assert_eq!(serde_json::to_string(&Route::ORedEigen).unwrap(), "\"o_red-eigen\"");
    }
}
