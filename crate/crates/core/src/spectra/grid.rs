//! Uniform transverse grid, central finite-difference stencils, and a
//! grid-sampled wave component so the exact operator trees can be
//! instantiated numerically.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{KdpError, Result};
use crate::exactmath::CoordPolynomial;
use crate::operators::{DiffOperator, WaveComponent};
use crate::scalar::{rat_to_f64, GaussianRational};

/// Central-difference coefficients `c_1..c_p/2` of `d/dx` and `c_0..c_p/2`
/// of `d²/dx²`.
fn stencil(order: u32) -> Result<(&'static [f64], &'static [f64])> {
    Ok(match order {
        2 => (&[1.0 / 2.0], &[-2.0, 1.0]),
        4 => (&[2.0 / 3.0, -1.0 / 12.0], &[-5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0]),
        6 => (&[3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0], &[-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0]),
        8 => (
            &[4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0],
            &[-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0],
        ),
        o => return Err(KdpError::InvalidParameter(format!("finite-difference order {o} not in {{2,4,6,8}}"))),
    })
}

/// `n` interior points on `(−L/2, L/2)` with Dirichlet walls.
#[derive(Clone, Debug)]
pub struct Grid {
    pub n: usize,
    pub length: f64,
    pub h: f64,
    pub order: u32,
    pub x: Vec<f64>,
    d1: &'static [f64],
    d2: &'static [f64],
}

impl Grid {
    pub fn new(n: usize, length: f64, order: u32) -> Result<Self> {
        if n < 8 || !(length > 0.0) {
            return Err(KdpError::InvalidParameter(format!("grid needs n >= 8 and L > 0, got n={n}, L={length}")));
        }
        let (d1, d2) = stencil(order)?;
        let h = length / (n + 1) as f64;
        let x = (0..n).map(|j| -length / 2.0 + h * (j + 1) as f64).collect();
        Ok(Self { n, length, h, order, x, d1, d2 })
    }

    fn banded(&self, v: &DMatrix<Complex64>, coeffs: &[f64], odd: bool, scale: f64) -> DMatrix<Complex64> {
        let n = self.n;
        let mut out = DMatrix::zeros(n, v.ncols());
        for c in 0..v.ncols() {
            for i in 0..n {
                let mut acc = if odd { Complex64::new(0.0, 0.0) } else { v[(i, c)] * coeffs[0] };
                let start = if odd { 0 } else { 1 };
                for (k, &w) in coeffs.iter().enumerate().skip(start) {
                    let off = if odd { k + 1 } else { k };
                    let up = if i + off < n { v[(i + off, c)] } else { Complex64::new(0.0, 0.0) };
                    let dn = if i >= off { v[(i - off, c)] } else { Complex64::new(0.0, 0.0) };
                    acc += if odd { (up - dn) * w } else { (up + dn) * w };
                }
                out[(i, c)] = acc * scale;
            }
        }
        out
    }

    /// `d/dx` applied column-wise.
    pub fn d1(&self, v: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        self.banded(v, self.d1, true, 1.0 / self.h)
    }

    /// `d²/dx²` applied column-wise.
    pub fn d2(&self, v: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        self.banded(v, self.d2, false, 1.0 / (self.h * self.h))
    }

    pub fn d2_matrix(&self) -> DMatrix<f64> {
        let id = DMatrix::<Complex64>::identity(self.n, self.n);
        self.d2(&id).map(|z| z.re)
    }
}

/// Separated dependence `exp(i(p_y y + p_z z − E t))` shared by all grid
/// functions of one solve.
#[derive(Clone, Debug)]
pub struct GridContext {
    pub grid: Grid,
    pub energy: f64,
    pub p_y: f64,
    pub p_z: f64,
}

/// Sampled function of `x` (one column per sample vector, so an identity
/// block yields the discretized operator) times the separated exponential.
/// Polynomial multipliers are evaluated at `t = y = z = 0`, which is exact
/// for coefficients depending on `x` only.
#[derive(Clone, Debug)]
pub struct GridFunction {
    pub ctx: Arc<GridContext>,
    pub cols: usize,
    pub values: Option<DMatrix<Complex64>>,
}

impl GridFunction {
    pub fn new(ctx: Arc<GridContext>, values: DMatrix<Complex64>) -> Self {
        let cols = values.ncols();
        Self { ctx, cols, values: Some(values) }
    }

    pub fn zero(ctx: Arc<GridContext>, cols: usize) -> Self {
        Self { ctx, cols, values: None }
    }

    pub fn dense(&self) -> DMatrix<Complex64> {
        self.values.clone().unwrap_or_else(|| DMatrix::zeros(self.ctx.grid.n, self.cols))
    }

    /// Discrete `L²` norm with measure `h`.
    pub fn norm(&self) -> f64 {
        self.values.as_ref().map_or(0.0, |v| (v.norm_squared() * self.ctx.grid.h).sqrt())
    }

    fn map_values(&self, f: impl FnOnce(&DMatrix<Complex64>) -> DMatrix<Complex64>) -> Self {
        match &self.values {
            None => self.clone(),
            Some(v) => Self { ctx: self.ctx.clone(), cols: self.cols, values: Some(f(v)) },
        }
    }
}

fn c64(z: &GaussianRational) -> Complex64 {
    Complex64::new(rat_to_f64(&z.re), rat_to_f64(&z.im))
}

/// True if no term of `p` involves `t`, `y` or `z`.
pub fn depends_on_x_only(p: &CoordPolynomial) -> bool {
    p.terms().all(|(e, _)| e[0] == 0 && e[2] == 0 && e[3] == 0)
}

impl WaveComponent for GridFunction {
    fn zero_like(&self) -> Self {
        Self::zero(self.ctx.clone(), self.cols)
    }
    fn is_zero(&self) -> bool {
        self.values.is_none()
    }
    fn add(&self, other: &Self) -> Self {
        match (&self.values, &other.values) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some(a), Some(b)) => Self { ctx: self.ctx.clone(), cols: self.cols, values: Some(a + b) },
        }
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        let z = c64(c);
        if z == Complex64::new(0.0, 0.0) {
            return self.zero_like();
        }
        self.map_values(|v| v * z)
    }
    fn mul_poly(&self, p: &CoordPolynomial) -> Self {
        if p.is_zero() {
            return self.zero_like();
        }
        let x = &self.ctx.grid.x;
        let vals: Vec<Complex64> = x.iter().map(|&xi| p.eval_f64(&[0.0, xi, 0.0, 0.0])).collect();
        self.map_values(|v| {
            let mut out = v.clone();
            for (i, f) in vals.iter().enumerate() {
                for c in 0..out.ncols() {
                    out[(i, c)] *= f;
                }
            }
            out
        })
    }
    fn partial(&self, axis: usize) -> Self {
        let i = Complex64::new(0.0, 1.0);
        match axis {
            0 => self.map_values(|v| v * (-i * self.ctx.energy)),
            1 => self.map_values(|v| self.ctx.grid.d1(v)),
            2 if self.ctx.p_y == 0.0 => self.zero_like(),
            2 => self.map_values(|v| v * (i * self.ctx.p_y)),
            3 if self.ctx.p_z == 0.0 => self.zero_like(),
            3 => self.map_values(|v| v * (i * self.ctx.p_z)),
            _ => panic!("axis {axis} out of range"),
        }
    }
    fn second_partial(&self, axis: usize) -> Self {
        let c = &self.ctx;
        match axis {
            0 => self.map_values(|v| v * Complex64::new(-c.energy * c.energy, 0.0)),
            1 => self.map_values(|v| c.grid.d2(v)),
            2 => self.map_values(|v| v * Complex64::new(-c.p_y * c.p_y, 0.0)),
            3 => self.map_values(|v| v * Complex64::new(-c.p_z * c.p_z, 0.0)),
            _ => panic!("axis {axis} out of range"),
        }
    }
    fn render(&self) -> String {
        format!("grid function, norm {:.3e}", self.norm())
    }
}

/// Dense matrix of `op` on the grid, restricted to the given output rows and
/// input columns (component indices).
pub fn discretize(op: &DiffOperator, ctx: &Arc<GridContext>, dim: usize, rows: &[usize], cols: &[usize]) -> DMatrix<Complex64> {
    let n = ctx.grid.n;
    let mut out = DMatrix::zeros(rows.len() * n, cols.len() * n);
    for (cj, &c) in cols.iter().enumerate() {
        let mut wave: Vec<GridFunction> = (0..dim).map(|_| GridFunction::zero(ctx.clone(), n)).collect();
        wave[c] = GridFunction::new(ctx.clone(), DMatrix::identity(n, n));
        let res = op.apply(&wave);
        for (ri, &r) in rows.iter().enumerate() {
            if let Some(v) = &res[r].values {
                out.view_mut((ri * n, cj * n), (n, n)).copy_from(v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(g: &Grid, f: impl Fn(f64) -> f64) -> DMatrix<Complex64> {
        DMatrix::from_iterator(g.n, 1, g.x.iter().map(|&x| Complex64::new(f(x), 0.0)))
    }

    fn max_err(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, g: &Grid) -> f64 {
        // ignore points within one stencil half-width of the walls
        let skip = g.order as usize;
        (skip..g.n - skip).map(|i| (a[(i, 0)] - b[(i, 0)]).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn stencils_reach_nominal_order() {
        for order in [2, 4, 6, 8] {
            let errs: Vec<f64> = [40, 80]
                .iter()
                .map(|&n| {
                    let g = Grid::new(n, 6.0, order).unwrap();
                    let f = sample(&g, |x| (x * 0.7).sin());
                    let exact = sample(&g, |x| 0.7 * (x * 0.7).cos());
                    max_err(&g.d1(&f), &exact, &g)
                })
                .collect();
            let p = (errs[0] / errs[1]).log2();
            assert!((p - order as f64).abs() < 0.6, "order {order}: observed {p}");
        }
    }

    #[test]
    fn second_derivative_is_symmetric() {
        let g = Grid::new(20, 3.0, 6).unwrap();
        let m = g.d2_matrix();
        assert!((&m - m.transpose()).norm() < 1e-12);
    }

    #[test]
    fn rejects_unknown_order() {
        assert!(Grid::new(32, 1.0, 3).is_err());
    }
}
