//! Harmonic-oscillator basis diagonalizations of the transverse
//! Klein-Gordon operator, independent of any spatial grid.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{KdpError, Result};
use crate::fields::Gauge;

/// Ladder-operator quadratics in a truncated 1-D basis of frequency `w`:
/// exact matrix elements of `x²`, `p²`, `x`, `p` (the last two times `i`
/// for `p`, returned as the real matrix `√(w/2)(a† − a)`).
struct Ladder {
    x: DMatrix<f64>,
    ip: DMatrix<f64>,
    x2: DMatrix<f64>,
    p2: DMatrix<f64>,
}

fn ladder(size: usize, w: f64) -> Ladder {
    let a = DMatrix::from_fn(size, size, |i, j| if j == i + 1 { (j as f64).sqrt() } else { 0.0 });
    let ad = a.transpose();
    let num = DMatrix::from_fn(size, size, |i, j| if i == j { i as f64 } else { 0.0 });
    // a², a†² restricted to the basis, without truncation artefacts
    let a2 = DMatrix::from_fn(size, size, |i, j| if j == i + 2 { ((j * (j - 1)) as f64).sqrt() } else { 0.0 });
    let ad2 = a2.transpose();
    let id = DMatrix::<f64>::identity(size, size);
    let x = (&a + &ad) / (2.0 * w).sqrt();
    let ip = (&ad - &a) * (w / 2.0).sqrt();
    let x2 = (&a2 + &ad2 + &num * 2.0 + &id) / (2.0 * w);
    let p2 = -(&a2 + &ad2 - &num * 2.0 - &id) * (w / 2.0);
    Ladder { x, ip, x2, p2 }
}

fn sorted_eigenvalues(h: DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Lowest `count` eigenvalues of `p² + (eB)² x²` in a Hermite basis of
/// `size` functions whose frequency is `basis_ratio · |eB|`.
pub fn oscillator_levels(eb: f64, count: usize, size: usize, basis_ratio: f64) -> Result<Vec<f64>> {
    if eb == 0.0 || !eb.is_finite() {
        return Err(KdpError::InvalidParameter("oscillator oracle needs eB != 0".into()));
    }
    if size < count + 4 {
        return Err(KdpError::InvalidParameter(format!("basis size {size} too small for {count} levels")));
    }
    let l = ladder(size, basis_ratio * eb.abs());
    let h = &l.p2 + &l.x2 * (eb * eb);
    Ok(sorted_eigenvalues(h).into_iter().take(count).collect())
}

/// Distinct transverse levels of `(p_x − eA^1)² + (p_y − eA^2)²` for uniform
/// `B_z`, in a 2-D oscillator basis with total quanta `≤ max_quanta` at
/// frequency `|eB|/2`. Eigenvalues closer than `tol` (relative) are merged.
pub fn gauge_levels(eb: f64, gauge: Gauge, count: usize, max_quanta: usize, tol: f64) -> Result<Vec<f64>> {
    if eb == 0.0 || !eb.is_finite() {
        return Err(KdpError::InvalidParameter("gauge check needs eB != 0".into()));
    }
    let per_axis = max_quanta + 3;
    let l = ladder(per_axis, eb.abs() / 2.0);
    // basis |nx, ny> with nx + ny ≤ max_quanta
    let states: Vec<(usize, usize)> =
        (0..=max_quanta).flat_map(|n| (0..=n).map(move |nx| (nx, n - nx))).collect();
    let one = DMatrix::<f64>::identity(per_axis, per_axis);
    // H = Σ_ab c_ab (A_a ⊗ B_b); terms as (x-factor, y-factor, coefficient)
    let mut terms: Vec<(&DMatrix<f64>, &DMatrix<f64>, f64)> = vec![(&l.p2, &one, 1.0), (&one, &l.p2, 1.0)];
    // p_x = −i ip_x etc.; cross terms p_x·y and p_y·x are purely imaginary
    // and are handled below.
    let (ax_y, ay_x) = match gauge {
        Gauge::Landau => (0.0, eb),
        Gauge::Symmetric => (-eb / 2.0, eb / 2.0),
    };
    // (p_x − eA^1)² with eA^1 = ax_y · y: p_x² − 2 ax_y y p_x + ax_y² y²
    // (p_y − eA^2)² with eA^2 = ay_x · x: p_y² − 2 ay_x x p_y + ay_x² x²
    terms.push((&one, &l.x2, ax_y * ax_y));
    terms.push((&l.x2, &one, ay_x * ay_x));
    let size = states.len();
    let mut h_re = DMatrix::<f64>::zeros(size, size);
    let mut h_im = DMatrix::<f64>::zeros(size, size);
    for (r, &(rx, ry)) in states.iter().enumerate() {
        for (c, &(cx, cy)) in states.iter().enumerate() {
            let mut v = 0.0;
            for (a, b, k) in &terms {
                v += k * a[(rx, cx)] * b[(ry, cy)];
            }
            h_re[(r, c)] = v;
            // −2 ax_y y p_x = −2 ax_y y (−i ip_x) = 2i ax_y (ip_x ⊗ y)
            h_im[(r, c)] = 2.0 * ax_y * l.ip[(rx, cx)] * l.x[(ry, cy)] + 2.0 * ay_x * l.x[(rx, cx)] * l.ip[(ry, cy)];
        }
    }
    // Hermitian H = R + iI  ↦  real symmetric [[R, −I], [I, R]] (doubles multiplicities)
    let mut big = DMatrix::<f64>::zeros(2 * size, 2 * size);
    big.view_mut((0, 0), (size, size)).copy_from(&h_re);
    big.view_mut((size, size), (size, size)).copy_from(&h_re);
    big.view_mut((0, size), (size, size)).copy_from(&(-&h_im));
    big.view_mut((size, 0), (size, size)).copy_from(&h_im);
    let ev = sorted_eigenvalues(big);
    let mut levels: Vec<f64> = Vec::new();
    for v in ev {
        match levels.last() {
            Some(&last) if (v - last).abs() <= tol * last.abs().max(1e-300) => {}
            _ => levels.push(v),
        }
        if levels.len() > count {
            break;
        }
    }
    levels.truncate(count);
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillator_oracle_reproduces_odd_integers() {
        let lv = oscillator_levels(1.0, 5, 120, 1.3).unwrap();
        for (n, v) in lv.iter().enumerate() {
            assert!((v - (2 * n + 1) as f64).abs() < 1e-10, "level {n}: {v}");
        }
    }

    #[test]
    fn symmetric_gauge_levels() {
        let lv = gauge_levels(0.5, Gauge::Symmetric, 4, 12, 1e-9).unwrap();
        for (n, v) in lv.iter().enumerate() {
            assert!((v - 0.5 * (2 * n + 1) as f64).abs() < 1e-10, "level {n}: {v}");
        }
    }

    #[test]
    fn zero_field_rejected() {
        assert!(oscillator_levels(0.0, 3, 20, 1.0).is_err());
    }
}
