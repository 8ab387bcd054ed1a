//! Reduction of the KDP equation to the range of `β_0²`: the reduced
//! operator in its three forms, the spin-0 Klein-Gordon reduction, and the
//! spin-1 fourth-order equation.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{identities::require, t_matrix, IdentityReport, Sector};
use crate::error::{KdpError, Result};
use crate::exactmath::CoordPolynomial;
use crate::fields::magnetic_vector;
use crate::operators::{
    apply_matrix, sum, verify_operator_equality, DiffOperator, OperatorSet, PolyMatrix, TestBasis, Wave,
    WaveComponent,
};
use crate::scalar::{gi, gr, q, GaussianRational};
use crate::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReducedForm {
    /// `β_0²Hβ_0² − (1/m) β_0²Hβ_iD^iβ_0²`.
    Raw,
    /// `−β_0m + β_0²eA_0 + (1/m) β_0β_iβ_j D^iD^j`.
    Compact,
    /// Spin-operator form, spin-1 only.
    SpinForm,
}

#[derive(Clone, Debug)]
pub struct ReducedOperator {
    pub form: ReducedForm,
    pub op: DiffOperator,
}

/// `β_0²ψ`.
pub fn project_physical<W: WaveComponent>(rep: &crate::algebra::Representation, psi: &[W]) -> Wave<W> {
    apply_matrix(&rep.beta0_sq(), psi)
}

/// 0-based components spanned by `β_0²`: `{4,5}` for spin-0 and
/// `{1,2,3,7,8,9}` for spin-1 in 1-based labels.
pub fn range_components(rep: &crate::algebra::Representation) -> Vec<usize> {
    let p = rep.beta0_sq();
    (0..rep.dim).filter(|&i| !p.get(i, i).is_zero()).collect()
}

fn mass(ops: &OperatorSet) -> GaussianRational {
    gr(ops.m)
}

fn inv_m(ops: &OperatorSet) -> GaussianRational {
    gr(q(1, 1) / ops.m)
}

/// `S_j D^j` with the given spin matrices.
fn spin_dot_d(ops: &OperatorSet, s: &[ExactMatrix; 3]) -> DiffOperator {
    sum((0..3).map(|j| &DiffOperator::Const(s[j].clone()) * &ops.d(j + 1)))
}

/// `S_k B^k` as a matrix multiplier.
fn spin_dot_b(ops: &OperatorSet, s: &[ExactMatrix; 3]) -> PolyMatrix {
    let b = magnetic_vector(ops.field);
    let mut pm = PolyMatrix::zero(s[0].rows());
    for k in 0..3 {
        pm.add_matrix_poly(&s[k], &b[k]);
    }
    pm
}

fn raw_with(ops: &OperatorSet, h: &DiffOperator) -> DiffOperator {
    let p = DiffOperator::Const(ops.rep.beta0_sq());
    let bd = sum((1..4).map(|i| &DiffOperator::Const(ops.rep.beta[i].clone()) * &ops.d(i)));
    let first = &(&p * h) * &p;
    let second = &(&(&p * h) * &bd) * &p;
    &first - &second.scale(inv_m(ops))
}

/// Builds `O_red` in the requested form.
pub fn build_o_red(ops: &OperatorSet, form: ReducedForm) -> Result<ReducedOperator> {
    let rep = ops.rep;
    let b0 = DiffOperator::Const(rep.beta[0].clone());
    let op = match form {
        ReducedForm::Raw => raw_with(ops, &ops.hamilton()),
        ReducedForm::Compact => {
            let mut terms = vec![
                DiffOperator::Const(rep.beta[0].scale(&-mass(ops))),
                &DiffOperator::Const(rep.beta0_sq()) * &DiffOperator::Scalar(ops.field.coupling(0)),
            ];
            for i in 1..4 {
                for j in 1..4 {
                    let m = (&(&rep.beta[0] * &rep.beta[i]) * &rep.beta[j]).scale(&inv_m(ops));
                    terms.push(&(&DiffOperator::Const(m) * &ops.d(i)) * &ops.d(j));
                }
            }
            sum(terms)
        }
        ReducedForm::SpinForm => {
            require(rep, Sector::Spin1).map_err(|_| KdpError::InvalidForm {
                form: "spin-form".into(),
                spin: rep.sector.spin().unwrap_or(u8::MAX),
            })?;
            let xi = rep.xi.clone().expect("spin-1 carries xi");
            let one_xi = &rep.identity() + &xi;
            let b0_1xi = DiffOperator::Const(&rep.beta[0] * &one_xi);
            let b0_xi = DiffOperator::Const(&rep.beta[0] * &xi);
            let sd = spin_dot_d(ops, &rep.spin_ops);
            let e_2m = ops.field.e() / (gi(2, 0) * mass(ops));
            sum([
                b0.scale(-mass(ops)),
                DiffOperator::Scalar(ops.field.coupling(0)),
                (&b0_1xi * &ops.dd_spatial()).scale(gi(1, 0) / (gi(2, 0) * mass(ops))),
                (&b0_xi * &(&sd * &sd)).scale(inv_m(ops)),
                &b0_1xi * &DiffOperator::Poly(spin_dot_b(ops, &rep.spin_ops).scale(&e_2m)),
            ])
        }
    };
    Ok(ReducedOperator { form, op })
}

fn range_basis(ops: &OperatorSet, degree: u32) -> TestBasis {
    TestBasis::restricted(ops.rep.dim, degree, &range_components(ops.rep))
}

fn ctx(ops: &OperatorSet) -> String {
    format!("{:?} {}", ops.rep.sector, ops.field.label())
}

/// Raw, compact and (spin-1) spin-form `O_red` agree on range(`β_0²`).
pub fn verify_form_equivalence(ops: &OperatorSet, degree: u32) -> Result<IdentityReport> {
    let basis = range_basis(ops, degree);
    let raw = build_o_red(ops, ReducedForm::Raw)?.op;
    let compact = build_o_red(ops, ReducedForm::Compact)?.op;
    let mut r = IdentityReport::new("4.4", "reduced operator: raw form = compact form (and = spin form for spin-1)");
    verify_operator_equality(&mut r, &format!("{}; raw vs compact", ctx(ops)), &raw, &compact, &basis);
    if ops.rep.sector == Sector::Spin1 {
        let spin_form = build_o_red(ops, ReducedForm::SpinForm)?.op;
        verify_operator_equality(&mut r, &format!("{}; compact vs spin form", ctx(ops)), &compact, &spin_form, &basis);
    }
    Ok(r)
}

/// `O_red` built from `H` with and without the troublesome term agree.
pub fn verify_troublesome_term_vanishes(ops: &OperatorSet, degree: u32) -> IdentityReport {
    let basis = range_basis(ops, degree);
    let full = raw_with(ops, &ops.hamilton());
    let minimal = raw_with(ops, &ops.hamilton_minimal());
    let mut r = IdentityReport::new("troublesome", "reduction removes the (ie/2m) F (beta beta0 beta + beta g) term");
    verify_operator_equality(&mut r, &ctx(ops), &full, &minimal, &basis);
    let term_nonzero = !ops.troublesome_matrix().is_zero();
    r.note(format!(
        "{}: troublesome term is {} before reduction",
        ctx(ops),
        if term_nonzero { "nonzero" } else { "zero" }
    ));
    r
}

/// Full spin-0 wave function from the physical component:
/// `ψ_i = −(1/m) D^iφ`, `ψ_4 = (i/m) D^0φ`, `ψ_5 = φ`.
pub fn spin0_lift<W: WaveComponent>(ops: &OperatorSet, phi: &W) -> Wave<W> {
    let one = [phi.clone()];
    let d = |mu: usize| ops.d(mu).apply(&one).remove(0);
    let mut psi: Wave<W> = (1..4).map(|i| d(i).scale(&-inv_m(ops))).collect();
    psi.push(d(0).scale(&(gi(0, 1) * inv_m(ops))));
    psi.push(phi.clone());
    psi
}

/// Every component of `Λψ` for the lifted `ψ` is zero or an exact multiple
/// of the Klein-Gordon residual `(D^αD_α − m²)φ`. Returns the multipliers.
pub fn spin0_lift_residual<W: WaveComponent>(
    ops: &OperatorSet,
    phi: &W,
) -> Result<(Vec<Option<GaussianRational>>, W)> {
    require(ops.rep, Sector::Spin0)?;
    let psi = spin0_lift(ops, phi);
    let lam = ops.lambda().apply(&psi);
    let kg = (&ops.dd() - &DiffOperator::constant(mass(ops) * mass(ops))).apply(std::slice::from_ref(phi)).remove(0);
    let ratios = lam
        .iter()
        .map(|c| {
            if c.is_zero() {
                Some(GaussianRational::new(q(0, 1), q(0, 1)))
            } else if kg.is_zero() {
                None
            } else {
                c.ratio_to(&kg)
            }
        })
        .collect();
    Ok((ratios, kg))
}

/// Sweeps every monomial `φ` of degree `≤ degree`, and in addition sums of
/// all monomials of each degree, through [`spin0_lift_residual`].
pub fn verify_spin0_reduction(ops: &OperatorSet, degree: u32) -> Result<IdentityReport> {
    require(ops.rep, Sector::Spin0)?;
    let mut r = IdentityReport::new("3.11", "spin-0 lift: Lambda psi proportional to the Klein-Gordon residual");
    let basis = TestBasis::new(1, degree);
    let mut inputs: Vec<(String, CoordPolynomial)> =
        basis.elements.iter().map(|el| (el.label(), el.wave(1).remove(0))).collect();
    let mut mixed = CoordPolynomial::zero();
    for (k, (_, p)) in inputs.iter().enumerate() {
        mixed += &p.scale(&gi(1 + (k as i64 % 3), (k as i64) % 2));
    }
    inputs.push(("mixed polynomial".into(), mixed));
    let m_inv = inv_m(ops);
    for (label, phi) in inputs {
        let (ratios, kg) = spin0_lift_residual(ops, &phi)?;
        let mut bad = Vec::new();
        // rows 1-4 vanish identically and row 5 is −(1/m) times the KG residual
        for (i, rt) in ratios.iter().enumerate() {
            let expected = if i == 4 && !kg.is_zero() { -m_inv } else { GaussianRational::zero() };
            match rt {
                None => bad.push(format!("component {} not proportional", i + 1)),
                Some(v) if *v != expected => bad.push(format!("component {} = {v} * KG", i + 1)),
                _ => {}
            }
        }
        r.record(|| format!("{}; phi = {label}", ctx(ops)), bad);
    }
    Ok(r)
}

/// Fourth-order operator on `χ` (3 components) for `A_0 = 0`.
/// The derived form is `(m + Q/m)(m − (K + Q + e T·B)/m)` with
/// `K = D^iD_i`, `Q = (T_jD^j)²`; the printed form is
/// `m² − K − (e/m)T·B − (1/m²)QK − (1/m²)(T·B)⁴ − (e/m²)Q T·B`.
pub fn build_fourth_order(ops: &OperatorSet, printed: bool) -> Result<DiffOperator> {
    if !printed {
        let (m1, m2) = fourth_order_factors(ops)?;
        return Ok(&m1 * &m2);
    }
    let (k, qq, tb) = fourth_order_parts(ops)?;
    let m = mass(ops);
    let e = ops.field.e();
    let im = inv_m(ops);
    let tb4 = &(&tb * &tb) * &(&tb * &tb);
    Ok(sum([
        DiffOperator::constant(m * m),
        -k,
        tb.clone().scale(-e * im),
        (&qq * &ops.dd_spatial()).scale(-im * im),
        tb4.scale(-im * im),
        (&qq * &tb).scale(-e * im * im),
    ]))
}

/// `(K, Q, T·B)` on the 3-component `χ`.
fn fourth_order_parts(ops: &OperatorSet) -> Result<(DiffOperator, DiffOperator, DiffOperator)> {
    require(ops.rep, Sector::Spin1)?;
    if ops.field.has_scalar_potential() {
        return Err(KdpError::NonZeroScalarPotential);
    }
    let t = [t_matrix(1), t_matrix(2), t_matrix(3)];
    let td = spin_dot_d(ops, &t);
    Ok((ops.dd_spatial(), &td * &td, DiffOperator::Poly(spin_dot_b(ops, &t))))
}

/// The two factors `M_1 = m + Q/m` and `M_2 = m − (K + Q + e T·B)/m` of the
/// derived fourth-order operator `M_1M_2`.
pub fn fourth_order_factors(ops: &OperatorSet) -> Result<(DiffOperator, DiffOperator)> {
    let (k, qq, tb) = fourth_order_parts(ops)?;
    let m = mass(ops);
    let im = inv_m(ops);
    let m1 = &DiffOperator::constant(m) + &qq.clone().scale(im);
    let inner = sum([k, qq, tb.scale(ops.field.e())]);
    let m2 = &DiffOperator::constant(m) - &inner.scale(im);
    Ok((m1, m2))
}

fn embed_chi(chi: &[CoordPolynomial]) -> Vec<CoordPolynomial> {
    let mut w = vec![CoordPolynomial::zero(); 10];
    w[..3].clone_from_slice(chi);
    w
}

/// Compares a fourth-order form with the `χ` block of `O_red²`.
pub fn verify_fourth_order(ops: &OperatorSet, degree: u32, printed: bool) -> Result<IdentityReport> {
    let four = build_fourth_order(ops, printed)?;
    let o = build_o_red(ops, ReducedForm::SpinForm)?.op;
    let o2 = &o * &o;
    let (id, desc) = if printed {
        ("4.12", "printed fourth-order equation = chi block of O_red^2")
    } else {
        ("4.12-derived", "derived fourth-order equation = chi block of O_red^2")
    };
    let mut r = IdentityReport::new(id, desc);
    let basis = TestBasis::new(3, degree);
    let results: Vec<Vec<String>> = {
        use rayon::prelude::*;
        basis
            .elements
            .par_iter()
            .map(|el| {
                let chi = el.wave(3);
                let lhs = o2.apply(&embed_chi(&chi));
                let rhs = four.apply(&chi);
                (0..10)
                    .filter_map(|i| {
                        let d = if i < 3 { lhs[i].sub(&rhs[i]) } else { lhs[i].clone() };
                        (!d.is_zero()).then(|| format!("component {}: {}", i + 1, d))
                    })
                    .collect()
            })
            .collect()
    };
    for (el, res) in basis.elements.iter().zip(results) {
        r.record(|| format!("{}; {}", ctx(ops), el.label()), res);
    }
    Ok(r)
}

/// Spin-1 lift from the 6-component reduced wave function:
/// `ψ_{3+k} = −(1/m) ε_kij D^iψ_{6+j}` and `ψ_10 = (i/m) D^iψ_i`.
pub fn spin1_lift<W: WaveComponent>(ops: &OperatorSet, reduced: &[W]) -> Result<Wave<W>> {
    require(ops.rep, Sector::Spin1)?;
    if reduced.len() != 10 {
        return Err(KdpError::DimensionMismatch { expected: 10, found: reduced.len() });
    }
    let mut psi = reduced.to_vec();
    let d = |mu: usize, w: &W| ops.d(mu).apply(std::slice::from_ref(w)).remove(0);
    for k in 1..=3 {
        let mut acc = reduced[0].zero_like();
        for i in 1..=3 {
            for j in 1..=3 {
                let e = crate::algebra::eps3(k, i, j);
                if e != 0 {
                    acc = acc.add(&d(i, &reduced[5 + j]).scale(&gi(e, 0)));
                }
            }
        }
        psi[2 + k] = acc.scale(&-inv_m(ops));
    }
    let mut div = reduced[0].zero_like();
    for i in 1..=3 {
        div = div.add(&d(i, &reduced[i - 1]));
    }
    psi[9] = div.scale(&(gi(0, 1) * inv_m(ops)));
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Representation;
    use crate::fields::FieldConfig;

    #[test]
    fn range_components_match_labels() {
        assert_eq!(range_components(&Representation::spin(0).unwrap()), vec![3, 4]);
        assert_eq!(range_components(&Representation::spin(1).unwrap()), vec![0, 1, 2, 6, 7, 8]);
    }

    #[test]
    fn spin_form_rejected_for_spin0() {
        let rep = Representation::spin(0).unwrap();
        let f = FieldConfig::zero(q(1, 1));
        let ops = OperatorSet::new(&rep, &f, q(1, 1)).unwrap();
        assert!(matches!(build_o_red(&ops, ReducedForm::SpinForm), Err(KdpError::InvalidForm { .. })));
    }

    #[test]
    fn projection_is_idempotent() {
        let rep = Representation::spin(1).unwrap();
        let psi: Vec<CoordPolynomial> =
            (0..10).map(|i| CoordPolynomial::coordinate(i % 4).scale(&gi(i as i64, 1))).collect();
        let once = project_physical(&rep, &psi);
        assert_eq!(project_physical(&rep, &once), once);
        for i in [3, 4, 5, 9] {
            assert!(once[i].is_zero());
        }
    }
}
