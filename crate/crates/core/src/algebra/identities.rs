//! Exact matrix-level identity sweeps.

use num_traits::Zero;

use super::report::{matrix_residual, IdentityReport};
use super::representation::{eps3, metric, t_matrix, Representation, Sector};
use crate::error::{KdpError, Result};
use crate::scalar::{gi, gr, q, GaussianRational, Rational};
use crate::ExactMatrix;

fn g(mu: usize, nu: usize) -> GaussianRational {
    gi(metric(mu, nu), 0)
}

fn triples() -> impl Iterator<Item = (usize, usize, usize)> {
    (0..4).flat_map(|a| (0..4).flat_map(move |b| (0..4).map(move |c| (a, b, c))))
}

pub(crate) fn require(rep: &Representation, sector: Sector) -> Result<()> {
    if rep.sector == sector {
        Ok(())
    } else {
        Err(KdpError::WrongSpin {
            required: sector.spin().unwrap_or(0),
            found: rep.sector.spin().unwrap_or(u8::MAX),
        })
    }
}

fn compare(report: &mut IdentityReport, case: impl FnOnce() -> String, lhs: &ExactMatrix, rhs: &ExactMatrix) {
    let r = lhs - rhs;
    report.record(case, matrix_residual(&r));
}

/// `β^μβ^νβ^α + β^αβ^νβ^μ = g^{μν}β^α + g^{να}β^μ` for all 64 triples.
pub fn verify_trilinear(rep: &Representation) -> IdentityReport {
    let mut report = IdentityReport::new("1.2", "Duffin trilinear algebra");
    let up: Vec<ExactMatrix> = (0..4).map(|m| rep.beta_upper(m)).collect();
    for (mu, nu, al) in triples() {
        let lhs = &(&(&up[mu] * &up[nu]) * &up[al]) + &(&(&up[al] * &up[nu]) * &up[mu]);
        let rhs = &up[al].scale(&g(mu, nu)) + &up[mu].scale(&g(nu, al));
        compare(&mut report, || format!("(μ,ν,α)=({mu},{nu},{al})"), &lhs, &rhs);
    }
    report
}

/// `β^μβ^νβ^α = g^{μν}β^αβ + g^{να}ββ^μ`, plus the check that summing the
/// `(μ,ν,α)` and `(α,ν,μ)` right-hand sides gives the trilinear right-hand
/// side. The sector guard is skipped with `force` so characterization
/// tests can feed in spin-1.
pub fn verify_spin0_strong(rep: &Representation) -> Result<IdentityReport> {
    require(rep, Sector::Spin0)?;
    Ok(spin0_strong_unchecked(rep))
}

pub fn spin0_strong_unchecked(rep: &Representation) -> IdentityReport {
    let mut report = IdentityReport::new("2.2", "spin-0 strong relation");
    let up: Vec<ExactMatrix> = (0..4).map(|m| rep.beta_upper(m)).collect();
    let b = &rep.beta_proj;
    let rhs = |mu: usize, nu: usize, al: usize| {
        &(&up[al] * b).scale(&g(mu, nu)) + &(b * &up[mu]).scale(&g(nu, al))
    };
    for (mu, nu, al) in triples() {
        let lhs = &(&up[mu] * &up[nu]) * &up[al];
        compare(&mut report, || format!("(μ,ν,α)=({mu},{nu},{al})"), &lhs, &rhs(mu, nu, al));
    }
    let mut implied = IdentityReport::new("2.2→1.2", "symmetrized strong relation gives the trilinear one");
    for (mu, nu, al) in triples() {
        let sum = &rhs(mu, nu, al) + &rhs(al, nu, mu);
        let target = &up[al].scale(&g(mu, nu)) + &up[mu].scale(&g(nu, al));
        compare(&mut implied, || format!("(μ,ν,α)=({mu},{nu},{al})"), &sum, &target);
    }
    report.note(format!(
        "symmetrization reproduces 1.2: {} ({} cases)",
        implied.passed, implied.cases_checked
    ));
    report.absorb(implied);
    report
}

/// `β² = β`, `{β, β_μ} = β_μ`, and the selection recorded at construction.
pub fn verify_beta_projector(rep: &Representation) -> IdentityReport {
    let mut report = IdentityReport::new("2.1", "idempotent β with {β, β_μ} = β_μ");
    let b = &rep.beta_proj;
    compare(&mut report, || "β² − β".into(), &(b * b), b);
    for mu in 0..4 {
        compare(&mut report, || format!("{{β, β_{mu}}}"), &b.anticommutator(&rep.beta[mu]), &rep.beta[mu]);
    }
    let complement = &rep.identity() - b;
    compare(&mut report, || "(1−β)² − (1−β)".into(), &(&complement * &complement), &complement);
    if rep.sector == Sector::Spin1 {
        let target = &rep.identity() - &(&rep.omega * &rep.omega);
        compare(&mut report, || "β − (1 − ω²)".into(), b, &target);
    }
    report.note(format!(
        "solution space of {{X, β_μ}} = β_μ has dimension {}; selected by sector condition",
        rep.beta_solution_dim
    ));
    report
}

/// Reports keyed by identity id, merged on demand.
struct Split(Vec<IdentityReport>);

impl Split {
    fn new(ids: &[(&str, &str)]) -> Self {
        Split(ids.iter().map(|(id, d)| IdentityReport::new(*id, *d)).collect())
    }

    fn get(&mut self, id: &str) -> &mut IdentityReport {
        self.0.iter_mut().find(|r| r.id == id).expect("registered id")
    }

    fn merged(self, id: &str, description: &str) -> IdentityReport {
        let mut out = IdentityReport::new(id, description);
        for r in self.0 {
            out.absorb(r);
        }
        out
    }
}

/// ω and its properties, one report per identity: zero for
/// spin-0 (2.3 only), 2.4 to 2.7 for spin-1.
pub fn omega_reports(rep: &Representation) -> Vec<IdentityReport> {
    let mut sp = Split::new(&[
        ("2.3", "ω matrix"),
        ("2.4", "ω² = 1 − β, a projector"),
        ("2.5", "{ω², β_μ} = β_μ"),
        ("2.6", "β_μωβ_ν + β_νωβ_μ = 0"),
        ("2.7", "β_μβ_νω + ωβ_νβ_μ = g_μν ω"),
    ]);
    let w = &rep.omega;
    let id = rep.identity();
    match rep.sector {
        Sector::Spin0 | Sector::Trivial => {
            sp.get("2.3").record(|| "ω = 0".into(), matrix_residual(w));
            sp.0.truncate(1);
        }
        Sector::Spin1 => {
            sp.get("2.3").check(|| "ω ≠ 0".into(), !w.is_zero(), Vec::new);
            let w2 = w * w;
            compare(sp.get("2.4"), || "ω² = 1 − β".into(), &w2, &(&id - &rep.beta_proj));
            let c = &id - &w2;
            compare(sp.get("2.4"), || "(1−ω²)² = 1−ω²".into(), &(&c * &c), &c);
            for mu in 0..4 {
                compare(sp.get("2.5"), || format!("μ={mu}"), &w2.anticommutator(&rep.beta[mu]), &rep.beta[mu]);
            }
            for mu in 0..4 {
                for nu in 0..4 {
                    let (bm, bn) = (&rep.beta[mu], &rep.beta[nu]);
                    let lhs6 = &(&(bm * w) * bn) + &(&(bn * w) * bm);
                    sp.get("2.6").record(|| format!("(μ,ν)=({mu},{nu})"), matrix_residual(&lhs6));
                    let lhs7 = &(&(bm * bn) * w) + &(&(w * bn) * bm);
                    compare(sp.get("2.7"), || format!("(μ,ν)=({mu},{nu})"), &lhs7, &w.scale(&g(mu, nu)));
                }
            }
        }
    }
    sp.0
}

/// All ω properties folded into one "2.3" report.
pub fn build_and_verify_omega(rep: &Representation) -> IdentityReport {
    Split(omega_reports(rep)).merged("2.3", "ω matrix and its properties")
}

/// The ω characterization of spin-1 and its symmetrization back to the
/// trilinear relation.
pub fn verify_spin1_characterization(rep: &Representation) -> Result<IdentityReport> {
    require(rep, Sector::Spin1)?;
    Ok(spin1_characterization_unchecked(rep))
}

pub fn spin1_characterization_unchecked(rep: &Representation) -> IdentityReport {
    let mut report = IdentityReport::new("2.8", "ω-characterization of spin-1");
    let up: Vec<ExactMatrix> = (0..4).map(|m| rep.beta_upper(m)).collect();
    let w = &rep.omega;
    let w2 = w * w;
    let rhs = |nu: usize, al: usize, mu: usize| {
        let t1 = (&up[nu] * &w2).scale(&g(al, mu));
        let t2 = (&w2 * &up[mu]).scale(&g(nu, al));
        let t3 = &(&(&(&up[mu] * w) * &up[nu]) * &up[al]) * w;
        let t4 = &(&(&(w * &up[al]) * &up[mu]) * w) * &up[nu];
        &(&t1 + &t2) + &(&t3 + &t4)
    };
    for (nu, al, mu) in triples() {
        let lhs = &(&up[nu] * &up[al]) * &up[mu];
        compare(&mut report, || format!("(ν,α,μ)=({nu},{al},{mu})"), &lhs, &rhs(nu, al, mu));
    }
    let mut implied = IdentityReport::new("2.8→1.2", "symmetrized ω-relation gives the trilinear one");
    for (nu, al, mu) in triples() {
        let sum = &rhs(nu, al, mu) + &rhs(mu, al, nu);
        let target = &up[mu].scale(&g(nu, al)) + &up[nu].scale(&g(al, mu));
        compare(&mut implied, || format!("(ν,α,μ)=({nu},{al},{mu})"), &sum, &target);
    }
    report.note(format!(
        "symmetrization reproduces 1.2: {} ({} cases)",
        implied.passed, implied.cases_checked
    ));
    report.absorb(implied);
    report
}

/// Spin operators folded into one "4.5" report.
pub fn build_and_verify_spin_operators(rep: &Representation) -> Result<IdentityReport> {
    Ok(Split(spin_operator_reports(rep)?).merged("4.5", "spin operators S_k, ξ and their identities"))
}

/// Spin operators, one report per equation: definition (4.5), block form
/// (4.6), su(2) algebra (4.7), ξ (4.8), β_iβ_j through S (4.9), cubic
/// relation (4.10).
pub fn spin_operator_reports(rep: &Representation) -> Result<Vec<IdentityReport>> {
    require(rep, Sector::Spin1)?;
    let mut sp = Split::new(&[
        ("4.5", "S_ij = −i ε_ijk S_k"),
        ("4.6", "S_k = diag(T_k, T_k, T_k, 0)"),
        ("4.7", "[S_i, S_j] = i ε_ijk S_k"),
        ("4.8", "ξ² = 1, [ξ, β_0²] = 0"),
        ("4.9", "β_iβ_j products through ξ and S"),
        ("4.10", "S_iS_kS_j + S_jS_kS_i = δ_ik S_j + δ_jk S_i"),
    ]);
    let s = &rep.spin_ops;
    let n = rep.dim;
    // S_ij = −i ε_ijk S_k
    for i in 1..=3 {
        for j in 1..=3 {
            let mut rhs = ExactMatrix::zeros(n, n);
            for k in 1..=3 {
                let e = eps3(i, j, k);
                if e != 0 {
                    rhs = &rhs + &s[k - 1].scale(&gi(0, -e));
                }
            }
            compare(sp.get("4.5"), || format!("S_{i}{j}"), &rep.s_lower(i, j), &rhs);
        }
    }
    // block form
    for k in 1..=3 {
        let t = t_matrix(k);
        let expected = ExactMatrix::from_fn(n, n, |a, b| {
            if a < 9 && b < 9 && a / 3 == b / 3 {
                *t.get(a % 3, b % 3)
            } else {
                GaussianRational::zero()
            }
        });
        compare(sp.get("4.6"), || format!("S_{k} = diag(T_{k}, T_{k}, T_{k}, 0)"), &s[k - 1], &expected);
    }
    // su(2)
    for i in 1..=3 {
        for j in 1..=3 {
            let mut rhs = ExactMatrix::zeros(n, n);
            for k in 1..=3 {
                let e = eps3(i, j, k);
                if e != 0 {
                    rhs = &rhs + &s[k - 1].scale(&gi(0, e));
                }
            }
            compare(sp.get("4.7"), || format!("[S_{i}, S_{j}]"), &s[i - 1].commutator(&s[j - 1]), &rhs);
        }
    }
    let xi = rep.xi.as_ref().expect("spin-1 carries ξ");
    let id = rep.identity();
    compare(sp.get("4.8"), || "ξ² = 1".into(), &(xi * xi), &id);
    // ξ preserves the range of β_0² and acts there as diag(1, −1).
    let b0sq = rep.beta0_sq();
    compare(sp.get("4.8"), || "[ξ, β_0²] = 0".into(), &xi.commutator(&b0sq), &ExactMatrix::zeros(n, n));
    // β_iβ_j through ξ and S
    for i in 1..=3 {
        for j in 1..=3 {
            if i != j {
                let lhs = rep.beta[i].anticommutator(&rep.beta[j]);
                let rhs = xi * &s[i - 1].anticommutator(&s[j - 1]);
                compare(sp.get("4.9"), || format!("{{β_{i}, β_{j}}}"), &lhs, &rhs);
            }
        }
    }
    for k in 1..=3 {
        let lhs = &rep.beta[k] * &rep.beta[k];
        let rhs = &(&id + xi).scale(&gr(q(-1, 2))) + &(xi * &(&s[k - 1] * &s[k - 1]));
        compare(sp.get("4.9"), || format!("β_{k}²"), &lhs, &rhs);
    }
    // cubic relation
    for i in 1..=3 {
        for k in 1..=3 {
            for j in 1..=3 {
                let (si, sk, sj) = (&s[i - 1], &s[k - 1], &s[j - 1]);
                let lhs = &(&(si * sk) * sj) + &(&(sj * sk) * si);
                let d = |a: usize, b: usize| if a == b { gi(1, 0) } else { GaussianRational::zero() };
                let rhs = &sj.scale(&d(i, k)) + &si.scale(&d(j, k));
                compare(sp.get("4.10"), || format!("(i,k,j)=({i},{k},{j})"), &lhs, &rhs);
            }
        }
    }
    Ok(sp.0)
}

/// `[β_μ, S_δσ] = g_μδ β_σ − g_μσ β_δ` for all triples.
pub fn verify_beta_spin_commutator(rep: &Representation) -> IdentityReport {
    let mut report = IdentityReport::new("6.2", "[β_μ, S_δσ] = g_μδ β_σ − g_μσ β_δ");
    for (mu, de, si) in triples() {
        let lhs = rep.beta[mu].commutator(&rep.s_lower(de, si));
        let rhs = &rep.beta[si].scale(&g(mu, de)) - &rep.beta[de].scale(&g(mu, si));
        compare(&mut report, || format!("(μ,δ,σ)=({mu},{de},{si})"), &lhs, &rhs);
    }
    report
}

/// `η² = 1` and `η β_μ† η = β_μ`.
pub fn verify_hermiticity(rep: &Representation) -> IdentityReport {
    let mut report = IdentityReport::new("1.3", "adjoint metric η = 2β_0² − 1");
    let eta = &rep.eta;
    compare(&mut report, || "η² = 1".into(), &(eta * eta), &rep.identity());
    for mu in 0..4 {
        let lhs = &(eta * &rep.beta[mu].adjoint()) * eta;
        compare(&mut report, || format!("η β_{mu}† η = β_{mu}"), &lhs, &rep.beta[mu]);
    }
    report
}

/// `(1 − β_0²) β_i = β_i β_0²`, used to derive the constraints.
pub fn verify_constraint_identity(rep: &Representation) -> IdentityReport {
    let mut report = IdentityReport::new("3.8", "(1 − β_0²) β_i = β_i β_0²");
    let b0sq = rep.beta0_sq();
    let c = &rep.identity() - &b0sq;
    for i in 1..=3 {
        compare(&mut report, || format!("i={i}"), &(&c * &rep.beta[i]), &(&rep.beta[i] * &b0sq));
    }
    report
}

/// Projector words: odd spatial words vanish between projectors, even words commute
/// with `β_0²`. All words up to length `max_len`.
pub fn verify_projector_identities(rep: &Representation, max_len: usize) -> IdentityReport {
    let mut report = IdentityReport::new("4.3", "projector word identities");
    let p = rep.beta0_sq();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for w in &words {
            for i in 1..=3 {
                let mut w2 = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        words = next;
        for w in &words {
            let prod = ExactMatrix::product(rep.dim, w.iter().map(|&i| &rep.beta[i]));
            let label = || format!("β_0² β{:?} β_0²", w);
            if len % 2 == 1 {
                report.record(label, matrix_residual(&(&(&p * &prod) * &p)));
            } else {
                let left = &p * &prod;
                let right = &prod * &p;
                let both = &left * &p;
                let mut res = matrix_residual(&(&left - &right));
                res.extend(matrix_residual(&(&left - &both)));
                report.record(label, res);
            }
        }
    }
    report
}

/// Checks the matrix part of the e²-rewriting chain:
/// `F^{αγ}F^{μρ}(β_ρβ_γβ_μβ_α + β_ρβ_γ g_μα)` against
/// `−¼[F^{αγ}F^{μρ}S_ρμ S_αγ − 2F^{αγ}F^{μρ}S_ργ S_μα] + 2F^{αγ}F_α^ρ β_ρβ_γ`.
/// `f` holds upper-index components.
pub fn verify_e2_rewriting(rep: &Representation, f: &[[Rational; 4]; 4]) -> Result<IdentityReport> {
    for a in 0..4 {
        for b in 0..4 {
            if f[a][b] != -f[b][a] {
                return Err(KdpError::NotAntisymmetric);
            }
        }
    }
    let mut report = IdentityReport::new("3.7", "second equality of the e² rewriting (matrix part)");
    let (lhs, rhs) = e2_rewriting_sides(rep, f);
    compare(&mut report, || format!("F = {:?}", f), &lhs, &rhs);
    Ok(report)
}

/// Both sides of the e² rewriting, for diagnostics.
pub fn e2_rewriting_sides(rep: &Representation, f: &[[Rational; 4]; 4]) -> (ExactMatrix, ExactMatrix) {
    let n = rep.dim;
    let b = &rep.beta;
    let fr = |a: usize, c: usize| gr(f[a][c]);
    let mut lhs = ExactMatrix::zeros(n, n);
    let mut rhs = ExactMatrix::zeros(n, n);
    let mut last = ExactMatrix::zeros(n, n);
    for al in 0..4 {
        for ga in 0..4 {
            if f[al][ga].is_zero() {
                continue;
            }
            for mu in 0..4 {
                for rho in 0..4 {
                    if f[mu][rho].is_zero() {
                        continue;
                    }
                    let c = fr(al, ga) * fr(mu, rho);
                    let word = &(&(&b[rho] * &b[ga]) * &b[mu]) * &b[al];
                    let tail = (&b[rho] * &b[ga]).scale(&g(mu, al));
                    lhs = &lhs + &(&word + &tail).scale(&c);
                    let ss1 = &rep.s_lower(rho, mu) * &rep.s_lower(al, ga);
                    let ss2 = &rep.s_lower(rho, ga) * &rep.s_lower(mu, al);
                    rhs = &rhs + &(&ss1 - &ss2.scale(&gi(2, 0))).scale(&c);
                    // F^{αγ} F_α^ρ: lower α on the second factor, contracting μ with α.
                    if mu == al {
                        last = &last + &(&b[rho] * &b[ga]).scale(&(c * g(al, al)));
                    }
                }
            }
        }
    }
    let rhs = &rhs.scale(&gr(q(-1, 4))) + &last.scale(&gi(2, 0));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trilinear_both_spins() {
        for s in [0, 1] {
            let r = verify_trilinear(&Representation::spin(s).unwrap());
            assert!(r.passed, "{r:?}");
            assert_eq!(r.cases_checked, 64);
        }
    }

    #[test]
    fn trivial_rep_passes_degenerately() {
        let r = verify_trilinear(&Representation::trivial(3));
        assert!(r.passed);
    }

    #[test]
    fn wrong_sector_errors() {
        let s1 = Representation::spin(1).unwrap();
        assert!(matches!(verify_spin0_strong(&s1), Err(KdpError::WrongSpin { .. })));
    }
}
