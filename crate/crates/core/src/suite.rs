//! Identity checks addressable by equation id, with the expected outcome of
//! each check so a run can be judged as a whole.

use serde::{Deserialize, Serialize};

use crate::algebra::{self, IdentityReport, Representation, Sector};
use crate::currents::{currents_report, ModeSpec};
use crate::error::{KdpError, Result};
use crate::fields::FieldConfig;
use crate::operators::{self as op, OperatorSet, TestBasis};
use crate::reduction;
use crate::scalar::{q, Rational};
use crate::spectra::Frequency;

/// What a check is expected to do.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Pass,
    /// Characterization checks that must fail in the other sector.
    Fail,
    /// Printed forms with known discrepancies; reported but not judged.
    Informational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub spin: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub expectation: Expectation,
    pub report: IdentityReport,
}

impl SuiteEntry {
    /// True when the outcome matches the expectation.
    pub fn as_expected(&self) -> bool {
        match self.expectation {
            Expectation::Pass => self.report.passed,
            Expectation::Fail => !self.report.passed,
            Expectation::Informational => true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub spins: Vec<u8>,
    pub fields: Vec<FieldConfig>,
    pub m: Rational,
    pub degree: u32,
    /// Longest spatial word for the projector identities.
    pub word_length: usize,
    pub modes: Vec<ModeSpec>,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            spins: vec![0, 1],
            fields: FieldConfig::shipped(q(1, 1)),
            m: q(1, 1),
            degree: 3,
            word_length: 4,
            modes: default_modes(),
            samples: 200,
            seed: 0,
        }
    }
}

/// Three free modes with mixed frequency signs.
pub fn default_modes() -> Vec<ModeSpec> {
    vec![
        ModeSpec { momentum: [1, 0, 0], frequency: Frequency::Positive, polarization: 0, amplitude: q(1, 1) },
        ModeSpec { momentum: [0, 2, -1], frequency: Frequency::Positive, polarization: 0, amplitude: q(1, 2) },
        ModeSpec { momentum: [0, 1, 1], frequency: Frequency::Negative, polarization: 0, amplitude: q(-1, 3) },
    ]
}

/// Every id understood by [`run_identity`], with a short description.
pub const IDENTITY_IDS: &[(&str, &str)] = &[
    ("1.2", "Duffin trilinear algebra"),
    ("1.3", "conservation of j and time-independent box charge"),
    ("1.3-adjoint", "adjoint metric eta = 2 beta0^2 - 1"),
    ("1.5", "conservation and positivity of s"),
    ("2.1", "idempotent beta with {beta, beta_mu} = beta_mu"),
    ("2.2", "spin-0 strong relation (fails for spin-1)"),
    ("2.3", "omega matrix"),
    ("2.4", "omega^2 = 1 - beta"),
    ("2.5", "{omega^2, beta_mu} = beta_mu"),
    ("2.6", "beta omega beta antisymmetrized vanishes"),
    ("2.7", "beta beta omega relation"),
    ("2.8", "omega characterization of spin-1 (fails for spin-0)"),
    ("3.3", "[D^mu, D^rho] = ie F^{rho mu}"),
    ("3.5", "dF part of Omega1 vanishes (spin-0)"),
    ("3.7", "second equality of the e^2 rewriting, generic F"),
    ("3.8", "(1 - beta0^2) beta_i = beta_i beta0^2"),
    ("3.11", "spin-0 lift reproduces Klein-Gordon"),
    ("4.3", "projector word identities"),
    ("4.4", "reduced operator: raw, compact and spin forms agree"),
    ("4.5", "spin operators S_ij = -i eps S_k"),
    ("4.6", "block form of S_k"),
    ("4.7", "su(2) algebra of S_k"),
    ("4.8", "xi^2 = 1, [xi, beta0^2] = 0"),
    ("4.9", "beta_i beta_j through xi and S"),
    ("4.10", "cubic relation of S"),
    ("4.12", "printed fourth-order equation (informational)"),
    ("4.12-derived", "factorized fourth-order equation"),
    ("5.4", "d1 Lambda = Omega1"),
    ("5.6", "free factorization d1 Lambda = -(box + m^2)"),
    ("5.7", "[d1, Lambda]"),
    ("5.9", "printed d1' Lambda = Omega1' (informational)"),
    ("5.9-derived", "d1' Lambda = Omega1' with the derived coefficient"),
    ("6.1", "[d2, Lambda] = 0"),
    ("6.2", "[beta_mu, S_delta sigma]"),
    ("6.3", "d2 third-order relation"),
    ("6.4", "d2 third-order relation, second form"),
    ("6.6", "d2 Lambda = Omega2"),
    ("troublesome", "troublesome term vanishes under reduction"),
];

/// Ids making up the matrix-algebra suite.
pub const ALGEBRA_IDS: &[&str] = &[
    "1.2", "1.3-adjoint", "2.1", "2.2", "2.3", "2.4", "2.5", "2.6", "2.7", "2.8", "3.7", "3.8", "4.3", "4.5", "4.6",
    "4.7", "4.8", "4.9", "4.10", "6.2",
];

/// Ids checked on the polynomial test basis in external fields.
pub const OPERATOR_IDS: &[&str] =
    &["3.3", "3.5", "5.4", "5.6", "5.7", "5.9", "5.9-derived", "6.1", "6.3", "6.4", "6.6"];

/// Ids of the reduction checks.
pub const REDUCTION_IDS: &[&str] = &["3.11", "4.4", "4.12", "4.12-derived", "troublesome"];

/// Ids of the current checks.
pub const CURRENT_IDS: &[&str] = &["1.3", "1.5"];

/// Generic antisymmetric `F^{μν}` with all six components independent.
pub fn generic_f() -> [[Rational; 4]; 4] {
    let vals = [(0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 5), (1, 3, 7), (2, 3, 11)];
    let mut f = [[q(0, 1); 4]; 4];
    for (a, b, v) in vals {
        f[a][b] = q(v, 1);
        f[b][a] = q(-v, 1);
    }
    f
}

fn entry(rep: &Representation, field: Option<&FieldConfig>, expectation: Expectation, report: IdentityReport) -> SuiteEntry {
    SuiteEntry { spin: rep.sector.spin().unwrap_or(0), field: field.map(FieldConfig::label), expectation, report }
}

fn pick(reports: Vec<IdentityReport>, id: &str) -> Option<IdentityReport> {
    reports.into_iter().find(|r| r.id == id)
}

/// One matrix-algebra id on one representation. `None` when the id does not
/// apply to the sector.
pub fn algebra_entry(rep: &Representation, id: &str, word_length: usize) -> Result<Option<SuiteEntry>> {
    use Expectation::*;
    let spin1 = rep.sector == Sector::Spin1;
    let e = |x, r| Ok(Some(entry(rep, None, x, r)));
    match id {
        "1.2" => e(Pass, algebra::verify_trilinear(rep)),
        "1.3-adjoint" => {
            let mut r = algebra::verify_hermiticity(rep);
            r.id = "1.3-adjoint".into();
            e(Pass, r)
        }
        "2.1" => e(Pass, algebra::verify_beta_projector(rep)),
        "2.2" => e(if spin1 { Fail } else { Pass }, algebra::spin0_strong_unchecked(rep)),
        "2.8" => e(if spin1 { Pass } else { Fail }, algebra::spin1_characterization_unchecked(rep)),
        "2.3" | "2.4" | "2.5" | "2.6" | "2.7" => match pick(algebra::omega_reports(rep), id) {
            Some(r) => e(Pass, r),
            None => Ok(None),
        },
        "3.7" => e(Pass, algebra::verify_e2_rewriting(rep, &generic_f())?),
        "3.8" => e(Pass, algebra::verify_constraint_identity(rep)),
        "4.3" => e(Pass, algebra::verify_projector_identities(rep, word_length)),
        "4.5" | "4.6" | "4.7" | "4.8" | "4.9" | "4.10" => {
            if !spin1 {
                return Ok(None);
            }
            e(Pass, pick(algebra::spin_operator_reports(rep)?, id).expect("registered id"))
        }
        "6.2" => e(Pass, algebra::verify_beta_spin_commutator(rep)),
        _ => Err(unknown(id)),
    }
}

/// The whole matrix-algebra suite on one representation.
pub fn algebra_suite(rep: &Representation, word_length: usize) -> Result<Vec<SuiteEntry>> {
    let mut out = Vec::new();
    for id in ALGEBRA_IDS {
        out.extend(algebra_entry(rep, id, word_length)?);
    }
    Ok(out)
}

/// One operator or reduction id on one representation and field.
pub fn field_entry(ops: &OperatorSet, id: &str, degree: u32) -> Result<Option<SuiteEntry>> {
    use Expectation::*;
    let rep = ops.rep;
    let field = ops.field;
    let spin1 = rep.sector == Sector::Spin1;
    let e = |x, r| Ok(Some(entry(rep, Some(field), x, r)));
    let basis = || TestBasis::new(rep.dim, degree);
    match id {
        "3.3" => e(Pass, op::verify_covariant_commutator(ops, &basis())),
        "3.5" if spin1 => Ok(None),
        "3.5" => e(Pass, op::verify_omega1_df_vanishes(ops)?),
        "5.4" => e(Pass, op::verify_factorization(ops, &basis())),
        "5.6" => {
            if !field.is_zero() {
                return Ok(None);
            }
            e(Pass, op::verify_free_factorization(ops, &basis()))
        }
        "5.7" => e(Pass, op::verify_commutator_57(ops, &basis())),
        "5.9" => e(Informational, op::verify_equation_class(ops, &basis())),
        "5.9-derived" => e(Pass, op::verify_equation_class_derived(ops, &basis())),
        "6.1" => e(Pass, op::verify_d2_commutes(ops, &basis())),
        "6.3" => e(Pass, op::verify_d2_third_order(ops)),
        "6.4" => e(Pass, op::verify_d2_third_order_second(ops, &basis())),
        "6.6" => e(Pass, op::verify_third_order(ops, &basis())),
        "3.11" if spin1 => Ok(None),
        "3.11" => e(Pass, reduction::verify_spin0_reduction(ops, degree)?),
        "4.4" => e(Pass, reduction::verify_form_equivalence(ops, degree)?),
        "troublesome" => e(Pass, reduction::verify_troublesome_term_vanishes(ops, degree)),
        "4.12" | "4.12-derived" => {
            if !spin1 || field.has_scalar_potential() {
                return Ok(None);
            }
            let printed = id == "4.12";
            e(if printed { Informational } else { Pass }, reduction::verify_fourth_order(ops, degree, printed)?)
        }
        _ => Err(unknown(id)),
    }
}

fn unknown(id: &str) -> KdpError {
    KdpError::InvalidParameter(format!("unknown identity id {id:?}"))
}

/// Runs one id over every configured spin (and field, where relevant).
pub fn run_identity(id: &str, opts: &SuiteOptions) -> Result<Vec<SuiteEntry>> {
    if !IDENTITY_IDS.iter().any(|(k, _)| *k == id) {
        return Err(unknown(id));
    }
    let mut out = Vec::new();
    for &spin in &opts.spins {
        let rep = Representation::spin(spin)?;
        if ALGEBRA_IDS.contains(&id) {
            out.extend(algebra_entry(&rep, id, opts.word_length)?);
        } else if CURRENT_IDS.contains(&id) {
            let r = currents_report(&rep, opts.m, &opts.modes, opts.samples, opts.seed)?;
            let mut reports = r.reports.into_iter();
            let (j, s, charge) = (reports.next(), reports.next(), reports.next());
            let mut picked = if id == "1.3" {
                let mut j = j.expect("j report");
                j.absorb(charge.expect("charge report"));
                j
            } else {
                s.expect("s report")
            };
            if id == "1.5" {
                picked.check(|| format!("min sampled s^0 = {:.3e}", r.min_s0), r.min_s0 >= 0.0, Vec::new);
            }
            out.push(entry(&rep, None, Expectation::Pass, picked));
        } else {
            for field in &opts.fields {
                let ops = OperatorSet::new(&rep, field, opts.m)?;
                out.extend(field_entry(&ops, id, opts.degree)?);
            }
        }
    }
    Ok(out)
}

/// Runs a list of ids; an empty list means every id.
pub fn run_identities(ids: &[String], opts: &SuiteOptions) -> Result<Vec<SuiteEntry>> {
    let all: Vec<String> = IDENTITY_IDS.iter().map(|(k, _)| k.to_string()).collect();
    let ids = if ids.is_empty() { &all[..] } else { ids };
    let mut out = Vec::new();
    for id in ids {
        out.extend(run_identity(id, opts)?);
    }
    Ok(out)
}

/// Whether any suite notices a mutated representation: construction fails
/// or some algebra check departs from its expectation.
pub fn mutation_detected(rep: &Representation, mu: usize, row: usize, col: usize) -> bool {
    let old = *rep.beta[mu].get(row, col);
    let value = old + crate::scalar::gi(1, 0);
    match rep.with_mutation(mu, row, col, value) {
        Err(_) => true,
        Ok(bad) => ALGEBRA_IDS.iter().any(|id| match algebra_entry(&bad, id, 2) {
            Err(_) => true,
            Ok(e) => e.is_some_and(|e| !e.as_expected()),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_id_is_rejected() {
        assert!(matches!(run_identity("9.9", &SuiteOptions::default()), Err(KdpError::InvalidParameter(_))));
    }

    #[test]
    fn catalogue_groups_cover_every_id() {
        for (id, _) in IDENTITY_IDS {
            let grouped = [ALGEBRA_IDS, OPERATOR_IDS, REDUCTION_IDS, CURRENT_IDS].iter().any(|g| g.contains(id));
            assert!(grouped, "{id} not in any group");
        }
    }

    #[test]
    fn algebra_suite_meets_expectations() {
        for spin in [0, 1] {
            let rep = Representation::spin(spin).unwrap();
            for e in algebra_suite(&rep, 2).unwrap() {
                assert!(e.as_expected(), "spin {spin} {}", e.report.id);
            }
        }
    }
}
