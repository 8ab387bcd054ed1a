//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the summary is always printed.

use std::time::{Duration, Instant};

use kdp_core::algebra::Representation;
use kdp_core::currents::{currents_report, ModeSpec};
use kdp_core::fields::FieldConfig;
use kdp_core::operators::{operator_suite, verify_free_factorization, OperatorSet, TestBasis};
use kdp_core::reduction::{verify_form_equivalence, verify_spin0_reduction, verify_troublesome_term_vanishes};
use kdp_core::scalar::q;
use kdp_core::spectra::{
    convergence_study, gauge_difference, landau_spectrum_spin0, landau_spectrum_spin1, route_disagreement,
    spin0_b_sign_difference, spin_splittings, splitting_asymmetry, Frequency, LandauParams, Route,
};
use kdp_core::suite::{algebra_suite, mutation_detected};
use kdp_core::algebra::{verify_projector_identities, IdentityReport};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn first_failure(reports: &[(String, IdentityReport)]) -> Option<String> {
    reports.iter().find(|(_, r)| !r.passed).map(|(ctx, r)| {
        let ce = r.counterexamples.first().map(|c| c.case.clone()).unwrap_or_default();
        format!("{} {ctx}: {ce}", r.id)
    })
}

fn spins() -> Vec<Representation> {
    vec![Representation::spin(0).unwrap(), Representation::spin(1).unwrap()]
}

fn fields() -> Vec<FieldConfig> {
    FieldConfig::shipped(q(1, 1))
}

fn c1_algebra() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut triples = Vec::new();
    for rep in spins() {
        for e in algebra_suite(&rep, 4).unwrap() {
            if e.report.id == "1.2" {
                triples.push(e.report.cases_checked);
            }
            if !e.as_expected() {
                bad.push(format!("spin {} {}", e.spin, e.report.id));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && triples == [64, 64] && elapsed < Duration::from_secs(5);
    outcome(ok, format!("1.2 triples {triples:?}, mismatches {bad:?}, {:.2}s (< 5s)", elapsed.as_secs_f64()))
}

fn c2_free_factorization() -> Outcome {
    let zero = FieldConfig::zero(q(1, 1));
    let mut cases = 0;
    let mut fails = Vec::new();
    for rep in spins() {
        let ops = OperatorSet::new(&rep, &zero, q(1, 1)).unwrap();
        let r = verify_free_factorization(&ops, &TestBasis::new(rep.dim, 3));
        cases += r.cases_checked;
        if !r.passed {
            fails.push((format!("{:?}", rep.sector), r));
        }
    }
    outcome(fails.is_empty(), format!("{cases} basis elements, degree <= 3, {:?}", first_failure(&fails)))
}

fn c3_operator_identities() -> Outcome {
    let mut fails = Vec::new();
    let mut printed59 = Vec::new();
    let mut cases = 0;
    for rep in spins() {
        for field in fields() {
            let ops = OperatorSet::new(&rep, &field, q(1, 1)).unwrap();
            for r in operator_suite(&ops, 3).unwrap() {
                cases += r.cases_checked;
                let ctx = format!("{:?} {}", rep.sector, field.label());
                match r.id.as_str() {
                    "5.6" => {}
                    "5.9" => printed59.push((ctx, r)),
                    _ if !r.passed => fails.push((ctx, r)),
                    _ => {}
                }
            }
        }
    }
    // The printed 5.9 form is a documented discrepancy: it must fail
    // reproducibly with a recorded counterexample, and only for F != 0.
    let documented = printed59.iter().all(|(ctx, r)| {
        let zero_field = ctx.ends_with("zero");
        if zero_field { r.passed } else { r.passed || !r.counterexamples.is_empty() }
    });
    let printed_fails = printed59.iter().filter(|(_, r)| !r.passed).count();
    outcome(
        fails.is_empty() && documented,
        format!(
            "{cases} cases; 5.4 5.7 5.9-derived 6.1 6.3 6.4 6.6 exact; printed 5.9 fails in {printed_fails} configs (documented); {:?}",
            first_failure(&fails)
        ),
    )
}

fn c4_reduced_operator() -> Outcome {
    let mut fails = Vec::new();
    for rep in spins() {
        for field in fields() {
            let ops = OperatorSet::new(&rep, &field, q(1, 1)).unwrap();
            let r = verify_form_equivalence(&ops, 3).unwrap();
            if !r.passed {
                fails.push((format!("{:?} {}", rep.sector, field.label()), r));
            }
        }
        let words = verify_projector_identities(&rep, 4);
        if !words.passed {
            fails.push((format!("{:?}", rep.sector), words));
        }
    }
    outcome(fails.is_empty(), format!("raw = compact = spin form on range(beta0^2), words <= 4; {:?}", first_failure(&fails)))
}

fn c5_troublesome() -> Outcome {
    let mut fails = Vec::new();
    let mut nonzero = 0;
    for rep in spins() {
        for field in fields() {
            let ops = OperatorSet::new(&rep, &field, q(1, 1)).unwrap();
            if !ops.troublesome_matrix().is_zero() {
                nonzero += 1;
            }
            let r = verify_troublesome_term_vanishes(&ops, 3);
            if !r.passed {
                fails.push((format!("{:?} {}", rep.sector, field.label()), r));
            }
        }
    }
    outcome(fails.is_empty(), format!("vanishes after reduction; term itself nonzero in {nonzero} configs; {:?}", first_failure(&fails)))
}

fn c6_spin0_lift() -> Outcome {
    let rep = Representation::spin(0).unwrap();
    let mut fails = Vec::new();
    let mut cases = 0;
    for field in fields() {
        let ops = OperatorSet::new(&rep, &field, q(1, 1)).unwrap();
        let r = verify_spin0_reduction(&ops, 4).unwrap();
        cases += r.cases_checked;
        if !r.passed {
            fails.push((field.label(), r));
        }
    }
    outcome(fails.is_empty(), format!("{cases} cases up to degree 4; {:?}", first_failure(&fails)))
}

fn c7_spin0_landau() -> Outcome {
    let start = Instant::now();
    let p = LandauParams::default();
    let (fd, oracle) = match landau_spectrum_spin0(&p, 1e-6) {
        Ok(x) => x,
        Err(e) => return outcome(false, e.to_string()),
    };
    let vs_oracle = route_disagreement(&fd, &oracle);
    let vs_closed = fd.iter().map(|l| ((l.e2 - p.exact_spin0(l.n)) / p.exact_spin0(l.n)).abs()).fold(0.0, f64::max);
    let oracle_closed =
        oracle.iter().map(|l| ((l.e2 - p.exact_spin0(l.n)) / p.exact_spin0(l.n)).abs()).fold(0.0, f64::max);
    let sign = spin0_b_sign_difference(&p).unwrap();
    let gauge = gauge_difference(&p).unwrap();
    let elapsed = start.elapsed();
    let ok = fd.len() == 5
        && vs_oracle <= 1e-6
        && vs_closed <= 1e-6
        && oracle_closed <= 1e-6
        && sign <= 1e-12
        && gauge <= 1e-6
        && elapsed < Duration::from_secs(30);
    outcome(
        ok,
        format!(
            "n <= 4, N = {}: vs oracle {vs_oracle:.1e}, oracle vs (2n+1)|eB| {oracle_closed:.1e}, B-sign {sign:.1e}, gauge {gauge:.1e}, {:.1}s (< 30s)",
            p.grid_n,
            elapsed.as_secs_f64()
        ),
    )
}

fn c8_spin1_landau() -> Outcome {
    let p = LandauParams { b: q(1, 10), grid_n: 256, ..Default::default() };
    let (a, b) = match landau_spectrum_spin1(&p, 1e-5) {
        Ok(x) => x,
        Err(e) => return outcome(false, e.to_string()),
    };
    let agree = route_disagreement(&a, &b);
    let study = LandauParams { b: q(1, 10), order: 4, box_lengths: 20.0, n_max: 2, ..Default::default() };
    let orders: Vec<f64> = [Route::ORedEigen, Route::FourthOrder]
        .iter()
        .map(|&r| convergence_study(&study, 1, r, 64).map(|s| s.pooled).unwrap_or(f64::NAN))
        .collect();
    let orders_ok = orders.iter().all(|o| (o - 4.0).abs() <= 0.5);
    let half = LandauParams { b: q(1, 20), ..p.clone() };
    let asym = splitting_asymmetry(&a)[0];
    let asym_half = kdp_core::spectra::spin1_route(&half, Route::FourthOrder).map(|l| splitting_asymmetry(&l)[0]);
    let signs_ok = spin_splittings(&a).iter().all(|(up, dn)| *up < 0.0 && *dn > 0.0);
    let leading = match &asym_half {
        Ok(h) => *h <= 0.6 * asym && asym < 0.1,
        Err(_) => false,
    };
    outcome(
        orders_ok && signs_ok && leading && agree <= 1e-5,
        format!(
            "routes agree to {agree:.1e} (N = {}), observed order {:.2}/{:.2} (nominal 4), splitting asymmetry {asym:.3} -> {:.3} as B halves",
            p.grid_n,
            orders[0],
            orders[1],
            asym_half.unwrap_or(f64::NAN)
        ),
    )
}

fn c9_currents() -> Outcome {
    let modes = [
        ModeSpec { momentum: [1, 0, 0], frequency: Frequency::Positive, polarization: 0, amplitude: q(1, 1) },
        ModeSpec { momentum: [0, 2, -1], frequency: Frequency::Positive, polarization: 0, amplitude: q(2, 3) },
        ModeSpec { momentum: [0, 1, 1], frequency: Frequency::Negative, polarization: 0, amplitude: q(-1, 2) },
    ];
    let mut bad = Vec::new();
    let mut min = f64::INFINITY;
    for rep in spins() {
        for k in 1..=3 {
            match currents_report(&rep, q(1, 1), &modes[..k], 500, 7) {
                Ok(r) => {
                    min = min.min(r.min_s0);
                    if !r.passed {
                        bad.push(format!("{:?} {k} modes", rep.sector));
                    }
                }
                Err(e) => bad.push(e.to_string()),
            }
        }
    }
    outcome(bad.is_empty(), format!("1-3 modes, both spins: dj = ds = 0 exact, charge constant, min s0 = {min:.3e}; {bad:?}"))
}

fn c10_fault_injection() -> Outcome {
    let mut total = 0;
    let mut missed = Vec::new();
    for rep in spins() {
        for mu in 0..4 {
            for r in 0..rep.dim {
                for c in 0..rep.dim {
                    total += 1;
                    if !mutation_detected(&rep, mu, r, c) {
                        missed.push((rep.dim, mu, r, c));
                    }
                }
            }
        }
    }
    outcome(missed.is_empty(), format!("{total} single-entry mutations, undetected {missed:?}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("algebra suite", c1_algebra),
        ("free factorization 5.6", c2_free_factorization),
        ("operator identities in fields", c3_operator_identities),
        ("reduced operator forms", c4_reduced_operator),
        ("troublesome term", c5_troublesome),
        ("spin-0 lift", c6_spin0_lift),
        ("spin-0 Landau levels", c7_spin0_landau),
        ("spin-1 dual routes", c8_spin1_landau),
        ("currents", c9_currents),
        ("fault injection", c10_fault_injection),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        if !o.passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} [{}] {name}: {} ({:.1}s)",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
