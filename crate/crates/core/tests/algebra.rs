use kdp_core::algebra::{metric, Representation};
use kdp_core::scalar::{gi, q};
use kdp_core::suite::{algebra_suite, mutation_detected, Expectation};
use kdp_core::{ExactMatrix, GaussianRational, KdpError};
use proptest::prelude::*;

fn slash(rep: &Representation, a: &[i64; 4]) -> ExactMatrix {
    (0..4).fold(ExactMatrix::zeros(rep.dim, rep.dim), |acc, mu| &acc + &rep.beta[mu].scale(&gi(a[mu], 0)))
}

proptest! {
    // Contracting the trilinear relation with a^mu a^nu a^lambda gives
    // (a.beta)^3 = (a.a)(a.beta) for every vector a.
    #[test]
    fn cubic_relation_for_any_vector(spin in 0u8..=1, a in proptest::array::uniform4(-5i64..=5)) {
        let rep = Representation::spin(spin).unwrap();
        let b = slash(&rep, &a);
        let norm: i64 = (0..4).map(|mu| metric(mu, mu) * a[mu] * a[mu]).sum();
        prop_assert_eq!(b.pow(3), b.scale(&gi(norm, 0)));
    }

    #[test]
    fn beta0_squared_is_a_projector(spin in 0u8..=1) {
        let rep = Representation::spin(spin).unwrap();
        let p = rep.beta0_sq();
        prop_assert_eq!(&p * &p, p);
    }
}

#[test]
fn dimensions() {
    assert_eq!(Representation::spin(0).unwrap().dim, 5);
    assert_eq!(Representation::spin(1).unwrap().dim, 10);
    assert!(matches!(Representation::spin(2), Err(KdpError::UnsupportedSpin(2))));
}

#[test]
fn characterization_checks_split_the_sectors() {
    for spin in [0u8, 1] {
        let rep = Representation::spin(spin).unwrap();
        let entries = algebra_suite(&rep, 4).unwrap();
        assert!(entries.iter().all(|e| e.as_expected()), "spin {spin}");
        let find = |id: &str| entries.iter().find(|e| e.report.id == id);
        let strong = find("2.2").unwrap();
        assert_eq!(strong.report.passed, spin == 0);
        if spin == 1 {
            assert_eq!(strong.expectation, Expectation::Fail);
            assert!(!strong.report.counterexamples.is_empty());
        }
        assert_eq!(find("2.8").unwrap().report.passed, spin == 1);
    }
}

#[test]
fn sampled_mutations_are_detected() {
    // The exhaustive sweep lives in the acceptance target.
    for spin in [0u8, 1] {
        let rep = Representation::spin(spin).unwrap();
        for (mu, r, c) in [(0, 0, 0), (1, 1, 2), (2, rep.dim - 1, 0), (3, 2, rep.dim - 1)] {
            assert!(mutation_detected(&rep, mu, r, c), "spin {spin}: beta_{mu}[{r},{c}]");
        }
    }
}

#[test]
fn mutated_betas_break_the_trilinear_relation() {
    let rep = Representation::spin(0).unwrap();
    let old: GaussianRational = *rep.beta[1].get(0, 1);
    match rep.with_mutation(1, 0, 1, old + GaussianRational::new(q(1, 2), q(0, 1))) {
        Err(_) => {}
        Ok(bad) => {
            let b = &bad.beta[1];
            assert_ne!(b.pow(3), b.scale(&gi(-1, 0)), "mutation left beta_1^3 = -beta_1");
        }
    }
}
