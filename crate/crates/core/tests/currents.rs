use kdp_core::algebra::Representation;
use kdp_core::currents::{build_modes, current_j, current_s, currents_report, verify_conservation, ModeSpec};
use kdp_core::scalar::q;
use kdp_core::spectra::Frequency;
use kdp_core::KdpError;

fn mode(k: [i64; 3], frequency: Frequency, polarization: usize) -> ModeSpec {
    ModeSpec { momentum: k, frequency, polarization, amplitude: q(1, 1) }
}

#[test]
fn single_modes_conserve_both_currents() {
    for spin in [0u8, 1] {
        let rep = Representation::spin(spin).unwrap();
        let pols = if spin == 0 { 1 } else { 3 };
        for pol in 0..pols {
            for freq in [Frequency::Positive, Frequency::Negative] {
                let psi = build_modes(&rep, q(1, 1), &[mode([1, -1, 2], freq, pol)]).unwrap();
                let j = current_j(&rep, &psi).unwrap();
                let s = current_s(&rep, &psi).unwrap();
                assert!(verify_conservation(&j, "j").passed, "spin {spin} pol {pol}");
                assert!(verify_conservation(&s, "s").passed, "spin {spin} pol {pol}");
            }
        }
    }
}

#[test]
fn report_is_deterministic_in_seed() {
    let rep = Representation::spin(1).unwrap();
    let modes = [mode([1, 0, 0], Frequency::Positive, 0), mode([0, 0, 2], Frequency::Negative, 2)];
    let a = currents_report(&rep, q(1, 1), &modes, 100, 3).unwrap();
    let b = currents_report(&rep, q(1, 1), &modes, 100, 3).unwrap();
    assert!(a.passed);
    assert_eq!(a.min_s0, b.min_s0);
    assert!(a.min_s0 >= 0.0);
}

#[test]
fn invalid_mode_lists_are_rejected() {
    let rep = Representation::spin(0).unwrap();
    assert!(matches!(build_modes(&rep, q(1, 1), &[]), Err(KdpError::InvalidParameter(_))));
    let bad = [mode([0, 0, 1], Frequency::Positive, 7)];
    assert!(matches!(build_modes(&rep, q(1, 1), &bad), Err(KdpError::InvalidParameter(_))));
    let ok = [mode([0, 0, 1], Frequency::Positive, 0)];
    assert!(build_modes(&rep, q(0, 1), &ok).is_err());
}
