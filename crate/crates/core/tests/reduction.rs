use kdp_core::algebra::Representation;
use kdp_core::fields::{make_field, FieldConfig, FieldKind, Gauge};
use kdp_core::operators::OperatorSet;
use kdp_core::reduction::{build_o_red, range_components, verify_fourth_order, ReducedForm};
use kdp_core::scalar::q;
use kdp_core::KdpError;

#[test]
fn range_of_beta0_squared() {
    assert_eq!(range_components(&Representation::spin(0).unwrap()).len(), 2);
    assert_eq!(range_components(&Representation::spin(1).unwrap()).len(), 6);
}

#[test]
fn spin_form_needs_spin1() {
    let rep = Representation::spin(0).unwrap();
    let field = FieldConfig::zero(q(1, 1));
    let ops = OperatorSet::new(&rep, &field, q(1, 1)).unwrap();
    assert!(matches!(build_o_red(&ops, ReducedForm::SpinForm), Err(KdpError::InvalidForm { .. })));
}

#[test]
fn fourth_order_in_uniform_b() {
    let rep = Representation::spin(1).unwrap();
    let field = make_field(FieldKind::UniformB { b: q(2, 1), gauge: Gauge::Symmetric }, q(1, 1)).unwrap();
    let ops = OperatorSet::new(&rep, &field, q(3, 2)).unwrap();
    assert!(verify_fourth_order(&ops, 2, false).unwrap().passed);
    let printed = verify_fourth_order(&ops, 2, true).unwrap();
    assert!(!printed.passed && !printed.counterexamples.is_empty());
}

#[test]
fn fourth_order_rejects_scalar_potential() {
    let rep = Representation::spin(1).unwrap();
    let field = make_field(FieldKind::UniformE { e: q(1, 1) }, q(1, 1)).unwrap();
    let ops = OperatorSet::new(&rep, &field, q(1, 1)).unwrap();
    assert!(matches!(verify_fourth_order(&ops, 2, false), Err(KdpError::NonZeroScalarPotential)));
}
