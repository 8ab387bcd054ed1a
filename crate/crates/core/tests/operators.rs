use kdp_core::algebra::Representation;
use kdp_core::exactmath::{monomials_up_to, CoordPolynomial};
use kdp_core::fields::FieldConfig;
use kdp_core::operators::{DiffOperator, OperatorSet, Wave, WaveComponent};
use kdp_core::scalar::{gi, q};
use kdp_core::GaussianRational;
use proptest::prelude::*;

/// Random polynomial wave of degree <= 2 with small Gaussian-integer coefficients.
fn wave(dim: usize) -> impl Strategy<Value = Wave<CoordPolynomial>> {
    let monos = monomials_up_to(2);
    let n = monos.len();
    proptest::collection::vec((0..dim, 0..n, -3i64..=3, -3i64..=3), 1..6).prop_map(move |terms| {
        let mut w = vec![CoordPolynomial::zero(); dim];
        for (c, k, re, im) in terms {
            w[c] = &w[c] + &CoordPolynomial::monomial(monos[k], gi(re, im));
        }
        w
    })
}

fn coeff() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, -4i64..=4).prop_map(|(re, im)| gi(re, im))
}

fn field_index() -> impl Strategy<Value = usize> {
    0..FieldConfig::shipped(q(1, 1)).len()
}

fn zero(w: &[CoordPolynomial]) -> bool {
    w.iter().all(WaveComponent::is_zero)
}

fn diff(a: &[CoordPolynomial], b: &[CoordPolynomial]) -> Wave<CoordPolynomial> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn check_linear(op: &DiffOperator, psi: &[CoordPolynomial], phi: &[CoordPolynomial], c: &GaussianRational) -> bool {
    let combo: Wave<CoordPolynomial> = psi.iter().zip(phi).map(|(a, b)| a.scale(c).add(b)).collect();
    let lhs = op.apply(&combo);
    let rhs: Wave<CoordPolynomial> = op.apply(psi).iter().zip(op.apply(phi)).map(|(a, b)| a.scale(c).add(&b)).collect();
    zero(&diff(&lhs, &rhs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operators_are_linear(spin in 0u8..=1, f in field_index(), c in coeff(), psi in wave(10), phi in wave(10)) {
        let rep = Representation::spin(spin).unwrap();
        let fields = FieldConfig::shipped(q(1, 1));
        let ops = OperatorSet::new(&rep, &fields[f], q(1, 1)).unwrap();
        let (psi, phi) = (&psi[..rep.dim], &phi[..rep.dim]);
        for op in [ops.lambda(), ops.d1(), ops.constraint(), ops.d(1)] {
            prop_assert!(check_linear(&op, psi, phi, &c));
        }
    }

    #[test]
    fn commutator_is_antisymmetric(spin in 0u8..=1, f in field_index(), mu in 0usize..4, psi in wave(10)) {
        let rep = Representation::spin(spin).unwrap();
        let fields = FieldConfig::shipped(q(1, 1));
        let ops = OperatorSet::new(&rep, &fields[f], q(1, 1)).unwrap();
        let psi = &psi[..rep.dim];
        let (a, b) = (ops.d(mu), ops.lambda());
        let ab = a.commutator(&b).apply(psi);
        let ba = b.commutator(&a).apply(psi);
        let sum: Wave<CoordPolynomial> = ab.iter().zip(&ba).map(|(x, y)| x.add(y)).collect();
        prop_assert!(zero(&sum));
    }

    #[test]
    fn covariant_derivatives_commute_to_field_strength(
        spin in 0u8..=1, f in field_index(), mu in 0usize..4, nu in 0usize..4, psi in wave(10)
    ) {
        let rep = Representation::spin(spin).unwrap();
        let fields = FieldConfig::shipped(q(1, 1));
        let field = &fields[f];
        let ops = OperatorSet::new(&rep, field, q(1, 1)).unwrap();
        let psi = &psi[..rep.dim];
        let lhs = ops.d(mu).commutator(&ops.d(nu)).apply(psi);
        // [D^mu, D^nu] = ie F^{nu mu}
        let ie = gi(0, 1) * GaussianRational::new(field.charge, q(0, 1));
        let fnm = &field.f[nu][mu];
        let rhs: Wave<CoordPolynomial> = psi.iter().map(|c| c.mul_poly(fnm).scale(&ie)).collect();
        prop_assert!(zero(&diff(&lhs, &rhs)));
    }

    #[test]
    fn partial_derivatives_commute(a in 0usize..4, b in 0usize..4, psi in wave(5)) {
        let ab: Vec<_> = psi.iter().map(|c| c.partial(a).partial(b)).collect();
        let ba: Vec<_> = psi.iter().map(|c| c.partial(b).partial(a)).collect();
        prop_assert!(zero(&diff(&ab, &ba)));
    }

    #[test]
    fn free_factorization_on_random_waves(spin in 0u8..=1, psi in wave(10)) {
        // d1 Lambda = D^a D_a - m^2 in zero field.
        let rep = Representation::spin(spin).unwrap();
        let zero_field = FieldConfig::zero(q(1, 1));
        let ops = OperatorSet::new(&rep, &zero_field, q(1, 1)).unwrap();
        let psi = &psi[..rep.dim];
        let lhs = ops.d1().apply(&ops.lambda().apply(psi));
        let kg = (&ops.dd() - &DiffOperator::constant(gi(1, 0))).apply(psi);
        let sum: Wave<CoordPolynomial> = lhs.iter().zip(&kg).map(|(x, y)| x.sub(y)).collect();
        prop_assert!(zero(&sum), "residual {:?}", sum);
    }
}
