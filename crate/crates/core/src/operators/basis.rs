//! Polynomial test bases for exact operator sweeps.

use crate::exactmath::{monomials_up_to, total_degree, CoordPolynomial, Exponent};
use crate::scalar::gi;

use super::diff::Wave;

/// One basis wave function: a single monomial in a single component.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement {
    pub component: usize,
    pub exponent: Exponent,
}

impl BasisElement {
    pub fn wave(&self, dim: usize) -> Wave<CoordPolynomial> {
        let mut w = vec![CoordPolynomial::zero(); dim];
        w[self.component] = CoordPolynomial::monomial(self.exponent, gi(1, 0));
        w
    }

    pub fn degree(&self) -> u32 {
        total_degree(&self.exponent)
    }

    pub fn label(&self) -> String {
        let m = CoordPolynomial::monomial(self.exponent, gi(1, 0));
        format!("e{} * {}", self.component + 1, m)
    }
}

/// Every unit component vector times every monomial of degree `≤ degree`,
/// ordered by total degree then component, so the first failure found in
/// order is a minimal one.
#[derive(Clone, Debug)]
pub struct TestBasis {
    pub dim: usize,
    pub degree: u32,
    pub elements: Vec<BasisElement>,
}

impl TestBasis {
    pub fn new(dim: usize, degree: u32) -> Self {
        Self::restricted(dim, degree, &(0..dim).collect::<Vec<_>>())
    }

    /// Basis supported on the listed (0-based) components only.
    pub fn restricted(dim: usize, degree: u32, components: &[usize]) -> Self {
        let mut monos = monomials_up_to(degree);
        monos.sort_by_key(|e| (total_degree(e), *e));
        let mut elements = Vec::with_capacity(monos.len() * components.len());
        for e in &monos {
            for &c in components {
                elements.push(BasisElement { component: c, exponent: *e });
            }
        }
        Self { dim, degree, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_matches_monomial_count() {
        // monomials of degree ≤ 2 in 4 variables: C(6,4) = 15
        assert_eq!(TestBasis::new(5, 2).len(), 75);
        assert_eq!(TestBasis::restricted(10, 1, &[0, 1]).len(), 10);
    }

    #[test]
    fn ordered_by_degree() {
        let b = TestBasis::new(3, 3);
        assert!(b.elements.windows(2).all(|w| w[0].degree() <= w[1].degree()));
    }
}
