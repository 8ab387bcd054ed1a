//! Exact integration over the periodic box `[0, L)³`.
//!
//! Momenta are integers in units of `2π/L`, so `e^{ikL} = 1` and every
//! monomial-times-exponential integral is a polynomial in the formal box
//! length `L` with Gaussian-rational coefficients:
//!
//! * `k = 0`: `∫₀ᴸ x^a dx = L^{a+1}/(a+1)`
//! * `k ≠ 0`: `I_0 = 0`, `I_a = L^a/(ik) − (a/(ik)) I_{a−1}`

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::expsum::ExpSum;
use super::surd::SurdNumber;
use crate::scalar::{gi, GaussianRational, Rational};

/// Key of a box-integral term: `(frequency, power of t, power of L)`.
pub type BoxKey = (SurdNumber, u8, u32);

/// `Σ c · t^a · L^b · e^{−iωt}`; what survives spatial integration.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BoxIntegral {
    terms: BTreeMap<BoxKey, SurdNumber>,
}

impl BoxIntegral {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BoxKey, &SurdNumber)> {
        self.terms.iter()
    }

    /// True when no term depends on time.
    pub fn is_time_independent(&self) -> bool {
        self.terms.keys().all(|(w, a, _)| w.is_zero() && *a == 0)
    }

    /// Coefficient of `L^power` in the time-independent part.
    pub fn coefficient(&self, l_power: u32) -> SurdNumber {
        self.terms
            .get(&(SurdNumber::zero(), 0, l_power))
            .cloned()
            .unwrap_or_else(SurdNumber::zero)
    }

    fn add(&mut self, key: BoxKey, c: SurdNumber) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(SurdNumber::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl fmt::Debug for BoxIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((w, a, b), c)| format!("[{c}] t^{a} L^{b} exp(−i({w})t)"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `∫₀ᴸ x^a e^{ikx} dx` as a map from power of `L` to coefficient.
pub fn integrate_1d(a: u32, k: i64) -> BTreeMap<u32, GaussianRational> {
    let mut out = BTreeMap::new();
    if k == 0 {
        out.insert(a + 1, GaussianRational::new(Rational::new(1, a as i128 + 1), Rational::zero()));
        return out;
    }
    // 1/(ik) = −i/k
    let inv_ik = gi(0, -1) / gi(k, 0);
    let mut prev: BTreeMap<u32, GaussianRational> = BTreeMap::new();
    for n in 1..=a {
        let mut cur: BTreeMap<u32, GaussianRational> = BTreeMap::new();
        cur.insert(n, inv_ik);
        let f = -(inv_ik * gi(n as i64, 0));
        for (p, c) in &prev {
            let e = cur.entry(*p).or_insert_with(GaussianRational::zero);
            *e += f * c;
        }
        cur.retain(|_, c| !c.is_zero());
        prev = cur;
    }
    prev
}

/// Spatial integral of a scalar exponential sum over the periodic box.
pub fn box_integrate(s: &ExpSum) -> BoxIntegral {
    let mut out = BoxIntegral::default();
    for (phase, amp) in s.terms() {
        for (e, c) in amp.terms() {
            let mut factors: BTreeMap<u32, GaussianRational> = BTreeMap::new();
            factors.insert(0, GaussianRational::one());
            for axis in 0..3 {
                let one_d = integrate_1d(e[axis + 1] as u32, phase.momentum[axis]);
                let mut next = BTreeMap::new();
                for (p1, c1) in &factors {
                    for (p2, c2) in &one_d {
                        let slot = next.entry(p1 + p2).or_insert_with(GaussianRational::zero);
                        *slot += c1 * c2;
                    }
                }
                factors = next;
            }
            for (lp, f) in factors {
                out.add((phase.frequency.clone(), e[0], lp), c.scale(&f));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly::CoordPolynomial;
    use crate::scalar::q;

    #[test]
    fn unit_constant_gives_volume() {
        let b = box_integrate(&ExpSum::constant(SurdNumber::one()));
        assert_eq!(b.coefficient(3), SurdNumber::one());
        assert!(b.is_time_independent());
    }

    #[test]
    fn nonzero_lattice_mode_integrates_to_zero() {
        let w = SurdNumber::sqrt_of(q(3, 1));
        let s = ExpSum::plane_wave([1, -1, 1], w, SurdNumber::one());
        assert!(box_integrate(&s).is_zero());
    }

    #[test]
    fn x_times_mode() {
        // ∫₀ᴸ x e^{ix} dx = L/i = −iL
        let m = integrate_1d(1, 1);
        assert_eq!(m.get(&1), Some(&gi(0, -1)));
        assert_eq!(m.len(), 1);
        let s = ExpSum::from_poly(&CoordPolynomial::coordinate(1).scale(&gi(2, 0)));
        assert_eq!(box_integrate(&s).coefficient(4), SurdNumber::one());
    }
}
