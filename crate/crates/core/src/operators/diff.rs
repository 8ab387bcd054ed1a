//! Matrix-valued differential operators as expression trees.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::metric;
use crate::exactmath::{CoordPolynomial, ExpSum, SurdNumber};
use crate::scalar::{gi, GaussianRational};
use crate::ExactMatrix;

/// One component of a wave function. Implemented by exact polynomials,
/// exponential sums, and sampled grid functions.
pub trait WaveComponent: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &GaussianRational) -> Self;
    fn mul_poly(&self, p: &CoordPolynomial) -> Self;
    /// `∂/∂x^axis`.
    fn partial(&self, axis: usize) -> Self;

    /// `∂²/∂(x^axis)²`; carriers with a native second-derivative rule
    /// override this.
    fn second_partial(&self, axis: usize) -> Self {
        self.partial(axis).partial(axis)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&gi(-1, 0)))
    }

    /// Exact ratio `self / other` if the two are Gaussian-rational
    /// multiples of each other. Floating-point carriers return `None`.
    fn ratio_to(&self, _other: &Self) -> Option<GaussianRational> {
        None
    }

    /// Human-readable rendering for counterexamples.
    fn render(&self) -> String;
}

impl WaveComponent for CoordPolynomial {
    fn zero_like(&self) -> Self {
        CoordPolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        CoordPolynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        CoordPolynomial::scale(self, c)
    }
    fn mul_poly(&self, p: &CoordPolynomial) -> Self {
        self * p
    }
    fn partial(&self, axis: usize) -> Self {
        CoordPolynomial::partial(self, axis)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ratio_to(&self, other: &Self) -> Option<GaussianRational> {
        let (e, c) = other.terms().next()?;
        let r = self.coeff(e) / c;
        (&other.scale(&r) == self).then_some(r)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl WaveComponent for ExpSum {
    fn zero_like(&self) -> Self {
        ExpSum::zero()
    }
    fn is_zero(&self) -> bool {
        ExpSum::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        ExpSum::add(self, other)
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        self.scale_gaussian(c)
    }
    fn mul_poly(&self, p: &CoordPolynomial) -> Self {
        ExpSum::mul_poly(self, p)
    }
    fn partial(&self, axis: usize) -> Self {
        ExpSum::partial(self, axis)
    }
    fn ratio_to(&self, other: &Self) -> Option<GaussianRational> {
        let (phase, amp) = other.terms().next()?;
        let (e, c) = amp.terms().next()?;
        let mine = self.terms().find(|(p, _)| *p == phase)?.1.coeff(e);
        let r: SurdNumber = mine / c.clone();
        let r = r.as_gaussian()?;
        (&other.scale_gaussian(&r) == self).then_some(r)
    }
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

pub type Wave<W> = Vec<W>;

/// `dim × dim` matrix of polynomial multipliers.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    pub dim: usize,
    pub entries: Vec<Vec<CoordPolynomial>>,
}

impl PolyMatrix {
    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: vec![vec![CoordPolynomial::zero(); dim]; dim] }
    }

    /// `M · p(x)`.
    pub fn from_matrix_poly(m: &ExactMatrix, p: &CoordPolynomial) -> Self {
        let mut out = Self::zero(m.rows());
        out.add_matrix_poly(m, p);
        out
    }

    pub fn add_matrix_poly(&mut self, m: &ExactMatrix, p: &CoordPolynomial) {
        if p.is_zero() {
            return;
        }
        for (i, j, v) in m.nonzero_entries() {
            self.entries[i][j] += &p.scale(&v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(CoordPolynomial::is_zero)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[i][j] = &self.entries[i][j] - &other.entries[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|r| r.iter().map(|p| p.scale(c)).collect()).collect(),
        }
    }

    /// Nonzero entries, rendered, for counterexamples.
    pub fn residual(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if !self.entries[i][j].is_zero() {
                    out.push(format!("({},{}) = {}", i + 1, j + 1, self.entries[i][j]));
                }
            }
        }
        out
    }
}

/// A linear, matrix-valued differential operator.
#[derive(Clone, Debug, PartialEq)]
pub enum DiffOperator {
    /// Constant matrix.
    Const(ExactMatrix),
    /// Polynomial-coefficient matrix multiplier.
    Poly(PolyMatrix),
    /// Scalar polynomial multiplier (times the identity).
    Scalar(CoordPolynomial),
    /// `D^μ = i∂^μ − eA^μ`; `coupling` is `eA^μ`.
    Covariant { mu: usize, coupling: CoordPolynomial },
    /// `∂_μ` (lower index).
    Partial(usize),
    Sum(Vec<DiffOperator>),
    /// `ops[0] ∘ ops[1] ∘ …`; the last factor acts first.
    Compose(Vec<DiffOperator>),
    Scale(GaussianRational, Box<DiffOperator>),
}

impl DiffOperator {
    pub fn zero() -> Self {
        DiffOperator::Sum(Vec::new())
    }

    pub fn identity() -> Self {
        DiffOperator::Compose(Vec::new())
    }

    pub fn constant(c: GaussianRational) -> Self {
        DiffOperator::Scale(c, Box::new(DiffOperator::identity()))
    }

    pub fn scale(self, c: GaussianRational) -> Self {
        if c.is_one() {
            self
        } else {
            DiffOperator::Scale(c, Box::new(self))
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn apply<W: WaveComponent>(&self, psi: &[W]) -> Wave<W> {
        match self {
            DiffOperator::Const(m) => apply_matrix(m, psi),
            DiffOperator::Poly(pm) => {
                assert_eq!(pm.dim, psi.len(), "operator/wave dimension mismatch");
                (0..pm.dim)
                    .map(|i| {
                        let mut acc = psi[i].zero_like();
                        for (j, p) in pm.entries[i].iter().enumerate() {
                            if !p.is_zero() && !psi[j].is_zero() {
                                acc = acc.add(&psi[j].mul_poly(p));
                            }
                        }
                        acc
                    })
                    .collect()
            }
            DiffOperator::Scalar(p) => psi.iter().map(|c| c.mul_poly(p)).collect(),
            DiffOperator::Covariant { mu, coupling } => {
                let factor = gi(0, metric(*mu, *mu));
                psi.iter()
                    .map(|c| {
                        let d = c.partial(*mu).scale(&factor);
                        if coupling.is_zero() {
                            d
                        } else {
                            d.sub(&c.mul_poly(coupling))
                        }
                    })
                    .collect()
            }
            DiffOperator::Partial(mu) => psi.iter().map(|c| c.partial(*mu)).collect(),
            DiffOperator::Sum(ops) => {
                let mut acc: Wave<W> = psi.iter().map(|c| c.zero_like()).collect();
                for op in ops {
                    let r = op.apply(psi);
                    for (a, b) in acc.iter_mut().zip(&r) {
                        *a = a.add(b);
                    }
                }
                acc
            }
            DiffOperator::Compose(ops) => {
                let ops = normalized_factors(ops);
                let mut cur = psi.to_vec();
                let mut k = ops.len();
                while k > 0 {
                    if let (
                        Some(DiffOperator::Covariant { mu: a, coupling: ca }),
                        DiffOperator::Covariant { mu: b, coupling: cb },
                    ) = (k.checked_sub(2).map(|i| ops[i]), ops[k - 1])
                    {
                        if a == b {
                            cur = cur.iter().map(|c| covariant_pair(*a, ca, cb, c)).collect();
                            k -= 2;
                            continue;
                        }
                    }
                    cur = ops[k - 1].apply(&cur);
                    k -= 1;
                }
                cur
            }
            DiffOperator::Scale(c, op) => op.apply(psi).iter().map(|w| w.scale(c)).collect(),
        }
    }
}

/// Factors of a composition with constant matrices moved left past the
/// scalar operators they commute with, so repeated `D^μD^μ` become adjacent.
fn normalized_factors(ops: &[DiffOperator]) -> Vec<&DiffOperator> {
    let mut out: Vec<&DiffOperator> = Vec::with_capacity(ops.len());
    for op in ops {
        out.push(op);
        let mut i = out.len() - 1;
        while i > 0
            && matches!(out[i], DiffOperator::Const(_))
            && matches!(out[i - 1], DiffOperator::Covariant { .. } | DiffOperator::Partial(_) | DiffOperator::Scalar(_))
        {
            out.swap(i, i - 1);
            i -= 1;
        }
    }
    out
}

/// `(f∂ − a)(f∂ − b)ψ = f²∂²ψ − f(∂b)ψ − f(a + b)∂ψ + abψ` with `f = i g^{μμ}`.
fn covariant_pair<W: WaveComponent>(mu: usize, a: &CoordPolynomial, b: &CoordPolynomial, c: &W) -> W {
    let f = gi(0, metric(mu, mu));
    let mut out = c.second_partial(mu).scale(&(f * f));
    let ab = a + b;
    if !ab.is_zero() {
        out = out.sub(&c.partial(mu).mul_poly(&ab).scale(&f));
    }
    let db = b.partial(mu);
    if !db.is_zero() {
        out = out.sub(&c.mul_poly(&db).scale(&f));
    }
    let prod = a * b;
    if !prod.is_zero() {
        out = out.add(&c.mul_poly(&prod));
    }
    out
}

pub fn apply_matrix<W: WaveComponent>(m: &ExactMatrix, psi: &[W]) -> Wave<W> {
    assert_eq!(m.cols(), psi.len(), "operator/wave dimension mismatch");
    (0..m.rows())
        .map(|i| {
            let mut acc = psi[0].zero_like();
            for (j, w) in psi.iter().enumerate() {
                let c = m.get(i, j);
                if !c.is_zero() && !w.is_zero() {
                    acc = acc.add(&w.scale(c));
                }
            }
            acc
        })
        .collect()
}

impl<'a> Add<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        let mut terms = Vec::new();
        for op in [self, rhs] {
            match op {
                DiffOperator::Sum(v) => terms.extend(v.iter().cloned()),
                o => terms.push(o.clone()),
            }
        }
        DiffOperator::Sum(terms)
    }
}

impl<'a> Sub<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;
    fn mul(self, rhs: &DiffOperator) -> DiffOperator {
        let mut factors = Vec::new();
        for op in [self, rhs] {
            match op {
                DiffOperator::Compose(v) => factors.extend(v.iter().cloned()),
                o => factors.push(o.clone()),
            }
        }
        DiffOperator::Compose(factors)
    }
}

impl Add for DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: DiffOperator) -> DiffOperator {
        &self + &rhs
    }
}

impl Sub for DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: DiffOperator) -> DiffOperator {
        &self - &rhs
    }
}

impl Mul for DiffOperator {
    type Output = DiffOperator;
    fn mul(self, rhs: DiffOperator) -> DiffOperator {
        &self * &rhs
    }
}

impl Neg for DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        self.scale(gi(-1, 0))
    }
}

/// Sum of operators; empty gives zero.
pub fn sum(ops: impl IntoIterator<Item = DiffOperator>) -> DiffOperator {
    DiffOperator::Sum(ops.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn covariant_derivative_of_monomial() {
        // D^1 x = i ∂^1 x = −i
        let d = DiffOperator::Covariant { mu: 1, coupling: CoordPolynomial::zero() };
        let out = d.apply(&[CoordPolynomial::coordinate(1)]);
        assert_eq!(out[0], CoordPolynomial::constant(gi(0, -1)));
        // D^0 t = i
        let d0 = DiffOperator::Covariant { mu: 0, coupling: CoordPolynomial::zero() };
        assert_eq!(d0.apply(&[CoordPolynomial::coordinate(0)])[0], CoordPolynomial::constant(gi(0, 1)));
    }

    #[test]
    fn composition_order() {
        // (x ∘ ∂_x) 1 = 0, (∂_x ∘ x) 1 = 1
        let x = DiffOperator::Scalar(CoordPolynomial::coordinate(1));
        let dx = DiffOperator::Partial(1);
        let one = [CoordPolynomial::constant(gi(1, 0))];
        assert!((&x * &dx).apply(&one)[0].is_zero());
        assert_eq!((&dx * &x).apply(&one)[0], one[0]);
        assert_eq!(dx.commutator(&x).apply(&one)[0], one[0]);
    }

    #[test]
    fn ratio_detection() {
        let p = CoordPolynomial::coordinate(2).scale(&gi(3, 0));
        let r = p.scale(&gi(0, 2));
        assert_eq!(r.ratio_to(&p), Some(gi(0, 2)));
        let other = &p + &CoordPolynomial::constant(gi(1, 0));
        assert_eq!(other.ratio_to(&p), None);
        let _ = q(1, 1);
    }
}
