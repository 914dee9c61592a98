//! Polynomials with natural-number coefficients, as coefficient vectors.
//! An independent oracle: expansion here never looks at positions or lenses.

#![allow(dead_code)]

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatPoly(pub Vec<BigUint>);

impl NatPoly {
    /// `coeffs[k]` is the coefficient of `y^k`.
    pub fn new(coeffs: &[u64]) -> Self {
        NatPoly(coeffs.iter().map(|&c| BigUint::from(c)).collect()).trim()
    }

    pub fn constant(c: u64) -> Self {
        NatPoly::new(&[c])
    }

    pub fn y() -> Self {
        NatPoly::new(&[0, 1])
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, other: &NatPoly) -> NatPoly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &NatPoly, k: usize| p.0.get(k).cloned().unwrap_or_default();
        NatPoly((0..n).map(|k| get(self, k) + get(other, k)).collect()).trim()
    }

    pub fn mul(&self, other: &NatPoly) -> NatPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return NatPoly(Vec::new());
        }
        let mut out = vec![BigUint::zero(); self.0.len() + other.0.len() - 1];
        for (a, x) in self.0.iter().enumerate() {
            for (b, z) in other.0.iter().enumerate() {
                out[a + b] += x * z;
            }
        }
        NatPoly(out).trim()
    }

    pub fn pow(&self, n: usize) -> NatPoly {
        (0..n).fold(NatPoly::constant(1), |acc, _| acc.mul(self))
    }

    /// `self(other)`, substituting `other` for `y`.
    pub fn compose(&self, other: &NatPoly) -> NatPoly {
        let mut out = NatPoly(Vec::new());
        for (k, c) in self.0.iter().enumerate() {
            out = out.add(&NatPoly(vec![c.clone()]).mul(&other.pow(k)));
        }
        out
    }

    /// Dirichlet product: `y^a ⊗ y^b = y^{ab}`.
    pub fn tensor(&self, other: &NatPoly) -> NatPoly {
        let mut out = NatPoly(Vec::new());
        for (a, x) in self.0.iter().enumerate() {
            for (b, z) in other.0.iter().enumerate() {
                let mut term = vec![BigUint::zero(); a * b + 1];
                term[a * b] = x * z;
                out = out.add(&NatPoly(term));
            }
        }
        out
    }

    pub fn eval(&self, x: u64) -> BigUint {
        self.0
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| acc * BigUint::from(x) + c)
    }

    /// Coefficient vector of a finite polynomial given by its exponents.
    pub fn from_exponents(exps: &[usize]) -> NatPoly {
        let n = exps.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![BigUint::zero(); n];
        for &e in exps {
            out[e] += BigUint::one();
        }
        NatPoly(out).trim()
    }
}
