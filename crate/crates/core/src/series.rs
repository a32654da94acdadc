//! Truncated power series and the generating-series test for Koszul pairs.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Power series truncated after degree `order`, coefficients indexed from
/// degree 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![BigInt::zero(); order + 1] }
    }

    /// `Σ dims[n-1] t^n`, truncated at `order`.
    pub fn from_dims(dims: &[u64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, d) in dims.iter().enumerate().take(order) {
            s.coeffs[i + 1] = BigInt::from(*d);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `f(t) ↦ -f(-t)`.
    pub fn odd_reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 0 { -c } else { c.clone() })
            .collect();
        Series { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// `self(inner(t))`; `inner` must have no constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(inner.coeffs[0].is_zero(), "inner series has a constant term");
        let order = self.order().min(inner.order());
        let mut out = Self::zero(order);
        let mut power = Self::zero(order);
        power.coeffs[0] = BigInt::one();
        for k in 0..=order {
            let c = &self.coeffs[k];
            if !c.is_zero() {
                for (n, p) in power.coeffs.iter().enumerate() {
                    out.coeffs[n] += c * p;
                }
            }
            power = power.mul(inner);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoincareReport {
    pub order: usize,
    /// Coefficients of `g(-f(-t)) - t`, degrees `1..=order`.
    pub residual: Vec<String>,
    /// Lowest degree with a nonzero residual coefficient.
    pub first_failure: Option<usize>,
    pub pass: bool,
}

/// Checks `g(-f(-t)) = t` through degree `order`, where `f` and `g` are the
/// generating series of `dims_p` and `dims_dual` (arity 1 first).
pub fn poincare_check(dims_p: &[u64], dims_dual: &[u64], order: usize) -> Result<PoincareReport> {
    let got = dims_p.len().min(dims_dual.len());
    if got < order {
        return Err(Error::SeriesTooShort { needed: order, got });
    }
    let f = Series::from_dims(dims_p, order);
    let g = Series::from_dims(dims_dual, order);
    let mut composed = g.compose(&f.odd_reflect());
    composed.coeffs[1] -= 1;
    let first_failure = (1..=order).find(|&n| !composed.coeffs[n].is_zero());
    Ok(PoincareReport {
        order,
        residual: composed.coeffs[1..].iter().map(|c| c.to_string()).collect(),
        first_failure,
        pass: first_failure.is_none(),
    })
}
