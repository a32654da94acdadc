use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use super::echelon::rank_of_vectors;
use super::rational::Rational;
use super::sparse::SparseVec;
use crate::error::{Error, Result};

/// Formal linear combination of basis objects with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(acc) => {
                *acc += &c;
                if acc.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::from(-1));
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_assign_scaled(&f(k), c);
        }
        out
    }

    /// Extends a bilinear map given on pairs of basis elements.
    pub fn bilinear<M: Ord + Clone, L: Ord + Clone>(
        &self,
        other: &LinComb<M>,
        mut f: impl FnMut(&K, &M) -> LinComb<L>,
    ) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, a) in &self.terms {
            for (m, b) in &other.terms {
                out.add_assign_scaled(&f(k, m), &(a * b));
            }
        }
        out
    }
}

impl<K: Ord + Clone> Default for LinComb<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

/// Renders as `c1*k1 + c2*k2` in key order; the zero combination renders as `0`.
impl<K: Ord + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{k}")?;
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ordered list of pairwise distinct keys with a reverse index.
#[derive(Clone, Debug)]
pub struct Basis<K> {
    elements: Vec<K>,
    index: HashMap<K, usize>,
}

impl<K: Clone + Eq + Hash> Basis<K> {
    /// Builds a basis; later duplicates of a key are dropped.
    pub fn new(elements: impl IntoIterator<Item = K>) -> Self {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        for k in elements {
            if !index.contains_key(&k) {
                index.insert(k.clone(), list.len());
                list.push(k);
            }
        }
        Basis { elements: list, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[K] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &K {
        &self.elements[i]
    }

    pub fn index_of(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    /// Coordinates of `v`; fails when `v` mentions a key outside the basis.
    pub fn coordinates(&self, v: &LinComb<K>) -> Result<SparseVec>
    where
        K: Ord,
    {
        let pairs = v
            .iter()
            .map(|(k, c)| self.index_of(k).map(|i| (i, c.clone())).ok_or(Error::BasisMismatch))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn combination(&self, v: &SparseVec) -> LinComb<K>
    where
        K: Ord,
    {
        v.entries().iter().map(|(i, c)| (self.elements[*i].clone(), c.clone())).collect()
    }
}

/// Dimension of the span of `vectors`, all expressed over `basis`.
pub fn span_dim<K: Clone + Eq + Hash + Ord>(basis: &Basis<K>, vectors: &[LinComb<K>]) -> Result<usize> {
    let coords = vectors.iter().map(|v| basis.coordinates(v)).collect::<Result<Vec<_>>>()?;
    Ok(rank_of_vectors(&coords, basis.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_dim_examples() {
        let b = Basis::new(["e1", "e2", "e3"]);
        assert_eq!(span_dim::<&str>(&b, &[]).unwrap(), 0);
        let e1 = LinComb::basis("e1");
        let e12 = e1.add(&LinComb::basis("e2"));
        assert_eq!(span_dim(&b, &[e1.clone(), e12.clone()]).unwrap(), 2);
        assert_eq!(span_dim(&b, &[e1.clone(), e12.clone(), e12.sub(&e1)]).unwrap(), 2);
        assert_eq!(span_dim(&b, &[LinComb::basis("e4")]), Err(Error::BasisMismatch));
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut x = LinComb::term("a", Rational::from(2));
        x.add_term("a", Rational::from(-2));
        assert!(x.is_zero());
        assert_eq!(x.to_string(), "0");
        let y = LinComb::from_terms([("b", Rational::new(1, 2)), ("a", Rational::from(-1))]);
        assert_eq!(y.to_string(), "-1*a + 1/2*b");
    }
}
