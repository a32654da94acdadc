//! Free algebras on decorated planar forests and evaluation of operad terms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flavor::Flavor;
use crate::forest::{enumerate_forests, Decoration, Forest};
use crate::linalg::{span_dim, Basis, LinComb};
use crate::operad::{free_terms, ideal_slice, Generator, OperadTerm, Presentation};

/// Element of the free algebra: a combination of forests.
pub type AlgebraElement = LinComb<Forest>;

/// Weight-homogeneous component of the free algebra.
#[derive(Debug, Clone)]
pub struct GradedSlice {
    weight: usize,
    basis: Basis<Forest>,
}

impl GradedSlice {
    pub fn new(weight: usize, decorations: &[Decoration]) -> Self {
        GradedSlice { weight, basis: Basis::new(enumerate_forests(weight, decorations)) }
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn basis(&self) -> &Basis<Forest> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn alg_mul(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    x.bilinear(y, |f, g| LinComb::basis(f.concat(g)))
}

pub fn alg_searrow(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    x.bilinear(y, |f, g| LinComb::basis(f.graft_root(g)))
}

pub fn alg_nearrow(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    x.bilinear(y, |f, g| LinComb::basis(f.graft_left_leaf(g)))
}

pub fn alg_arrow(flavor: Flavor, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    match flavor {
        Flavor::Searrow => alg_searrow(x, y),
        Flavor::Nearrow => alg_nearrow(x, y),
    }
}

/// Evaluates `t` with its `i`-th leaf bound to `args[i]`; `m` acts by
/// concatenation and the arrow by the flavor's grafting.
pub fn evaluate_term(t: &OperadTerm, args: &[AlgebraElement], flavor: Flavor) -> Result<AlgebraElement> {
    if t.arity() != args.len() {
        return Err(Error::ArityMismatch { expected: t.arity(), found: args.len() });
    }
    let mut it = args.iter();
    Ok(eval_from(t, &mut it, flavor))
}

fn eval_from<'a>(t: &OperadTerm, args: &mut impl Iterator<Item = &'a AlgebraElement>, flavor: Flavor) -> AlgebraElement {
    match t {
        OperadTerm::Leaf => args.next().expect("arity checked").clone(),
        OperadTerm::Node(g, l, r) => {
            let x = eval_from(l, args, flavor);
            let y = eval_from(r, args, flavor);
            match g {
                Generator::Mul => alg_mul(&x, &y),
                Generator::Arrow => alg_arrow(flavor, &x, &y),
            }
        }
    }
}

/// Evaluates a combination of terms by linearity.
pub fn evaluate_combination(
    v: &LinComb<OperadTerm>,
    args: &[AlgebraElement],
    flavor: Flavor,
) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (t, c) in v.iter() {
        out.add_assign_scaled(&evaluate_term(t, args, flavor)?, c);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationReport {
    pub arity: usize,
    pub free_dim: usize,
    pub image_dim: usize,
    pub ideal_dim: usize,
    /// Every spanning element of the ideal slice evaluates to zero.
    pub ideal_vanishes: bool,
    pub pass: bool,
}

/// Compares the operad presented by `p` with its forest model in arity `n`:
/// terms are evaluated on distinct single-vertex generators, the ideal slice
/// must lie in the kernel, and the kernel must be no larger than the ideal.
pub fn realization_check(p: &Presentation, n: usize) -> Result<RealizationReport> {
    let flavor = p.flavor();
    let args: Vec<AlgebraElement> =
        Decoration::numbered(n).into_iter().map(|d| LinComb::basis(Forest::vertex(d))).collect();
    let terms = free_terms(n);
    let mut images = Vec::with_capacity(terms.len());
    for t in &terms {
        images.push(evaluate_term(t, &args, flavor)?);
    }
    let basis = Basis::new(images.iter().flat_map(|x| x.keys().cloned().collect::<Vec<_>>()));
    let image_dim = span_dim(&basis, &images)?;
    let slice = ideal_slice(p, n)?;
    let mut ideal_vanishes = true;
    for g in slice.generators() {
        if !evaluate_combination(g, &args, flavor)?.is_zero() {
            ideal_vanishes = false;
            break;
        }
    }
    let free_dim = terms.len();
    let ideal_dim = slice.dim();
    Ok(RealizationReport {
        arity: n,
        free_dim,
        image_dim,
        ideal_dim,
        ideal_vanishes,
        pass: ideal_vanishes && free_dim - image_dim == ideal_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::parse_forest;
    use crate::linalg::Rational;
    use crate::operad::PresentationKind;
    use Generator::{Arrow as A, Mul as M};

    fn el(s: &str) -> AlgebraElement {
        LinComb::basis(parse_forest(s).unwrap())
    }

    #[test]
    fn products() {
        assert_eq!(alg_mul(&el("a"), &el("b")), el("a b"));
        assert_eq!(alg_mul(&el("a").add(&el("b")), &el("c")), el("a c").add(&el("b c")));
        assert!(alg_mul(&AlgebraElement::zero(), &el("a")).is_zero());
        assert_eq!(alg_searrow(&el("a"), &el("b")), el("b(a)"));
        let two = Rational::from(2);
        assert_eq!(alg_searrow(&el("a").scale(&two), &el("b")), el("b(a)").scale(&two));
        assert_eq!(alg_searrow(&el("a"), &el("b c")), el("b(a) c"));
        assert_eq!(alg_nearrow(&el("a"), &el("b")), el("b(a)"));
        assert_eq!(alg_nearrow(&el("a"), &el("b(c)")), el("b(c(a))"));
        assert!(alg_nearrow(&AlgebraElement::zero(), &el("b")).is_zero());
    }

    #[test]
    fn term_evaluation() {
        let abc = [el("a"), el("b"), el("c")];
        let m = OperadTerm::binary(M);
        assert_eq!(evaluate_term(&m, &abc[..2], Flavor::Searrow).unwrap(), el("a b"));
        let lhs = evaluate_term(&OperadTerm::right_comb(A, A), &abc, Flavor::Searrow).unwrap();
        let rhs = evaluate_term(&OperadTerm::left_comb(A, M), &abc, Flavor::Searrow).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, alg_searrow(&el("a b"), &el("c")));
        for f in Flavor::ALL {
            assert_eq!(evaluate_term(&OperadTerm::left_comb(M, M), &abc, f).unwrap(), el("a b c"));
            assert_eq!(evaluate_term(&OperadTerm::right_comb(M, M), &abc, f).unwrap(), el("a b c"));
        }
        assert_eq!(
            evaluate_term(&m, &abc, Flavor::Nearrow),
            Err(Error::ArityMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn realization_small_arities() {
        for kind in [PresentationKind::Searrow, PresentationKind::Nearrow] {
            let p = Presentation::new(kind);
            for (n, cat) in [(1, 1), (2, 2), (3, 5), (4, 14)] {
                let r = realization_check(&p, n).unwrap();
                assert_eq!(r.image_dim, cat, "{kind} arity {n}");
                assert!(r.pass, "{r:?}");
            }
        }
    }
}
