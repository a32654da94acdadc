//! Free non-Σ operad on two binary generators, the quadratic presentations of
//! the planar-forest operads and their duals, arity slices of relation
//! ideals, and the quadratic pairing on arity 3.
//!
//! Everything here is non-symmetric. Dimensions of the symmetrized operads
//! are obtained by multiplying the arity-`n` dimension by `n!`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flavor::Flavor;
use crate::linalg::{Basis, Echelon, LinComb, Rational, SparseVec};

/// The two binary generators: the product `m` and the flavor's arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Mul,
    Arrow,
}

impl Generator {
    pub const ALL: [Generator; 2] = [Generator::Mul, Generator::Arrow];

    pub fn symbol(self, flavor: Flavor) -> &'static str {
        match self {
            Generator::Mul => "m",
            Generator::Arrow => flavor.symbol(),
        }
    }
}

/// Planar binary tree whose internal vertices are labeled by generators.
/// Leaves are numbered left to right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperadTerm {
    Leaf,
    Node(Generator, Box<OperadTerm>, Box<OperadTerm>),
}

impl OperadTerm {
    pub fn identity() -> Self {
        OperadTerm::Leaf
    }

    pub fn node(g: Generator, left: OperadTerm, right: OperadTerm) -> Self {
        OperadTerm::Node(g, Box::new(left), Box::new(right))
    }

    /// `g(x1, x2)`.
    pub fn binary(g: Generator) -> Self {
        Self::node(g, OperadTerm::Leaf, OperadTerm::Leaf)
    }

    /// `outer ∘ (inner, I)`.
    pub fn left_comb(outer: Generator, inner: Generator) -> Self {
        Self::node(outer, Self::binary(inner), OperadTerm::Leaf)
    }

    /// `outer ∘ (I, inner)`.
    pub fn right_comb(outer: Generator, inner: Generator) -> Self {
        Self::node(outer, OperadTerm::Leaf, Self::binary(inner))
    }

    pub fn arity(&self) -> usize {
        match self {
            OperadTerm::Leaf => 1,
            OperadTerm::Node(_, l, r) => l.arity() + r.arity(),
        }
    }

    /// Full composition: the `i`-th leaf is replaced by `args[i]`.
    pub fn substitute(&self, args: &[OperadTerm]) -> Result<OperadTerm> {
        let n = self.arity();
        if n != args.len() {
            return Err(Error::ArityMismatch { expected: n, found: args.len() });
        }
        let mut it = args.iter();
        Ok(self.substitute_from(&mut it))
    }

    fn substitute_from<'a>(&self, args: &mut impl Iterator<Item = &'a OperadTerm>) -> OperadTerm {
        match self {
            OperadTerm::Leaf => args.next().expect("arity checked").clone(),
            OperadTerm::Node(g, l, r) => {
                let l = l.substitute_from(args);
                let r = r.substitute_from(args);
                OperadTerm::node(*g, l, r)
            }
        }
    }

    /// Partial composition `self ∘_i other`, `i` counted from 1.
    pub fn partial_compose(&self, i: usize, other: &OperadTerm) -> OperadTerm {
        let n = self.arity();
        assert!((1..=n).contains(&i), "leaf {i} out of range 1..={n}");
        let mut seen = 0;
        self.partial_from(i, other, &mut seen)
    }

    fn partial_from(&self, i: usize, other: &OperadTerm, seen: &mut usize) -> OperadTerm {
        match self {
            OperadTerm::Leaf => {
                *seen += 1;
                if *seen == i {
                    other.clone()
                } else {
                    OperadTerm::Leaf
                }
            }
            OperadTerm::Node(g, l, r) => {
                let l = l.partial_from(i, other, seen);
                let r = r.partial_from(i, other, seen);
                OperadTerm::node(*g, l, r)
            }
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            OperadTerm::Leaf => 0,
            OperadTerm::Node(_, l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }

    /// Renders with the flavor's arrow symbol, e.g. `↘(m(1,2),3)`.
    pub fn render(&self, flavor: Flavor) -> String {
        let mut out = String::new();
        let mut leaf = 0;
        self.write_with(&mut out, &mut leaf, &|g| g.symbol(flavor));
        out
    }

    fn write_with(&self, out: &mut String, leaf: &mut usize, sym: &dyn Fn(Generator) -> &'static str) {
        match self {
            OperadTerm::Leaf => {
                *leaf += 1;
                out.push_str(&leaf.to_string());
            }
            OperadTerm::Node(g, l, r) => {
                out.push_str(sym(*g));
                out.push('(');
                l.write_with(out, leaf, sym);
                out.push(',');
                r.write_with(out, leaf, sym);
                out.push(')');
            }
        }
    }
}

/// `m` and `a` for the arrow; `I` for the identity.
impl fmt::Display for OperadTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if matches!(self, OperadTerm::Leaf) {
            return f.write_str("I");
        }
        let mut out = String::new();
        let mut leaf = 0;
        self.write_with(&mut out, &mut leaf, &|g| match g {
            Generator::Mul => "m",
            Generator::Arrow => "a",
        });
        f.write_str(&out)
    }
}

impl fmt::Debug for OperadTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Linear extension of a term-level map to a combination of terms.
fn map_terms(x: &LinComb<OperadTerm>, f: impl Fn(&OperadTerm) -> OperadTerm) -> LinComb<OperadTerm> {
    x.map_linear(|t| LinComb::basis(f(t)))
}

/// All labeled planar binary trees with `n` leaves: `Catalan(n-1) * 2^(n-1)`
/// of them.
pub fn free_terms(n: usize) -> Vec<OperadTerm> {
    assert!(n >= 1, "arity must be positive");
    let mut table: Vec<Vec<OperadTerm>> = vec![Vec::new(), vec![OperadTerm::Leaf]];
    for k in 2..=n {
        let mut terms = Vec::new();
        for left in 1..k {
            for g in Generator::ALL {
                for l in &table[left] {
                    for r in &table[k - left] {
                        terms.push(OperadTerm::node(g, l.clone(), r.clone()));
                    }
                }
            }
        }
        table.push(terms);
    }
    table.swap_remove(n)
}

pub fn free_basis(n: usize) -> Basis<OperadTerm> {
    Basis::new(free_terms(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresentationKind {
    Searrow,
    Nearrow,
    SearrowDual,
    NearrowDual,
}

impl PresentationKind {
    pub const ALL: [PresentationKind; 4] = [
        PresentationKind::Searrow,
        PresentationKind::Nearrow,
        PresentationKind::SearrowDual,
        PresentationKind::NearrowDual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PresentationKind::Searrow => "searrow",
            PresentationKind::Nearrow => "nearrow",
            PresentationKind::SearrowDual => "searrow-dual",
            PresentationKind::NearrowDual => "nearrow-dual",
        }
    }

    pub fn flavor(self) -> Flavor {
        match self {
            PresentationKind::Searrow | PresentationKind::SearrowDual => Flavor::Searrow,
            PresentationKind::Nearrow | PresentationKind::NearrowDual => Flavor::Nearrow,
        }
    }

    pub fn is_dual(self) -> bool {
        matches!(self, PresentationKind::SearrowDual | PresentationKind::NearrowDual)
    }

    pub fn primal(flavor: Flavor) -> Self {
        match flavor {
            Flavor::Searrow => PresentationKind::Searrow,
            Flavor::Nearrow => PresentationKind::Nearrow,
        }
    }

    pub fn dual(flavor: Flavor) -> Self {
        match flavor {
            Flavor::Searrow => PresentationKind::SearrowDual,
            Flavor::Nearrow => PresentationKind::NearrowDual,
        }
    }
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PresentationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresentationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown presentation {s:?}")))
    }
}

/// Quadratic presentation: generators `m` and the arrow, relations in arity 3.
#[derive(Debug, Clone)]
pub struct Presentation {
    kind: PresentationKind,
    relations: Vec<LinComb<OperadTerm>>,
}

impl Presentation {
    pub fn new(kind: PresentationKind) -> Self {
        use Generator::{Arrow as A, Mul as M};
        let l = OperadTerm::left_comb;
        let r = OperadTerm::right_comb;
        let eq = |x: OperadTerm, y: OperadTerm| LinComb::basis(x).sub(&LinComb::basis(y));
        let zero = |x: OperadTerm| LinComb::basis(x);
        let relations = match kind {
            PresentationKind::Searrow => vec![
                eq(l(A, M), r(A, A)),
                eq(r(A, M), l(M, A)),
                eq(l(M, M), r(M, M)),
            ],
            PresentationKind::Nearrow => vec![
                eq(l(A, A), r(A, A)),
                eq(r(A, M), l(M, A)),
                eq(l(M, M), r(M, M)),
            ],
            PresentationKind::SearrowDual => vec![
                eq(l(A, M), r(A, A)),
                eq(l(M, M), r(M, M)),
                eq(l(M, A), r(A, M)),
                zero(l(A, A)),
                zero(r(M, A)),
            ],
            PresentationKind::NearrowDual => vec![
                eq(l(A, A), r(A, A)),
                eq(l(M, M), r(M, M)),
                eq(l(M, A), r(A, M)),
                zero(l(A, M)),
                zero(r(M, A)),
            ],
        };
        Presentation { kind, relations }
    }

    /// A presentation with caller-supplied arity-3 relations.
    pub fn custom(kind: PresentationKind, relations: Vec<LinComb<OperadTerm>>) -> Result<Self> {
        for rel in &relations {
            for t in rel.keys() {
                if t.arity() != 3 {
                    return Err(Error::ArityMismatch { expected: 3, found: t.arity() });
                }
            }
        }
        Ok(Presentation { kind, relations })
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    pub fn flavor(&self) -> Flavor {
        self.kind.flavor()
    }

    pub fn relations(&self) -> &[LinComb<OperadTerm>] {
        &self.relations
    }

    pub fn render_relation(&self, i: usize) -> String {
        let flavor = self.flavor();
        let rel = &self.relations[i];
        rel.iter()
            .map(|(t, c)| format!("{c}*{}", t.render(flavor)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Arity-`n` slice of the operad ideal generated by the relations.
#[derive(Debug, Clone)]
pub struct IdealSlice {
    arity: usize,
    basis: Basis<OperadTerm>,
    generators: Vec<LinComb<OperadTerm>>,
}

impl IdealSlice {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The free-operad basis the slice lives in.
    pub fn basis(&self) -> &Basis<OperadTerm> {
        &self.basis
    }

    /// A linearly independent spanning set of the slice.
    pub fn generators(&self) -> &[LinComb<OperadTerm>] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn free_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.free_dim() - self.dim()
    }

    fn echelon(&self) -> Result<Echelon> {
        let mut e = Echelon::new(self.basis.len());
        for g in &self.generators {
            e.insert(self.basis.coordinates(g)?);
        }
        Ok(e)
    }

    pub fn contains(&self, v: &LinComb<OperadTerm>) -> Result<bool> {
        let e = self.echelon()?;
        Ok(e.contains(self.basis.coordinates(v)?))
    }

    /// Whether every element of `others` lies in this slice.
    pub fn contains_all(&self, others: &[LinComb<OperadTerm>]) -> Result<bool> {
        let e = self.echelon()?;
        for v in others {
            if !e.contains(self.basis.coordinates(v)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Re-expansion check: inserting every relation at every position of
    /// every arity-`n` term stays inside the slice.
    pub fn is_closed(&self, p: &Presentation) -> Result<bool> {
        self.contains_all(&direct_generators(p, self.arity))
    }
}

struct SliceBuilder {
    basis: Basis<OperadTerm>,
    echelon: Echelon,
    generators: Vec<LinComb<OperadTerm>>,
}

impl SliceBuilder {
    fn new(arity: usize) -> Self {
        let basis = free_basis(arity);
        let echelon = Echelon::new(basis.len());
        SliceBuilder { basis, echelon, generators: Vec::new() }
    }

    fn offer(&mut self, v: LinComb<OperadTerm>) -> Result<()> {
        let coords = self.basis.coordinates(&v)?;
        if self.echelon.insert(coords) {
            self.generators.push(v);
        }
        Ok(())
    }

    fn finish(self, arity: usize) -> IdealSlice {
        IdealSlice { arity, basis: self.basis, generators: self.generators }
    }
}

/// Slices of the relation ideal in arities `1..=max_arity`, built by
/// saturation: the slice in arity `n + 1` is spanned by `g ∘_1 x`, `g ∘_2 x`
/// and `x ∘_i g` for generators `g` and `x` in the arity-`n` slice.
pub fn ideal_slices(p: &Presentation, max_arity: usize) -> Result<Vec<IdealSlice>> {
    let mut out: Vec<IdealSlice> = Vec::with_capacity(max_arity);
    for n in 1..=max_arity {
        let mut b = SliceBuilder::new(n);
        if n == 3 {
            for r in p.relations() {
                b.offer(r.clone())?;
            }
        } else if n > 3 {
            let prev = &out[n - 2];
            for x in prev.generators() {
                for g in Generator::ALL {
                    b.offer(map_terms(x, |t| OperadTerm::node(g, t.clone(), OperadTerm::Leaf)))?;
                    b.offer(map_terms(x, |t| OperadTerm::node(g, OperadTerm::Leaf, t.clone())))?;
                    for i in 1..n {
                        let gi = OperadTerm::binary(g);
                        b.offer(map_terms(x, |t| t.partial_compose(i, &gi)))?;
                    }
                }
            }
        }
        out.push(b.finish(n));
    }
    Ok(out)
}

pub fn ideal_slice(p: &Presentation, n: usize) -> Result<IdealSlice> {
    let mut all = ideal_slices(p, n)?;
    Ok(all.pop().expect("n >= 1"))
}

/// Every element obtained by substituting a relation for a quadratic
/// sub-pattern (an internal vertex together with one internal child) of an
/// arity-`n` term.
pub fn direct_generators(p: &Presentation, n: usize) -> Vec<LinComb<OperadTerm>> {
    let mut out = Vec::new();
    for t in free_terms(n) {
        let mut path = Vec::new();
        collect_substitutions(&t, &t, &mut path, p, &mut out);
    }
    out
}

/// Same span as [`ideal_slice`], computed from [`direct_generators`].
pub fn ideal_slice_direct(p: &Presentation, n: usize) -> Result<IdealSlice> {
    let mut b = SliceBuilder::new(n);
    for v in direct_generators(p, n) {
        b.offer(v)?;
    }
    Ok(b.finish(n))
}

fn collect_substitutions(
    root: &OperadTerm,
    here: &OperadTerm,
    path: &mut Vec<bool>,
    p: &Presentation,
    out: &mut Vec<LinComb<OperadTerm>>,
) {
    let OperadTerm::Node(_, l, r) = here else {
        return;
    };
    let args = match (l.as_ref(), r.as_ref()) {
        (OperadTerm::Node(_, a, b), c) => Some(vec![(**a).clone(), (**b).clone(), c.clone()]),
        _ => None,
    };
    if let Some(args) = args {
        push_substitutions(root, path, &args, p, out);
    }
    if let (a, OperadTerm::Node(_, b, c)) = (l.as_ref(), r.as_ref()) {
        let args = vec![a.clone(), (**b).clone(), (**c).clone()];
        push_substitutions(root, path, &args, p, out);
    }
    path.push(false);
    collect_substitutions(root, l, path, p, out);
    path.pop();
    path.push(true);
    collect_substitutions(root, r, path, p, out);
    path.pop();
}

fn push_substitutions(
    root: &OperadTerm,
    path: &[bool],
    args: &[OperadTerm],
    p: &Presentation,
    out: &mut Vec<LinComb<OperadTerm>>,
) {
    for rel in p.relations() {
        let v = map_terms(rel, |t| {
            let inner = t.substitute(args).expect("relation terms have arity 3");
            replace_at(root, path, inner)
        });
        out.push(v);
    }
}

fn replace_at(t: &OperadTerm, path: &[bool], new: OperadTerm) -> OperadTerm {
    match path.split_first() {
        None => new,
        Some((&right, rest)) => match t {
            OperadTerm::Node(g, l, r) => {
                if right {
                    OperadTerm::node(*g, (**l).clone(), replace_at(r, rest, new))
                } else {
                    OperadTerm::node(*g, replace_at(l, rest, new), (**r).clone())
                }
            }
            OperadTerm::Leaf => panic!("path leads through a leaf"),
        },
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Arity-wise dimensions of a presented operad.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionTable {
    pub flavor: PresentationKind,
    /// Dimensions of the non-Σ operad, arities `1..=max_arity`.
    pub nonsigma: Vec<u64>,
    /// Dimensions of the symmetrization, `n! * nonsigma[n-1]`.
    pub sigma: Vec<u64>,
}

pub fn quotient_dims(p: &Presentation, max_arity: usize) -> Result<DimensionTable> {
    let slices = ideal_slices(p, max_arity)?;
    let nonsigma: Vec<u64> = slices.iter().map(|s| s.quotient_dim() as u64).collect();
    let sigma = nonsigma.iter().enumerate().map(|(i, d)| d * factorial(i + 1)).collect();
    Ok(DimensionTable { flavor: p.kind(), nonsigma, sigma })
}

/// Value of the quadratic pairing on two arity-3 basis terms:
/// `+1` on equal left combs, `-1` on equal right combs, `0` otherwise.
fn basis_pairing(a: &OperadTerm, b: &OperadTerm) -> i64 {
    if a != b {
        return 0;
    }
    match a {
        OperadTerm::Node(_, l, _) if matches!(l.as_ref(), OperadTerm::Node(..)) => 1,
        _ => -1,
    }
}

/// Bilinear pairing on combinations of arity-3 terms.
pub fn pairing(a: &LinComb<OperadTerm>, b: &LinComb<OperadTerm>) -> Result<Rational> {
    for t in a.keys().chain(b.keys()) {
        if t.arity() != 3 {
            return Err(Error::ArityMismatch { expected: 3, found: t.arity() });
        }
    }
    let mut acc = Rational::zero();
    for (s, x) in a.iter() {
        let y = b.coeff(s);
        if !y.is_zero() {
            acc += &(&(x * &y) * &Rational::from(basis_pairing(s, s)));
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingEntry {
    /// Index into the candidate dual's relation list.
    pub dual: usize,
    /// Index into the primal relation list.
    pub primal: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaDims {
    pub free: u64,
    pub relations: u64,
    pub annihilator: u64,
}

/// Outcome of checking that one presentation's relations span the
/// annihilator of another's.
#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub primal: PresentationKind,
    pub dual: PresentationKind,
    pub free_dim: usize,
    pub dim_relations: usize,
    pub dim_annihilator: usize,
    /// Rank of the pairing's Gram matrix on the arity-3 basis.
    pub pairing_rank: usize,
    pub pairings: Vec<PairingEntry>,
    pub sigma: SigmaDims,
    pub failures: Vec<String>,
    pub pass: bool,
}

pub fn dual_annihilator_check(p: &Presentation, dual: &Presentation) -> Result<DualityReport> {
    let basis = free_basis(3);
    let dim_relations = crate::linalg::span_dim(&basis, p.relations())?;
    let dim_annihilator = crate::linalg::span_dim(&basis, dual.relations())?;
    let gram: Vec<SparseVec> = basis
        .elements()
        .iter()
        .map(|a| {
            SparseVec::from_pairs(
                basis
                    .elements()
                    .iter()
                    .enumerate()
                    .map(|(j, b)| (j, Rational::from(basis_pairing(a, b))))
                    .collect(),
            )
        })
        .collect();
    let pairing_rank = crate::linalg::rank_of_vectors(&gram, basis.len());

    let mut failures = Vec::new();
    let mut pairings = Vec::new();
    for (i, s) in dual.relations().iter().enumerate() {
        for (j, r) in p.relations().iter().enumerate() {
            let value = pairing(s, r)?;
            if !value.is_zero() {
                failures.push(format!(
                    "<{}, {}> = {value}",
                    dual.render_relation(i),
                    p.render_relation(j)
                ));
            }
            pairings.push(PairingEntry { dual: i, primal: j, value: value.to_string() });
        }
    }
    if dim_relations + dim_annihilator != basis.len() {
        failures.push(format!(
            "dimension mismatch: {dim_relations} + {dim_annihilator} != {}",
            basis.len()
        ));
    }
    if pairing_rank != basis.len() {
        failures.push(format!("pairing is degenerate: rank {pairing_rank} < {}", basis.len()));
    }
    let six = factorial(3);
    Ok(DualityReport {
        primal: p.kind(),
        dual: dual.kind(),
        free_dim: basis.len(),
        dim_relations,
        dim_annihilator,
        pairing_rank,
        pairings,
        sigma: SigmaDims {
            free: basis.len() as u64 * six,
            relations: dim_relations as u64 * six,
            annihilator: dim_annihilator as u64 * six,
        },
        pass: failures.is_empty(),
        failures,
    })
}
