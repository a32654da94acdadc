//! Chain complexes computing the operadic homology of free algebras on
//! decorated forests, and their homology dimensions.
//!
//! The degree-`n` chains are words of length `n` whose letters are forests,
//! with a point (`↘`) or a barred prefix (`↗`). Everything is graded by total
//! weight, and the differential also preserves the concatenated postorder
//! label sequence of the letters, so each weight splits into independent
//! blocks. Ranks are computed block by block.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flavor::Flavor;
use crate::forest::{enumerate_forests, is_left_comb_factor, Decoration, Forest};
use crate::linalg::{span_dim, Backend, Basis, Field, LinComb, ModP, Rational, SparseMatrix, SparseVec};
use crate::words::{BarredWord, DualWord, PointedWord};

/// The summation groups of the differential. For `↘` with the point at `k`,
/// merging positions `i, i+1` belongs to `MulBefore` for `i ≤ k-2`, `Arrow`
/// for `i = k-1`, `MulAtMark` for `i = k` and `MulAfter` for `i > k`. For `↗`
/// barred separators are `Arrow` and plain ones `MulAfter`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermGroup {
    MulBefore,
    Arrow,
    MulAtMark,
    MulAfter,
}

impl TermGroup {
    pub fn for_flavor(flavor: Flavor) -> &'static [TermGroup] {
        match flavor {
            Flavor::Searrow => &[TermGroup::MulBefore, TermGroup::Arrow, TermGroup::MulAtMark, TermGroup::MulAfter],
            Flavor::Nearrow => &[TermGroup::Arrow, TermGroup::MulAfter],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TermGroup::MulBefore => "mul-before",
            TermGroup::Arrow => "arrow",
            TermGroup::MulAtMark => "mul-at-mark",
            TermGroup::MulAfter => "mul-after",
        }
    }
}

impl std::str::FromStr for TermGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [TermGroup::MulBefore, TermGroup::Arrow, TermGroup::MulAtMark, TermGroup::MulAfter]
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown term group {s:?}")))
    }
}

/// A deliberate sign error injected into the differential, used to show
/// that the `d² = 0` check notices broken signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignFlip {
    /// Reverse the sign of every term in one summation group.
    Group(TermGroup),
    /// Reverse the sign of the term merging positions `i` and `i + 1`.
    Position(usize),
}

impl fmt::Display for SignFlip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignFlip::Group(g) => f.write_str(g.name()),
            SignFlip::Position(i) => write!(f, "position-{i}"),
        }
    }
}

/// Parses a group name or `position-N`.
impl std::str::FromStr for SignFlip {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(i) = s.strip_prefix("position-") {
            return match i.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(SignFlip::Position(i)),
                _ => Err(Error::Unsupported(format!("bad merge position {i:?}"))),
            };
        }
        s.parse().map(SignFlip::Group)
    }
}

/// Which Hochschild-type subcomplex to restrict to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Subcomplex {
    /// Words pointed at the first letter, or without bars: only `m` merges.
    M,
    /// Fully barred words: only `↗` merges.
    Arrow,
}

impl Subcomplex {
    pub fn name(self) -> &'static str {
        match self {
            Subcomplex::M => "m",
            Subcomplex::Arrow => "arrow",
        }
    }
}

impl std::str::FromStr for Subcomplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" => Ok(Subcomplex::M),
            "arrow" => Ok(Subcomplex::Arrow),
            _ => Err(Error::Unsupported(format!("unknown subcomplex {s:?}"))),
        }
    }
}

/// A chain word with forest letters.
pub trait ChainWord: DualWord + fmt::Display + Send + Sync {
    const FLAVOR: Flavor;

    fn letters(&self) -> &[Forest];

    /// Position `k` of the point, or one more than the number of bars.
    fn mark(&self) -> usize;

    fn with_mark(letters: Vec<Forest>, mark: usize) -> Self;

    fn in_subcomplex(&self, which: Subcomplex) -> bool;

    /// `d(self)` as signed words, with the signs selected by `flip` reversed.
    fn differential_terms(&self, flip: Option<SignFlip>) -> Vec<(Self, i64)>;

    fn weight(&self) -> usize {
        self.letters().iter().map(Forest::weight).sum()
    }

    /// Concatenated postorder labels; `d` preserves it.
    fn label_key(&self) -> Vec<Decoration> {
        self.letters().iter().flat_map(|f| f.postorder().into_iter().cloned()).collect()
    }
}

fn merged(letters: &[Forest], i: usize, product: Forest) -> Vec<Forest> {
    let mut out = Vec::with_capacity(letters.len() - 1);
    out.extend_from_slice(&letters[..i - 1]);
    out.push(product);
    out.extend_from_slice(&letters[i + 1..]);
    out
}

fn sign(i: usize, group: TermGroup, flip: Option<SignFlip>) -> i64 {
    let s = if i % 2 == 1 { 1 } else { -1 };
    match flip {
        Some(SignFlip::Group(g)) if g == group => -s,
        Some(SignFlip::Position(p)) if p == i => -s,
        _ => s,
    }
}

impl ChainWord for PointedWord<Forest> {
    const FLAVOR: Flavor = Flavor::Searrow;

    fn letters(&self) -> &[Forest] {
        PointedWord::letters(self)
    }

    fn mark(&self) -> usize {
        self.point()
    }

    fn with_mark(letters: Vec<Forest>, mark: usize) -> Self {
        PointedWord::new_unchecked(letters, mark)
    }

    fn in_subcomplex(&self, which: Subcomplex) -> bool {
        match which {
            Subcomplex::M => self.point() == 1,
            Subcomplex::Arrow => false,
        }
    }

    fn differential_terms(&self, flip: Option<SignFlip>) -> Vec<(Self, i64)> {
        let v = PointedWord::letters(self);
        let k = self.point();
        (1..v.len())
            .map(|i| {
                let (product, point, group) = if i + 1 == k {
                    (v[i - 1].graft_root(&v[i]), k - 1, TermGroup::Arrow)
                } else if i < k {
                    (v[i - 1].concat(&v[i]), k - 1, TermGroup::MulBefore)
                } else if i == k {
                    (v[i - 1].concat(&v[i]), k, TermGroup::MulAtMark)
                } else {
                    (v[i - 1].concat(&v[i]), k, TermGroup::MulAfter)
                };
                (PointedWord::new_unchecked(merged(v, i, product), point), sign(i, group, flip))
            })
            .collect()
    }
}

impl ChainWord for BarredWord<Forest> {
    const FLAVOR: Flavor = Flavor::Nearrow;

    fn letters(&self) -> &[Forest] {
        BarredWord::letters(self)
    }

    fn mark(&self) -> usize {
        self.bars() + 1
    }

    fn with_mark(letters: Vec<Forest>, mark: usize) -> Self {
        BarredWord::new_unchecked(letters, mark - 1)
    }

    fn in_subcomplex(&self, which: Subcomplex) -> bool {
        match which {
            Subcomplex::M => self.bars() == 0,
            Subcomplex::Arrow => self.is_fully_barred(),
        }
    }

    fn differential_terms(&self, flip: Option<SignFlip>) -> Vec<(Self, i64)> {
        let v = BarredWord::letters(self);
        let b = self.bars();
        (1..v.len())
            .map(|i| {
                let (product, bars, group) = if i <= b {
                    (v[i - 1].graft_left_leaf(&v[i]), b - 1, TermGroup::Arrow)
                } else {
                    (v[i - 1].concat(&v[i]), b, TermGroup::MulAfter)
                };
                (BarredWord::new_unchecked(merged(v, i, product), bars), sign(i, group, flip))
            })
            .collect()
    }
}

/// `d(x)` as a combination.
pub fn apply_differential<W: ChainWord>(x: &W, flip: Option<SignFlip>) -> LinComb<W> {
    LinComb::from_terms(x.differential_terms(flip).into_iter().map(|(w, s)| (w, Rational::from(s))))
}

/// Forests of each weight `0..=max_w` over fixed decorations.
#[derive(Debug, Clone)]
pub struct ForestCatalog {
    decorations: Vec<Decoration>,
    by_weight: Vec<Vec<Forest>>,
}

impl ForestCatalog {
    pub fn new(max_w: usize, decorations: &[Decoration]) -> Self {
        let by_weight = (0..=max_w).map(|w| enumerate_forests(w, decorations)).collect();
        ForestCatalog { decorations: decorations.to_vec(), by_weight }
    }

    pub fn decorations(&self) -> &[Decoration] {
        &self.decorations
    }

    pub fn max_weight(&self) -> usize {
        self.by_weight.len() - 1
    }

    pub fn forests(&self, w: usize) -> &[Forest] {
        &self.by_weight[w]
    }
}

/// Chains of one word length and one weight.
#[derive(Debug, Clone)]
pub struct ChainBasisSlice<W> {
    n: usize,
    w: usize,
    basis: Basis<W>,
}

impl<W: ChainWord> ChainBasisSlice<W> {
    pub fn flavor(&self) -> Flavor {
        W::FLAVOR
    }

    /// Word length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> usize {
        self.w
    }

    pub fn basis(&self) -> &Basis<W> {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn restrict(&self, which: Subcomplex) -> Self {
        ChainBasisSlice {
            n: self.n,
            w: self.w,
            basis: Basis::new(self.basis.elements().iter().filter(|x| x.in_subcomplex(which)).cloned()),
        }
    }
}

/// Compositions of `w` into `n` positive parts, in lexicographic order.
fn compositions(w: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if w == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if w < n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=w - (n - 1) {
        for mut rest in compositions(w - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Words of length `n` and weight `w`, ordered by mark, then composition,
/// then letters in catalog order. Empty when `w < n`.
pub fn build_slice<W: ChainWord>(catalog: &ForestCatalog, n: usize, w: usize) -> ChainBasisSlice<W> {
    assert!(n >= 1, "word length must be positive");
    assert!(w <= catalog.max_weight(), "catalog too small for weight {w}");
    let mut letter_lists: Vec<Vec<Forest>> = Vec::new();
    for comp in compositions(w, n) {
        let mut partial: Vec<Vec<Forest>> = vec![Vec::new()];
        for &part in &comp {
            let mut next = Vec::with_capacity(partial.len() * catalog.forests(part).len());
            for prefix in &partial {
                for f in catalog.forests(part) {
                    let mut p = prefix.clone();
                    p.push(f.clone());
                    next.push(p);
                }
            }
            partial = next;
        }
        letter_lists.extend(partial);
    }
    let mut words = Vec::with_capacity(n * letter_lists.len());
    for k in 1..=n {
        for letters in &letter_lists {
            words.push(W::with_mark(letters.clone(), k));
        }
    }
    ChainBasisSlice { n, w, basis: Basis::new(words) }
}

/// Predicted slice size: `n` times the number of letter sequences, where
/// there are `Catalan(i) * D^i` forests of weight `i`.
pub fn slice_size_formula(n: usize, w: usize, d: usize) -> u128 {
    let forests = |i: usize| catalan(i) * (d as u128).pow(i as u32);
    let sequences: u128 = compositions(w, n).iter().map(|c| c.iter().map(|&i| forests(i)).product::<u128>()).sum();
    n as u128 * sequences
}

pub fn catalan(n: usize) -> u128 {
    (0..n as u128).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// Matrix of `d` from one slice to the slice one word shorter. Row `r`
/// holds the coordinates of `d(source[r])`.
#[derive(Debug, Clone)]
pub struct DifferentialMatrix<W> {
    pub source: ChainBasisSlice<W>,
    pub target: ChainBasisSlice<W>,
    pub matrix: SparseMatrix,
}

pub fn differential<W: ChainWord>(
    source: &ChainBasisSlice<W>,
    target: &ChainBasisSlice<W>,
    flip: Option<SignFlip>,
) -> Result<DifferentialMatrix<W>> {
    if source.n != target.n + 1 || source.w != target.w {
        return Err(Error::BasisMismatch);
    }
    let mut rows = Vec::with_capacity(source.len());
    for x in source.basis.elements() {
        let mut pairs = Vec::new();
        for (y, s) in x.differential_terms(flip) {
            let j = target.basis.index_of(&y).ok_or(Error::BasisMismatch)?;
            pairs.push((j, Rational::from(s)));
        }
        rows.push(SparseVec::from_pairs(pairs));
    }
    Ok(DifferentialMatrix {
        source: source.clone(),
        target: target.clone(),
        matrix: SparseMatrix::from_rows(target.len(), rows),
    })
}

fn decorations_for(d: usize) -> Vec<Decoration> {
    Decoration::numbered(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DSquaredReport {
    pub flavor: Flavor,
    #[serde(rename = "D")]
    pub d: usize,
    pub max_weight: usize,
    /// Number of slice pairs whose composite was checked.
    pub products_checked: usize,
    pub first_failure: Option<String>,
    pub pass: bool,
}

/// Checks that `d ∘ d` vanishes on every slice of weight at most `max_w`.
pub fn check_d_squared(flavor: Flavor, max_w: usize, d: usize, flip: Option<SignFlip>) -> Result<DSquaredReport> {
    match flavor {
        Flavor::Searrow => d_squared_in::<PointedWord<Forest>>(max_w, d, flip),
        Flavor::Nearrow => d_squared_in::<BarredWord<Forest>>(max_w, d, flip),
    }
}

fn d_squared_in<W: ChainWord>(max_w: usize, d: usize, flip: Option<SignFlip>) -> Result<DSquaredReport> {
    let catalog = ForestCatalog::new(max_w, &decorations_for(d));
    let mut products_checked = 0;
    let mut first_failure = None;
    'weights: for w in 1..=max_w {
        let slices: Vec<ChainBasisSlice<W>> = (1..=w).map(|n| build_slice(&catalog, n, w)).collect();
        for n in 3..=w {
            let outer = differential(&slices[n - 1], &slices[n - 2], flip)?;
            let inner = differential(&slices[n - 2], &slices[n - 3], flip)?;
            let product = outer.matrix.mul(&inner.matrix);
            products_checked += 1;
            let offending = product.entries().next().map(|(r, _, _)| r);
            if let Some(r) = offending {
                let x = slices[n - 1].basis.get(r);
                let image = slices[n - 3].basis.combination(product.row(r));
                first_failure = Some(format!("d(d({x})) = {}", render_combination(&image)));
                break 'weights;
            }
        }
    }
    Ok(DSquaredReport {
        flavor: W::FLAVOR,
        d,
        max_weight: max_w,
        products_checked,
        pass: first_failure.is_none(),
        first_failure,
    })
}

fn render_combination<W: Ord + Clone + fmt::Display>(x: &LinComb<W>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.iter().map(|(w, c)| format!("{c}*[{w}]")).collect::<Vec<_>>().join(" + ")
}

/// Whether `d` never increases the mark, so that the words with mark at
/// most `k` span a subcomplex for every `k`.
pub fn check_filtration(flavor: Flavor, max_w: usize, d: usize) -> Result<bool> {
    match flavor {
        Flavor::Searrow => filtration_in::<PointedWord<Forest>>(max_w, d),
        Flavor::Nearrow => filtration_in::<BarredWord<Forest>>(max_w, d),
    }
}

fn filtration_in<W: ChainWord>(max_w: usize, d: usize) -> Result<bool> {
    let catalog = ForestCatalog::new(max_w, &decorations_for(d));
    for w in 2..=max_w {
        for n in 2..=w {
            let source: ChainBasisSlice<W> = build_slice(&catalog, n, w);
            let target: ChainBasisSlice<W> = build_slice(&catalog, n - 1, w);
            let m = differential(&source, &target, None)?;
            for (r, c, _) in m.matrix.entries() {
                if target.basis.get(c).mark() > source.basis.get(r).mark() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoderivationReport {
    pub flavor: Flavor,
    pub max_length: usize,
    pub words_checked: usize,
    pub failure: Option<String>,
    pub pass: bool,
}

/// Checks `Δ ∘ d = (d ⊗ Id + θ ⊗ d) ∘ Δ` for both coproducts on every word of
/// length at most `max_n` over `alphabet_size` single-vertex letters, where
/// `θ` is `(-1)^length` on the left factor.
pub fn check_coderivation(flavor: Flavor, max_n: usize, alphabet_size: usize) -> CoderivationReport {
    match flavor {
        Flavor::Searrow => coderivation_in::<PointedWord<Forest>>(max_n, alphabet_size),
        Flavor::Nearrow => coderivation_in::<BarredWord<Forest>>(max_n, alphabet_size),
    }
}

type Pair<W> = (W, W);

fn tensor_side<W: ChainWord>(x: &W, split: fn(&W) -> Vec<Pair<W>>) -> LinComb<Pair<W>> {
    let mut out = LinComb::zero();
    for (a, b) in split(x) {
        for (da, s) in a.differential_terms(None) {
            out.add_term((da, b.clone()), Rational::from(s));
        }
        let theta = if a.len() % 2 == 0 { 1 } else { -1 };
        for (db, s) in b.differential_terms(None) {
            out.add_term((a.clone(), db), Rational::from(theta * s));
        }
    }
    out
}

fn coproduct_side<W: ChainWord>(x: &W, split: fn(&W) -> Vec<Pair<W>>) -> LinComb<Pair<W>> {
    let mut out = LinComb::zero();
    for (y, s) in x.differential_terms(None) {
        for pair in split(&y) {
            out.add_term(pair, Rational::from(s));
        }
    }
    out
}

fn render_pairs<W: ChainWord>(x: &LinComb<Pair<W>>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.iter().map(|((a, b), c)| format!("{c}*[{a}]⊗[{b}]")).collect::<Vec<_>>().join(" + ")
}

fn coderivation_in<W: ChainWord>(max_n: usize, alphabet_size: usize) -> CoderivationReport {
    let letters: Vec<Forest> = decorations_for(alphabet_size).into_iter().map(Forest::vertex).collect();
    let splits: [(&str, fn(&W) -> Vec<Pair<W>>); 2] = [("Δ", W::split_m), ("Δ_arrow", W::split_arrow)];
    let mut words_checked = 0;
    let mut failure = None;
    'outer: for n in 1..=max_n {
        for k in 1..=n {
            for seq in sequences(&letters, n) {
                let x = W::with_mark(seq, k);
                words_checked += 1;
                for (name, split) in splits {
                    let lhs = coproduct_side(&x, split);
                    let rhs = tensor_side(&x, split);
                    if lhs != rhs {
                        failure = Some(format!(
                            "{name} on [{x}]: {} vs {}",
                            render_pairs(&lhs),
                            render_pairs(&rhs)
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    CoderivationReport { flavor: W::FLAVOR, max_length: max_n, words_checked, pass: failure.is_none(), failure }
}

fn sequences<T: Clone>(alphabet: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                alphabet.iter().map(move |a| {
                    let mut q = p.clone();
                    q.push(a.clone());
                    q
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeDims {
    pub n: usize,
    pub ker: usize,
    pub im: usize,
    #[serde(rename = "H")]
    pub h: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightDims {
    pub w: usize,
    pub dims: Vec<DegreeDims>,
}

/// Homology dimensions per weight. Degree `n` is computed on words of
/// length `n + 1`: kernel of `d` there modulo the image from length `n + 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub flavor: Flavor,
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcomplex: Option<Subcomplex>,
    pub per_weight: Vec<WeightDims>,
    #[serde(rename = "H0_total")]
    pub h0_total: usize,
    #[serde(rename = "max_higher_H")]
    pub max_higher_h: usize,
}

impl HomologyReport {
    fn from_weights(flavor: Flavor, d: usize, subcomplex: Option<Subcomplex>, per_weight: Vec<WeightDims>) -> Self {
        let h0_total = per_weight.iter().flat_map(|w| w.dims.iter().filter(|x| x.n == 0)).map(|x| x.h).sum();
        let max_higher_h =
            per_weight.iter().flat_map(|w| w.dims.iter().filter(|x| x.n >= 1)).map(|x| x.h).max().unwrap_or(0);
        HomologyReport { flavor, d, subcomplex, per_weight, h0_total, max_higher_h }
    }

    /// `H_n` at weight `w`, zero when outside the computed range.
    pub fn h(&self, w: usize, n: usize) -> usize {
        self.per_weight
            .iter()
            .find(|x| x.w == w)
            .and_then(|x| x.dims.iter().find(|y| y.n == n))
            .map_or(0, |y| y.h)
    }

    /// `(w, n, H)` for every nonzero homology group.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize)> {
        self.per_weight
            .iter()
            .flat_map(|x| x.dims.iter().filter(|y| y.h > 0).map(move |y| (x.w, y.n, y.h)))
            .collect()
    }
}

/// Rank of `d` restricted to `source`, computed on the blocks of equal label
/// key.
fn blocked_rank<W: ChainWord>(
    source: &ChainBasisSlice<W>,
    target: &ChainBasisSlice<W>,
    backend: Backend,
) -> Result<usize> {
    let mut blocks: BTreeMap<Vec<Decoration>, Vec<&W>> = BTreeMap::new();
    for x in source.basis.elements() {
        blocks.entry(x.label_key()).or_default().push(x);
    }
    let blocks: Vec<Vec<&W>> = blocks.into_values().collect();
    let ranks = blocks
        .par_iter()
        .map(|block| {
            let mut local: BTreeMap<usize, usize> = BTreeMap::new();
            let mut rows = Vec::with_capacity(block.len());
            for x in block {
                let mut pairs = Vec::new();
                for (y, s) in x.differential_terms(None) {
                    let Some(j) = target.basis.index_of(&y) else {
                        // Outside a subcomplex target: d does not preserve it.
                        return Err(Error::BasisMismatch);
                    };
                    let next = local.len();
                    let c = *local.entry(j).or_insert(next);
                    pairs.push((c, Rational::from(s)));
                }
                rows.push(SparseVec::from_pairs(pairs));
            }
            let width = local.len();
            Ok(match backend {
                Backend::Rational => crate::linalg::rank_of_vectors(&rows, width),
                Backend::ModP => {
                    let rows: Vec<SparseVec<ModP>> = rows.iter().map(|r| r.map_field(ModP::from_rational)).collect();
                    crate::linalg::rank_of_vectors(&rows, width)
                }
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(ranks.into_iter().sum())
}

fn weight_dims<W: ChainWord>(
    catalog: &ForestCatalog,
    w: usize,
    subcomplex: Option<Subcomplex>,
    backend: Backend,
) -> Result<WeightDims> {
    let slices: Vec<ChainBasisSlice<W>> = (1..=w)
        .map(|n| {
            let s = build_slice(catalog, n, w);
            match subcomplex {
                Some(which) => s.restrict(which),
                None => s,
            }
        })
        .collect();
    // rank[k] = rank of d on words of length k; rank[1] = 0.
    let mut rank = vec![0usize; w + 2];
    for k in 2..=w {
        rank[k] = blocked_rank(&slices[k - 1], &slices[k - 2], backend)?;
    }
    let dims = (0..w)
        .map(|n| {
            let c = slices[n].len();
            let ker = c - rank[n + 1];
            let im = rank[n + 2];
            DegreeDims { n, ker, im, h: ker - im }
        })
        .collect();
    Ok(WeightDims { w, dims })
}

fn homology_in<W: ChainWord>(
    d: usize,
    max_w: usize,
    subcomplex: Option<Subcomplex>,
    backend: Backend,
) -> Result<HomologyReport> {
    let catalog = ForestCatalog::new(max_w, &decorations_for(d));
    let per_weight = (1..=max_w)
        .map(|w| weight_dims::<W>(&catalog, w, subcomplex, backend))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomologyReport::from_weights(W::FLAVOR, d, subcomplex, per_weight))
}

/// Homology of the full complex of the free algebra on `d` generators,
/// weights `1..=max_w`.
pub fn homology(flavor: Flavor, d: usize, max_w: usize, backend: Backend) -> Result<HomologyReport> {
    match flavor {
        Flavor::Searrow => homology_in::<PointedWord<Forest>>(d, max_w, None, backend),
        Flavor::Nearrow => homology_in::<BarredWord<Forest>>(d, max_w, None, backend),
    }
}

/// Homology of a Hochschild-type subcomplex, with the same degree
/// convention as [`homology`]: words of length one sit in degree 0.
pub fn hochschild_subcomplex(
    flavor: Flavor,
    which: Subcomplex,
    d: usize,
    max_w: usize,
    backend: Backend,
) -> Result<HomologyReport> {
    match (flavor, which) {
        (Flavor::Searrow, Subcomplex::M) => homology_in::<PointedWord<Forest>>(d, max_w, Some(which), backend),
        (Flavor::Searrow, Subcomplex::Arrow) => Err(Error::Unsupported(
            "the searrow complex has no arrow-only subcomplex".into(),
        )),
        (Flavor::Nearrow, _) => homology_in::<BarredWord<Forest>>(d, max_w, Some(which), backend),
    }
}

/// Number of free generators of each Hochschild subcomplex at weight `w`,
/// counted directly on forests: trees for `m`, forests whose first tree is
/// a single vertex for the arrow.
pub fn hochschild_generator_count(which: Subcomplex, w: usize, d: usize) -> usize {
    let forests = enumerate_forests(w, &decorations_for(d));
    match which {
        Subcomplex::M => forests.iter().filter(|f| f.is_tree()).count(),
        Subcomplex::Arrow => forests.iter().filter(|f| is_left_comb_factor(f)).count(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H0Comparison {
    pub w: usize,
    /// From the complex.
    pub complex: usize,
    /// `dim A_w` minus the span of all products landing in weight `w`.
    pub quotient: usize,
}

/// `H_0` per weight computed twice: from the complex, and as the quotient of
/// the algebra by the span of `F·G` and the flavor's arrow product.
pub fn h0_two_routes(flavor: Flavor, d: usize, max_w: usize) -> Result<Vec<H0Comparison>> {
    let report = homology(flavor, d, max_w, Backend::Rational)?;
    let decorations = decorations_for(d);
    let catalog = ForestCatalog::new(max_w, &decorations);
    let mut out = Vec::with_capacity(max_w);
    for w in 1..=max_w {
        let basis = Basis::new(catalog.forests(w).iter().cloned());
        let mut products: Vec<LinComb<Forest>> = Vec::new();
        for i in 1..w {
            for f in catalog.forests(i) {
                for g in catalog.forests(w - i) {
                    products.push(LinComb::basis(f.concat(g)));
                    products.push(LinComb::basis(flavor.arrow(f, g)));
                }
            }
        }
        let quotient = basis.len() - span_dim(&basis, &products)?;
        out.push(H0Comparison { w, complex: report.h(w, 0), quotient });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::parse_forest;

    fn f(s: &str) -> Forest {
        parse_forest(s).unwrap()
    }

    fn pw(letters: &[&str], k: usize) -> PointedWord<Forest> {
        PointedWord::new(letters.iter().map(|s| f(s)).collect(), k).unwrap()
    }

    fn bw(letters: &[&str], bars: usize) -> BarredWord<Forest> {
        BarredWord::new(letters.iter().map(|s| f(s)).collect(), bars).unwrap()
    }

    #[test]
    fn slice_sizes() {
        let cat = ForestCatalog::new(6, &Decoration::numbered(1));
        let s: ChainBasisSlice<PointedWord<Forest>> = build_slice(&cat, 1, 1);
        assert_eq!(s.len(), 1);
        let s: ChainBasisSlice<PointedWord<Forest>> = build_slice(&cat, 2, 2);
        assert_eq!(s.len(), 2);
        let s: ChainBasisSlice<PointedWord<Forest>> = build_slice(&cat, 2, 3);
        assert_eq!(s.len(), 8);
        let s: ChainBasisSlice<BarredWord<Forest>> = build_slice(&cat, 3, 2);
        assert!(s.is_empty());
        let cat2 = ForestCatalog::new(4, &Decoration::numbered(2));
        for w in 1..=4 {
            let mut total = 0;
            for n in 1..=w {
                let s: ChainBasisSlice<BarredWord<Forest>> = build_slice(&cat2, n, w);
                assert_eq!(s.len() as u128, slice_size_formula(n, w, 2));
                total += s.len();
            }
            assert_eq!(total, 4usize.pow(w as u32 - 1) * 2usize.pow(w as u32));
        }
    }

    #[test]
    fn differential_examples() {
        assert_eq!(apply_differential(&pw(&["x", "x"], 1), None), LinComb::basis(pw(&["x x"], 1)));
        assert_eq!(apply_differential(&pw(&["x", "x"], 2), None), LinComb::basis(pw(&["x(x)"], 1)));
        let d = apply_differential(&pw(&["a", "b", "c"], 1), None);
        let expected = LinComb::basis(pw(&["a b", "c"], 1)).sub(&LinComb::basis(pw(&["a", "b c"], 1)));
        assert_eq!(d, expected);
        let d = apply_differential(&bw(&["a", "b", "c"], 2), None);
        let expected = LinComb::basis(bw(&["b(a)", "c"], 1)).sub(&LinComb::basis(bw(&["a", "c(b)"], 1)));
        assert_eq!(d, expected);
    }

    #[test]
    fn weight_two_is_acyclic_above_the_generators() {
        let r = homology(Flavor::Searrow, 1, 2, Backend::Rational).unwrap();
        assert_eq!(r.h(1, 0), 1);
        assert_eq!(r.h(2, 0), 0);
        assert_eq!(r.h(2, 1), 0);
        assert_eq!(r.h0_total, 1);
        assert_eq!(r.max_higher_h, 0);
    }

    #[test]
    fn d_squared_small() {
        for flavor in Flavor::ALL {
            let r = check_d_squared(flavor, 4, 1, None).unwrap();
            assert!(r.pass, "{r:?}");
            for i in 1..=3 {
                let r = check_d_squared(flavor, 4, 1, Some(SignFlip::Position(i))).unwrap();
                assert!(!r.pass, "{flavor} flip at {i} went unnoticed");
            }
        }
        for &g in TermGroup::for_flavor(Flavor::Searrow) {
            let r = check_d_squared(Flavor::Searrow, 3, 1, Some(SignFlip::Group(g))).unwrap();
            assert!(!r.pass, "searrow flip {g:?} went unnoticed");
        }
    }

    #[test]
    fn nearrow_group_flips_are_a_change_of_basis() {
        // Flipping all barred merges is conjugation by (-1)^bars, flipping all
        // plain merges is conjugation by (-1)^(plain separators); d² stays 0.
        for &g in TermGroup::for_flavor(Flavor::Nearrow) {
            let r = check_d_squared(Flavor::Nearrow, 5, 1, Some(SignFlip::Group(g))).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let cat = ForestCatalog::new(4, &Decoration::numbered(1));
        for n in 2..=4 {
            let source: ChainBasisSlice<BarredWord<Forest>> = build_slice(&cat, n, 4);
            for x in source.basis().elements() {
                let plain = |w: &BarredWord<Forest>| w.len() - 1 - w.bars();
                let parity = |e: usize| if e % 2 == 0 { Rational::one() } else { Rational::from(-1) };
                let flipped = apply_differential(x, Some(SignFlip::Group(TermGroup::Arrow)));
                let conj = apply_differential(x, None)
                    .map_linear(|y| LinComb::term(y.clone(), parity(y.bars() + x.bars())));
                assert_eq!(flipped, conj);
                let flipped = apply_differential(x, Some(SignFlip::Group(TermGroup::MulAfter)));
                let conj = apply_differential(x, None)
                    .map_linear(|y| LinComb::term(y.clone(), parity(plain(y) + plain(x))));
                assert_eq!(flipped, conj);
            }
        }
    }

    #[test]
    fn sign_flip_text() {
        for s in ["arrow", "mul-before", "position-2"] {
            assert_eq!(s.parse::<SignFlip>().unwrap().to_string(), s);
        }
        assert!("position-0".parse::<SignFlip>().is_err());
        assert!("sideways".parse::<SignFlip>().is_err());
    }

    #[test]
    fn coderivation_small() {
        for flavor in Flavor::ALL {
            let r = check_coderivation(flavor, 3, 2);
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn hochschild_unsupported_combination() {
        assert!(matches!(
            hochschild_subcomplex(Flavor::Searrow, Subcomplex::Arrow, 1, 3, Backend::Rational),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn json_schema_keys() {
        let r = homology(Flavor::Nearrow, 1, 2, Backend::Rational).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["flavor"], "nearrow");
        assert_eq!(v["D"], 1);
        assert_eq!(v["H0_total"], 1);
        assert_eq!(v["max_higher_H"], 0);
        assert_eq!(v["per_weight"][1]["dims"][0]["H"], 0);
        assert!(v.get("subcomplex").is_none());
    }
}
