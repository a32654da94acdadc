//! Planar rooted trees and forests with decorated vertices.
//!
//! A [`Forest`] is a nonempty ordered sequence of [`Tree`]s. Forests form a
//! basis of the free algebras, and carry three products:
//!
//! * concatenation (`m`),
//! * [`Forest::graft_root`] (`↘`): the trees of the left operand become the
//!   new leftmost children of the root of the leftmost tree of the right
//!   operand,
//! * [`Forest::graft_left_leaf`] (`↗`): the trees of the left operand become
//!   the children of the leftmost leaf of the leftmost tree of the right
//!   operand.
//!
//! The text form is `tree (" " tree)*` with `tree := label | label "(" forest ")"`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A vertex label. Labels match `[A-Za-z_][A-Za-z0-9_]*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decoration(Arc<str>);

impl Decoration {
    pub fn new(label: &str) -> Result<Self> {
        if is_valid_label(label) {
            Ok(Decoration(Arc::from(label)))
        } else {
            Err(Error::InvalidLabel(label.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The labels `x1, ..., xD`.
    pub fn numbered(count: usize) -> Vec<Decoration> {
        (1..=count)
            .map(|i| Decoration(Arc::from(format!("x{i}").as_str())))
            .collect()
    }

    /// Parses a comma-separated list of labels, keeping the given order.
    pub fn parse_list(csv: &str) -> Result<Vec<Decoration>> {
        let mut out: Vec<Decoration> = Vec::new();
        for part in csv.split(',') {
            let d = Decoration::new(part.trim())?;
            if !out.contains(&d) {
                out.push(d);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_label_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}

fn is_label_continue(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

fn is_valid_label(s: &str) -> bool {
    let bytes = s.as_bytes();
    !bytes.is_empty() && is_label_start(bytes[0]) && bytes[1..].iter().all(|&b| is_label_continue(b))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    label: Decoration,
    children: Vec<Tree>,
}

impl Tree {
    pub fn new(label: Decoration, children: Vec<Tree>) -> Self {
        Tree { label, children }
    }

    pub fn leaf(label: Decoration) -> Self {
        Tree { label, children: Vec::new() }
    }

    pub fn label(&self) -> &Decoration {
        &self.label
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of vertices.
    pub fn weight(&self) -> usize {
        1 + self.children.iter().map(Tree::weight).sum::<usize>()
    }

    fn push_postorder<'a>(&'a self, out: &mut Vec<&'a Decoration>) {
        for c in &self.children {
            c.push_postorder(out);
        }
        out.push(&self.label);
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label.as_str())?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            write_trees(f, &self.children)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn write_trees(f: &mut fmt::Formatter<'_>, trees: &[Tree]) -> fmt::Result {
    for (i, t) in trees.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

/// Nonempty ordered sequence of planar trees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn new(trees: Vec<Tree>) -> Result<Self> {
        if trees.is_empty() {
            Err(Error::EmptyForest)
        } else {
            Ok(Forest { trees })
        }
    }

    /// The single-vertex forest `•_d`.
    pub fn vertex(label: Decoration) -> Self {
        Forest { trees: vec![Tree::leaf(label)] }
    }

    pub fn from_tree(tree: Tree) -> Self {
        Forest { trees: vec![tree] }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    pub fn first_tree(&self) -> &Tree {
        &self.trees[0]
    }

    pub fn is_tree(&self) -> bool {
        self.trees.len() == 1
    }

    pub fn weight(&self) -> usize {
        self.trees.iter().map(Tree::weight).sum()
    }

    /// Labels in postorder (children left to right, then the root).
    ///
    /// All three products satisfy `postorder(F * G) = postorder(F) ++ postorder(G)`.
    pub fn postorder(&self) -> Vec<&Decoration> {
        let mut out = Vec::with_capacity(self.weight());
        for t in &self.trees {
            t.push_postorder(&mut out);
        }
        out
    }

    /// The product `m`.
    pub fn concat(&self, other: &Forest) -> Forest {
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        trees.extend_from_slice(&self.trees);
        trees.extend_from_slice(&other.trees);
        Forest { trees }
    }

    /// The product `self ↘ other`.
    pub fn graft_root(&self, other: &Forest) -> Forest {
        let mut trees = other.trees.clone();
        let root = &mut trees[0];
        let mut children = self.trees.clone();
        children.append(&mut root.children);
        root.children = children;
        Forest { trees }
    }

    /// The product `self ↗ other`.
    pub fn graft_left_leaf(&self, other: &Forest) -> Forest {
        let mut trees = other.trees.clone();
        let mut node = &mut trees[0];
        while !node.children.is_empty() {
            node = &mut node.children[0];
        }
        node.children = self.trees.clone();
        Forest { trees }
    }

    pub fn tokens(&self) -> Tokens<'_> {
        Tokens {
            stack: vec![(self.trees.as_slice(), 0)],
            pending: Vec::with_capacity(2),
        }
    }
}

/// `B_d(F)`: the tree with root `d` whose children are the trees of `f`.
pub fn b_plus(d: &Decoration, f: &Forest) -> Tree {
    Tree::new(d.clone(), f.trees.clone())
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest({self})")
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_trees(f, &self.trees)
    }
}

/// Lexical token of the canonical text form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Token<'a> {
    Space,
    Open,
    Close,
    Label(&'a Decoration),
}

/// Lazy token stream of a forest's canonical text.
pub struct Tokens<'a> {
    stack: Vec<(&'a [Tree], usize)>,
    pending: Vec<Token<'a>>,
}

impl<'a> Iterator for Tokens<'a> {
    type Item = Token<'a>;

    fn next(&mut self) -> Option<Token<'a>> {
        if let Some(t) = self.pending.pop() {
            return Some(t);
        }
        let depth = self.stack.len();
        let (slice, idx) = self.stack.last_mut()?;
        if *idx < slice.len() {
            let tree: &'a Tree = &slice[*idx];
            let first = *idx == 0;
            *idx += 1;
            if !tree.children.is_empty() {
                self.pending.push(Token::Open);
                self.stack.push((&tree.children, 0));
            }
            if first {
                Some(Token::Label(&tree.label))
            } else {
                self.pending.push(Token::Label(&tree.label));
                Some(Token::Space)
            }
        } else {
            self.stack.pop();
            if depth > 1 {
                Some(Token::Close)
            } else {
                None
            }
        }
    }
}

/// Forests order by weight, then by canonical text token by token
/// (space < "(" < ")" < labels, labels by string order).
impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.tokens().cmp(other.tokens()))
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Forest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_forest(s)
    }
}

pub fn parse_forest(text: &str) -> Result<Forest> {
    if text.is_empty() {
        return Err(Error::EmptyForest);
    }
    let mut p = Parser { bytes: text.as_bytes(), text, pos: 0 };
    let trees = p.forest()?;
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Forest::new(trees)
}

pub fn format_forest(f: &Forest) -> String {
    f.to_string()
}

struct Parser<'a> {
    bytes: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn forest(&mut self) -> Result<Vec<Tree>> {
        let mut trees = vec![self.tree()?];
        while self.bytes.get(self.pos) == Some(&b' ') {
            self.pos += 1;
            trees.push(self.tree()?);
        }
        Ok(trees)
    }

    fn tree(&mut self) -> Result<Tree> {
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(&b) if is_label_start(b) => self.pos += 1,
            Some(_) => return Err(self.error("expected a label")),
            None => return Err(self.error("unexpected end of input, expected a label")),
        }
        while self.bytes.get(self.pos).is_some_and(|&b| is_label_continue(b)) {
            self.pos += 1;
        }
        let label = Decoration(Arc::from(&self.text[start..self.pos]));
        if self.bytes.get(self.pos) == Some(&b'(') {
            self.pos += 1;
            let children = self.forest()?;
            if self.bytes.get(self.pos) != Some(&b')') {
                return Err(self.error("expected ')'"));
            }
            self.pos += 1;
            Ok(Tree::new(label, children))
        } else {
            Ok(Tree::leaf(label))
        }
    }
}

/// All forests of weight exactly `w` decorated by `decorations`, each once,
/// ordered by canonical text with labels ranked by their position in
/// `decorations`.
pub fn enumerate_forests(w: usize, decorations: &[Decoration]) -> Vec<Forest> {
    if w == 0 || decorations.is_empty() {
        return Vec::new();
    }
    let table = tree_sequences(w, decorations);
    let mut out: Vec<Forest> = table[w]
        .iter()
        .map(|trees| Forest { trees: trees.clone() })
        .collect();
    sort_by_decoration_rank(&mut out, decorations);
    out
}

/// `table[k]` lists every (possibly empty, for k = 0) sequence of trees of
/// total weight k.
fn tree_sequences(w: usize, decorations: &[Decoration]) -> Vec<Vec<Vec<Tree>>> {
    let mut table: Vec<Vec<Vec<Tree>>> = vec![vec![Vec::new()]];
    for k in 1..=w {
        let mut seqs = Vec::new();
        for first in 1..=k {
            for d in decorations {
                for children in &table[first - 1] {
                    for rest in &table[k - first] {
                        let mut seq = Vec::with_capacity(rest.len() + 1);
                        seq.push(Tree::new(d.clone(), children.clone()));
                        seq.extend_from_slice(rest);
                        seqs.push(seq);
                    }
                }
            }
        }
        table.push(seqs);
    }
    table
}

pub(crate) fn sort_by_decoration_rank(forests: &mut [Forest], decorations: &[Decoration]) {
    let rank = |t: Token<'_>| -> (u8, usize) {
        match t {
            Token::Space => (0, 0),
            Token::Open => (1, 0),
            Token::Close => (2, 0),
            Token::Label(d) => (3, decorations.iter().position(|x| x == d).unwrap_or(usize::MAX)),
        }
    };
    forests.sort_by(|a, b| {
        a.weight()
            .cmp(&b.weight())
            .then_with(|| a.tokens().map(rank).cmp(b.tokens().map(rank)))
    });
}

/// Unique expression of a forest as `F_1 ↗ ... ↗ F_n` where every factor is
/// a single vertex followed by an optional remainder forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftCombFactorization {
    factors: Vec<Forest>,
}

impl LeftCombFactorization {
    pub fn factors(&self) -> &[Forest] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Folds the factors back with `↗`.
    pub fn refold(&self) -> Forest {
        fold_left_comb(&self.factors)
    }
}

/// Whether `f` has the factor shape `•_d G`: its first tree is a single vertex.
pub fn is_left_comb_factor(f: &Forest) -> bool {
    f.first_tree().is_leaf()
}

/// `f[0] ↗ f[1] ↗ ... ↗ f[n-1]`. The product is associative, so the
/// bracketing is irrelevant.
pub fn fold_left_comb(factors: &[Forest]) -> Forest {
    let mut it = factors.iter();
    let mut acc = it.next().expect("at least one factor").clone();
    for f in it {
        acc = acc.graft_left_leaf(f);
    }
    acc
}

pub fn factorize_left_comb(f: &Forest) -> LeftCombFactorization {
    // F = B_d(H1) H2 gives factors(H1) followed by •_d H2.
    let mut reversed = Vec::new();
    let mut current = f.clone();
    loop {
        let mut trees = current.trees;
        let first = trees.remove(0);
        let Tree { label, children } = first;
        let mut factor = Vec::with_capacity(trees.len() + 1);
        factor.push(Tree::leaf(label));
        factor.extend(trees);
        reversed.push(Forest { trees: factor });
        if children.is_empty() {
            break;
        }
        current = Forest { trees: children };
    }
    reversed.reverse();
    LeftCombFactorization { factors: reversed }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Forest {
        parse_forest(s).unwrap()
    }

    fn d(s: &str) -> Decoration {
        Decoration::new(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let a = f("a");
        assert!(a.is_tree() && a.first_tree().is_leaf());
        let ba = f("b(a)");
        assert_eq!(ba.first_tree().label().as_str(), "b");
        assert_eq!(ba.first_tree().children().len(), 1);
        let x = f("a(b c) d");
        assert_eq!(x.trees().len(), 2);
        let kids: Vec<_> = x.first_tree().children().iter().map(|t| t.label().as_str()).collect();
        assert_eq!(kids, ["b", "c"]);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(parse_forest(""), Err(Error::EmptyForest));
        match parse_forest("a(b") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        match parse_forest("a  b") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_forest("a()"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_forest("1a"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_forest(" a"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_forest("a "), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_forest("a)"), Err(Error::Syntax { offset: 1, .. })));
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_forest(&Forest::vertex(d("a"))), "a");
        assert_eq!(format_forest(&Forest::from_tree(b_plus(&d("b"), &f("a")))), "b(a)");
        assert_eq!(format_forest(&f("a").concat(&f("a"))), "a a");
    }

    #[test]
    fn weights() {
        assert_eq!(f("a").weight(), 1);
        assert_eq!(f("a(b c) d").weight(), 4);
        assert_eq!(f("b(a)").weight(), 2);
    }

    #[test]
    fn products() {
        assert_eq!(f("a").concat(&f("b")), f("a b"));
        assert_eq!(f("a b").concat(&f("c")), f("a b c"));
        assert_eq!(f("b(a)").concat(&f("c")), f("b(a) c"));

        assert_eq!(f("a").graft_root(&f("b")), f("b(a)"));
        assert_eq!(f("a").graft_root(&f("b(c) e")), f("b(a c) e"));
        assert_eq!(f("a b").graft_root(&f("c")), f("c(a b)"));

        assert_eq!(f("a").graft_left_leaf(&f("b")), f("b(a)"));
        assert_eq!(f("a").graft_left_leaf(&f("b(c d)")), f("b(c(a) d)"));
        assert_eq!(f("a").graft_left_leaf(&f("b(c) e")), f("b(c(a)) e"));
    }

    #[test]
    fn b_plus_examples() {
        assert_eq!(b_plus(&d("b"), &f("a")).to_string(), "b(a)");
        assert_eq!(b_plus(&d("d"), &f("a b")).to_string(), "d(a b)");
        assert_eq!(b_plus(&d("d"), &f("b(a)")).to_string(), "d(b(a))");
    }

    #[test]
    fn enumeration_examples() {
        let x = [d("x")];
        assert_eq!(enumerate_forests(1, &x), vec![f("x")]);
        assert_eq!(enumerate_forests(3, &x).len(), 5);
        let ab = [d("a"), d("b")];
        assert_eq!(enumerate_forests(2, &ab).len(), 8);
    }

    #[test]
    fn enumeration_order_follows_decoration_rank() {
        let ba = [d("b"), d("a")];
        let list = enumerate_forests(1, &ba);
        assert_eq!(list, vec![f("b"), f("a")]);
        let text: Vec<String> = enumerate_forests(3, &[d("x")]).iter().map(|f| f.to_string()).collect();
        assert_eq!(text, ["x x x", "x x(x)", "x(x x)", "x(x(x))", "x(x) x"]);
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(factorize_left_comb(&f("a")).factors(), &[f("a")]);
        assert_eq!(factorize_left_comb(&f("b(a)")).factors(), &[f("a"), f("b")]);
        assert_eq!(factorize_left_comb(&f("b(a) c")).factors(), &[f("a"), f("b c")]);
        let g = f("c(b(a d) e) f(g)");
        let fact = factorize_left_comb(&g);
        assert!(fact.factors().iter().all(is_left_comb_factor));
        assert_eq!(fact.refold(), g);
    }

    #[test]
    fn token_order_matches_text_for_single_char_labels() {
        let mut list = enumerate_forests(4, &[d("a"), d("b")]);
        list.sort();
        let text: Vec<String> = list.iter().map(|f| f.to_string()).collect();
        let mut sorted = text.clone();
        sorted.sort();
        assert_eq!(text, sorted);
    }

    #[test]
    fn postorder_is_multiplicative() {
        let a = f("a(b) c");
        let b = f("d(e f)");
        let cat: Vec<String> = a.postorder().into_iter().chain(b.postorder()).map(|d| d.to_string()).collect();
        for prod in [a.concat(&b), a.graft_root(&b), a.graft_left_leaf(&b)] {
            let p: Vec<String> = prod.postorder().into_iter().map(|d| d.to_string()).collect();
            assert_eq!(p, cat);
        }
    }
}
