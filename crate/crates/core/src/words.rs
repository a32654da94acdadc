//! Tensor words with a marked position: the free algebras over the dual
//! operads, with their products and deconcatenation coproducts.
//!
//! A pointed word `v1 ⊗ … ⊗ v̇k ⊗ … ⊗ vm` marks one letter. A barred word
//! `v1 ⊗̄ … ⊗̄ vk ⊗ … ⊗ vm` bars its first `k - 1` separators. Positions are
//! counted from 1 throughout.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::LinComb;
use crate::operad::{Generator, OperadTerm};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedWord<L> {
    letters: Vec<L>,
    point: usize,
}

impl<L: Clone> PointedWord<L> {
    pub fn new(letters: Vec<L>, point: usize) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if point == 0 || point > letters.len() {
            return Err(Error::InvalidWord(format!("point {point} outside 1..={}", letters.len())));
        }
        Ok(PointedWord { letters, point })
    }

    pub(crate) fn new_unchecked(letters: Vec<L>, point: usize) -> Self {
        debug_assert!(point >= 1 && point <= letters.len());
        PointedWord { letters, point }
    }

    pub fn letter(x: L) -> Self {
        PointedWord { letters: vec![x], point: 1 }
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn map_letters<M>(&self, f: impl FnMut(&L) -> M) -> PointedWord<M> {
        PointedWord { letters: self.letters.iter().map(f).collect(), point: self.point }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarredWord<L> {
    letters: Vec<L>,
    bars: usize,
}

impl<L: Clone> BarredWord<L> {
    pub fn new(letters: Vec<L>, bars: usize) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if bars >= letters.len() {
            return Err(Error::InvalidWord(format!("{bars} bars on a word of length {}", letters.len())));
        }
        Ok(BarredWord { letters, bars })
    }

    pub(crate) fn new_unchecked(letters: Vec<L>, bars: usize) -> Self {
        debug_assert!(bars < letters.len());
        BarredWord { letters, bars }
    }

    pub fn letter(x: L) -> Self {
        BarredWord { letters: vec![x], bars: 0 }
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    /// Number of leading barred separators.
    pub fn bars(&self) -> usize {
        self.bars
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_fully_barred(&self) -> bool {
        self.bars + 1 == self.letters.len()
    }

    pub fn map_letters<M>(&self, f: impl FnMut(&L) -> M) -> BarredWord<M> {
        BarredWord { letters: self.letters.iter().map(f).collect(), bars: self.bars }
    }
}

pub type WordCombination<W> = LinComb<W>;

fn joined<L: Clone>(a: &[L], b: &[L]) -> Vec<L> {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v
}

fn single<W: Ord + Clone>(w: Option<W>) -> WordCombination<W> {
    w.map(LinComb::basis).unwrap_or_default()
}

/// Basis words of a free algebra over a dual operad, with the two products
/// and the two coproducts acting on single words.
pub trait DualWord: Clone + Ord + Hash {
    fn len(&self) -> usize;
    fn mul_word(&self, other: &Self) -> Option<Self>;
    fn arrow_word(&self, other: &Self) -> Option<Self>;
    fn split_m(&self) -> Vec<(Self, Self)>;
    fn split_arrow(&self) -> Vec<(Self, Self)>;
}

impl<L: Clone + Ord + Hash> DualWord for PointedWord<L> {
    fn len(&self) -> usize {
        self.letters.len()
    }

    fn mul_word(&self, w: &Self) -> Option<Self> {
        (w.point == 1).then(|| PointedWord::new_unchecked(joined(&self.letters, &w.letters), self.point))
    }

    fn arrow_word(&self, w: &Self) -> Option<Self> {
        (self.point == 1)
            .then(|| PointedWord::new_unchecked(joined(&self.letters, &w.letters), self.len() + w.point))
    }

    fn split_m(&self) -> Vec<(Self, Self)> {
        (self.point..self.len())
            .map(|i| {
                (
                    PointedWord::new_unchecked(self.letters[..i].to_vec(), self.point),
                    PointedWord::new_unchecked(self.letters[i..].to_vec(), 1),
                )
            })
            .collect()
    }

    fn split_arrow(&self) -> Vec<(Self, Self)> {
        (1..self.point)
            .map(|i| {
                (
                    PointedWord::new_unchecked(self.letters[..i].to_vec(), 1),
                    PointedWord::new_unchecked(self.letters[i..].to_vec(), self.point - i),
                )
            })
            .collect()
    }
}

impl<L: Clone + Ord + Hash> DualWord for BarredWord<L> {
    fn len(&self) -> usize {
        self.letters.len()
    }

    fn mul_word(&self, w: &Self) -> Option<Self> {
        (w.bars == 0).then(|| BarredWord::new_unchecked(joined(&self.letters, &w.letters), self.bars))
    }

    fn arrow_word(&self, w: &Self) -> Option<Self> {
        self.is_fully_barred()
            .then(|| BarredWord::new_unchecked(joined(&self.letters, &w.letters), self.len() + w.bars))
    }

    fn split_m(&self) -> Vec<(Self, Self)> {
        (self.bars + 1..self.len())
            .map(|i| {
                (
                    BarredWord::new_unchecked(self.letters[..i].to_vec(), self.bars),
                    BarredWord::new_unchecked(self.letters[i..].to_vec(), 0),
                )
            })
            .collect()
    }

    fn split_arrow(&self) -> Vec<(Self, Self)> {
        (1..=self.bars)
            .map(|i| {
                (
                    BarredWord::new_unchecked(self.letters[..i].to_vec(), i - 1),
                    BarredWord::new_unchecked(self.letters[i..].to_vec(), self.bars - i),
                )
            })
            .collect()
    }
}

/// `v · w`: nonzero only when `w` is pointed at its first letter.
pub fn pw_mul<L: Clone + Ord + Hash>(v: &PointedWord<L>, w: &PointedWord<L>) -> WordCombination<PointedWord<L>> {
    single(v.mul_word(w))
}

/// `v ↘ w`: nonzero only when `v` is pointed at its first letter.
pub fn pw_searrow<L: Clone + Ord + Hash>(v: &PointedWord<L>, w: &PointedWord<L>) -> WordCombination<PointedWord<L>> {
    single(v.arrow_word(w))
}

/// `v · w`: nonzero only when `w` has no bars; the junction is plain.
pub fn bw_mul<L: Clone + Ord + Hash>(v: &BarredWord<L>, w: &BarredWord<L>) -> WordCombination<BarredWord<L>> {
    single(v.mul_word(w))
}

/// `v ↗ w`: nonzero only when every separator of `v` is barred; the junction
/// is barred.
pub fn bw_nearrow<L: Clone + Ord + Hash>(v: &BarredWord<L>, w: &BarredWord<L>) -> WordCombination<BarredWord<L>> {
    single(v.arrow_word(w))
}

/// Terms of the coproduct `Δ`, as (left, right) pairs.
pub fn coproduct_m<W: DualWord>(v: &W) -> Vec<(W, W)> {
    v.split_m()
}

/// Terms of the arrow coproduct `Δ_↘` or `Δ_↗`.
pub fn coproduct_arrow<W: DualWord>(v: &W) -> Vec<(W, W)> {
    v.split_arrow()
}

pub fn word_mul<W: DualWord>(x: &WordCombination<W>, y: &WordCombination<W>) -> WordCombination<W> {
    x.bilinear(y, |a, b| single(a.mul_word(b)))
}

pub fn word_arrow<W: DualWord>(x: &WordCombination<W>, y: &WordCombination<W>) -> WordCombination<W> {
    x.bilinear(y, |a, b| single(a.arrow_word(b)))
}

/// Evaluates an operad term on word combinations, `m` acting by
/// [`word_mul`] and the arrow by [`word_arrow`].
pub fn evaluate_on_words<W: DualWord>(t: &OperadTerm, args: &[WordCombination<W>]) -> Result<WordCombination<W>> {
    if t.arity() != args.len() {
        return Err(Error::ArityMismatch { expected: t.arity(), found: args.len() });
    }
    let mut it = args.iter();
    Ok(eval_from(t, &mut it))
}

fn eval_from<'a, W: DualWord + 'a>(
    t: &OperadTerm,
    args: &mut impl Iterator<Item = &'a WordCombination<W>>,
) -> WordCombination<W> {
    match t {
        OperadTerm::Leaf => args.next().expect("arity checked").clone(),
        OperadTerm::Node(g, l, r) => {
            let x = eval_from(l, args);
            let y = eval_from(r, args);
            match g {
                Generator::Mul => word_mul(&x, &y),
                Generator::Arrow => word_arrow(&x, &y),
            }
        }
    }
}

/// All pointed words of length `n` over `alphabet`, ordered by point then
/// letters.
pub fn pointed_words<L: Clone>(alphabet: &[L], n: usize) -> Vec<PointedWord<L>> {
    let mut out = Vec::new();
    for k in 1..=n {
        for letters in letter_strings(alphabet, n) {
            out.push(PointedWord::new_unchecked(letters, k));
        }
    }
    out
}

/// All barred words of length `n` over `alphabet`, ordered by bar count then
/// letters.
pub fn barred_words<L: Clone>(alphabet: &[L], n: usize) -> Vec<BarredWord<L>> {
    let mut out = Vec::new();
    for bars in 0..n {
        for letters in letter_strings(alphabet, n) {
            out.push(BarredWord::new_unchecked(letters, bars));
        }
    }
    out
}

fn letter_strings<L: Clone>(alphabet: &[L], n: usize) -> Vec<Vec<L>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                alphabet.iter().map(move |a| {
                    let mut p = prefix.clone();
                    p.push(a.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// `a*.b*c`: letters joined by `*`, the pointed letter prefixed by `.`.
impl<L: fmt::Display> fmt::Display for PointedWord<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if i + 1 == self.point {
                f.write_str(".")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// `a^b*c`: barred separators are `^`, plain ones `*`.
impl<L: fmt::Display> fmt::Display for BarredWord<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(if i <= self.bars { "^" } else { "*" })?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl<L: fmt::Display> fmt::Debug for PointedWord<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<L: fmt::Display> fmt::Debug for BarredWord<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_letter<L: FromStr>(s: &str) -> Result<L>
where
    L::Err: fmt::Display,
{
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidWord("empty letter".into()));
    }
    s.parse().map_err(|e: L::Err| Error::InvalidWord(format!("bad letter {s:?}: {e}")))
}

impl<L: FromStr + Clone> FromStr for PointedWord<L>
where
    L::Err: fmt::Display,
{
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut point = None;
        for (i, part) in s.split('*').enumerate() {
            let part = part.trim();
            let body = match part.strip_prefix('.') {
                Some(rest) => {
                    if point.replace(i + 1).is_some() {
                        return Err(Error::InvalidWord(format!("{s:?} has two points")));
                    }
                    rest
                }
                None => part,
            };
            letters.push(parse_letter(body)?);
        }
        let point = point.ok_or_else(|| Error::InvalidWord(format!("{s:?} has no point")))?;
        PointedWord::new(letters, point)
    }
}

impl<L: FromStr + Clone> FromStr for BarredWord<L>
where
    L::Err: fmt::Display,
{
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut bars = 0;
        let mut plain_seen = false;
        let mut start = 0;
        for (i, c) in s.char_indices() {
            if c == '^' || c == '*' {
                letters.push(parse_letter(&s[start..i])?);
                start = i + 1;
                if c == '^' {
                    if plain_seen {
                        return Err(Error::InvalidWord(format!("{s:?}: barred separator after a plain one")));
                    }
                    bars += 1;
                } else {
                    plain_seen = true;
                }
            }
        }
        letters.push(parse_letter(&s[start..])?);
        BarredWord::new(letters, bars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{Presentation, PresentationKind};

    fn pw(s: &str) -> PointedWord<String> {
        s.parse().unwrap()
    }

    fn bw(s: &str) -> BarredWord<String> {
        s.parse().unwrap()
    }

    fn one<W: Ord + Clone>(w: W) -> WordCombination<W> {
        LinComb::basis(w)
    }

    #[test]
    fn pointed_products() {
        assert_eq!(pw_mul(&pw(".a*b"), &pw(".c")), one(pw(".a*b*c")));
        assert!(pw_mul(&pw(".a"), &pw("b*.c")).is_zero());
        assert_eq!(pw_mul(&pw("a*.b"), &pw(".c*d")), one(pw("a*.b*c*d")));
        assert_eq!(pw_searrow(&pw(".a"), &pw("b*.c")), one(pw("a*b*.c")));
        assert!(pw_searrow(&pw("a*.b"), &pw(".c")).is_zero());
        assert_eq!(pw_searrow(&pw(".a"), &pw(".b*c")), one(pw("a*.b*c")));
    }

    #[test]
    fn barred_products() {
        assert_eq!(bw_mul(&bw("a^b"), &bw("c")), one(bw("a^b*c")));
        assert!(bw_mul(&bw("a"), &bw("b^c")).is_zero());
        assert_eq!(bw_mul(&bw("a*b"), &bw("c*d")), one(bw("a*b*c*d")));
        assert_eq!(bw_nearrow(&bw("a"), &bw("b*c")), one(bw("a^b*c")));
        assert!(bw_nearrow(&bw("a*b"), &bw("c")).is_zero());
        assert_eq!(bw_nearrow(&bw("a^b"), &bw("c^d")), one(bw("a^b^c^d")));
    }

    #[test]
    fn coproducts() {
        assert_eq!(coproduct_m(&pw(".a*b*c")), vec![(pw(".a"), pw(".b*c")), (pw(".a*b"), pw(".c"))]);
        assert!(coproduct_m(&pw("a*.b")).is_empty());
        assert_eq!(coproduct_m(&bw("a^b*c")), vec![(bw("a^b"), bw("c"))]);
        assert_eq!(coproduct_arrow(&pw("a*.b")), vec![(pw(".a"), pw(".b"))]);
        assert!(coproduct_arrow(&pw(".a*b")).is_empty());
        assert_eq!(coproduct_arrow(&bw("a^b^c")), vec![(bw("a"), bw("b^c")), (bw("a^b"), bw("c"))]);
    }

    #[test]
    fn text_round_trip_and_errors() {
        for s in [".a", "a*.b*c", ".x1*x2"] {
            assert_eq!(pw(s).to_string(), s);
        }
        for s in ["a", "a^b*c", "a^b^c", "a*b"] {
            assert_eq!(bw(s).to_string(), s);
        }
        assert!("a*b".parse::<PointedWord<String>>().is_err());
        assert!(".a*.b".parse::<PointedWord<String>>().is_err());
        assert!("a*b^c".parse::<BarredWord<String>>().is_err());
        assert!("a**b".parse::<BarredWord<String>>().is_err());
        assert!(PointedWord::new(vec!["a"], 2).is_err());
        assert!(BarredWord::new(vec!["a"], 1).is_err());
    }

    #[test]
    fn grading_counts() {
        let ab = ["a", "b"];
        for n in 1..=5 {
            assert_eq!(pointed_words(&ab, n).len(), n * 2usize.pow(n as u32));
            assert_eq!(barred_words(&ab, n).len(), n * 2usize.pow(n as u32));
        }
    }

    #[test]
    fn pointed_words_generated_by_letters() {
        // v1 ⊗ … ⊗ v̇k ⊗ … ⊗ vn = (v̇1 ⊗ … ⊗ v(k-1)) ↘ (v̇k ⊗ … ⊗ vn), and a
        // point-first word is a product of letters.
        for n in 1..=5 {
            for w in pointed_words(&["a", "b"], n) {
                let k = w.point();
                let head_first = |xs: &[&'static str]| {
                    xs.iter()
                        .map(|x| one(PointedWord::letter(*x)))
                        .reduce(|acc, x| word_mul(&acc, &x))
                        .unwrap()
                };
                let rebuilt = if k == 1 {
                    head_first(w.letters())
                } else {
                    word_arrow(&head_first(&w.letters()[..k - 1]), &head_first(&w.letters()[k - 1..]))
                };
                assert_eq!(rebuilt, one(w));
            }
        }
    }

    fn relations_hold<W: DualWord + fmt::Display>(kind: PresentationKind, words: &[W]) {
        let p = Presentation::new(kind);
        for x in words {
            for y in words {
                for z in words {
                    let args = [one(x.clone()), one(y.clone()), one(z.clone())];
                    for (i, r) in p.relations().iter().enumerate() {
                        let value = r
                            .iter()
                            .map(|(t, c)| evaluate_on_words(t, &args).unwrap().scale(c))
                            .fold(LinComb::zero(), |a, b| a.add(&b));
                        assert!(value.is_zero(), "{kind} relation {i} fails on {x}, {y}, {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn dual_relations_on_short_words() {
        let ab = ["a", "b"];
        let pointed: Vec<_> = (1..=3).flat_map(|n| pointed_words(&ab, n)).collect();
        relations_hold(PresentationKind::SearrowDual, &pointed);
        let barred: Vec<_> = (1..=3).flat_map(|n| barred_words(&ab, n)).collect();
        relations_hold(PresentationKind::NearrowDual, &barred);
    }

    /// Barred words whose arrow product is nonzero exactly when the
    /// candidate predicate `P` holds for the left factor.
    #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
    struct Candidate<const P: u8>(BarredWord<&'static str>);

    impl<const P: u8> Candidate<P> {
        fn allowed(v: &BarredWord<&'static str>) -> bool {
            match P {
                0 => v.bars() == 0,
                1 => v.is_fully_barred(),
                2 => v.bars() + 2 == v.len(),
                3 => true,
                _ => v.len() == 1,
            }
        }
    }

    impl<const P: u8> DualWord for Candidate<P> {
        fn len(&self) -> usize {
            self.0.len()
        }
        fn mul_word(&self, other: &Self) -> Option<Self> {
            self.0.mul_word(&other.0).map(Candidate)
        }
        fn arrow_word(&self, other: &Self) -> Option<Self> {
            let v = &self.0;
            Self::allowed(v).then(|| {
                let bars = if v.is_fully_barred() { v.len() + other.0.bars() } else { v.bars() };
                Candidate(BarredWord::new_unchecked(joined(v.letters(), other.0.letters()), bars))
            })
        }
        fn split_m(&self) -> Vec<(Self, Self)> {
            Vec::new()
        }
        fn split_arrow(&self) -> Vec<(Self, Self)> {
            Vec::new()
        }
    }

    fn failing_relations<const P: u8>() -> usize {
        let p = Presentation::new(PresentationKind::NearrowDual);
        let words: Vec<Candidate<P>> =
            (1..=3).flat_map(|n| barred_words(&["a", "b"], n)).map(Candidate).collect();
        let mut failing = 0;
        for r in p.relations() {
            let holds = words.iter().all(|x| {
                words.iter().all(|y| {
                    words.iter().all(|z| {
                        let args = [one(x.clone()), one(y.clone()), one(z.clone())];
                        r.iter()
                            .map(|(t, c)| evaluate_on_words(t, &args).unwrap().scale(c))
                            .fold(LinComb::zero(), |a, b| a.add(&b))
                            .is_zero()
                    })
                })
            });
            if !holds {
                failing += 1;
            }
        }
        failing
    }

    #[test]
    fn only_fully_barred_left_factor_satisfies_the_relations() {
        assert!(failing_relations::<0>() > 0);
        assert_eq!(failing_relations::<1>(), 0);
        assert!(failing_relations::<2>() > 0);
        assert!(failing_relations::<3>() > 0);
        assert!(failing_relations::<4>() > 0);
    }
}
