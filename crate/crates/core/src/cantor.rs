//! Binary words, prefix codes and dyadic pieces of the Cantor set `C` and of `C²`.
//!
//! A [`Word`] names the dyadic interval `I(w)` of all infinite sequences starting
//! with `w`. Products of two intervals are [`Rect`]s, and points whose coordinates
//! have finitely many ones are [`DyadicPoint`]s, stored by their finite heads.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// A finite string over `{0,1}`. The empty word renders as `-`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from bits; anything nonzero counts as `1`.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        Word(bits.into_iter().map(|b| (b != 0) as u8).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Word(vec![0; n])
    }

    pub fn ones(n: usize) -> Self {
        Word(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.0[i]
    }

    /// Bit `i` of the infinite sequence `self·000…`.
    pub fn padded_bit(&self, i: usize) -> u8 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        is_prefix(self, other)
    }

    /// True iff `self` is a prefix of the infinite sequence `other·000…`.
    pub fn is_prefix_of_padded(&self, other: &Word) -> bool {
        self.0.iter().enumerate().all(|(i, &b)| other.padded_bit(i) == b)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.0);
        bits.extend_from_slice(&other.0);
        Word(bits)
    }

    pub fn push(&mut self, bit: u8) {
        self.0.push((bit != 0) as u8);
    }

    pub fn child(&self, bit: u8) -> Word {
        let mut w = self.clone();
        w.push(bit);
        w
    }

    /// The word with its last bit removed, if any.
    pub fn parent(&self) -> Option<(Word, u8)> {
        let (&last, rest) = self.0.split_last()?;
        Some((Word(rest.to_vec()), last))
    }

    /// Suffix after the first `n` bits (empty when `n ≥ len`).
    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0.get(n..).map(|s| s.to_vec()).unwrap_or_default())
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    /// Drops trailing zeros, which are absorbed into a zero tail.
    pub fn trim_trailing_zeros(&self) -> Word {
        let end = self.0.iter().rposition(|&b| b == 1).map_or(0, |i| i + 1);
        Word(self.0[..end].to_vec())
    }

    /// First `n` bits of the infinite sequence `self·000…`.
    pub fn padded_to(&self, n: usize) -> Word {
        Word((0..n).map(|i| self.padded_bit(i)).collect())
    }

    pub fn is_zero_run(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(ParseError::new(format!("invalid bit {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(Word)
    }
}

/// Convenience for literals in code and tests: `w("0110")`, `w("-")`.
pub fn w(s: &str) -> Word {
    s.parse().expect("invalid word literal")
}

pub fn is_prefix(u: &Word, v: &Word) -> bool {
    v.0.starts_with(&u.0)
}

/// The dyadic rectangle `R(first, second) = I(first) × I(second)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rect {
    pub first: Word,
    pub second: Word,
}

/// How two dyadic rectangles sit relative to each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RectRelation {
    Disjoint,
    Equal,
    /// The left argument contains the right one.
    FirstContainsSecond,
    SecondContainsFirst,
    ProperOverlap(Rect),
}

impl Rect {
    pub fn new(first: Word, second: Word) -> Self {
        Rect { first, second }
    }

    pub fn full() -> Self {
        Rect::new(Word::empty(), Word::empty())
    }

    /// Total prefix length; the measure is `2^-depth`.
    pub fn depth(&self) -> usize {
        self.first.len() + self.second.len()
    }

    pub fn contains(&self, other: &Rect) -> bool {
        self.first.is_prefix_of(&other.first) && self.second.is_prefix_of(&other.second)
    }

    /// Intersection, when nonempty: the longer word in each coordinate.
    pub fn intersection(&self, other: &Rect) -> Option<Rect> {
        let first = longer_comparable(&self.first, &other.first)?;
        let second = longer_comparable(&self.second, &other.second)?;
        Some(Rect::new(first.clone(), second.clone()))
    }

    pub fn relation(&self, other: &Rect) -> RectRelation {
        rect_relation(self, other)
    }

    pub fn contains_point(&self, p: &DyadicPoint) -> bool {
        point_in_rect(p, self)
    }

    /// The two halves obtained by bisecting along coordinate `axis` (0 or 1).
    pub fn bisect(&self, axis: usize) -> (Rect, Rect) {
        if axis == 0 {
            (
                Rect::new(self.first.child(0), self.second.clone()),
                Rect::new(self.first.child(1), self.second.clone()),
            )
        } else {
            (
                Rect::new(self.first.clone(), self.second.child(0)),
                Rect::new(self.first.clone(), self.second.child(1)),
            )
        }
    }
}

fn longer_comparable<'a>(u: &'a Word, v: &'a Word) -> Option<&'a Word> {
    if u.is_prefix_of(v) {
        Some(v)
    } else if v.is_prefix_of(u) {
        Some(u)
    } else {
        None
    }
}

pub fn rect_relation(r1: &Rect, r2: &Rect) -> RectRelation {
    let Some(meet) = r1.intersection(r2) else {
        return RectRelation::Disjoint;
    };
    match (meet == *r1, meet == *r2) {
        (true, true) => RectRelation::Equal,
        (true, false) => RectRelation::SecondContainsFirst,
        (false, true) => RectRelation::FirstContainsSecond,
        (false, false) => RectRelation::ProperOverlap(meet),
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({},{})", self.first, self.second)
    }
}

impl fmt::Debug for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rect {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix("R(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| ParseError::new(format!("expected R(a,b), found {t:?}")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| ParseError::new(format!("expected R(a,b), found {t:?}")))?;
        Ok(Rect::new(a.parse()?, b.parse()?))
    }
}

/// Shorthand for rectangle literals: `rect("01", "-")`.
pub fn rect(a: &str, b: &str) -> Rect {
    Rect::new(w(a), w(b))
}

/// An ordered list of words meant to be a complete prefix code over `{0,1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixCode {
    words: Vec<Word>,
}

impl PrefixCode {
    /// Accepts `words` only if they form a complete prefix code.
    pub fn new(words: Vec<Word>) -> Result<Self, CodeError> {
        check_prefix_code(words.iter().map(|w| w.bits()), 2)?;
        Ok(PrefixCode { words })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, i: usize) -> &Word {
        &self.words[i]
    }

    /// Index of the unique code word that prefixes `bits·000…` starting at `offset`.
    pub fn match_padded(&self, bits: &Word, offset: usize) -> Option<usize> {
        self.words.iter().position(|cw| {
            cw.bits()
                .iter()
                .enumerate()
                .all(|(i, &b)| bits.padded_bit(offset + i) == b)
        })
    }

    /// Fixed-length code of all words of length `k`, in lexicographic order.
    pub fn fixed_length(k: usize) -> Self {
        let words = (0..1usize << k)
            .map(|v| Word::from_bits((0..k).rev().map(|i| ((v >> i) & 1) as u8)))
            .collect();
        PrefixCode { words }
    }
}

/// Why a list of words fails to be a complete prefix code.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("code is empty")]
    Empty,
    #[error("word {prefix} is a prefix of word {word}")]
    NotAntichain { prefix: usize, word: usize },
    #[error("code words do not cover the whole space")]
    Incomplete,
    #[error("code word {0} uses a symbol outside the alphabet")]
    BadSymbol(usize),
}

/// Checks the antichain property first, then completeness (Kraft sum exactly 1)
/// over an alphabet of `arity` symbols `0..arity`.
pub(crate) fn check_prefix_code<'a, I>(words: I, arity: usize) -> Result<(), CodeError>
where
    I: IntoIterator<Item = &'a [u8]>,
{
    let words: Vec<&[u8]> = words.into_iter().collect();
    if words.is_empty() {
        return Err(CodeError::Empty);
    }
    for (i, w) in words.iter().enumerate() {
        if w.iter().any(|&s| (s as usize) >= arity) {
            return Err(CodeError::BadSymbol(i));
        }
    }
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            if i != j && v.starts_with(u) {
                return Err(CodeError::NotAntichain { prefix: i, word: j });
            }
        }
    }
    let lengths: Vec<usize> = words.iter().map(|w| w.len()).collect();
    if kraft_sum_is_one(&lengths, arity) {
        Ok(())
    } else {
        Err(CodeError::Incomplete)
    }
}

/// Exact test of `Σ arity^(-len) == 1`, by carrying counts from the deepest level up.
pub(crate) fn kraft_sum_is_one(lengths: &[usize], arity: usize) -> bool {
    let Some(&max) = lengths.iter().max() else {
        return false;
    };
    let mut counts = vec![0usize; max + 1];
    for &l in lengths {
        counts[l] += 1;
    }
    for level in (1..=max).rev() {
        if !counts[level].is_multiple_of(arity) {
            return false;
        }
        counts[level - 1] += counts[level] / arity;
    }
    counts[0] == 1
}

pub fn is_complete_prefix_code(words: &[Word]) -> bool {
    check_prefix_code(words.iter().map(|w| w.bits()), 2).is_ok()
}

/// The `k`-th code of the sequence `(-), (0,1), (0,10,11), (0,10,110,111), …`.
pub fn comb_code(k: usize) -> Result<PrefixCode, CodeError> {
    if k == 0 {
        return Err(CodeError::Empty);
    }
    if k == 1 {
        return Ok(PrefixCode { words: vec![Word::empty()] });
    }
    let mut words: Vec<Word> = (0..k - 1).map(|i| Word::ones(i).child(0)).collect();
    words.push(Word::ones(k - 1));
    Ok(PrefixCode { words })
}

/// A point of `C²` whose coordinates are `first·000…` and `second·000…`.
///
/// Always stored in canonical form, without trailing zeros, so structural
/// equality is point equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicPoint {
    first: Word,
    second: Word,
}

impl DyadicPoint {
    pub fn new(first: Word, second: Word) -> Self {
        DyadicPoint {
            first: first.trim_trailing_zeros(),
            second: second.trim_trailing_zeros(),
        }
    }

    pub fn origin() -> Self {
        DyadicPoint::new(Word::empty(), Word::empty())
    }

    pub fn first(&self) -> &Word {
        &self.first
    }

    pub fn second(&self) -> &Word {
        &self.second
    }
}

/// Shorthand for point literals: `pt("101", "-")`.
pub fn pt(a: &str, b: &str) -> DyadicPoint {
    DyadicPoint::new(w(a), w(b))
}

impl fmt::Display for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

impl fmt::Debug for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DyadicPoint {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| ParseError::new(format!("expected (a, b), found {t:?}")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| ParseError::new(format!("expected (a, b), found {t:?}")))?;
        Ok(DyadicPoint::new(a.parse()?, b.parse()?))
    }
}

pub fn point_in_rect(p: &DyadicPoint, r: &Rect) -> bool {
    r.first.is_prefix_of_padded(&p.first) && r.second.is_prefix_of_padded(&p.second)
}

/// A letter of the alphabet `{00, 01, 10, 11}`: one bit from each coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quad {
    pub first: u8,
    pub second: u8,
}

impl Quad {
    pub const ALL: [Quad; 4] = [
        Quad { first: 0, second: 0 },
        Quad { first: 0, second: 1 },
        Quad { first: 1, second: 0 },
        Quad { first: 1, second: 1 },
    ];

    pub fn new(first: u8, second: u8) -> Self {
        Quad {
            first: (first != 0) as u8,
            second: (second != 0) as u8,
        }
    }

    /// Position in [`Quad::ALL`], i.e. the two bits read as a binary number.
    pub fn index(self) -> usize {
        (self.first as usize) << 1 | self.second as usize
    }

    pub fn from_index(i: usize) -> Self {
        Quad::ALL[i & 3]
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first, self.second)
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Quad {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "00" => Ok(Quad::ALL[0]),
            "01" => Ok(Quad::ALL[1]),
            "10" => Ok(Quad::ALL[2]),
            "11" => Ok(Quad::ALL[3]),
            other => Err(ParseError::new(format!("invalid 4-letter symbol {other:?}"))),
        }
    }
}

pub type QuadWord = Vec<Quad>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("cannot interleave words of lengths {0} and {1}")]
pub struct LengthMismatch(pub usize, pub usize);

pub fn interleave(a: &Word, b: &Word) -> Result<QuadWord, LengthMismatch> {
    if a.len() != b.len() {
        return Err(LengthMismatch(a.len(), b.len()));
    }
    Ok(a.bits()
        .iter()
        .zip(b.bits())
        .map(|(&x, &y)| Quad::new(x, y))
        .collect())
}

/// Coordinate projection, the inverse of [`interleave`].
pub fn deinterleave(q: &[Quad]) -> (Word, Word) {
    (
        Word::from_bits(q.iter().map(|s| s.first)),
        Word::from_bits(q.iter().map(|s| s.second)),
    )
}

pub fn format_quad_word(q: &[Quad]) -> String {
    if q.is_empty() {
        return "-".to_string();
    }
    q.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}
