//! Words and cyclic words on the alphabet `{f, v}`.
//!
//! A word `w = u_{l-1} ... u_1 u_0` is stored in display order, so the
//! letter `u_0` is the *last* (rightmost) character of its string form.
//! Lexicographic order compares the leftmost letter first with `f < v`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    F,
    V,
}

impl Letter {
    pub fn flip(self) -> Letter {
        match self {
            Letter::F => Letter::V,
            Letter::V => Letter::F,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::F => 'f',
            Letter::V => 'v',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'f' => Some(Letter::F),
            'v' => Some(Letter::V),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    /// Builds a word from letters listed left to right.
    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    /// `letter^n`.
    pub fn repeat(letter: Letter, n: usize) -> Word {
        Word(vec![letter; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters in display order (leftmost first).
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// The letter `u_j`, counted from the right end of the word.
    pub fn u(&self, j: usize) -> Letter {
        self.0[self.0.len() - 1 - j]
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Concatenation `self · rhs`.
    pub fn concat(&self, rhs: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&rhs.0);
        Word(letters)
    }

    pub fn pow(&self, e: usize) -> Word {
        Word(self.0.repeat(e))
    }

    /// The `n`-fold action of `1 ∈ Z`, which sends `u_{l-1} ... u_0` to
    /// `u_0 u_{l-1} ... u_1`.
    pub fn rotate(&self, n: i64) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let len = self.len() as i64;
        let shift = n.rem_euclid(len) as usize;
        let mut letters = self.0.clone();
        letters.rotate_right(shift);
        Ok(Word(letters))
    }

    /// All rotations `rotate(w, 0), ..., rotate(w, l-1)`.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).map(move |n| {
            let mut letters = self.0.clone();
            letters.rotate_right(n);
            Word(letters)
        })
    }

    pub fn complement(&self) -> Word {
        Word(self.0.iter().map(|l| l.flip()).collect())
    }

    /// Smallest `t > 0` with `rotate(w, t) = w`; it always divides the length.
    pub fn period(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let n = self.len();
        let period = (1..=n)
            .filter(|t| n % t == 0)
            .find(|&t| (0..n - t).all(|i| self.0[i] == self.0[i + t]))
            .unwrap_or(n);
        Ok(period)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.period()? == self.len())
    }

    /// Writes `w = (w')^e` with `w'` primitive.
    pub fn primitive_root(&self) -> Result<(Word, usize)> {
        let t = self.period()?;
        Ok((Word(self.0[..t].to_vec()), self.len() / t))
    }

    /// Break positions `j` (with `u_{j+1} != u_j`), optionally including the
    /// wrap-around position `l-1` when `u_0 != u_{l-1}`.
    pub fn breaks(&self, wrap: bool) -> Vec<usize> {
        let n = self.len();
        let mut out: Vec<usize> = (0..n.saturating_sub(1))
            .filter(|&j| self.u(j + 1) != self.u(j))
            .collect();
        if wrap && n > 0 && self.u(0) != self.u(n - 1) {
            out.push(n - 1);
        }
        out
    }

    /// Exponential notation `w = v^{n_r} f^{m_r} ... v^{n_1} f^{m_1}` as the
    /// list `[(m_1, n_1), ..., (m_r, n_r)]`.
    ///
    /// The word is first rotated to begin with `v` and end with `f`, using
    /// the smallest rotation offset from `w` itself; a word already in that
    /// form is used as is.
    pub fn exp_notation(&self) -> Result<Vec<(usize, usize)>> {
        self.exp_notation_where(|_| true)
    }

    /// Like [`Word::exp_notation`], restricted to rotations whose exponents
    /// satisfy `accept`.
    pub(crate) fn exp_notation_where<P>(&self, accept: P) -> Result<Vec<(usize, usize)>>
    where
        P: Fn(&[(usize, usize)]) -> bool,
    {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        if self.is_constant() {
            return Err(Error::NotMixed(self.to_string()));
        }
        if !self.is_primitive()? {
            return Err(Error::NotPrimitive(self.to_string()));
        }
        for rot in self.rotations() {
            if rot.first() == Some(Letter::V) && rot.last() == Some(Letter::F) {
                let exps = rot.runs_from_right();
                if accept(&exps) {
                    return Ok(exps);
                }
            }
        }
        Err(Error::NotMixed(self.to_string()))
    }

    /// Pairs `(m_i, n_i)` of an `f`-run followed (to the left) by a `v`-run,
    /// for a word that ends with `f` and starts with `v`.
    fn runs_from_right(&self) -> Vec<(usize, usize)> {
        let mut runs: Vec<(Letter, usize)> = Vec::new();
        for &l in self.0.iter().rev() {
            match runs.last_mut() {
                Some((last, n)) if *last == l => *n += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs.chunks(2).map(|c| (c[0].1, c[1].1)).collect()
    }

    /// Index of the lexicographically least left rotation.
    fn least_rotation_start(&self) -> usize {
        let s = &self.0;
        let n = s.len();
        let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
        while i < n && j < n && k < n {
            let a = s[(i + k) % n];
            let b = s[(j + k) % n];
            if a == b {
                k += 1;
                continue;
            }
            if a > b {
                i += k + 1;
            } else {
                j += k + 1;
            }
            if i == j {
                j += 1;
            }
            k = 0;
        }
        i.min(j)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::EmptyWord);
        }
        s.chars()
            .map(|c| {
                Letter::from_char(c).ok_or_else(|| Error::Parse(format!("bad letter {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for WordMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WordMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<WordMultiset, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of breaks (no wrap-around) of the `i`-th `f`-initial word in
/// lexicographic order, i.e. of the binary expansion of `i` with `f = 0`.
pub fn break_count_k(i: u64) -> u32 {
    if i == 0 {
        return 0;
    }
    let j = 63 - i.leading_zeros();
    // 2^j <= i < 2^{j+1}
    let mirror = ((1u128 << (j + 1)) - 1 - i as u128) as u64;
    break_count_k(mirror) + 1
}

/// A cyclic word, stored by its lexicographically least rotation.
///
/// Ordering is by length first, then by the representative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    rep: Word,
}

impl CyclicWord {
    pub fn new(w: &Word) -> Result<CyclicWord> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        let start = w.least_rotation_start();
        let mut letters = w.0.clone();
        letters.rotate_left(start);
        Ok(CyclicWord { rep: Word(letters) })
    }

    pub fn representative(&self) -> &Word {
        &self.rep
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_primitive(&self) -> bool {
        self.rep.is_primitive().unwrap_or(false)
    }

    pub fn complement(&self) -> CyclicWord {
        CyclicWord::new(&self.rep.complement()).expect("nonempty")
    }

    pub fn is_self_dual(&self) -> bool {
        self.complement() == *self
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), &self.rep).cmp(&(other.len(), &other.rep))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord({})", self.rep)
    }
}

impl FromStr for CyclicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<CyclicWord> {
        CyclicWord::new(&s.parse()?)
    }
}

/// A multiset of cyclic words with positive multiplicities.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct WordMultiset {
    entries: BTreeMap<CyclicWord, usize>,
}

impl WordMultiset {
    pub fn new() -> WordMultiset {
        WordMultiset::default()
    }

    /// Adds `mult` copies; zero multiplicities are ignored.
    pub fn insert(&mut self, w: CyclicWord, mult: usize) {
        if mult > 0 {
            *self.entries.entry(w).or_insert(0) += mult;
        }
    }

    pub fn insert_word(&mut self, w: &Word, mult: usize) -> Result<()> {
        self.insert(CyclicWord::new(w)?, mult);
        Ok(())
    }

    pub fn from_pairs<I: IntoIterator<Item = (CyclicWord, usize)>>(pairs: I) -> WordMultiset {
        let mut m = WordMultiset::new();
        for (w, k) in pairs {
            m.insert(w, k);
        }
        m
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CyclicWord, usize)> {
        self.entries.iter().map(|(w, &k)| (w, k))
    }

    pub fn multiplicity(&self, w: &CyclicWord) -> usize {
        self.entries.get(w).copied().unwrap_or(0)
    }

    /// Number of distinct cyclic words.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum of length * multiplicity`, the dimension of the Kraft module.
    pub fn total_dim(&self) -> usize {
        self.iter().map(|(w, k)| w.len() * k).sum()
    }

    pub fn is_primitive(&self) -> bool {
        self.entries.keys().all(CyclicWord::is_primitive)
    }

    /// Replaces each `(w')^e` by `w'` with multiplicity multiplied by `e`.
    pub fn primitive_retraction(&self) -> WordMultiset {
        let mut out = WordMultiset::new();
        for (w, k) in self.iter() {
            let (root, e) = w.representative().primitive_root().expect("nonempty");
            out.insert(CyclicWord::new(&root).expect("nonempty"), k * e);
        }
        out
    }

    pub fn complement(&self) -> WordMultiset {
        WordMultiset::from_pairs(self.iter().map(|(w, k)| (w.complement(), k)))
    }

    /// Fixed under complement: self-dual words plus dual pairs.
    pub fn is_self_dual(&self) -> bool {
        self.primitive_retraction().complement() == self.primitive_retraction()
    }

    pub fn union(&self, other: &WordMultiset) -> WordMultiset {
        let mut out = self.clone();
        for (w, k) in other.iter() {
            out.insert(w.clone(), k);
        }
        out
    }

    /// The first error raised if some entry is not primitive.
    pub fn require_primitive(&self) -> Result<()> {
        match self.entries.keys().find(|w| !w.is_primitive()) {
            Some(w) => Err(Error::NotPrimitiveMultiset(w.to_string())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for WordMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (w, k)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if k == 1 {
                write!(f, "{w}")?;
            } else {
                write!(f, "{w}^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WordMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for WordMultiset {
    type Err = Error;

    /// Grammar: comma-separated `word` or `word^k` terms, e.g. `fv^2,ffvv`.
    /// A parenthesised base `(fv)^2` and surrounding braces are accepted.
    fn from_str(s: &str) -> Result<WordMultiset> {
        let body = s.trim();
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(body);
        if body.trim().is_empty() {
            return Err(Error::Parse("empty multiset".into()));
        }
        let mut m = WordMultiset::new();
        for term in body.split(',') {
            let term = term.trim();
            let (base, mult) = match term.split_once('^') {
                Some((b, k)) => {
                    let k: usize = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad multiplicity in {term:?}")))?;
                    if k == 0 {
                        return Err(Error::Parse(format!("zero multiplicity in {term:?}")));
                    }
                    (b.trim(), k)
                }
                None => (term, 1),
            };
            let base = base
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .unwrap_or(base);
            let w: Word = base
                .parse()
                .map_err(|e| Error::Parse(format!("term {term:?}: {e}")))?;
            m.insert_word(&w, mult)?;
        }
        Ok(m)
    }
}

/// All primitive cyclic words of length `len`, in increasing order.
pub fn primitive_cyclic_words(len: usize) -> Vec<CyclicWord> {
    assert!(len < 26, "enumeration is exponential in the length");
    let mut out = Vec::new();
    for bits in 0u32..(1 << len) {
        let w = Word(
            (0..len)
                .map(|i| if bits >> (len - 1 - i) & 1 == 1 { Letter::V } else { Letter::F })
                .collect(),
        );
        let c = CyclicWord::new(&w).unwrap();
        if c.rep == w && w.is_primitive().unwrap() {
            out.push(c);
        }
    }
    out
}

/// Every multiset of primitive cyclic words with total dimension exactly `dim`.
pub fn multisets_of_dim(dim: usize) -> Vec<WordMultiset> {
    let pool: Vec<CyclicWord> = (1..=dim).flat_map(primitive_cyclic_words).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_multisets(&pool, 0, dim, &mut current, &mut out);
    out
}

fn fill_multisets(
    pool: &[CyclicWord],
    from: usize,
    remaining: usize,
    current: &mut Vec<(CyclicWord, usize)>,
    out: &mut Vec<WordMultiset>,
) {
    if remaining == 0 {
        out.push(WordMultiset::from_pairs(current.iter().cloned()));
        return;
    }
    for idx in from..pool.len() {
        let w = &pool[idx];
        let len = w.len();
        let mut k = 1;
        while k * len <= remaining {
            current.push((w.clone(), k));
            fill_multisets(pool, idx + 1, remaining - k * len, current, out);
            current.pop();
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn rotate_examples() {
        assert_eq!(w("fffvvv").rotate(1).unwrap(), w("vfffvv"));
        assert_eq!(w("fv").rotate(2).unwrap(), w("fv"));
        assert_eq!(w("f").rotate(5).unwrap(), w("f"));
        assert_eq!(w("fffvvv").rotate(-1).unwrap(), w("ffvvvf"));
        assert_eq!(Word::default().rotate(1), Err(Error::EmptyWord));
    }

    #[test]
    fn primitivity_examples() {
        assert!(!w("fvfv").is_primitive().unwrap());
        assert!(w("fffvvv").is_primitive().unwrap());
        assert!(w("f").is_primitive().unwrap());
        assert!(!w("ff").is_primitive().unwrap());
        assert_eq!(w("fvfvfv").primitive_root().unwrap(), (w("fv"), 3));
        assert_eq!(Word::default().is_primitive(), Err(Error::EmptyWord));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(w("ffvv").complement(), w("vvff"));
        assert_eq!(w("fv").complement(), w("vf"));
        assert_eq!(Word::repeat(Letter::F, 4).complement(), Word::repeat(Letter::V, 4));
    }

    #[test]
    fn break_count_table() {
        let table: Vec<u32> = (0..16).map(break_count_k).collect();
        assert_eq!(table, vec![0, 1, 2, 1, 2, 3, 2, 1, 2, 3, 4, 3, 2, 3, 2, 1]);
    }

    #[test]
    fn break_count_matches_binary_scan() {
        // the word for i has f = 0, v = 1 and leading letters most significant
        for i in 0u64..(1 << 15) {
            let direct = (i ^ (i >> 1)).count_ones();
            assert_eq!(break_count_k(i), direct, "i = {i}");
        }
    }

    #[test]
    fn breaks_examples() {
        assert_eq!(w("fv").breaks(true), vec![0, 1]);
        assert_eq!(w("fv").breaks(false), vec![0]);
        assert!(w("ffff").breaks(true).is_empty());
        assert_eq!(w("ffvf").breaks(false), vec![0, 1]);
    }

    #[test]
    fn wrap_break_counts_are_binomial() {
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for len in 1..=10usize {
            let mut counts = vec![0usize; len + 1];
            for bits in 0u32..(1 << len) {
                let word = Word(
                    (0..len)
                        .map(|i| if bits >> i & 1 == 1 { Letter::V } else { Letter::F })
                        .collect(),
                );
                counts[word.breaks(true).len()] += 1;
            }
            for (k, &c) in counts.iter().enumerate() {
                let expect = if k % 2 == 0 { 2 * binom(len, k) } else { 0 };
                assert_eq!(c, expect, "len {len}, k {k}");
            }
        }
    }

    #[test]
    fn exp_notation_examples() {
        assert_eq!(w("ffvv").exp_notation().unwrap(), vec![(2, 2)]);
        assert_eq!(
            w("vvffvvvfvffff").exp_notation().unwrap(),
            vec![(4, 1), (1, 3), (2, 2)]
        );
        assert_eq!(w("fv").exp_notation().unwrap(), vec![(1, 1)]);
        assert!(matches!(w("fff").exp_notation(), Err(Error::NotMixed(_))));
        assert!(matches!(w("v").exp_notation(), Err(Error::NotMixed(_))));
        assert!(matches!(w("fvfv").exp_notation(), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn cyclic_word_representatives() {
        assert_eq!(CyclicWord::new(&w("vfffvv")).unwrap().to_string(), "fffvvv");
        assert_eq!(CyclicWord::new(&w("vf")).unwrap(), CyclicWord::new(&w("fv")).unwrap());
        assert!(CyclicWord::new(&w("vvvfff")).unwrap().is_self_dual());
        assert!(!CyclicWord::new(&w("ffv")).unwrap().is_self_dual());
    }

    #[test]
    fn multiset_parsing_and_display() {
        let m: WordMultiset = "fv^2,ffvv".parse().unwrap();
        assert_eq!(m.to_string(), "fv^2,ffvv");
        assert_eq!(m.total_dim(), 8);
        let n: WordMultiset = "{(fv)^2, vvff}".parse().unwrap();
        assert_eq!(m, n);
        let merged: WordMultiset = "fv,vf".parse().unwrap();
        assert_eq!(merged.to_string(), "fv^2");
        assert!("fv,fx".parse::<WordMultiset>().is_err());
        assert!("fv^0".parse::<WordMultiset>().is_err());
        assert!("".parse::<WordMultiset>().is_err());
        assert!("fv,,f".parse::<WordMultiset>().is_err());
    }

    #[test]
    fn retraction_and_self_duality() {
        let m: WordMultiset = "fv,fvfv".parse().unwrap();
        assert!(!m.is_primitive());
        assert_eq!(m.primitive_retraction().to_string(), "fv^3");
        assert!("fv,fffvvv".parse::<WordMultiset>().unwrap().is_self_dual());
        assert!("ffvv".parse::<WordMultiset>().unwrap().is_self_dual());
        assert!(!"ffv".parse::<WordMultiset>().unwrap().is_self_dual());
        assert!("ffv,fvv".parse::<WordMultiset>().unwrap().is_self_dual());
    }

    #[test]
    fn primitive_necklace_counts() {
        // binary Lyndon word counts
        let counts: Vec<usize> = (1..=10).map(|n| primitive_cyclic_words(n).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9, 18, 30, 56, 99]);
    }

    #[test]
    fn multisets_of_each_dim_number_two_to_the_dim() {
        for dim in 1..=10 {
            assert_eq!(multisets_of_dim(dim).len(), 1 << dim, "dim {dim}");
        }
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop_oneof![Just(Letter::F), Just(Letter::V)], 1..max)
            .prop_map(Word::from_letters)
    }

    proptest! {
        #[test]
        fn rotation_preserves_length_and_orbits(word in arb_word(24), n in -50i64..50) {
            let r = word.rotate(n).unwrap();
            prop_assert_eq!(r.len(), word.len());
            prop_assert_eq!(word.rotate(word.len() as i64).unwrap(), word.clone());
            let orbit: std::collections::BTreeSet<Word> = word.rotations().collect();
            prop_assert_eq!(orbit.len(), word.period().unwrap());
            prop_assert_eq!(word.len() % orbit.len(), 0);
        }

        #[test]
        fn complement_commutes_with_rotation(word in arb_word(24), n in -50i64..50) {
            prop_assert_eq!(
                word.complement().rotate(n).unwrap(),
                word.rotate(n).unwrap().complement()
            );
            prop_assert_eq!(word.complement().complement(), word);
        }

        #[test]
        fn representative_is_least_rotation(word in arb_word(24)) {
            let c = CyclicWord::new(&word).unwrap();
            let least = word.rotations().min().unwrap();
            prop_assert_eq!(c.representative(), &least);
            for r in word.rotations() {
                prop_assert_eq!(CyclicWord::new(&r).unwrap(), c.clone());
            }
        }

        #[test]
        fn exp_notation_reassembles(word in arb_word(20)) {
            if let Ok(exps) = word.exp_notation() {
                prop_assert!(exps.iter().all(|&(m, n)| m >= 1 && n >= 1));
                prop_assert_eq!(exps.iter().map(|(m, n)| m + n).sum::<usize>(), word.len());
                let mut letters = Vec::new();
                for &(m, n) in exps.iter().rev() {
                    letters.extend(std::iter::repeat(Letter::V).take(n));
                    letters.extend(std::iter::repeat(Letter::F).take(m));
                }
                let rebuilt = Word::from_letters(letters);
                prop_assert_eq!(CyclicWord::new(&rebuilt).unwrap(), CyclicWord::new(&word).unwrap());
            }
        }
    }
}
