//! Numerical invariants: p-rank, a-number, s11-multiplicity, u11-number,
//! Hom-dimension to `M(fv)` and the Selmer dimension.
//!
//! Three routes are provided: directly on a word multiset, from a table of
//! pattern multiplicities, and (for p-rank and a-number) from an elementary
//! sequence.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use serde::{Deserialize, Serialize};

use crate::eo::ElementarySequence;
use crate::error::{Error, Result};
use crate::scalar::Count;
use crate::words::{CyclicWord, Letter, Word, WordMultiset};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantBundle<C = usize> {
    pub g: C,
    pub p_rank: C,
    pub a: C,
    pub s11: C,
    pub u11: C,
    /// `a + u11 - s11`
    pub sel_dim: C,
}

impl<C: Count> InvariantBundle<C> {
    pub fn new(g: C, p_rank: C, a: C, s11: C, u11: C) -> Result<Self> {
        let sel_dim = a.add_exact(&u11)?.sub_exact(&s11)?;
        Ok(InvariantBundle { g, p_rank, a, s11, u11, sel_dim })
    }

    /// The genus 0 bundle.
    pub fn trivial() -> Self {
        InvariantBundle { g: C::zero(), p_rank: C::zero(), a: C::zero(), s11: C::zero(), u11: C::zero(), sel_dim: C::zero() }
    }

    /// `f <= g`, `a <= g` and `s11 <= u11 <= a`.
    pub fn is_consistent(&self) -> bool {
        self.p_rank <= self.g && self.s11 <= self.u11 && self.u11 <= self.a && self.a <= self.g
    }

    pub fn is_ordinary(&self) -> bool {
        self.p_rank == self.g
    }

    pub fn is_superspecial(&self) -> bool {
        self.a == self.g
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(InvariantBundle {
            g: self.g.add_exact(&other.g)?,
            p_rank: self.p_rank.add_exact(&other.p_rank)?,
            a: self.a.add_exact(&other.a)?,
            s11: self.s11.add_exact(&other.s11)?,
            u11: self.u11.add_exact(&other.u11)?,
            sel_dim: self.sel_dim.add_exact(&other.sel_dim)?,
        })
    }
}

fn fv() -> CyclicWord {
    "fv".parse().expect("literal")
}

/// Multiplicity of the word `f`.
pub fn p_rank(m: &WordMultiset) -> Result<usize> {
    m.require_primitive()?;
    Ok(m.multiplicity(&"f".parse().expect("literal")))
}

/// Rotations of `w` that start with `v` and end with `f`.
pub fn a_number_word(w: &Word) -> usize {
    let l = w.letters();
    let n = l.len();
    (0..n).filter(|&i| l[i] == Letter::F && l[(i + 1) % n] == Letter::V).count()
}

pub fn a_number(m: &WordMultiset) -> Result<usize> {
    m.require_primitive()?;
    Ok(m.iter().map(|(w, k)| a_number_word(w.representative()) * k).sum())
}

/// Multiplicity of the word `fv`.
pub fn s11(m: &WordMultiset) -> Result<usize> {
    m.require_primitive()?;
    Ok(m.multiplicity(&fv()))
}

/// The count `u` for one primitive cyclic word: 0 for `f` and `v`, 1 for
/// `fv`, otherwise the block count on a rotation with `m_1 > 1` or
/// `n_r > 1`.
pub fn u_word(w: &Word) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !w.is_primitive()? {
        return Err(Error::NotPrimitive(w.to_string()));
    }
    if w.len() == 1 {
        return Ok(0);
    }
    if w.len() == 2 {
        return Ok(1);
    }
    let e = w.exp_notation_where(|e| e[0].0 > 1 || e[e.len() - 1].1 > 1)?;
    let mut u = e.iter().filter(|&&(m, n)| m > 1 && n > 1).count();
    // v^{>1} (fv)^k f^{>1} with k >= 1
    for j in 0..e.len() {
        if e[j].1 <= 1 || e[j].0 != 1 {
            continue;
        }
        let mut i = j;
        while i > 0 {
            i -= 1;
            let (m, n) = e[i];
            if n != 1 {
                break;
            }
            if m > 1 {
                u += 1;
                break;
            }
        }
    }
    Ok(u)
}

pub fn u11(m: &WordMultiset) -> Result<usize> {
    m.require_primitive()?;
    m.iter().map(|(w, k)| Ok(u_word(w.representative())? * k)).sum()
}

/// Dimension over `k` of `Hom(M(w), M(fv))`: `u + a(w)`, except that `fv`
/// gives `F_{p^2} x k` and contributes 1. Words `f` and `v` give 0.
pub fn hom_dim_to_m11(w: &Word) -> Result<usize> {
    if w.len() == 1 {
        return Ok(0);
    }
    if w.len() == 2 && !w.is_constant() {
        return Ok(1);
    }
    Ok(u_word(w)? + a_number_word(w))
}

/// Selmer dimension as the sum of Hom-dimensions.
pub fn sel_dim(m: &WordMultiset) -> Result<usize> {
    m.require_primitive()?;
    m.iter().map(|(w, k)| Ok(hom_dim_to_m11(w.representative())? * k)).sum()
}

/// All invariants of a primitive multiset; `g` is half its dimension.
pub fn invariants(m: &WordMultiset) -> Result<InvariantBundle> {
    InvariantBundle::new(m.total_dim() / 2, p_rank(m)?, a_number(m)?, s11(m)?, u11(m)?)
}

/// `(p-rank, a-number)` of an elementary sequence.
pub fn invariants_from_es(es: &ElementarySequence) -> (usize, usize) {
    (es.p_rank(), es.a_number())
}

/// Multiplicities `μ` of length-`l` words.
pub trait Multiplicities {
    type Count: Count;

    fn ell(&self) -> usize;

    /// `Σ μ`, which is `2g`.
    fn total(&self) -> Result<Self::Count>;

    fn exact(&self, w: &Word) -> Result<Self::Count>;

    /// `μ(*t)`; zero when `t` is longer than `l`.
    fn suffix(&self, t: &Word) -> Result<Self::Count>;
}

/// A finite table `w ↦ μ(w)` on words of a fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternTable<C = usize> {
    ell: usize,
    counts: BTreeMap<Word, C>,
}

impl<C: Count> PatternTable<C> {
    pub fn new(ell: usize) -> Self {
        PatternTable { ell, counts: BTreeMap::new() }
    }

    pub fn add(&mut self, w: Word, mult: C) -> Result<()> {
        if w.len() != self.ell {
            return Err(Error::InconsistentMultiplicities(format!("{w} does not have length {}", self.ell)));
        }
        if mult.is_zero() {
            return Ok(());
        }
        let slot = self.counts.entry(w).or_insert_with(C::zero);
        *slot = slot.add_exact(&mult)?;
        Ok(())
    }

    pub fn get(&self, w: &Word) -> C {
        self.counts.get(w).cloned().unwrap_or_else(C::zero)
    }

    /// Words with positive multiplicity, in lexicographic order.
    pub fn live(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.counts.iter()
    }

    /// `μ(x*y)`: words starting with `first` and ending with `last`.
    pub fn first_last(&self, first: Letter, last: Letter) -> C {
        self.counts
            .iter()
            .filter(|(w, _)| w.first() == Some(first) && w.last() == Some(last))
            .fold(C::zero(), |acc, (_, c)| acc + c.clone())
    }

    /// `Σ_{f-starting} μ = Σ_{v-starting} μ` and `μ(w) = μ(w^c)`.
    pub fn is_self_dual(&self) -> bool {
        let starting = |l| self.counts.iter().filter(|(w, _)| w.first() == Some(l)).fold(C::zero(), |acc, (_, c)| acc + c.clone());
        starting(Letter::F) == starting(Letter::V) && self.counts.iter().all(|(w, c)| self.get(&w.complement()) == *c)
    }
}

impl PatternTable<usize> {
    /// Every rotation of every word, powered to the common length.
    pub fn from_multiset(m: &WordMultiset) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::EmptyMultiset);
        }
        let ell = m.iter().fold(1usize, |acc, (w, _)| num_integer::lcm(acc, w.len()));
        let mut table = PatternTable::new(ell);
        for (w, k) in m.iter() {
            for rot in w.representative().rotations() {
                table.add(rot.pow(ell / w.len()), k)?;
            }
        }
        Ok(table)
    }
}

impl<C: Count> Multiplicities for PatternTable<C> {
    type Count = C;

    fn ell(&self) -> usize {
        self.ell
    }

    fn total(&self) -> Result<C> {
        self.counts.values().try_fold(C::zero(), |acc, c| acc.add_exact(c))
    }

    fn exact(&self, w: &Word) -> Result<C> {
        Ok(self.get(w))
    }

    fn suffix(&self, t: &Word) -> Result<C> {
        if t.len() > self.ell {
            return Ok(C::zero());
        }
        self.counts.iter().filter(|(w, _)| w.ends_with(t)).try_fold(C::zero(), |acc, (_, c)| acc.add_exact(c))
    }
}

/// `v^2 (fv)^j f^2`
pub fn u11_suffix(j: usize) -> Word {
    let mut s = String::from("vv");
    for _ in 0..j {
        s.push_str("fv");
    }
    s.push_str("ff");
    s.parse().expect("literal")
}

/// Invariants from a multiplicity table of length `l`:
/// `f = μ(f^l)`, `a = μ(*fv) = μ(*vf)`, `s = μ((fv)^{l/2})` for even `l`,
/// `u = s + Σ_{j=0}^{⌊(l-4)/2⌋} μ(*v²(fv)^j f²)`.
pub fn invariants_from_multiplicities<M: Multiplicities>(mu: &M) -> Result<InvariantBundle<M::Count>> {
    let ell = mu.ell();
    let two = M::Count::one() + M::Count::one();
    let g = mu.total()?.div_floor(&two);
    let f = mu.exact(&Word::repeat(Letter::F, ell))?;
    let a = mu.suffix(&"fv".parse()?)?;
    let a_alt = mu.suffix(&"vf".parse()?)?;
    if a != a_alt {
        return Err(Error::InconsistentMultiplicities(format!("μ(*fv) = {a} but μ(*vf) = {a_alt}")));
    }
    let s = if ell % 2 == 0 { mu.exact(&"fv".parse::<Word>()?.pow(ell / 2))? } else { M::Count::zero() };
    let mut u = s.clone();
    if ell >= 4 {
        for j in 0..=(ell - 4) / 2 {
            u = u.add_exact(&mu.suffix(&u11_suffix(j))?)?;
        }
    }
    InvariantBundle::new(g, f, a, s, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eo::es_from_multiset;
    use crate::words::multisets_of_dim;
    use proptest::prelude::*;

    fn ms(s: &str) -> WordMultiset {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Cyclic occurrences of `v^{>=2} (fv)^e f^{>=2}`, anchored at the last
    /// two letters of a `v`-run.
    fn u_by_scanning(word: &Word) -> usize {
        let l = word.letters();
        let n = l.len();
        let at = |i: usize| l[i % n];
        let mut count = 0;
        for t in 0..n {
            if at(t) != Letter::V || at(t + 1) != Letter::V || at(t + 2) != Letter::F {
                continue;
            }
            let mut k = t + 2;
            let mut steps = 0;
            while at(k) == Letter::F && at(k + 1) == Letter::V && steps < n {
                k += 2;
                steps += 1;
            }
            if at(k) == Letter::F && at(k + 1) == Letter::F {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn word_examples() {
        assert_eq!(p_rank(&ms("f,v,fv")).unwrap(), 1);
        assert_eq!(p_rank(&ms("fv^3")).unwrap(), 0);
        assert_eq!(p_rank(&ms("f^2,v^2")).unwrap(), 2);
        assert_eq!(a_number(&ms("ffvv")).unwrap(), 1);
        assert_eq!(a_number(&ms("ffvfvvfv")).unwrap(), 3);
        assert_eq!(a_number(&ms("f")).unwrap(), 0);
        assert_eq!(a_number(&ms("v")).unwrap(), 0);
        assert_eq!(u_word(&w("vvffvvvfvffff")).unwrap(), 2);
        let m = ms("fv,ffvv");
        assert_eq!((s11(&m).unwrap(), u11(&m).unwrap()), (1, 2));
        let m = ms("fffv,fvvv");
        assert_eq!((s11(&m).unwrap(), u11(&m).unwrap()), (0, 0));
        assert!(matches!(u11(&ms("fvfv")), Err(Error::NotPrimitiveMultiset(_))));
        assert!(p_rank(&ms("ff")).is_err());
    }

    #[test]
    fn hom_dimensions() {
        assert_eq!(hom_dim_to_m11(&w("f")).unwrap(), 0);
        assert_eq!(hom_dim_to_m11(&w("v")).unwrap(), 0);
        assert_eq!(hom_dim_to_m11(&w("fv")).unwrap(), 1);
        assert_eq!(hom_dim_to_m11(&w("ffvv")).unwrap(), 2);
        assert_eq!(hom_dim_to_m11(&w("vvffvvvfvffff")).unwrap(), 2 + 3);
    }

    #[test]
    fn u_matches_scanning_count() {
        for len in 3..=14 {
            for cw in crate::words::primitive_cyclic_words(len) {
                let rep = cw.representative();
                if rep.is_constant() {
                    continue;
                }
                assert_eq!(u_word(rep).unwrap(), u_by_scanning(rep), "{rep}");
                for rot in rep.rotations() {
                    assert_eq!(u_word(&rot).unwrap(), u_word(rep).unwrap());
                }
            }
        }
    }

    #[test]
    fn three_routes_agree_on_small_multisets() {
        for dim in 1..=10 {
            for m in multisets_of_dim(dim) {
                let direct = invariants(&m).unwrap();
                let table = PatternTable::from_multiset(&m).unwrap();
                let from_table = invariants_from_multiplicities(&table).unwrap();
                assert_eq!((direct.p_rank, direct.a, direct.s11, direct.u11), (from_table.p_rank, from_table.a, from_table.s11, from_table.u11), "{m}");
                assert_eq!(table.first_last(Letter::F, Letter::V), direct.a);
                assert_eq!(sel_dim(&m).unwrap(), direct.sel_dim);
                assert!(direct.s11 <= direct.u11 && direct.u11 <= direct.a);
                if m.is_self_dual() {
                    assert!(table.is_self_dual());
                    assert_eq!(from_table.g, direct.g);
                    let es = es_from_multiset(&m).unwrap();
                    assert_eq!(invariants_from_es(&es), (direct.p_rank, direct.a), "{m}");
                    assert!(direct.is_consistent());
                }
            }
        }
    }

    #[test]
    fn es_route_examples() {
        let es = |v: &[usize]| ElementarySequence::new(v.to_vec()).unwrap();
        assert_eq!(invariants_from_es(&es(&[0, 1, 1, 2])), (0, 2));
        assert_eq!(invariants_from_es(&es(&[1, 2])), (2, 0));
        assert_eq!(invariants_from_es(&es(&[0, 0, 0])), (0, 3));
    }

    #[test]
    fn table_rejects_bad_input() {
        let mut t: PatternTable = PatternTable::new(2);
        assert!(t.add(w("fvf"), 1).is_err());
        t.add(w("fv"), 2).unwrap();
        t.add(w("vf"), 1).unwrap();
        assert!(matches!(invariants_from_multiplicities(&t), Err(Error::InconsistentMultiplicities(_))));
        assert_eq!(t.suffix(&w("ffv")).unwrap(), 0);
    }

    #[test]
    fn fermat_2_9_table() {
        let table = PatternTable::from_multiset(&ms("fv,fffvvv")).unwrap();
        let got = invariants_from_multiplicities(&table).unwrap();
        assert_eq!((got.g, got.p_rank, got.a, got.s11, got.u11, got.sel_dim), (4, 0, 2, 1, 2, 3));
    }

    #[test]
    fn json() {
        let b = invariants(&ms("fv,ffvv")).unwrap();
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"g":3,"p_rank":0,"a":2,"s11":1,"u11":2,"sel_dim":3}"#);
    }

    fn arb_multiset() -> impl Strategy<Value = WordMultiset> {
        proptest::collection::vec((proptest::collection::vec(any::<bool>(), 1..9), 1usize..4), 1..5).prop_filter_map("primitive", |entries| {
            let mut m = WordMultiset::new();
            for (bits, k) in entries {
                let word = Word::from_letters(bits.into_iter().map(|b| if b { Letter::V } else { Letter::F }).collect());
                if !word.is_primitive().ok()? {
                    return None;
                }
                m.insert_word(&word, k).ok()?;
            }
            Some(m)
        })
    }

    proptest! {
        #[test]
        fn additive_over_union(a in arb_multiset(), b in arb_multiset()) {
            let ia = invariants(&a).unwrap();
            let ib = invariants(&b).unwrap();
            let iu = invariants(&a.union(&b)).unwrap();
            prop_assert_eq!(iu.p_rank, ia.p_rank + ib.p_rank);
            prop_assert_eq!(iu.a, ia.a + ib.a);
            prop_assert_eq!(iu.s11, ia.s11 + ib.s11);
            prop_assert_eq!(iu.u11, ia.u11 + ib.u11);
            prop_assert!(iu.s11 <= iu.u11);
        }
    }
}
