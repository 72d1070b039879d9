//! Fermat quotient curves `y^d = x(1-x)` and Fermat curves `X^d + Y^d = 1`:
//! their partitioned permutations, patterns and Ekedahl–Oort types.

use std::collections::HashMap;

use serde::Serialize;

use crate::eo::{Direction, RunLength};
use crate::error::{Error, Result};
use crate::invariants::PatternTable;
use crate::permdata::PartitionedPermutation;
use crate::words::{CyclicWord, Letter, Word, WordMultiset};

pub mod closed;
pub mod encompassing;
pub mod hermitian;

pub use closed::{a_number_bound, a_number_closed, a_number_special, is_ordinary, is_superspecial, p2_eo};
pub use encompassing::{encompassing_eo, encompassing_invariants, EncompassingMultiplicities};
pub use hermitian::{hermitian_eo, hermitian_invariants, HermitianMultiplicities};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `C_d : y^d = x(1-x)`
    Quotient,
    /// `F_d : X^d + Y^d = 1`
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FermatSpec {
    pub p: u64,
    pub d: u64,
    /// Multiplicative order of `p` mod `d`.
    pub ell: usize,
    pub variant: Variant,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Multiplicative order of `p` modulo `d` (1 when `d <= 2`).
pub fn order_mod(p: u64, d: u64) -> usize {
    if d <= 1 {
        return 1;
    }
    let (mut x, mut ell) = (p % d, 1);
    while x != 1 {
        x = ((x as u128 * p as u128) % d as u128) as u64;
        ell += 1;
    }
    ell
}

pub fn build_spec(p: u64, d: u64, variant: Variant) -> Result<FermatSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d == 0 || d % p == 0 {
        return Err(Error::NotCoprime { p, d });
    }
    Ok(FermatSpec { p, d, ell: order_mod(p, d), variant })
}

impl FermatSpec {
    /// `⌊(d-1)/2⌋` for the quotient, `(d-1)(d-2)/2` for the Fermat curve.
    pub fn genus(&self) -> u64 {
        match self.variant {
            Variant::Quotient => (self.d - 1) / 2,
            Variant::Full => (self.d - 1) * (self.d.saturating_sub(2)) / 2,
        }
    }

    /// `a` with `0 < a < d` and `2a != d`, in increasing order.
    pub fn quotient_elements(&self) -> impl Iterator<Item = u64> + '_ {
        (1..self.d).filter(move |a| 2 * a != self.d)
    }

    /// Labels of the elements: `a` for the quotient, `a*d + b` for `(a, b)`.
    pub fn elements(&self) -> Vec<u64> {
        match self.variant {
            Variant::Quotient => self.quotient_elements().collect(),
            Variant::Full => {
                let d = self.d;
                (1..d).flat_map(|a| (1..d).filter(move |&b| a + b != d).map(move |b| a * d + b)).collect()
            }
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        let d = self.d;
        match self.variant {
            Variant::Quotient => x > 0 && x < d && 2 * x != d,
            Variant::Full => {
                let (a, b) = (x / d, x % d);
                a > 0 && a < d && b > 0 && a + b != d
            }
        }
    }

    /// `f` on `S_f = {2a > d}` (resp. `T_f = {a + b > d}`).
    pub fn tag(&self, x: u64) -> Result<Letter> {
        if !self.contains(x) {
            return Err(Error::UnknownElement(x));
        }
        let d = self.d;
        let big = match self.variant {
            Variant::Quotient => 2 * x > d,
            Variant::Full => x / d + x % d > d,
        };
        Ok(if big { Letter::F } else { Letter::V })
    }

    /// Multiplication by `p`.
    pub fn step(&self, x: u64) -> u64 {
        let (p, d) = (self.p as u128, self.d as u128);
        match self.variant {
            Variant::Quotient => ((x as u128 * p) % d) as u64,
            Variant::Full => {
                let (a, b) = (x as u128 / d, x as u128 % d);
                ((a * p % d) * d + b * p % d) as u64
            }
        }
    }

    pub fn permutation_data(&self) -> Result<PartitionedPermutation> {
        let labels = self.elements();
        let index: HashMap<u64, usize> = labels.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let tags = labels.iter().map(|&x| self.tag(x)).collect::<Result<Vec<_>>>()?;
        let perm = labels.iter().map(|&x| index[&self.step(x)]).collect();
        PartitionedPermutation::with_labels(labels, tags, perm)
    }

    /// Orbits of multiplication by `p`, each listed as `x, px, p^2 x, ...`.
    /// Streams over the elements with a visited bitset.
    pub fn orbits(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let size = match self.variant {
            Variant::Quotient => self.d as usize,
            Variant::Full => (self.d * self.d) as usize,
        };
        let mut seen = vec![false; size];
        let elements: Box<dyn Iterator<Item = u64> + '_> = match self.variant {
            Variant::Quotient => Box::new(self.quotient_elements()),
            Variant::Full => {
                let d = self.d;
                Box::new((1..d).flat_map(move |a| (1..d).filter(move |&b| a + b != d).map(move |b| a * d + b)))
            }
        };
        elements.filter_map(move |x| {
            if seen[x as usize] {
                return None;
            }
            let mut orbit = Vec::new();
            let mut y = x;
            loop {
                seen[y as usize] = true;
                orbit.push(y);
                y = self.step(y);
                if y == x {
                    break;
                }
            }
            Some(orbit)
        })
    }

    /// `pat(x) = u_{l-1} ... u_0` with `u_j` the tag of `p^j x`.
    pub fn pattern(&self, x: u64) -> Result<Word> {
        if !self.contains(x) {
            return Err(Error::UnknownElement(x));
        }
        let mut letters = vec![Letter::F; self.ell];
        let mut y = x;
        for j in 0..self.ell {
            letters[self.ell - 1 - j] = self.tag(y)?;
            y = self.step(y);
        }
        Ok(Word::from_letters(letters))
    }

    /// `μ(w) = |pat^{-1}(w)|`, computed orbit by orbit.
    pub fn pattern_table(&self) -> Result<PatternTable> {
        let mut table = PatternTable::new(self.ell);
        for orbit in self.orbits() {
            let tags = orbit.iter().map(|&x| self.tag(x)).collect::<Result<Vec<_>>>()?;
            let o = tags.len();
            for i in 0..o {
                let letters = (0..self.ell).rev().map(|j| tags[(i + j) % o]).collect();
                table.add(Word::from_letters(letters), 1)?;
            }
        }
        Ok(table)
    }

    /// Multiset of orbit words, each replaced by its primitive root.
    pub fn word_multiset(&self) -> Result<WordMultiset> {
        let mut m = WordMultiset::new();
        for orbit in self.orbits() {
            let letters = orbit.iter().rev().map(|&x| self.tag(x)).collect::<Result<Vec<_>>>()?;
            m.insert(CyclicWord::new(&Word::from_letters(letters))?, 1);
        }
        Ok(m.primitive_retraction())
    }

    /// Ekedahl–Oort type read off the sorted live patterns: a pattern
    /// starting with `f` contributes an up-run if it ends with `f` and a
    /// flat run otherwise.
    pub fn eo_type(&self) -> Result<(RunLength<usize>, PatternTable)> {
        let table = self.pattern_table()?;
        Ok((eo_from_table(&table), table))
    }
}

/// Runs `[↗^{μ_0} →^{μ_1} ...]` over the `f`-starting words of a table.
pub fn eo_from_table(table: &PatternTable) -> RunLength<usize> {
    RunLength::from_runs(table.live().filter(|(w, _)| w.first() == Some(Letter::F)).map(|(w, &mu)| {
        let dir = if w.last() == Some(Letter::F) { Direction::Up } else { Direction::Flat };
        (dir, mu)
    }))
}

/// `eo_type(build_spec(p, d, Quotient))`.
pub fn eo_type(p: u64, d: u64) -> Result<(RunLength<usize>, PatternTable)> {
    build_spec(p, d, Variant::Quotient)?.eo_type()
}
