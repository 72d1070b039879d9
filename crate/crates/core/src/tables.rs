//! Elementary sequences of small genus matched with their Kraft multisets
//! and invariants.

use std::fmt;

use serde::Serialize;

use crate::eo::ElementarySequence;
use crate::error::Result;
use crate::invariants::InvariantBundle;
use crate::words::{CyclicWord, Letter, Word, WordMultiset};

/// One row: `[ψ]`, the multiset `K` and the four invariant columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenRow {
    pub es: ElementarySequence,
    pub words: WordMultiset,
    pub invariants: InvariantBundle,
    /// `false` for rows obtained by adding `{f, v}` to a row of genus `g-1`.
    pub printed: bool,
}

impl fmt::Display for GoldenRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.invariants;
        write!(f, "g={} {} {{{}}} f={} a={} s11={} u11={}", b.g, self.es, self.words, b.p_rank, b.a, b.s11, b.u11)
    }
}

const PRINTED: &[(&[usize], &str, [usize; 4])] = &[
    (&[0], "fv", [0, 1, 1, 1]),
    (&[1], "f,v", [1, 0, 0, 0]),
    (&[0, 0], "(fv)^2", [0, 2, 2, 2]),
    (&[0, 1], "ffvv", [0, 1, 0, 1]),
    (&[1, 1], "f,v,fv", [1, 1, 1, 1]),
    (&[1, 2], "(f)^2,(v)^2", [2, 0, 0, 0]),
    (&[0, 0, 0], "(fv)^3", [0, 3, 3, 3]),
    (&[0, 0, 1], "fv,ffvv", [0, 2, 1, 2]),
    (&[0, 1, 1], "fvv,vff", [0, 2, 0, 0]),
    (&[0, 1, 2], "fffvvv", [0, 1, 0, 1]),
    (&[0, 0, 0, 0], "(fv)^4", [0, 4, 4, 4]),
    (&[0, 0, 0, 1], "(fv)^2,ffvv", [0, 3, 2, 3]),
    (&[0, 0, 1, 1], "ffvfvvfv", [0, 3, 0, 1]),
    (&[0, 0, 1, 2], "(ffvv)^2", [0, 2, 0, 2]),
    (&[0, 1, 1, 1], "fv,ffv,vvf", [0, 3, 1, 1]),
    (&[0, 1, 1, 2], "fv,fffvvv", [0, 2, 1, 2]),
    (&[0, 1, 2, 2], "fffv,fvvv", [0, 2, 0, 0]),
    (&[0, 1, 2, 3], "ffffvvvv", [0, 1, 0, 1]),
];

fn printed_rows() -> Result<Vec<GoldenRow>> {
    PRINTED
        .iter()
        .map(|&(psi, words, [p_rank, a, s11, u11])| {
            Ok(GoldenRow {
                es: ElementarySequence::new(psi.to_vec())?,
                words: words.parse()?,
                invariants: InvariantBundle::new(psi.len(), p_rank, a, s11, u11)?,
                printed: true,
            })
        })
        .collect()
}

/// Adds `Z/p ⊕ μ_p`: `ψ ↦ [1, ψ+1]`, one more `f` and `v`, p-rank `+1`.
pub fn add_ordinary(row: &GoldenRow) -> Result<GoldenRow> {
    let mut words = row.words.clone();
    for l in [Letter::F, Letter::V] {
        words.insert(CyclicWord::new(&Word::repeat(l, 1))?, 1);
    }
    let b = &row.invariants;
    Ok(GoldenRow {
        es: row.es.prefix_ordinary(),
        words,
        invariants: InvariantBundle::new(b.g + 1, b.p_rank + 1, b.a, b.s11, b.u11)?,
        printed: false,
    })
}

/// Every row for `1 ≤ g ≤ 4`, sorted by `(g, ψ)`. Genus 3 and 4 only print
/// p-rank 0; the rest come from [`add_ordinary`].
pub fn golden_rows() -> Result<Vec<GoldenRow>> {
    let mut rows = printed_rows()?;
    for g in 3..=4 {
        let lower: Vec<GoldenRow> = rows.iter().filter(|r| r.es.g() == g - 1).cloned().collect();
        for r in &lower {
            let up = add_ordinary(r)?;
            if !rows.iter().any(|x| x.es == up.es) {
                rows.push(up);
            }
        }
    }
    rows.sort_by(|x, y| (x.es.g(), x.es.psi()).cmp(&(y.es.g(), y.es.psi())));
    Ok(rows)
}
