//! Self-checks: each suite recomputes a family of results by two or more
//! independent routes and stops at the first disagreement.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::{canonical_filtration_oracle, canonical_to_perm, dual_canonical, words_to_canonical};
use crate::eo::{canonical_from_es, es_from_canonical, es_from_multiset, ElementarySequence};
use crate::error::{Error, Result};
use crate::fermat::{
    a_number_closed, a_number_special, build_spec, encompassing_eo, encompassing_invariants, hermitian_eo,
    hermitian_invariants, is_ordinary, is_superspecial, is_prime, p2_eo, EncompassingMultiplicities,
    HermitianMultiplicities, Variant,
};
use crate::invariants::{invariants, invariants_from_es, invariants_from_multiplicities, Multiplicities};
use crate::kraft::build_kraft;
use crate::permdata::perm_to_words;
use crate::tables::golden_rows;
use crate::words::{multisets_of_dim, primitive_cyclic_words, CyclicWord, Letter, WordMultiset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Tables,
    Oracle,
    Fermat,
    Encompassing,
    Hermitian,
    P2,
    Anumber,
    Duality,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Tables,
        Suite::Oracle,
        Suite::Fermat,
        Suite::Encompassing,
        Suite::Hermitian,
        Suite::P2,
        Suite::Anumber,
        Suite::Duality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Oracle => "oracle",
            Suite::Fermat => "fermat",
            Suite::Encompassing => "encompassing",
            Suite::Hermitian => "hermitian",
            Suite::P2 => "p2",
            Suite::Anumber => "anumber",
            Suite::Duality => "duality",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Optional overrides; `None` picks the suite's default range.
#[derive(Clone, Debug, Default)]
pub struct Bounds {
    pub p_list: Option<Vec<u64>>,
    pub d_max: Option<u64>,
    /// `l` for the encompassing suite, `λ` for the Hermitian one.
    pub lmax: Option<usize>,
    /// Total dimension for the oracle suite, genus for the inversion part of
    /// the duality suite.
    pub max_len: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub checks: usize,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} checks)", self.suite, self.checks),
            Some(why) => write!(f, "FAIL {} after {} checks: {why}", self.suite, self.checks),
        }
    }
}

type Outcome = std::result::Result<(), String>;

#[derive(Default)]
struct Tally {
    checks: usize,
}

impl Tally {
    fn check(&mut self, ok: bool, why: impl FnOnce() -> String) -> Outcome {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(why())
        }
    }
}

fn ctx<T>(r: Result<T>, at: impl fmt::Display) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{at}: {e}"))
}

pub fn run(suite: Suite, bounds: &Bounds) -> Report {
    let mut t = Tally::default();
    let outcome = match suite {
        Suite::Tables => tables(&mut t),
        Suite::Oracle => oracle(&mut t, bounds.max_len.unwrap_or(10)),
        Suite::Fermat => fermat_suite(&mut t, &primes_or(bounds, &[2, 3, 5, 7, 11, 13]), bounds.d_max.unwrap_or(200)),
        Suite::Encompassing => encompassing(&mut t, &primes_or(bounds, &[3, 5, 7]), bounds.lmax.unwrap_or(4)),
        Suite::Hermitian => hermitian(&mut t, &primes_or(bounds, &[3, 5, 7, 11]), bounds.lmax.unwrap_or(3)),
        Suite::P2 => p2(&mut t, bounds.d_max.unwrap_or(201)),
        Suite::Anumber => anumber(&mut t, &primes_or(bounds, &[3, 5, 7, 11, 13]), bounds.d_max.unwrap_or(500)),
        Suite::Duality => duality(
            &mut t,
            bounds.samples.unwrap_or(1000),
            bounds.seed,
            bounds.max_len.unwrap_or(6),
        ),
    };
    Report { suite, checks: t.checks, failure: outcome.err() }
}

fn primes_or(bounds: &Bounds, default: &[u64]) -> Vec<u64> {
    bounds.p_list.clone().unwrap_or_else(|| default.to_vec())
}

fn tables(t: &mut Tally) -> Outcome {
    for row in ctx(golden_rows(), "golden rows")? {
        let es = ctx(es_from_multiset(&row.words), &row)?;
        t.check(es == row.es, || format!("{row}: multiset gives {es}"))?;
        let b = ctx(invariants(&row.words), &row)?;
        t.check(b == row.invariants, || format!("{row}: multiset gives {b:?}"))?;
        let (f, a) = invariants_from_es(&row.es);
        t.check((f, a) == (row.invariants.p_rank, row.invariants.a), || format!("{row}: sequence gives f={f} a={a}"))?;
        let ct = canonical_from_es(&row.es).canonical().cloned().ok_or_else(|| format!("{row}: no canonical type"))?;
        let words = perm_to_words(&ctx(canonical_to_perm(&ct), &row)?);
        t.check(words == row.words, || format!("{row}: sequence gives {{{words}}}"))?;
    }
    Ok(())
}

fn oracle(t: &mut Tally, max_dim: usize) -> Outcome {
    for dim in 1..=max_dim {
        for m in multisets_of_dim(dim) {
            let (ct, _) = ctx(words_to_canonical(&m), &m)?;
            let (_, oracle) = ctx(build_kraft(&m).and_then(|k| canonical_filtration_oracle(&k)), &m)?;
            t.check(ct == oracle, || format!("{{{m}}}: words give {ct:?}, filtration gives {oracle:?}"))?;
            let perm = ctx(canonical_to_perm(&ct), &m)?;
            t.check(perm.is_admissible(), || format!("{{{m}}}: permutation not admissible"))?;
            t.check(perm_to_words(&perm) == m, || format!("{{{m}}}: permutation words differ"))?;
        }
    }
    Ok(())
}

fn fermat_suite(t: &mut Tally, primes: &[u64], d_max: u64) -> Outcome {
    for &p in primes {
        for d in 3..=d_max {
            if d % p == 0 {
                continue;
            }
            let at = format!("p={p} d={d}");
            let spec = ctx(build_spec(p, d, Variant::Quotient), &at)?;
            let m = ctx(spec.word_multiset(), &at)?;
            let (rl, table) = ctx(spec.eo_type(), &at)?;
            let es = ctx(rl.to_es(), &at)?;
            let full = ctx(es_from_multiset(&m), &at)?;
            t.check(es == full, || format!("{at}: patterns give {es}, canonical type gives {full}"))?;
            let by_words = ctx(invariants(&m), &at)?;
            let by_mu = ctx(invariants_from_multiplicities(&table), &at)?;
            t.check(by_words == by_mu, || format!("{at}: words {by_words:?} vs multiplicities {by_mu:?}"))?;
            let (f, a) = invariants_from_es(&es);
            t.check((f, a) == (by_words.p_rank, by_words.a), || format!("{at}: sequence gives f={f} a={a}"))?;
            t.check(m.is_self_dual(), || format!("{at}: multiset not self-dual"))?;
            let g = (d - 1) / 2;
            let f_sum: usize = table.live().filter(|(w, _)| w.first() == Some(Letter::F)).map(|(_, &k)| k).sum();
            t.check(f_sum as u64 == g && spec.genus() == g, || format!("{at}: f-words count {f_sum}, genus {g}"))?;
        }
    }
    Ok(())
}

fn encompassing(t: &mut Tally, primes: &[u64], lmax: usize) -> Outcome {
    for &p in primes {
        for ell in 1..=lmax {
            let d = p.pow(ell as u32) - 1;
            if d <= 2 {
                continue;
            }
            let at = format!("p={p} l={ell}");
            let spec = ctx(build_spec(p, d, Variant::Quotient), &at)?;
            let (rl, table) = ctx(spec.eo_type(), &at)?;
            let closed = ctx(encompassing_eo::<usize>(p, ell), &at)?;
            t.check(closed == rl, || format!("{at}: closed form {closed}, orbits {rl}"))?;
            let b = ctx(invariants(&ctx(spec.word_multiset(), &at)?), &at)?;
            let inv = ctx(encompassing_invariants::<usize>(p, ell), &at)?;
            t.check(inv == b, || format!("{at}: closed invariants {inv:?}, orbits {b:?}"))?;
            let mu = ctx(EncompassingMultiplicities::<usize>::new(p, ell), &at)?;
            let by_mu = ctx(invariants_from_multiplicities(&mu), &at)?;
            t.check(by_mu == b, || format!("{at}: multiplicity formulas give {by_mu:?}"))?;
            for (w, &k) in table.live() {
                let formula = ctx(mu.exact(w), &at)?;
                t.check(formula == k, || format!("{at}: mu({w}) formula {formula}, orbits {k}"))?;
            }
        }
    }
    Ok(())
}

fn hermitian(t: &mut Tally, primes: &[u64], lmax: usize) -> Outcome {
    for &p in primes {
        for lambda in 1..=lmax {
            let d = p.pow(lambda as u32) + 1;
            let at = format!("p={p} lambda={lambda}");
            let spec = ctx(build_spec(p, d, Variant::Quotient), &at)?;
            let (rl, table) = ctx(spec.eo_type(), &at)?;
            let closed = ctx(hermitian_eo::<usize>(p, lambda), &at)?;
            t.check(closed == rl, || format!("{at}: closed form {closed}, orbits {rl}"))?;
            let b = ctx(invariants(&ctx(spec.word_multiset(), &at)?), &at)?;
            let inv = ctx(hermitian_invariants::<usize>(p, lambda), &at)?;
            t.check(inv == b, || format!("{at}: closed invariants {inv:?}, orbits {b:?}"))?;
            let mu = ctx(HermitianMultiplicities::<usize>::new(p, lambda), &at)?;
            let by_mu = ctx(invariants_from_multiplicities(&mu), &at)?;
            t.check(by_mu == b, || format!("{at}: multiplicity formulas give {by_mu:?}"))?;
            for (w, &k) in table.live() {
                let formula = ctx(mu.exact(w), &at)?;
                t.check(formula == k, || format!("{at}: mu({w}) formula {formula}, orbits {k}"))?;
            }
        }
    }
    Ok(())
}

/// Values of `d` where the `p = 2` closed form and the pipeline differ,
/// with the part that differs.
pub fn p2_disagreements(d_max: u64) -> Result<Vec<(u64, &'static str)>> {
    let mut out = Vec::new();
    for d in (3..=d_max).step_by(2) {
        let (rl, closed) = p2_eo(d)?;
        let spec = build_spec(2, d, Variant::Quotient)?;
        let b = invariants(&spec.word_multiset()?)?;
        let (pipe, _) = spec.eo_type()?;
        if (closed.p_rank, closed.a) != (b.p_rank, b.a) {
            out.push((d, "p-rank/a-number"));
        } else if closed.s11 != b.s11 {
            out.push((d, "s11"));
        } else if rl != pipe {
            out.push((d, "EO"));
        }
    }
    Ok(out)
}

fn p2(t: &mut Tally, d_max: u64) -> Outcome {
    for d in (3..=d_max).step_by(2) {
        let at = format!("p=2 d={d}");
        let (rl, closed) = ctx(p2_eo(d), &at)?;
        let spec = ctx(build_spec(2, d, Variant::Quotient), &at)?;
        let b = ctx(invariants(&ctx(spec.word_multiset(), &at)?), &at)?;
        t.check(b.p_rank == 0 && closed.a == b.a, || format!("{at}: closed a={}, pipeline f={} a={}", closed.a, b.p_rank, b.a))?;
        t.check(closed.s11 == b.s11, || format!("{at}: closed s11={}, pipeline {}", closed.s11, b.s11))?;
        let (pipe, _) = ctx(spec.eo_type(), &at)?;
        t.check(rl == pipe, || {
            let show = |r: &crate::eo::RunLength| r.to_es().map(|e| e.to_string()).unwrap_or_default();
            format!("{at}: closed EO {}, pipeline {}", show(&rl), show(&pipe))
        })?;
    }
    Ok(())
}

/// `#{a : 0 < a < d/2, d/2 < pa mod d}`
fn a_by_count(p: u64, d: u64) -> u64 {
    (1..d).filter(|&a| 2 * a < d && 2 * (p * a % d) > d).count() as u64
}

fn anumber(t: &mut Tally, primes: &[u64], d_max: u64) -> Outcome {
    for &p in primes.iter().filter(|&&p| p % 2 == 1 && is_prime(p)) {
        for d in 3..=d_max {
            if d % p == 0 {
                continue;
            }
            let at = format!("p={p} d={d}");
            let a = ctx(a_number_closed(p, d), &at)?;
            let count = a_by_count(p, d);
            t.check(a == count, || format!("{at}: floor sum {a}, count {count}"))?;
            if let Some(s) = ctx(a_number_special(p, d), &at)? {
                t.check(s == a, || format!("{at}: special residue formula {s}, floor sum {a}"))?;
            }
            let b = ctx(build_spec(p, d, Variant::Quotient).and_then(|s| invariants(&s.word_multiset()?)), &at)?;
            t.check(b.a as u64 == a, || format!("{at}: floor sum {a}, pipeline {}", b.a))?;
            let ord = ctx(is_ordinary(p, d), &at)?;
            t.check(ord == b.is_ordinary(), || format!("{at}: d | p-1 is {ord}, pipeline f={} g={}", b.p_rank, b.g))?;
            let ss = ctx(is_superspecial(p, d), &at)?;
            t.check(ss == b.is_superspecial(), || format!("{at}: d | p+1 is {ss}, pipeline a={} g={}", b.a, b.g))?;
        }
    }
    Ok(())
}

/// A multiset of primitive words of total dimension `dim`.
pub fn random_multiset<R: Rng>(rng: &mut R, dim: usize) -> WordMultiset {
    let pools: Vec<Vec<CyclicWord>> = (0..=dim).map(|n| if n == 0 { Vec::new() } else { primitive_cyclic_words(n) }).collect();
    let mut m = WordMultiset::new();
    let mut left = dim;
    while left > 0 {
        let n = rng.gen_range(1..=left);
        let w = pools[n].choose(rng).expect("every length has a primitive word");
        m.insert(w.clone(), 1);
        left -= n;
    }
    m
}

fn duality(t: &mut Tally, samples: usize, seed: u64, g_max: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let dim = rng.gen_range(1..=14);
        let m = if rng.gen_bool(0.5) {
            random_multiset(&mut rng, dim)
        } else {
            let half = random_multiset(&mut rng, dim.div_ceil(2));
            half.union(&half.complement())
        };
        let (ct, _) = ctx(words_to_canonical(&m), &m)?;
        let dual = dual_canonical(&ct);
        t.check(dual_canonical(&dual) == ct, || format!("{{{m}}}: dual is not an involution"))?;
        let (comp, _) = ctx(words_to_canonical(&m.complement()), &m)?;
        t.check(dual == comp, || format!("{{{m}}}: dual formulas give {dual:?}, complement gives {comp:?}"))?;
        t.check(dual.first_failed_axiom().is_none(), || format!("{{{m}}}: dual fails an axiom"))?;
        t.check(m.is_self_dual() == ct.is_self_dual(), || format!("{{{m}}}: self-duality differs"))?;
    }
    for g in 1..=g_max {
        for es in ElementarySequence::all(g) {
            let ct = canonical_from_es(&es).canonical().cloned().ok_or_else(|| format!("{es}: no canonical type"))?;
            let back = ctx(es_from_canonical(&ct), &es)?;
            t.check(back == es, || format!("{es}: round trip gives {back}"))?;
        }
    }
    Ok(())
}
