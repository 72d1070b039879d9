//! Elementary sequences and their run-length notation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canonical::{words_to_canonical, CanonicalType};
use crate::error::{Error, Result};
use crate::scalar::Count;
use crate::words::WordMultiset;

/// `[ψ_1, ..., ψ_g]` with `ψ_0 = 0` and steps of 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementarySequence {
    psi: Vec<usize>,
}

impl ElementarySequence {
    pub fn new(psi: Vec<usize>) -> Result<Self> {
        let mut prev = 0;
        for (i, &x) in psi.iter().enumerate() {
            if x != prev && x != prev + 1 {
                return Err(Error::InvalidSequence(format!(
                    "psi_{} = {x} after psi_{} = {prev}",
                    i + 1,
                    i
                )));
            }
            prev = x;
        }
        Ok(ElementarySequence { psi })
    }

    /// The empty sequence of genus 0.
    pub fn empty() -> Self {
        ElementarySequence { psi: Vec::new() }
    }

    pub fn g(&self) -> usize {
        self.psi.len()
    }

    pub fn psi(&self) -> &[usize] {
        &self.psi
    }

    /// `ψ_i` with `ψ_0 = 0`.
    pub fn at(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.psi[i - 1]
        }
    }

    /// Largest `i` with `ψ_i = i`.
    pub fn p_rank(&self) -> usize {
        self.psi.iter().enumerate().filter(|&(i, &x)| x == i + 1).map(|(i, _)| i + 1).max().unwrap_or(0)
    }

    /// `g - ψ_g`.
    pub fn a_number(&self) -> usize {
        self.g() - self.at(self.g())
    }

    /// `[ψ_1..ψ_g]` to `[1, ψ_1+1, ..., ψ_g+1]`: the effect of adding `{f, v}`.
    pub fn prefix_ordinary(&self) -> Self {
        let mut psi = Vec::with_capacity(self.g() + 1);
        psi.push(1);
        psi.extend(self.psi.iter().map(|x| x + 1));
        ElementarySequence { psi }
    }

    pub fn rle(&self) -> RunLength<usize> {
        let mut rl = RunLength::new();
        let mut prev = 0;
        for &x in &self.psi {
            rl.push(if x > prev { Direction::Up } else { Direction::Flat }, 1usize);
            prev = x;
        }
        rl
    }

    /// All `2^g` sequences of length `g`, in lexicographic order of steps.
    pub fn all(g: usize) -> impl Iterator<Item = ElementarySequence> {
        (0u64..1 << g).map(move |bits| {
            let mut acc = 0;
            let psi = (0..g)
                .map(|i| {
                    acc += ((bits >> (g - 1 - i)) & 1) as usize;
                    acc
                })
                .collect();
            ElementarySequence { psi }
        })
    }
}

impl fmt::Display for ElementarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.psi.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for ElementarySequence {
    type Err = Error;

    /// Accepts `[0,1,1]`, `0,1,1` or an empty list.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if body.is_empty() {
            return Ok(ElementarySequence::empty());
        }
        let psi = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        ElementarySequence::new(psi)
    }
}

#[derive(Serialize, Deserialize)]
struct EsJson {
    g: usize,
    psi: Vec<usize>,
    rle: String,
}

impl Serialize for ElementarySequence {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        EsJson { g: self.g(), psi: self.psi.clone(), rle: self.rle().to_string() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ElementarySequence {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = EsJson::deserialize(de)?;
        let es = ElementarySequence::new(raw.psi).map_err(D::Error::custom)?;
        if es.g() != raw.g {
            return Err(D::Error::custom("g does not match the length of psi"));
        }
        let rle: RunLength<usize> = raw.rle.parse().map_err(D::Error::custom)?;
        if rle != es.rle() {
            return Err(D::Error::custom("rle does not match psi"));
        }
        Ok(es)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// `↗`
    Up,
    /// `→`
    Flat,
}

impl Direction {
    fn ascii(self) -> char {
        match self {
            Direction::Up => 'u',
            Direction::Flat => 'c',
        }
    }

    fn arrow(self) -> char {
        match self {
            Direction::Up => '↗',
            Direction::Flat => '→',
        }
    }
}

/// Run-length form `[↗^m_0 →^m_1 ...]` of an elementary sequence. Counts may
/// be arbitrarily large, so the type is generic over the count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RunLength<C = usize> {
    runs: Vec<(Direction, C)>,
}

impl<C: Count> Default for RunLength<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Count> RunLength<C> {
    pub fn new() -> Self {
        RunLength { runs: Vec::new() }
    }

    /// Builds from runs, dropping empty ones and merging neighbours.
    pub fn from_runs<I: IntoIterator<Item = (Direction, C)>>(runs: I) -> Self {
        let mut rl = Self::new();
        for (d, m) in runs {
            rl.push(d, m);
        }
        rl
    }

    pub fn push(&mut self, dir: Direction, m: C) {
        if m.is_zero() {
            return;
        }
        match self.runs.last_mut() {
            Some((d, n)) if *d == dir => *n = n.clone() + m,
            _ => self.runs.push((dir, m)),
        }
    }

    pub fn runs(&self) -> &[(Direction, C)] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Total length `g`.
    pub fn total(&self) -> C {
        self.runs.iter().fold(C::zero(), |acc, (_, m)| acc + m.clone())
    }

    /// Sum of the up-runs, that is `ψ_g`.
    pub fn ups(&self) -> C {
        self.runs.iter().filter(|(d, _)| *d == Direction::Up).fold(C::zero(), |acc, (_, m)| acc + m.clone())
    }

    pub fn to_es(&self) -> Result<ElementarySequence> {
        let mut psi = Vec::with_capacity(self.total().to_usize_exact()?);
        let mut acc = 0;
        for (d, m) in &self.runs {
            for _ in 0..m.to_usize_exact()? {
                acc += usize::from(*d == Direction::Up);
                psi.push(acc);
            }
        }
        Ok(ElementarySequence { psi })
    }

    /// Unicode form, e.g. `[↗³→²]`.
    pub fn pretty(&self) -> String {
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        let mut out = String::from("[");
        for (d, m) in &self.runs {
            out.push(d.arrow());
            for c in m.to_string().chars() {
                out.push(SUP[c.to_digit(10).unwrap_or(0) as usize]);
            }
        }
        out.push(']');
        out
    }
}

impl<C: Count> fmt::Display for RunLength<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.runs.iter().map(|(d, m)| format!("{}{m}", d.ascii())).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl<C: Count> FromStr for RunLength<C> {
    type Err = Error;

    /// Parses `u3,c2`; `↗3,→2` is accepted as well. Zero runs are dropped.
    fn from_str(s: &str) -> Result<Self> {
        let mut rl = Self::new();
        let body = s.trim();
        if body.is_empty() {
            return Ok(rl);
        }
        for tok in body.split(',') {
            let tok = tok.trim();
            let mut chars = tok.chars();
            let dir = match chars.next() {
                Some('u' | 'U' | '↗') => Direction::Up,
                Some('c' | 'C' | '→') => Direction::Flat,
                _ => return Err(Error::Parse(format!("bad run {tok:?} in {s:?}"))),
            };
            let count = chars.as_str().trim_start_matches('^');
            if count.is_empty() || !count.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad run length in {tok:?}")));
            }
            let m: C = count.parse().map_err(|_| Error::Parse(format!("bad run length in {tok:?}")))?;
            rl.push(dir, m);
        }
        Ok(rl)
    }
}

/// A self-dual canonical type, or the genus 0 case where there is none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelfDualType {
    Trivial,
    Nontrivial(CanonicalType),
}

impl SelfDualType {
    pub fn canonical(&self) -> Option<&CanonicalType> {
        match self {
            SelfDualType::Trivial => None,
            SelfDualType::Nontrivial(ct) => Some(ct),
        }
    }
}

/// `g = ρ(r)`; on the block `ρ(i-1) < j <= ρ(i)` the sequence climbs iff
/// `φ(i) > φ(i-1)`.
pub fn es_from_canonical(ct: &CanonicalType) -> Result<ElementarySequence> {
    if !ct.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    let (phi, rho) = (ct.phi(), ct.rho());
    let g = rho[ct.r()];
    let mut psi = Vec::with_capacity(g);
    let mut acc = 0;
    for i in 1..=ct.r() {
        let up = phi[i] > phi[i - 1];
        for _ in rho[i - 1]..rho[i] {
            acc += usize::from(up);
            psi.push(acc);
        }
    }
    Ok(ElementarySequence { psi })
}

/// Inverse of [`es_from_canonical`].
///
/// The sequence extends to the final sequence on `0..=2g` by
/// `φ(i) = i - g + ψ_{2g-i}` for `i >= g` and `ν(i) = g + i - φ(i)`; the
/// canonical type is that final type restricted to the closure of `{0, 2g}`.
pub fn canonical_from_es(es: &ElementarySequence) -> SelfDualType {
    let g = es.g();
    if g == 0 {
        return SelfDualType::Trivial;
    }
    let n = 2 * g;
    let phi_fin: Vec<usize> = (0..=n).map(|i| if i <= g { es.at(i) } else { i - g + es.at(n - i) }).collect();
    let nu_fin: Vec<usize> = (0..=n).map(|i| g + i - phi_fin[i]).collect();
    let mut inside = vec![false; n + 1];
    let mut stack = vec![0, n];
    inside[0] = true;
    inside[n] = true;
    while let Some(i) = stack.pop() {
        for j in [phi_fin[i], nu_fin[i]] {
            if !inside[j] {
                inside[j] = true;
                stack.push(j);
            }
        }
    }
    let members: Vec<usize> = (0..=n).filter(|&i| inside[i]).collect();
    let mut index = vec![usize::MAX; n + 1];
    for (k, &c) in members.iter().enumerate() {
        index[c] = k;
    }
    let s = members.len() - 1;
    let phi: Vec<usize> = members.iter().map(|&c| index[phi_fin[c]]).collect();
    let nu: Vec<usize> = members.iter().map(|&c| index[nu_fin[c]]).collect();
    let ct = CanonicalType::new(s, phi[s], phi, nu, members)
        .expect("the closure of an elementary sequence is a canonical type");
    SelfDualType::Nontrivial(ct)
}

/// Elementary sequence of a self-dual multiset; the empty multiset has genus 0.
pub fn es_from_multiset(m: &WordMultiset) -> Result<ElementarySequence> {
    if m.is_empty() {
        return Ok(ElementarySequence::empty());
    }
    let (ct, _) = words_to_canonical(m)?;
    es_from_canonical(&ct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_to_perm;
    use crate::words::multisets_of_dim;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn es(v: &[usize]) -> ElementarySequence {
        ElementarySequence::new(v.to_vec()).unwrap()
    }

    fn ms(s: &str) -> WordMultiset {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(ElementarySequence::new(vec![0, 2]).is_err());
        assert!(ElementarySequence::new(vec![2]).is_err());
        assert!(ElementarySequence::new(vec![1, 0]).is_err());
        assert!(ElementarySequence::new(vec![]).is_ok());
        assert_eq!("[0,1,1,2]".parse::<ElementarySequence>().unwrap(), es(&[0, 1, 1, 2]));
        assert_eq!("[]".parse::<ElementarySequence>().unwrap().g(), 0);
    }

    #[test]
    fn from_canonical_examples() {
        assert_eq!(es_from_multiset(&ms("fv")).unwrap(), es(&[0]));
        assert_eq!(es_from_multiset(&ms("fv^3")).unwrap(), es(&[0, 0, 0]));
        assert_eq!(es_from_multiset(&ms("f,v")).unwrap(), es(&[1]));
        assert_eq!(es_from_multiset(&ms("fv,fffvvv")).unwrap(), es(&[0, 1, 1, 2]));
        assert_eq!(es_from_multiset(&WordMultiset::new()).unwrap(), ElementarySequence::empty());
        let (ct, _) = words_to_canonical(&ms("ffv")).unwrap();
        assert!(matches!(es_from_canonical(&ct), Err(Error::NotSelfDual)));
    }

    #[test]
    fn inverse_examples() {
        let (fv, _) = words_to_canonical(&ms("fv")).unwrap();
        let got = canonical_from_es(&es(&[0]));
        assert_eq!(got, SelfDualType::Nontrivial(fv.clone()));
        assert_eq!((fv.s(), fv.r(), fv.mu()), (2, 1, vec![1, 1]));
        let (ordinary, _) = words_to_canonical(&ms("f^3,v^3")).unwrap();
        assert_eq!(canonical_from_es(&es(&[1, 2, 3])), SelfDualType::Nontrivial(ordinary));
        assert_eq!(canonical_from_es(&ElementarySequence::empty()), SelfDualType::Trivial);
    }

    #[test]
    fn exhaustive_round_trip() {
        for g in 1..=7 {
            for e in ElementarySequence::all(g) {
                let ct = canonical_from_es(&e);
                let ct = ct.canonical().unwrap();
                assert!(ct.is_self_dual());
                assert_eq!(ct.dim(), 2 * g);
                assert_eq!(es_from_canonical(ct).unwrap(), e);
                assert!(canonical_to_perm(ct).unwrap().to_words().is_self_dual());
            }
        }
        assert_eq!(ElementarySequence::all(6).count(), 64);
    }

    #[test]
    fn self_dual_multisets_round_trip() {
        for dim in (2..=10).step_by(2) {
            for m in multisets_of_dim(dim).into_iter().filter(WordMultiset::is_self_dual) {
                let e = es_from_multiset(&m).unwrap();
                assert_eq!(e.g(), dim / 2);
                let ct = canonical_from_es(&e);
                let back = canonical_to_perm(ct.canonical().unwrap()).unwrap().to_words();
                assert_eq!(back, m);
                let mut plus = m.clone();
                plus.insert("f".parse().unwrap(), 1);
                plus.insert("v".parse().unwrap(), 1);
                assert_eq!(es_from_multiset(&plus).unwrap(), e.prefix_ordinary(), "{m}");
            }
        }
    }

    #[test]
    fn invariants_from_sequence() {
        assert_eq!((es(&[0, 1, 1, 2]).p_rank(), es(&[0, 1, 1, 2]).a_number()), (0, 2));
        assert_eq!((es(&[1, 2]).p_rank(), es(&[1, 2]).a_number()), (2, 0));
        assert_eq!((es(&[0, 0, 0]).p_rank(), es(&[0, 0, 0]).a_number()), (0, 3));
        assert_eq!(es(&[1, 1, 2]).p_rank(), 1);
    }

    #[test]
    fn run_length_examples() {
        let a: RunLength = "u3,c2".parse().unwrap();
        assert_eq!(a.to_es().unwrap(), es(&[1, 2, 3, 3, 3]));
        assert_eq!(a.pretty(), "[↗³→²]");
        let b: RunLength = "c2,u3".parse().unwrap();
        assert_eq!(b.to_es().unwrap(), es(&[0, 0, 1, 2, 3]));
        let empty: RunLength = "".parse().unwrap();
        assert_eq!(empty.to_es().unwrap(), ElementarySequence::empty());
        let z: RunLength = "u0,c1,c2,u0,u1".parse().unwrap();
        assert_eq!(z.to_string(), "c3,u1");
        let arrows: RunLength = "↗^3,→2".parse().unwrap();
        assert_eq!(arrows, a);
        for bad in ["x3", "u", "u-1", "u3,,c1", "u3c2"] {
            assert!(bad.parse::<RunLength>().is_err(), "{bad}");
        }
        let big: RunLength<BigUint> = "u123456789012345678901234567890,c1".parse().unwrap();
        assert_eq!(big.ups().to_string(), "123456789012345678901234567890");
        assert_eq!(es(&[0, 1, 1, 2]).rle().to_string(), "c1,u1,c1,u1");
    }

    #[test]
    fn json() {
        let e = es(&[0, 1, 1]);
        let js = serde_json::to_string(&e).unwrap();
        assert_eq!(js, r#"{"g":3,"psi":[0,1,1],"rle":"c1,u1,c1"}"#);
        assert_eq!(serde_json::from_str::<ElementarySequence>(&js).unwrap(), e);
        assert!(serde_json::from_str::<ElementarySequence>(r#"{"g":2,"psi":[0,1,1],"rle":"c1,u1,c1"}"#).is_err());
        assert!(serde_json::from_str::<ElementarySequence>(r#"{"g":3,"psi":[0,1,1],"rle":"u1,c2"}"#).is_err());
    }

    proptest! {
        #[test]
        fn rle_round_trip(steps in proptest::collection::vec(any::<bool>(), 0..40)) {
            let mut acc = 0;
            let psi: Vec<usize> = steps.iter().map(|&b| { acc += usize::from(b); acc }).collect();
            let e = ElementarySequence::new(psi).unwrap();
            let rl = e.rle();
            prop_assert_eq!(rl.to_es().unwrap(), e.clone());
            prop_assert_eq!(rl.to_string().parse::<RunLength>().unwrap(), rl.clone());
            prop_assert_eq!(rl.total(), e.g());
            prop_assert_eq!(rl.ups(), e.at(e.g()));
        }

        #[test]
        fn inversion_round_trip(steps in proptest::collection::vec(any::<bool>(), 1..24)) {
            let mut acc = 0;
            let psi: Vec<usize> = steps.iter().map(|&b| { acc += usize::from(b); acc }).collect();
            let e = ElementarySequence::new(psi).unwrap();
            let ct = canonical_from_es(&e);
            prop_assert_eq!(es_from_canonical(ct.canonical().unwrap()).unwrap(), e);
        }
    }
}
