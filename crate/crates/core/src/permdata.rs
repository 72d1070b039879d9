//! Partitioned sets `S = S_f ⊔ S_v` with a permutation, and the dictionary
//! with multisets of cyclic words.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{CyclicWord, Letter, Word, WordMultiset};

/// A finite set of integer labels, each tagged `f` or `v`, with a bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedPermutation {
    labels: Vec<u64>,
    index: HashMap<u64, usize>,
    tags: Vec<Letter>,
    perm: Vec<usize>,
}

impl PartitionedPermutation {
    /// Builds from labels `0..n` with tags and images given by index.
    pub fn from_indexed(tags: Vec<Letter>, perm: Vec<usize>) -> Result<Self> {
        let labels = (0..tags.len() as u64).collect();
        Self::with_labels(labels, tags, perm)
    }

    /// `labels[i]` is tagged `tags[i]` and sent to `labels[perm[i]]`.
    pub fn with_labels(labels: Vec<u64>, tags: Vec<Letter>, perm: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if tags.len() != n || perm.len() != n {
            return Err(Error::InvalidPermutation("length mismatch".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, &l) in labels.iter().enumerate() {
            if index.insert(l, i).is_some() {
                return Err(Error::InvalidPermutation(format!("duplicate element {l}")));
            }
        }
        let mut hit = vec![false; n];
        for &t in &perm {
            if t >= n || std::mem::replace(&mut hit[t], true) {
                return Err(Error::InvalidPermutation("not a bijection".into()));
            }
        }
        Ok(PartitionedPermutation { labels, index, tags, perm })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn tag(&self, a: u64) -> Result<Letter> {
        Ok(self.tags[self.idx(a)?])
    }

    pub fn image(&self, a: u64) -> Result<u64> {
        Ok(self.labels[self.perm[self.idx(a)?]])
    }

    pub fn f_part(&self) -> Vec<u64> {
        self.part(Letter::F)
    }

    pub fn v_part(&self) -> Vec<u64> {
        self.part(Letter::V)
    }

    fn part(&self, which: Letter) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .labels
            .iter()
            .zip(&self.tags)
            .filter(|(_, &t)| t == which)
            .map(|(&l, _)| l)
            .collect();
        out.sort_unstable();
        out
    }

    fn idx(&self, a: u64) -> Result<usize> {
        self.index.get(&a).copied().ok_or(Error::UnknownElement(a))
    }

    /// Orbits as index lists, each starting at its element and following `π`.
    fn orbits_by_index(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = self.perm[x];
            }
            out.push(orbit);
        }
        out
    }

    /// Orbits as label lists.
    pub fn orbits(&self) -> Vec<Vec<u64>> {
        self.orbits_by_index()
            .into_iter()
            .map(|o| o.into_iter().map(|i| self.labels[i]).collect())
            .collect()
    }

    fn word_of_orbit(&self, orbit: &[usize]) -> Word {
        // u_j is the tag of π^j(a); u_0 is the rightmost letter
        Word::from_letters(orbit.iter().rev().map(|&i| self.tags[i]).collect())
    }

    /// The word `w_a = u_{l-1} ... u_0` with `u_j = f` iff `π^j(a) ∈ S_f`.
    pub fn orbit_word(&self, a: u64) -> Result<Word> {
        let start = self.idx(a)?;
        let mut orbit = vec![start];
        let mut x = self.perm[start];
        while x != start {
            orbit.push(x);
            x = self.perm[x];
        }
        Ok(self.word_of_orbit(&orbit))
    }

    /// One cyclic word per orbit, multiplicities added.
    pub fn to_words(&self) -> WordMultiset {
        let mut m = WordMultiset::new();
        for orbit in self.orbits_by_index() {
            m.insert_word(&self.word_of_orbit(&orbit), 1)
                .expect("orbits are nonempty");
        }
        m
    }

    /// Every orbit word is primitive.
    pub fn is_admissible(&self) -> bool {
        self.orbits_by_index()
            .iter()
            .all(|o| self.word_of_orbit(o).is_primitive().unwrap_or(false))
    }

    /// Sorted orbit labels; equal for isomorphic data.
    pub fn canonical_form(&self) -> Vec<(CyclicWord, usize)> {
        let mut form: Vec<(CyclicWord, usize)> = self
            .orbits_by_index()
            .iter()
            .map(|o| (CyclicWord::new(&self.word_of_orbit(o)).unwrap(), o.len()))
            .collect();
        form.sort();
        form
    }

    pub fn is_isomorphic(&self, other: &PartitionedPermutation) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Applies a relabeling `a ↦ relabel(a)`, which must be injective.
    pub fn relabel<R: Fn(u64) -> u64>(&self, relabel: R) -> Result<PartitionedPermutation> {
        let labels = self.labels.iter().map(|&a| relabel(a)).collect();
        Self::with_labels(labels, self.tags.clone(), self.perm.clone())
    }

    /// Decides whether some bijection `ι` swaps the two parts and commutes
    /// with `π`, by bipartite matching of orbits. Does not go through words.
    pub fn is_self_dual(&self) -> bool {
        let orbits = self.orbits_by_index();
        let tag_seqs: Vec<Vec<Letter>> = orbits
            .iter()
            .map(|o| o.iter().map(|&i| self.tags[i]).collect())
            .collect();
        let compatible = |a: &[Letter], b: &[Letter]| -> bool {
            let n = a.len();
            n == b.len() && (0..n).any(|s| (0..n).all(|k| b[(k + s) % n] == a[k].flip()))
        };
        let adj: Vec<Vec<usize>> = tag_seqs
            .iter()
            .map(|a| {
                (0..tag_seqs.len())
                    .filter(|&j| compatible(a, &tag_seqs[j]))
                    .collect()
            })
            .collect();
        perfect_matching_exists(&adj)
    }
}

fn perfect_matching_exists(adj: &[Vec<usize>]) -> bool {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], matched: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if matched[v].is_none_or(|w| augment(w, adj, seen, matched)) {
                matched[v] = Some(u);
                return true;
            }
        }
        false
    }
    let n = adj.len();
    let mut matched = vec![None; n];
    (0..n).all(|u| augment(u, adj, &mut vec![false; n], &mut matched))
}

/// `S` is the set of all word representatives (repeated for multiplicity),
/// tagged by last letter, with `π` the rotation action.
pub fn words_to_perm(m: &WordMultiset) -> Result<PartitionedPermutation> {
    if m.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let mut tags = Vec::with_capacity(m.total_dim());
    let mut perm = Vec::with_capacity(m.total_dim());
    for (w, mult) in m.iter() {
        let rep = w.representative();
        let len = rep.len();
        for _ in 0..mult {
            let base = tags.len();
            for j in 0..len {
                let rot = rep.rotate(j as i64)?;
                tags.push(rot.last().unwrap());
                perm.push(base + (j + 1) % len);
            }
        }
    }
    PartitionedPermutation::from_indexed(tags, perm)
}

/// See [`PartitionedPermutation::to_words`].
pub fn perm_to_words(p: &PartitionedPermutation) -> WordMultiset {
    p.to_words()
}

#[derive(Serialize, Deserialize)]
struct PermJson {
    elements: Vec<u64>,
    f: Vec<u64>,
    v: Vec<u64>,
    perm: BTreeMap<String, u64>,
}

impl Serialize for PartitionedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut elements = self.labels.clone();
        elements.sort_unstable();
        PermJson {
            elements,
            f: self.f_part(),
            v: self.v_part(),
            perm: self
                .labels
                .iter()
                .zip(&self.perm)
                .map(|(&a, &t)| (a.to_string(), self.labels[t]))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartitionedPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PermJson::deserialize(d)?;
        let mut tag_of: HashMap<u64, Letter> = HashMap::new();
        for (part, letter) in [(&raw.f, Letter::F), (&raw.v, Letter::V)] {
            for &a in part {
                if tag_of.insert(a, letter).is_some() {
                    return Err(D::Error::custom(format!("element {a} tagged twice")));
                }
            }
        }
        if tag_of.len() != raw.elements.len() {
            return Err(D::Error::custom("partition does not cover the elements"));
        }
        let index: HashMap<u64, usize> =
            raw.elements.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut tags = Vec::with_capacity(raw.elements.len());
        let mut perm = Vec::with_capacity(raw.elements.len());
        for &a in &raw.elements {
            tags.push(*tag_of.get(&a).ok_or_else(|| D::Error::custom(format!("untagged {a}")))?);
            let t = raw
                .perm
                .get(&a.to_string())
                .ok_or_else(|| D::Error::custom(format!("no image for {a}")))?;
            perm.push(*index.get(t).ok_or_else(|| D::Error::custom(format!("unknown image {t}")))?);
        }
        PartitionedPermutation::with_labels(raw.elements, tags, perm).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::multisets_of_dim;
    use Letter::{F, V};

    fn fermat_2_9() -> PartitionedPermutation {
        let labels: Vec<u64> = (1..9).collect();
        let tags = labels.iter().map(|&a| if 2 * a > 9 { F } else { V }).collect();
        let perm = labels.iter().map(|&a| ((2 * a % 9) - 1) as usize).collect();
        PartitionedPermutation::with_labels(labels, tags, perm).unwrap()
    }

    #[test]
    fn orbit_words_for_fermat_2_9() {
        let p = fermat_2_9();
        assert_eq!(p.orbit_word(1).unwrap().to_string(), "fffvvv");
        assert_eq!(p.orbit_word(3).unwrap().to_string(), "fv");
        assert_eq!(p.orbit_word(9), Err(Error::UnknownElement(9)));
        assert_eq!(p.to_words().to_string(), "fv,fffvvv");
        assert!(p.is_admissible());
        assert!(p.is_self_dual());
    }

    #[test]
    fn small_cases() {
        let fixed = PartitionedPermutation::from_indexed(vec![F], vec![0]).unwrap();
        assert_eq!(fixed.orbit_word(0).unwrap().to_string(), "f");
        assert_eq!(fixed.to_words().to_string(), "f");
        assert!(fixed.is_admissible());
        let ff = PartitionedPermutation::from_indexed(vec![F, F], vec![1, 0]).unwrap();
        assert!(!ff.is_admissible());
        assert!(PartitionedPermutation::from_indexed(vec![F, F], vec![0, 0]).is_err());
    }

    #[test]
    fn gamma_example_words() {
        // Γ = {0..4}, Γ_f = {2,4}, Π = (0 2)(1 3 4)
        let tags = vec![V, V, F, V, F];
        let perm = vec![2, 3, 0, 4, 1];
        let p = PartitionedPermutation::from_indexed(tags, perm).unwrap();
        assert_eq!(p.orbit_word(0).unwrap().to_string(), "fv");
        assert_eq!(p.orbit_word(1).unwrap().to_string(), "fvv");
        assert_eq!(p.orbit_word(2).unwrap().to_string(), "vf");
        assert_eq!(p.orbit_word(3).unwrap().to_string(), "vfv");
        assert_eq!(p.orbit_word(4).unwrap().to_string(), "vvf");
        assert_eq!(p.to_words().to_string(), "fv,fvv");
    }

    #[test]
    fn words_to_perm_examples() {
        let p = words_to_perm(&"fv".parse().unwrap()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.f_part().len(), 1);
        assert_eq!(p.image(p.image(0).unwrap()).unwrap(), 0);
        assert_ne!(p.image(0).unwrap(), 0);

        let p = words_to_perm(&"f^2".parse().unwrap()).unwrap();
        assert_eq!(p.f_part(), vec![0, 1]);
        assert_eq!(p.orbits().len(), 2);

        let p = words_to_perm(&"fffvvv".parse().unwrap()).unwrap();
        assert_eq!((p.len(), p.f_part().len(), p.orbits().len()), (6, 3, 1));
        assert!(words_to_perm(&WordMultiset::new()).is_err());
    }

    #[test]
    fn round_trip_and_relabel_invariance() {
        for dim in 1..=7 {
            for m in multisets_of_dim(dim) {
                let p = words_to_perm(&m).unwrap();
                assert_eq!(p.len(), m.total_dim());
                assert_eq!(perm_to_words(&p), m);
                let q = p.relabel(|a| 1000 - 7 * a).unwrap();
                assert_eq!(perm_to_words(&q), m);
                assert!(q.is_isomorphic(&words_to_perm(&perm_to_words(&q)).unwrap()));
                // two independent self-duality tests agree
                assert_eq!(p.is_self_dual(), m.is_self_dual(), "{m}");
            }
        }
    }

    #[test]
    fn non_primitive_words_give_inadmissible_data() {
        let p = words_to_perm(&"fvfv".parse().unwrap()).unwrap();
        assert!(!p.is_admissible());
        assert_eq!(p.len(), 4);
        assert_eq!(perm_to_words(&p).to_string(), "fvfv");
    }

    #[test]
    fn json_round_trip() {
        let p = fermat_2_9();
        let js = serde_json::to_string(&p).unwrap();
        assert!(js.contains("\"perm\":{"));
        let back: PartitionedPermutation = serde_json::from_str(&js).unwrap();
        assert!(back.is_isomorphic(&p));
        assert_eq!(back.image(5).unwrap(), 1);
        let bad = r#"{"elements":[1,2],"f":[1],"v":[],"perm":{"1":2,"2":1}}"#;
        assert!(serde_json::from_str::<PartitionedPermutation>(bad).is_err());
    }
}
