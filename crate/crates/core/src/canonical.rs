//! Canonical filtrations and canonical types `(r, s, φ, ν, ρ)`.
//!
//! Two independent routes produce a canonical type from a multiset of
//! cyclic words:
//!
//! * [`canonical_filtration_oracle`] builds the Kraft module and closes
//!   `{0, M}` under `N ↦ F(N)` and `N ↦ V⁻¹(N)` on coordinate subspaces;
//! * [`words_to_canonical`] sorts the powered rotations of the words.
//!
//! The map back to partitioned permutations and the duality formulas live
//! here as well.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kraft::KraftModule;
use crate::permdata::PartitionedPermutation;
use crate::words::{Letter, Word, WordMultiset};

/// Canonical type data. Construct with [`CanonicalType::new`], which checks
/// all five axioms.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawType", into = "RawType")]
pub struct CanonicalType {
    s: usize,
    r: usize,
    phi: Vec<usize>,
    nu: Vec<usize>,
    rho: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawType {
    s: usize,
    r: usize,
    phi: Vec<usize>,
    nu: Vec<usize>,
    rho: Vec<usize>,
}

impl TryFrom<RawType> for CanonicalType {
    type Error = Error;

    fn try_from(raw: RawType) -> Result<Self> {
        CanonicalType::new(raw.s, raw.r, raw.phi, raw.nu, raw.rho)
    }
}

impl From<CanonicalType> for RawType {
    fn from(ct: CanonicalType) -> Self {
        RawType { s: ct.s, r: ct.r, phi: ct.phi, nu: ct.nu, rho: ct.rho }
    }
}

/// Which condition a candidate canonical type breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `s > 0`, `0 <= r <= s` and tables of length `s + 1`.
    Shape,
    /// `φ`, `ν` monotone and surjective onto `{0..r}`, `{r..s}`.
    Monotone,
    /// `ρ` strictly increasing from 0.
    Dimensions,
    /// `ν(i+1) > ν(i)` iff `φ(i+1) = φ(i)`.
    Exclusive,
    /// Block sizes are transported by `φ` and `ν`.
    Transport,
    /// Every index in `{1..s}` is reachable from `s`.
    Reachable,
}

impl CanonicalType {
    pub fn new(s: usize, r: usize, phi: Vec<usize>, nu: Vec<usize>, rho: Vec<usize>) -> Result<Self> {
        let ct = CanonicalType { s, r, phi, nu, rho };
        match ct.first_failed_axiom() {
            None => Ok(ct),
            Some(ax) => Err(Error::InvalidCanonicalType(format!("axiom {ax:?} fails"))),
        }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    pub fn rho(&self) -> &[usize] {
        &self.rho
    }

    /// Block sizes `μ(i) = ρ(i+1) - ρ(i)` for `0 <= i < s`.
    pub fn mu(&self) -> Vec<usize> {
        self.rho.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `dim M = ρ(s)`.
    pub fn dim(&self) -> usize {
        self.rho[self.s]
    }

    /// Returns the first axiom the data violates, if any.
    pub fn first_failed_axiom(&self) -> Option<Axiom> {
        let (s, r) = (self.s, self.r);
        if s == 0 || r > s || self.phi.len() != s + 1 || self.nu.len() != s + 1 || self.rho.len() != s + 1 {
            return Some(Axiom::Shape);
        }
        let monotone_onto = |f: &[usize], lo: usize, hi: usize| {
            f.windows(2).all(|w| w[0] <= w[1])
                && f[0] == lo
                && f[s] == hi
                && f.windows(2).all(|w| w[1] - w[0] <= 1)
        };
        if !monotone_onto(&self.phi, 0, r) || !monotone_onto(&self.nu, r, s) {
            return Some(Axiom::Monotone);
        }
        if self.rho[0] != 0 || self.rho.windows(2).any(|w| w[0] >= w[1]) {
            return Some(Axiom::Dimensions);
        }
        for i in 0..s {
            if (self.nu[i + 1] > self.nu[i]) != (self.phi[i + 1] == self.phi[i]) {
                return Some(Axiom::Exclusive);
            }
        }
        let mu = self.mu();
        for i in 0..s {
            let target = if self.nu[i + 1] > self.nu[i] { self.nu[i] } else { self.phi[i] };
            if mu[i] != mu[target] {
                return Some(Axiom::Transport);
            }
        }
        let mut reached = vec![false; s + 1];
        let mut stack = vec![s];
        reached[s] = true;
        while let Some(i) = stack.pop() {
            for j in [self.phi[i], self.nu[i]] {
                if !reached[j] {
                    reached[j] = true;
                    stack.push(j);
                }
            }
        }
        if !reached[1..].iter().all(|&x| x) {
            return Some(Axiom::Reachable);
        }
        None
    }

    /// The dual type: `s* = s`, `r* = s - r`, `φ*(i) = s - ν(s-i)`,
    /// `ν*(i) = s - φ(s-i)`, `ρ*(i) = ρ(s) - ρ(s-i)`.
    pub fn dual(&self) -> CanonicalType {
        let s = self.s;
        CanonicalType {
            s,
            r: s - self.r,
            phi: (0..=s).map(|i| s - self.nu[s - i]).collect(),
            nu: (0..=s).map(|i| s - self.phi[s - i]).collect(),
            rho: (0..=s).map(|i| self.rho[s] - self.rho[s - i]).collect(),
        }
    }

    /// `s = 2r`, `φ(i) + ν(s-i) = s` and `ρ(i) + ρ(s-i) = ρ(s)`.
    pub fn is_self_dual(&self) -> bool {
        let s = self.s;
        s == 2 * self.r
            && (0..=s).all(|i| self.phi[i] + self.nu[s - i] == s)
            && (0..=s).all(|i| self.rho[i] + self.rho[s - i] == self.rho[s])
    }
}

impl fmt::Debug for CanonicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CanonicalType {{ s: {}, r: {}, phi: {:?}, nu: {:?}, rho: {:?} }}",
            self.s, self.r, self.phi, self.nu, self.rho
        )
    }
}

impl fmt::Display for CanonicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "s = {}, r = {}", self.s, self.r)?;
        let row = |name: &str, vals: &[usize]| {
            let cells: Vec<String> = vals.iter().map(|v| format!("{v:>3}")).collect();
            format!("{name:>6} |{}", cells.join(""))
        };
        writeln!(f, "{}", row("i", &(0..=self.s).collect::<Vec<_>>()))?;
        writeln!(f, "{}", row("phi(i)", &self.phi))?;
        writeln!(f, "{}", row("nu(i)", &self.nu))?;
        write!(f, "{}", row("rho(i)", &self.rho))
    }
}

/// A chain of coordinate subspaces `0 = M_0 ⊊ ... ⊊ M_s = M`, each a sorted
/// list of basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    steps: Vec<Vec<usize>>,
}

impl Filtration {
    pub fn steps(&self) -> &[Vec<usize>] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Closes `{0, M}` under `F(-)` and `V⁻¹(-)` and reads off the canonical type.
pub fn canonical_filtration_oracle(m: &KraftModule) -> Result<(Filtration, CanonicalType)> {
    let dim = m.dim();
    if dim == 0 {
        return Err(Error::InvalidModule("zero module".into()));
    }
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = vec![Vec::new(), (0..dim).collect::<Vec<_>>()];
    found.extend(queue.iter().cloned());
    while let Some(sub) = queue.pop() {
        for next in [m.image_f(&sub), m.preimage_v(&sub)] {
            if !found.contains(&next) {
                found.insert(next.clone());
                queue.push(next);
            }
        }
    }
    // a chain has at most dim + 1 members
    if found.len() > dim + 1 {
        return Err(Error::ChainNotTotal);
    }
    let mut steps: Vec<Vec<usize>> = found.into_iter().collect();
    steps.sort_by_key(Vec::len);
    for pair in steps.windows(2) {
        let bigger: HashSet<usize> = pair[1].iter().copied().collect();
        if pair[0].len() == pair[1].len() || !pair[0].iter().all(|e| bigger.contains(e)) {
            return Err(Error::ChainNotTotal);
        }
    }
    let position: HashMap<&Vec<usize>, usize> = steps.iter().enumerate().map(|(i, st)| (st, i)).collect();
    let lookup = |sub: Vec<usize>| position.get(&sub).copied().ok_or(Error::ChainNotTotal);
    let s = steps.len() - 1;
    let phi = steps.iter().map(|st| lookup(m.image_f(st))).collect::<Result<Vec<_>>>()?;
    let nu = steps.iter().map(|st| lookup(m.preimage_v(st))).collect::<Result<Vec<_>>>()?;
    let rho = steps.iter().map(Vec::len).collect();
    let ct = CanonicalType::new(s, phi[s], phi, nu, rho)?;
    Ok((Filtration { steps }, ct))
}

/// The sorted distinct words `ω_0 < ... < ω_{s-1}` with multiplicities `μ(t)`.
pub type BlockWords = Vec<(Word, usize)>;

/// Direct map from a multiset of (not necessarily primitive) cyclic words to
/// its canonical type: every rotation is powered to length
/// `l = lcm(lengths)` and the distinct results are sorted.
pub fn words_to_canonical(m: &WordMultiset) -> Result<(CanonicalType, BlockWords)> {
    if m.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let ell = m.iter().fold(1usize, |acc, (w, _)| acc.lcm(&w.len()));
    let mut sigma: BTreeMap<Word, usize> = BTreeMap::new();
    for (w, mult) in m.iter() {
        let power = ell / w.len();
        for rot in w.representative().rotations() {
            *sigma.entry(rot.pow(power)).or_insert(0) += mult;
        }
    }
    let blocks: BlockWords = sigma.into_iter().collect();
    Ok((canonical_from_blocks(&blocks)?, blocks))
}

/// Reads `(r, s, φ, ν, ρ)` off sorted equal-length block words.
pub fn canonical_from_blocks(blocks: &[(Word, usize)]) -> Result<CanonicalType> {
    let s = blocks.len();
    let ends_f: Vec<bool> = blocks.iter().map(|(w, _)| w.last() == Some(Letter::F)).collect();
    let r = ends_f.iter().filter(|&&b| b).count();
    let mut phi = vec![0; s + 1];
    let mut nu = vec![r; s + 1];
    let mut rho = vec![0; s + 1];
    for t in 0..s {
        phi[t + 1] = phi[t] + usize::from(ends_f[t]);
        nu[t + 1] = nu[t] + usize::from(!ends_f[t]);
        rho[t + 1] = rho[t] + blocks[t].1;
    }
    CanonicalType::new(s, r, phi, nu, rho)
}

/// Partitioned permutation on `Γ = {0..s-1}`: `Π(i) = φ(i)` on
/// `Γ_f = {φ(i+1) > φ(i)}` and `Π(i) = ν(i)` on `Γ_v`.
pub fn canonical_to_gamma(ct: &CanonicalType) -> Result<PartitionedPermutation> {
    ct.first_failed_axiom()
        .map_or(Ok(()), |ax| Err(Error::InvalidCanonicalType(format!("axiom {ax:?} fails"))))?;
    let (tags, perm): (Vec<Letter>, Vec<usize>) = (0..ct.s)
        .map(|i| {
            if ct.phi[i + 1] > ct.phi[i] {
                (Letter::F, ct.phi[i])
            } else {
                (Letter::V, ct.nu[i])
            }
        })
        .unzip();
    PartitionedPermutation::from_indexed(tags, perm)
}

/// Expands `Γ` by the block sizes: element `e_{i,j}` (`1 <= j <= μ(i)`) gets
/// label `ρ(i) + j - 1` and `π(e_{i,j}) = e_{Π(i),j}`.
pub fn canonical_to_perm(ct: &CanonicalType) -> Result<PartitionedPermutation> {
    let gamma = canonical_to_gamma(ct)?;
    let mu = ct.mu();
    let mut tags = Vec::with_capacity(ct.dim());
    let mut perm = Vec::with_capacity(ct.dim());
    for i in 0..ct.s {
        let tag = gamma.tag(i as u64)?;
        let target = gamma.image(i as u64)? as usize;
        for j in 0..mu[i] {
            tags.push(tag);
            perm.push(ct.rho[target] + j);
        }
    }
    PartitionedPermutation::from_indexed(tags, perm)
}

/// See [`CanonicalType::dual`].
pub fn dual_canonical(ct: &CanonicalType) -> CanonicalType {
    ct.dual()
}

/// Self-duality of a word multiset, decided on the words.
pub fn is_self_dual(m: &WordMultiset) -> bool {
    m.is_self_dual()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kraft::build_kraft;
    use crate::words::multisets_of_dim;

    fn ms(s: &str) -> WordMultiset {
        s.parse().unwrap()
    }

    fn seven_dim() -> KraftModule {
        let f = vec![None, None, None, Some(0), Some(1), None, Some(2)];
        let v = vec![None, None, None, Some(0), Some(1), Some(2), Some(5)];
        KraftModule::from_maps(f, v).unwrap()
    }

    #[test]
    fn oracle_on_seven_dimensional_example() {
        let (filt, ct) = canonical_filtration_oracle(&seven_dim()).unwrap();
        assert_eq!((ct.s(), ct.r()), (5, 2));
        assert_eq!(ct.rho(), &[0, 2, 3, 5, 6, 7]);
        assert_eq!(ct.phi(), &[0, 0, 0, 1, 1, 2]);
        assert_eq!(ct.nu(), &[2, 3, 4, 4, 5, 5]);
        // e1..e7 are indices 0..6
        assert_eq!(filt.steps()[1], vec![0, 1]);
        assert_eq!(filt.steps()[2], vec![0, 1, 2]);
        assert_eq!(filt.steps()[4], vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn oracle_small_examples() {
        let (_, ct) = canonical_filtration_oracle(&build_kraft(&ms("f")).unwrap()).unwrap();
        assert_eq!((ct.s(), ct.r(), ct.phi(), ct.nu(), ct.rho()), (1, 1, &[0, 1][..], &[1, 1][..], &[0, 1][..]));
        let (_, ct) = canonical_filtration_oracle(&build_kraft(&ms("fv,fvfv")).unwrap()).unwrap();
        assert_eq!((ct.s(), ct.r()), (2, 1));
        assert_eq!((ct.phi(), ct.nu(), ct.rho()), (&[0, 0, 1][..], &[1, 2, 2][..], &[0, 3, 6][..]));
    }

    #[test]
    fn words_route_worked_example() {
        let (ct, blocks) = words_to_canonical(&ms("fv,fvfv")).unwrap();
        let words: Vec<String> = blocks.iter().map(|(w, k)| format!("{w}:{k}")).collect();
        assert_eq!(words, vec!["fvfv:3", "vfvf:3"]);
        assert_eq!((ct.s(), ct.r(), ct.mu()), (2, 1, vec![3, 3]));
        assert_eq!((ct.phi(), ct.nu(), ct.rho()), (&[0, 0, 1][..], &[1, 2, 2][..], &[0, 3, 6][..]));
        let (ct, _) = words_to_canonical(&ms("f")).unwrap();
        assert_eq!((ct.s(), ct.r(), ct.mu()), (1, 1, vec![1]));
        assert!(words_to_canonical(&WordMultiset::new()).is_err());
    }

    #[test]
    fn words_route_on_seven_dimensional_words() {
        let (ct, _) = words_to_canonical(&ms("fv^2,fvv")).unwrap();
        let (_, oracle) = canonical_filtration_oracle(&seven_dim()).unwrap();
        assert_eq!(ct, oracle);
    }

    #[test]
    fn routes_agree_on_fermat_2_9_words() {
        let m = ms("fv,fffvvv");
        let (direct, _) = words_to_canonical(&m).unwrap();
        let (_, oracle) = canonical_filtration_oracle(&build_kraft(&m).unwrap()).unwrap();
        assert_eq!(direct, oracle);
    }

    #[test]
    fn gamma_permutation_for_seven_dim_type() {
        let (_, ct) = canonical_filtration_oracle(&seven_dim()).unwrap();
        let g = canonical_to_gamma(&ct).unwrap();
        assert_eq!(g.f_part(), vec![2, 4]);
        assert_eq!(g.v_part(), vec![0, 1, 3]);
        let images: Vec<u64> = (0..5).map(|i| g.image(i).unwrap()).collect();
        assert_eq!(images, vec![2, 3, 0, 4, 1]);
        assert_eq!(ct.mu(), vec![2, 1, 2, 1, 1]);
        let s = canonical_to_perm(&ct).unwrap();
        assert_eq!(s.len(), 7);
        assert!(s.is_admissible());
        assert_eq!(s.to_words().to_string(), "fv^2,fvv");
    }

    #[test]
    fn gamma_permutation_small_types() {
        let (ct, _) = words_to_canonical(&ms("f")).unwrap();
        let s = canonical_to_perm(&ct).unwrap();
        assert_eq!((s.len(), s.f_part()), (1, vec![0]));
        assert_eq!(s.image(0).unwrap(), 0);
        let (ct, _) = words_to_canonical(&ms("fv,fvfv")).unwrap();
        let g = canonical_to_gamma(&ct).unwrap();
        assert_eq!((g.f_part(), g.v_part()), (vec![1], vec![0]));
        assert_eq!((g.image(0).unwrap(), g.image(1).unwrap()), (1, 0));
        let s = canonical_to_perm(&ct).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.to_words().to_string(), "fv^3");
    }

    #[test]
    fn rejects_oort_counterexample() {
        // properties (1)-(4) hold, (5) does not
        let err = CanonicalType::new(2, 0, vec![0, 0, 0], vec![0, 1, 2], vec![0, 1, 2]);
        assert!(err.is_err());
        let raw = CanonicalType { s: 2, r: 0, phi: vec![0, 0, 0], nu: vec![0, 1, 2], rho: vec![0, 1, 2] };
        assert_eq!(raw.first_failed_axiom(), Some(Axiom::Reachable));
        // the true canonical type of M(v)^2
        let (ct, _) = words_to_canonical(&ms("v^2")).unwrap();
        assert_eq!((ct.s(), ct.r(), ct.phi(), ct.nu(), ct.rho()), (1, 0, &[0, 0][..], &[0, 1][..], &[0, 2][..]));
        let (_, oracle) = canonical_filtration_oracle(&build_kraft(&ms("v^2")).unwrap()).unwrap();
        assert_eq!(ct, oracle);
    }

    #[test]
    fn axiom_violations_are_named() {
        let bad = |s, r, phi: &[usize], nu: &[usize], rho: &[usize]| {
            CanonicalType { s, r, phi: phi.to_vec(), nu: nu.to_vec(), rho: rho.to_vec() }.first_failed_axiom()
        };
        assert_eq!(bad(0, 0, &[0], &[0], &[0]), Some(Axiom::Shape));
        assert_eq!(bad(1, 1, &[0, 0], &[1, 1], &[0, 1]), Some(Axiom::Monotone));
        assert_eq!(bad(1, 1, &[0, 1], &[1, 1], &[0, 0]), Some(Axiom::Dimensions));
        assert_eq!(bad(2, 1, &[0, 1, 1], &[1, 2, 2], &[0, 1, 2]), Some(Axiom::Exclusive));
        assert_eq!(bad(2, 1, &[0, 0, 1], &[1, 2, 2], &[0, 1, 3]), Some(Axiom::Transport));
    }

    #[test]
    fn duality_examples() {
        let (f_type, _) = words_to_canonical(&ms("f")).unwrap();
        let (v_type, _) = words_to_canonical(&ms("v")).unwrap();
        assert_eq!(dual_canonical(&f_type), v_type);
        let (ct, _) = words_to_canonical(&ms("fv,fffvvv")).unwrap();
        assert!(ct.is_self_dual());
        assert!(is_self_dual(&ms("fv,fffvvv")));
        assert!(is_self_dual(&ms("ffvv")));
        assert!(!is_self_dual(&ms("ffv")));
        let (ct, _) = words_to_canonical(&ms("ffv")).unwrap();
        assert!(!ct.is_self_dual());
    }

    #[test]
    fn exhaustive_small_dimension_checks() {
        for dim in 1..=8 {
            for m in multisets_of_dim(dim) {
                let (direct, _) = words_to_canonical(&m).unwrap();
                let (_, oracle) = canonical_filtration_oracle(&build_kraft(&m).unwrap()).unwrap();
                assert_eq!(direct, oracle, "{m}");
                let dual = dual_canonical(&direct);
                assert!(dual.first_failed_axiom().is_none());
                assert_eq!(dual.dual(), direct);
                let (of_complement, _) = words_to_canonical(&m.complement()).unwrap();
                assert_eq!(dual, of_complement, "{m}");
                assert_eq!(direct.is_self_dual(), m.is_self_dual(), "{m}");
                assert_eq!(direct.is_self_dual(), direct == dual);
                let perm = canonical_to_perm(&direct).unwrap();
                assert!(perm.is_admissible());
                assert_eq!(perm.to_words(), m);
                // μ is constant on Π-orbits
                let gamma = canonical_to_gamma(&direct).unwrap();
                let mu = direct.mu();
                for i in 0..direct.s() {
                    assert_eq!(mu[i], mu[gamma.image(i as u64).unwrap() as usize]);
                }
            }
        }
    }

    #[test]
    fn non_primitive_inputs_retract() {
        for m in ["fvfv", "fv,fvfv", "ffvvffvv,f", "fff"] {
            let m = ms(m);
            let (ct, _) = words_to_canonical(&m).unwrap();
            let (_, oracle) = canonical_filtration_oracle(&build_kraft(&m).unwrap()).unwrap();
            assert_eq!(ct, oracle);
            assert_eq!(canonical_to_perm(&ct).unwrap().to_words(), m.primitive_retraction());
        }
    }

    #[test]
    fn json_schema() {
        let (ct, _) = words_to_canonical(&ms("fv")).unwrap();
        let js = serde_json::to_string(&ct).unwrap();
        assert_eq!(js, r#"{"s":2,"r":1,"phi":[0,0,1],"nu":[1,2,2],"rho":[0,1,2]}"#);
        assert_eq!(serde_json::from_str::<CanonicalType>(&js).unwrap(), ct);
        let bad = r#"{"s":2,"r":0,"phi":[0,0,0],"nu":[0,1,2],"rho":[0,1,2]}"#;
        assert!(serde_json::from_str::<CanonicalType>(bad).is_err());
    }
}
