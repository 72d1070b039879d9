//! Kraft modules `M(w)` and their direct sums, with monomial `F` and `V`.
//!
//! Scalars never enter: every module here has `F` and `V` sending basis
//! vectors to basis vectors or to zero, so images and preimages of
//! coordinate subspaces are computed on index sets.

use std::fmt;

use crate::error::{Error, Result};
use crate::permdata::PartitionedPermutation;
use crate::words::{Letter, Word, WordMultiset};

/// Basis vector `e(i, j, c)`: word index `i` (from 1), position `j` modulo
/// the word length, copy `c` (from 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    pub word: usize,
    pub pos: usize,
    pub copy: usize,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({},{},{})", self.word, self.pos, self.copy)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KraftModule {
    labels: Vec<BasisLabel>,
    f_map: Vec<Option<usize>>,
    v_map: Vec<Option<usize>>,
    source: Option<WordMultiset>,
}

impl KraftModule {
    /// A module given directly by its monomial maps on basis indices `0..dim`.
    /// Both maps must be injective where defined and satisfy the `BT_1`
    /// condition.
    pub fn from_maps(f_map: Vec<Option<usize>>, v_map: Vec<Option<usize>>) -> Result<KraftModule> {
        let dim = f_map.len();
        if v_map.len() != dim {
            return Err(Error::InvalidModule("F and V have different domains".into()));
        }
        let labels = (0..dim).map(|j| BasisLabel { word: 0, pos: j, copy: 1 }).collect();
        let m = KraftModule { labels, f_map, v_map, source: None };
        m.check_bt1()?;
        Ok(m)
    }

    /// `M(w)` for a single word, using `w` itself (not its cyclic
    /// representative) to number the basis.
    pub fn from_word(w: &Word) -> Result<KraftModule> {
        let mut m = KraftModule::empty();
        m.push_word(w, 1, 1)?;
        m.check_bt1()?;
        Ok(m)
    }

    fn empty() -> KraftModule {
        KraftModule { labels: Vec::new(), f_map: Vec::new(), v_map: Vec::new(), source: None }
    }

    fn push_word(&mut self, w: &Word, word_idx: usize, copies: usize) -> Result<()> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        let len = w.len();
        for copy in 1..=copies {
            let base = self.labels.len();
            self.labels
                .extend((0..len).map(|pos| BasisLabel { word: word_idx, pos, copy }));
            self.f_map.resize(base + len, None);
            self.v_map.resize(base + len, None);
            for j in 0..len {
                let next = base + (j + 1) % len;
                match w.u(j) {
                    Letter::F => self.f_map[base + j] = Some(next),
                    Letter::V => self.v_map[next] = Some(base + j),
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn source(&self) -> Option<&WordMultiset> {
        self.source.as_ref()
    }

    pub fn f(&self, e: usize) -> Option<usize> {
        self.f_map[e]
    }

    pub fn v(&self, e: usize) -> Option<usize> {
        self.v_map[e]
    }

    /// `F(N)` for the coordinate subspace spanned by `sub` (sorted indices).
    pub fn image_f(&self, sub: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = sub.iter().filter_map(|&e| self.f_map[e]).collect();
        out.sort_unstable();
        out
    }

    /// `V^{-1}(N)`: basis vectors killed by `V` or sent into `N`.
    pub fn preimage_v(&self, sub: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.dim()];
        for &e in sub {
            inside[e] = true;
        }
        (0..self.dim())
            .filter(|&e| self.v_map[e].is_none_or(|t| inside[t]))
            .collect()
    }

    /// Checks injectivity of `F`, `V` on their supports, `Ker V = Im F` and
    /// `Ker F = Im V`.
    pub fn check_bt1(&self) -> Result<()> {
        let dim = self.dim();
        let image = |map: &[Option<usize>], name: &str| -> Result<Vec<bool>> {
            let mut hit = vec![false; dim];
            for t in map.iter().flatten() {
                if *t >= dim {
                    return Err(Error::InvalidModule(format!("{name} leaves the basis")));
                }
                if std::mem::replace(&mut hit[*t], true) {
                    return Err(Error::InvalidModule(format!("{name} is not injective on its support")));
                }
            }
            Ok(hit)
        };
        let im_f = image(&self.f_map, "F")?;
        let im_v = image(&self.v_map, "V")?;
        for e in 0..dim {
            if im_f[e] != self.v_map[e].is_none() {
                return Err(Error::InvalidModule(format!("Im F != Ker V at basis vector {e}")));
            }
            if im_v[e] != self.f_map[e].is_none() {
                return Err(Error::InvalidModule(format!("Im V != Ker F at basis vector {e}")));
            }
        }
        Ok(())
    }

    /// Partitioned permutation on the basis: `e` is `f`-tagged when
    /// `F(e) != 0`, and `π(e)` is `F(e)` or else the unique `e'` with `V(e') = e`.
    pub fn permutation_data(&self) -> Result<PartitionedPermutation> {
        let dim = self.dim();
        let mut v_inverse = vec![None; dim];
        for (src, t) in self.v_map.iter().enumerate() {
            if let Some(t) = t {
                v_inverse[*t] = Some(src);
            }
        }
        let mut tags = Vec::with_capacity(dim);
        let mut perm = Vec::with_capacity(dim);
        for e in 0..dim {
            match (self.f_map[e], v_inverse[e]) {
                (Some(t), None) => {
                    tags.push(Letter::F);
                    perm.push(t);
                }
                (None, Some(t)) => {
                    tags.push(Letter::V);
                    perm.push(t);
                }
                _ => return Err(Error::InvalidModule(format!("basis vector {e} needs exactly one of an F-image and a V-preimage"))),
            }
        }
        PartitionedPermutation::from_indexed(tags, perm)
    }

    /// One line per basis vector: `e(i,j,c): F-> ... ; V-> ...`.
    pub fn dump(&self) -> String {
        let target = |t: Option<usize>| match t {
            Some(t) => self.labels[t].to_string(),
            None => "0".to_string(),
        };
        let mut out = String::new();
        for (e, label) in self.labels.iter().enumerate() {
            out.push_str(&format!(
                "{label}: F-> {} ; V-> {}\n",
                target(self.f_map[e]),
                target(self.v_map[e])
            ));
        }
        out
    }
}

/// `⊕ M(w_i)^{m_i}` using canonical cyclic representatives, words numbered
/// from 1 in multiset order.
pub fn build_kraft(m: &WordMultiset) -> Result<KraftModule> {
    if m.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let mut module = KraftModule::empty();
    for (i, (w, mult)) in m.iter().enumerate() {
        module.push_word(w.representative(), i + 1, mult)?;
    }
    module.source = Some(m.clone());
    module.check_bt1()?;
    Ok(module)
}

/// Generators `E_i = e_{I(i)}` with relations `F^{m_i} E_{i-1} = V^{n_i} E_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    /// The rotation of the input used for the exponents.
    pub word: Word,
    /// `[(m_1, n_1), ..., (m_r, n_r)]`.
    pub exponents: Vec<(usize, usize)>,
    /// `I(0), ..., I(r-1)` as basis positions of `M(word)`.
    pub generator_positions: Vec<usize>,
}

impl Presentation {
    pub fn generators(&self) -> usize {
        self.exponents.len()
    }
}

pub fn generators_relations(w: &Word) -> Result<Presentation> {
    let exponents = w.exp_notation()?;
    let mut letters = Vec::with_capacity(w.len());
    for &(m, n) in exponents.iter().rev() {
        letters.extend(std::iter::repeat_n(Letter::V, n));
        letters.extend(std::iter::repeat_n(Letter::F, m));
    }
    let generator_positions = exponents
        .iter()
        .scan(0usize, |acc, &(m, n)| {
            let here = *acc;
            *acc += m + n;
            Some(here)
        })
        .collect();
    Ok(Presentation { word: Word::from_letters(letters), exponents, generator_positions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::multisets_of_dim;

    fn ms(s: &str) -> WordMultiset {
        s.parse().unwrap()
    }

    #[test]
    fn m11_structure() {
        let m = build_kraft(&ms("fv")).unwrap();
        assert_eq!(m.dim(), 2);
        // fv = u_1 u_0 with u_0 = v, u_1 = f
        assert_eq!(m.f(1), Some(0));
        assert_eq!(m.v(1), Some(0));
        assert_eq!(m.f(0), None);
        assert_eq!(m.v(0), None);
    }

    #[test]
    fn etale_and_multiplicative() {
        let m = build_kraft(&ms("f")).unwrap();
        assert_eq!((m.dim(), m.f(0), m.v(0)), (1, Some(0), None));
        let m = build_kraft(&ms("v")).unwrap();
        assert_eq!((m.dim(), m.f(0), m.v(0)), (1, None, Some(0)));
    }

    #[test]
    fn dump_format() {
        let m = build_kraft(&ms("fv")).unwrap();
        assert_eq!(m.dump(), "e(1,0,1): F-> 0 ; V-> 0\ne(1,1,1): F-> e(1,0,1) ; V-> e(1,0,1)\n");
    }

    #[test]
    fn bt1_condition_on_all_small_multisets() {
        for dim in 1..=12 {
            for m in multisets_of_dim(dim) {
                let k = build_kraft(&m).unwrap();
                assert_eq!(k.dim(), m.total_dim());
                k.check_bt1().unwrap();
                let f_tagged = k.permutation_data().unwrap().f_part().len();
                if m.is_self_dual() {
                    assert_eq!(k.dim(), 2 * f_tagged, "{m}");
                }
            }
        }
    }

    #[test]
    fn equal_letter_counts_do_not_imply_self_duality() {
        let m = ms("ffvfvv");
        let k = build_kraft(&m).unwrap();
        assert_eq!(k.dim(), 2 * k.permutation_data().unwrap().f_part().len());
        assert!(!m.is_self_dual());
    }

    #[test]
    fn permutation_data_recovers_words() {
        for m in multisets_of_dim(6) {
            let k = build_kraft(&m).unwrap();
            assert_eq!(k.permutation_data().unwrap().to_words(), m);
        }
    }

    #[test]
    fn rejects_bad_maps() {
        // F and V both nonzero on the same vector
        assert!(KraftModule::from_maps(vec![Some(0)], vec![Some(0)]).is_err());
        // F not injective
        assert!(KraftModule::from_maps(vec![Some(0), Some(0)], vec![None, None]).is_err());
        assert!(KraftModule::from_maps(vec![Some(1)], vec![None]).is_err());
    }

    #[test]
    fn seven_dimensional_example_is_bt1() {
        // e1..e7 as indices 0..6
        let f = vec![None, None, None, Some(0), Some(1), None, Some(2)];
        let v = vec![None, None, None, Some(0), Some(1), Some(2), Some(5)];
        let m = KraftModule::from_maps(f, v).unwrap();
        assert_eq!(m.permutation_data().unwrap().to_words().to_string(), "fv^2,fvv");
    }

    fn check_relations(p: &Presentation) {
        let module = KraftModule::from_word(&p.word).unwrap();
        let r = p.generators();
        for i in 1..=r {
            let (m, n) = p.exponents[i - 1];
            let mut a = p.generator_positions[i - 1];
            for _ in 0..m {
                a = module.f(a).expect("F^m E_{i-1} is a basis vector");
            }
            let mut b = p.generator_positions[i % r];
            for _ in 0..n {
                b = module.v(b).expect("V^n E_i is a basis vector");
            }
            assert_eq!(a, b, "relation {i} of {}", p.word);
        }
    }

    #[test]
    fn generators_and_relations_examples() {
        let p = generators_relations(&"ffvv".parse().unwrap()).unwrap();
        assert_eq!((p.generators(), p.exponents.clone()), (1, vec![(2, 2)]));
        check_relations(&p);
        let p = generators_relations(&"fv".parse().unwrap()).unwrap();
        assert_eq!(p.exponents, vec![(1, 1)]);
        check_relations(&p);
        let p = generators_relations(&"vvffvvvfvffff".parse().unwrap()).unwrap();
        assert_eq!(p.exponents, vec![(4, 1), (1, 3), (2, 2)]);
        assert_eq!(p.generator_positions, vec![0, 5, 9]);
        check_relations(&p);
        assert!(generators_relations(&"ff".parse().unwrap()).is_err());
        assert!(generators_relations(&"fvfv".parse().unwrap()).is_err());
    }

    #[test]
    fn relations_hold_for_every_mixed_primitive_word() {
        for len in 2..=10 {
            for w in crate::words::primitive_cyclic_words(len) {
                check_relations(&generators_relations(w.representative()).unwrap());
            }
        }
    }
}
