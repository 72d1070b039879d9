//! Reports behind the `bt1kit` command line.

pub mod sweep;

use std::fmt::Write as _;

use bt1kit::canonical::{canonical_to_perm, words_to_canonical, CanonicalType};
use bt1kit::eo::{es_from_canonical, es_from_multiset, ElementarySequence};
use bt1kit::fermat::{build_spec, p2_eo, Variant};
use bt1kit::invariants::{invariants, InvariantBundle};
use bt1kit::permdata::PartitionedPermutation;
use bt1kit::words::WordMultiset;
use bt1kit::Result;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct EoReport {
    pub p: u64,
    pub d: u64,
    pub variant: Variant,
    pub ell: usize,
    pub genus: u64,
    pub es: ElementarySequence,
    pub words: WordMultiset,
    pub canonical: Option<CanonicalType>,
    pub invariants: InvariantBundle,
    pub ordinary: bool,
    pub superspecial: bool,
    /// `p = 2` only: the sequence `[0,1,1,2,2,...]` for comparison.
    pub p2_closed_form: Option<ElementarySequence>,
}

pub fn eo_report(p: u64, d: u64, full: bool) -> Result<EoReport> {
    let variant = if full { Variant::Full } else { Variant::Quotient };
    let spec = build_spec(p, d, variant)?;
    let words = spec.word_multiset()?;
    let (es, canonical) = if words.is_empty() {
        (ElementarySequence::empty(), None)
    } else {
        let (ct, _) = words_to_canonical(&words)?;
        (es_from_canonical(&ct)?, Some(ct))
    };
    let invariants = if words.is_empty() { InvariantBundle::trivial() } else { invariants(&words)? };
    let p2_closed_form = if p == 2 && !full && d > 1 { Some(p2_eo(d)?.0.to_es()?) } else { None };
    Ok(EoReport {
        p,
        d,
        variant,
        ell: spec.ell,
        genus: spec.genus(),
        ordinary: invariants.g > 0 && invariants.is_ordinary(),
        superspecial: invariants.g > 0 && invariants.is_superspecial(),
        es,
        words,
        canonical,
        invariants,
        p2_closed_form,
    })
}

fn invariant_line(b: &InvariantBundle) -> String {
    format!("g={} p_rank={} a={} s11={} u11={} sel_dim={}", b.g, b.p_rank, b.a, b.s11, b.u11, b.sel_dim)
}

impl EoReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let curve = match self.variant {
            Variant::Quotient => "y^d = x(1-x)",
            Variant::Full => "X^d + Y^d = 1",
        };
        let _ = writeln!(s, "curve: {curve}  p={} d={} ell={} genus={}", self.p, self.d, self.ell, self.genus);
        let _ = writeln!(s, "psi: {}", self.es);
        let _ = writeln!(s, "rle: {}  {}", self.es.rle(), self.es.rle().pretty());
        let _ = writeln!(s, "words: {{{}}}", self.words);
        if let Some(ct) = &self.canonical {
            let _ = writeln!(s, "canonical type: {ct}");
        }
        let _ = writeln!(s, "invariants: {}", invariant_line(&self.invariants));
        let mut tags = Vec::new();
        if self.ordinary {
            tags.push("ordinary");
        }
        if self.superspecial {
            tags.push("superspecial");
        }
        if !tags.is_empty() {
            let _ = writeln!(s, "{}", tags.join(", "));
        }
        if let Some(closed) = &self.p2_closed_form {
            let verdict = if *closed == self.es { "agrees" } else { "differs" };
            let _ = writeln!(s, "p=2 closed form: {closed} ({verdict})");
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub words: WordMultiset,
    pub dim: usize,
    pub canonical: CanonicalType,
    pub permutation: PartitionedPermutation,
    pub self_dual: bool,
    pub es: Option<ElementarySequence>,
    /// `None` when a word is not primitive.
    pub invariants: Option<InvariantBundle>,
}

pub fn classify(words: &WordMultiset) -> Result<ClassifyReport> {
    let (canonical, _) = words_to_canonical(words)?;
    let permutation = canonical_to_perm(&canonical)?;
    let self_dual = canonical.is_self_dual();
    let es = if self_dual { Some(es_from_multiset(words)?) } else { None };
    let invariants = if words.is_primitive() { Some(invariants(words)?) } else { None };
    Ok(ClassifyReport { words: words.clone(), dim: words.total_dim(), canonical, permutation, self_dual, es, invariants })
}

impl ClassifyReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "words: {{{}}}  dim={}", self.words, self.dim);
        let _ = writeln!(s, "canonical type: {}", self.canonical);
        let images: Vec<String> = self
            .permutation
            .labels()
            .iter()
            .map(|&a| format!("{a}->{}", self.permutation.image(a).unwrap_or(a)))
            .collect();
        let f: Vec<String> = self.permutation.f_part().iter().map(u64::to_string).collect();
        let _ = writeln!(s, "permutation: {}  S_f={{{}}}", images.join(" "), f.join(","));
        let _ = writeln!(s, "self-dual: {}", if self.self_dual { "yes" } else { "no" });
        if let Some(es) = &self.es {
            let _ = writeln!(s, "psi: {es}  rle: {}", es.rle());
        }
        if let Some(b) = &self.invariants {
            let _ = writeln!(s, "invariants: {}", invariant_line(b));
        }
        s
    }
}
