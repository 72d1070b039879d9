//! Range sweeps over `(p, d)`, evaluated in parallel and emitted in
//! `(p, d)` order.

use std::io::Write;

use bt1kit::fermat::{a_number_bound, build_spec, is_prime, Variant};
use bt1kit::invariants::invariants;
use bt1kit::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const JOBS_ENV: &str = "BT1KIT_JOBS";

pub const HEADER: [&str; 11] =
    ["p", "d", "ell", "genus", "p_rank", "a_number", "s11", "u11", "sel_dim", "eo_rle", "words"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: u64,
    pub d: u64,
    pub ell: usize,
    pub genus: u64,
    pub p_rank: usize,
    pub a_number: usize,
    pub s11: usize,
    pub u11: usize,
    pub sel_dim: usize,
    pub eo_rle: String,
    pub words: String,
}

impl SweepRow {
    pub fn compute(p: u64, d: u64) -> Result<SweepRow> {
        let spec = build_spec(p, d, Variant::Quotient)?;
        let m = spec.word_multiset()?;
        let b = invariants(&m)?;
        let (rl, _) = spec.eo_type()?;
        Ok(SweepRow {
            p,
            d,
            ell: spec.ell,
            genus: spec.genus(),
            p_rank: b.p_rank,
            a_number: b.a,
            s11: b.s11,
            u11: b.u11,
            sel_dim: b.sel_dim,
            eo_rle: rl.to_string(),
            words: m.to_string(),
        })
    }
}

/// `(p, d)` with `3 <= d <= d_max` and `p ∤ d`, sorted.
pub fn pairs(p_list: &[u64], d_max: u64) -> Result<Vec<(u64, u64)>> {
    let mut ps = p_list.to_vec();
    ps.sort_unstable();
    ps.dedup();
    if let Some(&bad) = ps.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(bad));
    }
    Ok(ps.iter().flat_map(|&p| (3..=d_max).filter(move |d| d % p != 0).map(move |d| (p, d))).collect())
}

/// `BT1KIT_JOBS` if set to a positive integer.
pub fn jobs_from_env() -> Option<usize> {
    std::env::var(JOBS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Rows in the order of `pairs`; `jobs = None` uses the available parallelism.
pub fn run(pairs: &[(u64, u64)], jobs: Option<usize>) -> Result<Vec<SweepRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .expect("thread pool");
    pool.install(|| pairs.par_iter().map(|&(p, d)| SweepRow::compute(p, d)).collect())
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)
}

/// Worst case of `|a - (p-1)d/4p|` against `(p-1)^2/4p` over the odd-`p`
/// rows, both scaled by `4p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundSummary {
    pub rows: usize,
    pub exceeding: usize,
    pub worst: Option<(u64, u64, u64, u64)>,
}

pub fn bound_summary(rows: &[SweepRow]) -> Result<BoundSummary> {
    let mut s = BoundSummary::default();
    let mut worst_ratio = (0u64, 1u64);
    for r in rows.iter().filter(|r| r.p % 2 == 1) {
        let (gap, bound) = a_number_bound(r.p, r.d)?;
        s.rows += 1;
        s.exceeding += usize::from(gap > bound);
        if s.worst.is_none() || u128::from(gap) * u128::from(worst_ratio.1) > u128::from(worst_ratio.0) * u128::from(bound) {
            worst_ratio = (gap, bound);
            s.worst = Some((r.p, r.d, gap, bound));
        }
    }
    Ok(s)
}
