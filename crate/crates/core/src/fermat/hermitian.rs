//! The case `d = p^λ + 1` with `p` odd, where `p` has order `l = 2λ`.
//! Every pattern has the form `t^c t` with `t = pat'(b)` of length `λ`.

use crate::eo::{Direction, RunLength};
use crate::error::{Error, Result};
use crate::invariants::{InvariantBundle, Multiplicities, PatternTable};
use crate::scalar::Count;
use crate::words::{break_count_k, Word};

use super::encompassing::{check_odd_prime, halves};
use super::{build_spec, FermatSpec, Variant};

fn check(p: u64, lambda: usize) -> Result<()> {
    check_odd_prime(p)?;
    if lambda == 0 {
        return Err(Error::RationalCurve(2));
    }
    Ok(())
}

fn hermitian_spec(p: u64, lambda: usize) -> Result<FermatSpec> {
    check(p, lambda)?;
    let d = u32::try_from(lambda).ok().and_then(|l| p.checked_pow(l)).and_then(|q| q.checked_add(1)).ok_or(Error::Overflow("p^λ + 1"))?;
    build_spec(p, d, Variant::Quotient)
}

/// `[→^{μ'_0} ↗^{μ'_1} ... ↗^{μ'_{2^{λ-1}-1}}]` with
/// `μ'_i = ((p+1)/2)^{λ-k(i)-1} ((p-1)/2)^{k(i)+1}` for even `i` and
/// `((p+1)/2)^{λ-k(i)} ((p-1)/2)^{k(i)}` for odd `i`.
pub fn hermitian_eo<C: Count>(p: u64, lambda: usize) -> Result<RunLength<C>> {
    check(p, lambda)?;
    if lambda > 63 {
        return Err(Error::Overflow("number of runs"));
    }
    let (h, m, _) = halves::<C>(p)?;
    let l = lambda as u64;
    let mut rl = RunLength::new();
    for i in 0..1u64 << (lambda - 1) {
        let k = break_count_k(i) as u64;
        let (dir, mu) = if i % 2 == 0 {
            (Direction::Flat, h.pow_exact(l - k - 1)?.mul_exact(&m.pow_exact(k + 1)?)?)
        } else {
            (Direction::Up, h.pow_exact(l - k)?.mul_exact(&m.pow_exact(k)?)?)
        };
        rl.push(dir, mu);
    }
    Ok(rl)
}

/// Closed-form invariants: p-rank 0, a-number `(p-1)(p^{λ-1}+1)/4`,
/// s11 `((p-1)/2)^λ` for odd `λ`, and u11 `s11` plus
/// `Σ_{j=0}^{⌊(λ-4)/2⌋} ((p+1)/2)^2 ((p-1)/2)^{2j+1} (p^{λ-3-2j}+1)/2` plus
/// `0`, `((p+1)/2)^2 ((p-1)/2)^{λ-2}` or `((p+1)/2)((p-1)/2)^{λ-1}` for
/// `λ = 1`, odd `λ > 1` and even `λ`.
pub fn hermitian_invariants<C: Count>(p: u64, lambda: usize) -> Result<InvariantBundle<C>> {
    check(p, lambda)?;
    let (h, m, pc) = halves::<C>(p)?;
    let (one, two) = (C::one(), C::from_u64_exact(2)?);
    let l = lambda as u64;
    let g = pc.pow_exact(l)?.sub_exact(&one)?.quot_exact(&two)?;
    let a = m.mul_exact(&pc.pow_exact(l - 1)?.add_exact(&one)?.quot_exact(&two)?)?;
    let s = if lambda % 2 == 1 { m.pow_exact(l)? } else { C::zero() };
    let mut u = s.clone();
    if lambda >= 4 {
        for j in 0..=(l - 4) / 2 {
            let tail = pc.pow_exact(l - 3 - 2 * j)?.add_exact(&one)?.quot_exact(&two)?;
            u = u.add_exact(&h.pow_exact(2)?.mul_exact(&m.pow_exact(2 * j + 1)?)?.mul_exact(&tail)?)?;
        }
    }
    let extra = if lambda == 1 {
        C::zero()
    } else if lambda % 2 == 1 {
        h.pow_exact(2)?.mul_exact(&m.pow_exact(l - 2)?)?
    } else {
        h.mul_exact(&m.pow_exact(l - 1)?)?
    };
    InvariantBundle::new(g, C::zero(), a, s, u.add_exact(&extra)?)
}

/// `pat'(b) = u_{λ-1} ... u_0`, the last `λ` letters of `pat(b)`.
pub fn half_pattern(p: u64, lambda: usize, b: u64) -> Result<Word> {
    let spec = hermitian_spec(p, lambda)?;
    let full = spec.pattern(b)?;
    Ok(Word::from_letters(full.letters()[lambda..].to_vec()))
}

/// `μ'(t) = #{b : pat'(b) = t}`.
pub fn half_pattern_table(p: u64, lambda: usize) -> Result<PatternTable> {
    let spec = hermitian_spec(p, lambda)?;
    let full = spec.pattern_table()?;
    let mut table = PatternTable::new(lambda);
    for (w, &mu) in full.live() {
        table.add(Word::from_letters(w.letters()[lambda..].to_vec()), mu)?;
    }
    Ok(table)
}

/// Digits `(b_1, ..., b_λ)` with `b = 1 + Σ b_j p^{j-1}`.
pub fn digit_tuple(p: u64, lambda: usize, b: u64) -> Vec<u64> {
    let mut x = b - 1;
    (0..lambda)
        .map(|_| {
            let digit = x % p;
            x /= p;
            digit
        })
        .collect()
}

fn runs(t: &Word) -> u64 {
    1 + t.breaks(false).len() as u64
}

/// Pattern multiplicities of `d = p^λ + 1`, on words of length `2λ`.
#[derive(Clone, Copy, Debug)]
pub struct HermitianMultiplicities<C> {
    p: u64,
    lambda: usize,
    _count: std::marker::PhantomData<C>,
}

impl<C: Count> HermitianMultiplicities<C> {
    pub fn new(p: u64, lambda: usize) -> Result<Self> {
        check(p, lambda)?;
        Ok(HermitianMultiplicities { p, lambda, _count: std::marker::PhantomData })
    }

    /// `μ'(t)` for `|t| = λ` with `k` runs: `((p+1)/2)^{λ-k} ((p-1)/2)^k`
    /// for odd `k`, `((p+1)/2)^{λ+1-k} ((p-1)/2)^{k-1}` for even `k`.
    pub fn half_exact(&self, t: &Word) -> Result<C> {
        if t.len() != self.lambda {
            return Ok(C::zero());
        }
        let (h, m, _) = halves::<C>(self.p)?;
        let (l, k) = (self.lambda as u64, runs(t));
        if k % 2 == 1 {
            h.pow_exact(l - k)?.mul_exact(&m.pow_exact(k)?)
        } else {
            h.pow_exact(l + 1 - k)?.mul_exact(&m.pow_exact(k - 1)?)
        }
    }

    /// `μ'(*t)` for `|t| = λ' <= λ` with `k` runs:
    /// `((p+1)/2)^{λ'-k} ((p-1)/2)^{k-1} (p^{λ+1-λ'} ∓ 1)/2`, minus for odd `k`.
    pub fn half_suffix(&self, t: &Word) -> Result<C> {
        let e = t.len();
        if e > self.lambda {
            return Ok(C::zero());
        }
        if e == 0 {
            return self.total();
        }
        let (h, m, pc) = halves::<C>(self.p)?;
        let (one, two) = (C::one(), C::from_u64_exact(2)?);
        let k = runs(t);
        let tail = pc.pow_exact((self.lambda + 1 - e) as u64)?;
        let tail = if k % 2 == 1 { tail.sub_exact(&one)? } else { tail.add_exact(&one)? }.quot_exact(&two)?;
        h.pow_exact(e as u64 - k)?.mul_exact(&m.pow_exact(k - 1)?)?.mul_exact(&tail)
    }
}

impl<C: Count> Multiplicities for HermitianMultiplicities<C> {
    type Count = C;

    fn ell(&self) -> usize {
        2 * self.lambda
    }

    fn total(&self) -> Result<C> {
        C::from_u64_exact(self.p)?.pow_exact(self.lambda as u64)?.sub_exact(&C::one())
    }

    /// `μ(t^c t) = μ'(t)`; other words do not occur.
    fn exact(&self, w: &Word) -> Result<C> {
        if w.len() != 2 * self.lambda {
            return Ok(C::zero());
        }
        let (x, y) = w.letters().split_at(self.lambda);
        let t = Word::from_letters(y.to_vec());
        if x.iter().zip(y).all(|(a, b)| *a == b.flip()) {
            self.half_exact(&t)
        } else {
            Ok(C::zero())
        }
    }

    fn suffix(&self, t: &Word) -> Result<C> {
        let (n, l) = (t.len(), self.lambda);
        if n <= l {
            return self.half_suffix(t);
        }
        if n > 2 * l {
            return Ok(C::zero());
        }
        let (x, y) = t.letters().split_at(n - l);
        let tail_of_complement = &y[l - x.len()..];
        if x.iter().zip(tail_of_complement).all(|(a, b)| *a == b.flip()) {
            self.half_exact(&Word::from_letters(y.to_vec()))
        } else {
            Ok(C::zero())
        }
    }
}
