//! The case `d = p^l - 1` with `p` odd. Elements of `S` are `p`-adic digit
//! strings `a_0 + a_1 p + ... + a_{l-1} p^{l-1}` and multiplication by `p`
//! rotates the digits.

use crate::eo::{Direction, RunLength};
use crate::error::{Error, Result};
use crate::invariants::{InvariantBundle, Multiplicities, PatternTable};
use crate::scalar::Count;
use crate::words::{break_count_k, Letter, Word};

use super::is_prime;

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::UseP2Module);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// `((p+1)/2, (p-1)/2, p)` as counts.
pub(crate) fn halves<C: Count>(p: u64) -> Result<(C, C, C)> {
    Ok((C::from_u64_exact((p + 1) / 2)?, C::from_u64_exact((p - 1) / 2)?, C::from_u64_exact(p)?))
}

fn check(p: u64, ell: usize) -> Result<()> {
    check_odd_prime(p)?;
    if ell == 0 || (p == 3 && ell == 1) {
        return Err(Error::RationalCurve(p.saturating_pow(ell as u32).saturating_sub(1)));
    }
    Ok(())
}

fn run_count(ell: usize) -> Result<u64> {
    if ell > 63 {
        return Err(Error::Overflow("number of runs"));
    }
    Ok(1u64 << (ell - 1))
}

/// `[↗^{μ_0} →^{μ_1} ... →^{μ_{2^{l-1}-1}}]` with `μ_0 = ((p+1)/2)^l - 2`
/// and, for `i >= 1`, `μ_i = ((p-1)/2)^{k'} ((p+1)/2)^{l-k'}` where
/// `k' = k(i)` for even `i` and `k(i) + 1` for odd `i`.
pub fn encompassing_eo<C: Count>(p: u64, ell: usize) -> Result<RunLength<C>> {
    check(p, ell)?;
    let (h, m, _) = halves::<C>(p)?;
    let mut rl = RunLength::new();
    let two = C::from_u64_exact(2)?;
    rl.push(Direction::Up, h.pow_exact(ell as u64)?.sub_exact(&two)?);
    for i in 1..run_count(ell)? {
        let k = break_count_k(i) as u64 + (i % 2);
        let mu = m.pow_exact(k)?.mul_exact(&h.pow_exact(ell as u64 - k)?)?;
        rl.push(if i % 2 == 0 { Direction::Up } else { Direction::Flat }, mu);
    }
    Ok(rl)
}

/// Closed-form invariants: p-rank `((p+1)/2)^l - 2`,
/// a-number `(p-1)(p^{l-1}-1)/4`, s11 `((p-1)/2)^l` for even `l`, and u11
/// `s11 + Σ_{j=0}^{⌊(l-4)/2⌋} ((p+1)/2)^2 ((p-1)/2)^{2j+1} (p^{l-3-2j}-1)/2`.
pub fn encompassing_invariants<C: Count>(p: u64, ell: usize) -> Result<InvariantBundle<C>> {
    check(p, ell)?;
    let (h, m, pc) = halves::<C>(p)?;
    let (one, two, three) = (C::one(), C::from_u64_exact(2)?, C::from_u64_exact(3)?);
    let l = ell as u64;
    let g = pc.pow_exact(l)?.sub_exact(&three)?.quot_exact(&two)?;
    let f = h.pow_exact(l)?.sub_exact(&two)?;
    let a = m.mul_exact(&pc.pow_exact(l - 1)?.sub_exact(&one)?.quot_exact(&two)?)?;
    let s = if ell % 2 == 0 { m.pow_exact(l)? } else { C::zero() };
    let mut u = s.clone();
    if ell >= 4 {
        for j in 0..=(l - 4) / 2 {
            let tail = pc.pow_exact(l - 3 - 2 * j)?.sub_exact(&one)?.quot_exact(&two)?;
            u = u.add_exact(&h.pow_exact(2)?.mul_exact(&m.pow_exact(2 * j + 1)?)?.mul_exact(&tail)?)?;
        }
    }
    InvariantBundle::new(g, f, a, s, u)
}

/// Pattern multiplicities of `d = p^l - 1` from the digit constraints.
#[derive(Clone, Copy, Debug)]
pub struct EncompassingMultiplicities<C> {
    p: u64,
    ell: usize,
    _count: std::marker::PhantomData<C>,
}

impl<C: Count> EncompassingMultiplicities<C> {
    pub fn new(p: u64, ell: usize) -> Result<Self> {
        check(p, ell)?;
        Ok(EncompassingMultiplicities { p, ell, _count: std::marker::PhantomData })
    }
}

fn run_lengths(w: &Word) -> Vec<usize> {
    let mut runs: Vec<usize> = Vec::new();
    let mut prev = None;
    for &l in w.letters() {
        if prev == Some(l) {
            *runs.last_mut().expect("nonempty") += 1;
        } else {
            runs.push(1);
        }
        prev = Some(l);
    }
    runs
}

impl<C: Count> Multiplicities for EncompassingMultiplicities<C> {
    type Count = C;

    fn ell(&self) -> usize {
        self.ell
    }

    fn total(&self) -> Result<C> {
        C::from_u64_exact(self.p)?.pow_exact(self.ell as u64)?.sub_exact(&C::from_u64_exact(3)?)
    }

    /// `((p+1)/2)^l - 2` for `f^l` and `v^l`, otherwise
    /// `((p-1)/2)^k ((p+1)/2)^{l-k}` with `k` the number of cyclic breaks.
    fn exact(&self, w: &Word) -> Result<C> {
        if w.len() != self.ell {
            return Ok(C::zero());
        }
        let (h, m, _) = halves::<C>(self.p)?;
        let l = self.ell as u64;
        if w.is_constant() {
            return h.pow_exact(l)?.sub_exact(&C::from_u64_exact(2)?);
        }
        let k = w.breaks(true).len() as u64;
        m.pow_exact(k)?.mul_exact(&h.pow_exact(l - k)?)
    }

    /// For `t` of length `E` with `r` runs and `q = l + 1 - E`:
    /// `((p+1)/2)^{E-r} ((p-1)/2)^{r-1} (p^q - 1)/2` when `r` is even and
    /// `((p+1)/2)^{E-r} ((p-1)/2)^{r-1} (p^q + 1)/2` when `r` is odd, less 2
    /// when `t` is constant.
    fn suffix(&self, t: &Word) -> Result<C> {
        let e = t.len();
        if e > self.ell {
            return Ok(C::zero());
        }
        if e == 0 {
            return self.total();
        }
        let (h, m, pc) = halves::<C>(self.p)?;
        let (one, two) = (C::one(), C::from_u64_exact(2)?);
        let r = run_lengths(t).len() as u64;
        let tail = pc.pow_exact((self.ell + 1 - e) as u64)?;
        let tail = if r % 2 == 0 { tail.sub_exact(&one)? } else { tail.add_exact(&one)? }.quot_exact(&two)?;
        let count = h.pow_exact(e as u64 - r)?.mul_exact(&m.pow_exact(r - 1)?)?.mul_exact(&tail)?;
        if r == 1 {
            count.sub_exact(&two)
        } else {
            Ok(count)
        }
    }
}

/// Pattern of the element with little-endian digits `a_0, ..., a_{l-1}`:
/// `u_j` is decided by the first digit different from `(p-1)/2` among
/// `a_{l-1-j}, a_{l-2-j}, ...` (wrapping around), `f` if it is larger.
/// `None` for the excluded elements `0`, `d` and `d/2`.
pub fn digit_pattern(p: u64, digits: &[u64]) -> Option<Word> {
    let ell = digits.len();
    let half = (p - 1) / 2;
    if digits.iter().all(|&x| x == 0) || digits.iter().all(|&x| x == p - 1) || digits.iter().all(|&x| x == half) {
        return None;
    }
    let letters = (0..ell)
        .rev()
        .map(|j| {
            let first = (0..ell).map(|s| digits[(2 * ell - 1 - j - s) % ell]).find(|&x| x != half).expect("some digit differs");
            if first > half {
                Letter::F
            } else {
                Letter::V
            }
        })
        .collect();
    Some(Word::from_letters(letters))
}

/// Pattern table from all digit strings.
pub fn digit_model_table(p: u64, ell: usize) -> Result<PatternTable> {
    check(p, ell)?;
    let mut table = PatternTable::new(ell);
    let mut digits = vec![0u64; ell];
    loop {
        if let Some(w) = digit_pattern(p, &digits) {
            table.add(w, 1)?;
        }
        let mut i = 0;
        while i < ell && digits[i] == p - 1 {
            digits[i] = 0;
            i += 1;
        }
        if i == ell {
            break;
        }
        digits[i] += 1;
    }
    Ok(table)
}
