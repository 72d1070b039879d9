//! Closed forms valid for every `d`: the a-number floor sum, the ordinary
//! and superspecial criteria, and the `p = 2` case.

use crate::eo::{Direction, RunLength};
use crate::error::{Error, Result};
use crate::invariants::{invariants, InvariantBundle};

use super::{build_spec, Variant};

fn check_odd_curve(p: u64, d: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::UseP2Module);
    }
    if d <= 2 {
        return Err(Error::RationalCurve(d));
    }
    if d % p == 0 {
        return Err(Error::NotCoprime { p, d });
    }
    Ok(())
}

/// `Σ_{j=1}^{(p-1)/2} (⌊2jd/2p⌋ - ⌊(2j-1)d/2p⌋)`
pub fn a_number_closed(p: u64, d: u64) -> Result<u64> {
    check_odd_curve(p, d)?;
    let (p, d) = (p as u128, d as u128);
    let total: u128 = (1..=(p - 1) / 2).map(|j| (2 * j * d) / (2 * p) - ((2 * j - 1) * d) / (2 * p)).sum();
    Ok(total as u64)
}

/// `(p-1)(d∓1)/4p` when `d ≡ ±1 (mod 2p)` and `(p-1)(d±(p-1))/4p` when
/// `d ≡ p±1 (mod 2p)`; `None` for other residues.
pub fn a_number_special(p: u64, d: u64) -> Result<Option<u64>> {
    check_odd_curve(p, d)?;
    let r = d % (2 * p);
    let value = if r == 1 {
        (p - 1) * (d - 1) / (4 * p)
    } else if r == 2 * p - 1 {
        (p - 1) * (d + 1) / (4 * p)
    } else if r == p + 1 {
        (p - 1) * (d + p - 1) / (4 * p)
    } else if r == p - 1 {
        (p - 1) * (d - (p - 1)) / (4 * p)
    } else {
        return Ok(None);
    };
    Ok(Some(value))
}

/// `(|4p·a - (p-1)d|, (p-1)^2)`: the observed gap and the conjectured bound,
/// both scaled by `4p`.
pub fn a_number_bound(p: u64, d: u64) -> Result<(u64, u64)> {
    let a = a_number_closed(p, d)?;
    let gap = (4 * p * a).abs_diff((p - 1) * d);
    Ok((gap, (p - 1) * (p - 1)))
}

fn check_curve(p: u64, d: u64) -> Result<()> {
    if d <= 2 {
        return Err(Error::RationalCurve(d));
    }
    if d % p == 0 {
        return Err(Error::NotCoprime { p, d });
    }
    Ok(())
}

/// `d | p - 1`
pub fn is_ordinary(p: u64, d: u64) -> Result<bool> {
    check_curve(p, d)?;
    Ok((p - 1) % d == 0)
}

/// `d | p + 1`
pub fn is_superspecial(p: u64, d: u64) -> Result<bool> {
    check_curve(p, d)?;
    Ok((p + 1) % d == 0)
}

/// `p = 2`, `d` odd: EO `[0,1,1,2,2,...,⌊g/2⌋]`, p-rank 0,
/// `a = (d∓1)/4` for `d ≡ ±1 (mod 4)` and `s11 = [3 | d]`. There is no
/// closed form for `u11`; it is computed from the orbit words.
pub fn p2_eo(d: u64) -> Result<(RunLength<usize>, InvariantBundle)> {
    if d % 2 == 0 {
        return Err(Error::NotCoprime { p: 2, d });
    }
    let g = ((d - 1) / 2) as usize;
    let rl = RunLength::from_runs((0..g).map(|i| (if i % 2 == 0 { Direction::Flat } else { Direction::Up }, 1)));
    if g == 0 {
        return Ok((rl, InvariantBundle::trivial()));
    }
    let a = if d % 4 == 1 { (d - 1) / 4 } else { (d + 1) / 4 } as usize;
    let s11 = usize::from(d % 3 == 0);
    let u11 = invariants(&build_spec(2, d, Variant::Quotient)?.word_multiset()?)?.u11;
    Ok((rl, InvariantBundle::new(g, 0, a, s11, u11)?))
}
