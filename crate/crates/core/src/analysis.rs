//! Power sums of polynomial roots and the prime-power cyclotomic classifier.

use alloc::vec::Vec;

use crate::arith;
use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::tileset::IntSet;

/// `S_1, ..., S_J` where `S_j = Σ z^j` over the roots `z` of a monic integer
/// polynomial, counted with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumSeries {
    values: Vec<i64>,
}

impl PowerSumSeries {
    /// `[S_1, ..., S_J]`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `S_j` for `1 <= j <= J`.
    pub fn get(&self, j: usize) -> Option<i64> {
        j.checked_sub(1).and_then(|k| self.values.get(k)).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Power sums from Newton's identities. With `p = Σ b_k x^k` of degree `M`:
///
/// ```text
/// S_j + b_{M-1} S_{j-1} + ... + b_{M-j+1} S_1 + j b_{M-j} = 0    (j <= M)
/// S_j + b_{M-1} S_{j-1} + ... + b_0 S_{j-M}               = 0    (j >  M)
/// ```
pub fn power_sums(p: &IntPoly, count: usize) -> Result<PowerSumSeries> {
    let m = match p.degree() {
        Some(m) if m >= 1 && p.is_monic() => m,
        _ => return Err(Error::NonMonic),
    };
    let mut s: Vec<i64> = Vec::with_capacity(count);
    for j in 1..=count {
        let mut acc: i64 = 0;
        for i in 1..=(j - 1).min(m) {
            let term = p
                .coeff(m - i)
                .checked_mul(s[j - i - 1])
                .ok_or(Error::Overflow)?;
            acc = acc.checked_add(term).ok_or(Error::Overflow)?;
        }
        if j <= m {
            let term = (j as i64)
                .checked_mul(p.coeff(m - j))
                .ok_or(Error::Overflow)?;
            acc = acc.checked_add(term).ok_or(Error::Overflow)?;
        }
        s.push(acc.checked_neg().ok_or(Error::Overflow)?);
    }
    Ok(PowerSumSeries { values: s })
}

/// `c_s(j)`: the sum of `z^j` over the primitive `s`-th roots of unity,
/// `Σ_{d | gcd(j, s)} d μ(s/d)`.
pub fn ramanujan_sum(s: u64, j: i64) -> i64 {
    let g = arith::gcd(j.unsigned_abs(), s);
    arith::divisors(g)
        .into_iter()
        .map(|d| d as i64 * arith::mobius(s / d))
        .sum()
}

/// `Some((p, α))` when the set is a translate of
/// `{0, p^{α-1}, 2p^{α-1}, ..., (p-1)p^{α-1}}`, i.e. `A(x) = Φ_{p^α}(x)` up to
/// a power of `x`.
pub fn classify_prime_power_cyclotomic(a: &IntSet) -> Option<(u64, u32)> {
    let (a, _) = a.normalized();
    let p = a.len() as u64;
    if !arith::is_prime(p) {
        return None;
    }
    let step = a.elements()[1];
    let progression = a
        .elements()
        .iter()
        .enumerate()
        .all(|(k, &x)| Some(x) == step.checked_mul(k as u64));
    if !progression {
        return None;
    }
    let mut alpha = 1;
    let mut rest = step;
    while rest % p == 0 {
        rest /= p;
        alpha += 1;
    }
    (rest == 1).then_some((p, alpha))
}
