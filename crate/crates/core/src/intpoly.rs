//! Dense integer polynomials and cyclotomic polynomials.
//!
//! Coefficients are `i64`. Every arithmetic step is checked and an overflow
//! panics with "coefficient overflow" rather than wrapping; the polynomials
//! this crate builds (0/1 characteristic polynomials, cyclotomics of index a
//! few hundred, short products of those) stay far below that range.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::arith;
use crate::error::{Error, Result};

/// A polynomial with integer coefficients, stored densely by exponent.
///
/// The highest stored coefficient is never zero, so the zero polynomial is the
/// empty list and `degree()` returns `None` for it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

#[inline]
fn cadd(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

#[inline]
fn csub(a: i64, b: i64) -> i64 {
    a.checked_sub(b).expect("coefficient overflow")
}

#[inline]
fn cmul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow")
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    /// Builds a polynomial from coefficients indexed by exponent, dropping
    /// trailing zeros.
    pub fn from_coeffs<V: Into<Vec<i64>>>(coeffs: V) -> Self {
        let mut coeffs = coeffs.into();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// `c * x^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// `x^n - 1`; for `n = 0` this is the zero polynomial.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] -= 1;
        coeffs[n] += 1;
        Self::from_coeffs(coeffs)
    }

    /// The sum of `x^e` over the given exponents (repeats add up).
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut coeffs = Vec::new();
        for e in exponents {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = cadd(coeffs[e], 1);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<i64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(1)
    }

    /// Number of nonzero coefficients.
    pub fn nonzero_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Exponents carrying a nonzero coefficient, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, _)| k)
    }

    /// Value at an integer point, or `None` on overflow.
    pub fn eval(&self, x: i64) -> Option<i64> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(0i64, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }

    /// Quotient and remainder by a monic divisor: `self = divisor * q + r`
    /// with `r = 0` or `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dq = check_divisor(divisor)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![0i64; rem.len() - dq];
        for i in (dq..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            quot[i - dq] = c;
            reduce_top(&mut rem, i, c, &divisor.coeffs);
        }
        rem.truncate(dq);
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Remainder by a monic divisor, without building the quotient.
    pub fn rem_monic(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let dq = check_divisor(divisor)?;
        let mut rem = self.coeffs.clone();
        for i in (dq..rem.len()).rev() {
            let c = rem[i];
            if c != 0 {
                reduce_top(&mut rem, i, c, &divisor.coeffs);
            }
        }
        rem.truncate(dq.min(rem.len()));
        Ok(IntPoly::from_coeffs(rem))
    }

    /// Exact quotient by a monic divisor, or `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<Option<IntPoly>> {
        let (q, r) = self.divrem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Polynomial with `x` replaced by `x^k`.
    pub fn compose_power(&self, k: usize) -> IntPoly {
        if k == 0 {
            let s = self.coeffs.iter().fold(0, |acc, &c| cadd(acc, c));
            return IntPoly::from_coeffs(vec![s]);
        }
        let mut coeffs = vec![0; self.coeffs.len().saturating_sub(1) * k + 1];
        for (e, &c) in self.coeffs.iter().enumerate() {
            coeffs[e * k] = c;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

fn check_divisor(divisor: &IntPoly) -> Result<usize> {
    match divisor.leading_coeff() {
        None => Err(Error::ZeroDivisor),
        Some(1) => Ok(divisor.coeffs.len() - 1),
        Some(_) => Err(Error::NonMonicDivisor),
    }
}

/// Cancels `c * x^i` using the monic `divisor` of degree `divisor.len() - 1`.
#[inline]
fn reduce_top(rem: &mut [i64], i: usize, c: i64, divisor: &[i64]) {
    let dq = divisor.len() - 1;
    let base = i - dq;
    for (k, &d) in divisor[..dq].iter().enumerate() {
        if d != 0 {
            rem[base + k] = csub(rem[base + k], cmul(c, d));
        }
    }
    rem[i] = 0;
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, &d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = cadd(*c, d);
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|&c| csub(0, c)).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    coeffs[i + j] = cadd(coeffs[i + j], cmul(a, b));
                }
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;

            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    /// Ascending powers: `1 + x - x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{mag}x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(feature = "std")]
mod cache {
    use super::IntPoly;
    use alloc::collections::BTreeMap;
    use alloc::sync::Arc;
    use std::sync::{OnceLock, RwLock};

    static CYCLOTOMICS: OnceLock<RwLock<BTreeMap<u64, Arc<IntPoly>>>> = OnceLock::new();

    fn table() -> &'static RwLock<BTreeMap<u64, Arc<IntPoly>>> {
        CYCLOTOMICS.get_or_init(Default::default)
    }

    pub(super) fn get(s: u64) -> Option<Arc<IntPoly>> {
        table()
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .get(&s)
            .cloned()
    }

    pub(super) fn publish(entries: BTreeMap<u64, Arc<IntPoly>>) {
        let mut t = table().write().unwrap_or_else(|e| e.into_inner());
        for (s, p) in entries {
            t.entry(s).or_insert(p);
        }
    }
}

#[cfg(not(feature = "std"))]
mod cache {
    use super::IntPoly;
    use alloc::collections::BTreeMap;
    use alloc::sync::Arc;

    pub(super) fn get(_s: u64) -> Option<Arc<IntPoly>> {
        None
    }

    pub(super) fn publish(_entries: BTreeMap<u64, Arc<IntPoly>>) {}
}

/// Shared handle to `Φ_s`; `s` must be positive.
pub(crate) fn cyclotomic_shared(s: u64) -> Arc<IntPoly> {
    debug_assert!(s > 0);
    if let Some(p) = cache::get(s) {
        return p;
    }
    let mut local = BTreeMap::new();
    let p = build_cyclotomic(s, &mut local);
    cache::publish(local);
    p
}

fn build_cyclotomic(s: u64, local: &mut BTreeMap<u64, Arc<IntPoly>>) -> Arc<IntPoly> {
    if let Some(p) = cache::get(s).or_else(|| local.get(&s).cloned()) {
        return p;
    }
    let n = usize::try_from(s).expect("cyclotomic index exceeds usize");
    let mut p = IntPoly::x_pow_minus_one(n);
    for d in arith::divisors(s) {
        if d == s {
            continue;
        }
        let phi_d = build_cyclotomic(d, local);
        let (q, r) = p.divrem(&phi_d).expect("cyclotomic polynomials are monic");
        assert!(r.is_zero(), "x^{s} - 1 not divisible by cyclotomic({d})");
        p = q;
    }
    let p = Arc::new(p);
    local.insert(s, p.clone());
    p
}

/// The `s`-th cyclotomic polynomial, obtained by dividing `x^s - 1` by
/// `Φ_d` for every proper divisor `d` of `s`. Results are memoized.
pub fn cyclotomic(s: u64) -> Result<IntPoly> {
    if s == 0 {
        return Err(Error::ZeroCyclotomicIndex);
    }
    Ok((*cyclotomic_shared(s)).clone())
}

/// `Φ_s(1)` from the factorization of `s`: 0 for `s = 1`, `p` for
/// `s = p^α`, 1 otherwise. `s = 0` also gives 0.
pub fn cyclotomic_at_one(s: u64) -> u64 {
    if s <= 1 {
        return 0;
    }
    match arith::prime_power(s) {
        Some((p, _)) => p,
        None => 1,
    }
}

/// Whether `Φ_s` divides `p`. The zero polynomial is divisible by everything;
/// `s = 0` is never a divisor.
pub fn divides_cyclotomic(p: &IntPoly, s: u64) -> bool {
    if s == 0 {
        return false;
    }
    let Some(deg) = p.degree() else {
        return true;
    };
    // deg Φ_s = φ(s); a nonzero polynomial of smaller degree cannot be a multiple.
    if arith::euler_phi(s) > deg as u64 {
        return false;
    }
    let phi = cyclotomic_shared(s);
    p.rem_monic(&phi)
        .expect("cyclotomic polynomials are monic")
        .is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn addition() {
        assert_eq!(&poly(&[1, 1]) + &poly(&[1, 0, 1]), poly(&[2, 1, 1]));
        assert_eq!(&poly(&[1, 1]) + &IntPoly::zero(), poly(&[1, 1]));
        let sum = &poly(&[1, 1]) + &poly(&[-1, -1]);
        assert!(sum.is_zero());
        assert_eq!(sum.degree(), None);
    }

    #[test]
    fn multiplication() {
        assert_eq!(&poly(&[1, 1]) * &poly(&[1, 0, 1]), poly(&[1, 1, 1, 1]));
        assert_eq!(&poly(&[3, 0, -2]) * &IntPoly::one(), poly(&[3, 0, -2]));
        assert_eq!(
            &poly(&[1, 1]) * &poly(&[1, 0, 0, 1]),
            poly(&[1, 1, 0, 1, 1])
        );
    }

    #[test]
    fn division() {
        let (q, r) = poly(&[1, 1, 1, 1]).divrem(&poly(&[1, 1])).unwrap();
        assert_eq!(q, poly(&[1, 0, 1]));
        assert!(r.is_zero());

        let p = poly(&[1, 1, 0, 1, 1]);
        let (q, r) = p.divrem(&poly(&[1, 1, 1])).unwrap();
        assert!(!r.is_zero());
        assert_eq!(&(&q * &poly(&[1, 1, 1])) + &r, p);

        let (q, r) = p.divrem(&IntPoly::one()).unwrap();
        assert_eq!(q, p);
        assert!(r.is_zero());
    }

    #[test]
    fn division_rejects_bad_divisors() {
        let p = poly(&[1, 2, 3]);
        assert_eq!(p.divrem(&IntPoly::zero()), Err(Error::ZeroDivisor));
        assert_eq!(p.divrem(&poly(&[1, 2])), Err(Error::NonMonicDivisor));
        assert_eq!(p.rem_monic(&poly(&[0, 3])), Err(Error::NonMonicDivisor));
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), poly(&[-1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic(6).unwrap(), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(0), Err(Error::ZeroCyclotomicIndex));
    }

    #[test]
    fn phi_105_has_a_coefficient_of_magnitude_two() {
        let phi = cyclotomic(105).unwrap();
        assert_eq!(phi.degree(), Some(48));
        assert_eq!(phi.coeffs().iter().map(|c| c.abs()).max(), Some(2));
        for s in 1..105 {
            let p = cyclotomic(s).unwrap();
            assert!(p.coeffs().iter().all(|c| c.abs() <= 1), "Φ_{s}");
        }
    }

    #[test]
    fn value_at_one() {
        assert_eq!(cyclotomic_at_one(1), 0);
        assert_eq!(cyclotomic_at_one(9), 3);
        assert_eq!(cyclotomic_at_one(6), 1);
        for s in 1..=120 {
            let v = cyclotomic(s).unwrap().eval(1).unwrap();
            assert_eq!(v, cyclotomic_at_one(s) as i64, "Φ_{s}(1)");
        }
    }

    #[test]
    fn cyclotomic_divisibility() {
        assert!(divides_cyclotomic(&poly(&[1, 1, 1, 1]), 2));
        // value at i is 1 + i - i + 1 = 2
        assert!(!divides_cyclotomic(&poly(&[1, 1, 0, 1, 1]), 4));
        assert!(divides_cyclotomic(&poly(&[1, 0, 1, 0, 1]), 6));
        assert!(divides_cyclotomic(&poly(&[1, 0, 1, 0, 1]), 3));
        assert!(!divides_cyclotomic(&poly(&[1, 0, 1, 0, 1]), 0));
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[1, -1, 1]).to_string(), "1 - x + x^2");
        assert_eq!(poly(&[-1, 0, 2]).to_string(), "-1 + 2x^2");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn compose_with_power() {
        assert_eq!(poly(&[1, 1]).compose_power(3), poly(&[1, 0, 0, 1]));
    }
}
