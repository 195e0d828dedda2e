//! Finite sets, their characteristic polynomials, and the Coven–Meyerowitz
//! conditions.
//!
//! For a set `A` write `A(x) = Σ_{a∈A} x^a` and let `S_A` be the prime powers
//! `s` with `Φ_s | A(x)`. The two conditions are
//!
//! * (T1) `A(1) = Π_{s∈S_A} Φ_s(1)`;
//! * (T2) whenever `s_1, ..., s_k ∈ S_A` are powers of distinct primes,
//!   `Φ_{s_1⋯s_k} | A(x)`.
//!
//! Both are invariant under translation, so every predicate here works on the
//! set translated to have minimum 0.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::intpoly::{cyclotomic_at_one, divides_cyclotomic, IntPoly};

/// A finite set of at least two nonnegative integers, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntSet {
    elements: Vec<u64>,
}

impl IntSet {
    /// Sorts and deduplicates; fewer than two distinct values is an error.
    pub fn new<I: IntoIterator<Item = u64>>(elements: I) -> Result<Self> {
        let mut elements: Vec<u64> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if elements.len() < 2 {
            return Err(Error::SetTooSmall {
                len: elements.len(),
            });
        }
        Ok(IntSet { elements })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// `#A`, which is also `A(1)`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_element(&self) -> u64 {
        self.elements[0]
    }

    pub fn max_element(&self) -> u64 {
        self.elements[self.elements.len() - 1]
    }

    /// Whether the minimum is 0.
    pub fn is_normalized(&self) -> bool {
        self.min_element() == 0
    }

    /// The set translated to start at 0, with the offset that was removed.
    pub fn normalized(&self) -> (IntSet, u64) {
        let offset = self.min_element();
        let elements = self.elements.iter().map(|&a| a - offset).collect();
        (IntSet { elements }, offset)
    }

    /// Adds `k` to every element.
    pub fn translate(&self, k: u64) -> IntSet {
        IntSet {
            elements: self
                .elements
                .iter()
                .map(|&a| a.checked_add(k).expect("translation overflows u64"))
                .collect(),
        }
    }

    /// Degree of the characteristic polynomial after normalization.
    pub fn span(&self) -> u64 {
        self.max_element() - self.min_element()
    }

    pub fn char_poly(&self) -> IntPoly {
        char_poly(self)
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// `A(x) = Σ_{a∈A} x^a`, with exactly the exponents of `a`.
pub fn char_poly(a: &IntSet) -> IntPoly {
    IntPoly::from_exponents(a.elements.iter().map(|&e| to_usize(e)))
}

fn to_usize(e: u64) -> usize {
    usize::try_from(e).expect("exponent exceeds usize")
}

/// Inventory of cyclotomic divisors `Φ_s`, `s >= 2`, of a polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycloDivisors {
    all: Vec<u64>,
    prime_powers: Vec<u64>,
    by_prime: BTreeMap<u64, Vec<u64>>,
    degree: usize,
}

impl CycloDivisors {
    /// Every `s >= 2` with `Φ_s | A(x)`, increasing.
    pub fn all(&self) -> &[u64] {
        &self.all
    }

    /// `S_A`: the prime powers among [`all`](Self::all).
    pub fn prime_powers(&self) -> &[u64] {
        &self.prime_powers
    }

    /// `S_A` grouped by prime.
    pub fn by_prime(&self) -> &BTreeMap<u64, Vec<u64>> {
        &self.by_prime
    }

    pub fn contains(&self, s: u64) -> bool {
        self.all.binary_search(&s).is_ok()
    }

    /// Degree of the polynomial the inventory was taken of.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// (T1) for a set of size `size`.
    pub fn t1_holds(&self, size: u64) -> bool {
        let mut prod = 1u64;
        for &s in &self.prime_powers {
            match prod.checked_mul(cyclotomic_at_one(s)) {
                Some(p) => prod = p,
                None => return false,
            }
        }
        prod == size
    }

    /// (T2) for the polynomial `poly` the inventory was taken of.
    ///
    /// Enumerates every choice of at most one power per prime with at least
    /// two primes involved, and tests `Φ` of the product by division.
    pub fn t2_holds(&self, poly: &IntPoly) -> bool {
        let groups: Vec<&Vec<u64>> = self.by_prime.values().collect();
        if groups.len() < 2 {
            return true;
        }
        // choice[i] == 0 skips prime i, otherwise picks groups[i][choice[i] - 1]
        let mut choice = alloc::vec![0usize; groups.len()];
        loop {
            let mut i = 0;
            loop {
                if i == groups.len() {
                    return true;
                }
                choice[i] += 1;
                if choice[i] <= groups[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            let picked = choice.iter().filter(|&&c| c > 0).count();
            if picked < 2 {
                continue;
            }
            let mut s = 1u64;
            let mut overflow = false;
            for (g, &c) in groups.iter().zip(&choice) {
                if c > 0 {
                    match s.checked_mul(g[c - 1]) {
                        Some(v) => s = v,
                        None => overflow = true,
                    }
                }
            }
            // Φ_s with s past u64 has degree far above anything representable
            if overflow || !divides_cyclotomic(poly, s) {
                return false;
            }
        }
    }
}

/// Upper end of the search range for `s` with `φ(s) <= degree`.
///
/// `φ(s) >= sqrt(s / 2)` for every `s`, so `φ(s) <= d` forces `s <= 2d^2`.
pub fn candidate_bound(degree: usize) -> u64 {
    let d = degree as u64;
    d.saturating_mul(d).saturating_mul(2).saturating_add(1)
}

/// Cyclotomic divisors of an arbitrary nonzero polynomial.
pub fn poly_cyclotomic_divisors(p: &IntPoly) -> CycloDivisors {
    let degree = p.degree().unwrap_or(0);
    let mut out = CycloDivisors {
        degree,
        ..CycloDivisors::default()
    };
    if p.is_zero() {
        return out;
    }
    for s in 2..=candidate_bound(degree) {
        if arith::euler_phi(s) > degree as u64 || !divides_cyclotomic(p, s) {
            continue;
        }
        out.all.push(s);
        if let Some((q, _)) = arith::prime_power(s) {
            out.prime_powers.push(s);
            out.by_prime.entry(q).or_default().push(s);
        }
    }
    out
}

/// Cyclotomic divisors of `A(x)` for the normalized set.
pub fn cyclotomic_divisors(a: &IntSet) -> CycloDivisors {
    let (a, _) = a.normalized();
    poly_cyclotomic_divisors(&a.char_poly())
}

pub fn check_t1(a: &IntSet) -> bool {
    cyclotomic_divisors(a).t1_holds(a.len() as u64)
}

pub fn check_t2(a: &IntSet) -> bool {
    let (a, _) = a.normalized();
    let poly = a.char_poly();
    poly_cyclotomic_divisors(&poly).t2_holds(&poly)
}
