//! Rational spectra of polynomials.
//!
//! `{θ_1, ..., θ_{N-1}}` is an N-spectrum of `A(x)` when, with `θ_0 = 0`,
//! every `e^{2πi(θ_j - θ_k)}` (`j ≠ k`) is a root of `A`. For a rational
//! difference `p/q` in lowest terms that root is a primitive `q`-th root of
//! unity, so the condition is exactly `Φ_q | A(x)`. Only rational spectra are
//! handled here: a "none" from [`spectrum_search`] means there is no rational
//! one.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::intpoly::{divides_cyclotomic, IntPoly};
use crate::tileset::{poly_cyclotomic_divisors, IntSet};

/// A reduced fraction in `[0, 1)`, i.e. a point of `R/Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Theta(Ratio<i64>);

impl Theta {
    pub const ZERO: Theta = Theta(Ratio::new_raw(0, 1));

    /// `numer / denom` reduced modulo 1. Errors only on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidTheta { numer, denom });
        }
        Ok(Self::from_ratio(Ratio::new(numer, denom)))
    }

    /// Accepts only fractions already in lowest terms with `0 <= p/q < 1`.
    pub fn new_reduced(numer: i64, denom: i64) -> Result<Self> {
        let ok = denom > 0 && (0..denom).contains(&numer) && numer.gcd(&denom) == 1;
        let ok = ok || (numer == 0 && denom == 1);
        if !ok {
            return Err(Error::InvalidTheta { numer, denom });
        }
        Ok(Theta(Ratio::new_raw(numer, denom)))
    }

    fn from_ratio(r: Ratio<i64>) -> Self {
        Theta(r - r.floor())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    /// Denominator in lowest terms (1 for zero).
    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    /// `(self - other) mod 1`.
    pub fn sub_mod1(self, other: Theta) -> Theta {
        Self::from_ratio(self.0 - other.0)
    }

    /// `(self + other) mod 1`.
    pub fn add_mod1(self, other: Theta) -> Theta {
        Self::from_ratio(self.0 + other.0)
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Theta {
    type Err = Error;

    /// Parses `p/q` in lowest terms, `0 <= p/q < 1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = Error::InvalidTheta { numer: 0, denom: 0 };
        let (p, q) = s.trim().split_once('/').ok_or(bad.clone())?;
        let p: i64 = p.trim().parse().map_err(|_| bad.clone())?;
        let q: i64 = q.trim().parse().map_err(|_| bad)?;
        Theta::new_reduced(p, q)
    }
}

/// Distinct nonzero points of `R/Z`, stored in increasing order; `θ_0 = 0` is
/// implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalSpectrum {
    thetas: Vec<Theta>,
}

impl RationalSpectrum {
    pub fn new(mut thetas: Vec<Theta>) -> Result<Self> {
        thetas.sort_unstable();
        let dup = thetas.windows(2).any(|w| w[0] == w[1]);
        if dup || thetas.first().is_some_and(Theta::is_zero) {
            return Err(Error::DegenerateSpectrum);
        }
        Ok(RationalSpectrum { thetas })
    }

    pub fn thetas(&self) -> &[Theta] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

/// Number of nonzero coefficients: no N-spectrum exists for larger N.
pub fn max_spectrum_size(p: &IntPoly) -> Result<usize> {
    if let Some((exponent, &value)) = p.coeffs().iter().enumerate().find(|(_, &c)| c < 0) {
        return Err(Error::NegativeCoefficient { exponent, value });
    }
    Ok(p.nonzero_terms())
}

/// Whether `e^{2πi·delta}` is a root of `p`.
pub fn is_root_of(p: &IntPoly, delta: Theta) -> bool {
    if delta.is_zero() {
        return p.eval(1) == Some(0);
    }
    divides_cyclotomic(p, delta.denom() as u64)
}

/// Root conditions for every pair drawn from `thetas ∪ {0}`. The size of the
/// spectrum is not checked here.
pub fn verify_poly_spectrum(p: &IntPoly, thetas: &[Theta]) -> bool {
    let points: Vec<Theta> = core::iter::once(Theta::ZERO)
        .chain(thetas.iter().copied())
        .collect();
    for (j, &x) in points.iter().enumerate() {
        for &y in &points[j + 1..] {
            let delta = x.sub_mod1(y);
            // the opposite difference has the same denominator
            if delta.is_zero() || !is_root_of(p, delta) {
                return false;
            }
        }
    }
    true
}

pub fn verify_spectrum(a: &IntSet, spectrum: &RationalSpectrum) -> bool {
    verify_poly_spectrum(&a.char_poly(), spectrum.thetas())
}

/// The explicit spectrum `{Σ_{s∈S_A} k_s/s : 0 <= k_s < p for s = p^α} \ {0}`,
/// available when (T1) and (T2) hold.
///
/// # Panics
///
/// If the constructed set has the wrong size or fails verification, which
/// would be a bug in this crate.
pub fn construct_spectrum(a: &IntSet) -> Option<RationalSpectrum> {
    let (a, _) = a.normalized();
    let poly = a.char_poly();
    let divisors = poly_cyclotomic_divisors(&poly);
    if !divisors.t1_holds(a.len() as u64) || !divisors.t2_holds(&poly) {
        return None;
    }
    let mut sums = alloc::vec![Theta::ZERO];
    for &s in divisors.prime_powers() {
        let p = crate::intpoly::cyclotomic_at_one(s);
        let mut next = Vec::with_capacity(sums.len() * p as usize);
        for &acc in &sums {
            for k in 0..p {
                let step = Theta::new(k as i64, s as i64).expect("nonzero denominator");
                next.push(acc.add_mod1(step));
            }
        }
        sums = next;
    }
    sums.sort_unstable();
    sums.dedup();
    sums.retain(|t| !t.is_zero());
    assert_eq!(
        sums.len() + 1,
        a.len(),
        "spectrum formula produced {} points for {a}",
        sums.len()
    );
    assert!(
        verify_poly_spectrum(&poly, &sums),
        "spectrum formula failed verification for {a}"
    );
    Some(RationalSpectrum { thetas: sums })
}

/// Searches for a rational `#A`-spectrum.
pub fn spectrum_search(a: &IntSet) -> Option<RationalSpectrum> {
    let (a, _) = a.normalized();
    spectrum_search_poly(&a.char_poly(), a.len())
}

/// Searches for a rational `n`-spectrum of `p`.
///
/// Every `θ_j` must itself be a root position (its difference with `θ_0`), so
/// the candidates are the reduced `k/q` with `Φ_q | p`. Two candidates are
/// compatible when their difference is a root position as well, and a
/// spectrum is a clique of size `n - 1` in that graph.
pub fn spectrum_search_poly(p: &IntPoly, n: usize) -> Option<RationalSpectrum> {
    if n <= 1 {
        return Some(RationalSpectrum { thetas: Vec::new() });
    }
    if p.is_zero() {
        return None;
    }
    let divisors = poly_cyclotomic_divisors(p);
    let mut candidates: Vec<Theta> = Vec::new();
    for &q in divisors.all() {
        for k in 1..q {
            if k.gcd(&q) == 1 {
                candidates.push(Theta(Ratio::new_raw(k as i64, q as i64)));
            }
        }
    }
    candidates.sort_unstable();

    let graph = clique::Graph::from_fn(candidates.len(), |i, j| {
        let d = candidates[i].sub_mod1(candidates[j]);
        divisors.contains(d.denom() as u64)
    });
    let clique = graph.find_clique(n - 1)?;
    let thetas: Vec<Theta> = clique.into_iter().map(|i| candidates[i]).collect();
    debug_assert!(verify_poly_spectrum(p, &thetas));
    Some(RationalSpectrum { thetas })
}

mod clique {
    use alloc::vec;
    use alloc::vec::Vec;

    #[derive(Clone, PartialEq, Eq)]
    struct Bits(Vec<u64>);

    impl Bits {
        fn empty(n: usize) -> Self {
            Bits(vec![0; n.div_ceil(64)])
        }

        fn full(n: usize) -> Self {
            let mut b = Self::empty(n);
            for i in 0..n {
                b.insert(i);
            }
            b
        }

        fn insert(&mut self, i: usize) {
            self.0[i / 64] |= 1 << (i % 64);
        }

        fn remove(&mut self, i: usize) {
            self.0[i / 64] &= !(1 << (i % 64));
        }

        fn count(&self) -> usize {
            self.0.iter().map(|w| w.count_ones() as usize).sum()
        }

        fn and(&self, other: &Bits) -> Bits {
            Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
        }

        fn and_count(&self, other: &Bits) -> usize {
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum()
        }

        fn iter(&self) -> impl Iterator<Item = usize> + '_ {
            self.0.iter().enumerate().flat_map(|(w, &word)| {
                let mut word = word;
                core::iter::from_fn(move || {
                    if word == 0 {
                        return None;
                    }
                    let t = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * 64 + t)
                })
            })
        }
    }

    pub(super) struct Graph {
        adj: Vec<Bits>,
    }

    impl Graph {
        pub(super) fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
            let mut adj = vec![Bits::empty(n); n];
            for i in 0..n {
                for j in i + 1..n {
                    if edge(i, j) {
                        adj[i].insert(j);
                        adj[j].insert(i);
                    }
                }
            }
            Graph { adj }
        }

        /// A clique of exactly `k` vertices, in increasing vertex order.
        pub(super) fn find_clique(&self, k: usize) -> Option<Vec<usize>> {
            let mut chosen = Vec::new();
            if self.extend(Bits::full(self.adj.len()), &mut chosen, k) {
                chosen.sort_unstable();
                Some(chosen)
            } else {
                None
            }
        }

        /// Branch on the candidate with the fewest compatible candidates
        /// (lowest index on ties): first with it, then without it.
        fn extend(&self, mut pool: Bits, chosen: &mut Vec<usize>, k: usize) -> bool {
            loop {
                let need = k - chosen.len();
                if need == 0 {
                    return true;
                }
                // a vertex of the final clique has need - 1 partners inside the pool
                loop {
                    let weak: Vec<usize> = pool
                        .iter()
                        .filter(|&v| self.adj[v].and_count(&pool) + 1 < need)
                        .collect();
                    if weak.is_empty() {
                        break;
                    }
                    for v in weak {
                        pool.remove(v);
                    }
                }
                if pool.count() < need {
                    return false;
                }
                let Some(v) = pool.iter().min_by_key(|&v| self.adj[v].and_count(&pool)) else {
                    return false;
                };
                chosen.push(v);
                if self.extend(pool.and(&self.adj[v]), chosen, k) {
                    return true;
                }
                chosen.pop();
                pool.remove(v);
            }
        }
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn set(v: &[u64]) -> IntSet {
        IntSet::new(v.iter().copied()).unwrap()
    }

    fn th(p: i64, q: i64) -> Theta {
        Theta::new_reduced(p, q).unwrap()
    }

    fn spectrum(v: &[(i64, i64)]) -> RationalSpectrum {
        RationalSpectrum::new(v.iter().map(|&(p, q)| th(p, q)).collect()).unwrap()
    }

    #[test]
    fn theta_arithmetic() {
        assert_eq!(th(1, 4).sub_mod1(th(1, 2)), th(3, 4));
        assert_eq!(th(3, 4).add_mod1(th(1, 2)), th(1, 4));
        assert_eq!(Theta::new(6, 4).unwrap(), th(1, 2));
        assert_eq!(Theta::new(-1, 3).unwrap(), th(2, 3));
        assert!(Theta::new_reduced(2, 4).is_err());
        assert!(Theta::new_reduced(4, 3).is_err());
        assert_eq!("3/8".parse::<Theta>(), Ok(th(3, 8)));
        assert!("1/0".parse::<Theta>().is_err());
        assert_eq!(th(5, 12).to_string(), "5/12");
    }

    #[test]
    fn spectrum_construction_rejects_degenerate_lists() {
        assert_eq!(
            RationalSpectrum::new(vec![th(1, 2), th(1, 2)]),
            Err(Error::DegenerateSpectrum)
        );
        assert_eq!(
            RationalSpectrum::new(vec![Theta::ZERO]),
            Err(Error::DegenerateSpectrum)
        );
    }

    #[test]
    fn spectrum_size_bound() {
        let p = IntPoly::from_coeffs(vec![1, 1, 1, 1]);
        assert_eq!(max_spectrum_size(&p), Ok(4));
        let sq = IntPoly::from_coeffs(vec![1, 2, 1]);
        assert_eq!(max_spectrum_size(&sq), Ok(3));
        assert_eq!(max_spectrum_size(&IntPoly::one()), Ok(1));
        assert!(matches!(
            max_spectrum_size(&IntPoly::from_coeffs(vec![1, -1])),
            Err(Error::NegativeCoefficient {
                exponent: 1,
                value: -1
            })
        ));
    }

    #[test]
    fn roots() {
        assert!(is_root_of(&set(&[0, 1]).char_poly(), th(1, 2)));
        assert!(is_root_of(&set(&[0, 1, 2, 3]).char_poly(), th(1, 4)));
        assert!(!is_root_of(&set(&[0, 1, 3, 4]).char_poly(), th(1, 3)));
        assert!(!is_root_of(&set(&[0, 1]).char_poly(), Theta::ZERO));
    }

    #[test]
    fn verification() {
        assert!(verify_spectrum(&set(&[0, 1]), &spectrum(&[(1, 2)])));
        // {0, m, ..., (n-1)m} has the spectrum {k / nm}
        for (m, n) in [(1u64, 3u64), (2, 3), (3, 2), (4, 4), (5, 3)] {
            let a = IntSet::new((0..n).map(|j| j * m)).unwrap();
            let nm = (n * m) as i64;
            let s =
                RationalSpectrum::new((1..n as i64).map(|k| Theta::new(k, nm).unwrap()).collect())
                    .unwrap();
            assert!(verify_spectrum(&a, &s), "m = {m}, n = {n}");
        }
        // root conditions hold here; completeness (size 3) is the caller's check
        assert!(verify_spectrum(
            &set(&[0, 1, 2, 3]),
            &spectrum(&[(1, 2), (1, 4)])
        ));
        assert!(!verify_spectrum(&set(&[0, 1, 2, 3]), &spectrum(&[(1, 3)])));
    }

    #[test]
    fn formula_spectra() {
        let s = construct_spectrum(&set(&[0, 1, 2, 3])).unwrap();
        assert_eq!(s, spectrum(&[(1, 4), (1, 2), (3, 4)]));
        let s = construct_spectrum(&set(&[0, 2, 4])).unwrap();
        assert_eq!(s, spectrum(&[(1, 3), (2, 3)]));
        assert_eq!(construct_spectrum(&set(&[0, 1, 3])), None);
    }

    #[test]
    fn searched_spectra() {
        assert_eq!(spectrum_search(&set(&[0, 1])), Some(spectrum(&[(1, 2)])));
        assert_eq!(spectrum_search(&set(&[0, 1, 3, 4])), None);
        let s = spectrum_search(&set(&[0, 1, 2, 3])).unwrap();
        assert_eq!(s.len(), 3);
        assert!(verify_spectrum(&set(&[0, 1, 2, 3]), &s));
    }

    #[test]
    fn coefficient_two_blocks_full_spectra() {
        // (1 + x)^2 has A(1) = 4 but only three terms
        let p = IntPoly::from_coeffs(vec![1, 2, 1]);
        assert_eq!(spectrum_search_poly(&p, 4), None);
        assert!(spectrum_search_poly(&p, 2).is_some());
    }
}
