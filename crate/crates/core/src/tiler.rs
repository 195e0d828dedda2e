//! Deciding whether a finite set tiles `Z`, with checkable certificates.
//!
//! Every tiling of `Z` by a finite set `A` is periodic: `A ⊕ B ⊕ MZ = Z` for
//! a finite `B ⊂ [0, M)` with `#A · #B = M`. Moreover some tiling has period
//! dividing `L = lcm{s : Φ_s | A(x)}`, so trying the divisors of `L` decides
//! the question. For a fixed period the search is an exact cover of `Z_M` by
//! translates of `A mod M`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::tileset::{cyclotomic_divisors, CycloDivisors, IntSet};

/// `A ⊕ B = Z_M`: a period and a translation set inside `[0, M)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TilingCertificate {
    period: u64,
    complement: Vec<u64>,
}

impl TilingCertificate {
    /// Sorts the complement. No validity check; see [`verify_tiling`].
    pub fn new(period: u64, mut complement: Vec<u64>) -> Self {
        complement.sort_unstable();
        TilingCertificate { period, complement }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn complement(&self) -> &[u64] {
        &self.complement
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingOutcome {
    Tiles(TilingCertificate),
    DoesNotTile,
    /// The period bound was over the cap (or past `u64`, with `bound: None`).
    Undecided {
        bound: Option<u64>,
    },
}

impl TilingOutcome {
    pub fn certificate(&self) -> Option<&TilingCertificate> {
        match self {
            TilingOutcome::Tiles(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, TilingOutcome::Undecided { .. })
    }
}

/// `lcm{s : Φ_s | A(x)}`, 1 when there are no cyclotomic divisors, `None` if
/// the lcm overflows `u64`.
pub fn granville_bound(a: &IntSet) -> Option<u64> {
    granville_bound_from(&cyclotomic_divisors(a))
}

pub fn granville_bound_from(divisors: &CycloDivisors) -> Option<u64> {
    divisors
        .all()
        .iter()
        .try_fold(1u64, |acc, &s| arith::checked_lcm(acc, s))
}

/// Decides tiling, giving up when the period bound exceeds `cap`.
pub fn decide_tiling(a: &IntSet, cap: Option<u64>) -> TilingOutcome {
    decide_tiling_with(a, &cyclotomic_divisors(a), cap)
}

/// As [`decide_tiling`], reusing an inventory already taken of `a`.
pub fn decide_tiling_with(a: &IntSet, divisors: &CycloDivisors, cap: Option<u64>) -> TilingOutcome {
    let Some(bound) = granville_bound_from(divisors) else {
        return TilingOutcome::Undecided { bound: None };
    };
    if cap.is_some_and(|c| bound > c) {
        return TilingOutcome::Undecided { bound: Some(bound) };
    }
    let n = a.len() as u64;
    arith::divisors(bound)
        .into_iter()
        .filter(|m| m % n == 0)
        .find_map(|m| search_period(a, m))
        .map_or(TilingOutcome::DoesNotTile, TilingOutcome::Tiles)
}

/// First tiling certificate over the divisors of the period bound, in
/// increasing order of period.
///
/// # Panics
///
/// If the period bound does not fit in a `u64`; use [`decide_tiling`] when
/// that can happen.
pub fn find_tiling(a: &IntSet) -> Option<TilingCertificate> {
    match decide_tiling(a, None) {
        TilingOutcome::Tiles(c) => Some(c),
        TilingOutcome::DoesNotTile => None,
        TilingOutcome::Undecided { .. } => panic!("period bound for {a} overflows u64"),
    }
}

pub fn tiles_z(a: &IntSet) -> bool {
    find_tiling(a).is_some()
}

/// Searches for `B ∋ 0` with `A ⊕ B = Z_m`.
///
/// Always fills the smallest uncovered residue next, trying the elements of
/// `A` in increasing order as the one landing there.
pub fn search_period(a: &IntSet, m: u64) -> Option<TilingCertificate> {
    let n = a.len() as u64;
    if m == 0 || !m.is_multiple_of(n) {
        return None;
    }
    let modulus = usize::try_from(m).expect("period exceeds usize");
    let offset = a.min_element();
    let residues: Vec<usize> = a
        .elements()
        .iter()
        .map(|&x| ((x - offset) % m) as usize)
        .collect();
    let mut seen = vec![false; modulus];
    for &r in &residues {
        if core::mem::replace(&mut seen[r], true) {
            return None;
        }
    }

    let mut cover = Cover {
        covered: seen,
        residues: &residues,
        modulus,
    };
    let goal = modulus / residues.len();
    let mut placed: Vec<usize> = vec![0];

    // One frame per open residue: the residue and the next element of A to try on it.
    struct Frame {
        target: usize,
        next: usize,
    }
    let mut stack: Vec<Frame> = Vec::new();

    'descend: loop {
        if placed.len() == goal {
            let complement = placed.iter().map(|&b| b as u64).collect();
            return Some(TilingCertificate::new(m, complement));
        }
        let start = stack.last().map_or(0, |f| f.target);
        let target = (start..modulus)
            .find(|&r| !cover.covered[r])
            .expect("an uncovered residue remains");
        stack.push(Frame { target, next: 0 });

        loop {
            let frame = stack.last_mut()?;
            while frame.next < residues.len() {
                let r = residues[frame.next];
                frame.next += 1;
                let b = (frame.target + modulus - r) % modulus;
                if cover.fits(b) {
                    cover.set(b, true);
                    placed.push(b);
                    continue 'descend;
                }
            }
            stack.pop();
            if stack.is_empty() {
                return None;
            }
            let b = placed.pop().expect("each open frame placed a translate");
            cover.set(b, false);
        }
    }
}

struct Cover<'a> {
    covered: Vec<bool>,
    residues: &'a [usize],
    modulus: usize,
}

impl Cover<'_> {
    fn fits(&self, b: usize) -> bool {
        self.residues
            .iter()
            .all(|&r| !self.covered[(r + b) % self.modulus])
    }

    fn set(&mut self, b: usize, value: bool) {
        for &r in self.residues {
            self.covered[(r + b) % self.modulus] = value;
        }
    }
}

/// Checks `#A · #B = M` and that every residue mod `M` is `a + b` exactly once.
pub fn verify_tiling(a: &IntSet, cert: &TilingCertificate) -> bool {
    let m = cert.period;
    if m == 0 || (a.len() as u64).checked_mul(cert.complement.len() as u64) != Some(m) {
        return false;
    }
    let Ok(modulus) = usize::try_from(m) else {
        return false;
    };
    let mut hits = vec![0u32; modulus];
    for &x in a.elements() {
        for &y in &cert.complement {
            let r = ((x % m) + (y % m)) % m;
            hits[r as usize] += 1;
        }
    }
    hits.iter().all(|&h| h == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> IntSet {
        IntSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn period_bounds() {
        assert_eq!(granville_bound(&set(&[0, 1, 2, 3])), Some(4));
        assert_eq!(granville_bound(&set(&[0, 1, 3])), Some(1));
        assert_eq!(granville_bound(&set(&[0, 2, 4])), Some(6));
    }

    #[test]
    fn arithmetic_progressions_tile() {
        let c = find_tiling(&set(&[0, 2])).unwrap();
        assert_eq!((c.period(), c.complement()), (4, &[0, 1][..]));
        let c = find_tiling(&set(&[0, 3, 6])).unwrap();
        assert_eq!((c.period(), c.complement()), (9, &[0, 1, 2][..]));
        let c = find_tiling(&set(&[0, 1, 2, 3, 4, 5])).unwrap();
        assert_eq!((c.period(), c.complement()), (6, &[0][..]));
    }

    #[test]
    fn non_tiles() {
        assert_eq!(find_tiling(&set(&[0, 1, 3])), None);
        assert!(!tiles_z(&set(&[0, 1, 3, 4])));
        assert!(tiles_z(&set(&[0, 1, 8, 9])));
    }

    #[test]
    fn certificate_checks() {
        assert!(verify_tiling(
            &set(&[0, 1]),
            &TilingCertificate::new(2, vec![0])
        ));
        assert!(!verify_tiling(
            &set(&[0, 2]),
            &TilingCertificate::new(4, vec![0, 2])
        ));
        assert!(verify_tiling(
            &set(&[0, 1, 2, 3]),
            &TilingCertificate::new(4, vec![0])
        ));
        assert!(!verify_tiling(
            &set(&[0, 1]),
            &TilingCertificate::new(0, vec![])
        ));
        assert!(!verify_tiling(
            &set(&[0, 1]),
            &TilingCertificate::new(4, vec![0])
        ));
    }

    #[test]
    fn translated_sets_share_certificates() {
        let a = set(&[5, 6, 13, 14]);
        let c = find_tiling(&a).unwrap();
        assert!(verify_tiling(&a, &c));
        assert_eq!(Some(c), find_tiling(&set(&[0, 1, 8, 9])));
    }

    #[test]
    fn cap_reports_undecided() {
        let a = set(&[0, 1, 2, 3]);
        assert_eq!(
            decide_tiling(&a, Some(3)),
            TilingOutcome::Undecided { bound: Some(4) }
        );
        assert!(decide_tiling(&a, Some(4)).certificate().is_some());
    }

    #[test]
    fn periods_with_colliding_residues_are_skipped() {
        assert_eq!(search_period(&set(&[0, 4]), 4), None);
        assert_eq!(search_period(&set(&[0, 1]), 3), None);
    }
}
