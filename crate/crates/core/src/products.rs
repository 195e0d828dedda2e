//! Products of geometric-series factors.
//!
//! A [`ProductSpec`] lists pairs `(m_i, n_i)` and stands for
//! `A(x) = Π_i (1 + x^{m_i} + ... + x^{m_i(n_i - 1)})`. When this product has
//! 0/1 coefficients it is the characteristic polynomial of
//! `{Σ j_i m_i : 0 <= j_i < n_i}`, and tiling is decided by the tower
//! condition: some ordering of the factors with
//!
//! ```text
//! n_k | gcd(m_j / gcd(m_k, m_j) : j > k)   for every k < N.
//! ```
//!
//! When no ordering works, [`keller_violation_witness`] produces an integer
//! relation `w` (`Σ w_i m_i = 0`) whose scaled vector `(w_i / n_i)` has no
//! coordinate in `Z \ {0}`, i.e. a vector breaking Keller's cube-tiling
//! property.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{self, gcd};
use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::tileset::IntSet;

/// Largest factor count accepted; the tower search is over orderings.
pub const MAX_FACTORS: usize = 8;

/// One factor `1 + x^m + ... + x^{m(n-1)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub m: u64,
    pub n: u64,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.m, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductSpec {
    factors: Vec<Factor>,
}

impl ProductSpec {
    /// Requires `1 <= N <= MAX_FACTORS`, every `m >= 1` and every `n >= 2`.
    pub fn new<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<Self> {
        let factors: Vec<Factor> = pairs.into_iter().map(|(m, n)| Factor { m, n }).collect();
        if factors.is_empty() {
            return Err(Error::WrongFactorCount {
                expected: 1,
                found: 0,
            });
        }
        if factors.len() > MAX_FACTORS {
            return Err(Error::TooManyFactors {
                count: factors.len(),
                max: MAX_FACTORS,
            });
        }
        if let Some(f) = factors.iter().find(|f| f.m == 0 || f.n < 2) {
            return Err(Error::InvalidFactor { m: f.m, n: f.n });
        }
        Ok(ProductSpec { factors })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `d_ij = gcd(m_i, m_j)`.
    pub fn d(&self, i: usize, j: usize) -> u64 {
        gcd(self.factors[i].m, self.factors[j].m)
    }

    /// `A(1) = Π n_i`.
    pub fn size(&self) -> u64 {
        self.factors.iter().map(|f| f.n).product()
    }

    /// The factors in the given order (`order` is a permutation of indices).
    pub fn reordered(&self, order: &[usize]) -> ProductSpec {
        ProductSpec {
            factors: order.iter().map(|&i| self.factors[i]).collect(),
        }
    }

    /// `Σ_i u_i m_i`.
    pub fn pairing(&self, u: &[i64]) -> i128 {
        u.iter()
            .zip(&self.factors)
            .map(|(&w, f)| i128::from(w) * i128::from(f.m))
            .sum()
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A nonzero `w` with `Σ w_i m_i = 0` and, for every `i`, `w_i = 0` or
/// `n_i ∤ w_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KellerWitness {
    w: Vec<i64>,
}

impl KellerWitness {
    pub fn vector(&self) -> &[i64] {
        &self.w
    }
}

fn to_usize(v: u64) -> usize {
    usize::try_from(v).expect("exponent exceeds usize")
}

/// Expands `Π_i (1 + x^{m_i} + ... + x^{m_i(n_i - 1)})`.
pub fn product_poly(spec: &ProductSpec) -> IntPoly {
    spec.factors.iter().fold(IntPoly::one(), |acc, f| {
        let factor = IntPoly::from_exponents((0..f.n).map(|j| to_usize(j * f.m)));
        &acc * &factor
    })
}

pub fn is_zero_one(p: &IntPoly) -> bool {
    p.coeffs().iter().all(|&c| c == 0 || c == 1)
}

/// The set `{Σ j_i m_i}` when the product has 0/1 coefficients.
pub fn product_set(spec: &ProductSpec) -> Option<IntSet> {
    let p = product_poly(spec);
    if !is_zero_one(&p) {
        return None;
    }
    IntSet::new(p.support().map(|e| e as u64)).ok()
}

/// Divides every `m_i` by `gcd(m_1, ..., m_N)`.
pub fn normalize_gcd(spec: &ProductSpec) -> ProductSpec {
    let d = arith::gcd_all(spec.factors.iter().map(|f| f.m));
    ProductSpec {
        factors: spec
            .factors
            .iter()
            .map(|f| Factor { m: f.m / d, n: f.n })
            .collect(),
    }
}

/// `n_i | m_j / d_ij`: factor `i` may sit below factor `j` in a tower.
fn may_precede(spec: &ProductSpec, i: usize, j: usize) -> bool {
    let (fi, fj) = (spec.factors[i], spec.factors[j]);
    (fj.m / gcd(fi.m, fj.m)).is_multiple_of(fi.n)
}

/// The lexicographically first ordering (as indices into `spec`) that
/// satisfies the tower condition, if any.
pub fn tower_condition(spec: &ProductSpec) -> Option<Vec<usize>> {
    let mut order = Vec::with_capacity(spec.len());
    let mut used = vec![false; spec.len()];
    tower_extend(spec, &mut order, &mut used).then_some(order)
}

fn tower_extend(spec: &ProductSpec, order: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if order.len() == spec.len() {
        return true;
    }
    for i in 0..spec.len() {
        if used[i] {
            continue;
        }
        let fits = (0..spec.len()).all(|j| j == i || used[j] || may_precede(spec, i, j));
        if !fits {
            continue;
        }
        used[i] = true;
        order.push(i);
        if tower_extend(spec, order, used) {
            return true;
        }
        order.pop();
        used[i] = false;
    }
    false
}

/// `n_1 | m_2/d` or `n_2 | m_1/d` with `d = gcd(m_1, m_2)`.
pub fn two_factor_condition(spec: &ProductSpec) -> Result<bool> {
    if spec.len() != 2 {
        return Err(Error::WrongFactorCount {
            expected: 2,
            found: spec.len(),
        });
    }
    Ok(may_precede(spec, 0, 1) || may_precede(spec, 1, 0))
}

/// `w_ij`: `m_j / d_ij` at `i`, `-m_i / d_ij` at `j`, zero elsewhere.
pub fn w_vector(spec: &ProductSpec, i: usize, j: usize) -> Vec<i64> {
    let d = spec.d(i, j);
    let mut w = vec![0i64; spec.len()];
    w[i] = signed(spec.factors[j].m / d);
    w[j] = -signed(spec.factors[i].m / d);
    w
}

fn signed(v: u64) -> i64 {
    i64::try_from(v).expect("lattice coordinate exceeds i64")
}

/// All `w_ij` with `i < j`, in lexicographic order of `(i, j)`. They generate
/// the lattice `{w ∈ Z^N : Σ w_i m_i = 0}`.
pub fn w_basis(spec: &ProductSpec) -> Vec<Vec<i64>> {
    let n = spec.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| w_vector(spec, i, j))
        .collect()
}

/// Whether `w` is a nonzero relation whose scaled vector `(w_i / n_i)` has no
/// coordinate in `Z \ {0}`.
pub fn check_keller_violation(spec: &ProductSpec, w: &[i64]) -> bool {
    w.len() == spec.len()
        && w.iter().any(|&x| x != 0)
        && spec.pairing(w) == 0
        && w.iter()
            .zip(&spec.factors)
            .all(|(&x, f)| x == 0 || x.unsigned_abs() % f.n != 0)
}

/// A Keller-violating relation when no ordering satisfies the tower
/// condition, `None` when one does.
///
/// Peels off factors that can go first (they are never needed in the
/// witness), then on the rest picks for each `i` the smallest `σ(i) ≠ i` with
/// `n_i ∤ m_σ(i) / d`, follows `σ` into a cycle, and returns either a single
/// `w_{i,σ(i)}` from the cycle or the sum of all of them.
///
/// # Panics
///
/// If the constructed vector does not pass [`check_keller_violation`], which
/// would be a bug in this crate.
pub fn keller_violation_witness(spec: &ProductSpec) -> Option<KellerWitness> {
    if tower_condition(spec).is_some() {
        return None;
    }
    let mut active: Vec<usize> = (0..spec.len()).collect();
    // a factor that may precede all others can be placed first; the rest still has no tower
    while let Some(pos) = active
        .iter()
        .position(|&i| active.iter().all(|&j| j == i || may_precede(spec, i, j)))
    {
        active.remove(pos);
    }
    assert!(
        active.len() >= 2,
        "no tower yet every factor was peeled for {spec}"
    );

    let sigma = |i: usize| {
        active
            .iter()
            .copied()
            .find(|&j| j != i && !may_precede(spec, i, j))
            .expect("an unpeeled factor has a blocking partner")
    };
    let mut path = vec![active[0]];
    let cycle = loop {
        let next = sigma(*path.last().unwrap());
        if let Some(start) = path.iter().position(|&v| v == next) {
            break path.split_off(start);
        }
        path.push(next);
    };

    let r = cycle.len();
    let edges = (0..r).map(|k| (cycle[k], cycle[(k + 1) % r]));
    let w = match edges.clone().find(|&(i, j)| !may_precede(spec, j, i)) {
        Some((i, j)) => w_vector(spec, i, j),
        None => {
            let mut sum = vec![0i64; spec.len()];
            for (i, j) in edges {
                for (s, x) in sum.iter_mut().zip(w_vector(spec, i, j)) {
                    *s = s.checked_add(x).expect("lattice coordinate exceeds i64");
                }
            }
            sum
        }
    };
    assert!(
        check_keller_violation(spec, &w),
        "constructed {w:?} does not violate Keller's property for {spec}"
    );
    Some(KellerWitness { w })
}
