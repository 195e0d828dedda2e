use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

use ztile_core::analysis::{classify_prime_power_cyclotomic, power_sums, ramanujan_sum};
use ztile_core::intpoly::{cyclotomic, IntPoly};
use ztile_core::spectra::{
    construct_spectrum, max_spectrum_size, spectrum_search, spectrum_search_poly,
    verify_poly_spectrum, verify_spectrum, RationalSpectrum, Theta,
};
use ztile_core::tileset::{check_t1, check_t2, cyclotomic_divisors, IntSet};

/// Nonzero roots of a monic polynomial as eigenvalues of a companion matrix.
/// Roots at zero are dropped; they add nothing to `S_j` for `j ≥ 1`.
fn numeric_roots(p: &IntPoly) -> Vec<Complex64> {
    let low = p.support().next().unwrap();
    let p = &IntPoly::from_coeffs(p.coeffs()[low..].to_vec());
    let m = p.degree().unwrap();
    if m == 0 {
        return Vec::new();
    }
    let mut c = DMatrix::<f64>::zeros(m, m);
    for i in 1..m {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..m {
        c[(i, m - 1)] = -(p.coeff(i) as f64);
    }
    // Conjugating by a random orthogonal matrix keeps the spectrum and avoids
    // the stall of QR iteration on permutation-like companions such as x^4 + 1.
    let mut rng = rand::rngs::StdRng::seed_from_u64(m as u64);
    let q = DMatrix::<f64>::from_fn(m, m, |_, _| rng.random_range(-1.0..1.0))
        .qr()
        .q();
    let c = q.transpose() * c * &q;
    let schur =
        Schur::try_new(c, 1e-14, 100_000).unwrap_or_else(|| panic!("no Schur form for {p}"));
    schur.complex_eigenvalues().iter().copied().collect()
}

fn random_zero_one_monic(rng: &mut impl Rng, max_degree: usize) -> IntPoly {
    let deg = rng.random_range(1..=max_degree);
    let mut c: Vec<i64> = (0..deg).map(|_| i64::from(rng.random_bool(0.5))).collect();
    c.push(1);
    IntPoly::from_coeffs(c)
}

#[test]
fn power_sums_match_numeric_root_sums() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(17);
    for _ in 0..200 {
        let p = random_zero_one_monic(&mut rng, 30);
        let m = p.degree().unwrap();
        let roots = numeric_roots(&p);
        let exact = power_sums(&p, m).unwrap();
        for j in 1..=m {
            let numeric: Complex64 = roots.iter().map(|z| z.powi(j as i32)).sum();
            let s = exact.get(j).unwrap() as f64;
            assert!(
                (numeric - Complex64::new(s, 0.0)).norm() <= 1e-6,
                "{p}: S_{j} = {s}, numeric {numeric}"
            );
        }
    }
}

#[test]
fn gap_identities_for_zero_one_polynomials() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    for _ in 0..300 {
        let p = random_zero_one_monic(&mut rng, 40);
        let exps: Vec<usize> = p.support().collect();
        let top = *exps.last().unwrap();
        let Some(&second) = exps.iter().rev().nth(1) else {
            continue;
        };
        let gap = top - second;
        let s = power_sums(&p, gap).unwrap();
        for j in 1..gap {
            assert_eq!(s.get(j), Some(0), "{p}: S_{j}");
        }
        assert_eq!(s.get(gap), Some(-(gap as i64)), "{p}: S_{gap}");
    }
}

#[test]
fn ramanujan_sums_by_direct_summation() {
    for s in 1..=30u64 {
        for j in -10..=40i64 {
            let direct: f64 = (1..=s)
                .filter(|&k| num_integer::Integer::gcd(&k, &s) == 1)
                .map(|k| (2.0 * std::f64::consts::PI * (k as f64) * (j as f64) / s as f64).cos())
                .sum();
            assert!(
                (direct - ramanujan_sum(s, j) as f64).abs() < 1e-9,
                "c_{s}({j})"
            );
        }
    }
}

#[test]
fn power_sums_of_cyclotomic_products() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(9);
    for _ in 0..100 {
        let mut p = IntPoly::one();
        let mut indices = Vec::new();
        while indices.len() < 4 {
            let s = rng.random_range(1..=30u64);
            if p.degree().unwrap() + cyclotomic(s).unwrap().degree().unwrap() > 60 {
                break;
            }
            p = &p * &cyclotomic(s).unwrap();
            indices.push(s);
        }
        if indices.is_empty() {
            continue;
        }
        let sums = power_sums(&p, 40).unwrap();
        for j in 1..=40 {
            let expected: i64 = indices.iter().map(|&s| ramanujan_sum(s, j as i64)).sum();
            assert_eq!(sums.get(j), Some(expected), "{indices:?}, j = {j}");
        }
    }
}

#[test]
fn prime_power_family() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
        let (p, alpha) = ztile_core::arith::prime_power(q).unwrap();
        let step = q / p;
        let a = IntSet::new((0..p).map(|k| k * step)).unwrap();
        assert_eq!(classify_prime_power_cyclotomic(&a), Some((p, alpha)));
        assert_eq!(a.char_poly(), cyclotomic(q).unwrap());
        // consecutive gaps all equal M / (N - 1)
        let m = a.max_element();
        assert!(a.elements().windows(2).all(|w| w[1] - w[0] == m / (p - 1)));
        let spectrum = RationalSpectrum::new(
            (1..p as i64)
                .map(|j| Theta::new(j, q as i64).unwrap())
                .collect(),
        )
        .unwrap();
        assert!(verify_spectrum(&a, &spectrum), "{a}");
        // all j < p^α only works for α = 1: p/p^α is not a root position otherwise
        let every = RationalSpectrum::new(
            (1..q as i64)
                .map(|j| Theta::new(j, q as i64).unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(verify_spectrum(&a, &every), alpha == 1, "{a}");
        let c = ztile_core::tiler::find_tiling(&a).unwrap();
        assert_eq!(c.period(), q);
        assert_eq!(c.complement(), (0..step).collect::<Vec<_>>().as_slice());
    }
}

fn arb_set() -> impl Strategy<Value = IntSet> {
    prop::collection::btree_set(0u64..14, 2..6).prop_map(|s| IntSet::new(s).unwrap())
}

proptest! {
    #[test]
    fn formula_spectrum_is_complete(a in arb_set()) {
        let cm = check_t1(&a) && check_t2(&a);
        match construct_spectrum(&a) {
            Some(s) => {
                prop_assert!(cm);
                prop_assert_eq!(s.len(), a.len() - 1);
                prop_assert!(verify_spectrum(&a, &s));
            }
            None => prop_assert!(!cm),
        }
    }

    #[test]
    fn searched_spectra_verify_and_respect_the_term_bound(a in arb_set()) {
        let p = a.char_poly();
        let bound = max_spectrum_size(&p).unwrap();
        for n in 2..=bound + 1 {
            if let Some(s) = spectrum_search_poly(&a.normalized().0.char_poly(), n) {
                prop_assert_eq!(s.len(), n - 1);
                prop_assert!(verify_poly_spectrum(&p, s.thetas()));
                prop_assert!(n <= bound);
            }
        }
        if let Some(s) = spectrum_search(&a) {
            prop_assert!(verify_spectrum(&a, &s));
        }
    }

    #[test]
    fn root_conditions_match_inventory(a in arb_set(), num in 1i64..60, den in 2i64..60) {
        let t = Theta::new(num, den).unwrap();
        prop_assume!(!t.is_zero());
        let p = a.normalized().0.char_poly();
        let expected = cyclotomic_divisors(&a).contains(t.denom() as u64);
        prop_assert_eq!(ztile_core::spectra::is_root_of(&p, t), expected);
    }
}

#[test]
fn coefficient_above_one_admits_no_full_spectrum() {
    for c in [
        vec![1, 2, 1],
        vec![1, 0, 2, 0, 1],
        vec![1, 1, 2, 1, 1],
        vec![1, 3, 3, 1],
    ] {
        let p = IntPoly::from_coeffs(c);
        let n = p.eval(1).unwrap() as usize;
        assert!(spectrum_search_poly(&p, n).is_none(), "{p}");
        assert!(max_spectrum_size(&p).unwrap() < n);
    }
}

#[test]
fn two_element_spectra() {
    let a = IntSet::new([0, 1, 3, 4]).unwrap();
    assert_eq!(cyclotomic_divisors(&a).all(), &[2, 6]);
    assert!(spectrum_search(&a).is_none());
}
