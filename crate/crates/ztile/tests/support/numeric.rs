//! Floating-point cross-checks.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use ztile_core::IntPoly;

/// Nonzero roots of a monic polynomial as eigenvalues of a companion matrix.
/// Roots at zero are dropped; they add nothing to `S_j` for `j >= 1`.
pub fn roots(p: &IntPoly) -> Vec<Complex64> {
    let low = p.support().next().unwrap();
    let p = IntPoly::from_coeffs(p.coeffs()[low..].to_vec());
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
    // QR iteration stalls on permutation-like companions such as x^4 + 1;
    // a random orthogonal conjugation keeps the spectrum and avoids that
    let mut rng = rand::rngs::StdRng::seed_from_u64(m as u64);
    let q = DMatrix::<f64>::from_fn(m, m, |_, _| rng.random_range(-1.0..1.0))
        .qr()
        .q();
    let c = q.transpose() * c * &q;
    let schur =
        Schur::try_new(c, 1e-14, 100_000).unwrap_or_else(|| panic!("no Schur form for {p}"));
    schur.complex_eigenvalues().iter().copied().collect()
}

/// `|A(e^{2πi·num/den})|`.
pub fn abs_at_root_of_unity(a: &[u64], num: i64, den: i64) -> f64 {
    let t = 2.0 * std::f64::consts::PI * num as f64 / den as f64;
    let (re, im) = a.iter().fold((0.0, 0.0), |(re, im), &x| {
        let phase = t * x as f64;
        (re + phase.cos(), im + phase.sin())
    });
    re.hypot(im)
}
