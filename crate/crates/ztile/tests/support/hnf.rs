//! Hermite normal form over `i128` and lattice membership by reduction.

/// Row-style Hermite normal form of the lattice spanned by `rows`: echelon
/// rows with positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, zero rows dropped.
pub fn hermite(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let Some(cols) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let mut out: Vec<Vec<i128>> = Vec::new();
    for c in 0..cols {
        // Euclid on column c until a single row has a nonzero entry there
        loop {
            let mut nz: Vec<usize> = (0..m.len()).filter(|&r| m[r][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&r| m[r][c].abs());
            let p = nz[0];
            for &r in &nz[1..] {
                let q = m[r][c] / m[p][c];
                let pivot_row = m[p].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= q * y;
                }
            }
        }
        if let Some(r) = (0..m.len()).find(|&r| m[r][c] != 0) {
            let mut row = m.swap_remove(r);
            if row[c] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(row);
        }
    }
    for k in 0..out.len() {
        let c = pivot(&out[k]).unwrap();
        for i in 0..k {
            let q = out[i][c].div_euclid(out[k][c]);
            let pivot_row = out[k].clone();
            for (x, y) in out[i].iter_mut().zip(&pivot_row) {
                *x -= q * y;
            }
        }
    }
    out
}

fn pivot(row: &[i128]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// Whether `v` is an integer combination of the rows behind `h`.
pub fn contains(h: &[Vec<i128>], v: &[i128]) -> bool {
    let mut v = v.to_vec();
    for row in h {
        let c = pivot(row).unwrap();
        if v[c] % row[c] != 0 {
            return false;
        }
        let q = v[c] / row[c];
        for (x, y) in v.iter_mut().zip(row) {
            *x -= q * y;
        }
    }
    v.iter().all(|&x| x == 0)
}
