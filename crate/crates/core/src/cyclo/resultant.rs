use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// `Res(f, g)` as the Sylvester determinant; coefficients indexed by degree.
///
/// Both inputs must be trimmed (nonzero leading coefficient) and nonzero.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in f.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in g.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}
