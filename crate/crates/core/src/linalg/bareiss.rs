use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact determinant by Bareiss fraction-free elimination. Every division
/// performed is exact.
pub fn det_fraction_free(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign_flip = false;
    let mut prev = BigInt::one();

    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}
