use num_rational::BigRational;
use num_traits::{One, Zero};

/// Basis of `{x : M x = 0}` over `Q`, returned in reduced echelon form with
/// leading coefficient 1. Pivoting is fixed: first nonzero row per column.
pub fn kernel_rational(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let pivots_and_rref = rref(m.to_vec(), cols);
    let (work, pivots) = pivots_and_rref;
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let vectors: Vec<Vec<BigRational>> = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[i][free].clone();
            }
            v
        })
        .collect();
    let (basis, _) = rref(vectors, cols);
    basis.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect()
}

fn rref(mut m: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (x, y) in other.iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row.max(pivots.len()));
    (m, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = kernel_rational(&m, 3);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![q(1), q(0), BigRational::new(BigInt::from(-1), BigInt::from(3))]);
        assert_eq!(k[1], vec![q(0), q(1), BigRational::new(BigInt::from(-2), BigInt::from(3))]);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        assert!(kernel_rational(&m, 2).is_empty());
        assert_eq!(kernel_rational(&[], 2).len(), 2);
    }
}
