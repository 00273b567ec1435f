//! Gaussian elimination over `F_p` with fixed pivoting: the pivot of a column
//! is the first row (in order) with a nonzero entry there.

use super::field::PrimeField;

/// Reduced row echelon form of `m`; returns the pivot columns.
fn rref_in_place(f: &PrimeField, m: &mut [Vec<u64>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = f.inv(m[row][col]);
        for x in m[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i == row || other[col] == 0 {
                continue;
            }
            let factor = other[col];
            for (x, &y) in other.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank_mod_p(f: &PrimeField, m: &[Vec<u64>]) -> usize {
    let mut work: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| f.reduce(x)).collect()).collect();
    rref_in_place(f, &mut work).len()
}

/// Basis of the right null space `{x : M x = 0}`, itself returned in reduced
/// echelon form. `cols` is needed when `m` has no rows.
pub fn kernel_mod_p(f: &PrimeField, m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| f.reduce(x)).collect()).collect();
    let pivots = rref_in_place(f, &mut work);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut kernel = Echelon::new(*f, cols);
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(work[i][free]);
        }
        kernel.insert(v);
    }
    kernel.into_basis()
}

/// A subspace of `F_p^dim` kept as a fully reduced echelon basis, sorted by
/// pivot column.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<u64>>>(field: PrimeField, dim: usize, vs: I) -> Self {
        let mut e = Echelon::new(field, dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &mut [u64]) {
        let f = &self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w: Vec<u64> = v.iter().map(|&x| self.field.reduce(x)).collect();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        for x in v.iter_mut() {
            *x = f.reduce(*x);
        }
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in &mut self.rows {
            let c = row[pc];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn into_basis(self) -> Vec<Vec<u64>> {
        self.rows
    }
}

/// Coefficients of `det(tI - M)` over `F_p`, lowest degree first (length
/// `n + 1`, monic). Reduces to upper Hessenberg form by similarity and then
/// runs the standard Hessenberg recurrence.
pub fn charpoly_mod_p(f: &PrimeField, m: &[Vec<u64>]) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| f.reduce(x)).collect()).collect();

    for col in 0..n.saturating_sub(2) {
        let sub = col + 1;
        let Some(pr) = (sub..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if pr != sub {
            h.swap(pr, sub);
            for row in h.iter_mut() {
                row.swap(pr, sub);
            }
        }
        let inv = f.inv(h[sub][col]);
        for i in sub + 1..n {
            let u = f.mul(h[i][col], inv);
            if u == 0 {
                continue;
            }
            // row_i -= u row_sub, then col_sub += u col_i
            for j in 0..n {
                let t = f.mul(u, h[sub][j]);
                h[i][j] = f.sub(h[i][j], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[i]);
                row[sub] = f.add(row[sub], t);
            }
        }
    }

    // polys[k] = charpoly of the leading k x k block
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for k in 1..=n {
        let mut next = vec![0u64; k + 1];
        let prev = &polys[k - 1];
        let diag = h[k - 1][k - 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(diag, c));
        }
        let mut prod = 1u64;
        for i in (1..k).rev() {
            prod = f.mul(prod, h[i][i - 1]);
            if prod == 0 {
                break;
            }
            let coef = f.mul(h[i - 1][k - 1], prod);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i - 1].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n + 1 polynomials")
}
