//! Jacobson radical of the adjacency algebra over a prime field.
//!
//! [`radical_chain`] works in the faithful `n × n` realization and shrinks the
//! algebra through the chain `A = A_0 ⊇ A_1 ⊇ … ⊇ A_{k+1}`, `k = ⌊log_p n⌋`,
//! where `A_{i+1}` is the set of `x ∈ A_i` with `c_{p^i}(x y) = 0` for every
//! basis element `y` of `A`, and `c_m` is the `m`-th coefficient function of
//! the characteristic polynomial (`c_1` is the trace). On `A_i` the function
//! `c_{p^i}` is additive, and over `F_p` it is linear, so every step is a
//! kernel computation. [`radical_oracle`] enumerates the whole algebra.

use thiserror::Error;

use crate::linalg::field::NotPrime;
use crate::linalg::{charpoly_mod_p, Echelon, PrimeField};
use crate::scheme::Configuration;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RadicalError {
    #[error(transparent)]
    NotPrime(#[from] NotPrime),
    #[error("enumeration needs {needed} elements, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("radical validation failed: {0}")]
    Validation(String),
}

/// The adjacency algebra over `F_p`. Basis element `R` is the matrix
/// `A(R) mod p`; since the supports are disjoint, the matrix of
/// `Σ x_R A(R)` has entry `x_{color(u,v)}` at `(u, v)`.
#[derive(Debug, Clone)]
pub struct ModularAlgebra {
    field: PrimeField,
    size: usize,
    rank: usize,
    colors: Vec<usize>,
    terms: Vec<Vec<(usize, u64)>>,
}

impl ModularAlgebra {
    pub fn new(config: &Configuration, p: u64) -> Result<Self, RadicalError> {
        let field = PrimeField::new(p)?;
        let r = config.rank();
        let tensor = config.tensor();
        let terms = (0..r * r)
            .map(|rs| {
                tensor
                    .product_terms(rs / r, rs % r)
                    .iter()
                    .map(|&(t, c)| (t, field.reduce(u64::from(c))))
                    .filter(|&(_, c)| c != 0)
                    .collect()
            })
            .collect();
        Ok(ModularAlgebra {
            field,
            size: config.size(),
            rank: r,
            colors: config.scheme().colors().to_vec(),
            terms,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn multiply(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let r = self.rank;
        let mut z = vec![0u64; r];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let xy = f.mul(xa, yb);
                for &(t, c) in &self.terms[a * r + b] {
                    z[t] = f.add(z[t], f.mul(xy, c));
                }
            }
        }
        z
    }

    /// `x · A(s)`.
    fn multiply_basis_right(&self, x: &[u64], s: usize) -> Vec<u64> {
        let f = &self.field;
        let r = self.rank;
        let mut z = vec![0u64; r];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for &(t, c) in &self.terms[a * r + s] {
                z[t] = f.add(z[t], f.mul(xa, c));
            }
        }
        z
    }

    /// `A(s) · x`.
    fn multiply_basis_left(&self, s: usize, x: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let r = self.rank;
        let mut z = vec![0u64; r];
        for (b, &xb) in x.iter().enumerate() {
            if xb == 0 {
                continue;
            }
            for &(t, c) in &self.terms[s * r + b] {
                z[t] = f.add(z[t], f.mul(xb, c));
            }
        }
        z
    }

    /// The `n × n` matrix of an element.
    pub fn matrix(&self, x: &[u64]) -> Vec<Vec<u64>> {
        self.colors.chunks(self.size).map(|row| row.iter().map(|&c| x[c]).collect()).collect()
    }

    pub fn basis_matrix(&self, relation: usize) -> Vec<Vec<u64>> {
        self.colors.chunks(self.size).map(|row| row.iter().map(|&c| u64::from(c == relation)).collect()).collect()
    }

    pub fn is_central(&self, x: &[u64]) -> bool {
        (0..self.rank).all(|s| self.multiply_basis_right(x, s) == self.multiply_basis_left(s, x))
    }

    fn unit(&self, relation: usize) -> Vec<u64> {
        let mut v = vec![0; self.rank];
        v[relation] = 1;
        v
    }

    /// `x^(2^t)` with `2^t ≥ rank`; zero exactly when `x` is nilpotent.
    fn is_nilpotent_element(&self, x: &[u64]) -> bool {
        let mut y = x.to_vec();
        let mut power = 1usize;
        while power < self.rank.max(1) {
            y = self.multiply(&y, &y);
            power *= 2;
            if y.iter().all(|&c| c == 0) {
                return true;
            }
        }
        y.iter().all(|&c| c == 0)
    }

    /// Two-sided ideal generated by the span of `gens`. Stops early with
    /// `None` once the whole algebra is reached.
    fn ideal_closure(&self, gens: &[Vec<u64>]) -> Option<Echelon> {
        let mut ideal = Echelon::new(self.field, self.rank);
        let mut queue: Vec<Vec<u64>> = Vec::new();
        for g in gens {
            if ideal.insert(g.clone()) {
                queue.push(g.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for s in 0..self.rank {
                for w in [self.multiply_basis_right(&v, s), self.multiply_basis_left(s, &v)] {
                    if ideal.insert(w.clone()) {
                        if ideal.len() == self.rank {
                            return None;
                        }
                        queue.push(w);
                    }
                }
            }
        }
        Some(ideal)
    }

    /// Whether the span `S` is nilpotent: iterate `S_{k+1} = span(S_k · S)`
    /// until it vanishes or stops shrinking.
    fn span_is_nilpotent(&self, span: &[Vec<u64>]) -> bool {
        let mut current: Vec<Vec<u64>> = span.to_vec();
        for _ in 0..=self.rank {
            if current.is_empty() {
                return true;
            }
            let mut next = Echelon::new(self.field, self.rank);
            for u in &current {
                for v in span {
                    next.insert(self.multiply(u, v));
                }
            }
            if next.len() >= current.len() {
                return false;
            }
            current = next.into_basis();
        }
        current.is_empty()
    }

    /// `c_m` of the matrix of `x`: the `m`-th elementary symmetric function
    /// of its eigenvalues.
    fn charpoly_coefficient(&self, x: &[u64], m: usize) -> u64 {
        let chi = charpoly_mod_p(&self.field, &self.matrix(x));
        let c = chi[self.size - m];
        if m.is_multiple_of(2) {
            c
        } else {
            self.field.neg(c)
        }
    }

    fn matrix_is_nilpotent(&self, x: &[u64]) -> bool {
        let f = &self.field;
        let n = self.size;
        let m = self.matrix(x);
        let mul = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).fold(0, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j])))).collect())
                .collect()
        };
        let mut power = m.clone();
        let mut k = 1;
        while k < n {
            power = mul(&power, &power);
            k *= 2;
        }
        power.iter().all(|row| row.iter().all(|&c| c == 0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Chain,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalResult {
    pub dim: usize,
    /// Reduced echelon basis in relation coordinates.
    pub basis: Vec<Vec<u64>>,
    pub method: Method,
}

impl RadicalResult {
    pub fn is_semisimple(&self) -> bool {
        self.dim == 0
    }

    pub fn contains(&self, field: PrimeField, x: &[u64]) -> bool {
        Echelon::from_vectors(field, x.len(), self.basis.iter().cloned()).contains(x)
    }
}

/// Largest `k` with `p^k ≤ n`.
fn floor_log(p: u64, n: usize) -> u32 {
    let mut k = 0;
    let mut power = p;
    while power <= n as u64 {
        k += 1;
        power *= p;
    }
    k
}

pub fn radical_chain(alg: &ModularAlgebra) -> Result<RadicalResult, RadicalError> {
    let steps = floor_log(alg.prime(), alg.size);
    radical_chain_steps(alg, steps)
}

/// Runs the chain for `i = 0..=steps`. Extra steps beyond `⌊log_p n⌋` leave
/// the result unchanged.
pub fn radical_chain_steps(alg: &ModularAlgebra, steps: u32) -> Result<RadicalResult, RadicalError> {
    let f = alg.field;
    let r = alg.rank;
    let mut current: Vec<Vec<u64>> = (0..r).map(|c| alg.unit(c)).collect();
    for i in 0..=steps {
        if current.is_empty() {
            break;
        }
        let m = alg.prime().pow(i) as usize;
        if m > alg.size {
            break;
        }
        // equations[j][l] = c_m(b_l · A(j))
        let mut equations = vec![vec![0u64; current.len()]; r];
        for (l, b) in current.iter().enumerate() {
            for (j, row) in equations.iter_mut().enumerate() {
                row[l] = alg.charpoly_coefficient(&alg.multiply_basis_right(b, j), m);
            }
        }
        let kernel = crate::linalg::kernel_mod_p(&f, &equations, current.len());
        let next = Echelon::from_vectors(
            f,
            r,
            kernel.iter().map(|lambda| {
                let mut v = vec![0u64; r];
                for (coef, b) in lambda.iter().zip(&current) {
                    for (acc, &x) in v.iter_mut().zip(b) {
                        *acc = f.add(*acc, f.mul(*coef, x));
                    }
                }
                v
            }),
        );
        current = next.into_basis();
    }
    validate(alg, &current)?;
    Ok(RadicalResult { dim: current.len(), basis: current, method: Method::Chain })
}

fn validate(alg: &ModularAlgebra, basis: &[Vec<u64>]) -> Result<(), RadicalError> {
    let span = Echelon::from_vectors(alg.field, alg.rank, basis.iter().cloned());
    for b in basis {
        if !alg.matrix_is_nilpotent(b) {
            return Err(RadicalError::Validation(format!("basis element {b:?} is not a nilpotent matrix")));
        }
        for s in 0..alg.rank {
            if !span.contains(&alg.multiply_basis_right(b, s)) || !span.contains(&alg.multiply_basis_left(s, b)) {
                return Err(RadicalError::Validation("result is not a two-sided ideal".into()));
            }
        }
    }
    if !alg.span_is_nilpotent(basis) {
        return Err(RadicalError::Validation("result is not a nilpotent ideal".into()));
    }
    Ok(())
}

/// Enumerates all `p^r` elements and keeps those generating a nilpotent
/// two-sided ideal. Asserts the kept set is a subspace.
pub fn radical_oracle(alg: &ModularAlgebra, budget: u128) -> Result<RadicalResult, RadicalError> {
    let p = u128::from(alg.prime());
    let r = alg.rank;
    let needed = (0..r).try_fold(1u128, |acc, _| acc.checked_mul(p)).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(RadicalError::BudgetExceeded { needed, budget });
    }
    let mut x = vec![0u64; r];
    let mut kept: u128 = 0;
    let mut span = Echelon::new(alg.field, r);
    loop {
        let in_radical = x.iter().all(|&c| c == 0)
            || (alg.is_nilpotent_element(&x)
                && alg.ideal_closure(std::slice::from_ref(&x)).is_some_and(|ideal| alg.span_is_nilpotent(ideal.basis())));
        if in_radical {
            kept += 1;
            span.insert(x.clone());
        }
        // next element in mixed radix
        let mut i = 0;
        while i < r {
            x[i] += 1;
            if x[i] < alg.prime() {
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    let span_size = (0..span.len()).fold(1u128, |acc, _| acc * p);
    if span_size != kept {
        return Err(RadicalError::Validation(format!(
            "oracle kept {kept} elements, which is not the subspace of size {span_size} they span"
        )));
    }
    let basis = span.into_basis();
    Ok(RadicalResult { dim: basis.len(), basis, method: Method::Oracle })
}

pub fn is_semisimple(config: &Configuration, p: u64) -> Result<bool, RadicalError> {
    Ok(radical_chain(&ModularAlgebra::new(config, p)?)?.is_semisimple())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessCase {
    /// Some cell size is prime to `p`: coefficient `∏_{Y≠X} |Y|` on `J_X`.
    ComplementProducts,
    /// Coefficient `p^(λ−α_X) m_X^{-1}` on `J_X`, where `|X| = p^α_X m_X`
    /// and `λ = max α_X`.
    ScaledPrimePowers,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub element: Vec<u64>,
    pub case: WitnessCase,
}

/// A nonzero central element with square zero, built from the all-ones
/// blocks `J_X` of the cells, whenever `p` divides some cell size.
///
/// The complement-product form vanishes mod `p` once `p` divides two or more
/// cell sizes; the scaled form is used then, and it is valid whenever `p`
/// divides some cell size.
pub fn central_nilpotent_witness(config: &Configuration, p: u64) -> Result<Option<Witness>, RadicalError> {
    let alg = ModularAlgebra::new(config, p)?;
    let f = alg.field;
    let sizes: Vec<u64> = config.cell_sizes().iter().map(|&s| s as u64).collect();
    if sizes.iter().all(|s| s % p != 0) {
        return Ok(None);
    }

    let assemble = |coeffs: &[u64]| -> Vec<u64> {
        let scheme = config.scheme();
        let mut v = vec![0u64; config.rank()];
        for (cell, &c) in coeffs.iter().enumerate() {
            for rel in scheme.relations_in_cell(cell) {
                v[rel] = c;
            }
        }
        v
    };

    let mut candidate = None;
    if sizes.iter().any(|s| s % p != 0) {
        let coeffs: Vec<u64> = (0..sizes.len())
            .map(|x| {
                sizes.iter().enumerate().filter(|&(y, _)| y != x).fold(1, |acc, (_, &s)| f.mul(acc, f.reduce(s)))
            })
            .collect();
        let element = assemble(&coeffs);
        if element.iter().any(|&c| c != 0) {
            candidate = Some(Witness { element, case: WitnessCase::ComplementProducts });
        }
    }
    let witness = match candidate {
        Some(w) => w,
        None => {
            let split: Vec<(u32, u64)> = sizes
                .iter()
                .map(|&s| {
                    let (mut alpha, mut m) = (0, s);
                    while m % p == 0 {
                        m /= p;
                        alpha += 1;
                    }
                    (alpha, m)
                })
                .collect();
            let lambda = split.iter().map(|&(a, _)| a).max().expect("at least one cell");
            let coeffs: Vec<u64> = split
                .iter()
                .map(|&(alpha, m)| if alpha == lambda { f.inv(f.reduce(m)) } else { 0 })
                .collect();
            Witness { element: assemble(&coeffs), case: WitnessCase::ScaledPrimePowers }
        }
    };

    if witness.element.iter().all(|&c| c == 0) {
        return Err(RadicalError::Validation("witness is zero".into()));
    }
    if !alg.is_central(&witness.element) {
        return Err(RadicalError::Validation("witness is not central".into()));
    }
    if alg.multiply(&witness.element, &witness.element).iter().any(|&c| c != 0) {
        return Err(RadicalError::Validation("witness does not square to zero".into()));
    }
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{direct_sum, discrete, rank2, thin_group_scheme, CayleyTable};
    use crate::scheme::Scheme;

    fn cfg(s: Scheme) -> Configuration {
        Configuration::new(s).unwrap()
    }

    fn thin(name: &str) -> Configuration {
        cfg(thin_group_scheme(&CayleyTable::by_name(name).unwrap()).unwrap())
    }

    fn chain(c: &Configuration, p: u64) -> RadicalResult {
        radical_chain(&ModularAlgebra::new(c, p).unwrap()).unwrap()
    }

    #[test]
    fn chain_examples() {
        assert_eq!(chain(&thin("Z2"), 2).basis, vec![vec![1, 1]]);
        let k3 = cfg(rank2(3).unwrap());
        assert_eq!(chain(&k3, 3).basis, vec![vec![1, 1]]);
        assert_eq!(chain(&k3, 2).dim, 0);
    }

    #[test]
    fn oracle_examples() {
        let z4 = thin("Z4");
        let alg = ModularAlgebra::new(&z4, 2).unwrap();
        let oracle = radical_oracle(&alg, 1 << 16).unwrap();
        assert_eq!(oracle.dim, 3);
        assert_eq!(oracle.basis, chain(&z4, 2).basis);

        let d2 = cfg(discrete(2).unwrap());
        for p in [2, 3, 5] {
            assert_eq!(radical_oracle(&ModularAlgebra::new(&d2, p).unwrap(), 1 << 16).unwrap().dim, 0);
        }

        let k3 = cfg(rank2(3).unwrap());
        let alg = ModularAlgebra::new(&k3, 3).unwrap();
        assert_eq!(radical_oracle(&alg, 1 << 16).unwrap().basis, vec![vec![1, 1]]);
    }

    #[test]
    fn oracle_budget() {
        let alg = ModularAlgebra::new(&thin("Z4"), 5).unwrap();
        assert_eq!(radical_oracle(&alg, 100).unwrap_err(), RadicalError::BudgetExceeded { needed: 625, budget: 100 });
    }

    #[test]
    fn non_prime_modulus() {
        let k3 = cfg(rank2(3).unwrap());
        assert!(matches!(is_semisimple(&k3, 4), Err(RadicalError::NotPrime(NotPrime(4)))));
        assert!(is_semisimple(&k3, 2).unwrap());
        assert!(!is_semisimple(&k3, 3).unwrap());
    }

    #[test]
    fn extra_chain_steps_change_nothing() {
        let s3 = thin("S3");
        for p in [2, 3, 5, 7] {
            let alg = ModularAlgebra::new(&s3, p).unwrap();
            let k = floor_log(p, 6);
            assert_eq!(radical_chain_steps(&alg, k).unwrap(), radical_chain_steps(&alg, k + 2).unwrap());
        }
    }

    #[test]
    fn witness_complement_products() {
        let c = cfg(direct_sum(&rank2(2).unwrap(), &rank2(3).unwrap()));
        let w = central_nilpotent_witness(&c, 2).unwrap().unwrap();
        assert_eq!(w.case, WitnessCase::ComplementProducts);
        // coefficient 3 ≡ 1 on the size-2 cell block, 2 ≡ 0 on the size-3 block
        let scheme = c.scheme();
        for rel in 0..c.rank() {
            let expect = u64::from(scheme.fiber_of(rel) == Some((0, 0)));
            assert_eq!(w.element[rel], expect);
        }
        assert!(chain(&c, 2).contains(PrimeField::new(2).unwrap(), &w.element));
    }

    #[test]
    fn witness_scaled_prime_powers() {
        let c = cfg(direct_sum(&rank2(2).unwrap(), &rank2(2).unwrap()));
        let w = central_nilpotent_witness(&c, 2).unwrap().unwrap();
        assert_eq!(w.case, WitnessCase::ScaledPrimePowers);
        let scheme = c.scheme();
        for rel in 0..c.rank() {
            let (x, y) = scheme.fiber_of(rel).unwrap();
            assert_eq!(w.element[rel], u64::from(x == y));
        }
    }

    #[test]
    fn witness_falls_back_when_two_cells_are_divisible() {
        let ab = direct_sum(&rank2(2).unwrap(), &rank2(2).unwrap());
        let c = cfg(direct_sum(&ab, &rank2(3).unwrap()));
        let w = central_nilpotent_witness(&c, 2).unwrap().unwrap();
        assert_eq!(w.case, WitnessCase::ScaledPrimePowers);
        assert!(chain(&c, 2).contains(PrimeField::new(2).unwrap(), &w.element));
    }

    #[test]
    fn no_witness_when_cells_are_prime_to_p() {
        assert_eq!(central_nilpotent_witness(&cfg(rank2(3).unwrap()), 2).unwrap(), None);
    }

    #[test]
    fn radical_elements_are_nilpotent_matrices() {
        let z6 = thin("Z6");
        for p in [2, 3] {
            let alg = ModularAlgebra::new(&z6, p).unwrap();
            let rad = radical_chain(&alg).unwrap();
            assert!(rad.dim > 0);
            assert!(rad.basis.iter().all(|b| alg.matrix_is_nilpotent(b)));
        }
    }
}
