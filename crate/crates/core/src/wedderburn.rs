//! Degrees and multiplicities of the simple components of the complex
//! adjacency algebra, the Frame number and the Frame quotient.
//!
//! The split uses a random central element `z`. Its image on the standard
//! module is diagonalizable, and its distinct eigenvalues separate the central
//! primitive idempotents when `z` is generic. To keep the eigenproblem
//! Hermitian the element `h = (1+i) z + (1-i) z^t` is used instead: central
//! idempotents are self-adjoint, so `h` acts on block `j` as the real scalar
//! `2 (Re λ_j - Im λ_j)`, which still separates complex-conjugate blocks.
//!
//! Only integers leave this module. Degrees come from the rank of the
//! compression `w ↦ P w P` (which is `f^2` on a block `M_f(C)`) and
//! multiplicities from the standard character of the projector.

use std::fmt;

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::discriminant::{product_cell_sizes, product_relation_sizes};
use crate::linalg::{identity_element, kernel_rational, multiply, AlgebraElement, ComplexF64};
use crate::scheme::Configuration;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const RETRY_CAP: u64 = 8;
/// Central weights are drawn from `[-WEIGHT_RANGE, WEIGHT_RANGE]`.
pub const WEIGHT_RANGE: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WedderburnError {
    #[error("no generic central element found; seeds tried: {seeds:?}; last failure: {last}")]
    NonGeneric { seeds: Vec<u64>, last: String },
    #[error("rounding residual {residual:e} exceeds tolerance {tol:e}")]
    Residual { residual: f64, tol: f64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("blocks do not match the scheme: sum f^2 = {sum_f2} (rank {rank}), sum m f = {sum_mf} (size {size})")]
    InvalidBlocks { sum_f2: usize, rank: usize, sum_mf: usize, size: usize },
    #[error("product of relation sizes {product} is not divisible by prod m^(f^2) = {denominator}")]
    NotDivisible { product: BigInt, denominator: BigInt },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    pub degree: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WedderburnData {
    /// Sorted by `(degree, multiplicity)`.
    pub blocks: Vec<Block>,
    pub seed: u64,
    pub residual: f64,
}

impl WedderburnData {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| (b.degree, b.multiplicity)).collect()
    }
}

impl fmt::Display for WedderburnData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| format!("({},{})", b.degree, b.multiplicity)).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameNumber {
    pub frame: BigInt,
    pub quotient: BigRational,
}

impl FrameNumber {
    pub fn quotient_is_integer(&self) -> bool {
        self.quotient.is_integer()
    }
}

/// Exact basis of the center `{z : z A(R) = A(R) z for all R}` over `Q`.
pub fn center_basis(config: &Configuration) -> Vec<AlgebraElement<BigRational>> {
    let tensor = config.tensor();
    let r = config.rank();
    // row (R, T): Σ_S z_S (c[S][R][T] - c[R][S][T]) = 0
    let mut rows = Vec::with_capacity(r * r);
    for a in 0..r {
        for t in 0..r {
            let row: Vec<BigRational> = (0..r)
                .map(|s| {
                    let diff = i64::from(tensor.get(s, a, t)) - i64::from(tensor.get(a, s, t));
                    BigRational::from_integer(BigInt::from(diff))
                })
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    kernel_rational(&rows, r).into_iter().map(AlgebraElement::new).collect()
}

/// Splits the complex adjacency algebra. Seeds `seed, seed + 1, …` are tried
/// until a central element separates all blocks and every check passes.
pub fn decompose(config: &Configuration, seed: u64, tol: f64) -> Result<WedderburnData, WedderburnError> {
    let center = center_basis(config);
    let mut seeds = Vec::new();
    let mut last = String::new();
    for attempt in 0..RETRY_CAP {
        let s = seed.wrapping_add(attempt);
        seeds.push(s);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let weights: Vec<i64> = center.iter().map(|_| rng.random_range(-WEIGHT_RANGE..=WEIGHT_RANGE)).collect();
        let z = combine(&center, &weights, config.rank());
        match split(config, &z, center.len(), tol) {
            Ok((blocks, residual)) => return Ok(WedderburnData { blocks, seed: s, residual }),
            Err(SplitFailure::Residual(residual)) if attempt + 1 == RETRY_CAP => {
                return Err(WedderburnError::Residual { residual, tol });
            }
            Err(e) => last = e.to_string(),
        }
    }
    Err(WedderburnError::NonGeneric { seeds, last })
}

fn combine(center: &[AlgebraElement<BigRational>], weights: &[i64], rank: usize) -> Vec<f64> {
    let mut z = vec![BigRational::zero(); rank];
    for (basis, &w) in center.iter().zip(weights) {
        let w = BigRational::from_integer(BigInt::from(w));
        for (acc, c) in z.iter_mut().zip(&basis.coeffs) {
            *acc += &w * c;
        }
    }
    z.iter().map(|x| x.to_f64().expect("small rational")).collect()
}

#[derive(Debug, Clone, PartialEq, Error)]
enum SplitFailure {
    #[error("{found} eigenvalue clusters for a center of dimension {expected}")]
    ClusterCount { found: usize, expected: usize },
    #[error("compression rank {0} is not a perfect square")]
    NotSquare(usize),
    #[error("block sums do not match: sum f^2 = {0}, sum m f = {1}")]
    Sums(usize, usize),
    #[error("rounding residual {0:e}")]
    Residual(f64),
}

fn split(
    config: &Configuration,
    z: &[f64],
    center_dim: usize,
    tol: f64,
) -> Result<(Vec<Block>, f64), SplitFailure> {
    let scheme = config.scheme();
    let tensor = config.tensor();
    let (n, r) = (config.size(), config.rank());
    let ring = ComplexF64;

    let h: Vec<Complex<f64>> = (0..r)
        .map(|c| Complex::new(1.0, 1.0) * z[c] + Complex::new(1.0, -1.0) * z[scheme.transpose_of(c)])
        .collect();
    let hm = DMatrix::from_fn(n, n, |u, v| h[scheme.color(u, v)]);
    let mut eigen: Vec<f64> = hm.symmetric_eigenvalues().iter().copied().collect();
    eigen.sort_by(f64::total_cmp);

    let scale = eigen.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut clusters: Vec<Vec<f64>> = vec![vec![eigen[0]]];
    for w in eigen.windows(2) {
        if w[1] - w[0] > tol * scale {
            clusters.push(Vec::new());
        }
        clusters.last_mut().expect("nonempty").push(w[1]);
    }
    if clusters.len() != center_dim {
        return Err(SplitFailure::ClusterCount { found: clusters.len(), expected: center_dim });
    }
    let means: Vec<f64> = clusters.iter().map(|c| c.iter().sum::<f64>() / c.len() as f64).collect();
    let mut residual = clusters
        .iter()
        .map(|c| (c[c.len() - 1] - c[0]) / scale)
        .fold(0.0f64, f64::max);

    let one = identity_element(&ring, scheme);
    let h_elem = AlgebraElement::new(h);
    let mut blocks = Vec::with_capacity(means.len());
    for (j, &mu) in means.iter().enumerate() {
        // Lagrange interpolation: P_j = Π_{l≠j} (h - μ_l) / (μ_j - μ_l)
        let mut proj = one.clone();
        for (l, &other) in means.iter().enumerate() {
            if l == j {
                continue;
            }
            let factor = AlgebraElement::new(
                h_elem
                    .coeffs
                    .iter()
                    .zip(&one.coeffs)
                    .map(|(hc, ic)| (hc - ic * other) / (mu - other))
                    .collect(),
            );
            proj = multiply(&ring, &proj, &factor, tensor).expect("matching rank");
        }

        let mut compression = DMatrix::<Complex<f64>>::zeros(r, r);
        for s in 0..r {
            let left = multiply(&ring, &proj, &AlgebraElement::basis(&ring, r, s), tensor).expect("rank");
            let both = multiply(&ring, &left, &proj, tensor).expect("rank");
            for (t, c) in both.coeffs.iter().enumerate() {
                compression[(t, s)] = *c;
            }
        }
        let sv = compression.singular_values();
        let sigma_max = sv.iter().fold(0.0f64, |m, &x| m.max(x));
        if sigma_max == 0.0 {
            return Err(SplitFailure::NotSquare(0));
        }
        let cut = tol.sqrt() * sigma_max;
        let rank = sv.iter().filter(|&&x| x > cut).count();
        let dropped = sv.iter().filter(|&&x| x <= cut).fold(0.0f64, |m, &x| m.max(x));
        residual = residual.max(dropped / sigma_max);
        let degree = (rank as f64).sqrt().round() as usize;
        if degree == 0 || degree * degree != rank {
            return Err(SplitFailure::NotSquare(rank));
        }

        let trace: Complex<f64> = scheme
            .diagonal_colors()
            .map(|c| proj.coeffs[c] * scheme.cells()[c].len() as f64)
            .sum();
        let m_float = trace.re / degree as f64;
        let multiplicity = m_float.round() as usize;
        if multiplicity == 0 {
            return Err(SplitFailure::Residual(1.0));
        }
        residual = residual
            .max((m_float - multiplicity as f64).abs() / multiplicity as f64)
            .max(trace.im.abs() / trace.re.abs().max(1.0));
        blocks.push(Block { degree, multiplicity });
    }

    let sum_f2: usize = blocks.iter().map(|b| b.degree * b.degree).sum();
    let sum_mf: usize = blocks.iter().map(|b| b.degree * b.multiplicity).sum();
    if sum_f2 != r || sum_mf != n {
        return Err(SplitFailure::Sums(sum_f2, sum_mf));
    }
    if residual >= tol {
        return Err(SplitFailure::Residual(residual));
    }
    blocks.sort();
    Ok((blocks, residual))
}

/// `F = ∏|R| / ∏ m^(f^2)` with exact divisibility, and the Frame quotient
/// `F / (∏|X|)^2`.
pub fn frame_number(config: &Configuration, wd: &WedderburnData) -> Result<FrameNumber, FrameError> {
    let sum_f2: usize = wd.blocks.iter().map(|b| b.degree * b.degree).sum();
    let sum_mf: usize = wd.blocks.iter().map(|b| b.degree * b.multiplicity).sum();
    if sum_f2 != config.rank() || sum_mf != config.size() {
        return Err(FrameError::InvalidBlocks { sum_f2, rank: config.rank(), sum_mf, size: config.size() });
    }
    let product = product_relation_sizes(config.scheme());
    let denominator = wd
        .blocks
        .iter()
        .fold(BigInt::one(), |acc, b| acc * Pow::pow(BigInt::from(b.multiplicity), (b.degree * b.degree) as u32));
    let (frame, rem) = product.div_rem(&denominator);
    if !rem.is_zero() {
        return Err(FrameError::NotDivisible { product, denominator });
    }
    let cells = product_cell_sizes(config.scheme());
    let quotient = BigRational::new(frame.clone(), &cells * &cells);
    Ok(FrameNumber { frame, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{discrete, rank2, thin_group_scheme, CayleyTable};
    use crate::linalg::Rationals;
    use crate::scheme::Scheme;

    fn cfg(s: Scheme) -> Configuration {
        Configuration::new(s).unwrap()
    }

    fn thin(name: &str) -> Configuration {
        cfg(thin_group_scheme(&CayleyTable::by_name(name).unwrap()).unwrap())
    }

    #[test]
    fn center_dimensions() {
        assert_eq!(center_basis(&cfg(rank2(5).unwrap())).len(), 2);
        assert_eq!(center_basis(&thin("S3")).len(), 3);
        assert_eq!(center_basis(&cfg(discrete(2).unwrap())).len(), 1);
    }

    #[test]
    fn center_elements_commute() {
        let c = thin("D4");
        let tensor = c.tensor();
        for z in center_basis(&c) {
            for rel in 0..c.rank() {
                let a = AlgebraElement::basis(&Rationals, c.rank(), rel);
                assert_eq!(
                    multiply(&Rationals, &z, &a, tensor).unwrap(),
                    multiply(&Rationals, &a, &z, tensor).unwrap()
                );
            }
        }
    }

    #[test]
    fn blocks_of_small_schemes() {
        let wd = decompose(&cfg(rank2(3).unwrap()), 0, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(wd.pairs(), vec![(1, 1), (1, 2)]);
        assert_eq!(wd.to_string(), "[(1,1),(1,2)]");

        let wd = decompose(&cfg(discrete(2).unwrap()), 0, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(wd.pairs(), vec![(2, 1)]);

        let wd = decompose(&thin("Z3"), 0, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(wd.pairs(), vec![(1, 1), (1, 1), (1, 1)]);

        let wd = decompose(&thin("S3"), 0, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(wd.pairs(), vec![(1, 1), (1, 1), (2, 2)]);
    }

    #[test]
    fn single_point() {
        let c = cfg(rank2(1).unwrap());
        let wd = decompose(&c, 0, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(wd.pairs(), vec![(1, 1)]);
        let fr = frame_number(&c, &wd).unwrap();
        assert_eq!(fr.frame, BigInt::one());
    }

    #[test]
    fn frame_numbers() {
        let c = cfg(rank2(3).unwrap());
        let fr = frame_number(&c, &decompose(&c, 0, DEFAULT_TOLERANCE).unwrap()).unwrap();
        assert_eq!(fr.frame, BigInt::from(9));
        assert_eq!(fr.quotient, BigRational::one());

        let c = thin("Z2");
        let fr = frame_number(&c, &decompose(&c, 0, DEFAULT_TOLERANCE).unwrap()).unwrap();
        assert_eq!(fr.frame, BigInt::from(4));
        assert_eq!(fr.quotient, BigRational::one());

        let c = cfg(discrete(2).unwrap());
        let fr = frame_number(&c, &decompose(&c, 0, DEFAULT_TOLERANCE).unwrap()).unwrap();
        assert_eq!(fr.frame, BigInt::one());
    }

    #[test]
    fn wrong_blocks_are_rejected() {
        let c = cfg(rank2(3).unwrap());
        let bad = WedderburnData {
            blocks: vec![Block { degree: 1, multiplicity: 1 }, Block { degree: 1, multiplicity: 1 }],
            seed: 0,
            residual: 0.0,
        };
        assert!(matches!(frame_number(&c, &bad), Err(FrameError::InvalidBlocks { .. })));
        // sums match but 2 * 3 does not divide 5 * 20
        let c = cfg(rank2(5).unwrap());
        let bad = WedderburnData {
            blocks: vec![Block { degree: 1, multiplicity: 2 }, Block { degree: 1, multiplicity: 3 }],
            seed: 0,
            residual: 0.0,
        };
        assert!(matches!(frame_number(&c, &bad), Err(FrameError::NotDivisible { .. })));
    }
}
