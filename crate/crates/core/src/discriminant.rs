//! Standard character, Gram matrix of the standard trace form and its
//! discriminant.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::det_fraction_free;
use crate::scheme::{Configuration, Scheme};

/// `ρ(A(R))`: the cell size if `R` is the diagonal of a cell, else 0.
pub fn standard_character(scheme: &Scheme, relation: usize) -> BigInt {
    if scheme.is_diagonal(relation) {
        BigInt::from(scheme.cells()[relation].len())
    } else {
        BigInt::zero()
    }
}

/// Gram matrix `G[R][S] = ρ(A(R) A(S))` in the standard basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<BigInt>>,
}

impl GramMatrix {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }
}

/// Computes the Gram matrix from the tensor and from the closed form
/// `δ_{S,R^t} |R|`, asserting that the two agree.
pub fn gram_standard(config: &Configuration) -> GramMatrix {
    let scheme = config.scheme();
    let tensor = config.tensor();
    let r = config.rank();
    let rho: Vec<BigInt> = (0..r).map(|t| standard_character(scheme, t)).collect();
    let mut entries = vec![vec![BigInt::zero(); r]; r];
    for (a, row) in entries.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            let via_tensor: BigInt =
                tensor.product_terms(a, b).iter().map(|&(t, c)| BigInt::from(c) * &rho[t]).sum();
            let closed = if scheme.transpose_of(a) == b {
                BigInt::from(scheme.relation_size(a))
            } else {
                BigInt::zero()
            };
            assert_eq!(via_tensor, closed, "Gram entry ({a}, {b}) disagrees with the closed form");
            *entry = via_tensor;
        }
    }
    GramMatrix { entries }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discriminant {
    pub value: BigInt,
    pub sign: i8,
}

/// `(-1)^k` where `k` is the number of unordered pairs `{R, R^t}` with
/// `R ≠ R^t`.
pub fn transpose_sign(scheme: &Scheme) -> i8 {
    let pairs = (0..scheme.rank()).filter(|&c| scheme.transpose_of(c) > c).count();
    if pairs % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Determinant of the standard Gram matrix. Asserts `|det| = ∏|R|` and that
/// the determinant's sign is the combinatorial transpose sign.
pub fn discriminant_standard(config: &Configuration) -> Discriminant {
    let gram = gram_standard(config);
    let value = det_fraction_free(&gram.entries);
    let product = product_relation_sizes(config.scheme());
    assert_eq!(value.abs(), product, "|det G| differs from the product of relation sizes");
    let sign = transpose_sign(config.scheme());
    assert_eq!(value.is_negative(), sign < 0, "determinant sign differs from the transpose sign");
    Discriminant { value, sign }
}

pub fn product_relation_sizes(scheme: &Scheme) -> BigInt {
    (0..scheme.rank()).fold(BigInt::one(), |acc, c| acc * scheme.relation_size(c))
}

pub fn product_cell_sizes(scheme: &Scheme) -> BigInt {
    scheme.cells().iter().fold(BigInt::one(), |acc, cell| acc * cell.len())
}
