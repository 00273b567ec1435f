//! Elements of the adjacency algebra in the standard basis `{A(R)}` and their
//! product through the intersection tensor.

use std::fmt;

use nalgebra::Complex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::field::PrimeField;
use crate::scheme::{IntersectionTensor, Scheme};

/// A coefficient domain for algebra elements.
pub trait Coefficients {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn of_count(&self, c: u32) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexF64;

impl Coefficients for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn of_count(&self, c: u32) -> BigInt {
        BigInt::from(c)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

impl Coefficients for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn of_count(&self, c: u32) -> BigRational {
        BigRational::from_integer(BigInt::from(c))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

impl Coefficients for ComplexF64 {
    type Elem = Complex<f64>;
    fn zero(&self) -> Complex<f64> {
        Complex::new(0.0, 0.0)
    }
    fn one(&self) -> Complex<f64> {
        Complex::new(1.0, 0.0)
    }
    fn of_count(&self, c: u32) -> Complex<f64> {
        Complex::new(f64::from(c), 0.0)
    }
    fn add(&self, a: &Complex<f64>, b: &Complex<f64>) -> Complex<f64> {
        a + b
    }
    fn mul(&self, a: &Complex<f64>, b: &Complex<f64>) -> Complex<f64> {
        a * b
    }
    fn is_zero(&self, a: &Complex<f64>) -> bool {
        a.re == 0.0 && a.im == 0.0
    }
}

impl Coefficients for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus()
    }
    fn of_count(&self, c: u32) -> u64 {
        self.reduce(u64::from(c))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::add(self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element has {found} coefficients but the scheme has rank {rank}")]
    RankMismatch { rank: usize, found: usize },
}

/// `Σ_R coeffs[R] A(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement<E> {
    pub coeffs: Vec<E>,
}

impl<E> AlgebraElement<E> {
    pub fn new(coeffs: Vec<E>) -> Self {
        AlgebraElement { coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }
}

impl<E: Clone> AlgebraElement<E> {
    pub fn basis<C: Coefficients<Elem = E>>(ring: &C, rank: usize, relation: usize) -> Self {
        let mut coeffs = vec![ring.zero(); rank];
        coeffs[relation] = ring.one();
        AlgebraElement { coeffs }
    }
}

/// The identity `I_V = Σ_X Δ(X)`.
pub fn identity_element<C: Coefficients>(ring: &C, scheme: &Scheme) -> AlgebraElement<C::Elem> {
    let mut coeffs = vec![ring.zero(); scheme.rank()];
    for c in scheme.diagonal_colors() {
        coeffs[c] = ring.one();
    }
    AlgebraElement { coeffs }
}

/// `z_T = Σ_{R,S} x_R y_S c[R][S][T]`.
pub fn multiply<C: Coefficients>(
    ring: &C,
    x: &AlgebraElement<C::Elem>,
    y: &AlgebraElement<C::Elem>,
    tensor: &IntersectionTensor,
) -> Result<AlgebraElement<C::Elem>, AlgebraError> {
    let rank = tensor.rank();
    for e in [x, y] {
        if e.rank() != rank {
            return Err(AlgebraError::RankMismatch { rank, found: e.rank() });
        }
    }
    let mut z = vec![ring.zero(); rank];
    for (r, xr) in x.coeffs.iter().enumerate() {
        if ring.is_zero(xr) {
            continue;
        }
        for (s, ys) in y.coeffs.iter().enumerate() {
            if ring.is_zero(ys) {
                continue;
            }
            let xy = ring.mul(xr, ys);
            for &(t, c) in tensor.product_terms(r, s) {
                z[t] = ring.add(&z[t], &ring.mul(&xy, &ring.of_count(c)));
            }
        }
    }
    Ok(AlgebraElement { coeffs: z })
}

/// Matrix of left multiplication by `A(R)` on coefficient columns:
/// `L[T][S] = c[R][S][T]`.
pub fn regular_matrix(relation: usize, tensor: &IntersectionTensor) -> Vec<Vec<i64>> {
    let r = tensor.rank();
    (0..r).map(|t| (0..r).map(|s| i64::from(tensor.get(relation, s, t))).collect()).collect()
}
