//! Exact arithmetic kernels: prime fields, fraction-free determinants,
//! echelon forms over `F_p` and `Q`, and the adjacency algebra multiplication.

pub mod algebra;
pub mod bareiss;
pub mod field;
pub mod modp;
pub mod rational;

pub use algebra::{
    identity_element, multiply, regular_matrix, AlgebraElement, AlgebraError, Coefficients, ComplexF64,
    Integers, Rationals,
};
pub use bareiss::det_fraction_free;
pub use field::{is_prime, PrimeField};
pub use modp::{charpoly_mod_p, kernel_mod_p, rank_mod_p, Echelon};
pub use rational::kernel_rational;
