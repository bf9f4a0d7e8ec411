//! Hyperbolic polynomials, their cones, and Schur–Horn type inequalities.
//!
//! The crate evaluates homogeneous polynomials, computes directional
//! eigenvalues, decides hyperbolicity-cone membership, works with the
//! majorization order and its doubly stochastic witnesses, and checks
//! spectral inequalities of the form `P(diag A) ≥ P(λ(A))` numerically.

pub mod cone;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lpm;
pub mod majorization;
pub mod partition;
pub mod poly;
pub mod rng;
pub mod roots;
pub mod spectral;
pub mod suite;

pub use cone::{directional_eigenvalues, in_cone, ConeMembership, DirectionalSpectrum, Mode};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use majorization::{
    birkhoff_decompose, doubly_stochastic_witness, majorizes, BirkhoffDecomposition,
    DoublyStochasticMatrix,
};
pub use partition::Partition;
pub use poly::{HomogeneousPolynomial, Monomial, UnivariateRestriction};
pub use roots::{all_real_roots, RootSet};
pub use spectral::{eigen_sym, eigenvalues_sym, SymmetricEigen, SymmetricMatrix};
pub use lpm::{
    block_pinch, fischer_check, lpm_cone_member, lpm_eval, principal_minor, reynolds_sign_average,
    sign_conjugate, LpmPolynomial, SignVector,
};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/intro.md")]
mod book_intro {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/polynomials.md")]
mod book_polynomials {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/roots.md")]
mod book_roots {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cones.md")]
mod book_cones {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/majorization.md")]
mod book_majorization {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/spectral.md")]
mod book_spectral {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/lpm.md")]
mod book_lpm {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/verification.md")]
mod book_verification {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
