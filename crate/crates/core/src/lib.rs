//! Finite-field toolkit for permutation polynomials built from permutations of
//! subfields.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure algorithms:
//!
//! * [`field`]: explicit fields `F_{p^n}`, Frobenius maps, relative norms and
//!   subfields realised as fixed sets inside one ambient field.
//! * [`poly`]: dense polynomials, coefficient twists and the norm product
//!   `x^r h(x) h^(Q)(x) ... h^(Q^(m-1))(x)`.
//! * [`perm`]: permutation tests, both exhaustive and through the cyclotomic and
//!   subfield-norm criteria, plus complete-permutation checks.
//! * [`families`]: the explicit families of (complete) permutation polynomials
//!   with enumerators and bidirectional oracle verification.
//! * [`mols`]: latin squares from permutation polynomials and complete sets of
//!   mutually orthogonal latin squares.
//!
//! IO, the command-line frontend and parallel drivers live in the `permfield`
//! crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod bitset;
pub mod error;
pub mod families;
pub mod field;
mod fp_poly;
pub mod mols;
pub mod perm;
pub mod poly;

pub use error::{Error, Result};
pub use field::{build_field, build_field_with_limit, Elem, Field, FieldElement, PrimePower, Tower};
pub use poly::Poly;
