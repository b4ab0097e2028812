//! Numerics for Dirichlet-type spaces `D_alpha` on the unit ball of C^2.
//!
//! A function `f = sum a_{k,l} z1^k z2^l` has squared norm
//! `sum (2+k+l)^alpha * k! l! / (1+k+l)! * |a_{k,l}|^2`. Everything in this
//! crate is built on that weight: sparse polynomial arithmetic and norms
//! ([`series`]), the extension/restriction/diagonal operators and unitary
//! changes of variables ([`maps`]), optimal polynomial approximants of `1/f`
//! ([`approximant`]), Cauchy transforms of boundary measures ([`boundary`]),
//! and Riesz energies and capacities of subsets of the sphere ([`capacity`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod approximant;
pub mod boundary;
pub mod capacity;
pub mod dd;
pub mod linalg;
pub mod maps;
pub mod series;
pub mod special;

pub use num_complex::Complex64;

pub use series::{Alpha, BivarPoly, Flavor, MultiIndex, UnivarPoly};
