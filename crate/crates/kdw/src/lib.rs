//! Exact computation of a Dijkgraaf–Witten-style invariant valued in
//! topological K-theory coordinates, for lens spaces and Brieskorn
//! homology spheres, with coefficient group ℤ/k or PSL₂(F_p).
//!
//! The invariant is a formal integer combination, one term per
//! homomorphism from the fundamental group, of coordinates in ℚ/ℤ with
//! odd denominators. All arithmetic is exact: rationals, cyclotomic
//! fields ℚ(ζ_k), and modular arithmetic over F_p and F_{p²}.

pub mod error;

mod arith;
mod polyfield;

pub mod brieskorn;
pub mod cyclicrep;
pub mod exactnum;
pub mod ffield;
pub mod formal;
pub mod induction;
pub mod psl2;

pub use error::{Error, Result};
