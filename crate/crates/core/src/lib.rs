//! Exact Bernstein-Sato computations for pairs of polynomials.

pub mod bl;
pub mod factored;
pub mod family;
pub mod fan;
pub mod groebner;
pub mod malgrange;
pub mod parse;
pub mod poly;
pub mod product;
pub mod scalars;
pub mod weyl;
