//! Exact algebra over `W_n = Z2[w2, w3] / (g_{n-2}, g_{n-1}, g_n)`: Gröbner bases,
//! normal forms, heights, and the zero-divisor cup-length of `W_n`.

pub mod bounds;
pub mod cache;
pub mod error;
pub mod groebner;
pub mod gseries;
pub mod identities;
pub mod poly;
pub mod quotient;
pub mod report;
pub mod suite;
pub mod tables;
pub mod zcl;

pub use error::{AlgebraError, Result};
pub use poly::{lucas_binom_mod2, Monomial, Poly};
