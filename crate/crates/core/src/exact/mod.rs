//! Exact integers, rationals and polynomials over Z and Q.

pub mod cyclotomic;
pub mod factor;
pub mod integer;
pub mod modp;
pub mod parse;
pub mod poly;
pub mod rational;

pub use cyclotomic::{cyclotomic_polynomial, is_cyclotomic};
pub use factor::{factor_over_z, Factorization};
pub use poly::{square_free_decomposition, IntPolynomial, RatPolynomial};
pub use rational::BigRational;
