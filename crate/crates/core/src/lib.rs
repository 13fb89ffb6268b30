//! Exact arithmetic for generalized multiplicative perfect numbers.
//!
//! Integers are handled in factored form ([`Factorization`]) so that the
//! divisor-product maps `T`, `T*` and `T_e` and their compositions never
//! materialize values. On top of that sit the class predicates
//! ([`classify`]), exact shape solvers ([`shapes`]) and brute-force
//! cross-checks of the characterization results ([`lab`]).

pub mod arith;
pub mod classify;
pub mod error;
pub mod lab;
pub mod products;
pub mod shapes;

pub use arith::{factorize, is_prime, Factorization, Nat};
pub use classify::{classify, Class, ClassificationReport, HarmonicType};
pub use error::{Error, Result};
pub use products::{DivisorMap, QFactorization};
pub use shapes::{ExponentShape, Family, MultiplicativePartition, ShapeSolution, SolveReport};
