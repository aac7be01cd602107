//! Computational toolkit for cubic Gauss sums over the Eisenstein integers.
//!
//! Exact arithmetic in `Z[w]`, cubic residue symbols, normalized cubic Gauss
//! sums and Kummer angles, the analytic helpers used to test Poisson summation
//! and sieve identities, and the experiment drivers built on top of them.

pub mod analytic;
pub mod arith;
pub mod eisenstein;
pub mod experiments;
pub mod error;
pub mod gauss;
pub mod store;
pub mod symbol;

pub use eisenstein::{
    enumerate_primary, factor, gcd, multiplicative_functions, primary_normalize,
    split_rational_prime, ArithmeticData, EisensteinInt, Predicate, PrimaryFactorization, Unit,
    LAMBDA, OMEGA,
};
pub use error::{Error, Result};
pub use symbol::{cubic_symbol, supplement_exponents, symbol_euler_prime, CubicValue};
pub use gauss::{
    additive_character, gauss_sum_direct, gauss_sum_prime, gtilde, gtilde_power, kummer_angle,
    kummer_sum_sp, GaussSumValue, GaussTable, KummerAngle, Provenance,
};
