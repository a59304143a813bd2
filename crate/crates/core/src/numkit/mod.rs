//! Rationals, places of Q, valuations and certified real arithmetic.

pub mod algebraic;
pub mod dyadic;
pub mod elementary;
pub mod logform;
pub mod neglog;
pub mod place;
pub mod primes;
pub mod quad;
pub mod rat;

pub use algebraic::AlgebraicScalar;
pub use dyadic::{format_decimal, Dyadic, Interval, Round, DEFAULT_PRECISION};
pub use logform::LogForm;
pub use neglog::NegLogScalar;
pub use place::{log_abs_at_place, log_abs_form, Place};
pub use primes::{factor_integer, factor_rational, is_prime};
pub use quad::Quad;
pub use rat::{format_rat, parse_rat, rat, rat_int, Rat};
