//! Heights and dynamical degrees of monomial maps on the multiplicative torus.
//!
//! A matrix `A` with integer entries and nonzero determinant acts on points of
//! `G_m^N` by `x_i -> prod_j x_j^{a_ij}`. The crate computes spectral and
//! Jordan data of `A`, Weil and canonical heights of rational points, growth
//! data of finite systems of such maps, and explicit lower-bound constants for
//! canonical heights of points with infinite orbit.

pub mod bakerkit;
pub mod error;
pub mod heightkit;
pub mod jordankit;
pub mod matkit;
pub mod numkit;
pub mod syskit;

pub use error::{MonoError, Result};
