//! Points of the torus with rational coordinates, their Weil heights, orbit
//! transport in valuation space, and canonical heights.

pub mod canonical;
pub mod orbit;
pub mod point;
pub mod profile;
pub mod truncated;

pub use canonical::{canonical_height_closed, closed_from_limit, CanonicalHeight};
pub use orbit::{classify_orbit, local_minimal_polynomial, InfiniteCertificate, OrbitVerdict, DEFAULT_ORBIT_BUDGET};
pub use point::{eval_monomial, eval_monomial_capped, PointGm, COORD_BIT_CAP};
pub use profile::{log_profile, transport_profile, weil_height, LogProfile};
pub use truncated::{
    arithmetic_degree_estimate, canonical_height_truncated, for_each_level, ArithmeticDegree, Normalization,
    Normalizer, TruncatedEstimate, DEFAULT_WORD_BUDGET,
};
