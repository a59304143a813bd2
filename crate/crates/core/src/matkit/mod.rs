//! Exact integer-matrix algebra: characteristic polynomials, factorization
//! over Q, root isolation, spectral radii and degrees of monomial maps.

pub mod charpoly;
pub mod factor;
pub mod field;
pub mod intmatrix;
pub mod modp;
pub mod numfield;
pub mod poly;
pub mod roots;
pub mod spectral;
pub mod sturm;

pub use charpoly::{charpoly, monomial_degree};
pub use factor::{factor_over_q, squarefree_decomposition};
pub use intmatrix::{word_product, IntMatrix};
pub use poly::{IntPoly, Poly};
pub use roots::{complex_roots, RootDisk};
pub use sturm::real_roots;
pub use spectral::{spectral_radius, spectrum, spectrum_of_poly, CertifiedReal, Eigen, EigenValue, Spectrum};
pub use numfield::NfElem;
