//! Finite systems of monomial maps: word growth, dynamical degree, the
//! correction exponent, dominating-map certificates and system reports.

pub mod report;
pub mod star;
pub mod system;

pub use report::{system_report, FinitenessCriterion, HeightStatus, ReportOptions, SubgroupBound, SystemReport};
pub use star::{
    certify_star, degree_l_heuristic, l_f_estimate, reduction_check, CheckItem, LEstimate, ReductionCheck,
    StarCertificate, StarStatus,
};
pub use system::{
    for_each_word_level, growth_table, level_max_rho, rho_fn, word_string, GrowthRow, GrowthTable, LevelMax, SystemF,
    DEFAULT_WORD_BUDGET, ENTRY_BIT_BUDGET,
};
