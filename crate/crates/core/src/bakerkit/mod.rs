//! Explicit lower-bound constants for canonical heights, built on the
//! classical lower bound for linear forms in logarithms. Everything that can
//! underflow is kept as `-log`.

pub mod bound;
pub mod linear_forms;

pub use bound::{
    baker_bound, baker_inputs, clear_point, constants_from_inputs, tower_constant, tower_from_inputs, BakerBound,
    BakerConstants, BakerInputs, HypothesisCheck, PointClearing, TowerConstant,
};
pub use linear_forms::{baker_u, c11, c11_log_form, height_pair, BakerU, HeightPair};
