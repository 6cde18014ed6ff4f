//! Monotone Boolean circuits approximated by small DNFs: set families,
//! input distributions, sunflowers, plucking, and the resulting bounds.

mod approximate;
mod criterion;
mod dist;
mod family;
mod pluck;
mod sunflower;

pub use approximate::{approximate_circuit, ApproxOptions, ApproxReport, GateReport, PluckSummary};
pub use criterion::{
    dnf_agreement, lb_criterion, spread_check, CriterionParams, LbReport, SpreadMode, SpreadReport, SPREAD_EXACT_N,
};
pub use dist::{DistKind, DistSpec, ProbEstimate, ProbMode, Sampler, SUPPORT_LIMIT};
pub use family::{dnf_eval, elements, mask_of, SetFamily, SetFamilyJson, MAX_GROUND};
pub use pluck::{pluck, FinderStrategy, PluckEntry, PluckOptions, PluckResult};
pub use sunflower::{find_classical_sunflower, is_sunflower, SunflowerCheck, EXHAUSTIVE_LIMIT};
