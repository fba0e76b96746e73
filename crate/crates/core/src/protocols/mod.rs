//! Concrete protocols.

mod carry;
mod config;
mod construct;
mod cover;
mod exact_t;

pub use carry::{
    adjusted_target, carry_vector, choose_base, exactly_n_digits, exactly_n_protocol,
    zmd_modular_protocol, CarryProtocol, CarryRule, CarryVector, GroupVector,
};
pub use config::{BuiltProtocol, ProtocolConfig};
pub use construct::{
    baseline_ap_free, behrend_set, cfl_baseline_protocol, cfl_seed_class, corner_free_from_ap_free,
    find_corner, find_three_ap, greedy_ap_free, modn_corner_free_class, tensor_power,
    translate_count, translate_cover, z2_square_base_set, TranslateCover,
};
pub use cover::{
    compile_cover_protocol, cover_from_coloring, singleton_cover, Cover, CoverMode, CoverProtocol,
};
pub use exact_t::{from_digits, to_digits, ExactTVector, QuadraticForm, VectorForm};
