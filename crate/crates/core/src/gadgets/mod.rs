//! Instance generators for the two hardness reductions, used as structured
//! fixtures.

pub mod de4;
pub mod ra4;

pub use de4::{
    gen_de4_from_cubic, hc_to_transition_matching, verify_chc, Block, BlockChoice, ChcReport,
    CityMatching, CubicGraph, De4Gadget, SlotRole,
};
pub use ra4::{
    back_map, forward_map, gen_ra4_from_2slw, gen_ra4_units, Ra4Gadget, TwoStationInstance,
};
