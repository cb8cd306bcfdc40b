//! Flows: polynomial families in the digit variables `Q_j` that specialise
//! to every iterate of a triangular map.

mod flow;
mod level;

pub use flow::{
    build_flow, build_flow_capped, expected_w_lambdas, FlowMap, WComponent, DEFAULT_FLOW_CAP,
};
pub use level::{level_flow, LevelFlow};
