//! Graphs, configurations, update schemes, rules and the dynamics engine.

mod config;
mod dynamics;
mod graph;
mod network;
mod rule;
mod scheme;

pub use config::Configuration;
pub use dynamics::{
    explore, explore_auto, find_limit_cycle, trajectory, transient_length_network, Budget, CycleReport,
    Exploration, DEFAULT_EXHAUSTIVE_BOUND, DEFAULT_MAX_CONFIGS,
};
pub use graph::{Graph, GraphBuilder};
pub use network::Network;
pub use rule::{ClockSymbol, ClockWord, Rule, Threshold};
pub use scheme::UpdateScheme;
