//! Ergodic optimization on the block graph: extreme orbit integrals,
//! maximizing elementary orbits, the `O`/`U`/`V` classification with
//! stability certificates, the critical subgraph, zero-temperature
//! measures and residual entropy at zero temperature.

mod classify;
mod critical;
mod cycles;
mod graph;
mod karp;

pub use classify::{
    classify, max_orbit_set, residual_entropy_zero_temp, zero_temperature_measure, Classification,
    MaxOrbitSet, Tag,
};
pub use critical::{critical_graph, CriticalGraph};
pub use cycles::johnson_cycles;
pub use graph::{enumerate_elementary_cycles, extreme_means, WeightedBlockGraph};
pub use karp::{max_cycle_mean, min_cycle_mean};
