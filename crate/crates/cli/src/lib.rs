//! Benchmark harness around `rsar_core`: TOML experiment configs, seeded
//! multi-run execution, report rendering and oracle verification.

pub mod config;
pub mod experiment;
pub mod report;
