//! Hierarchical group AHP and weighted readiness scoring.
//!
//! * [`hierarchy`]: two-tier criteria trees, validation, global weights and ranks.
//! * [`pairwise`]: reciprocal matrices, EVM/RGMM priorities, consistency ratio, triads.
//! * [`group`]: geometric-mean aggregation and the Shannon consensus indicator.
//! * [`scoring`]: characterizations, exclusion renormalization, achievements, sensitivity.
//! * [`report`]: JSON and markdown reports.
//! * [`sessions`]: session files and the sessions-to-weights pipeline.
//! * [`service`]: live elicitation sessions over HTTP.
//! * [`cli`]: the `ahp-readiness` command.
//!
//! Runnable walkthroughs live in `examples/`:
//! `cargo run --example greece_readiness` and friends.

pub mod cli;
pub mod datasets;
pub mod group;
pub mod hierarchy;
pub mod pairwise;
pub mod report;
pub mod scoring;
pub mod service;
pub mod sessions;
