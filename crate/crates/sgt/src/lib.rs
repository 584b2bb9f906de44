//! File formats, reports, presets and corpus suites around `sgt-core`.

pub mod analyses;
pub mod cli;
pub mod corpus;
pub mod edgelist;
pub mod params;
pub mod report;
