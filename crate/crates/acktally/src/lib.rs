//! File formats, reports and the command line around `acktally-core`.

pub mod cli;
pub mod ingest;
pub mod pipeline;
pub mod report;
pub mod svg;
