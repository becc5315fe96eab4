//! Front end for the `cdmatroid` library: input formats, corpora, audits
//! and reports.

pub mod corpus;
pub mod input;
pub mod audit;
pub mod commands;
pub mod report;
