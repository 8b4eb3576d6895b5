//! Front end for the `ogroup` engine: the group description language, JSON
//! reports, the analysis cache, the bundled corpus, the invariant suites,
//! and the command-line driver.

pub mod app;
pub mod cache;
pub mod corpus;
pub mod dsl;
pub mod report;
pub mod suites;
