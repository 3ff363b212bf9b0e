//! File formats, generators, the benchmark harness and the command-line
//! front end for intimate-core group search.
//!
//! The algorithms themselves live in [`icgroup_core`]; this crate adds
//! everything that needs `std`: reading and writing edge lists and coreness
//! index files, wall-clock timing, seeded synthetic graphs and query
//! workloads, CSV and JSON output.

pub mod bench;
pub mod clock;
pub mod edgelist;
pub mod error;
pub mod generate;
pub mod index_file;
pub mod report;
pub mod workload;

pub use error::{Error, Result};
