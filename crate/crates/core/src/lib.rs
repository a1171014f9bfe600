//! Measurement and aggregation of black-box optimizer performance from
//! logged runs, built on the fixed-target view: runtimes in function
//! evaluations to reach target values, simulated restarts, average runtime,
//! and empirical runtime distributions.
//!
//! The pipeline runs log files ([`ingest`]) or the built-in mini suite
//! ([`suite`]) through runtime extraction ([`runtime`]) into aggregate
//! curves ([`ecdf`]), with target construction in [`targets`] and the
//! artificial best reference algorithm in [`refbest`].

pub mod ecdf;
pub mod error;
pub mod indicator;
pub mod ingest;
pub mod model;
pub mod refbest;
pub mod runtime;
pub mod suite;
pub mod targets;

pub use error::{Error, Result};
