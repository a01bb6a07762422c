//! Shear-wave velocity prediction from conventional well logs.
//!
//! The crate covers the whole workflow: LAS/CSV ingestion ([`las`]), data
//! conditioning and scenario splits ([`conditioning`]), petrophysical
//! relations and Castagna target generation ([`petro`]), linear
//! ([`regression`]) and neural ([`nn`]) predictors, metrics and the
//! method comparison harness ([`evaluation`]), a synthetic two-well field
//! ([`synth`]), and the end-to-end study runner behind the CLI
//! ([`pipeline`]).

pub mod conditioning;
pub mod config;
pub mod error;
pub mod evaluation;
pub mod las;
pub mod linalg;
pub mod nn;
pub mod petro;
pub mod pipeline;
pub mod regression;
pub mod seed;
pub mod synth;
pub mod units;

pub use error::{Error, Result};
