//! Workbench for ambiguous representations: a text format, seeded instance
//! generators, the law-suite runner, demos and the `ambrep` command line.

pub mod cli;
pub mod demos;
pub mod dsl;
pub mod gen;
pub mod laws;
pub mod resolve;

use thiserror::Error;

/// Anything that ends a command, with its exit code.
#[derive(Debug, Error)]
pub enum Failure {
    #[error("parse error: {0}")]
    Parse(#[from] dsl::ParseError),
    #[error("resolve error: {0}")]
    Resolve(#[from] resolve::ResolveError),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Invariant(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) | Failure::Usage(_) => 2,
            Failure::Resolve(e) => e.exit_code(),
            Failure::Invariant(_) => 1,
        }
    }
}
