//! Reports, input grammars and exhaustive batch checks on top of
//! `ztile-core`; the `ztile` binary is a thin wrapper over [`cli`].

pub mod batch;
pub mod cli;
pub mod parse;
pub mod report;
