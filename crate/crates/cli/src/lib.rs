//! Text front end for the galdesc library: a small declarative document
//! format, a runner that executes its single command, and deterministic
//! reports.

pub mod diag;
pub mod run;
pub mod syntax;

pub use diag::{Diagnostic, Loc};
pub use run::{run, run_text, Options, Outcome};
pub use syntax::{parse, Document};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
