//! Text formats and the `logicmine` command line.
//!
//! * programs: one clause per line, `A <- B, C.`
//! * events: CSV with a header of atom names and `0`/`1` rows
//! * synapses: one connection per line, indices ascending
//! * rules: mined clauses with their weights, plus the residual
//!
//! Every writer is deterministic and every reader rejects what its writer
//! would never produce, reporting the line (and column where it helps).

pub mod cli;
mod error;
pub mod events_csv;
pub mod program_text;
pub mod rules_text;
pub mod synapse_text;

pub use error::{FormatError, Result};
