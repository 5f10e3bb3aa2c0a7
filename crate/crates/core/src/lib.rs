//! Propositional Horn-clause logic on a third-order Hopfield network.
//!
//! The crate covers four directions between clauses and connection strengths:
//!
//! * [`translate`] compiles a program into synapses whose energy equals the
//!   number of violated clauses,
//! * [`dynamics`] relaxes the network towards consistent interpretations,
//! * [`hebb`] learns synapses of order 1 to 3 from boolean event records,
//! * [`mine`] runs reverse analysis, reading the clauses back out of learned
//!   synapses by signature matching and deflation.
//!
//! Everything here is `no_std` (with `alloc`); file formats and the command
//! line live in the `logicmine` crate.
//!
//! ```
//! use logicmine_core::logic::{enumerate_models, Program};
//! use logicmine_core::mine::{mine, MineConfig};
//! use logicmine_core::hebb::EventTable;
//!
//! let mut program = Program::empty();
//! program.add_rule("A", &["B", "C"]).unwrap();
//! let models = enumerate_models(&program, 20).unwrap();
//! let events = EventTable::from_models(program.atoms().clone(), &models).unwrap();
//! let report = mine(&events, &MineConfig::default()).unwrap();
//! assert_eq!(report.rules.len(), 1);
//! assert_eq!(report.rules[0].weight, 1.0);
//! ```
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dynamics;
mod error;
pub mod hebb;
pub mod logic;
pub mod mine;
pub mod synapse;
pub mod translate;

pub use error::{Error, Result};
pub use logic::{AtomTable, Clause, Interpretation, Program};
pub use synapse::{Key, Representation, SynapseSet};
