//! Executable calculus for the abstract commensurator of the rank-2 free
//! group, and an explicit embedding of Hall's universal locally finite
//! group into it.

pub mod cli;
pub mod commensuration;
pub mod config;
pub mod error;
pub mod fold;
pub mod graph;
pub mod perm;
pub mod subgroup;
pub mod tower;
pub mod universal;
pub mod verify;
pub mod word;

pub use commensuration::{VirtualAut, VirtualAutRecord};
pub use config::TowerConfig;
pub use error::{Error, Result};
pub use fold::PreAutomaton;
pub use graph::CoreGraph;
pub use perm::Perm;
pub use subgroup::{express_in_generators, GeneratorRewriter, Index, Subgroup};
pub use tower::{Element, Injection, Tower};
pub use universal::UElement;
pub use word::{Alphabet, Letter, Word};
