//! Symbolic computation for hydra groups and their generalizations.

pub mod error;
pub mod expr;
pub mod extensions;
pub mod groups;
pub mod identities;
pub mod maps;
pub mod membership;
pub mod oracle;
pub mod quotients;
pub mod spec_file;
pub mod words;

pub use error::{Error, Result};
pub use groups::{GroupSpec, NormalForm};
pub use membership::{GroupPair, MembershipResult, Reach, SubgroupSpec};
pub use words::{Alphabet, GenKind, Generator, Letter, Substitution, Word};
