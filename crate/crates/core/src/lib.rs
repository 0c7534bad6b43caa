//! State complexity of regular operations combined with star, measured on
//! universal-witness DFAs.
//!
//! The crate builds witness DFAs from transformations, runs the standard
//! constructions (star, concatenation, reversal, product), determinizes and
//! minimizes the result, and compares the size against closed-form bounds.
//!
//! ```
//! use statecomp::{bounds::OperationId, verify::verify_cell, DEFAULT_SUBSET_CAP};
//!
//! let cell = verify_cell(OperationId::ConcatStarBoth, 4, 5, DEFAULT_SUBSET_CAP).unwrap();
//! assert_eq!(cell.measured, Some(226));
//! ```

pub mod bounds;
pub mod constructions;
pub mod determinize;
pub mod dfa;
pub mod error;
pub mod minimize;
pub mod nfa;
pub mod oracle;
pub mod report;
pub mod transformation;
pub mod verify;
pub mod witness;

pub use bounds::{OperationId, Status};
pub use constructions::BooleanOp;
pub use determinize::{determinize, SubsetDfa, DEFAULT_SUBSET_CAP};
pub use dfa::{Dfa, LetterPermutation};
pub use error::{Error, Result};
pub use minimize::{minimize, state_complexity};
pub use nfa::EpsNfa;
pub use transformation::Transformation;
pub use witness::{Family, Finals, WitnessSpec};
