//! Rule-based discourse dissection.
//!
//! Raw text is split into fragments and discourse units, referring
//! expressions are resolved by substitution, complex and compound units are
//! dissected into primitive (single-clause) discourses, and every primitive
//! is generalized into a letter-slot pattern such as `A are B`. Patterns are
//! collected in a deduplicating inventory that feeds a saturation report and
//! a pattern-based completeness check.

pub mod cli;
pub mod cues;
pub mod dissection;
pub mod generalization;
pub mod inventory;
pub mod lexicon;
pub mod pipeline;
pub mod reporting;
pub mod resolution;
pub mod segmentation;
pub mod token;

pub use lexicon::{ClassSet, LexClass, Lexicon, LexiconError};
pub use segmentation::{
    classify_unit, segment_fragments, segment_units, Classification, DiscourseUnit, Fragment,
    SegmentationError, UnitKind,
};
pub use token::{tokenize, Token};
