//! Words, finite presentations, fourth-power relator families and
//! abelianization.

mod abelian;
mod presentation;
mod relators;
mod word;

pub use abelian::{abelianization_invariants, IntMatrix};
pub use presentation::{cyclically_reduce, free_reduce, Presentation, PresentationError};
pub use relators::{
    build_gk, build_gnk, conjugator_words, relator_canonical_form, ConjugatorWords,
};
pub use word::{Letter, Word};
