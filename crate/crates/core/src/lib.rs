//! Episturmian morphisms: decomposition, palindromic closure, conjugacy
//! classes, shift languages and Rauzy graphs, return words, and the
//! return-preservation properties.

pub mod conjugacy;
pub mod error;
pub mod language;
pub mod morphism;
pub mod palindromic;
pub mod preservation;
pub mod returns;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use morphism::{
    EpiDecomposition, Matrix, Morphism, MorphismJson, Permutation, Spin, SpinnedLetter,
    SpinnedWord, StripOrder,
};
pub use word::{gcp, gcs, occurrences, Alphabet, Letter, OccurrenceList, Word};
pub use palindromic::{
    pal, pal_closure, pal_inverse, DirectivePal, DirectiveWord, PalOccurrence, StandardTuple,
};
pub use conjugacy::{
    conjugacy_index, enumerate_class, minimal_letter, standard_conjugate, ConjugacyClass,
    MinLetterReport,
};
pub use language::{
    directive_word, evolution_check, inner_word_data, language, Branch, EvolutionReport,
    InnerWordData, LanguageWindow, RauzyEdge, RauzyGraph, Shift, SpecialFactors,
};
pub use returns::{
    conjugate_psi, dll_from_pair, returns_closed_form, returns_oracle, returns_oracle_all, Method,
    ReturnComputation, ReturnEngine, ReturnPair, ReturnSet, Side,
};
pub use preservation::{
    check_preservation, lemma_checks, obstruction_words, run_obstruction_suite, Case,
    LemmaReport, ObstructionReport, ObstructionWord, PreservationChecker, PreservationVerdict,
};
