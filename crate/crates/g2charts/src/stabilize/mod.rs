//! Stabilization: the normal form of a count vector and the constructive
//! pipelines that split a stabilized chart into basic pieces.

pub mod certificate;
pub mod normal;
pub mod pipeline;

pub use certificate::{reached_target, stabilized, Certificate, Completeness, ReplayError, Step, Target};
pub use normal::{energy, normal_form, NormalForm, NormalFormError};
pub use pipeline::{
    axioms, check_lemma17_invariants, eliminate_chiral_irreducible, lemma17_report, normalize_chart, Elimination,
    Lemma17Report, Normalization, StabilizeError,
};
