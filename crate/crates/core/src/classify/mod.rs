//! Classification up to 2n-moves and link-homotopy.

mod canonical;
mod generators;
mod injection;
mod links;

pub use canonical::{
    canonical_form, canonical_sequences, class_inverse, class_multiply, class_order,
    enumerate_classes, equivalent_2n_lh, CanonicalForm, Equivalence, Witness, ENUMERATION_LIMIT,
};
pub use generators::{
    generator_V, generator_braid, generator_matrix, generator_word, set_cache_dir, GeneratorMatrix,
};
pub use injection::{canonical_injections, enumerate_F, group_order, s_value, Injection};
pub use links::{link_equivalent_2n_lh, link_trivial_2n_lh, TrivialityReport};
