//! A bigraded rewriting calculus for words in divided powers, with complex
//! shapes for Rickard and twist complexes.

pub mod complex;
pub mod rewrite;
pub mod word;

pub use complex::{
    cancel, compose_and_cancel, ef_expansion_check, inverse_rickard_complex, inverse_twist_step,
    negative_twist_closed_form, negative_twist_power, pn_twist_composition, pn_twist_shape, rickard_complex,
    stabilization_check, AbstractShape, AbstractTerm, ComplexShape, DegreeStability,
};
pub use rewrite::{
    decategorify_sum, decategorify_word, model_window, normal_form, normal_form_with, normalize, oracle_suite,
    random_sl2_word, Decategorifier, FormalSum, Strategy,
};
pub use word::{parse_weight, sl2_weight, Letter, Window, Word};
