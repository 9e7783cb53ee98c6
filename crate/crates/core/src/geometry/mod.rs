mod coefficients;
mod connection;
mod transition;

pub use coefficients::{
    coefficient_transition_field, coefficient_transition_form, FieldCoefficients, FormCorrection,
    IndexTensor, OneFormCoefficients,
};
pub use connection::{base_part, LinearConnection};
pub use transition::{compose_transitions, transform_superfunction, Transition};
