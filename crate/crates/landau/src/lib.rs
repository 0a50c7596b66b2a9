//! Landau-type operators from the grazing limit.
//!
//! Classical and relativistic quantum, wave and linear variants: the strong
//! form `div_p int kernel * projection * field dp*`, symmetric weak forms, the
//! Onsager pairing and the entropy dissipation.

pub mod flux;
pub mod operator;

pub use flux::{
    central_gradient, landau_flux, landau_gradient, theta_landau, weighted_projection,
    LandauBracket, LandauFlux, ProjectionForm,
};
pub use operator::{
    entropy_gradient, evaluate_ql, evaluate_ql_bracket, evaluate_ql_many, landau_dissipation,
    landau_onsager, landau_strong_pairing, landau_weak_form, landau_weak_form_bracket, GradFn,
    LandauQuadrature, LandauWeak,
};
