//! Boltzmann-type collision operators.
//!
//! Quantum (Bose, Maxwell, Fermi), four-wave and linear statistics with
//! classical or relativistic dynamics: pointwise evaluation, symmetrized weak
//! forms, entropy dissipation, the generalized dissipation derivative and the
//! algebraic compatibility check between collision brackets and weight
//! triples.

pub mod compat;
pub mod gradient;
pub mod operator;
pub mod quadrature;
pub mod rows;

pub use compat::{
    compatibility_residual, compatibility_sides, compatibility_sweep, suite_cases,
    CompatibilityReport, ThetaKind, WeightTriple,
};
pub use gradient::{discrete_gradient, gradient4};
pub use operator::{
    clip_for_entropy, entropy_dissipation, entropy_dissipation_with, entropy_pairing,
    entropy_variable, evaluate_q, evaluate_q_bracket, evaluate_q_estimate, evaluate_q_many,
    generalized_dissipation_derivative, strong_pairing, weak_form, weak_forms,
    weak_forms_bracket, Bracket, DissipationDerivative, Estimate, TestFn, WeakForm, FERMI_CLIP,
};
pub use quadrature::{for_each_event, QuadratureSpec, Sampling, DEFAULT_HALFWIDTH, DEFAULT_NODES};
pub use rows::{collision_integrand, quantum_bracket, statistics_bracket, GammaRow, Leg};
