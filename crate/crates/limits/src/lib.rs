//! Numerical verification of the scaling limits between collision operators.
//!
//! Grazing (Boltzmann-type to Landau-type), Newtonian (`c -> infinity`),
//! semiclassical (`hbar -> 0`), kinetic (Bose to four-wave) and linear
//! (perturbations of the constant state) limits, each reported as a
//! [`SweepReport`] with observed convergence orders.

pub mod grazing;
pub mod newtonian;
pub mod report;
pub mod scaling;
pub mod testfn;

pub use grazing::{
    grazing_boltzmann_weak_form, grazing_landau_weak_form, grazing_lemma_coefficient,
    grazing_lemma_lhs, grazing_lemma_pointwise, grazing_spot_check, grazing_sweep, GrazingSetup,
    Kappa, SpotCheck,
};
pub use newtonian::{newtonian_sweep, random_pairs, NewtonianReport, NEWTONIAN_MIN_ORDER};
pub use report::{median, pairwise_orders, SweepReport};
pub use scaling::{
    expansion_oracles, kinetic_limit_check, linear_limit_check, semiclassical_sweep,
    ExpansionOracles, SCALING_MIN_ORDER,
};
pub use testfn::GaussianTest;
