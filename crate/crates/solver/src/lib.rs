//! Time integration on momentum grids: conservative collision operators, a
//! spatially homogeneous RK4 integrator with monitors, a periodic transport
//! slab, and the structural checks of its Poisson operator.

pub mod grid;
pub mod homogeneous;
pub mod operator;
pub mod poisson;
pub mod slab;

pub use grid::MomentumGrid;
pub use homogeneous::{
    check_cfl, clip_negative, correct_moments, spectral_radius, generic_energy_entropy_audit, run, step, step_doubling, GenericAudit, MonitorPolicy,
    MonitorRecord, MonitorSeries, State, StepDoubling, StepOutcome,
};
pub use operator::{CollisionOperator, Evaluation, StencilStats};
pub use poisson::{
    entropy_flux_potential, modulated, poisson_apply, poisson_apply_entropy, poisson_check, poisson_checks,
    PoissonReport,
};
pub use slab::{slab_run, slab_step, SlabGrid, SlabState, Transport};
