//! Reference distributions shared by verification runs.

use crate::{Distribution, Family, GaussianComponent, ModelSpec, Result, Statistics, Vec3};

fn bump(weight: f64, x: f64, y: f64, t: f64) -> GaussianComponent {
    GaussianComponent {
        weight,
        center: Vec3::new(x, y, 0.0),
        t,
    }
}

fn mixture(components: Vec<GaussianComponent>) -> Family {
    Family::GaussianMixture {
        components,
        background: 0.0,
    }
}

/// Symmetric two-bump mixture, far from equilibrium.
pub fn bimodal(model: &ModelSpec) -> Result<Distribution> {
    Distribution::analytic(
        mixture(vec![bump(0.5, -1.5, 0.0, 0.6), bump(0.5, 1.5, 0.0, 0.6)]),
        model,
    )
}

/// Five non-equilibrium Gaussian mixtures, valid for every statistics
/// (peak values stay below 1).
pub fn standard_fixtures(model: &ModelSpec) -> Result<Vec<(&'static str, Distribution)>> {
    let fams = [
        ("tilted-pair", mixture(vec![bump(0.7, 1.0, 1.0, 0.8), bump(0.3, -0.5, -1.0, 1.2)])),
        (
            "three-bump",
            mixture(vec![
                bump(0.4, 1.2, 0.0, 0.5),
                bump(0.3, -0.6, 1.0, 0.7),
                bump(0.3, -0.6, -1.0, 0.9),
            ]),
        ),
        ("narrow-wide", mixture(vec![bump(0.5, 0.3, 0.0, 0.4), bump(0.5, 0.0, -0.2, 1.5)])),
        ("drifting", mixture(vec![bump(1.0, 0.8, -0.4, 0.9)])),
    ];
    let mut out = vec![("bimodal", bimodal(model)?)];
    for (name, fam) in fams {
        out.push((name, Distribution::analytic(fam, model)?));
    }
    Ok(out)
}

/// The equilibrium annihilated by the operator of the model statistics.
///
/// Maxwellian (Juttner when relativistic), Bose-Einstein, Fermi-Dirac,
/// Rayleigh-Jeans, and a constant for linear statistics.
pub fn matched_equilibrium(model: &ModelSpec) -> Result<Distribution> {
    let emin = model.min_energy();
    let fam = match model.statistics {
        Statistics::Quantum { alpha: 0 } => match model.dynamics {
            crate::Dynamics::Classical => Family::Maxwellian {
                rho: 1.0,
                u: Vec3::zeros(),
                t: 1.0,
            },
            crate::Dynamics::Relativistic => Family::Juttner {
                amplitude: 0.2,
                t: 1.0,
            },
        },
        Statistics::Quantum { alpha: 1 } => Family::BoseEinstein {
            mu: emin - 0.5,
            t: 1.0,
        },
        Statistics::Quantum { .. } => Family::FermiDirac {
            mu: emin + 1.0,
            t: 1.0,
        },
        Statistics::Wave => Family::RayleighJeans {
            mu: 0.5 - emin,
            t: 1.0,
        },
        Statistics::Linear => Family::Constant { value: 0.7 },
    };
    crate::equilibrium(fam, model)
}
