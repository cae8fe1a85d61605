//! Finite-support potentials and parallel wells: amplitudes and bound states.

pub mod general;
pub mod ode;
pub mod parallel;

pub use general::{
    amplitudes_from_solutions, bound_state_residual, find_bound_states, gamma_from_solutions,
    scatter_potential, transmission_at_imaginary,
};
pub use ode::{integrate_solutions, IntegrationGrid, SolutionPair};
pub use parallel::{
    parallel_wells_amplitude, parallel_wells_bound_state, parallel_wells_bound_states,
    parallel_wells_t_min, t_min_approx, t_min_asymptotic,
};

/// A bound state at k = iκ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    /// Decay constant, nm⁻¹.
    pub kappa: f64,
    /// E = −(ħ²/2m)κ², eV.
    pub energy_ev: f64,
    pub n_wells: usize,
}
