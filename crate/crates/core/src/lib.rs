//! Electron scattering on one-dimensional quantum graphs by the
//! vertex-amplitudes method.
//!
//! Lengths are in nm, energies in eV and wave numbers in nm⁻¹ throughout.
//! A two-terminal graph ([`graph::TwoTerminalGraph`]) is reduced to a 2×2
//! linear system for the amplitudes at its two vertices
//! ([`solver::assemble_gamma`]); transmission, reflection, edge wave
//! functions and currents follow from its solution.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod graph;
pub mod mat2;
pub mod models;
pub mod solver;
pub mod spectrum;
pub mod sweep;
pub mod transfer;
pub mod units;

pub use error::{Error, Result};
pub use graph::{
    EdgeSpec, PotentialDescriptor, ScatteringPreset, ScatteringResult, TabulatedPotential,
    TwoTerminalGraph,
};
pub use mat2::{mat2_inv, mat2_mul, ComplexMat2};
pub use solver::{
    amplitudes_from_gamma, assemble_gamma, cascade_scatter, edge_current, edge_wavefunction,
    gamma_pair_for_edge, scatter, solve_vertex_amplitudes, EdgeWaveField, GammaPair, GammaSystem,
    VertexAmplitudes,
};
pub use spectrum::BoundState;
pub use transfer::{
    m_cascade, m_compose, m_free_segment, m_from_amplitudes, m_square_well, TransferMatrix,
};
pub use units::{ev_to_k, k_to_ev, WaveNumber, HBAR2_OVER_2M};

pub use num_complex::Complex64;
