//! Ring models: closed forms, resonances and limit probes.

pub mod angle;
pub mod limits;
pub mod resonance;
pub mod ring;

pub use angle::ReducedAngle;
pub use limits::{limit_probe, LimitOrder, LimitTarget};
pub use resonance::{
    ab_ftr_condition, dip_fwhm, find_resonances, ftr_expansion, ResonanceKind, ResonanceReport,
};
pub use ring::{
    ring_amplitudes_angles, ring_amplitudes_asymmetric, ring_r_symmetric, ring_t_symmetric,
    RingSpec,
};
