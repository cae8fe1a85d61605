//! Closed-form amplitudes of the two-arm ring.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{ScatteringResult, TwoTerminalGraph};
use crate::models::angle::ReducedAngle;
use crate::units::WaveNumber;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Ring with arms `l1`, `l2` (nm) threaded by flux α = Φ/(Φ₀L) (nm⁻¹).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingSpec {
    pub l1: f64,
    pub l2: f64,
    pub alpha: f64,
}

impl RingSpec {
    pub fn new(l1: f64, l2: f64, alpha: f64) -> Result<Self> {
        if !(l1 > 0.0 && l2 > 0.0) || !l1.is_finite() || !l2.is_finite() {
            return Err(Error::InvalidGraph(format!(
                "arm lengths must be positive: {l1}, {l2}"
            )));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidGraph("flux must be finite".into()));
        }
        Ok(RingSpec { l1, l2, alpha })
    }

    pub fn total_length(&self) -> f64 {
        self.l1 + self.l2
    }

    /// Total flux phase αL.
    pub fn flux_phase(&self) -> f64 {
        self.alpha * self.total_length()
    }

    pub fn graph(&self) -> Result<TwoTerminalGraph> {
        TwoTerminalGraph::ring(self.l1, self.l2, self.alpha)
    }
}

/// t of the ring with equal arms of length `l`.
pub fn ring_t_symmetric(l: f64, k: WaveNumber) -> Complex64 {
    let x = k.0 * l;
    4.0 * I / (5.0 * x.sin() + 4.0 * I * x.cos())
}

/// r of the ring with equal arms, −3/(5 + 4i·cot kl), written to be exact at sin kl = 0.
pub fn ring_r_symmetric(l: f64, k: WaveNumber) -> Complex64 {
    let x = k.0 * l;
    -3.0 * x.sin() / (5.0 * x.sin() + 4.0 * I * x.cos())
}

/// Ring amplitudes from arm phases x = kl₁, y = kl₂ and flux phases a₁ = αl₁, a₂ = αl₂.
pub fn ring_amplitudes_angles(
    x: ReducedAngle,
    y: ReducedAngle,
    a1: ReducedAngle,
    a2: ReducedAngle,
) -> Result<ScatteringResult> {
    let (sx, sy) = (x.sin(), y.sin());
    let phi = a1 + a2;
    let s = x + y;
    let d = x - y;
    // cos αL − cos x cos y
    let c = -(phi + d).half().sin() * (phi - d).half().sin()
        - (phi + s).half().sin() * (phi - s).half().sin();
    let den = Complex64::new(1.5 * sx * sy + c, s.sin());
    if !(den.norm() > 0.0) {
        return Err(Error::SingularGamma {
            k: f64::NAN,
            det: den.norm(),
        });
    }
    let e1 = Complex64::new(a1.cos(), -a1.sin());
    let e2 = Complex64::new(a2.cos(), a2.sin());
    let t = I * (e1 * sy + e2 * sx) / den;
    let r = -(0.5 * sx * sy + c) / den;
    Ok(ScatteringResult::new(t, r))
}

/// Closed-form amplitudes of a ring with arbitrary arms and flux.
pub fn ring_amplitudes_asymmetric(spec: &RingSpec, k: WaveNumber) -> Result<ScatteringResult> {
    let f = ReducedAngle::from_f64;
    ring_amplitudes_angles(
        f(k.0 * spec.l1),
        f(k.0 * spec.l2),
        f(spec.alpha * spec.l1),
        f(spec.alpha * spec.l2),
    )
    .map_err(|_| Error::SingularGamma { k: k.0, det: 0.0 })
}
