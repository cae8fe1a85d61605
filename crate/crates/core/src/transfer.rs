//! Transfer matrices.
//!
//! Convention: to the left of a scatterer ψ = a·e^{ikx} + b·e^{−ikx}, to the
//! right ψ = c·e^{ikx} + d·e^{−ikx}, and (a, b)ᵀ = M·(c, d)ᵀ. Left incidence is
//! (1, r)ᵀ = M·(t, 0)ᵀ, so t = 1/M₁₁ and r = M₂₁/M₁₁.
//!
//! Matrices returned by [`m_square_well`] and [`m_for_edge`] use one global
//! coordinate on both sides. Matrices built from amplitudes (and those of
//! whole graphs) are vertex-referenced: each side's plane waves are measured
//! from its own terminal.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, PotentialDescriptor, ScatteringResult};
use crate::mat2::ComplexMat2;
use crate::spectrum::ode::{self, IntegrationGrid};
use crate::units::{ev_to_inverse_nm2, WaveNumber};

/// Below this |t| the transfer matrix is refused.
pub const MIN_TRANSMISSION: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m: ComplexMat2,
    pub k: WaveNumber,
}

impl TransferMatrix {
    pub fn new(m: ComplexMat2, k: WaveNumber) -> Self {
        TransferMatrix { m, k }
    }

    pub fn identity(k: WaveNumber) -> Self {
        TransferMatrix::new(ComplexMat2::identity(), k)
    }

    pub fn t(&self) -> Complex64 {
        self.m.m11.inv()
    }

    /// Amplitudes for a wave incident from the left.
    pub fn left_amplitudes(&self) -> ScatteringResult {
        let t = self.m.m11.inv();
        ScatteringResult::new(t, self.m.m21 * t)
    }

    /// Amplitudes for a wave incident from the right.
    pub fn right_amplitudes(&self) -> ScatteringResult {
        let inv = self.m.m11.inv();
        ScatteringResult::new(self.m.det() * inv, -self.m.m12 * inv)
    }

    /// Deviation of |M₁₁|² − |M₂₁|² from one (zero for a lossless scatterer).
    pub fn flux_defect(&self) -> f64 {
        (self.m.m11.norm_sqr() - self.m.m21.norm_sqr() - 1.0).abs()
    }

    /// The same scatterer moved by `x0` along a global coordinate.
    pub fn shifted(&self, x0: f64) -> TransferMatrix {
        let k = self.k;
        TransferMatrix::new(
            m_free_segment(x0, k).m * self.m * m_free_segment(-x0, k).m,
            k,
        )
    }
}

/// Transfer matrix of a time-reversal-symmetric scatterer from its left amplitudes:
/// M = [[1/t, r*/t*], [r/t, 1/t*]].
pub fn m_from_amplitudes(t: Complex64, r: Complex64, k: WaveNumber) -> Result<TransferMatrix> {
    if !(t.norm() >= MIN_TRANSMISSION) {
        return Err(Error::ZeroTransmission(t.norm()));
    }
    let ti = t.inv();
    let tci = t.conj().inv();
    Ok(TransferMatrix::new(
        ComplexMat2::new(ti, r.conj() * tci, r * ti, tci),
        k,
    ))
}

/// Transfer matrix from both scattering experiments; no symmetry assumed.
pub fn m_from_scattering(
    left: &ScatteringResult,
    right: &ScatteringResult,
    k: WaveNumber,
) -> Result<TransferMatrix> {
    if !(left.t.norm() >= MIN_TRANSMISSION) {
        return Err(Error::ZeroTransmission(left.t.norm()));
    }
    let ti = left.t.inv();
    Ok(TransferMatrix::new(
        ComplexMat2::new(
            ti,
            -right.r * ti,
            left.r * ti,
            (left.t * right.t - left.r * right.r) * ti,
        ),
        k,
    ))
}

/// Propagation over a lead segment, diag(e^{−ikl}, e^{ikl}).
pub fn m_free_segment(length: f64, k: WaveNumber) -> TransferMatrix {
    let ph = Complex64::from_polar(1.0, k.0 * length);
    TransferMatrix::new(ComplexMat2::diag(ph.conj(), ph), k)
}

/// Ordered product of a chain of transfer matrices.
pub fn m_compose(chain: &[TransferMatrix]) -> Result<TransferMatrix> {
    let first = chain.first().ok_or(Error::EmptyChain)?;
    let k = first.k;
    let mut m = ComplexMat2::identity();
    for tm in chain {
        if (tm.k.0 - k.0).abs() > 1e-12 * k.0.abs().max(1.0) {
            return Err(Error::MixedWaveNumber(k.0, tm.k.0));
        }
        m = m * tm.m;
    }
    Ok(TransferMatrix::new(m, k))
}

/// Chain of vertex-referenced elements joined by lead segments; `links[i]`
/// is the lead length between element i and i + 1, missing entries are zero.
pub fn m_cascade(elements: &[TransferMatrix], links: &[f64]) -> Result<TransferMatrix> {
    if elements.len() > 1 && links.len() > elements.len() - 1 {
        return Err(Error::InvalidGraph(format!(
            "{} links given for {} elements",
            links.len(),
            elements.len()
        )));
    }
    if let Some(&bad) = links.iter().find(|&&d| !(d >= 0.0)) {
        return Err(Error::InvalidGraph(format!(
            "link length {bad} must be ≥ 0"
        )));
    }
    let mut chain = Vec::with_capacity(2 * elements.len());
    for (i, el) in elements.iter().enumerate() {
        if i > 0 {
            if let Some(&d) = links.get(i - 1) {
                chain.push(m_free_segment(d, el.k));
            }
        }
        chain.push(*el);
    }
    m_compose(&chain)
}

/// Transmission amplitude of a chain, t = 1/M^tot₁₁.
pub fn chain_transmission(chain: &[TransferMatrix]) -> Result<Complex64> {
    Ok(m_compose(chain)?.t())
}

/// Square well (depth < 0) or barrier (depth > 0) occupying [0, width], global coordinate.
pub fn m_square_well(depth_ev: f64, width_nm: f64, k: WaveNumber) -> TransferMatrix {
    let v = ev_to_inverse_nm2(depth_ev);
    let p = uniform_propagator(wave_number_in(k.0, v), width_nm);
    vertex_from_propagator(&p, k).shifted_right(width_nm)
}

/// √(k² − V) on the branch with non-negative imaginary part.
pub fn wave_number_in(k: f64, v: f64) -> Complex64 {
    sqrt_upper(Complex64::new(k * k - v, 0.0))
}

pub(crate) fn sqrt_upper(z: Complex64) -> Complex64 {
    let s = z.sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

/// sin(qw)/q, regular at q = 0.
pub(crate) fn sinc_len(q: Complex64, w: f64) -> Complex64 {
    let x = q * w;
    if x.norm() < 1e-4 {
        let x2 = x * x;
        (1.0 - x2 / 6.0 + x2 * x2 / 120.0) * w
    } else {
        x.sin() / q
    }
}

/// Map (ψ, ψ′)(0) ↦ (ψ, ψ′)(w) for a constant potential with local wave number q.
pub(crate) fn uniform_propagator(q: Complex64, w: f64) -> ComplexMat2 {
    let c = (q * w).cos();
    let s = sinc_len(q, w);
    ComplexMat2::new(c, s, -q * q * s, c)
}

/// Vertex-referenced M of a region with unimodular propagator `p`.
pub fn vertex_from_propagator(p: &ComplexMat2, k: WaveNumber) -> TransferMatrix {
    let ik = I * k.0;
    let q = ComplexMat2::new(1.0.into(), 1.0.into(), ik, -ik);
    let q_inv = ComplexMat2::new(
        Complex64::new(0.5, 0.0),
        (2.0 * ik).inv(),
        Complex64::new(0.5, 0.0),
        -(2.0 * ik).inv(),
    );
    // propagators conserve the Wronskian, so det = 1 and the inverse is the
    // adjugate; forming det explicitly cancels catastrophically under thick barriers
    let p_inv = p.adjugate();
    TransferMatrix::new(q_inv * p_inv * q, k)
}

impl TransferMatrix {
    /// Convert a vertex-referenced matrix of a region of length `w` starting
    /// at the global origin to the global coordinate.
    fn shifted_right(self, w: f64) -> TransferMatrix {
        TransferMatrix::new(self.m * m_free_segment(-w, self.k).m, self.k)
    }
}

/// Extent of the non-free part of an edge, in edge coordinates.
pub fn potential_support(edge: &EdgeSpec) -> Option<(f64, f64)> {
    let l = edge.length;
    match &edge.potential {
        PotentialDescriptor::Free => None,
        PotentialDescriptor::SquareWell { width_nm, .. }
        | PotentialDescriptor::SquareBarrier { width_nm, .. } => {
            let x0 = 0.5 * (l - width_nm).max(0.0);
            Some((x0, x0 + width_nm))
        }
        PotentialDescriptor::Tabulated(tab) => Some((tab.start_nm, tab.end_nm())),
        PotentialDescriptor::CompositeRing { .. } => Some((0.5 * l, 0.5 * l)),
    }
}

/// Vertex-referenced M of the potential region alone.
pub fn m_vertex_for_potential(edge: &EdgeSpec, k: WaveNumber) -> Result<TransferMatrix> {
    match &edge.potential {
        PotentialDescriptor::Free => Ok(TransferMatrix::identity(k)),
        PotentialDescriptor::SquareWell { .. } | PotentialDescriptor::SquareBarrier { .. } => {
            let (u, w) = edge.potential.square_profile().unwrap();
            let p = uniform_propagator(wave_number_in(k.0, ev_to_inverse_nm2(u)), w);
            Ok(vertex_from_propagator(&p, k))
        }
        PotentialDescriptor::Tabulated(tab) => {
            let grid = IntegrationGrid::covering(tab.start_nm, tab.end_nm());
            let pair = ode::integrate_scaled(
                |x| ev_to_inverse_nm2(tab.value_at(x)),
                k.0 * k.0,
                &grid,
                false,
            )?;
            Ok(vertex_from_propagator(&pair.propagator(), k))
        }
        PotentialDescriptor::CompositeRing { t, r } => m_from_amplitudes(*t, *r, k),
    }
}

/// M of a whole edge in the edge's own coordinate ξ ∈ [0, l].
pub fn m_for_edge(edge: &EdgeSpec, k: WaveNumber) -> Result<TransferMatrix> {
    match potential_support(edge) {
        None => Ok(TransferMatrix::identity(k)),
        Some((x0, x1)) => {
            let mv = m_vertex_for_potential(edge, k)?;
            Ok(TransferMatrix::new(
                m_free_segment(x0, k).m * mv.m * m_free_segment(-x1, k).m,
                k,
            ))
        }
    }
}
