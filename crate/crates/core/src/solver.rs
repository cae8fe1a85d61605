//! Vertex-amplitudes solver for two-terminal graphs.
//!
//! Every edge runs from the in-vertex (amplitude Ψ₁) to the out-vertex (Ψ₂).
//! On an edge, continuity fixes the plane-wave coefficients in terms of the
//! two vertex amplitudes, and the outward derivatives at the vertices are
//! linear in (Ψ₁, Ψ₂) through a 2×2 edge admittance Y (the Γ-block
//! differences). Kirchhoff's condition at both vertices, with the leads
//! attached, gives the 2×2 system ΓΨ = F with
//!
//! Γ = diag(1, −1) + Σₑ Yₑ,   F = (2·a_in, −2·b_out).
//!
//! Lead plane waves are measured from the vertex they attach to.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, ScatteringPreset, ScatteringResult, TwoTerminalGraph};
use crate::mat2::ComplexMat2;
use crate::spectrum::ode::{self, IntegrationGrid, SolutionPair};
use crate::transfer::{
    self, m_cascade, m_for_edge, m_free_segment, m_from_scattering, potential_support,
    TransferMatrix, MIN_TRANSMISSION,
};
use crate::units::{ev_to_inverse_nm2, WaveNumber};

/// |sin| below which an edge is treated as resonant.
pub const EDGE_SINGULAR_TOL: f64 = 1e-12;
/// |det Γ| below this multiple of ‖Γ‖ is treated as singular.
pub const GAMMA_SINGULAR_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Coefficient maps of one edge: (a, b)ᵀ = g1·(Ψₙ, Ψₙ₊₁)ᵀ before the
/// potential and (c, d)ᵀ = g2·(Ψₙ, Ψₙ₊₁)ᵀ after it, with g2 = M⁻¹·g1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPair {
    pub g1: ComplexMat2,
    pub g2: ComplexMat2,
    pub edge_index: usize,
}

/// Admittance of one edge and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeBlock {
    /// Constant potential over the whole edge: local wave number q,
    /// w = q/k, x = q·l, flux phase θ.
    Uniform {
        w: Complex64,
        x: Complex64,
        theta: f64,
        y: ComplexMat2,
    },
    General {
        y: ComplexMat2,
    },
}

impl EdgeBlock {
    pub fn admittance(&self) -> &ComplexMat2 {
        match self {
            EdgeBlock::Uniform { y, .. } | EdgeBlock::General { y } => y,
        }
    }

    fn det(&self) -> Complex64 {
        match self {
            EdgeBlock::Uniform { w, .. } => -(w * w),
            EdgeBlock::General { y } => y.det(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaSystem {
    pub gamma: ComplexMat2,
    pub f: [Complex64; 2],
    pub k: WaveNumber,
    pub preset: ScatteringPreset,
    /// det Γ evaluated without the cancellations of the direct product.
    pub det: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexAmplitudes {
    pub psi1: Complex64,
    pub psi2: Complex64,
}

/// Lead coefficients: ψ = a_in·e^{ikx} + b_in·e^{−ikx} on the input lead and
/// a_out·e^{ikx} + b_out·e^{−ikx} on the output lead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadCoefficients {
    pub a_in: Complex64,
    pub b_in: Complex64,
    pub a_out: Complex64,
    pub b_out: Complex64,
}

/// Flux phase accumulated along an edge.
pub fn edge_phase(edge: &EdgeSpec, flux_alpha: f64) -> f64 {
    f64::from(edge.ab_sign) * flux_alpha * edge.length
}

pub fn gamma_pair_for_edge(
    edge: &EdgeSpec,
    k: WaveNumber,
    flux_alpha: f64,
    edge_index: usize,
) -> Result<GammaPair> {
    let m = m_for_edge(edge, k)?;
    let theta = edge_phase(edge, flux_alpha);
    gamma_pair_from_matrix(&m, edge.length, theta, edge_index)
}

fn gamma_pair_from_matrix(
    m: &TransferMatrix,
    length: f64,
    theta: f64,
    edge_index: usize,
) -> Result<GammaPair> {
    let n = m.m.inv()?;
    let e = Complex64::from_polar(1.0, m.k.0 * length);
    let ec = e.conj();
    let alpha_a = n.m11 * e + n.m21 * ec;
    let alpha_b = n.m12 * e + n.m22 * ec;
    let d = alpha_b - alpha_a;
    if !(d.norm() >= 2.0 * EDGE_SINGULAR_TOL) {
        return Err(Error::EdgeResonanceSingularity {
            edge: edge_index,
            sin: 0.5 * d.norm(),
        });
    }
    let phase = Complex64::from_polar(1.0, theta);
    let di = d.inv();
    let g1 = ComplexMat2::new(alpha_b * di, -di * phase, -alpha_a * di, di * phase);
    Ok(GammaPair {
        g1,
        g2: n * g1,
        edge_index,
    })
}

fn admittance_from_pair(pair: &GammaPair, k: WaveNumber, length: f64, theta: f64) -> ComplexMat2 {
    let e = Complex64::from_polar(1.0, k.0 * length);
    let ec = e.conj();
    let back = Complex64::from_polar(1.0, -theta);
    let (g1, g2) = (&pair.g1, &pair.g2);
    ComplexMat2::new(
        g1.m11 - g1.m21,
        g1.m12 - g1.m22,
        back * (g2.m11 * e - g2.m21 * ec),
        back * (g2.m12 * e - g2.m22 * ec),
    )
}

/// Admittance block of one edge.
pub fn edge_block(
    edge: &EdgeSpec,
    k: WaveNumber,
    flux_alpha: f64,
    edge_index: usize,
) -> Result<EdgeBlock> {
    let theta = edge_phase(edge, flux_alpha);
    if let Some(level) = edge.filling_level_ev() {
        let q = if level == 0.0 {
            Complex64::new(k.0, 0.0)
        } else {
            transfer::wave_number_in(k.0, ev_to_inverse_nm2(level))
        };
        let x = q * edge.length;
        let s = x.sin();
        if !(s.norm() >= EDGE_SINGULAR_TOL) {
            return Err(Error::EdgeResonanceSingularity {
                edge: edge_index,
                sin: s.norm(),
            });
        }
        let w = q / k.0;
        let cot = x.cos() / s;
        let csc = s.inv();
        let ph = Complex64::from_polar(1.0, theta);
        let y = ComplexMat2::new(
            I * w * cot,
            -I * w * csc * ph,
            I * w * csc * ph.conj(),
            -I * w * cot,
        );
        return Ok(EdgeBlock::Uniform { w, x, theta, y });
    }
    let pair = gamma_pair_for_edge(edge, k, flux_alpha, edge_index)?;
    Ok(EdgeBlock::General {
        y: admittance_from_pair(&pair, k, edge.length, theta),
    })
}

/// Γ-block differences contribution of two edges to det(ΣY).
fn cross_term(a: &EdgeBlock, b: &EdgeBlock) -> Complex64 {
    match (a, b) {
        (
            EdgeBlock::Uniform {
                w: wa,
                x: xa,
                theta: ta,
                ..
            },
            EdgeBlock::Uniform {
                w: wb,
                x: xb,
                theta: tb,
                ..
            },
        ) => {
            // cos xa cos xb − cos Δθ, written as products of sines
            let dt = Complex64::new(ta - tb, 0.0);
            let m = xa - xb;
            let p = xa + xb;
            let num = -((m + dt) * 0.5).sin() * ((m - dt) * 0.5).sin()
                - ((p + dt) * 0.5).sin() * ((p - dt) * 0.5).sin();
            2.0 * wa * wb * num / (xa.sin() * xb.sin())
        }
        _ => {
            let (ya, yb) = (a.admittance(), b.admittance());
            ya.m11 * yb.m22 + yb.m11 * ya.m22 - ya.m12 * yb.m21 - yb.m12 * ya.m21
        }
    }
}

fn preset_rhs(preset: ScatteringPreset) -> [Complex64; 2] {
    match preset {
        ScatteringPreset::LeftScattering => [Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)],
        ScatteringPreset::RightScattering => [Complex64::new(0.0, 0.0), Complex64::new(-2.0, 0.0)],
        // one vertex amplitude is fixed instead; see `lead_coefficients`
        ScatteringPreset::Jost1 | ScatteringPreset::Jost2 => [Complex64::new(0.0, 0.0); 2],
    }
}

pub fn assemble_gamma(graph: &TwoTerminalGraph, k: WaveNumber) -> Result<GammaSystem> {
    graph.validate()?;
    let blocks = graph
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| edge_block(e, k, graph.flux_alpha, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(system_from_blocks(&blocks, k, graph.boundary))
}

fn system_from_blocks(
    blocks: &[EdgeBlock],
    k: WaveNumber,
    preset: ScatteringPreset,
) -> GammaSystem {
    let s = blocks
        .iter()
        .fold(ComplexMat2::from_real(0.0, 0.0, 0.0, 0.0), |acc, b| {
            acc.add(b.admittance())
        });
    let gamma = ComplexMat2::from_real(1.0, 0.0, 0.0, -1.0).add(&s);
    let mut det = Complex64::new(-1.0, 0.0) + (s.m22 - s.m11);
    for (i, a) in blocks.iter().enumerate() {
        det += a.det();
        for b in &blocks[i + 1..] {
            det += cross_term(a, b);
        }
    }
    GammaSystem {
        gamma,
        f: preset_rhs(preset),
        k,
        preset,
        det,
    }
}

impl GammaSystem {
    fn check(&self) -> Result<()> {
        let scale = self.gamma.norm_max();
        if !(self.det.norm() > GAMMA_SINGULAR_TOL * scale) || !self.det.is_finite() {
            return Err(Error::SingularGamma {
                k: self.k.0,
                det: self.det.norm(),
            });
        }
        Ok(())
    }

    /// ‖ΓΨ − F‖∞ for a left/right preset solution.
    pub fn residual(&self, psi: &VertexAmplitudes) -> f64 {
        let v = self.gamma.mul_vec([psi.psi1, psi.psi2]);
        (v[0] - self.f[0]).norm().max((v[1] - self.f[1]).norm())
    }
}

/// Ψ = adj(Γ)·F / det Γ, or the Jost normalisation for the Jost presets.
pub fn solve_vertex_amplitudes(sys: &GammaSystem) -> Result<VertexAmplitudes> {
    let g = &sys.gamma;
    match sys.preset {
        ScatteringPreset::LeftScattering | ScatteringPreset::RightScattering => {
            sys.check()?;
            let [f1, f2] = sys.f;
            let inv = sys.det.inv();
            Ok(VertexAmplitudes {
                psi1: (g.m22 * f1 - g.m12 * f2) * inv,
                psi2: (g.m11 * f2 - g.m21 * f1) * inv,
            })
        }
        ScatteringPreset::Jost1 => {
            let psi1 = -g.m22 / nonzero(g.m21, sys)?;
            Ok(VertexAmplitudes {
                psi1,
                psi2: Complex64::new(1.0, 0.0),
            })
        }
        ScatteringPreset::Jost2 => {
            let psi2 = -g.m11 / nonzero(g.m12, sys)?;
            Ok(VertexAmplitudes {
                psi1: Complex64::new(1.0, 0.0),
                psi2,
            })
        }
    }
}

fn nonzero(z: Complex64, sys: &GammaSystem) -> Result<Complex64> {
    if z.norm() > GAMMA_SINGULAR_TOL * sys.gamma.norm_max() {
        Ok(z)
    } else {
        Err(Error::SingularGamma {
            k: sys.k.0,
            det: z.norm(),
        })
    }
}

/// Lead coefficients for the system's preset.
pub fn lead_coefficients(sys: &GammaSystem) -> Result<LeadCoefficients> {
    let psi = solve_vertex_amplitudes(sys)?;
    let g = &sys.gamma;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    Ok(match sys.preset {
        ScatteringPreset::LeftScattering => LeadCoefficients {
            a_in: one,
            b_in: psi.psi1 - one,
            a_out: psi.psi2,
            b_out: zero,
        },
        ScatteringPreset::RightScattering => LeadCoefficients {
            a_in: zero,
            b_in: psi.psi1,
            a_out: psi.psi2 - one,
            b_out: one,
        },
        ScatteringPreset::Jost1 => {
            let a_in = 0.5 * (g.m11 * psi.psi1 + g.m12);
            LeadCoefficients {
                a_in,
                b_in: psi.psi1 - a_in,
                a_out: one,
                b_out: zero,
            }
        }
        ScatteringPreset::Jost2 => {
            let b_out = -0.5 * (g.m21 + g.m22 * psi.psi2);
            LeadCoefficients {
                a_in: zero,
                b_in: one,
                a_out: psi.psi2 - b_out,
                b_out,
            }
        }
    })
}

/// (t, r) implied by the preset: left amplitudes for LeftScattering and
/// Jost1, right amplitudes for RightScattering and Jost2.
pub fn amplitudes_from_gamma(sys: &GammaSystem) -> Result<ScatteringResult> {
    let c = lead_coefficients(sys)?;
    Ok(match sys.preset {
        ScatteringPreset::LeftScattering => ScatteringResult::new(c.a_out, c.b_in),
        ScatteringPreset::RightScattering => ScatteringResult::new(c.b_in, c.a_out),
        ScatteringPreset::Jost1 => ScatteringResult::new(c.a_in.inv(), c.b_in / c.a_in),
        ScatteringPreset::Jost2 => ScatteringResult::new(c.b_out.inv(), c.a_out / c.b_out),
    })
}

/// Assemble and solve in one go.
pub fn scatter(graph: &TwoTerminalGraph, k: WaveNumber) -> Result<ScatteringResult> {
    amplitudes_from_gamma(&assemble_gamma(graph, k)?)
}

/// Vertex-referenced transfer matrix of a whole graph.
pub fn graph_transfer_matrix(graph: &TwoTerminalGraph, k: WaveNumber) -> Result<TransferMatrix> {
    let left = scatter(
        &graph
            .clone()
            .with_boundary(ScatteringPreset::LeftScattering),
        k,
    )?;
    let right = scatter(
        &graph
            .clone()
            .with_boundary(ScatteringPreset::RightScattering),
        k,
    )?;
    m_from_scattering(&left, &right, k)
}

/// Left-incidence amplitudes of graphs chained by lead segments (see
/// [`m_cascade`]). A fully reflecting element blocks the chain: t = 0 and r
/// comes from the elements in front of it.
pub fn cascade_scatter(
    graphs: &[TwoTerminalGraph],
    links: &[f64],
    k: WaveNumber,
) -> Result<ScatteringResult> {
    let mut elements = Vec::with_capacity(graphs.len());
    for (i, g) in graphs.iter().enumerate() {
        let left = scatter(
            &g.clone().with_boundary(ScatteringPreset::LeftScattering),
            k,
        )?;
        if left.t.norm() < MIN_TRANSMISSION {
            let mut front = ComplexMat2::identity();
            if i > 0 {
                front = m_cascade(&elements, &links[..links.len().min(i - 1)])?.m;
                if let Some(&d) = links.get(i - 1) {
                    front = front * m_free_segment(d, k).m;
                }
            }
            let c = (front.m11 + front.m12 * left.r).inv();
            return Ok(ScatteringResult::new(
                Complex64::new(0.0, 0.0),
                (front.m21 + front.m22 * left.r) * c,
            ));
        }
        let right = scatter(
            &g.clone().with_boundary(ScatteringPreset::RightScattering),
            k,
        )?;
        elements.push(m_from_scattering(&left, &right, k)?);
    }
    Ok(m_cascade(&elements, links)?.left_amplitudes())
}

/// Field inside a constant-potential stretch: φ(ξ) = φ₀ cos q(ξ−x₀) + φ₀′ sin q(ξ−x₀)/q.
#[derive(Debug, Clone, PartialEq)]
pub enum InteriorField {
    None,
    Uniform {
        q: Complex64,
        x0: f64,
        phi0: Complex64,
        dphi0: Complex64,
    },
    Sampled {
        phi0: Complex64,
        dphi0: Complex64,
        pair: SolutionPair,
    },
}

/// Wave function on one edge. Plane-wave coefficients (a, b) hold before the
/// potential support and (c, d) after it; all are in the gauge where the
/// flux phase is moved to the far vertex, ψ(ξ) = e^{−iγξ}·φ(ξ).
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWaveField {
    pub edge_index: usize,
    pub k: WaveNumber,
    pub length: f64,
    pub gauge: f64,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub support: Option<(f64, f64)>,
    pub interior: InteriorField,
}

impl EdgeWaveField {
    fn plane(&self, a: Complex64, b: Complex64, xi: f64) -> (Complex64, Complex64) {
        let e = Complex64::from_polar(1.0, self.k.0 * xi);
        let ik = I * self.k.0;
        (a * e + b * e.conj(), ik * (a * e - b * e.conj()))
    }

    /// (φ, φ′) at ξ.
    fn gauge_free(&self, xi: f64) -> (Complex64, Complex64) {
        match &self.interior {
            InteriorField::Uniform { q, x0, phi0, dphi0 } if self.inside(xi) => {
                let s = xi - x0;
                let c = (q * s).cos();
                let sn = transfer::sinc_len(*q, s);
                (phi0 * c + dphi0 * sn, -phi0 * q * q * sn + dphi0 * c)
            }
            InteriorField::Sampled { phi0, dphi0, pair } if self.inside(xi) => {
                let (u, v) = sample_at(pair, xi);
                (phi0 * u.0 + dphi0 * v.0, phi0 * u.1 + dphi0 * v.1)
            }
            _ => match self.support {
                Some((_, x1)) if xi >= x1 => self.plane(self.c, self.d, xi),
                _ => self.plane(self.a, self.b, xi),
            },
        }
    }

    fn inside(&self, xi: f64) -> bool {
        match self.support {
            Some((x0, x1)) => xi >= x0 && xi <= x1,
            None => true,
        }
    }

    /// ψ(ξ) for ξ ∈ [0, l].
    pub fn value(&self, xi: f64) -> Complex64 {
        self.gauge_free(xi).0 * Complex64::from_polar(1.0, -self.gauge * xi)
    }

    /// Probability current Im(ψ*·Dψ) at ξ, with D the gauge-covariant derivative.
    pub fn current(&self, xi: f64) -> f64 {
        let (p, dp) = self.gauge_free(xi);
        (p.conj() * dp).im
    }
}

/// Linear interpolation of (u, u′) and (v, v′) from stored samples.
fn sample_at(pair: &SolutionPair, xi: f64) -> ((f64, f64), (f64, f64)) {
    let s = &pair.samples;
    let h = pair.step;
    let pos = ((xi - pair.x1) / h).clamp(0.0, (s.len() - 1) as f64);
    let i = (pos.floor() as usize).min(s.len().saturating_sub(2));
    let f = pos - i as f64;
    let (_, u0, v0) = s[i];
    let (_, u1, v1) = s[i + 1];
    let u = u0 + f * (u1 - u0);
    let v = v0 + f * (v1 - v0);
    ((u, (u1 - u0) / h), (v, (v1 - v0) / h))
}

/// Wave function on `edge` from the vertex amplitudes.
pub fn edge_wavefunction(
    psi: &VertexAmplitudes,
    edge: &EdgeSpec,
    k: WaveNumber,
    flux_alpha: f64,
    edge_index: usize,
) -> Result<EdgeWaveField> {
    let theta = edge_phase(edge, flux_alpha);
    let gauge = f64::from(edge.ab_sign) * flux_alpha;
    let far = psi.psi2 * Complex64::from_polar(1.0, theta);
    let l = edge.length;

    if let Some(level) = edge.filling_level_ev() {
        let q = if level == 0.0 {
            Complex64::new(k.0, 0.0)
        } else {
            transfer::wave_number_in(k.0, ev_to_inverse_nm2(level))
        };
        let s = (q * l).sin();
        if !(s.norm() >= EDGE_SINGULAR_TOL) {
            return Err(Error::EdgeResonanceSingularity {
                edge: edge_index,
                sin: s.norm(),
            });
        }
        let phi0 = psi.psi1;
        let dphi0 = q * (far - phi0 * (q * l).cos()) / s;
        // exterior coefficients of the matching free wave at the two ends
        let ik = I * k.0;
        let a = 0.5 * (phi0 + dphi0 / ik);
        let b = 0.5 * (phi0 - dphi0 / ik);
        let dphi_l = q * (far * (q * l).cos() - phi0) / s;
        let e = Complex64::from_polar(1.0, k.0 * l);
        let c = 0.5 * (far + dphi_l / ik) / e;
        let d = 0.5 * (far - dphi_l / ik) * e;
        return Ok(EdgeWaveField {
            edge_index,
            k,
            length: l,
            gauge,
            a,
            b,
            c,
            d,
            support: Some((0.0, l)),
            interior: InteriorField::Uniform {
                q,
                x0: 0.0,
                phi0,
                dphi0,
            },
        });
    }

    let pair = gamma_pair_for_edge(edge, k, 0.0, edge_index)?;
    let ab = pair.g1.mul_vec([psi.psi1, far]);
    let cd = pair.g2.mul_vec([psi.psi1, far]);
    let support = potential_support(edge);
    let mut field = EdgeWaveField {
        edge_index,
        k,
        length: l,
        gauge,
        a: ab[0],
        b: ab[1],
        c: cd[0],
        d: cd[1],
        support,
        interior: InteriorField::None,
    };
    if let Some((x0, x1)) = support {
        let (phi0, dphi0) = field.plane(field.a, field.b, x0);
        field.interior = match edge.potential.square_profile() {
            Some((u, _)) => InteriorField::Uniform {
                q: transfer::wave_number_in(k.0, ev_to_inverse_nm2(u)),
                x0,
                phi0,
                dphi0,
            },
            None if x1 > x0 => {
                let pot = edge.potential.clone();
                let pair = ode::integrate_scaled(
                    |x| ev_to_inverse_nm2(pot.value_at(x)),
                    k.0 * k.0,
                    &IntegrationGrid::covering(x0, x1),
                    true,
                )?;
                InteriorField::Sampled { phi0, dphi0, pair }
            }
            None => InteriorField::None,
        };
    }
    Ok(field)
}

/// Current carried by an edge from the in-vertex to the out-vertex.
pub fn edge_current(
    psi: &VertexAmplitudes,
    edge: &EdgeSpec,
    k: WaveNumber,
    flux_alpha: f64,
    edge_index: usize,
) -> Result<f64> {
    let block = edge_block(edge, k, flux_alpha, edge_index)?;
    let y = block.admittance();
    let ik = I * k.0;
    // φ′(0) = ik·(Y₁₁Ψₙ + Y₁₂Ψₙ₊₁)
    let own = (ik * y.m11).im * psi.psi1.norm_sqr();
    let cross = (ik * y.m12 * psi.psi1.conj() * psi.psi2).im;
    Ok(own + cross)
}

/// Currents on every edge of a graph under its preset.
pub fn graph_currents(graph: &TwoTerminalGraph, k: WaveNumber) -> Result<Vec<f64>> {
    let sys = assemble_gamma(graph, k)?;
    let psi = solve_vertex_amplitudes(&sys)?;
    graph
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| edge_current(&psi, e, k, graph.flux_alpha, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PotentialDescriptor;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn k(v: f64) -> WaveNumber {
        WaveNumber(v)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn free_edge_differences() {
        let pair = gamma_pair_for_edge(&EdgeSpec::free(1.0), k(FRAC_PI_2), 0.0, 0).unwrap();
        assert!((pair.g1.m11 - pair.g1.m21).norm() < 1e-15);
        assert!((pair.g1.m12 - pair.g1.m22 - c(0.0, -1.0)).norm() < 1e-15);
        assert!(pair.g1.sub(&pair.g2).norm_max() < 1e-15);
        for &kk in &[0.3, 1.1, 2.9] {
            let pair = gamma_pair_for_edge(&EdgeSpec::free(1.3), k(kk), 0.0, 0).unwrap();
            let x = kk * 1.3;
            assert!((pair.g1.m11 - pair.g1.m21 - c(0.0, x.cos() / x.sin())).norm() < 1e-13);
            assert!((pair.g1.m12 - pair.g1.m22 - c(0.0, -1.0 / x.sin())).norm() < 1e-13);
        }
    }

    #[test]
    fn ab_edge_picks_up_phase() {
        let edge = EdgeSpec::free(1.0).with_ab_sign(1);
        let plain = gamma_pair_for_edge(&EdgeSpec::free(1.0), k(1.2), 0.0, 0).unwrap();
        let ab = gamma_pair_for_edge(&edge, k(1.2), 0.7, 0).unwrap();
        let ph = Complex64::from_polar(1.0, 0.7);
        assert!((ab.g1.m12 - plain.g1.m12 * ph).norm() < 1e-15);
        assert!((ab.g1.m11 - plain.g1.m11).norm() < 1e-15);
    }

    #[test]
    fn edge_resonance_reported() {
        let err = gamma_pair_for_edge(&EdgeSpec::free(1.0), k(PI), 0.0, 3);
        assert!(matches!(
            err,
            Err(Error::EdgeResonanceSingularity { edge: 3, .. })
        ));
        let err = edge_block(&EdgeSpec::free(1.0), k(PI), 0.0, 1);
        assert!(matches!(
            err,
            Err(Error::EdgeResonanceSingularity { edge: 1, .. })
        ));
    }

    #[test]
    fn symmetric_ring_matrix() {
        let g = TwoTerminalGraph::ring(1.0, 1.0, 0.0).unwrap();
        for &kk in &[0.4, 1.3, 2.2, 5.0] {
            let sys = assemble_gamma(&g, k(kk)).unwrap();
            let cot = kk.cos() / kk.sin();
            let csc = 1.0 / kk.sin();
            let want = ComplexMat2::new(
                c(1.0, 2.0 * cot),
                c(0.0, -2.0 * csc),
                c(0.0, 2.0 * csc),
                c(-1.0, -2.0 * cot),
            );
            assert!(sys.gamma.sub(&want).norm_max() < 1e-13);
            assert!((sys.det - sys.gamma.det()).norm() < 1e-12 * sys.gamma.norm_max().powi(2));
        }
    }

    #[test]
    fn asymmetric_and_well_entries() {
        let g = TwoTerminalGraph::ring(1.0, 2.1, 0.0).unwrap();
        let sys = assemble_gamma(&g, k(0.9)).unwrap();
        let want = c(1.0, 1.0 / 0.9f64.tan() + 1.0 / (0.9f64 * 2.1).tan());
        assert!((sys.gamma.m11 - want).norm() < 1e-13);

        let n = 4;
        let g = TwoTerminalGraph::parallel_wells(n, -0.5, 1.0).unwrap();
        let kk = 1.7;
        let q = transfer::wave_number_in(kk, ev_to_inverse_nm2(-0.5)).re;
        let sys = assemble_gamma(&g, k(kk)).unwrap();
        let want = c(1.0, n as f64 * q / kk / q.tan());
        assert!((sys.gamma.m11 - want).norm() < 1e-12);
    }

    #[test]
    fn general_path_agrees_with_uniform() {
        // a filling well solved through its transfer matrix
        let edge = EdgeSpec::with_potential(
            1.0,
            PotentialDescriptor::SquareWell {
                depth_ev: -0.5,
                width_nm: 1.0,
            },
        );
        for &kk in &[0.5, 2.0, 7.3] {
            let uni = edge_block(&edge, k(kk), 0.0, 0).unwrap();
            let pair = gamma_pair_for_edge(&edge, k(kk), 0.0, 0).unwrap();
            let gen = admittance_from_pair(&pair, k(kk), 1.0, 0.0);
            assert!(uni.admittance().sub(&gen).norm_max() < 1e-10);
        }
    }

    #[test]
    fn solve_residual_and_nonzero() {
        let g = TwoTerminalGraph::ring(1.0, 2.1, 0.4).unwrap();
        for i in 1..200 {
            let kk = 0.05 * i as f64;
            if let Ok(sys) = assemble_gamma(&g, k(kk)) {
                let psi = solve_vertex_amplitudes(&sys).unwrap();
                assert!(sys.residual(&psi) < 1e-10);
                assert!(psi.psi1.norm() + psi.psi2.norm() > 0.0);
            }
        }
    }

    #[test]
    fn symmetric_ring_reflectionless_at_pi() {
        let g = TwoTerminalGraph::ring(1.0, 1.0, 0.0).unwrap();
        let res = scatter(&g, k(PI + 1e-9)).unwrap();
        assert!(res.r.norm() < 1e-8);
        assert!((res.t.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cascade_of_one_is_the_graph() {
        let g = TwoTerminalGraph::ring(1.0, 2.1, 0.0).unwrap();
        let one = cascade_scatter(std::slice::from_ref(&g), &[], k(1.3)).unwrap();
        let direct = scatter(&g, k(1.3)).unwrap();
        assert!((one.t - direct.t).norm() < 1e-13 && (one.r - direct.r).norm() < 1e-13);
    }

    #[test]
    fn blocked_cascade_reflects_fully() {
        let g = TwoTerminalGraph::ring(1.0, 2.1, 0.0).unwrap();
        let kk = k(2.0 * std::f64::consts::PI / 3.1);
        let res = cascade_scatter(&[g.clone(), g.clone()], &[0.4], kk).unwrap();
        assert_eq!(res.t.norm(), 0.0);
        assert!((res.reflection - 1.0).abs() < 1e-10);
    }

    #[test]
    fn presets_are_consistent() {
        let g = TwoTerminalGraph::ring(1.0, 2.1, 0.0).unwrap();
        for &kk in &[0.7, 1.9, 3.3] {
            let left = scatter(&g, k(kk)).unwrap();
            let right = scatter(
                &g.clone().with_boundary(ScatteringPreset::RightScattering),
                k(kk),
            )
            .unwrap();
            assert!((left.transmission - right.transmission).abs() < 1e-10);
            let m = graph_transfer_matrix(&g, k(kk)).unwrap();
            let j1 = lead_coefficients(
                &assemble_gamma(&g.clone().with_boundary(ScatteringPreset::Jost1), k(kk)).unwrap(),
            )
            .unwrap();
            assert!((j1.a_in - m.m.m11).norm() < 1e-12);
            assert!((j1.b_in - m.m.m21).norm() < 1e-12);
            let j2 = lead_coefficients(
                &assemble_gamma(&g.clone().with_boundary(ScatteringPreset::Jost2), k(kk)).unwrap(),
            )
            .unwrap();
            assert!((j2.a_out + m.m.m12).norm() < 1e-12);
            assert!((j2.b_out - m.m.m11).norm() < 1e-12);
        }
    }

    #[test]
    fn free_edge_field() {
        let psi = VertexAmplitudes {
            psi1: c(1.0, 0.0),
            psi2: c(1.0, 0.0),
        };
        let f = edge_wavefunction(&psi, &EdgeSpec::free(1.0), k(FRAC_PI_2), 0.0, 0).unwrap();
        for i in 0..=10 {
            let xi = 0.1 * i as f64;
            let want = (FRAC_PI_2 * xi).sin() + (FRAC_PI_2 * xi).cos();
            assert!((f.value(xi) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn fields_are_continuous_at_vertices() {
        let g = TwoTerminalGraph::ring(1.0, 2.1, 0.8).unwrap();
        let kk = k(2.3);
        let sys = assemble_gamma(&g, kk).unwrap();
        let psi = solve_vertex_amplitudes(&sys).unwrap();
        for (i, e) in g.edges.iter().enumerate() {
            let f = edge_wavefunction(&psi, e, kk, g.flux_alpha, i).unwrap();
            assert!((f.value(0.0) - psi.psi1).norm() < 1e-10);
            assert!((f.value(e.length) - psi.psi2).norm() < 1e-10);
        }
    }

    #[test]
    fn current_zero_for_aligned_phases() {
        let edge = EdgeSpec::free(1.0);
        for m in 0..4 {
            let psi = VertexAmplitudes {
                psi1: Complex64::from_polar(0.7, 0.3),
                psi2: Complex64::from_polar(1.3, 0.3 + PI * m as f64),
            };
            assert!(edge_current(&psi, &edge, k(1.1), 0.0, 0).unwrap().abs() < 1e-12);
        }
        let psi = VertexAmplitudes {
            psi1: c(0.0, 0.0),
            psi2: c(1.0, 2.0),
        };
        assert_eq!(edge_current(&psi, &edge, k(1.1), 0.0, 0).unwrap(), 0.0);
    }
}
