//! Two independent solutions of −ψ″ + Vψ = Eψ by fixed-step RK4.

use crate::error::{Error, Result};
use crate::graph::PotentialDescriptor;
use crate::mat2::ComplexMat2;
use crate::units::ev_to_inverse_nm2;

/// Default integration step, nm.
pub const DEFAULT_STEP_NM: f64 = 2e-4;
/// Accepted relative Wronskian drift.
pub const WRONSKIAN_TOL: f64 = 1e-8;
const MAX_HALVINGS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationGrid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl IntegrationGrid {
    pub fn new(start: f64, end: f64, step: f64) -> Self {
        IntegrationGrid { start, end, step }
    }

    /// [start, end] with the default step.
    pub fn covering(start: f64, end: f64) -> Self {
        IntegrationGrid::new(start, end, DEFAULT_STEP_NM)
    }

    fn steps(&self) -> usize {
        (((self.end - self.start) / self.step).ceil() as usize).max(1)
    }
}

/// Solutions u, v with u(x₁) = 1, u′(x₁) = 0, v(x₁) = 0, v′(x₁) = 1, or any
/// invertible recombination of them.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionPair {
    pub x1: f64,
    pub x2: f64,
    pub u1: f64,
    pub du1: f64,
    pub v1: f64,
    pub dv1: f64,
    pub u2: f64,
    pub du2: f64,
    pub v2: f64,
    pub dv2: f64,
    /// Sampled (x, u, v); empty unless requested.
    pub samples: Vec<(f64, f64, f64)>,
    /// Step actually used.
    pub step: f64,
    /// Largest Wronskian deviation seen along the grid, relative to the
    /// size of its two products.
    pub wronskian_drift: f64,
}

impl SolutionPair {
    /// Log-derivatives (μ₁, μ₂) of u at the two ends.
    pub fn mu(&self) -> (f64, f64) {
        (self.du1 / self.u1, self.du2 / self.u2)
    }

    /// Log-derivatives (ν₁, ν₂) of v at the two ends.
    pub fn nu(&self) -> (f64, f64) {
        (self.dv1 / self.v1, self.dv2 / self.v2)
    }

    /// Δ̃ = u₁v₂ − u₂v₁.
    pub fn delta_tilde(&self) -> f64 {
        self.u1 * self.v2 - self.u2 * self.v1
    }

    pub fn wronskian_start(&self) -> f64 {
        self.u1 * self.dv1 - self.du1 * self.v1
    }

    pub fn wronskian_end(&self) -> f64 {
        self.u2 * self.dv2 - self.du2 * self.v2
    }

    /// (u, v) → (a·u + b·v, c·u + d·v).
    pub fn recombine(&self, a: f64, b: f64, c: f64, d: f64) -> SolutionPair {
        let mix = |p: f64, q: f64| (a * p + b * q, c * p + d * q);
        let (u1, v1) = mix(self.u1, self.v1);
        let (du1, dv1) = mix(self.du1, self.dv1);
        let (u2, v2) = mix(self.u2, self.v2);
        let (du2, dv2) = mix(self.du2, self.dv2);
        SolutionPair {
            u1,
            du1,
            v1,
            dv1,
            u2,
            du2,
            v2,
            dv2,
            samples: self
                .samples
                .iter()
                .map(|&(x, u, v)| {
                    let (u, v) = mix(u, v);
                    (x, u, v)
                })
                .collect(),
            ..*self
        }
    }

    /// Propagator (ψ, ψ′)(x₁) ↦ (ψ, ψ′)(x₂), valid for any basis.
    pub fn propagator(&self) -> ComplexMat2 {
        let end = ComplexMat2::from_real(self.u2, self.v2, self.du2, self.dv2);
        let start = ComplexMat2::from_real(self.u1, self.v1, self.du1, self.dv1);
        let w = self.wronskian_start();
        let start_inv =
            ComplexMat2::from_real(self.dv1 / w, -self.v1 / w, -self.du1 / w, self.u1 / w);
        debug_assert!(start.is_finite());
        end * start_inv
    }
}

/// Integrate two independent solutions across `grid` at energy `energy_ev`.
///
/// The potential is evaluated with [`PotentialDescriptor::value_at`] in the
/// grid's coordinate.
pub fn integrate_solutions(
    potential: &PotentialDescriptor,
    energy_ev: f64,
    grid: &IntegrationGrid,
) -> Result<SolutionPair> {
    integrate_scaled(
        |x| ev_to_inverse_nm2(potential.value_at(x)),
        ev_to_inverse_nm2(energy_ev),
        grid,
        true,
    )
}

/// Same as [`integrate_solutions`] with V(x) and E already in nm⁻².
pub fn integrate_scaled<F: Fn(f64) -> f64>(
    v: F,
    e: f64,
    grid: &IntegrationGrid,
    keep_samples: bool,
) -> Result<SolutionPair> {
    if !(grid.end > grid.start) || !(grid.step > 0.0) {
        return Err(Error::InvalidPotential(format!(
            "bad integration grid [{}, {}] step {}",
            grid.start, grid.end, grid.step
        )));
    }
    let mut g = *grid;
    let mut last = None;
    for _ in 0..=MAX_HALVINGS {
        let pair = rk4_pair(&v, e, &g, keep_samples);
        if pair.wronskian_drift <= WRONSKIAN_TOL {
            return Ok(pair);
        }
        last = Some(pair.wronskian_drift);
        g.step *= 0.5;
    }
    Err(Error::StepTooCoarse {
        drift: last.unwrap_or(f64::NAN),
        step: g.step * 2.0,
    })
}

fn rk4_pair<F: Fn(f64) -> f64>(v: &F, e: f64, grid: &IntegrationGrid, keep: bool) -> SolutionPair {
    let n = grid.steps();
    let h = (grid.end - grid.start) / n as f64;
    // state: [u, u', v, v']
    let mut y = [1.0, 0.0, 0.0, 1.0];
    let mut samples = Vec::with_capacity(if keep { n + 1 } else { 0 });
    if keep {
        samples.push((grid.start, y[0], y[2]));
    }
    let rhs = |x: f64, s: &[f64; 4]| -> [f64; 4] {
        let f = v(x) - e;
        [s[1], f * s[0], s[3], f * s[2]]
    };
    let mut drift: f64 = 0.0;
    for i in 0..n {
        let x = grid.start + h * i as f64;
        // land exactly on the end so a step edge there is sampled inside
        let x_next = if i + 1 == n {
            grid.end
        } else {
            grid.start + h * (i + 1) as f64
        };
        let k1 = rhs(x, &y);
        let k2 = rhs(0.5 * (x + x_next), &axpy(&y, 0.5 * h, &k1));
        let k3 = rhs(0.5 * (x + x_next), &axpy(&y, 0.5 * h, &k2));
        let k4 = rhs(x_next, &axpy(&y, h, &k3));
        for j in 0..4 {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        let (p, q) = (y[0] * y[3], y[1] * y[2]);
        drift = drift.max((p - q - 1.0).abs() / p.abs().max(q.abs()).max(1.0));
        if keep {
            samples.push((x_next, y[0], y[2]));
        }
    }
    SolutionPair {
        x1: grid.start,
        x2: grid.end,
        u1: 1.0,
        du1: 0.0,
        v1: 0.0,
        dv1: 1.0,
        u2: y[0],
        du2: y[1],
        v2: y[2],
        dv2: y[3],
        samples,
        step: h,
        wronskian_drift: drift,
    }
}

fn axpy(y: &[f64; 4], a: f64, k: &[f64; 4]) -> [f64; 4] {
    [
        y[0] + a * k[0],
        y[1] + a * k[1],
        y[2] + a * k[2],
        y[3] + a * k[3],
    ]
}
