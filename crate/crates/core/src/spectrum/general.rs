//! Scattering and bound states of a finite-support potential from two
//! independent solutions u, v across its support [x₁, x₂].
//!
//! With leads attached at x₁ and x₂ the vertex system is
//!
//! Γ₁₁ = u′₁v₂ − u₂v′₁ + ikΔ̃,  Γ₁₂ = u₁v′₁ − v₁u′₁,
//! Γ₂₁ = v′₂u₂ − u′₂v₂,        Γ₂₂ = u′₂v₁ − u₁v′₂ + ikΔ̃,
//!
//! F = (2ikΔ̃, 0), Δ̃ = u₁v₂ − u₂v₁, and t = Ψ₂, r = Ψ₁ − 1. Since
//! det Γ = Δ̃·R(k) with R free of poles, the solve goes through R directly and
//! stays regular where Δ̃ vanishes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{PotentialDescriptor, ScatteringResult};
use crate::mat2::ComplexMat2;
use crate::spectrum::ode::{integrate_scaled, IntegrationGrid, SolutionPair};
use crate::spectrum::BoundState;
use crate::units::{ev_to_inverse_nm2, kappa_to_ev, WaveNumber};

const SCAN_POINTS: usize = 2000;

/// Γ and F of the two-lead system at complex wave number `k`.
pub fn gamma_from_solutions(pair: &SolutionPair, k: Complex64) -> (ComplexMat2, [Complex64; 2]) {
    let p = pair;
    let ikd = Complex64::new(0.0, 1.0) * k * p.delta_tilde();
    let gamma = ComplexMat2::new(
        ikd + (p.du1 * p.v2 - p.u2 * p.dv1),
        (p.u1 * p.dv1 - p.v1 * p.du1).into(),
        (p.dv2 * p.u2 - p.du2 * p.v2).into(),
        ikd + (p.du2 * p.v1 - p.u1 * p.dv2),
    );
    (gamma, [2.0 * ikd, Complex64::new(0.0, 0.0)])
}

/// det Γ / Δ̃ as a polynomial in ik.
fn reduced_det(pair: &SolutionPair, ik: Complex64) -> Complex64 {
    let p = pair;
    let c0 = -(p.du1 * p.dv2 - p.du2 * p.dv1);
    let c1 = (p.du1 * p.v2 - p.u2 * p.dv1) + (p.du2 * p.v1 - p.u1 * p.dv2);
    c0 + ik * c1 + ik * ik * p.delta_tilde()
}

fn check_basis(pair: &SolutionPair) -> Result<()> {
    let w = pair.wronskian_start();
    let scale = (pair.u1.hypot(pair.du1)) * (pair.v1.hypot(pair.dv1));
    if !(w.abs() > 1e-12 * scale) {
        return Err(Error::DegenerateBasis(w.abs()));
    }
    Ok(())
}

/// Transmission and reflection from a solution pair at real k > 0.
pub fn amplitudes_from_solutions(pair: &SolutionPair, k: WaveNumber) -> Result<ScatteringResult> {
    check_basis(pair)?;
    let ik = Complex64::new(0.0, k.0);
    let (gamma, _) = gamma_from_solutions(pair, Complex64::new(k.0, 0.0));
    let den = reduced_det(pair, ik);
    if !(den.norm() > 0.0) {
        return Err(Error::SingularGamma { k: k.0, det: 0.0 });
    }
    // Ψ = adj(Γ)·F/det Γ with F₁ = 2ikΔ̃ and det Γ = Δ̃·R
    let psi1 = 2.0 * ik * gamma.m22 / den;
    let psi2 = -2.0 * ik * gamma.m21 / den;
    Ok(ScatteringResult::new(psi2, psi1 - 1.0))
}

/// Integration window covering the potential, in the descriptor's coordinate.
pub fn support_of(potential: &PotentialDescriptor) -> Result<(f64, f64)> {
    match potential {
        PotentialDescriptor::SquareWell { .. } | PotentialDescriptor::SquareBarrier { .. } => {
            Ok((0.0, potential.square_profile().unwrap().1))
        }
        PotentialDescriptor::Tabulated(tab) => Ok((tab.start_nm, tab.end_nm())),
        PotentialDescriptor::Free => {
            Err(Error::Unsupported("free potential has no support".into()))
        }
        PotentialDescriptor::CompositeRing { .. } => Err(Error::Unsupported(
            "composite element has no potential profile".into(),
        )),
    }
}

fn pair_at(potential: &PotentialDescriptor, e: f64) -> Result<SolutionPair> {
    let (a, b) = support_of(potential)?;
    integrate_scaled(
        |x| ev_to_inverse_nm2(potential.value_at(x)),
        e,
        &IntegrationGrid::covering(a, b),
        false,
    )
}

/// (t, r) of a finite-support potential, leads referenced at its ends.
pub fn scatter_potential(
    potential: &PotentialDescriptor,
    k: WaveNumber,
) -> Result<ScatteringResult> {
    amplitudes_from_solutions(&pair_at(potential, k.0 * k.0)?, k)
}

/// det Γ(iκ)/Δ̃(iκ); real, with zeros at the bound states.
pub fn bound_state_residual(potential: &PotentialDescriptor, kappa: f64) -> Result<f64> {
    let pair = pair_at(potential, -kappa * kappa)?;
    Ok(reduced_det(&pair, Complex64::new(-kappa, 0.0)).re)
}

/// |t(iκ)| of the analytic continuation; diverges at bound states.
pub fn transmission_at_imaginary(potential: &PotentialDescriptor, kappa: f64) -> Result<f64> {
    let pair = pair_at(potential, -kappa * kappa)?;
    let ik = Complex64::new(-kappa, 0.0);
    let (gamma, _) = gamma_from_solutions(&pair, Complex64::new(0.0, kappa));
    Ok((2.0 * ik * gamma.m21 / reduced_det(&pair, ik)).norm())
}

/// Bound states with κ in `kappa_range`, from sign changes of the residual
/// refined by bisection.
pub fn find_bound_states(
    potential: &PotentialDescriptor,
    kappa_range: (f64, f64),
) -> Result<Vec<BoundState>> {
    let (lo, hi) = kappa_range;
    if !(hi > lo) {
        return Ok(Vec::new());
    }
    let lo = lo.max(1e-9 * hi);
    let f = |kappa: f64| bound_state_residual(potential, kappa);
    let roots = scan_roots(f, lo, hi, SCAN_POINTS)?;
    Ok(roots
        .into_iter()
        .map(|kappa| BoundState {
            kappa,
            energy_ev: kappa_to_ev(kappa),
            n_wells: 1,
        })
        .collect())
}

/// Roots of a real function on [lo, hi] found on a uniform scan and bisected to 1e-13.
pub(crate) fn scan_roots<F: Fn(f64) -> Result<f64>>(
    f: F,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<Vec<f64>> {
    let mut roots = Vec::new();
    let h = (hi - lo) / points as f64;
    let mut x0 = lo;
    let mut f0 = f(x0)?;
    for i in 1..=points {
        let x1 = if i == points { hi } else { lo + h * i as f64 };
        let f1 = f(x1)?;
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0.signum() != f1.signum() && f1 != 0.0 {
            let (mut a, mut b, mut fa) = (x0, x1, f0);
            while b - a > 1e-13 * b.max(1.0) {
                let m = 0.5 * (a + b);
                let fm = f(m)?;
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::ode::integrate_solutions;
    use crate::units::HBAR2_OVER_2M;

    fn well(depth: f64, w: f64) -> PotentialDescriptor {
        PotentialDescriptor::SquareWell {
            depth_ev: depth,
            width_nm: w,
        }
    }

    #[test]
    fn free_propagation() {
        let pair = integrate_solutions(
            &PotentialDescriptor::Free,
            HBAR2_OVER_2M * 4.0,
            &IntegrationGrid::covering(0.0, 1.5),
        )
        .unwrap();
        let res = amplitudes_from_solutions(&pair, WaveNumber(2.0)).unwrap();
        assert!((res.t - Complex64::from_polar(1.0, 3.0)).norm() < 1e-9);
        assert!(res.r.norm() < 1e-9);
    }

    #[test]
    fn reduced_det_identity() {
        let pot = well(-0.5, 1.0);
        let pair = integrate_solutions(&pot, 0.3, &IntegrationGrid::covering(0.0, 1.0))
            .unwrap()
            .recombine(1.3, 0.4, -0.2, 0.9);
        for &k in &[Complex64::new(1.5, 0.0), Complex64::new(0.0, 2.0)] {
            let (g, _) = gamma_from_solutions(&pair, k);
            let ik = Complex64::new(0.0, 1.0) * k;
            let lhs = g.det();
            let rhs = pair.delta_tilde() * reduced_det(&pair, ik);
            assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn solve_matches_direct_gamma() {
        let pot = well(-0.5, 1.0);
        let e = 0.4;
        let k = (e / HBAR2_OVER_2M).sqrt();
        let pair = integrate_solutions(&pot, e, &IntegrationGrid::covering(0.0, 1.0)).unwrap();
        let (g, f) = gamma_from_solutions(&pair, k.into());
        let inv = g.inv().unwrap();
        let psi = inv.mul_vec(f);
        let res = amplitudes_from_solutions(&pair, WaveNumber(k)).unwrap();
        assert!((psi[1] - res.t).norm() < 1e-12);
        assert!((psi[0] - 1.0 - res.r).norm() < 1e-12);
    }

    #[test]
    fn degenerate_basis() {
        let pair = integrate_solutions(&well(-0.5, 1.0), 0.3, &IntegrationGrid::covering(0.0, 1.0))
            .unwrap()
            .recombine(1.0, 2.0, 2.0, 4.0);
        assert!(matches!(
            amplitudes_from_solutions(&pair, WaveNumber(1.0)),
            Err(Error::DegenerateBasis(_))
        ));
    }

    #[test]
    fn shallow_well_binds_once() {
        let pot = well(-0.001, 1.0);
        let k0 = (0.001 / HBAR2_OVER_2M).sqrt();
        let states = find_bound_states(&pot, (0.0, k0)).unwrap();
        assert_eq!(states.len(), 1);
        // weak binding: κ ≈ |V|·w/2
        let approx = 0.5 * (0.001 / HBAR2_OVER_2M);
        assert!((states[0].kappa / approx - 1.0).abs() < 0.05);
    }

    #[test]
    fn empty_range() {
        assert!(find_bound_states(&well(-0.5, 1.0), (1.0, 1.0))
            .unwrap()
            .is_empty());
    }
}
