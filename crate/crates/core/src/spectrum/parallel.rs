//! n identical square wells connected in parallel between two vertices.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::spectrum::general::scan_roots;
use crate::spectrum::BoundState;
use crate::transfer::wave_number_in;
use crate::units::{ev_to_inverse_nm2, kappa_to_ev, WaveNumber};

const I: Complex64 = Complex64::new(0.0, 1.0);
const SCAN_POINTS: usize = 4000;

/// tₙ = 2inkq / [(k² + n²q²) sin ql + 2inkq cos ql], q = √(k² − V₀).
pub fn parallel_wells_amplitude(
    n: usize,
    depth_ev: f64,
    width_nm: f64,
    k: WaveNumber,
) -> Complex64 {
    let kk = k.0;
    let q = wave_number_in(kk, ev_to_inverse_nm2(depth_ev));
    let nf = n as f64;
    let x = q * width_nm;
    let num = 2.0 * I * nf * kk * q;
    num / ((kk * kk + nf * nf * q * q) * x.sin() + num * x.cos())
}

/// Pole condition of tₙ(iκ) divided by q:
/// (n²q² − κ²)·sin(ql)/q − 2nκ·cos(ql), q = √(q₀² − κ²).
pub fn parallel_wells_residual(n: usize, depth_ev: f64, width_nm: f64, kappa: f64) -> f64 {
    let q0sq = -ev_to_inverse_nm2(depth_ev);
    let q = (q0sq - kappa * kappa).max(0.0).sqrt();
    let nf = n as f64;
    let x = q * width_nm;
    let sinc = if x.abs() < 1e-8 {
        width_nm
    } else {
        x.sin() / q
    };
    (nf * nf * q * q - kappa * kappa) * sinc - 2.0 * nf * kappa * x.cos()
}

/// All bound states, ordered by increasing κ.
pub fn parallel_wells_bound_states(n: usize, depth_ev: f64, width_nm: f64) -> Vec<BoundState> {
    let q0 = (-ev_to_inverse_nm2(depth_ev)).max(0.0).sqrt();
    if q0 == 0.0 || n == 0 {
        return Vec::new();
    }
    let f = |kappa: f64| Ok(parallel_wells_residual(n, depth_ev, width_nm, kappa));
    scan_roots(f, 1e-9 * q0, q0 * (1.0 - 1e-12), SCAN_POINTS)
        .unwrap_or_default()
        .into_iter()
        .map(|kappa| BoundState {
            kappa,
            energy_ev: kappa_to_ev(kappa),
            n_wells: n,
        })
        .collect()
}

/// The most strongly bound state (largest κ).
pub fn parallel_wells_bound_state(n: usize, depth_ev: f64, width_nm: f64) -> Option<BoundState> {
    parallel_wells_bound_states(n, depth_ev, width_nm).pop()
}

/// Approximate dip depth of T at large k, 4n²/(1 + 4n² + n⁴).
pub fn t_min_approx(n: usize) -> f64 {
    let n2 = (n * n) as f64;
    4.0 * n2 / (1.0 + 4.0 * n2 + n2 * n2)
}

/// Large-k limit of the dip depth, 4n²/(1 + n²)².
pub fn t_min_asymptotic(n: usize) -> f64 {
    let n2 = (n * n) as f64;
    4.0 * n2 / ((1.0 + n2) * (1.0 + n2))
}

/// Minimum of T over one oscillation period [k_start, k_start + π/l].
pub fn parallel_wells_t_min(n: usize, depth_ev: f64, width_nm: f64, k_start: f64) -> f64 {
    let tt = |k: f64| parallel_wells_amplitude(n, depth_ev, width_nm, WaveNumber(k)).norm_sqr();
    let period = PI / width_nm;
    let steps = 2000;
    let h = period / steps as f64;
    let (mut best_k, mut best) = (k_start, tt(k_start));
    for i in 1..=steps {
        let k = k_start + h * i as f64;
        let v = tt(k);
        if v < best {
            best = v;
            best_k = k;
        }
    }
    // golden-section polish
    let (mut a, mut b) = (
        (best_k - h).max(k_start),
        (best_k + h).min(k_start + period),
    );
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if tt(c) < tt(d) {
            b = d;
        } else {
            a = c;
        }
    }
    best.min(tt(0.5 * (a + b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_transmission_at_well_resonances() {
        let v0 = ev_to_inverse_nm2(-0.5);
        for n in [1, 3, 20] {
            for s in 1..6 {
                let q = PI * s as f64;
                let k = (q * q + v0).max(0.0).sqrt();
                if k > 0.0 {
                    let t = parallel_wells_amplitude(n, -0.5, 1.0, WaveNumber(k));
                    assert!((t.norm() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn single_well_levels() {
        let states = parallel_wells_bound_states(1, -0.5, 1.0);
        assert_eq!(states.len(), 2);
        assert!((states[1].kappa - 3.0316).abs() < 1e-3);
        assert!((states[0].kappa - 0.7312).abs() < 1e-3);
        let deepest = parallel_wells_bound_state(1, -0.5, 1.0).unwrap();
        assert_eq!(deepest, states[1]);
    }

    #[test]
    fn dip_formulas() {
        assert!((t_min_approx(1) - 4.0 / 6.0).abs() < 1e-15);
        assert!((t_min_asymptotic(1) - 1.0).abs() < 1e-15);
        assert!((t_min_asymptotic(5) - 100.0 / 676.0).abs() < 1e-15);
    }
}
