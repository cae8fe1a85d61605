//! Transmission zeros of the ring: positions, local expansion and widths.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::models::ring::{ring_amplitudes_asymmetric, RingSpec};
use crate::units::WaveNumber;

const TWO_PI: f64 = 2.0 * PI;
/// Tolerance for "αL is a multiple of 2π" and "kL is a multiple of 2π".
pub const CONDITION_TOL: f64 = 1e-10;
/// |sin kl₁| below which a lattice point counts as commensurate.
const LATTICE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResonanceKind {
    /// k(l₁ + l₂) = 2πn.
    Ftr,
    /// k|l₂ − l₁| = (2n + 1)π.
    Str,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceReport {
    pub kind: ResonanceKind,
    pub k_res: f64,
    pub n_index: i64,
    /// |Ω| for an FTR with a known expansion, otherwise the numeric FWHM of the dip.
    pub width: f64,
    pub omega: Option<Complex64>,
    pub beta: Option<Complex64>,
    /// The zero cancels (commensurate arms): |t| → 1 instead of 0.
    pub removable: bool,
}

/// Expansion t ≈ β·Δk/(Δk + Ω) around the n-th FTR of a flux-free ring.
pub fn ftr_expansion(spec: &RingSpec, n: i64) -> (Complex64, Complex64) {
    let l = spec.total_length();
    let k_n = TWO_PI * n as f64 / l;
    let theta = k_n * spec.l1;
    let dl = spec.l2 - spec.l1;
    let den = Complex64::new(4.0 * l, -dl * (2.0 * theta).sin());
    let s = theta.sin();
    let omega = Complex64::new(0.0, 2.0 * s * s) / den;
    let beta = 4.0 * l * theta.cos() / den;
    (omega, beta)
}

fn near_integer(x: f64, tol: f64) -> Option<i64> {
    let n = x.round();
    ((x - n).abs() <= tol).then_some(n as i64)
}

/// Both flux conditions: kL = 2πn (n ≥ 1) and αL = 2πm.
///
/// For incommensurate arms this is where t vanishes; at commensurate
/// lattice points without flux the zero is removable.
pub fn ab_ftr_condition(spec: &RingSpec, k: WaveNumber) -> bool {
    let l = spec.total_length();
    let kn = near_integer(k.0 * l / TWO_PI, CONDITION_TOL / TWO_PI);
    let am = near_integer(spec.flux_phase() / TWO_PI, CONDITION_TOL / TWO_PI);
    matches!((kn, am), (Some(n), Some(_)) if n >= 1)
}

fn transmission(spec: &RingSpec, k: f64) -> Option<f64> {
    ring_amplitudes_asymmetric(spec, WaveNumber(k))
        .ok()
        .map(|r| r.transmission)
}

/// Full width of the transmission dip at `k0`, measured at half depth
/// relative to the lower of the two neighbouring maxima of T.
pub fn dip_fwhm(spec: &RingSpec, k0: f64) -> Option<f64> {
    let scale = spec
        .total_length()
        .max((spec.l2 - spec.l1).abs())
        .max(spec.l1)
        .max(spec.l2);
    let h = PI / (2000.0 * scale);
    let max_steps = 8000;
    let t0 = transmission(spec, k0).unwrap_or(0.0);
    let peak = |dir: f64| -> Option<f64> {
        let mut prev = t0;
        for i in 1..=max_steps {
            let kk = k0 + dir * h * i as f64;
            if kk <= 0.0 {
                return None;
            }
            let tt = transmission(spec, kk)?;
            if tt < prev && i > 1 {
                return Some(prev);
            }
            prev = tt;
        }
        None
    };
    let t_ref = peak(1.0)?.min(peak(-1.0)?);
    let half = t0 + 0.5 * (t_ref - t0);
    let crossing = |dir: f64| -> Option<f64> {
        let mut lo = k0;
        for i in 1..=max_steps {
            let hi = k0 + dir * h * i as f64;
            if transmission(spec, hi)? >= half {
                let (mut a, mut b) = (lo, hi);
                for _ in 0..60 {
                    let m = 0.5 * (a + b);
                    if transmission(spec, m)? >= half {
                        b = m;
                    } else {
                        a = m;
                    }
                }
                return Some(0.5 * (a + b));
            }
            lo = hi;
        }
        None
    };
    Some(crossing(1.0)? - crossing(-1.0)?)
}

/// All transmission zeros of the ring with k in (k_min, k_max].
pub fn find_resonances(spec: &RingSpec, k_min: f64, k_max: f64) -> Vec<ResonanceReport> {
    let mut out = Vec::new();
    if !(k_max > k_min) || !k_min.is_finite() || !k_max.is_finite() {
        return out;
    }
    let l = spec.total_length();
    let dl = (spec.l2 - spec.l1).abs();
    let flux_free = near_integer(spec.flux_phase() / TWO_PI, CONDITION_TOL / TWO_PI).is_some();
    let n_lo = (k_min * l / TWO_PI).floor().max(0.0) as i64;
    let n_hi = (k_max * l / TWO_PI).ceil() as i64;

    for n in n_lo.max(1)..=n_hi {
        let k = TWO_PI * n as f64 / l;
        if k <= k_min || k > k_max {
            continue;
        }
        let lattice = (k * spec.l1).sin().abs() < LATTICE_TOL;
        if flux_free {
            let (omega, beta) = ftr_expansion(spec, n);
            out.push(ResonanceReport {
                kind: ResonanceKind::Ftr,
                k_res: k,
                n_index: n,
                width: omega.norm(),
                omega: Some(omega),
                beta: Some(beta),
                removable: lattice,
            });
        } else if lattice {
            // flux opens a true zero at the commensurate point
            out.push(ResonanceReport {
                kind: ResonanceKind::Ftr,
                k_res: k,
                n_index: n,
                width: dip_fwhm(spec, k).unwrap_or(f64::NAN),
                omega: None,
                beta: None,
                removable: false,
            });
        }
    }

    if flux_free && dl > 0.0 {
        let m_lo = ((k_min * dl / PI - 1.0) / 2.0).floor().max(0.0) as i64;
        let m_hi = ((k_max * dl / PI - 1.0) / 2.0).ceil() as i64;
        for m in m_lo..=m_hi {
            let k = (2 * m + 1) as f64 * PI / dl;
            if k <= k_min || k > k_max {
                continue;
            }
            out.push(ResonanceReport {
                kind: ResonanceKind::Str,
                k_res: k,
                n_index: m,
                width: dip_fwhm(spec, k).unwrap_or(f64::NAN),
                omega: None,
                beta: None,
                removable: false,
            });
        }
    }
    out.sort_by(|a, b| a.k_res.total_cmp(&b.k_res));
    out
}
