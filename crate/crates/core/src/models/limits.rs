//! Iterated limits of the ring amplitudes at singular points.
//!
//! At a point where an FTR meets an arm resonance, t(k, ·) is not
//! continuous and the value reached depends on which parameter goes first.
//! The probe evaluates the closed form at shrinking offsets (kept exact by
//! [`ReducedAngle`]) and extrapolates both limits.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::angle::ReducedAngle;
use crate::models::ring::{ring_amplitudes_angles, RingSpec};

const OUTER: [f64; 5] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
const INNER_STEPS: i32 = 5;
pub const CAUCHY_TOL: f64 = 1e-5;
const SNAP_TOL: f64 = 1e-8;

/// Which parameter reaches its target first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitOrder {
    /// The arm length is tuned onto the FTR condition k(l₁ + l₂) = 2πm
    /// first, then k → k₀.
    LengthFirst,
    /// k → k₀ first. Without flux the arm length is released afterwards; with
    /// flux, α is.
    KFirst,
    /// α → α₀ first, then k → k₀.
    AlphaFirst,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitTarget {
    pub k0: f64,
    pub alpha0: f64,
}

impl LimitTarget {
    pub fn new(k0: f64, alpha0: f64) -> Self {
        LimitTarget { k0, alpha0 }
    }
}

/// Iterated limit of (t, r) at `target`.
pub fn limit_probe(
    spec: &RingSpec,
    order: LimitOrder,
    target: LimitTarget,
) -> Result<(Complex64, Complex64)> {
    let flux_mode = match order {
        LimitOrder::LengthFirst => false,
        LimitOrder::AlphaFirst => true,
        LimitOrder::KFirst => target.alpha0 != 0.0,
    };
    if flux_mode {
        let f = flux_surface(spec, target)?;
        match order {
            LimitOrder::AlphaFirst => iterated(&f),
            _ => iterated(|outer, inner| f(inner, outer)),
        }
    } else {
        let f = length_surface(spec, target)?;
        match order {
            LimitOrder::LengthFirst => iterated(&f),
            _ => iterated(|outer, inner| f(inner, outer)),
        }
    }
}

type Amplitudes = (Complex64, Complex64);

/// (εx, εs) ↦ (t, r) with kl₁ = nπ + εx and k(l₁ + l₂) = 2πm + εs.
fn length_surface(spec: &RingSpec, target: LimitTarget) -> Result<impl Fn(f64, f64) -> Amplitudes> {
    let x0 = target.k0 * spec.l1;
    let s0 = target.k0 * spec.total_length();
    let n = (x0 / std::f64::consts::PI).round();
    let m = (s0 / (2.0 * std::f64::consts::PI)).round();
    if (x0 - n * std::f64::consts::PI).abs() > SNAP_TOL
        || (s0 - 2.0 * m * std::f64::consts::PI).abs() > SNAP_TOL
    {
        return Err(Error::Unsupported(format!(
            "k0 = {} is not an arm-resonant FTR point of this ring",
            target.k0
        )));
    }
    let (n, m) = (n as i64, m as i64);
    Ok(move |ex: f64, es: f64| {
        let x = ReducedAngle::pi_multiple(n, ex);
        let y = ReducedAngle::pi_multiple(2 * m - n, es - ex);
        amplitudes(x, y, ReducedAngle::ZERO, ReducedAngle::ZERO)
    })
}

/// (εk, εα) ↦ (t, r) around (k₀, α₀).
fn flux_surface(spec: &RingSpec, target: LimitTarget) -> Result<impl Fn(f64, f64) -> Amplitudes> {
    let snap = |v: f64| ReducedAngle::snapped(v, SNAP_TOL);
    let x0 = snap(target.k0 * spec.l1);
    let y0 = snap(target.k0 * spec.l2);
    let a10 = snap(target.alpha0 * spec.l1);
    let a20 = snap(target.alpha0 * spec.l2);
    let (l1, l2) = (spec.l1, spec.l2);
    Ok(move |ek: f64, ea: f64| {
        amplitudes(
            x0.offset(ek * l1),
            y0.offset(ek * l2),
            a10.offset(ea * l1),
            a20.offset(ea * l2),
        )
    })
}

fn amplitudes(x: ReducedAngle, y: ReducedAngle, a1: ReducedAngle, a2: ReducedAngle) -> Amplitudes {
    match ring_amplitudes_angles(x, y, a1, a2) {
        Ok(res) => (res.t, res.r),
        Err(_) => (Complex64::new(f64::NAN, 0.0), Complex64::new(f64::NAN, 0.0)),
    }
}

/// lim_{outer→0} lim_{inner→0} f(outer, inner).
fn iterated<F: Fn(f64, f64) -> Amplitudes>(f: F) -> Result<Amplitudes> {
    let mut outer_vals = Vec::with_capacity(OUTER.len());
    for &eo in &OUTER {
        let eps: Vec<f64> = (0..INNER_STEPS)
            .map(|j| eo.powi(3) * 10f64.powi(-j))
            .collect();
        let vals: Vec<Amplitudes> = eps.iter().map(|&ei| f(eo, ei)).collect();
        outer_vals.push(extrapolate(&eps, &vals)?);
    }
    let n = OUTER.len();
    let best = extrapolate(&OUTER[n - 3..], &outer_vals[n - 3..])?;
    let prev = extrapolate(&OUTER[n - 4..n - 1], &outer_vals[n - 4..n - 1])?;
    let spread = (best.0 - prev.0).norm().max((best.1 - prev.1).norm());
    if !(spread < CAUCHY_TOL) {
        return Err(Error::NonConvergent(spread));
    }
    Ok(best)
}

/// Polynomial (Neville) extrapolation of both components to ε = 0.
fn extrapolate(eps: &[f64], vals: &[Amplitudes]) -> Result<Amplitudes> {
    let t: Vec<Complex64> = vals.iter().map(|v| v.0).collect();
    let r: Vec<Complex64> = vals.iter().map(|v| v.1).collect();
    let out = (neville_at_zero(eps, &t), neville_at_zero(eps, &r));
    if out.0.is_nan() || out.1.is_nan() {
        return Err(Error::NonConvergent(f64::NAN));
    }
    Ok(out)
}

fn neville_at_zero(x: &[f64], y: &[Complex64]) -> Complex64 {
    let mut p = y.to_vec();
    let n = x.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (x[i], x[i + level]);
            p[i] = (p[i] * xj - p[i + 1] * xi) / (xj - xi);
        }
    }
    p[0]
}
