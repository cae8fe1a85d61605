//! Angles stored as an exact multiple of π/2 plus a small remainder.
//!
//! Limit probes evaluate trigonometric functions at offsets far below the
//! spacing of f64 near nπ; keeping the lattice part symbolic makes sin/cos
//! of `nπ + 1e-20` exact.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::ops::{Add, Neg, Sub};

// π/2 split into three 33-bit pieces (Cody–Waite).
const PIO2_1: f64 = 1.570_796_326_734_125_6;
const PIO2_2: f64 = 6.077_100_506_303_966e-11;
const PIO2_3: f64 = 2.022_266_248_711_166_5e-21;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedAngle {
    /// Number of quarter turns (π/2).
    pub quarter: i64,
    pub rem: f64,
}

impl ReducedAngle {
    pub const ZERO: ReducedAngle = ReducedAngle {
        quarter: 0,
        rem: 0.0,
    };

    pub fn new(quarter: i64, rem: f64) -> Self {
        ReducedAngle { quarter, rem }
    }

    /// n·π + offset.
    pub fn pi_multiple(n: i64, offset: f64) -> Self {
        ReducedAngle::new(2 * n, offset)
    }

    /// Reduce an ordinary angle.
    pub fn from_f64(x: f64) -> Self {
        let n = (x / FRAC_PI_2).round();
        let rem = ((x - n * PIO2_1) - n * PIO2_2) - n * PIO2_3;
        ReducedAngle::new(n as i64, rem)
    }

    /// Snap `x` to the nearest multiple of π/2 if within `tol`, keeping the
    /// lattice part exact; otherwise reduce normally.
    pub fn snapped(x: f64, tol: f64) -> Self {
        let r = ReducedAngle::from_f64(x);
        if r.rem.abs() <= tol {
            ReducedAngle::new(r.quarter, 0.0)
        } else {
            r
        }
    }

    pub fn offset(self, d: f64) -> Self {
        ReducedAngle::new(self.quarter, self.rem + d)
    }

    pub fn to_f64(self) -> f64 {
        self.quarter as f64 * FRAC_PI_2 + self.rem
    }

    pub fn sin(self) -> f64 {
        match self.quarter.rem_euclid(4) {
            0 => self.rem.sin(),
            1 => self.rem.cos(),
            2 => -self.rem.sin(),
            _ => -self.rem.cos(),
        }
    }

    pub fn cos(self) -> f64 {
        match self.quarter.rem_euclid(4) {
            0 => self.rem.cos(),
            1 => -self.rem.sin(),
            2 => -self.rem.cos(),
            _ => self.rem.sin(),
        }
    }

    /// Half the angle; exact when the quarter count is even.
    pub fn half(self) -> Self {
        if self.quarter % 2 == 0 {
            ReducedAngle::new(self.quarter / 2, 0.5 * self.rem)
        } else {
            ReducedAngle::new(self.quarter.div_euclid(2), 0.5 * self.rem + FRAC_PI_4)
        }
    }
}

impl Add for ReducedAngle {
    type Output = ReducedAngle;
    fn add(self, o: ReducedAngle) -> ReducedAngle {
        ReducedAngle::new(self.quarter + o.quarter, self.rem + o.rem)
    }
}

impl Sub for ReducedAngle {
    type Output = ReducedAngle;
    fn sub(self, o: ReducedAngle) -> ReducedAngle {
        ReducedAngle::new(self.quarter - o.quarter, self.rem - o.rem)
    }
}

impl Neg for ReducedAngle {
    type Output = ReducedAngle;
    fn neg(self) -> ReducedAngle {
        ReducedAngle::new(-self.quarter, -self.rem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn tiny_offsets_survive() {
        let a = ReducedAngle::pi_multiple(3, 1e-20);
        assert_eq!(a.sin(), -1e-20);
        assert_eq!(a.cos(), -1.0);
        let b = ReducedAngle::pi_multiple(4, -3e-19).half();
        assert_eq!(b.sin(), -1.5e-19);
    }

    #[test]
    fn odd_half_falls_back() {
        let a = ReducedAngle::new(1, 0.2).half();
        assert!((a.to_f64() - (FRAC_PI_2 + 0.2) / 2.0).abs() < 1e-15);
        let b = ReducedAngle::new(-3, 0.0).half();
        assert!((b.to_f64() + 3.0 * FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn snapping() {
        let a = ReducedAngle::snapped(2.0 * PI, 1e-9);
        assert_eq!(a, ReducedAngle::new(4, 0.0));
        let b = ReducedAngle::snapped(2.0, 1e-9);
        assert!((b.to_f64() - 2.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn matches_libm(x in -200.0f64..200.0) {
            let r = ReducedAngle::from_f64(x);
            prop_assert!((r.sin() - x.sin()).abs() < 1e-14);
            prop_assert!((r.cos() - x.cos()).abs() < 1e-14);
        }

        #[test]
        fn sum_and_half(x in -50.0f64..50.0, y in -50.0f64..50.0) {
            let s = ReducedAngle::from_f64(x) + ReducedAngle::from_f64(y);
            prop_assert!((s.sin() - (x + y).sin()).abs() < 1e-13);
            let h = s.half();
            prop_assert!((h.sin() - ((x + y) / 2.0).sin()).abs() < 1e-13);
            let d = ReducedAngle::from_f64(x) - ReducedAngle::from_f64(y);
            prop_assert!((d.cos() - (x - y).cos()).abs() < 1e-13);
            prop_assert!(((-d).sin() - (y - x).sin()).abs() < 1e-13);
        }
    }
}
