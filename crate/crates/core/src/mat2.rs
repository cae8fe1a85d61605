//! 2×2 complex matrices.

use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

const SINGULAR_DET: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMat2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl ComplexMat2 {
    pub const fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        ComplexMat2 { m11, m12, m21, m22 }
    }

    pub const fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        ComplexMat2::new(one, zero, zero, one)
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        ComplexMat2::new(a, zero, zero, d)
    }

    pub fn from_real(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        ComplexMat2::new(m11.into(), m12.into(), m21.into(), m22.into())
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(&self) -> Complex64 {
        self.m11 + self.m22
    }

    /// Adjugate, so that `a · adj(a) = det(a) · I`.
    pub fn adjugate(&self) -> Self {
        ComplexMat2::new(self.m22, -self.m12, -self.m21, self.m11)
    }

    pub fn inv(&self) -> Result<Self> {
        let det = self.det();
        if !(det.norm() > SINGULAR_DET) {
            return Err(Error::SingularMatrix { det: det.norm() });
        }
        Ok(self.adjugate().scale_c(det.inv()))
    }

    pub fn scale_c(&self, s: Complex64) -> Self {
        ComplexMat2::new(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)
    }

    pub fn mul_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m11 * v[0] + self.m12 * v[1],
            self.m21 * v[0] + self.m22 * v[1],
        ]
    }

    /// Max-abs entry norm.
    pub fn norm_max(&self) -> f64 {
        [self.m11, self.m12, self.m21, self.m22]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        [self.m11, self.m12, self.m21, self.m22]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexMat2::new(
            self.m11 + o.m11,
            self.m12 + o.m12,
            self.m21 + o.m21,
            self.m22 + o.m22,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexMat2::new(
            self.m11 - o.m11,
            self.m12 - o.m12,
            self.m21 - o.m21,
            self.m22 - o.m22,
        )
    }
}

impl Default for ComplexMat2 {
    fn default() -> Self {
        ComplexMat2::identity()
    }
}

impl Mul for ComplexMat2 {
    type Output = ComplexMat2;

    fn mul(self, b: ComplexMat2) -> ComplexMat2 {
        mat2_mul(&self, &b)
    }
}

pub fn mat2_mul(a: &ComplexMat2, b: &ComplexMat2) -> ComplexMat2 {
    ComplexMat2::new(
        a.m11 * b.m11 + a.m12 * b.m21,
        a.m11 * b.m12 + a.m12 * b.m22,
        a.m21 * b.m11 + a.m22 * b.m21,
        a.m21 * b.m12 + a.m22 * b.m22,
    )
}

pub fn mat2_inv(a: &ComplexMat2) -> Result<ComplexMat2> {
    a.inv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn entry() -> impl Strategy<Value = Complex64> {
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c(a, b))
    }

    fn matrix() -> impl Strategy<Value = ComplexMat2> {
        (entry(), entry(), entry(), entry()).prop_map(|(a, b, cc, d)| ComplexMat2::new(a, b, cc, d))
    }

    fn well_conditioned() -> impl Strategy<Value = ComplexMat2> {
        matrix().prop_filter("conditioning", |m| {
            m.det().norm() > 0.2 * m.norm_max().powi(2)
        })
    }

    fn close(a: &ComplexMat2, b: &ComplexMat2, tol: f64) -> bool {
        a.sub(b).norm_max() <= tol * (1.0 + a.norm_max().max(b.norm_max()))
    }

    #[test]
    fn identity_is_neutral() {
        let a = ComplexMat2::new(c(1.0, 2.0), c(-0.5, 0.1), c(3.0, 0.0), c(0.0, -1.0));
        assert_eq!(ComplexMat2::identity() * a, a);
        assert_eq!(a * ComplexMat2::identity(), a);
    }

    #[test]
    fn diagonal_inverse() {
        let a = ComplexMat2::from_real(2.0, 0.0, 0.0, 0.5);
        assert_eq!(a.inv().unwrap(), ComplexMat2::from_real(0.5, 0.0, 0.0, 2.0));
        assert_eq!(
            ComplexMat2::identity().inv().unwrap(),
            ComplexMat2::identity()
        );
    }

    #[test]
    fn singular_is_rejected() {
        let a = ComplexMat2::from_real(1.0, 2.0, 2.0, 4.0);
        assert!(matches!(mat2_inv(&a), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn unimodular_product_determinant() {
        let a = ComplexMat2::new(c(1.0, 1.0), c(2.0, 0.0), c(0.0, 1.0), c(0.0, 0.0));
        let a = a.scale_c(a.det().sqrt().inv());
        let b = ComplexMat2::new(c(0.3, -0.2), c(1.0, 0.5), c(-0.7, 0.0), c(2.0, 1.0));
        let b = b.scale_c(b.det().sqrt().inv());
        assert!((a.det() - 1.0).norm() < 1e-14);
        assert!(((a * b).det() - a.det() * b.det()).norm() < 1e-12);
    }

    proptest! {
        #[test]
        fn associativity(a in matrix(), b in matrix(), cc in matrix()) {
            let l = (a * b) * cc;
            let r = a * (b * cc);
            prop_assert!(close(&l, &r, 1e-12));
        }

        #[test]
        fn inverse_residual(a in well_conditioned()) {
            let inv = a.inv().unwrap();
            prop_assert!((a * inv).sub(&ComplexMat2::identity()).norm_max() < 1e-12);
            prop_assert!(close(&inv.inv().unwrap(), &a, 1e-12));
        }

        #[test]
        fn determinant_is_multiplicative(a in matrix(), b in matrix()) {
            let lhs = (a * b).det();
            let rhs = a.det() * b.det();
            prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()) * 16.0);
        }
    }
}
