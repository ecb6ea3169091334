//! Spectral decomposition of real elements with respect to a Jordan frame.

use alloc::vec::Vec;

#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;

use super::{AlgebraFamily, JordanElement};

/// Eigenvalues (descending) together with the Jordan frame realizing them.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    eigenvalues: Vec<f64>,
    frame: Vec<JordanElement>,
}

impl SpectralData {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn frame(&self) -> &[JordanElement] {
        &self.frame
    }

    /// `Σ λ_j c_j`.
    pub fn reconstruct(&self) -> JordanElement {
        let alg = self.frame[0].algebra();
        self.eigenvalues.iter().zip(&self.frame).fold(alg.zero(), |acc, (l, c)| acc + c.scale(*l))
    }

    /// Rotation angle `φ` of the frame for `Sym(2, ℝ)`: `c_1` projects onto `(cos φ, sin φ)`.
    pub fn angle(&self) -> f64 {
        let c1 = self.frame[0].re_coords();
        if self.frame[0].algebra().family() == AlgebraFamily::RankOneReal {
            return 0.0;
        }
        let a = c1[2].atan2(c1[0]);
        if a < 0.0 {
            a + core::f64::consts::PI
        } else {
            a
        }
    }
}

/// Degenerate-spectrum threshold below which any orthonormal frame is accepted.
const DEGENERATE: f64 = 1e-9;

/// Eigen-decomposition of a real element. Imaginary parts are ignored.
pub fn spectral_decompose(x: &JordanElement) -> SpectralData {
    let alg = x.algebra();
    match alg.family() {
        AlgebraFamily::RankOneReal => SpectralData { eigenvalues: alloc::vec![x.coord(0).re], frame: alloc::vec![alg.unit()] },
        AlgebraFamily::SymMatrices2 => {
            let [a, b, c] = x.re_coords();
            let mean = 0.5 * (a + b);
            let half = 0.5 * (a - b);
            let rad = half.hypot(c);
            let (l1, l2) = (mean + rad, mean - rad);
            let c1 = if rad <= DEGENERATE * (1.0 + mean.abs()) {
                JordanElement::sym2(1.0, 0.0, 0.0)
            } else {
                let phi = 0.5 * c.atan2(half);
                let (s, co) = phi.sin_cos();
                JordanElement::sym2(co * co, s * s, co * s)
            };
            let c2 = alg.unit() - c1;
            SpectralData { eigenvalues: alloc::vec![l1, l2], frame: alloc::vec![c1, c2] }
        }
    }
}

/// `R(φ) diag(λ1, λ2) R(φ)ᵀ`.
pub(crate) fn sym2_from_spectral(l1: f64, l2: f64, phi: f64) -> JordanElement {
    let (s, c) = phi.sin_cos();
    JordanElement::sym2(l1 * c * c + l2 * s * s, l1 * s * s + l2 * c * c, (l1 - l2) * c * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{jmul, Algebra};
    use proptest::prelude::*;

    #[test]
    fn unit_has_unit_eigenvalues() {
        for alg in [Algebra::RANK_ONE, Algebra::SYM2] {
            let s = spectral_decompose(&alg.unit());
            assert!(s.eigenvalues().iter().all(|&l| (l - 1.0).abs() < 1e-15));
            assert!((s.reconstruct() - alg.unit()).max_abs() < 1e-15);
        }
    }

    #[test]
    fn diagonal_input_gives_matrix_units() {
        let s = spectral_decompose(&JordanElement::sym2(3.0, 1.0, 0.0));
        assert_eq!(s.eigenvalues(), &[3.0, 1.0]);
        assert!((s.frame()[0] - JordanElement::sym2(1.0, 0.0, 0.0)).max_abs() < 1e-15);
        assert!((s.frame()[1] - JordanElement::sym2(0.0, 1.0, 0.0)).max_abs() < 1e-15);
    }

    #[test]
    fn spectral_constructor_round_trips() {
        let x = sym2_from_spectral(2.5, 0.5, 1.1);
        let s = spectral_decompose(&x);
        assert!((s.eigenvalues()[0] - 2.5).abs() < 1e-14 && (s.eigenvalues()[1] - 0.5).abs() < 1e-14);
        assert!((s.angle() - 1.1).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn frame_invariants(a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64) {
            let x = JordanElement::sym2(a, b, c);
            let s = spectral_decompose(&x);
            let f = s.frame();
            prop_assert!(s.eigenvalues()[0] >= s.eigenvalues()[1]);
            prop_assert!((s.reconstruct() - x).max_abs() < 1e-12);
            for ci in f {
                prop_assert!((jmul(ci, ci).unwrap() - *ci).max_abs() < 1e-12);
            }
            prop_assert!(jmul(&f[0], &f[1]).unwrap().max_abs() < 1e-12);
            prop_assert!((f[0] + f[1] - Algebra::SYM2.unit()).max_abs() < 1e-15);
        }

        #[test]
        fn cone_membership_matches_eigenvalues(a in -3.0..3.0f64, b in -3.0..3.0f64, c in -3.0..3.0f64) {
            let x = JordanElement::sym2(a, b, c);
            let pos = spectral_decompose(&x).eigenvalues().iter().all(|&l| l > 0.0);
            prop_assert_eq!(crate::jordan::cone_contains(&x), pos);
        }
    }
}
