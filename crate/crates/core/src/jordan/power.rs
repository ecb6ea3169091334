//! Generalized power functions and the holomorphic branch of `Δ(z)^{−s}`.

use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::{cone_contains, tube_contains, Algebra, AlgebraFamily, JordanElement};
use crate::error::{ConeError, Result};

/// Largest supported rank.
pub const MAX_RANK: usize = 2;

/// Non-increasing exponent tuple `(m_1, …, m_r)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentVector {
    entries: [f64; MAX_RANK],
    rank: usize,
}

impl ExponentVector {
    pub fn new(entries: &[f64]) -> Result<Self> {
        if entries.is_empty() || entries.len() > MAX_RANK {
            return Err(ConeError::invalid("exponent vector length must be 1 or 2"));
        }
        if entries.iter().any(|m| !m.is_finite()) {
            return Err(ConeError::invalid("exponent entries must be finite"));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(ConeError::invalid("exponent entries must be non-increasing"));
        }
        let mut e = [0.0; MAX_RANK];
        e[..entries.len()].copy_from_slice(entries);
        Ok(Self { entries: e, rank: entries.len() })
    }

    /// `(m, …, m)` of length `r`.
    pub fn uniform(algebra: Algebra, m: f64) -> Self {
        Self { entries: [m; MAX_RANK], rank: algebra.rank() }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries[..self.rank]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `ω = m_r`.
    pub fn omega(&self) -> f64 {
        self.entries[self.rank - 1]
    }

    pub fn is_uniform(&self) -> bool {
        self.entries().iter().all(|&m| m == self.entries[0])
    }

    pub fn sum(&self) -> f64 {
        self.entries().iter().sum()
    }

    /// Every entry shifted by `delta`.
    pub fn shifted(&self, delta: f64) -> Self {
        let mut out = *self;
        for m in out.entries.iter_mut().take(self.rank) {
            *m += delta;
        }
        out
    }

    pub(crate) fn check_rank(&self, algebra: Algebra) -> Result<()> {
        if self.rank == algebra.rank() {
            Ok(())
        } else {
            Err(ConeError::invalid("exponent length must equal the rank"))
        }
    }
}

/// `Δ_m(x)` for `x ∈ Ω`: `x^{m_1}` at rank 1 and `x11^{m_1−m_2} Δ(x)^{m_2}` on `Sym(2, ℝ)`.
pub fn power_function(x: &JordanElement, m: &ExponentVector) -> Result<f64> {
    m.check_rank(x.algebra())?;
    if !cone_contains(x) {
        return Err(ConeError::domain("power function needs a cone element"));
    }
    let c = x.re_coords();
    Ok(match x.algebra().family() {
        AlgebraFamily::RankOneReal => c[0].powf(m.entries[0]),
        AlgebraFamily::SymMatrices2 => {
            let det = c[0] * c[1] - c[2] * c[2];
            c[0].powf(m.entries[0] - m.entries[1]) * det.powf(m.entries[1])
        }
    })
}

/// Holomorphic logarithm of `Δ` on the tube, real on `iΩ` up to `i·π·r/2`.
///
/// With `z = x + iy`, `Δ(z) = Δ(y)·Π(μ_j + i)` where `μ_j` are the (real)
/// roots of `det(x − μy) = 0`; each factor stays in the upper half-plane, so
/// summing principal logarithms gives the continuation from `iΩ`.
pub fn log_det_tube(z: &JordanElement) -> Result<Complex64> {
    if !tube_contains(z) {
        return Err(ConeError::domain("point is outside the tube domain"));
    }
    let x = z.re().re_coords();
    let y = z.im().re_coords();
    Ok(match z.algebra().family() {
        AlgebraFamily::RankOneReal => Complex64::new(x[0], y[0]).ln(),
        AlgebraFamily::SymMatrices2 => {
            let det_y = y[0] * y[1] - y[2] * y[2];
            let det_x = x[0] * x[1] - x[2] * x[2];
            let b = x[0] * y[1] + x[1] * y[0] - 2.0 * x[2] * y[2];
            let disc = (b * b - 4.0 * det_y * det_x).max(0.0).sqrt();
            // Stable root pair of det_y·μ² − b·μ + det_x.
            let q = 0.5 * (b + b.signum() * disc);
            let (mu1, mu2) = if q == 0.0 { (0.0, 0.0) } else { (q / det_y, det_x / q) };
            let one = Complex64::new(mu1, 1.0).ln() + Complex64::new(mu2, 1.0).ln();
            Complex64::new(det_y.ln(), 0.0) + one
        }
    })
}

/// `Δ(z)^{−s}` on `T_Ω`, continued from `Δ(iy)^{−s} = i^{−rs}Δ(y)^{−s}`.
pub fn holo_det_power(z: &JordanElement, s: f64) -> Result<Complex64> {
    Ok((-log_det_tube(z)? * s).exp())
}

/// `Δ(w)^{−s}` on the right tube `Ω + iV`, the branch that is positive on `Ω`.
pub fn right_det_power(w: &JordanElement, s: f64) -> Result<Complex64> {
    let rotated = w.scale_c(Complex64::i());
    let r = w.algebra().rank() as f64;
    let log = log_det_tube(&rotated).map_err(|_| ConeError::domain("real part is outside the cone"))?;
    Ok((-(log - Complex64::new(0.0, FRAC_PI_2 * r)) * s).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{jdet, quad_rep, Algebra};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exponent_validation() {
        assert!(ExponentVector::new(&[2.0, 3.0]).is_err());
        assert!(ExponentVector::new(&[]).is_err());
        let m = ExponentVector::new(&[3.0, 2.0]).unwrap();
        assert_eq!(m.omega(), 2.0);
        assert!(!m.is_uniform());
        assert!(ExponentVector::uniform(Algebra::SYM2, 4.0).is_uniform());
    }

    #[test]
    fn power_function_values() {
        let m = ExponentVector::new(&[3.0, 1.5]).unwrap();
        assert!((power_function(&Algebra::SYM2.unit(), &m).unwrap() - 1.0).abs() < 1e-15);
        let x = JordanElement::sym2(2.0, 5.0, 0.0);
        let want = 2.0f64.powf(3.0) * 5.0f64.powf(1.5);
        assert!((power_function(&x, &m).unwrap() - want).abs() < 1e-12 * want);
        let u = ExponentVector::uniform(Algebra::SYM2, 2.5);
        let y = JordanElement::sym2(2.0, 1.0, 0.5);
        assert!((power_function(&y, &u).unwrap() - jdet(&y).re.powf(2.5)).abs() < 1e-12);
        assert!(power_function(&JordanElement::sym2(-1.0, 1.0, 0.0), &m).is_err());
    }

    #[test]
    fn power_function_invariant_under_minor_preserving_maps() {
        // x ↦ A x Aᵀ with A lower unitriangular keeps the leading minor and Δ.
        let m = ExponentVector::new(&[2.7, 0.4]).unwrap();
        for (a, b, cc, t) in [(2.0, 1.0, 0.3, 0.7), (0.5, 3.0, -0.9, -1.3), (1.0, 1.0, 0.0, 2.0)] {
            let x = JordanElement::sym2(a, b, cc);
            // A = [[1,0],[t,1]]: (AxAᵀ)11 = a, 22 = b + 2tc + t²a, 12 = c + ta.
            let y = JordanElement::sym2(a, b + 2.0 * t * cc + t * t * a, cc + t * a);
            let lhs = power_function(&y, &m).unwrap();
            let rhs = power_function(&x, &m).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * rhs);
        }
    }

    #[test]
    fn det_power_base_values() {
        assert!((holo_det_power(&Algebra::SYM2.i_unit(), 0.0).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let s = 1.7;
        let v = holo_det_power(&JordanElement::scalar_c(c(0.0, 1.0)), s).unwrap();
        assert!((v - (-c(0.0, 1.0).ln() * s).exp()).norm() < 1e-15);
        // Δ(iy)^{−s} = i^{−rs} Δ(y)^{−s}.
        let y = JordanElement::sym2(2.0, 1.5, 0.3);
        let z = y.scale_c(c(0.0, 1.0));
        let want = c(0.0, -core::f64::consts::PI * s).exp() * jdet(&y).re.powf(-s);
        assert!((holo_det_power(&z, s).unwrap() - want).norm() < 1e-13);
        assert!(holo_det_power(&Algebra::SYM2.unit(), 1.0).is_err());
    }

    #[test]
    fn det_power_agrees_with_determinant_for_integer_exponent() {
        let z = JordanElement::sym2_c(c(0.4, 2.0), c(-1.2, 1.5), c(0.8, 0.3));
        let v = holo_det_power(&z, -1.0).unwrap();
        assert!((v - jdet(&z)).norm() < 1e-13);
    }

    #[test]
    fn det_power_continuation_around_loop() {
        // Step along a closed loop in the tube; each step picks the branch
        // nearest the previous value, then compare with the direct formula.
        let s = 2.3;
        let base = JordanElement::sym2_c(c(0.0, 1.5), c(0.0, 1.0), c(0.0, 0.2));
        let steps = 4000;
        let mut prev_log = log_det_tube(&base).unwrap();
        let mut worst = 0.0f64;
        for k in 1..=steps {
            let t = 2.0 * core::f64::consts::PI * k as f64 / steps as f64;
            let shift = JordanElement::sym2(3.0 * t.cos() - 3.0, 2.0 * t.sin(), 4.0 * (2.0 * t).sin());
            let z = base + shift;
            let raw = jdet(&z).ln();
            let two_pi = 2.0 * core::f64::consts::PI;
            let turns = ((prev_log.im - raw.im) / two_pi).round();
            let cont = raw + c(0.0, two_pi * turns);
            let direct = log_det_tube(&z).unwrap();
            worst = worst.max(((-cont * s).exp() - (-direct * s).exp()).norm());
            prev_log = cont;
        }
        assert!(worst < 1e-10, "{worst}");
    }

    #[test]
    fn right_branch_is_positive_on_cone() {
        let x = JordanElement::sym2(2.0, 0.7, -0.4);
        let v = right_det_power(&x, 1.3).unwrap();
        assert!((v - c(jdet(&x).re.powf(-1.3), 0.0)).norm() < 1e-13);
        let v1 = right_det_power(&JordanElement::scalar_c(c(1.0, 1.0)), 2.0).unwrap();
        assert!((v1 - c(1.0, 1.0).powi(-2)).norm() < 1e-14);
    }

    proptest! {
        #[test]
        fn det_of_quadratic_image(a in 0.2..3.0f64, b in 0.2..3.0f64, cc in -1.0..1.0f64,
                                  p in 0.2..3.0f64, q in 0.2..3.0f64, rr in -1.0..1.0f64) {
            prop_assume!(a * b > cc * cc && p * q > rr * rr);
            let x = JordanElement::sym2(a, b, cc);
            let y = JordanElement::sym2(p, q, rr);
            let lhs = jdet(&quad_rep(&x).apply(&y)).re;
            let rhs = jdet(&x).re.powi(2) * jdet(&y).re;
            prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0));
        }

        #[test]
        fn power_function_on_diagonal(l1 in 0.1..5.0f64, l2 in 0.1..5.0f64, m1 in 0.0..4.0f64, dm in 0.0..3.0f64) {
            let m = ExponentVector::new(&[m1 + dm, m1]).unwrap();
            let x = JordanElement::sym2(l1, l2, 0.0);
            let want = l1.powf(m1 + dm) * l2.powf(m1);
            prop_assert!((power_function(&x, &m).unwrap() - want).abs() <= 1e-12 * want);
        }
    }
}
