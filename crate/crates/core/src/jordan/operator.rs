//! Linear operators on `V_ℂ` in the coordinate basis.

use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;
use num_traits::Zero;

use super::{Algebra, JordanElement, ScalarField, MAX_DIM};
use crate::error::{ConeError, Result};

/// A linear map `V_ℂ → V_ℂ`, stored as an `n×n` matrix acting on coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinOp {
    algebra: Algebra,
    m: [[Complex64; MAX_DIM]; MAX_DIM],
    real: bool,
}

impl LinOp {
    pub fn identity(algebra: Algebra) -> Self {
        let mut m = [[Complex64::zero(); MAX_DIM]; MAX_DIM];
        for (k, row) in m.iter_mut().enumerate().take(algebra.dim()) {
            row[k] = Complex64::new(1.0, 0.0);
        }
        Self { algebra, m, real: true }
    }

    pub fn zero(algebra: Algebra) -> Self {
        Self { algebra, m: [[Complex64::zero(); MAX_DIM]; MAX_DIM], real: true }
    }

    /// Real operator from a row-major `n×n` matrix.
    pub fn from_real_rows(algebra: Algebra, rows: &[&[f64]]) -> Result<Self> {
        let n = algebra.dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(ConeError::invalid("operator matrix must be n×n"));
        }
        let mut op = Self::zero(algebra);
        for i in 0..n {
            for j in 0..n {
                op.m[i][j] = Complex64::new(rows[i][j], 0.0);
            }
        }
        Ok(op)
    }

    /// Assembles the matrix of a linear map from its values on the basis.
    pub fn from_map(algebra: Algebra, f: impl Fn(&JordanElement) -> JordanElement) -> Self {
        let n = algebra.dim();
        let mut op = Self::zero(algebra);
        for j in 0..n {
            let col = f(&algebra.basis(j));
            op.real &= col.is_real();
            for i in 0..n {
                op.m[i][j] = col.coord(i);
            }
        }
        op
    }

    /// Multiplication operator `L(z)`.
    pub fn mult(z: &JordanElement) -> Self {
        Self::from_map(z.algebra(), |b| z.mul_unchecked(b))
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[i][j]
    }

    pub fn apply(&self, x: &JordanElement) -> JordanElement {
        let n = self.algebra.dim();
        let mut out = [Complex64::zero(); MAX_DIM];
        for (i, slot) in out.iter_mut().enumerate().take(n) {
            for j in 0..n {
                *slot += self.m[i][j] * x.coord(j);
            }
        }
        let e = JordanElement::from_complex(self.algebra, out);
        if self.real && x.is_real() {
            e.with_field(ScalarField::Real)
        } else {
            e
        }
    }

    pub fn scale(&self, t: Complex64) -> Self {
        let mut out = *self;
        for row in out.m.iter_mut() {
            for v in row.iter_mut() {
                *v *= t;
            }
        }
        out.real &= t.im == 0.0;
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = *self;
        for i in 0..MAX_DIM {
            for j in 0..MAX_DIM {
                out.m[i][j] = self.m[j][i];
            }
        }
        out
    }

    /// Adjoint with respect to the trace form, `G⁻¹ Aᵀ G` with `G` the Gram matrix.
    pub fn trace_adjoint(&self) -> Self {
        let g = self.algebra.gram();
        let n = self.algebra.dim();
        let mut out = *self;
        for i in 0..n {
            for j in 0..n {
                out.m[i][j] = self.m[j][i] * (g[j] / g[i]);
            }
        }
        out
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.m;
        match self.algebra.dim() {
            1 => m[0][0],
            _ => {
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            }
        }
    }

    /// Inverse by cofactors.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        let scale = self.max_abs().max(1.0).powi(self.algebra.dim() as i32);
        if det.norm() <= 1e-14 * scale {
            return Err(ConeError::NonInvertible { det_abs: det.norm() });
        }
        let mut out = *self;
        let m = &self.m;
        match self.algebra.dim() {
            1 => out.m[0][0] = det.inv(),
            _ => {
                for i in 0..3 {
                    for j in 0..3 {
                        let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                        let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                        out.m[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / det;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        let n = self.algebra.dim();
        let mut best = 0.0f64;
        for row in self.m.iter().take(n) {
            for v in row.iter().take(n) {
                best = best.max(v.norm());
            }
        }
        best
    }

    /// Entrywise sup distance to another operator.
    pub fn distance(&self, other: &LinOp) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Add for LinOp {
    type Output = LinOp;

    fn add(self, rhs: LinOp) -> LinOp {
        assert_eq!(self.algebra, rhs.algebra, "adding operators on different algebras");
        let mut out = self;
        for i in 0..MAX_DIM {
            for j in 0..MAX_DIM {
                out.m[i][j] += rhs.m[i][j];
            }
        }
        out.real = self.real && rhs.real;
        out
    }
}

impl Sub for LinOp {
    type Output = LinOp;

    fn sub(self, rhs: LinOp) -> LinOp {
        self + rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for LinOp {
    type Output = LinOp;

    /// Composition `self ∘ rhs`.
    fn mul(self, rhs: LinOp) -> LinOp {
        assert_eq!(self.algebra, rhs.algebra, "composing operators on different algebras");
        let n = self.algebra.dim();
        let mut out = LinOp::zero(self.algebra);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::zero();
                for k in 0..n {
                    acc += self.m[i][k] * rhs.m[k][j];
                }
                out.m[i][j] = acc;
            }
        }
        out.real = self.real && rhs.real;
        out
    }
}

/// Quadratic representation `P(z) = 2L(z)² − L(z²)`.
pub fn quad_rep(z: &JordanElement) -> LinOp {
    let l = LinOp::mult(z);
    let l2 = LinOp::mult(&z.mul_unchecked(z));
    (l * l).scale(Complex64::new(2.0, 0.0)) - l2
}

/// Box operator `z□w = L(zw) + [L(z), L(w)]`.
pub fn box_op(z: &JordanElement, w: &JordanElement) -> Result<LinOp> {
    z.algebra().check_same(&w.algebra())?;
    let lz = LinOp::mult(z);
    let lw = LinOp::mult(w);
    Ok(LinOp::mult(&z.mul_unchecked(w)) + lz * lw - lw * lz)
}
