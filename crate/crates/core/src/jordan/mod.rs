//! Arithmetic of the Euclidean Jordan algebras `V = ℝ` and `V = Sym(2, ℝ)`
//! and of their complexifications.
//!
//! Elements of `Sym(2, ℝ)` are stored in the coordinates `(x11, x22, x12)`
//! of the matrix `[[x11, x12], [x12, x22]]`. The Jordan product is the
//! symmetrized matrix product, the Jordan trace and determinant are the
//! matrix trace and determinant, and the trace form is
//! `(x|y) = tr(xy) = x11·y11 + x22·y22 + 2·x12·y12`.

mod operator;
mod power;
mod spectral;

use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{ConeError, Result};

pub use operator::{box_op, quad_rep, LinOp};
pub use power::{
    holo_det_power, log_det_tube, power_function, right_det_power, ExponentVector, MAX_RANK,
};
pub use spectral::{spectral_decompose, SpectralData};
pub(crate) use spectral::sym2_from_spectral;

/// Largest `dim V` among the supported algebras.
pub const MAX_DIM: usize = 3;

/// Default tolerance for algebraic identities.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraFamily {
    RankOneReal,
    SymMatrices2,
}

/// Invariants `(n, r, d)` of a simple Euclidean Jordan algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Algebra {
    family: AlgebraFamily,
    n: usize,
    r: usize,
    d: usize,
}

impl Algebra {
    /// `V = ℝ` with `n = r = 1` and `d = 0`.
    pub const RANK_ONE: Algebra = Algebra { family: AlgebraFamily::RankOneReal, n: 1, r: 1, d: 0 };
    /// `V = Sym(2, ℝ)` with `n = 3`, `r = 2`, `d = 1`.
    pub const SYM2: Algebra = Algebra { family: AlgebraFamily::SymMatrices2, n: 3, r: 2, d: 1 };

    pub const fn new(family: AlgebraFamily) -> Self {
        match family {
            AlgebraFamily::RankOneReal => Self::RANK_ONE,
            AlgebraFamily::SymMatrices2 => Self::SYM2,
        }
    }

    pub fn family(&self) -> AlgebraFamily {
        self.family
    }

    /// `n = dim V`.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// Common dimension `d` of the off-diagonal root spaces.
    pub fn root_multiplicity(&self) -> usize {
        self.d
    }

    /// `n / r`.
    pub fn n_over_r(&self) -> f64 {
        self.n as f64 / self.r as f64
    }

    /// Holomorphic discrete series require `ω(π) > 2n/r − 1`.
    pub fn discrete_series_threshold(&self) -> f64 {
        2.0 * self.n_over_r() - 1.0
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            AlgebraFamily::RankOneReal => "rank1",
            AlgebraFamily::SymMatrices2 => "sym2",
        }
    }

    /// The unit element `e`.
    pub fn unit(&self) -> JordanElement {
        match self.family {
            AlgebraFamily::RankOneReal => JordanElement::from_reals(*self, [1.0, 0.0, 0.0]),
            AlgebraFamily::SymMatrices2 => JordanElement::from_reals(*self, [1.0, 1.0, 0.0]),
        }
    }

    pub fn zero(&self) -> JordanElement {
        JordanElement::from_reals(*self, [0.0; MAX_DIM])
    }

    /// `i·e`, the base point of the tube domain.
    pub fn i_unit(&self) -> JordanElement {
        self.unit().scale_c(Complex64::i())
    }

    /// Trace-form Gram weights of the coordinate basis.
    pub(crate) fn gram(&self) -> [f64; MAX_DIM] {
        match self.family {
            AlgebraFamily::RankOneReal => [1.0, 0.0, 0.0],
            AlgebraFamily::SymMatrices2 => [1.0, 1.0, 2.0],
        }
    }

    pub(crate) fn basis(&self, k: usize) -> JordanElement {
        let mut c = [0.0; MAX_DIM];
        c[k] = 1.0;
        JordanElement::from_reals(*self, c)
    }

    pub(crate) fn check_same(&self, other: &Algebra) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(ConeError::DescriptorMismatch { left: self.name(), right: other.name() })
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={}, r={}, d={})", self.name(), self.n, self.r, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarField {
    Real,
    Complex,
}

impl ScalarField {
    fn join(self, other: ScalarField) -> ScalarField {
        if self == ScalarField::Real && other == ScalarField::Real {
            ScalarField::Real
        } else {
            ScalarField::Complex
        }
    }
}

/// An element of `V` or `V_ℂ` in the fixed coordinate basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JordanElement {
    algebra: Algebra,
    coords: [Complex64; MAX_DIM],
    field: ScalarField,
}

impl JordanElement {
    /// Real element from its `n` coordinates.
    pub fn real(algebra: Algebra, coords: &[f64]) -> Result<Self> {
        if coords.len() != algebra.n {
            return Err(ConeError::invalid("coordinate count does not match dim V"));
        }
        let mut c = [0.0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Self::from_reals(algebra, c))
    }

    /// Complex element from its `n` coordinates.
    pub fn complex(algebra: Algebra, coords: &[Complex64]) -> Result<Self> {
        if coords.len() != algebra.n {
            return Err(ConeError::invalid("coordinate count does not match dim V"));
        }
        let mut c = [Complex64::zero(); MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Self { algebra, coords: c, field: ScalarField::Complex })
    }

    pub(crate) fn from_reals(algebra: Algebra, c: [f64; MAX_DIM]) -> Self {
        let mut coords = [Complex64::zero(); MAX_DIM];
        for (k, v) in c.iter().enumerate().take(algebra.n) {
            coords[k] = Complex64::new(*v, 0.0);
        }
        Self { algebra, coords, field: ScalarField::Real }
    }

    pub(crate) fn from_complex(algebra: Algebra, c: [Complex64; MAX_DIM]) -> Self {
        let mut coords = [Complex64::zero(); MAX_DIM];
        coords[..algebra.n].copy_from_slice(&c[..algebra.n]);
        Self { algebra, coords, field: ScalarField::Complex }
    }

    /// Real rank-1 element.
    pub fn scalar(x: f64) -> Self {
        Self::from_reals(Algebra::RANK_ONE, [x, 0.0, 0.0])
    }

    /// Complex rank-1 element.
    pub fn scalar_c(z: Complex64) -> Self {
        Self::from_complex(Algebra::RANK_ONE, [z, Complex64::zero(), Complex64::zero()])
    }

    /// Real symmetric matrix `[[x11, x12], [x12, x22]]`.
    pub fn sym2(x11: f64, x22: f64, x12: f64) -> Self {
        Self::from_reals(Algebra::SYM2, [x11, x22, x12])
    }

    /// Complex symmetric matrix `[[z11, z12], [z12, z22]]`.
    pub fn sym2_c(z11: Complex64, z22: Complex64, z12: Complex64) -> Self {
        Self::from_complex(Algebra::SYM2, [z11, z22, z12])
    }

    /// Complex element `x + i·y` from two real elements.
    pub fn from_parts(x: &JordanElement, y: &JordanElement) -> Result<Self> {
        x.algebra.check_same(&y.algebra)?;
        let mut c = [Complex64::zero(); MAX_DIM];
        for (k, slot) in c.iter_mut().enumerate().take(x.algebra.n) {
            *slot = Complex64::new(x.coords[k].re, y.coords[k].re);
        }
        Ok(Self::from_complex(x.algebra, c))
    }

    /// Symmetric `2×2` matrix with the same entries (rank 2 only).
    pub fn from_matrix(m: [[Complex64; 2]; 2]) -> Result<Self> {
        if (m[0][1] - m[1][0]).norm() > 1e-14 * (1.0 + m[0][1].norm()) {
            return Err(ConeError::invalid("matrix is not symmetric"));
        }
        let all_real = m.iter().flatten().all(|z| z.im == 0.0);
        let e = Self::from_complex(Algebra::SYM2, [m[0][0], m[1][1], m[0][1]]);
        Ok(if all_real { e.with_field(ScalarField::Real) } else { e })
    }

    pub fn to_matrix(&self) -> [[Complex64; 2]; 2] {
        match self.algebra.family {
            AlgebraFamily::RankOneReal => [[self.coords[0], Complex64::zero()], [Complex64::zero(), Complex64::zero()]],
            AlgebraFamily::SymMatrices2 => {
                let [a, b, c] = self.coords;
                [[a, c], [c, b]]
            }
        }
    }

    fn with_field(mut self, field: ScalarField) -> Self {
        self.field = field;
        self
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn is_real(&self) -> bool {
        self.field == ScalarField::Real
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords[..self.algebra.n]
    }

    pub fn coord(&self, k: usize) -> Complex64 {
        self.coords[k]
    }

    /// Real parts of the coordinates (padded to [`MAX_DIM`]).
    pub fn re_coords(&self) -> [f64; MAX_DIM] {
        [self.coords[0].re, self.coords[1].re, self.coords[2].re]
    }

    pub fn re(&self) -> JordanElement {
        Self::from_reals(self.algebra, self.re_coords())
    }

    pub fn im(&self) -> JordanElement {
        Self::from_reals(self.algebra, [self.coords[0].im, self.coords[1].im, self.coords[2].im])
    }

    pub fn conj(&self) -> JordanElement {
        let mut out = *self;
        for c in out.coords.iter_mut() {
            *c = c.conj();
        }
        out
    }

    /// Views a real element as an element of `V_ℂ`.
    pub fn complexify(&self) -> JordanElement {
        self.with_field(ScalarField::Complex)
    }

    pub fn scale(&self, t: f64) -> JordanElement {
        let mut out = *self;
        for c in out.coords.iter_mut() {
            *c *= t;
        }
        out
    }

    pub fn scale_c(&self, t: Complex64) -> JordanElement {
        let mut out = *self;
        for c in out.coords.iter_mut() {
            *c *= t;
        }
        out.field = ScalarField::Complex;
        out
    }

    /// Sup norm of the coordinates.
    pub fn max_abs(&self) -> f64 {
        self.coords().iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Euclidean norm induced by the trace form, `sqrt((z|z̄))`.
    pub fn norm(&self) -> f64 {
        let g = self.algebra.gram();
        self.coords().iter().zip(g.iter()).map(|(c, w)| w * c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub(crate) fn mul_unchecked(&self, other: &JordanElement) -> JordanElement {
        let field = self.field.join(other.field);
        let coords = match self.algebra.family {
            AlgebraFamily::RankOneReal => [self.coords[0] * other.coords[0], Complex64::zero(), Complex64::zero()],
            AlgebraFamily::SymMatrices2 => {
                let [a1, b1, c1] = self.coords;
                let [a2, b2, c2] = other.coords;
                [a1 * a2 + c1 * c2, b1 * b2 + c1 * c2, (a1 * c2 + c1 * b2 + c1 * a2 + b1 * c2) * 0.5]
            }
        };
        JordanElement { algebra: self.algebra, coords, field }
    }

    pub(crate) fn trace_unchecked(&self) -> Complex64 {
        match self.algebra.family {
            AlgebraFamily::RankOneReal => self.coords[0],
            AlgebraFamily::SymMatrices2 => self.coords[0] + self.coords[1],
        }
    }

    pub(crate) fn det_unchecked(&self) -> Complex64 {
        match self.algebra.family {
            AlgebraFamily::RankOneReal => self.coords[0],
            AlgebraFamily::SymMatrices2 => {
                let [a, b, c] = self.coords;
                a * b - c * c
            }
        }
    }

    pub(crate) fn trace_form_unchecked(&self, other: &JordanElement) -> Complex64 {
        let g = self.algebra.gram();
        let mut acc = Complex64::zero();
        for k in 0..self.algebra.n {
            acc += self.coords[k] * other.coords[k] * g[k];
        }
        acc
    }

    pub(crate) fn inv_unchecked(&self) -> Result<JordanElement> {
        let det = self.det_unchecked();
        let scale = self.max_abs().max(1.0);
        if det.norm() <= 1e-14 * scale.powi(self.algebra.r as i32) {
            return Err(ConeError::NonInvertible { det_abs: det.norm() });
        }
        let coords = match self.algebra.family {
            AlgebraFamily::RankOneReal => [det.inv(), Complex64::zero(), Complex64::zero()],
            AlgebraFamily::SymMatrices2 => {
                let [a, b, c] = self.coords;
                [b / det, a / det, -c / det]
            }
        };
        Ok(JordanElement { algebra: self.algebra, coords, field: self.field })
    }

    /// Real part of the trace; convenient for real elements.
    pub fn tr(&self) -> f64 {
        self.trace_unchecked().re
    }

    /// Real part of the determinant; convenient for real elements.
    pub fn det(&self) -> f64 {
        self.det_unchecked().re
    }
}

impl Add for JordanElement {
    type Output = JordanElement;

    /// Panics when the algebras differ.
    fn add(self, rhs: JordanElement) -> JordanElement {
        assert_eq!(self.algebra, rhs.algebra, "adding elements of different algebras");
        let mut out = self;
        for k in 0..MAX_DIM {
            out.coords[k] += rhs.coords[k];
        }
        out.field = self.field.join(rhs.field);
        out
    }
}

impl Sub for JordanElement {
    type Output = JordanElement;

    fn sub(self, rhs: JordanElement) -> JordanElement {
        self + (-rhs)
    }
}

impl Neg for JordanElement {
    type Output = JordanElement;

    fn neg(self) -> JordanElement {
        self.scale(-1.0)
    }
}

/// Jordan product `x·y`.
pub fn jmul(x: &JordanElement, y: &JordanElement) -> Result<JordanElement> {
    x.algebra.check_same(&y.algebra)?;
    Ok(x.mul_unchecked(y))
}

pub fn jtrace(x: &JordanElement) -> Complex64 {
    x.trace_unchecked()
}

pub fn jdet(x: &JordanElement) -> Complex64 {
    x.det_unchecked()
}

/// Trace form `(z|w) = tr(z·w)`, bilinear (no conjugation).
pub fn trace_form(z: &JordanElement, w: &JordanElement) -> Result<Complex64> {
    z.algebra.check_same(&w.algebra)?;
    Ok(z.trace_form_unchecked(w))
}

/// Jordan inverse; fails with the modulus of `Δ(x)` when `x` is singular.
pub fn jinv(x: &JordanElement) -> Result<JordanElement> {
    x.inv_unchecked()
}

/// `x ∈ Ω`: real with all eigenvalues strictly positive.
pub fn cone_contains(x: &JordanElement) -> bool {
    if x.coords().iter().any(|c| c.im != 0.0) {
        return false;
    }
    let spec = spectral_decompose(&x.re());
    spec.eigenvalues().iter().all(|&l| l > 0.0)
}

/// `z ∈ T_Ω = V + iΩ`.
pub fn tube_contains(z: &JordanElement) -> bool {
    cone_contains(&z.im())
}

/// `w` in the bounded domain `D`: the operator norm of `w` is below one.
pub fn disk_contains(w: &JordanElement) -> bool {
    operator_norm_sqr(w) < 1.0
}

/// Largest eigenvalue of `w w̄ᵀ` (squared spectral norm).
pub(crate) fn operator_norm_sqr(w: &JordanElement) -> f64 {
    match w.algebra.family {
        AlgebraFamily::RankOneReal => w.coords[0].norm_sqr(),
        AlgebraFamily::SymMatrices2 => {
            // w is complex symmetric; w w* is Hermitian 2×2.
            let m = w.to_matrix();
            let h00 = m[0][0].norm_sqr() + m[0][1].norm_sqr();
            let h11 = m[1][0].norm_sqr() + m[1][1].norm_sqr();
            let h01 = m[0][0] * m[1][0].conj() + m[0][1] * m[1][1].conj();
            let mean = 0.5 * (h00 + h11);
            let rad = (0.25 * (h00 - h11) * (h00 - h11) + h01.norm_sqr()).sqrt();
            mean + rad
        }
    }
}

/// Real-analytic function of a real element through its spectral
/// decomposition, `Σ f(λ_j) c_j`.
pub fn spectral_map(x: &JordanElement, f: impl Fn(f64) -> f64) -> JordanElement {
    let spec = spectral_decompose(&x.re());
    let mut out = x.algebra.zero();
    for (lambda, c) in spec.eigenvalues().iter().zip(spec.frame()) {
        out = out + c.scale(f(*lambda));
    }
    out
}

/// Square root of a cone element.
pub fn cone_sqrt(x: &JordanElement) -> Result<JordanElement> {
    if !cone_contains(x) {
        return Err(ConeError::domain("square root needs a cone element"));
    }
    Ok(spectral_map(x, |l| l.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn matmul(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
        let mut out = [[Complex64::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    #[test]
    fn descriptors_satisfy_dimension_formula() {
        for alg in [Algebra::RANK_ONE, Algebra::SYM2] {
            let (n, r, d) = (alg.dim(), alg.rank(), alg.root_multiplicity());
            assert_eq!(n, r + r * (r - 1) * d / 2);
        }
        assert_eq!(Algebra::new(AlgebraFamily::SymMatrices2), Algebra::SYM2);
    }

    #[test]
    fn unit_is_two_sided_identity() {
        let x = JordanElement::sym2(1.5, -0.3, 0.7);
        let e = Algebra::SYM2.unit();
        assert_eq!(jmul(&e, &x).unwrap(), x);
        assert_eq!(jmul(&x, &e).unwrap(), x);
    }

    #[test]
    fn rank_one_product_is_multiplication() {
        let p = jmul(&JordanElement::scalar(2.0), &JordanElement::scalar(3.0)).unwrap();
        assert_eq!(p.coord(0).re, 6.0);
    }

    #[test]
    fn sym2_product_matches_symmetrized_matrix_product() {
        let x = JordanElement::sym2(1.0, 0.0, 1.0);
        let y = JordanElement::sym2(0.0, 0.0, 1.0);
        let p = jmul(&x, &y).unwrap().to_matrix();
        let xy = matmul(x.to_matrix(), y.to_matrix());
        let yx = matmul(y.to_matrix(), x.to_matrix());
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[i][j] - (xy[i][j] + yx[i][j]) * 0.5).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn algebra_mismatch_is_reported() {
        let err = jmul(&JordanElement::scalar(1.0), &Algebra::SYM2.unit()).unwrap_err();
        assert!(matches!(err, ConeError::DescriptorMismatch { .. }));
        assert!(trace_form(&JordanElement::scalar(1.0), &Algebra::SYM2.unit()).is_err());
    }

    #[test]
    fn trace_and_determinant_of_unit() {
        for alg in [Algebra::RANK_ONE, Algebra::SYM2] {
            assert_eq!(jtrace(&alg.unit()).re, alg.rank() as f64);
            assert_eq!(jdet(&alg.unit()).re, 1.0);
        }
        assert_eq!(JordanElement::sym2(2.0, 3.0, 0.5).det(), 2.0 * 3.0 - 0.25);
    }

    #[test]
    fn inverses() {
        let e = Algebra::SYM2.unit();
        assert_eq!(jinv(&e).unwrap(), e);
        assert_eq!(jinv(&JordanElement::scalar(4.0)).unwrap().coord(0).re, 0.25);
        let d = jinv(&JordanElement::sym2(2.0, 5.0, 0.0)).unwrap();
        assert!((d.coord(0).re - 0.5).abs() < 1e-15 && (d.coord(1).re - 0.2).abs() < 1e-15);
        let z = JordanElement::sym2_c(c(1.0, 2.0), c(-0.5, 1.0), c(0.3, -0.2));
        let prod = jmul(&z, &jinv(&z).unwrap()).unwrap();
        assert!((prod - e).max_abs() < 1e-14);
    }

    #[test]
    fn singular_element_reports_determinant() {
        match jinv(&JordanElement::sym2(1.0, 1.0, 1.0)) {
            Err(ConeError::NonInvertible { det_abs }) => assert!(det_abs < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn membership_predicates() {
        assert!(cone_contains(&Algebra::SYM2.unit()));
        assert!(cone_contains(&Algebra::RANK_ONE.unit()));
        assert!(!cone_contains(&JordanElement::scalar(-1.0)));
        assert!(!cone_contains(&JordanElement::sym2(1.0, 1.0, 2.0)));
        assert!(tube_contains(&Algebra::SYM2.i_unit()));
        assert!(tube_contains(&Algebra::RANK_ONE.i_unit()));
        assert!(!tube_contains(&Algebra::RANK_ONE.unit().complexify()));
        assert!(disk_contains(&JordanElement::sym2_c(c(0.3, 0.2), c(-0.1, 0.0), c(0.2, 0.1))));
        assert!(!disk_contains(&JordanElement::scalar_c(c(0.8, 0.7))));
    }

    #[test]
    fn cone_membership_agrees_with_sylvester_criterion() {
        for (a, b, c) in [(1.0, 2.0, 1.4), (1.0, 2.0, 1.5), (-1.0, -2.0, 0.0), (0.5, 0.5, 0.0)] {
            let x = JordanElement::sym2(a, b, c);
            assert_eq!(cone_contains(&x), a > 0.0 && a * b - c * c > 0.0);
        }
    }

    #[test]
    fn square_root_squares_back() {
        let x = JordanElement::sym2(2.0, 1.0, 0.4);
        let s = cone_sqrt(&x).unwrap();
        assert!((jmul(&s, &s).unwrap() - x).max_abs() < 1e-14);
    }
}
