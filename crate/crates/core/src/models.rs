//! The tube, bounded-domain and `L²(Ω)` realizations of the scalar
//! holomorphic discrete series, their generator actions and intertwiners.
//!
//! Scalar conventions: `π(z) = Δ(z)^{−m}` on the tube (and on the right tube
//! `Ω + iV` with the branch positive on `Ω`), and `π(g) = Δ(g·e)^{−m/2}` for
//! `g ∈ L`, which is the character with `π(P(a)) = Δ(a)^{−m}`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::cone::{bessel_rank1_complex, gamma_cone, gamma_tilde_scalar, BesselSeriesConfig};
use crate::error::{ConeError, Result};
use crate::jordan::{
    box_op, cone_contains, disk_contains, holo_det_power, jinv, jmul, quad_rep, right_det_power, trace_form,
    tube_contains, Algebra, AlgebraFamily, ExponentVector, JordanElement, LinOp,
};
use crate::quadrature::{
    integrate_1d, integrate_2d, integrate_omega, integrate_oscillatory_line, GridProfile, IntegralResult, Interval, Trap,
};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Tube,
    Disk,
    ConeL2,
}

type Evaluator = Arc<dyn Fn(&JordanElement) -> Result<Complex64> + Send + Sync>;

/// A vector in one of the three models, given pointwise.
#[derive(Clone)]
pub struct ModelFunction {
    model: Model,
    weight: ExponentVector,
    algebra: Algebra,
    evaluator: Evaluator,
    metadata: String,
}

impl fmt::Debug for ModelFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModelFunction")
            .field("model", &self.model)
            .field("algebra", &self.algebra.name())
            .field("m", &self.m())
            .field("metadata", &self.metadata)
            .finish()
    }
}

impl ModelFunction {
    pub fn new(
        model: Model,
        algebra: Algebra,
        m: f64,
        metadata: impl Into<String>,
        evaluator: impl Fn(&JordanElement) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Result<Self> {
        if !m.is_finite() {
            return Err(ConeError::invalid("weight must be finite"));
        }
        Ok(Self { model, weight: ExponentVector::uniform(algebra, m), algebra, evaluator: Arc::new(evaluator), metadata: metadata.into() })
    }

    fn derived(&self, model: Model, metadata: String, evaluator: Evaluator) -> Self {
        Self { model, weight: self.weight, algebra: self.algebra, evaluator, metadata }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn weight(&self) -> &ExponentVector {
        &self.weight
    }

    pub fn m(&self) -> f64 {
        self.weight.omega()
    }

    pub fn metadata(&self) -> &str {
        &self.metadata
    }

    /// Value at a point of the model domain.
    pub fn eval(&self, p: &JordanElement) -> Result<Complex64> {
        self.algebra.check_same(&p.algebra())?;
        let inside = match self.model {
            Model::Tube => tube_contains(p),
            Model::Disk => disk_contains(p),
            Model::ConeL2 => cone_contains(p),
        };
        if !inside {
            return Err(ConeError::domain(format!("point outside the {:?} domain", self.model)));
        }
        (self.evaluator)(p)
    }

    fn expect(&self, model: Model) -> Result<()> {
        if self.model == model {
            Ok(())
        } else {
            Err(ConeError::invalid(format!("expected a {model:?} function, got {:?}", self.model)))
        }
    }
}

/// `π(z) = Δ(z)^{−m}` on `T_Ω`.
pub fn pi_tube(z: &JordanElement, m: f64) -> Result<Complex64> {
    holo_det_power(z, m)
}

/// `π(w) = Δ(w)^{−m}` on `Ω + iV`, positive on `Ω`.
pub fn pi_right(w: &JordanElement, m: f64) -> Result<Complex64> {
    right_det_power(w, m)
}

/// `π(g) = Δ(g·e)^{−m/2}` for `g ∈ L`.
pub fn pi_levi(g: &LinOp, m: f64) -> Result<f64> {
    let ge = g.apply(&g.algebra().unit());
    if !cone_contains(&ge) {
        return Err(ConeError::domain("operator does not preserve the cone"));
    }
    Ok(ge.det().powf(-m / 2.0))
}

/// `π(−I) = π(P(ie)) = Δ(ie)^{−m} = e^{−iπrm/2}`.
pub fn pi_minus_identity(alg: Algebra, m: f64) -> Complex64 {
    Complex64::from_polar(1.0, -PI * alg.rank() as f64 * m / 2.0)
}

/// Generators `n_u`, `g ∈ L` and `j` of `G`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GroupGenerator {
    TranslationN(JordanElement),
    LevL(LinOp),
    Inversion,
}

impl GroupGenerator {
    /// `x ↦ a·x`.
    pub fn dilation(alg: Algebra, a: f64) -> Self {
        GroupGenerator::LevL(LinOp::identity(alg).scale(Complex64::new(a, 0.0)))
    }

    /// `x ↦ A x Aᵀ` on `Sym(2, ℝ)`.
    pub fn congruence(a: [[f64; 2]; 2]) -> Self {
        let op = LinOp::from_map(Algebra::SYM2, |x| {
            let (x11, x22, x12) = (x.coord(0).re, x.coord(1).re, x.coord(2).re);
            let m = [[x11, x12], [x12, x22]];
            let mut ax = [[0.0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    ax[i][j] = a[i][0] * m[0][j] + a[i][1] * m[1][j];
                }
            }
            let e = |i: usize, j: usize| ax[i][0] * a[j][0] + ax[i][1] * a[j][1];
            JordanElement::sym2(e(0, 0), e(1, 1), e(0, 1))
        });
        GroupGenerator::LevL(op)
    }

    /// Checks the generator against `alg`; `L` elements must map sample
    /// points of `Ω` into `Ω` both ways.
    pub fn validate(&self, alg: Algebra) -> Result<()> {
        match self {
            GroupGenerator::TranslationN(u) => {
                alg.check_same(&u.algebra())?;
                if !u.is_real() {
                    return Err(ConeError::invalid("translations need a real element"));
                }
                Ok(())
            }
            GroupGenerator::LevL(g) => {
                alg.check_same(&g.algebra())?;
                if !g.is_real() {
                    return Err(ConeError::invalid("L elements are real operators"));
                }
                let inv = g.inverse()?;
                for x in cone_samples(alg) {
                    if !cone_contains(&g.apply(&x)) || !cone_contains(&inv.apply(&x)) {
                        return Err(ConeError::invalid("operator does not map Ω onto Ω"));
                    }
                }
                Ok(())
            }
            GroupGenerator::Inversion => Ok(()),
        }
    }
}

fn cone_samples(alg: Algebra) -> alloc::vec::Vec<JordanElement> {
    match alg.family() {
        AlgebraFamily::RankOneReal => alloc::vec![JordanElement::scalar(1.0), JordanElement::scalar(0.2), JordanElement::scalar(7.0)],
        AlgebraFamily::SymMatrices2 => alloc::vec![
            JordanElement::sym2(1.0, 1.0, 0.0),
            JordanElement::sym2(2.0, 0.5, 0.9),
            JordanElement::sym2(0.3, 4.0, -1.0),
            JordanElement::sym2(1.0, 1.0, 0.999),
        ],
    }
}

/// `T_π(g)` on the tube model.
pub fn act_tube(g: &GroupGenerator, f: &ModelFunction) -> Result<ModelFunction> {
    f.expect(Model::Tube)?;
    g.validate(f.algebra)?;
    let inner = f.evaluator.clone();
    let m = f.m();
    Ok(match *g {
        GroupGenerator::TranslationN(u) => {
            let uc = u.complexify();
            f.derived(Model::Tube, format!("n_u·({})", f.metadata), Arc::new(move |z| inner(&(*z - uc))))
        }
        GroupGenerator::LevL(op) => {
            let inv = op.inverse()?;
            let c = pi_levi(&op, m)?;
            f.derived(Model::Tube, format!("l·({})", f.metadata), Arc::new(move |z| Ok(inner(&inv.apply(z))? * c)))
        }
        GroupGenerator::Inversion => f.derived(
            Model::Tube,
            format!("j·({})", f.metadata),
            Arc::new(move |z| {
                let w = -jinv(z)?;
                Ok(pi_tube(z, m)? * inner(&w)?)
            }),
        ),
    })
}

/// `R_π(g)` on `L²_π(Ω)`. The inversion is an integral against the Bessel
/// kernel `u^m 𝒥(ux)` and is available at rank 1 only.
pub fn act_cone_l2(g: &GroupGenerator, f: &ModelFunction, cfg: &BesselSeriesConfig, profile: &GridProfile) -> Result<ModelFunction> {
    f.expect(Model::ConeL2)?;
    g.validate(f.algebra)?;
    let inner = f.evaluator.clone();
    let m = f.m();
    Ok(match *g {
        GroupGenerator::TranslationN(u) => f.derived(
            Model::ConeL2,
            format!("n_u·({})", f.metadata),
            Arc::new(move |x| Ok((-I * trace_form(x, &u)?).exp() * inner(x)?)),
        ),
        GroupGenerator::LevL(op) => {
            let adj = op.trace_adjoint();
            // π(g*)^{−1} = Δ(g*·e)^{m/2}.
            let c = 1.0 / pi_levi(&adj, m)?;
            f.derived(Model::ConeL2, format!("l·({})", f.metadata), Arc::new(move |x| Ok(inner(&adj.apply(x))? * c)))
        }
        GroupGenerator::Inversion => {
            if f.algebra.family() != AlgebraFamily::RankOneReal {
                return Err(ConeError::Unsupported("the inversion acts through the rank-1 Bessel kernel only".into()));
            }
            let cfg = *cfg;
            let profile = profile.clone();
            f.derived(
                Model::ConeL2,
                format!("j·({})", f.metadata),
                Arc::new(move |x| bessel_integral(&|u| inner(&JordanElement::scalar(u)), m, x.coord(0).re, &cfg, &profile)),
            )
        }
    })
}

/// Absolute accuracy floor for the Bessel integrals; the kernel oscillates and
/// the result can sit far below the size of the integrand.
pub const BESSEL_ABS_FLOOR: f64 = 1e-12;

/// `∫_0^∞ u^{m−1} 𝒥(ux) f(u) du`, the rank-1 inversion and `N̄` Whittaker integral.
pub(crate) fn bessel_integral(
    f: &dyn Fn(f64) -> Result<Complex64>,
    m: f64,
    x: f64,
    cfg: &BesselSeriesConfig,
    profile: &GridProfile,
) -> Result<Complex64> {
    let profile = GridProfile { abs_tol: profile.abs_tol.max(BESSEL_ABS_FLOOR), ..profile.clone() };
    let trap = Trap::new();
    let r = integrate_1d(
        |u: f64| {
            if !(u > 0.0) || !u.is_finite() {
                return Complex64::new(0.0, 0.0);
            }
            let fu = trap.guard(f(u));
            if fu == Complex64::new(0.0, 0.0) {
                return fu;
            }
            trap.guard(bessel_rank1_complex(m, u * x, cfg)) * fu * u.powf(m - 1.0)
        },
        Interval::From(0.0),
        &profile,
    );
    Ok(trap.finish(r)?.value)
}

/// `(2π)^{−n/2}`.
fn laplace_prefactor(alg: Algebra) -> f64 {
    (2.0 * PI).powf(-(alg.dim() as f64) / 2.0)
}

/// `𝓛_π f(z) = (2π)^{−n/2} ∫_Ω e^{i(z|u)} Δ(u)^{m−n/r} f(u) du`.
pub fn laplace_transform(f: &ModelFunction, z: &JordanElement, profile: &GridProfile) -> Result<IntegralResult<Complex64>> {
    f.expect(Model::ConeL2)?;
    if !tube_contains(z) {
        return Err(ConeError::domain("Laplace transform needs a tube point"));
    }
    let alg = f.algebra;
    let p = f.m() - alg.n_over_r();
    let trap = Trap::new();
    let r = integrate_omega(
        |u| {
            let fu = trap.guard(f.eval(u));
            let phase = trap.guard(trace_form(z, u));
            (I * phase).exp() * fu * u.det().powf(p)
        },
        alg,
        profile,
    );
    Ok(trap.finish(r)?.scaled(laplace_prefactor(alg)))
}

/// `𝓛_π f` as a tube-model function, each value by quadrature.
pub fn laplace_function(f: &ModelFunction, profile: &GridProfile) -> Result<ModelFunction> {
    f.expect(Model::ConeL2)?;
    let src = f.clone();
    let profile = profile.clone();
    Ok(f.derived(Model::Tube, format!("L({})", f.metadata), Arc::new(move |z| Ok(laplace_transform(&src, z, &profile)?.value))))
}

/// `𝓛_π^{−1}F(u) = (2π)^{−n/2} Δ(u)^{n/r} ∫_V e^{−i(x+iy|u)} π(u) F(x+iy) dx` at a
/// fixed `y ∈ Ω`. Rank 1 only; the `x` integral is oscillatory.
pub fn inverse_laplace(f: &ModelFunction, u: f64, y: f64, profile: &GridProfile) -> Result<IntegralResult<Complex64>> {
    f.expect(Model::Tube)?;
    if f.algebra.family() != AlgebraFamily::RankOneReal {
        return Err(ConeError::Unsupported("the inverse Laplace transform is implemented at rank 1".into()));
    }
    if !(u > 0.0) || !(y > 0.0) {
        return Err(ConeError::domain("inverse Laplace needs u > 0 and y > 0"));
    }
    let m = f.m();
    let trap = Trap::new();
    let r = integrate_oscillatory_line(
        |x: f64| {
            let z = JordanElement::scalar_c(Complex64::new(x, y));
            (-I * x * u).exp() * trap.guard(f.eval(&z))
        },
        PI / u,
        8.0 * (1.0 + y),
        40,
        profile,
    );
    let pre = laplace_prefactor(Algebra::RANK_ONE) * u.powf(1.0 - m) * (y * u).exp();
    Ok(trap.finish(r)?.scaled(pre))
}

/// `c_π = (2π)^{−n} Γ_Ω(m) / Γ̃_π`, the kernel constant that makes the
/// Laplace transform isometric; at rank 1 it is `2^{m−2}(m−1)/π`.
pub fn kernel_constant(alg: Algebra, m: f64) -> Result<f64> {
    let w = ExponentVector::uniform(alg, m);
    Ok((2.0 * PI).powf(-(alg.dim() as f64)) * gamma_cone(&w, alg)? / gamma_tilde_scalar(&w, alg)?)
}

/// `K(z, w) = c_π π(−i(z − w̄))`.
pub fn reproducing_kernel(z: &JordanElement, w: &JordanElement, m: f64) -> Result<Complex64> {
    if !tube_contains(z) || !tube_contains(w) {
        return Err(ConeError::domain("reproducing kernel needs tube points"));
    }
    let arg = (*z - w.conj()).scale_c(-I);
    Ok(pi_right(&arg, m)? * kernel_constant(z.algebra(), m)?)
}

/// Cayley transform `p(z) = (z − ie)(z + ie)^{−1}`.
pub fn cayley(z: &JordanElement) -> Result<JordanElement> {
    if !tube_contains(z) {
        return Err(ConeError::domain("Cayley transform needs a tube point"));
    }
    let ie = z.algebra().i_unit();
    jmul(&(*z - ie), &jinv(&(*z + ie))?)
}

/// Inverse Cayley transform `c(w) = i(e + w)(e − w)^{−1}`.
pub fn cayley_inv(w: &JordanElement) -> Result<JordanElement> {
    if !disk_contains(w) {
        return Err(ConeError::domain("inverse Cayley transform needs a point of D"));
    }
    let e = w.algebra().unit();
    Ok(jmul(&(e + *w), &jinv(&(e - *w))?)?.scale_c(I))
}

/// Bergman operator `B(z, w) = I − 2 z□w + P(z)P(w)`.
pub fn bergman(z: &JordanElement, w: &JordanElement) -> Result<LinOp> {
    let id = LinOp::identity(z.algebra());
    Ok(id - box_op(z, w)?.scale(Complex64::new(2.0, 0.0)) + quad_rep(z) * quad_rep(w))
}

/// `h(w)`, with `h(w)^{−2n/r} = det B(w, w̄)^{−1}`; `1 − |w|²` at rank 1.
pub fn h_factor(w: &JordanElement) -> Result<f64> {
    if !disk_contains(w) {
        return Err(ConeError::domain("h(w) needs a point of D"));
    }
    let alg = w.algebra();
    let det = bergman(w, &w.conj())?.det().re;
    Ok(det.powf(alg.rank() as f64 / (2.0 * alg.dim() as f64)))
}

/// `γ_π F(w) = π(e − w) F(c(w))`.
pub fn cayley_on_functions(f: &ModelFunction) -> Result<ModelFunction> {
    f.expect(Model::Tube)?;
    let inner = f.evaluator.clone();
    let m = f.m();
    Ok(f.derived(
        Model::Disk,
        format!("γ({})", f.metadata),
        Arc::new(move |w| {
            let e = w.algebra().unit();
            Ok(pi_right(&(e - *w), m)? * inner(&cayley_inv(w)?)?)
        }),
    ))
}

/// `γ_π^{−1} f(z) = π((z + ie)/2i) f(p(z))`.
pub fn cayley_inverse_on_functions(f: &ModelFunction) -> Result<ModelFunction> {
    f.expect(Model::Disk)?;
    let inner = f.evaluator.clone();
    let m = f.m();
    Ok(f.derived(
        Model::Tube,
        format!("γ⁻¹({})", f.metadata),
        Arc::new(move |z| {
            let arg = (*z + z.algebra().i_unit()).scale_c(Complex64::new(0.0, -0.5));
            Ok(pi_right(&arg, m)? * inner(&cayley(z)?)?)
        }),
    ))
}

/// `D_π(j) f(w) = π(−I) f(−w)`.
pub fn act_disk_inversion(f: &ModelFunction) -> Result<ModelFunction> {
    f.expect(Model::Disk)?;
    let inner = f.evaluator.clone();
    let c = pi_minus_identity(f.algebra, f.m());
    Ok(f.derived(Model::Disk, format!("j·({})", f.metadata), Arc::new(move |w| Ok(c * inner(&(-*w))?))))
}

/// `f_ξ(x) = e^{−tr x}`.
pub fn lowest_ktype_cone(alg: Algebra, m: f64) -> Result<ModelFunction> {
    ModelFunction::new(Model::ConeL2, alg, m, "f_ξ", |x| Ok(Complex64::new((-x.tr()).exp(), 0.0)))
}

/// `z ↦ π((z + ie)/2i)`.
pub fn lowest_ktype_tube(alg: Algebra, m: f64) -> Result<ModelFunction> {
    ModelFunction::new(Model::Tube, alg, m, "π((z+ie)/2i)", move |z| {
        pi_right(&(*z + z.algebra().i_unit()).scale_c(Complex64::new(0.0, -0.5)), m)
    })
}

/// The constant function `1` on `D`.
pub fn lowest_ktype_disk(alg: Algebra, m: f64) -> Result<ModelFunction> {
    ModelFunction::new(Model::Disk, alg, m, "1", |_| Ok(Complex64::new(1.0, 0.0)))
}

/// Rank-1 test vectors `f(u) = u^k e^{−au}` with the closed-form Laplace
/// image `(2π)^{−1/2} Γ(m+k) (−i(z + ia))^{−(m+k)}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpPoly {
    pub k: u32,
    pub a: f64,
}

impl ExpPoly {
    pub fn cone(&self, m: f64) -> Result<ModelFunction> {
        let (k, a) = (self.k, self.a);
        ModelFunction::new(Model::ConeL2, Algebra::RANK_ONE, m, format!("u^{k}e^(-{a}u)"), move |x| {
            let u = x.coord(0).re;
            Ok(Complex64::new(u.powi(k as i32) * (-a * u).exp(), 0.0))
        })
    }

    pub fn tube_image(&self, m: f64) -> Result<ModelFunction> {
        let (k, a) = (self.k, self.a);
        let s = m + k as f64;
        let c = laplace_prefactor(Algebra::RANK_ONE) * libm::tgamma(s);
        ModelFunction::new(Model::Tube, Algebra::RANK_ONE, m, format!("L(u^{k}e^(-{a}u))"), move |z| {
            let arg = (*z + JordanElement::scalar_c(Complex64::new(0.0, a))).scale_c(-I);
            Ok(pi_right(&arg, s)? * c)
        })
    }
}

fn rank_one_only(alg: Algebra, what: &str) -> Result<()> {
    if alg.family() == AlgebraFamily::RankOneReal {
        Ok(())
    } else {
        Err(ConeError::Unsupported(format!("{what} is evaluated at rank 1 only")))
    }
}

/// `∫_{T_Ω} Π(z) F(z) Δ(y)^{m − 2n/r} dz` at rank 1; `Π` is the antiholomorphic
/// distribution kernel and `F` a tube function.
pub fn tube_pairing(
    kernel: &dyn Fn(&JordanElement) -> Result<Complex64>,
    f: &ModelFunction,
    profile: &GridProfile,
) -> Result<IntegralResult<Complex64>> {
    f.expect(Model::Tube)?;
    rank_one_only(f.algebra, "the tube integral")?;
    let p = f.m() - 2.0;
    let trap = Trap::new();
    let r = integrate_2d(
        |y: f64, x: f64| {
            if !(y > 0.0) {
                return Complex64::new(0.0, 0.0);
            }
            let z = JordanElement::scalar_c(Complex64::new(x, y));
            trap.guard(kernel(&z)) * trap.guard(f.eval(&z)) * y.powf(p)
        },
        Interval::From(0.0),
        Interval::Whole,
        profile,
    );
    trap.finish(r)
}

/// `⟨F, G⟩` on `H²_π(T_Ω)` (rank 1).
pub fn tube_inner(f: &ModelFunction, g: &ModelFunction, profile: &GridProfile) -> Result<IntegralResult<Complex64>> {
    g.expect(Model::Tube)?;
    tube_pairing(&|z| Ok(g.eval(z)?.conj()), f, profile)
}

/// `∫_D Π(w) f(w) π(B(w, w̄))^{−1} h(w)^{−2n/r} dw` at rank 1, in polar coordinates.
pub fn disk_pairing(
    kernel: &dyn Fn(&JordanElement) -> Result<Complex64>,
    f: &ModelFunction,
    profile: &GridProfile,
) -> Result<IntegralResult<Complex64>> {
    f.expect(Model::Disk)?;
    rank_one_only(f.algebra, "the disk integral")?;
    let p = f.m() - 2.0;
    let trap = Trap::new();
    let r = integrate_2d(
        |rho: f64, theta: f64| {
            if !(rho < 1.0) {
                return Complex64::new(0.0, 0.0);
            }
            let w = JordanElement::scalar_c(Complex64::from_polar(rho, theta));
            trap.guard(kernel(&w)) * trap.guard(f.eval(&w)) * ((1.0 - rho * rho).powf(p) * rho)
        },
        Interval::Finite(0.0, 1.0),
        Interval::Finite(0.0, 2.0 * PI),
        profile,
    );
    trap.finish(r)
}

/// `⟨f, g⟩` on `H²_π(D)` (rank 1).
pub fn disk_inner(f: &ModelFunction, g: &ModelFunction, profile: &GridProfile) -> Result<IntegralResult<Complex64>> {
    g.expect(Model::Disk)?;
    disk_pairing(&|w| Ok(g.eval(w)?.conj()), f, profile)
}

/// `⟨f, g⟩ = Γ̃_π ∫_Ω f(u) conj(g(u)) Δ(u)^{m − n/r} du` on `L²_π(Ω)`.
pub fn cone_l2_inner(f: &ModelFunction, g: &ModelFunction, profile: &GridProfile) -> Result<IntegralResult<Complex64>> {
    f.expect(Model::ConeL2)?;
    g.expect(Model::ConeL2)?;
    f.algebra.check_same(&g.algebra)?;
    if f.m() != g.m() {
        return Err(ConeError::invalid("inner product of functions with different weights"));
    }
    let alg = f.algebra;
    let gt = gamma_tilde_scalar(f.weight(), alg)?;
    let p = f.m() - alg.n_over_r();
    let trap = Trap::new();
    let r = integrate_omega(|u| trap.guard(f.eval(u)) * trap.guard(g.eval(u)).conj() * u.det().powf(p), alg, profile);
    Ok(trap.finish(r)?.scaled(gt))
}
