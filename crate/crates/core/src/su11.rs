//! `SU(1,1) ⊂ SL(2, ℂ)`: the `P⁺K_ℂN_ℂ` factorization, the contraction
//! semigroup, the lowest-`K`-type functions `F_n` on `G/N` and the
//! kernel `Ψ` of the adjoint intertwiner.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Mul;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{ConeError, Result};
use crate::quadrature::{integrate_1d, integrate_2d, monitor_shells, GridProfile, IntegralResult, Interval, QuadValue, TailVerdict};
use crate::report::{Metric, VerificationReport};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Tolerance on `ad − bc = 1`.
const DET_TOLERANCE: f64 = 1e-12;

/// `c + d` below this modulus is treated as outside the dense cell.
const CELL_TOLERANCE: f64 = 1e-12;

/// Element `[[a, b], [c, d]]` of `SL(2, ℂ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SL2Element {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl SL2Element {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm()).max(1.0);
        if (det - ONE).norm() > DET_TOLERANCE * scale * scale {
            return Err(ConeError::InvalidArgument(alloc::format!("determinant {det} is not 1")));
        }
        Ok(Self { a, b, c, d })
    }

    const fn raw(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::raw(ONE, ZERO, ZERO, ONE)
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn d(&self) -> Complex64 {
        self.d
    }

    /// `a_t = exp t[[0,1],[1,0]]`.
    pub fn a_t(t: f64) -> Self {
        let (ch, sh) = (Complex64::new(t.cosh(), 0.0), Complex64::new(t.sinh(), 0.0));
        Self::raw(ch, sh, sh, ch)
    }

    /// `n_z = [[1+iz, −iz], [iz, 1−iz]]`, real `z` giving `N`.
    pub fn n_z(z: Complex64) -> Self {
        Self::raw(ONE + I * z, -I * z, I * z, ONE - I * z)
    }

    /// `k_θ = diag(e^{iθ/2}, e^{−iθ/2})`.
    pub fn k_theta(theta: Complex64) -> Self {
        Self::k_gamma((I * theta * 0.5).exp())
    }

    /// `diag(γ, 1/γ)`.
    pub fn k_gamma(gamma: Complex64) -> Self {
        Self::raw(gamma, ZERO, ZERO, gamma.inv())
    }

    pub fn p_plus(z: Complex64) -> Self {
        Self::raw(ONE, z, ZERO, ONE)
    }

    pub fn p_minus(w: Complex64) -> Self {
        Self::raw(ONE, ZERO, w, ONE)
    }

    /// `diag(ρ, 1/ρ)`.
    pub fn diag(rho: f64) -> Self {
        Self::k_gamma(Complex64::new(rho, 0.0))
    }

    pub fn inverse(&self) -> Self {
        Self::raw(self.d, -self.b, -self.c, self.a)
    }

    /// `σ(g) = J (g*)^{−1} J` with `J = diag(1, −1)`; fixes `SU(1,1)` pointwise.
    pub fn sigma(&self) -> Self {
        // (g*)^{-1} = [[d̄, −c̄], [−b̄, ā]]; conjugation by J flips the off-diagonal signs.
        Self::raw(self.d.conj(), self.c.conj(), self.b.conj(), self.a.conj())
    }

    /// Möbius action `z ↦ (az + b)/(cz + d)`.
    pub fn act(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn distance(&self, other: &SL2Element) -> f64 {
        let x = self.entries();
        let y = other.entries();
        (0..4).map(|k| (x[k] - y[k]).norm()).fold(0.0, f64::max)
    }

    /// Membership in `SU(1,1)`: `g* J g = J`.
    pub fn is_su11(&self, tol: f64) -> bool {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let e11 = a.norm_sqr() - c.norm_sqr() - 1.0;
        let e22 = b.norm_sqr() - d.norm_sqr() + 1.0;
        let e12 = a.conj() * b - c.conj() * d;
        e11.abs() <= tol && e22.abs() <= tol && e12.norm() <= tol
    }
}

impl Mul for SL2Element {
    type Output = SL2Element;

    fn mul(self, r: SL2Element) -> SL2Element {
        SL2Element::raw(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

/// `g = p⁺_z · k_θ · n_s` with `γ = e^{iθ/2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PKNFactorization {
    pub p_plus: Complex64,
    pub k: Complex64,
    pub n: Complex64,
}

impl PKNFactorization {
    pub fn reassemble(&self) -> SL2Element {
        SL2Element::p_plus(self.p_plus) * SL2Element::k_gamma(self.k) * SL2Element::n_z(self.n)
    }
}

/// `γ = 1/(c+d)`, `s = −ic/(c+d)`; `z` from the first row.
pub fn pkn_decompose(g: &SL2Element) -> Result<PKNFactorization> {
    let cd = g.c + g.d;
    if cd.norm() <= CELL_TOLERANCE {
        return Err(ConeError::NotInDenseCell { abs: cd.norm() });
    }
    let gamma = cd.inv();
    let s = -I * g.c * gamma;
    // p⁺_z k n = [[γ(1+is) + zc, −iγs + zd], [c, d]].
    let z = if g.d.norm() >= g.c.norm() {
        (g.b + I * gamma * s) / g.d
    } else {
        (g.a - gamma * (ONE + I * s)) / g.c
    };
    Ok(PKNFactorization { p_plus: z, k: gamma, n: s })
}

/// `s = p⁻_w · k̃ · ñ`, obtained from the `P⁺K_ℂN_ℂ` factorization of `σ(s)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistedFactorization {
    pub p_minus: Complex64,
    pub k: Complex64,
    pub n: Complex64,
}

impl TwistedFactorization {
    pub fn reassemble(&self) -> SL2Element {
        SL2Element::p_minus(self.p_minus) * SL2Element::k_gamma(self.k) * SL2Element::n_z(self.n)
    }
}

/// `σ(p⁺_z) = p⁻_{z̄}`, `σ(k_γ) = k_{1/γ̄}`, `σ(n_s) = n_{s̄}`.
pub fn twisted_decompose(g: &SL2Element) -> Result<TwistedFactorization> {
    let f = pkn_decompose(&g.sigma())?;
    Ok(TwistedFactorization { p_minus: f.p_plus.conj(), k: f.k.conj().inv(), n: f.n.conj() })
}

/// Result of the sampled semigroup test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SemigroupMembership {
    pub member: bool,
    /// `1 − max_φ |g·e^{iφ}|`.
    pub margin: f64,
}

/// `g ∈ Ξ = {s : s·D ⊆ D}` by sampling the boundary circle. The pole
/// `−d/c` must lie outside `D̄` so the image of `D` is the bounded disc.
pub fn in_contraction_semigroup(g: &SL2Element, boundary_samples: usize) -> SemigroupMembership {
    let samples = boundary_samples.max(8);
    let mut worst = 0.0f64;
    for k in 0..samples {
        let phi = 2.0 * PI * k as f64 / samples as f64;
        let w = g.act(Complex64::from_polar(1.0, phi)).norm();
        worst = if w.is_finite() { worst.max(w) } else { f64::INFINITY };
    }
    let margin = 1.0 - worst;
    let pole_outside = g.c.norm() < g.d.norm();
    let centre_inside = g.act(ZERO).norm() < 1.0;
    SemigroupMembership { member: pole_outside && centre_inside && worst <= 1.0 + 1e-12, margin }
}

/// `ψ_v(n_s) = e^{−ivs}`.
pub fn psi_v(v: f64, s: Complex64) -> Complex64 {
    (-I * v * s).exp()
}

/// `χ_n(k_γ) = γ^{−n}`.
pub fn chi_n(n: i32, gamma: Complex64) -> Complex64 {
    gamma.powi(-n)
}

/// `F_n(g) = ψ_v(n_ℂ(g)^{−1}) χ_n(k_ℂ(g)^{−1}) = e^{ivs} γ^n`.
pub fn f_n(g: &SL2Element, n: i32, v: f64) -> Result<Complex64> {
    let f = pkn_decompose(g)?;
    Ok((I * v * f.n).exp() * f.k.powi(n))
}

/// Lowest-`K`-type function `T_{π,η}ξ(g)` with `η(ξ) = 1`, assembled from
/// the inverted factor matrices.
pub fn lkt_t(g: &SL2Element, n: i32, v: f64) -> Result<Complex64> {
    let f = pkn_decompose(g)?;
    let n_inv = SL2Element::n_z(f.n).inverse();
    let k_inv = SL2Element::k_gamma(f.k).inverse();
    // n_s has (2,1) entry is; k_γ has (1,1) entry γ.
    let s_inv = n_inv.c / I;
    let gamma_inv = k_inv.a;
    Ok(psi_v(v, s_inv) * gamma_inv.powi(-n))
}

/// `‖F_n‖² = (e^v/2) Γ(n−1) v^{1−n}` for `n > 1`, `v > 0`.
pub fn gn_norm_closed(n: f64, v: f64) -> Result<f64> {
    if !(n > 1.0 && v > 0.0) {
        return Err(ConeError::Divergence(alloc::format!("‖F_n‖ is infinite for n = {n}, v = {v}")));
    }
    Ok(v.exp() / 2.0 * libm::tgamma(n - 1.0) * v.powf(1.0 - n))
}

/// `|F_n(k_θ a_t)|² e^{2t}`, the reduced `G/N` density.
fn gn_density(n: f64, v: f64, t: f64) -> f64 {
    (-2.0 * n * t + v * (1.0 - (-2.0 * t).exp()) + 2.0 * t).exp()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GnNorm {
    Finite(IntegralResult<f64>),
    Divergent { ratio: f64 },
}

impl GnNorm {
    pub fn is_divergent(&self) -> bool {
        matches!(self, GnNorm::Divergent { .. })
    }
}

/// Shells `[2^k − 1, 2^{k+1} − 1]` (mirrored for `sign < 0`) of a density on the line.
fn line_shells(density: impl Fn(f64) -> f64, sign: f64, profile: &GridProfile) -> Result<TailVerdict> {
    let coarse = profile.with_rel_tol(profile.rel_tol.max(1e-8));
    monitor_shells(
        |k| {
            let lo = (2f64.powi(k as i32) - 1.0) * sign;
            let hi = (2f64.powi(k as i32 + 1) - 1.0) * sign;
            let (a, b) = if sign > 0.0 { (lo, hi) } else { (hi, lo) };
            match integrate_1d(&density, Interval::Finite(a, b), &coarse) {
                Ok(r) => Ok(r.value),
                Err(ConeError::Divergence(_)) => Ok(f64::INFINITY),
                Err(ConeError::Precision { .. }) => Ok(f64::INFINITY),
                Err(e) => Err(e),
            }
        },
        10,
    )
}

/// `(1/4π)∫_0^{4π}∫_ℝ |F_n(k_θ a_t)|² e^{2t} dt dθ`; the `θ` average is trivial
/// because `|F_n|` is left-`K`-invariant. Divergence is detected from the
/// shell contributions in both directions.
pub fn gn_norm_fn(n: i32, v: f64, profile: &GridProfile) -> Result<GnNorm> {
    let nf = n as f64;
    let density = |t: f64| gn_density(nf, v, t);
    for sign in [1.0, -1.0] {
        let verdict = line_shells(density, sign, profile)?;
        if verdict.is_divergent() {
            return Ok(GnNorm::Divergent { ratio: verdict.ratio() });
        }
    }
    Ok(GnNorm::Finite(integrate_1d(density, Interval::Whole, profile)?))
}

/// Half-width of the `t` window used by [`integrate_gn_su11`]. Beyond it
/// `c + d = e^t` of `a_t` is lost to cancellation, while `|F_n|² e^{2t}` with
/// `n ≥ 2` has dropped below `e^{−36}`.
pub const GN_T_WINDOW: f64 = 18.0;

/// `(1/4π)∫_0^{4π}∫ f(k_θ a_t) e^{2t} dt dθ` over `|t| ≤ GN_T_WINDOW`.
pub fn integrate_gn_su11<T: QuadValue>(f: impl Fn(&SL2Element) -> T, profile: &GridProfile) -> Result<IntegralResult<T>> {
    let r = integrate_2d(
        |theta: f64, t: f64| {
            let g = SL2Element::k_theta(Complex64::new(theta, 0.0)) * SL2Element::a_t(t);
            f(&g) * (2.0 * t).exp()
        },
        Interval::Finite(0.0, 4.0 * PI),
        Interval::Finite(-GN_T_WINDOW, GN_T_WINDOW),
        profile,
    )?;
    Ok(r.scaled(1.0 / (4.0 * PI)))
}

/// Cocycle `j(h, z) = (c_h z + d_h)^{−n}` of `D_n`.
pub fn j_cocycle(h: &SL2Element, z: Complex64, n: i32) -> Complex64 {
    (h.c * z + h.d).powi(-n)
}

/// Coset representative of `w ∈ D` in `SU(1,1)`: `b·0 = w`.
pub fn coset_representative(w: Complex64) -> Result<SL2Element> {
    let q = 1.0 - w.norm_sqr();
    if !(q > 0.0) {
        return Err(ConeError::domain("point is not in the unit disc"));
    }
    let s = 1.0 / q.sqrt();
    Ok(SL2Element::raw(Complex64::new(s, 0.0), w * s, w.conj() * s, Complex64::new(s, 0.0)))
}

/// `Ψ(a, bK) = ψ(ñ(b^{−1}a)) j(b, eK)^{−1} π_c(k̃(b^{−1}a))` with `π_c(k_γ) = γ^{−n}`.
pub fn psi_kernel(a: &SL2Element, b: &SL2Element, n: i32, v: f64) -> Result<Complex64> {
    let t = twisted_decompose(&(b.inverse() * *a))?;
    Ok(psi_v(v, t.n) * j_cocycle(b, ZERO, n).inv() * t.k.powi(-n))
}

/// `Ψ(a, w)` for a disc point `w`.
pub fn psi_kernel_at(a: &SL2Element, w: Complex64, n: i32, v: f64) -> Result<Complex64> {
    psi_kernel(a, &coset_representative(w)?, n, v)
}

/// Random element `k_θ a_t k_φ` of `SU(1,1)`.
pub fn random_su11<R: Rng>(rng: &mut R, t_max: f64) -> SL2Element {
    let th = rng.random_range(0.0..4.0 * PI);
    let ph = rng.random_range(0.0..4.0 * PI);
    let t = rng.random_range(-t_max..t_max);
    SL2Element::k_theta(Complex64::new(th, 0.0)) * SL2Element::a_t(t) * SL2Element::k_theta(Complex64::new(ph, 0.0))
}

fn random_disc<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.random_range(0.0f64..1.0).sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..2.0 * PI))
}

fn rel_dev(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE)
}

/// Both covariance laws of `Ψ` and the reduction `Ψ(a, eK) = ψ(ñ(a)) π_c(k̃(a))`.
pub fn psi_kernel_covariance_check(n: i32, v: f64, samples: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    if !(n > 1 && v > 0.0) {
        return Err(ConeError::invalid("the kernel check needs n > 1 and v > 0"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut right_n, mut cocycle, mut reduction) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        let a = random_su11(&mut rng, 1.2);
        let g = random_su11(&mut rng, 1.2);
        let w = random_disc(&mut rng, 0.8);
        let x: f64 = rng.random_range(-2.0..2.0);
        let nx = SL2Element::n_z(Complex64::new(x, 0.0));
        let base = psi_kernel_at(&a, w, n, v)?;
        right_n = right_n.max(rel_dev(psi_kernel_at(&(a * nx), w, n, v)?, psi_v(v, Complex64::new(x, 0.0)) * base));
        let lhs = psi_kernel_at(&(g * a), w, n, v)?;
        let ginv = g.inverse();
        let rhs = j_cocycle(&ginv, w, n) * psi_kernel_at(&a, ginv.act(w), n, v)?;
        cocycle = cocycle.max(rel_dev(lhs, rhs));
        let t = twisted_decompose(&a)?;
        let phi = psi_v(v, t.n) * t.k.powi(-n);
        reduction = reduction.max(rel_dev(psi_kernel(&a, &SL2Element::identity(), n, v)?, phi));
    }
    let tag = |r: VerificationReport| r.with_param("n", n as f64).with_param("v", v).with_param("samples", samples as f64);
    Ok(alloc::vec![
        tag(VerificationReport::max_deviation("psi_right_n_law", Metric::Relative, right_n, 1e-10)),
        tag(VerificationReport::max_deviation("psi_cocycle_law", Metric::Relative, cocycle, 1e-8)),
        tag(VerificationReport::max_deviation("psi_identity_reduction", Metric::Relative, reduction, 1e-12)),
    ])
}

/// Discrepancies `‖(F_n)_{s_ρ} − F_n‖² / ‖F_n‖²` along `s_ρ = diag(ρ, 1/ρ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HardyCheck {
    pub rhos: Vec<f64>,
    pub discrepancies: Vec<f64>,
    /// `‖(F_n)_{s_ρ}‖² / ‖F_n‖²`.
    pub norm_ratios: Vec<f64>,
    pub reports: Vec<VerificationReport>,
}

/// `(F_n)_s(g) = F_n(s^{−1}g)` along the contraction ray, integrated over `G/N`.
pub fn hardy_boundary_check(n: i32, v: f64, rhos: &[f64], profile: &GridProfile) -> Result<HardyCheck> {
    if !(n > 1 && v > 0.0) {
        return Err(ConeError::invalid("the Hardy check needs n > 1 and v > 0"));
    }
    let trap = crate::quadrature::Trap::new();
    let base = integrate_gn_su11(|g| trap.guard(f_n(g, n, v)).norm_sqr(), profile);
    let base = trap.finish(base)?;
    let mut discrepancies = Vec::with_capacity(rhos.len());
    let mut norm_ratios = Vec::with_capacity(rhos.len());
    for &rho in rhos {
        if !(rho >= 1.0) {
            return Err(ConeError::invalid("ray parameters must satisfy ρ ≥ 1"));
        }
        let s_inv = SL2Element::diag(rho).inverse();
        let trap = crate::quadrature::Trap::new();
        let diff = integrate_gn_su11(
            |g| {
                let moved = trap.guard(f_n(&(s_inv * *g), n, v));
                (moved - trap.guard(f_n(g, n, v))).norm_sqr()
            },
            profile,
        );
        let diff = trap.finish(diff)?;
        let trap = crate::quadrature::Trap::new();
        let norm = integrate_gn_su11(|g| trap.guard(f_n(&(s_inv * *g), n, v)).norm_sqr(), profile);
        let norm = trap.finish(norm)?;
        discrepancies.push(diff.value / base.value);
        norm_ratios.push(norm.value / base.value);
    }
    let mut reports = Vec::new();
    let closed = gn_norm_closed(n as f64, v)?;
    reports.push(VerificationReport::relative("hardy_base_norm", base.value, closed, 1e-6).with_grid(profile, &base));
    let worst_ratio = discrepancies.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    if discrepancies.len() >= 2 {
        reports.push(
            VerificationReport::from_deviation("hardy_discrepancy_decreasing", Metric::Monotonicity, worst_ratio, 1.0, worst_ratio, 1.0 - 1e-12)
                .with_note("deviation is the largest ratio of consecutive discrepancies"),
        );
    }
    if let Some(&last) = discrepancies.last() {
        reports.push(VerificationReport::absolute("hardy_final_discrepancy", last, 0.0, 1e-3));
    }
    let max_ratio = norm_ratios.iter().cloned().fold(0.0, f64::max);
    reports.push(VerificationReport::from_deviation(
        "hardy_norm_bounded_by_boundary_value",
        Metric::Absolute,
        max_ratio,
        1.0,
        (max_ratio - 1.0).max(0.0),
        1e-6,
    ));
    let reports = reports.into_iter().map(|r| r.with_param("n", n as f64).with_param("v", v).with_profile(profile)).collect();
    Ok(HardyCheck { rhos: rhos.to_vec(), discrepancies, norm_ratios, reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn generators_have_unit_determinant() {
        for g in [
            SL2Element::a_t(0.7),
            SL2Element::n_z(c(0.3, -1.1)),
            SL2Element::k_theta(c(1.2, 0.4)),
            SL2Element::p_plus(c(2.0, 1.0)),
            SL2Element::p_minus(c(-1.0, 0.5)),
        ] {
            assert!(SL2Element::new(g.a, g.b, g.c, g.d).is_ok());
        }
        assert!(SL2Element::new(ONE, ONE, ONE, ONE).is_err());
        assert!(SL2Element::a_t(0.4).is_su11(1e-14) && SL2Element::n_z(c(0.9, 0.0)).is_su11(1e-14));
    }

    #[test]
    fn identity_factorization() {
        let f = pkn_decompose(&SL2Element::identity()).unwrap();
        assert_eq!((f.p_plus, f.k, f.n), (ZERO, ONE, ZERO));
        assert_eq!(f_n(&SL2Element::identity(), 3, 1.5).unwrap(), ONE);
        assert_eq!(lkt_t(&SL2Element::identity(), 3, 1.5).unwrap(), ONE);
    }

    #[test]
    fn a_t_factorization_is_explicit() {
        for t in [-1.3, -0.2, 0.0, 0.5, 2.0] {
            let f = pkn_decompose(&SL2Element::a_t(t)).unwrap();
            assert!((f.k - c((-t).exp(), 0.0)).norm() < 1e-15);
            assert!((f.n - c(0.0, ((-2.0 * t).exp() - 1.0) / 2.0)).norm() < 1e-15);
            assert!(f.reassemble().distance(&SL2Element::a_t(t)) < 1e-13);
        }
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let g = random_su11(&mut rng, 2.0);
            worst = worst.max(pkn_decompose(&g).unwrap().reassemble().distance(&g));
        }
        assert!(worst < 1e-12, "{worst}");
    }

    #[test]
    fn outside_dense_cell() {
        // c + d = 0.
        let g = SL2Element::new(c(1.0, 0.0), ZERO, c(-1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(matches!(pkn_decompose(&g), Err(ConeError::NotInDenseCell { .. })));
    }

    #[test]
    fn semigroup_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let m = in_contraction_semigroup(&random_su11(&mut rng, 1.5), 720);
            assert!(m.member && m.margin.abs() < 1e-10);
        }
        let m = in_contraction_semigroup(&SL2Element::diag(0.8), 720);
        assert!(m.member && (m.margin - (1.0 - 0.64)).abs() < 1e-12);
        assert!(!in_contraction_semigroup(&SL2Element::p_plus(c(2.0, 0.0)), 720).member);
        // z ↦ 1/z maps the circle to itself but D to its exterior.
        let flip = SL2Element::new(ZERO, I, I, ZERO).unwrap();
        assert!(!in_contraction_semigroup(&flip, 720).member);
        let g = SL2Element::diag(0.9) * SL2Element::p_plus(c(0.05, 0.0));
        let h = SL2Element::diag(0.7);
        let (mg, mh) = (in_contraction_semigroup(&g, 720), in_contraction_semigroup(&h, 720));
        assert!(mg.member && mg.margin > 0.0 && mh.margin > 0.0);
        let gh = in_contraction_semigroup(&(g * h), 720);
        assert!(gh.member && gh.margin > 0.0);
        assert!(pkn_decompose(&(g * h)).is_ok());
    }

    #[test]
    fn f_n_modulus_on_a_t() {
        let (n, v) = (3, 1.7);
        for t in [-0.8, 0.0, 0.6, 1.9] {
            for th in [0.0, 1.0, 5.0] {
                let g = SL2Element::k_theta(c(th, 0.0)) * SL2Element::a_t(t) * SL2Element::n_z(c(0.37, 0.0));
                let lhs = f_n(&g, n, v).unwrap().norm_sqr();
                let rhs = (-2.0 * n as f64 * t).exp() * (v * (1.0 - (-2.0 * t).exp())).exp();
                assert!((lhs - rhs).abs() < 1e-12 * rhs);
            }
        }
    }

    #[test]
    fn f_n_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let (n, v) = (4, 0.8);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let gamma = SL2Element::p_plus(c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                * SL2Element::k_gamma(Complex64::from_polar(rng.random_range(0.5..1.5), rng.random_range(0.0..6.0)))
                * SL2Element::n_z(c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let theta = rng.random_range(0.0..4.0 * PI);
            let x = rng.random_range(-2.0..2.0);
            let k = SL2Element::k_theta(c(theta, 0.0));
            let nx = SL2Element::n_z(c(x, 0.0));
            let lhs = f_n(&(k.inverse() * gamma * nx), n, v).unwrap();
            let rhs = psi_v(v, c(x, 0.0)).inv() * chi_n(n, (I * theta * 0.5).exp()) * f_n(&gamma, n, v).unwrap();
            worst = worst.max(rel_dev(lhs, rhs));
        }
        assert!(worst < 1e-12, "{worst}");
    }

    #[test]
    fn lkt_matches_f_n_and_is_right_n_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let (n, v) = (3, 2.0);
        let (mut same, mut equiv) = (0.0f64, 0.0f64);
        for _ in 0..500 {
            let g = random_su11(&mut rng, 1.5);
            same = same.max((lkt_t(&g, n, v).unwrap() - f_n(&g, n, v).unwrap()).norm());
            let x = rng.random_range(-3.0..3.0);
            let lhs = lkt_t(&(g * SL2Element::n_z(c(x, 0.0))), n, v).unwrap();
            equiv = equiv.max(rel_dev(lhs, (I * v * x).exp() * lkt_t(&g, n, v).unwrap()));
        }
        assert!(same < 1e-12 && equiv < 1e-12, "{same} {equiv}");
    }

    #[test]
    fn left_k_eigenfunction() {
        let g = random_su11(&mut ChaCha8Rng::seed_from_u64(2), 1.0);
        let theta = 0.9;
        let k = SL2Element::k_theta(c(theta, 0.0));
        let lhs = f_n(&(k.inverse() * g), 5, 1.0).unwrap();
        let rhs = chi_n(5, (I * theta * 0.5).exp()) * f_n(&g, 5, 1.0).unwrap();
        assert!(rel_dev(lhs, rhs) < 1e-13);
    }

    #[test]
    fn gn_norms() {
        let p = GridProfile::strict();
        for (n, v) in [(2, 1.0), (2, 2.0), (3, 1.0), (4, 0.5)] {
            match gn_norm_fn(n, v, &p).unwrap() {
                GnNorm::Finite(r) => {
                    let want = gn_norm_closed(n as f64, v).unwrap();
                    assert!((r.value - want).abs() < 1e-8 * want, "n={n} v={v}");
                }
                other => panic!("{other:?}"),
            }
        }
        assert!((gn_norm_closed(2.0, 2.0).unwrap() - 2f64.exp() / 4.0).abs() < 1e-13);
        assert!(gn_norm_fn(1, 1.0, &p).unwrap().is_divergent());
        assert!(gn_norm_fn(2, -1.0, &p).unwrap().is_divergent());
        assert!(gn_norm_fn(0, 1.0, &p).unwrap().is_divergent());
    }

    #[test]
    fn two_dimensional_gn_integral_matches_closed_form() {
        let r = integrate_gn_su11(|g| f_n(g, 2, 2.0).unwrap().norm_sqr(), &GridProfile::default()).unwrap();
        let want = gn_norm_closed(2.0, 2.0).unwrap();
        assert!((r.value - want).abs() < 1e-8 * want);
    }

    #[test]
    fn twisted_factorization() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let g = random_su11(&mut rng, 1.5);
            let t = twisted_decompose(&g).unwrap();
            assert!(t.reassemble().distance(&g) < 1e-12);
            // Direct formula: γ̃ = a + b, s̃ = ib/(a+b), w = (c + d − 1/γ̃)/γ̃.
            let gt = g.a + g.b;
            assert!((t.k - gt).norm() < 1e-12);
            assert!((t.n - I * g.b / gt).norm() < 1e-12);
            assert!((t.p_minus - (g.c + g.d - gt.inv()) / gt).norm() < 1e-12);
        }
    }

    #[test]
    fn psi_kernel_laws() {
        let reports = psi_kernel_covariance_check(3, 1.5, 100, 7).unwrap();
        for r in &reports {
            assert!(r.passed, "{r:?}");
        }
        // Ψ does not depend on the coset representative.
        let a = random_su11(&mut ChaCha8Rng::seed_from_u64(8), 1.0);
        let b = coset_representative(c(0.3, -0.4)).unwrap();
        let k = SL2Element::k_theta(c(2.1, 0.0));
        let lhs = psi_kernel(&a, &(b * k), 3, 1.5).unwrap();
        assert!(rel_dev(lhs, psi_kernel(&a, &b, 3, 1.5).unwrap()) < 1e-12);
    }

    #[test]
    fn hardy_ray() {
        let h = hardy_boundary_check(2, 2.0, &[1.5, 1.2, 1.05, 1.01, 1.0], &GridProfile::default()).unwrap();
        for (rho, d) in h.rhos.iter().zip(&h.discrepancies) {
            let want = (rho.powi(-2) - 1.0).powi(2);
            assert!((d - want).abs() < 1e-7 * want.max(1e-3), "rho={rho}");
        }
        assert_eq!(*h.discrepancies.last().unwrap(), 0.0);
        for r in &h.reports {
            assert!(r.passed, "{r:?}");
        }
    }
}
