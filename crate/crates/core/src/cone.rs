//! Closed-form special functions of the symmetric cone.

use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{ConeError, Result};
use crate::jordan::{jinv, power_function, Algebra, ExponentVector, JordanElement};
use crate::quadrature::{integrate_1d, GridProfile, Interval};

/// `Γ_Ω(s) = (2π)^{(n−r)/2} Π_j Γ(s_j − (j−1)d/2)`.
pub fn gamma_cone(s: &ExponentVector, alg: Algebra) -> Result<f64> {
    s.check_rank(alg)?;
    let half_d = alg.root_multiplicity() as f64 / 2.0;
    let mut acc = (2.0 * PI).powf((alg.dim() - alg.rank()) as f64 / 2.0);
    for (j, sj) in s.entries().iter().enumerate() {
        let arg = sj - j as f64 * half_d;
        if arg <= 0.0 {
            return Err(ConeError::Pole { index: j + 1, argument: arg });
        }
        acc *= libm::tgamma(arg);
    }
    Ok(acc)
}

/// `∫_Ω e^{−(x|y)} Δ_s(x) Δ(x)^{−n/r} dx = Γ_Ω(s) Δ_s(y^{−1})`.
pub fn laplace_power(s: &ExponentVector, y: &JordanElement) -> Result<f64> {
    let g = gamma_cone(s, y.algebra())?;
    let yi = jinv(y).map_err(|_| ConeError::domain("y must lie in the cone"))?;
    Ok(g * power_function(&yi, s)?)
}

/// `Γ̃ = ∫_Ω e^{−2 tr u} Δ_m(u) Δ(u)^{−2n/r} du = 2^{n−rm} Γ_Ω(m − n/r)` for scalar weights.
pub fn gamma_tilde_scalar(m: &ExponentVector, alg: Algebra) -> Result<f64> {
    m.check_rank(alg)?;
    if !m.is_uniform() {
        return Err(ConeError::Unsupported("Γ̃ is implemented for scalar (uniform) weights only".into()));
    }
    check_discrete_series(m, alg)?;
    laplace_power(&m.shifted(-alg.n_over_r()), &alg.unit().scale(2.0))
}

/// `ω(m) > 2n/r − 1`, otherwise a divergence error.
pub fn check_discrete_series(m: &ExponentVector, alg: Algebra) -> Result<()> {
    let threshold = alg.discrete_series_threshold();
    if m.omega() > threshold {
        Ok(())
    } else {
        Err(ConeError::Divergence(alloc::format!(
            "ω = {} does not exceed 2n/r − 1 = {threshold}; the integral diverges",
            m.omega()
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesselSeriesConfig {
    pub max_terms: usize,
    /// Stop once the next term is below this fraction of the partial sum.
    pub tail_tolerance: f64,
}

impl Default for BesselSeriesConfig {
    fn default() -> Self {
        Self { max_terms: 400, tail_tolerance: 1e-17 }
    }
}

impl BesselSeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 || !(self.tail_tolerance > 0.0) {
            return Err(ConeError::invalid("Bessel series needs max_terms ≥ 1 and a positive tail tolerance"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselValue {
    pub value: f64,
    /// Size of the first omitted term.
    pub tail_estimate: f64,
    pub terms: usize,
}

/// Real profile `S(u) = Σ_k (−u)^k / (k! Γ(m+k))` of the rank-1 Bessel function;
/// the complex function is `𝒥(u) = e^{−iπm/2} S(u)`.
pub fn bessel_series(m: f64, u: f64, cfg: &BesselSeriesConfig) -> Result<BesselValue> {
    cfg.validate()?;
    if !(m > 1.0) {
        return Err(ConeError::invalid("Bessel series needs m > 1"));
    }
    if !(u >= 0.0) {
        return Err(ConeError::domain("Bessel series needs u ≥ 0"));
    }
    let mut term = 1.0 / libm::tgamma(m);
    let mut sum = 0.0;
    let mut peak = 0.0f64;
    for k in 0..cfg.max_terms {
        sum += term;
        peak = peak.max(term.abs());
        let next = term * (-u) / ((k as f64 + 1.0) * (m + k as f64));
        let decreasing = u < (k as f64 + 1.0) * (m + k as f64);
        let floor = (cfg.tail_tolerance * sum.abs()).max(f64::EPSILON * f64::EPSILON * peak);
        if decreasing && (next.abs() <= floor || next == 0.0) {
            return Ok(BesselValue { value: sum, tail_estimate: next.abs(), terms: k + 1 });
        }
        term = next;
    }
    Err(ConeError::Precision { estimate: term.abs(), target: cfg.tail_tolerance * sum.abs() })
}

/// Above this argument the series loses more than ~`e^{2√u}` to cancellation
/// and the Hankel expansion takes over.
pub const BESSEL_SERIES_LIMIT: f64 = 49.0;

/// `S(u) = u^{−ν/2} J_ν(2√u)` with `ν = m − 1`: the power series for
/// `u ≤ BESSEL_SERIES_LIMIT`, the Hankel expansion beyond.
pub fn bessel_eval(m: f64, u: f64, cfg: &BesselSeriesConfig) -> Result<BesselValue> {
    if u <= BESSEL_SERIES_LIMIT || !u.is_finite() {
        return bessel_series(m, u, cfg);
    }
    cfg.validate()?;
    if !(m > 1.0) {
        return Err(ConeError::invalid("Bessel series needs m > 1"));
    }
    let nu = m - 1.0;
    let (j, tail, terms) = match hankel_j(nu, 2.0 * u.sqrt(), cfg.max_terms) {
        Ok(v) => v,
        // Large orders need a longer series range before the expansion is sharp.
        Err(ConeError::Precision { .. }) if u <= 4.0 * BESSEL_SERIES_LIMIT => return bessel_series(m, u, cfg),
        Err(e) => return Err(e),
    };
    let scale = u.powf(-nu / 2.0);
    Ok(BesselValue { value: scale * j, tail_estimate: scale * tail, terms })
}

/// `J_ν(x) ≈ √(2/πx)(P cos χ − Q sin χ)`, `χ = x − (ν/2 + 1/4)π`, summed up to the
/// smallest term. Returns the value, the size of the last term and the term count.
fn hankel_j(nu: f64, x: f64, max_terms: usize) -> Result<(f64, f64, usize)> {
    let mu = 4.0 * nu * nu;
    let (mut p, mut q) = (0.0, 0.0);
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    let mut k = 0usize;
    while k < max_terms {
        let term = a / x.powi(k as i32);
        if term.abs() > last {
            break;
        }
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        last = term.abs();
        if last < 1e-18 * (p.abs() + q.abs()) {
            break;
        }
        let odd = (2 * k + 1) as f64;
        a *= (mu - odd * odd) / ((k + 1) as f64 * 8.0);
        k += 1;
    }
    if last > 1e-12 * (p.abs() + q.abs()) {
        return Err(ConeError::Precision { estimate: last, target: 1e-12 });
    }
    let chi = x - (nu / 2.0 + 0.25) * PI;
    let amp = (2.0 / (PI * x)).sqrt();
    Ok((amp * (p * chi.cos() - q * chi.sin()), amp * last, k + 1))
}

/// `S(u)`, see [`bessel_eval`].
pub fn bessel_rank1(m: f64, u: f64, cfg: &BesselSeriesConfig) -> Result<f64> {
    Ok(bessel_eval(m, u, cfg)?.value)
}

/// Constant phase `e^{−iπm/2}` of the rank-1 Bessel function.
pub fn bessel_phase(m: f64) -> Complex64 {
    Complex64::from_polar(1.0, -FRAC_PI_2 * m)
}

/// Leading coefficient `c_0 = e^{−iπm/2}/Γ(m)`.
pub fn bessel_c0(m: f64) -> Complex64 {
    bessel_phase(m) / libm::tgamma(m)
}

/// `𝒥(u) = e^{−iπm/2} S(u)`.
pub fn bessel_rank1_complex(m: f64, u: f64, cfg: &BesselSeriesConfig) -> Result<Complex64> {
    Ok(bessel_phase(m) * bessel_rank1(m, u, cfg)?)
}

/// `∫_0^∞ e^{izu} u^{m−1} 𝒥(u) du` by quadrature of the series, for `Im z > 0`.
pub fn bessel_transform(m: f64, z: Complex64, cfg: &BesselSeriesConfig, profile: &GridProfile) -> Result<Complex64> {
    Ok(bessel_phase(m) * normalized_transform(m, z, cfg, profile)? / libm::tgamma(m))
}

/// Transform of the series normalized to `c_0 = 1`.
fn normalized_transform(m: f64, z: Complex64, cfg: &BesselSeriesConfig, profile: &GridProfile) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(ConeError::domain("transform needs Im z > 0"));
    }
    // Beyond u_max the factor e^{−u Im z} is below e^{−80}.
    let u_max = 80.0 / z.im;
    let gm = libm::tgamma(m);
    let trap = crate::quadrature::Trap::new();
    let r = integrate_1d(
        |u: f64| {
            let s = trap.guard(bessel_rank1(m, u, cfg)) * gm;
            (Complex64::i() * z * u).exp() * u.powf(m - 1.0) * s
        },
        Interval::Finite(0.0, u_max),
        profile,
    );
    trap.finish(r).map(|r| r.value)
}

/// Right-hand side `e^{−i/z} z^{−m}` of the defining identity.
pub fn bessel_identity_rhs(m: f64, z: Complex64) -> Complex64 {
    (-Complex64::i() / z).exp() * (-z.ln() * m).exp()
}

/// Recovers `c_0` numerically from the defining identity at `z = 2i`.
pub fn calibrate_bessel_c0(m: f64, cfg: &BesselSeriesConfig, profile: &GridProfile) -> Result<Complex64> {
    let z = Complex64::new(0.0, 2.0);
    Ok(bessel_identity_rhs(m, z) / normalized_transform(m, z, cfg, profile)?)
}
