//! Lowest-`K`-type norms, the Whittaker inner product and the formal
//! dimension `d(π)` defined by `∫_{G/N} |ι(f ⊗ W)|² = d^{−1} ‖f‖² ⟨W, W⟩`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::cone::{check_discrete_series, gamma_cone, gamma_tilde_scalar, BesselSeriesConfig};
use crate::error::{ConeError, Result};
use crate::jordan::{Algebra, AlgebraFamily, ExponentVector, JordanElement};
use crate::models::{act_cone_l2, cone_l2_inner, lowest_ktype_cone, GroupGenerator, ModelFunction};
use crate::quadrature::{integrate_omega, GridProfile, IntegralResult};
use crate::report::{spread_stats, GridMeta, Metric, VerificationReport};
use crate::su11::{f_n, gn_norm_fn, integrate_gn_su11, GnNorm, SL2Element};
use crate::whittaker::MatrixCoefficient;

fn weight(alg: Algebra, m: f64) -> Result<ExponentVector> {
    let w = ExponentVector::uniform(alg, m);
    check_discrete_series(&w, alg)?;
    Ok(w)
}

/// `‖f_ξ‖² = 2^{n − 2rm} Γ_Ω(m) Γ_Ω(m − n/r)`.
pub fn lkt_norm_closed(m: f64, alg: Algebra) -> Result<f64> {
    let w = weight(alg, m)?;
    let shifted = ExponentVector::uniform(alg, m - alg.n_over_r());
    let (n, r) = (alg.dim() as f64, alg.rank() as f64);
    Ok(2f64.powf(n - 2.0 * r * m) * gamma_cone(&w, alg)? * gamma_cone(&shifted, alg)?)
}

/// `Γ̃_π = ∫_Ω e^{−2 tr u} Δ(u)^{m − 2n/r} du` by quadrature.
pub fn gamma_tilde_quadrature(m: f64, alg: Algebra, profile: &GridProfile) -> Result<IntegralResult<f64>> {
    weight(alg, m)?;
    let p = m - 2.0 * alg.n_over_r();
    integrate_omega(|u| (-2.0 * u.tr()).exp() * u.det().powf(p), alg, profile)
}

/// `‖f_ξ‖² = Γ̃_π ∫_Ω e^{−2 tr u} Δ(u)^{m − n/r} du`, both factors by quadrature.
pub fn lkt_norm_quadrature(m: f64, alg: Algebra, profile: &GridProfile) -> Result<IntegralResult<f64>> {
    let gt = gamma_tilde_quadrature(m, alg, profile)?;
    let p = m - alg.n_over_r();
    let body = integrate_omega(|u| (-2.0 * u.tr()).exp() * u.det().powf(p), alg, profile)?;
    Ok(IntegralResult {
        value: gt.value * body.value,
        error_estimate: gt.error_estimate * body.value.abs() + body.error_estimate * gt.value.abs(),
        evaluations: gt.evaluations + body.evaluations,
    })
}

/// `⟨W_{e,η}, W_{e,η′}⟩ = Γ̃_π η conj(η′)`.
pub fn whittaker_inner(eta: Complex64, eta_prime: Complex64, m: f64, alg: Algebra) -> Result<Complex64> {
    let w = weight(alg, m)?;
    Ok(eta * eta_prime.conj() * gamma_tilde_scalar(&w, alg)?)
}

/// `4^{rm} dim π / (Γ_Ω(m) Γ_Ω(m − n/r))` with `dim π = 1`.
pub fn closed_form_shape(m: f64, alg: Algebra) -> Result<f64> {
    let w = weight(alg, m)?;
    let shifted = ExponentVector::uniform(alg, m - alg.n_over_r());
    let dim_pi = 1.0;
    Ok(4f64.powf(alg.rank() as f64 * m) * dim_pi / (gamma_cone(&w, alg)? * gamma_cone(&shifted, alg)?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormalDimensionRecord {
    pub algebra: String,
    pub m: f64,
    /// Coordinates of the character parameter `v`.
    pub v: Vec<f64>,
    pub lkt_norm: f64,
    pub whittaker_inner: f64,
    /// `∫_{G/N} |ι|²` at `v`, before the `v`-Jacobian.
    pub gn_integral: f64,
    /// `Δ(v)^{m − n/r}`.
    pub v_jacobian: f64,
    pub numeric_d: f64,
    pub closed_form_shape: f64,
    /// `numeric_d / closed_form_shape`.
    pub fitted_constant: f64,
    /// `numeric_d · closed_form_shape`.
    pub fitted_constant_reciprocal: f64,
    pub grid: GridMeta,
}

/// `d(π) = ‖f_ξ‖² ⟨W, W⟩ / ∫_{G/N} |ι(f_ξ ⊗ W)|²` with `η = 1`. For `v ≠ e`
/// the `G/N` integral is multiplied by `Δ(v)^{m − n/r}`, which moves it to `v = e`.
pub fn formal_dimension_numeric(m: f64, v: &JordanElement, alg: Algebra, profile: &GridProfile) -> Result<FormalDimensionRecord> {
    let mc = MatrixCoefficient::new(alg, m, *v, Complex64::new(1.0, 0.0))?;
    let norm = lkt_norm_closed(m, alg)?;
    let inner = whittaker_inner(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), m, alg)?.re;
    let gn = mc.gn_norm(profile)?;
    let jac = mc.v_jacobian();
    let d = norm * inner / (gn.value * jac);
    let shape = closed_form_shape(m, alg)?;
    Ok(FormalDimensionRecord {
        algebra: String::from(alg.name()),
        m,
        v: (0..alg.dim()).map(|k| v.coord(k).re).collect(),
        lkt_norm: norm,
        whittaker_inner: inner,
        gn_integral: gn.value,
        v_jacobian: jac,
        numeric_d: d,
        closed_form_shape: shape,
        fitted_constant: d / shape,
        fitted_constant_reciprocal: d * shape,
        grid: GridMeta { profile: profile.name.clone(), evaluations: gn.evaluations as u64, error_estimate: Some(gn.error_estimate) },
    })
}

/// Which way the closed-form shape enters `d(π)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeFit {
    Direct,
    Reciprocal,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeFitReport {
    pub direct_constants: Vec<f64>,
    pub reciprocal_constants: Vec<f64>,
    pub direct_spread: f64,
    pub reciprocal_spread: f64,
    pub shape: ShapeFit,
}

fn rel_spread(values: &[f64]) -> f64 {
    let (lo, hi, mean) = spread_stats(values);
    (hi - lo) / mean.abs()
}

/// Compares both fits over a family of records; `tolerance` is the allowed
/// relative spread of the fitted constant.
pub fn fit_shape(records: &[FormalDimensionRecord], tolerance: f64) -> Result<ShapeFitReport> {
    if records.len() < 2 {
        return Err(ConeError::invalid("a shape fit needs at least two records"));
    }
    let direct: Vec<f64> = records.iter().map(|r| r.fitted_constant).collect();
    let recip: Vec<f64> = records.iter().map(|r| r.fitted_constant_reciprocal).collect();
    let (ds, rs) = (rel_spread(&direct), rel_spread(&recip));
    let shape = if ds < tolerance {
        ShapeFit::Direct
    } else if rs < tolerance {
        ShapeFit::Reciprocal
    } else {
        ShapeFit::Neither
    };
    Ok(ShapeFitReport { direct_constants: direct, reciprocal_constants: recip, direct_spread: ds, reciprocal_spread: rs, shape })
}

/// Verification record for the shape fit: passes when either fit is constant,
/// with both fits attached.
pub fn shape_fit_report(records: &[FormalDimensionRecord], tolerance: f64) -> Result<VerificationReport> {
    let fit = fit_shape(records, tolerance)?;
    let best = fit.direct_spread.min(fit.reciprocal_spread);
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (constant, note) = match fit.shape {
        ShapeFit::Direct => (mean(&fit.direct_constants), String::from("d = const · shape")),
        ShapeFit::Reciprocal => (
            mean(&fit.reciprocal_constants),
            format!("shape discrepancy: d = const / shape; the direct fit drifts by {:.3e}", fit.direct_spread),
        ),
        ShapeFit::Neither => (f64::NAN, String::from("neither fit is constant")),
    };
    let mut rep = VerificationReport::from_deviation("formal_dim_shape_fit", Metric::RelativeSpread, constant, constant, best, tolerance)
        .with_algebra(&records[0].algebra)
        .with_param("direct_spread", fit.direct_spread)
        .with_param("reciprocal_spread", fit.reciprocal_spread)
        .with_note(&note);
    for (r, (d, c)) in records.iter().zip(fit.direct_constants.iter().zip(&fit.reciprocal_constants)) {
        rep = rep.with_param(&format!("direct_fit_m{}", r.m), *d).with_param(&format!("reciprocal_fit_m{}", r.m), *c);
    }
    Ok(rep)
}

fn rank_one_integer(alg: Algebra, m: f64) -> Result<i32> {
    if alg.family() != AlgebraFamily::RankOneReal {
        return Err(ConeError::Unsupported("the SU(1,1) pipeline covers rank 1 only".into()));
    }
    if m.fract() != 0.0 {
        return Err(ConeError::Unsupported("the SU(1,1) pipeline needs an integer weight".into()));
    }
    Ok(m as i32)
}

/// `d(π)` through `SU(1,1)`: `ι(f_ξ ⊗ W)` is `e^{−v}F_m` with character
/// parameter `2v`, so `∫_{G/N}|ι|² = e^{−2v} ‖F_m‖²`.
pub fn formal_dimension_su11(m: f64, v: f64, profile: &GridProfile) -> Result<f64> {
    let n = rank_one_integer(Algebra::RANK_ONE, m)?;
    let gn = match gn_norm_fn(n, 2.0 * v, profile)? {
        GnNorm::Finite(r) => r.value,
        GnNorm::Divergent { ratio } => return Err(ConeError::Divergence(format!("‖F_{n}‖ diverges (shell ratio {ratio})"))),
    };
    let inner = whittaker_inner(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), m, Algebra::RANK_ONE)?.re;
    let jac = v.powf(m - 1.0);
    Ok(lkt_norm_closed(m, Algebra::RANK_ONE)? * inner / ((-2.0 * v).exp() * gn * jac))
}

/// An `N` or `L` translate of the lowest `K`-type, given at rank 1 by the
/// tube translation `u` or the dilation `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Translate {
    Identity,
    N(f64),
    L(f64),
}

impl Translate {
    fn generator(&self) -> Option<GroupGenerator> {
        match *self {
            Translate::Identity => None,
            Translate::N(u) => Some(GroupGenerator::TranslationN(JordanElement::scalar(u))),
            Translate::L(a) => Some(GroupGenerator::dilation(Algebra::RANK_ONE, a)),
        }
    }

    /// The `SU(1,1)` element: `n_s` with `u = 2s`, `a_t` with `a = e^{2t}`.
    pub fn su11(&self) -> SL2Element {
        match *self {
            Translate::Identity => SL2Element::identity(),
            Translate::N(u) => SL2Element::n_z(Complex64::new(u / 2.0, 0.0)),
            Translate::L(a) => SL2Element::a_t(a.ln() / 2.0),
        }
    }

    fn vector(&self, f: &ModelFunction, profile: &GridProfile) -> Result<ModelFunction> {
        match self.generator() {
            None => Ok(f.clone()),
            Some(g) => act_cone_l2(&g, f, &BesselSeriesConfig::default(), profile),
        }
    }

    fn label(&self) -> String {
        match *self {
            Translate::Identity => String::from("e"),
            Translate::N(u) => format!("n({u})"),
            Translate::L(a) => format!("l({a})"),
        }
    }
}

/// Default pairs for the factorization check.
pub const ORTHOGONALITY_PAIRS: [(Translate, Translate); 5] = [
    (Translate::Identity, Translate::Identity),
    (Translate::N(0.3), Translate::Identity),
    (Translate::L(1.2), Translate::Identity),
    (Translate::N(0.3), Translate::L(1.2)),
    (Translate::N(-0.5), Translate::L(0.8)),
];

/// `∫_{G/N} ι(R(h)f_ξ ⊗ W) conj(ι(R(h′)f_ξ ⊗ W)) / ⟨R(h)f_ξ, R(h′)f_ξ⟩` over
/// the pairs; the ratio must not depend on the pair. Rank 1, `η = 1`, scalar `v`.
pub fn orthogonality_factorization_check(
    m: f64,
    v: &JordanElement,
    alg: Algebra,
    pairs: &[(Translate, Translate)],
    profile: &GridProfile,
) -> Result<VerificationReport> {
    let n = rank_one_integer(alg, m)?;
    weight(alg, m)?;
    let vj = v.coord(0).re;
    if !(vj > 0.0) {
        return Err(ConeError::domain("the character parameter must be positive"));
    }
    let f = lowest_ktype_cone(alg, m)?;
    let mut ratios: Vec<Complex64> = Vec::with_capacity(pairs.len());
    let mut rep_params: Vec<(String, f64)> = Vec::new();
    for (h1, h2) in pairs {
        let (g1, g2) = (h1.su11().inverse(), h2.su11().inverse());
        let trap = crate::quadrature::Trap::new();
        let r = integrate_gn_su11(
            |g| {
                let a = trap.guard(f_n(&(g1 * *g), n, 2.0 * vj));
                let b = trap.guard(f_n(&(g2 * *g), n, 2.0 * vj));
                a * b.conj()
            },
            profile,
        );
        let lhs = trap.finish(r)?.value * (-2.0 * vj).exp();
        let rhs = cone_l2_inner(&h1.vector(&f, profile)?, &h2.vector(&f, profile)?, profile)?.value;
        let ratio = lhs / rhs;
        rep_params.push((format!("ratio_re[{},{}]", h1.label(), h2.label()), ratio.re));
        rep_params.push((format!("ratio_im[{},{}]", h1.label(), h2.label()), ratio.im));
        ratios.push(ratio);
    }
    let reference = ratios[0];
    let dev = ratios.iter().map(|r| (r - reference).norm() / reference.norm()).fold(0.0, f64::max);
    let mut rep = VerificationReport::from_deviation("orthogonality_factorization", Metric::RelativeSpread, reference.re, reference.re, dev, 1e-3)
        .with_algebra(alg.name())
        .with_param("m", m)
        .with_param("v", vj)
        .with_param("pairs", pairs.len() as f64)
        .with_profile(profile);
    for (k, x) in rep_params {
        rep = rep.with_param(&k, x);
    }
    Ok(rep)
}

/// Expected value of the factorization ratio: `e^{−2v}‖F_m‖² / ‖f_ξ‖²`, which
/// equals `⟨W, W⟩ / d(π)` in `SU(1,1)` measure.
pub fn orthogonality_constant(m: f64, v: f64) -> Result<f64> {
    let n = rank_one_integer(Algebra::RANK_ONE, m)?;
    let gn = crate::su11::gn_norm_closed(n as f64, 2.0 * v)?;
    Ok((-2.0 * v).exp() * gn / lkt_norm_closed(m, Algebra::RANK_ONE)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn lkt_norm_values() {
        assert!((lkt_norm_closed(3.0, Algebra::RANK_ONE).unwrap() - 1.0 / 16.0).abs() < 1e-16);
        let p = GridProfile::default();
        for m in [3.0, 4.0, 5.0] {
            let q = lkt_norm_quadrature(m, Algebra::RANK_ONE, &p).unwrap().value;
            let c = lkt_norm_closed(m, Algebra::RANK_ONE).unwrap();
            assert!((q - c).abs() / c < 1e-5);
        }
        // Rank 2, m = 4: 2^{3−16} Γ_Ω(4) Γ_Ω(5/2), Γ_Ω(s) = √(2π) Γ(s) Γ(s − 1/2).
        let sp = (2.0 * core::f64::consts::PI).sqrt();
        let g = |s: f64| sp * libm::tgamma(s) * libm::tgamma(s - 0.5);
        let want = 2f64.powi(-13) * g(4.0) * g(2.5);
        assert!((lkt_norm_closed(4.0, Algebra::SYM2).unwrap() - want).abs() / want < 1e-14);
        assert!(matches!(lkt_norm_closed(1.0, Algebra::RANK_ONE), Err(ConeError::Divergence(_)) | Err(ConeError::Pole { .. })));
    }

    #[test]
    fn lkt_norm_grows_for_large_m() {
        for alg in [Algebra::RANK_ONE, Algebra::SYM2] {
            let vals: Vec<f64> = (0..12).map(|k| lkt_norm_closed(4.0 + 0.5 * k as f64, alg).unwrap()).collect();
            assert!(vals.windows(2).all(|w| w[1] > w[0]), "{vals:?}");
        }
    }

    #[test]
    fn whittaker_inner_values() {
        let gt = whittaker_inner(one(), one(), 3.0, Algebra::RANK_ONE).unwrap();
        assert!((gt.re - 0.25).abs() < 1e-16 && gt.im == 0.0);
        let q = gamma_tilde_quadrature(3.0, Algebra::RANK_ONE, &GridProfile::default()).unwrap().value;
        assert!((q - 0.25).abs() < 1e-10);
        let (a, b) = (Complex64::new(0.3, 1.2), Complex64::new(-0.7, 0.4));
        let lhs = whittaker_inner(a * 2.0, b, 3.0, Algebra::RANK_ONE).unwrap();
        let rhs = whittaker_inner(a, b * Complex64::new(0.0, 1.0), 3.0, Algebra::RANK_ONE).unwrap();
        assert!((lhs - rhs * Complex64::new(0.0, 2.0)).norm() < 1e-15);
        assert!(whittaker_inner(a, a, 3.5, Algebra::SYM2).unwrap().re > 0.0);
    }

    #[test]
    fn formal_dimension_shape_and_su11() {
        let p = GridProfile::default();
        let e = Algebra::RANK_ONE.unit();
        let recs: Vec<_> = [3.0, 4.0, 5.0].iter().map(|&m| formal_dimension_numeric(m, &e, Algebra::RANK_ONE, &p).unwrap()).collect();
        let fit = fit_shape(&recs, 1e-3).unwrap();
        assert_eq!(fit.shape, ShapeFit::Reciprocal);
        assert!(fit.direct_spread > 0.5);
        assert!(shape_fit_report(&recs, 1e-3).unwrap().passed);
        for r in &recs {
            let su = formal_dimension_su11(r.m, 1.0, &p).unwrap();
            assert!((su - r.numeric_d).abs() / su < 1e-4, "{su} vs {}", r.numeric_d);
        }
        assert!(formal_dimension_numeric(1.5, &e, Algebra::RANK_ONE, &p).is_ok());
        assert!(matches!(formal_dimension_numeric(0.9, &e, Algebra::RANK_ONE, &p), Err(ConeError::Divergence(_))));
    }

    #[test]
    fn formal_dimension_invariances() {
        let p = GridProfile::default();
        let e = Algebra::RANK_ONE.unit();
        let base = formal_dimension_numeric(3.0, &e, Algebra::RANK_ONE, &p).unwrap();
        let scaled = formal_dimension_numeric(3.0, &JordanElement::scalar(1.7), Algebra::RANK_ONE, &p).unwrap();
        assert!((scaled.numeric_d - base.numeric_d).abs() / base.numeric_d < 1e-3);
        // η enters ∫|ι|² and ⟨W, W⟩ by the same |η|².
        let mc = MatrixCoefficient::new(Algebra::RANK_ONE, 3.0, e, Complex64::new(2.0, 0.0)).unwrap();
        let d2 = lkt_norm_closed(3.0, Algebra::RANK_ONE).unwrap()
            * whittaker_inner(Complex64::new(2.0, 0.0), Complex64::new(2.0, 0.0), 3.0, Algebra::RANK_ONE).unwrap().re
            / mc.gn_norm(&p).unwrap().value;
        assert!((d2 - base.numeric_d).abs() / base.numeric_d < 1e-12);
    }

    #[test]
    fn orthogonality_pairs() {
        let p = GridProfile::fast();
        let rep = orthogonality_factorization_check(3.0, &Algebra::RANK_ONE.unit(), Algebra::RANK_ONE, &ORTHOGONALITY_PAIRS, &p).unwrap();
        assert!(rep.passed, "{rep:?}");
        let c = orthogonality_constant(3.0, 1.0).unwrap();
        assert!((rep.computed.unwrap() - c).abs() / c < 1e-4);
        assert!(matches!(
            orthogonality_factorization_check(3.5, &Algebra::SYM2.unit(), Algebra::SYM2, &ORTHOGONALITY_PAIRS, &p),
            Err(ConeError::Unsupported(_))
        ));
    }
}
