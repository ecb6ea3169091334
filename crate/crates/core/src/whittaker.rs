//! Whittaker vectors for the character `ψ_v(n_u) = e^{−i(u|v)}` in the three
//! models, and the matrix coefficient of the lowest `K`-type.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::cone::BesselSeriesConfig;
use crate::error::{ConeError, Result};
use crate::jordan::{cone_contains, disk_contains, jinv, jmul, trace_form, tube_contains, Algebra, AlgebraFamily, JordanElement};
use crate::models::{bessel_integral, disk_pairing, pi_right, pi_tube, Model, ModelFunction};
use crate::quadrature::{
    gn_measure_constant, integrate_1d, integrate_2d, integrate_gn_lowest_ktype, integrate_oscillatory_line, monitor_shells,
    GridProfile, IntegralResult, Interval, TailVerdict, Trap,
};
use crate::quadrature::OMEGA_MEASURE_FACTOR;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Transforms under `N` by `ψ_v`.
    N,
    /// Transforms under `N̄ = jNj^{−1}`.
    Nbar,
}

/// `W_{v,η}` in a given model; `η` is the coefficient in the (one-dimensional)
/// dual of the lowest `K`-type.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WhittakerVector {
    model: Model,
    side: Side,
    v: JordanElement,
    eta: Complex64,
}

impl WhittakerVector {
    pub fn new(model: Model, side: Side, v: JordanElement, eta: Complex64) -> Result<Self> {
        if !v.is_real() || !cone_contains(&v) {
            return Err(ConeError::domain("the character parameter must lie in Ω"));
        }
        Ok(Self { model, side, v, eta })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn v(&self) -> &JordanElement {
        &self.v
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    fn expect(&self, model: Model, side: Side) -> Result<()> {
        if self.model == model && self.side == side {
            Ok(())
        } else {
            Err(ConeError::invalid(format!("expected a {model:?}/{side:?} Whittaker vector, got {:?}/{:?}", self.model, self.side)))
        }
    }
}

/// `W^Ω(f) = η f(v)`.
pub fn eval_whittaker_cone_n(w: &WhittakerVector, f: &ModelFunction) -> Result<Complex64> {
    w.expect(Model::ConeL2, Side::N)?;
    Ok(w.eta * f.eval(&w.v)?)
}

/// `W̄^Ω(f) = ∫_Ω η 𝒥(u, v) f(u) Δ(u)^{−n/r} du`, which is `η (R(j)f)(v)`.
/// Rank 1 only.
pub fn eval_whittaker_cone_nbar(
    w: &WhittakerVector,
    f: &ModelFunction,
    cfg: &BesselSeriesConfig,
    profile: &GridProfile,
) -> Result<Complex64> {
    w.expect(Model::ConeL2, Side::Nbar)?;
    if f.algebra().family() != AlgebraFamily::RankOneReal {
        return Err(ConeError::Unsupported("the N̄ Whittaker vector on L²(Ω) needs the rank-1 Bessel kernel".into()));
    }
    if w.eta == Complex64::new(0.0, 0.0) {
        return Ok(w.eta);
    }
    let v = w.v.coord(0).re;
    let value = bessel_integral(&|u| f.eval(&JordanElement::scalar(u)), f.m(), v, cfg, profile)?;
    Ok(w.eta * value)
}

/// The antiholomorphic tube profile: `e^{−i(z̄|v)} η` on the `N` side and
/// `e^{i(z̄^{−1}|v)} η conj(π(z))` on the `N̄` side.
pub fn eval_whittaker_tube(w: &WhittakerVector, z: &JordanElement, m: f64) -> Result<Complex64> {
    if w.model != Model::Tube {
        return Err(ConeError::invalid("expected a tube Whittaker vector"));
    }
    if !tube_contains(z) {
        return Err(ConeError::domain("tube Whittaker profile needs a tube point"));
    }
    let zb = z.conj();
    Ok(match w.side {
        Side::N => (-I * trace_form(&zb, &w.v)?).exp() * w.eta,
        Side::Nbar => (I * trace_form(&jinv(&zb)?, &w.v)?).exp() * w.eta * pi_tube(z, m)?.conj(),
    })
}

/// The antiholomorphic disk profile: `e^{−((e+w̄)(e−w̄)^{−1}|v)} η π(e−w̄)` on the
/// `N` side and `e^{−((e−w̄)(e+w̄)^{−1}|v)} η π(e+w̄)` on the `N̄` side.
pub fn eval_whittaker_disk(w: &WhittakerVector, p: &JordanElement, m: f64) -> Result<Complex64> {
    if w.model != Model::Disk {
        return Err(ConeError::invalid("expected a disk Whittaker vector"));
    }
    if !disk_contains(p) {
        return Err(ConeError::domain("disk Whittaker profile needs a point of D"));
    }
    let e = p.algebra().unit();
    let pb = p.conj();
    let (num, den) = match w.side {
        Side::N => (e + pb, e - pb),
        Side::Nbar => (e - pb, e + pb),
    };
    let ex = (-trace_form(&jmul(&num, &jinv(&den)?)?, &w.v)?).exp();
    Ok(ex * w.eta * pi_right(&den, m)?)
}

/// `e^{−2((e−w̄)^{−1}|v)} η π(e−w̄)`, the `N`-side disk profile divided by `e^{(e|v)}`.
pub fn eval_whittaker_disk_alternative(w: &WhittakerVector, p: &JordanElement, m: f64) -> Result<Complex64> {
    w.expect(Model::Disk, Side::N)?;
    if !disk_contains(p) {
        return Err(ConeError::domain("disk Whittaker profile needs a point of D"));
    }
    let d = p.algebra().unit() - p.conj();
    let ex = (-trace_form(&jinv(&d)?, &w.v)? * 2.0).exp();
    Ok(ex * w.eta * pi_right(&d, m)?)
}

/// `|W(x + iy)| = e^{−(y|v)}|η|`; the tube pairing stops at `(y|v) = TUBE_Y_CUTOFF`.
pub const TUBE_Y_CUTOFF: f64 = 46.0;

/// `∫_{T_Ω} W(z) F(z) Δ(y)^{m − 2n/r} dz` for the `N`-side tube profile (rank 1).
/// The `x` integral oscillates like `e^{−ixv}` and goes through the
/// extrapolated line integrator.
pub fn tube_whittaker_pairing(w: &WhittakerVector, f: &ModelFunction, profile: &GridProfile) -> Result<IntegralResult<Complex64>> {
    w.expect(Model::Tube, Side::N)?;
    if f.model() != Model::Tube {
        return Err(ConeError::invalid("expected a tube function"));
    }
    if f.algebra().family() != AlgebraFamily::RankOneReal {
        return Err(ConeError::Unsupported("the tube pairing is evaluated at rank 1 only".into()));
    }
    let m = f.m();
    let v = w.v.coord(0).re;
    let inner = profile.with_rel_tol(profile.rel_tol * 0.1);
    let trap = Trap::new();
    let r = integrate_1d(
        |y: f64| {
            if !(y > 0.0) || !y.is_finite() {
                return Complex64::new(0.0, 0.0);
            }
            let line = integrate_oscillatory_line(
                |x: f64| {
                    let z = JordanElement::scalar_c(Complex64::new(x, y));
                    trap.guard(eval_whittaker_tube(w, &z, m)) * trap.guard(f.eval(&z))
                },
                PI / v,
                8.0 * (1.0 + y),
                40,
                &inner,
            );
            trap.guard(line.map(|r| r.value)) * y.powf(m - 2.0)
        },
        Interval::Finite(0.0, TUBE_Y_CUTOFF / v),
        profile,
    );
    trap.finish(r)
}

/// `∫_D W(w) f(w) π(B(w, w̄))^{−1} h(w)^{−2n/r} dw` (rank 1).
pub fn disk_whittaker_pairing(w: &WhittakerVector, f: &ModelFunction, profile: &GridProfile) -> Result<IntegralResult<Complex64>> {
    if w.model != Model::Disk {
        return Err(ConeError::invalid("expected a disk Whittaker vector"));
    }
    let m = f.m();
    disk_pairing(&|p| eval_whittaker_disk(w, p, m), f, profile)
}

/// `ι(f_ξ ⊗ W^Ω_{v,η})` reduced to the cone variable `x = l·e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixCoefficient {
    algebra: Algebra,
    m: f64,
    whittaker: WhittakerVector,
}

impl MatrixCoefficient {
    /// Requires `m > 2n/r − 1`.
    pub fn new(algebra: Algebra, m: f64, v: JordanElement, eta: Complex64) -> Result<Self> {
        let threshold = 2.0 * algebra.n_over_r() - 1.0;
        if !(m > threshold) {
            return Err(ConeError::Divergence(format!("matrix coefficient is not square integrable for m = {m} ≤ {threshold}")));
        }
        algebra.check_same(&v.algebra())?;
        Ok(Self { algebra, m, whittaker: WhittakerVector::new(Model::ConeL2, Side::N, v, eta)? })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn whittaker(&self) -> &WhittakerVector {
        &self.whittaker
    }

    /// `|ι|²(x) = |η|² Δ(x)^m e^{−2(x|v)}`.
    pub fn squared_modulus(&self, x: &JordanElement) -> Result<f64> {
        if !cone_contains(x) {
            return Err(ConeError::domain("the matrix coefficient is reduced to points of Ω"));
        }
        Ok(squared_density(self.m, &self.whittaker.v, self.whittaker.eta, x))
    }

    /// `∫_{G/N} |ι|² d(gN)`.
    pub fn gn_norm(&self, profile: &GridProfile) -> Result<IntegralResult<f64>> {
        let (v, eta, m) = (self.whittaker.v, self.whittaker.eta, self.m);
        integrate_gn_lowest_ktype(|x| squared_density(m, &v, eta, x), self.algebra, profile)
    }

    /// `Δ(v)^{m − n/r}`: multiplying the `G/N` norm at `v` by this factor gives
    /// the norm at `v = e`.
    pub fn v_jacobian(&self) -> f64 {
        self.whittaker.v.det().powf(self.m - self.algebra.n_over_r())
    }
}

fn squared_density(m: f64, v: &JordanElement, eta: Complex64, x: &JordanElement) -> f64 {
    let xv = trace_form(x, v).map(|c| c.re).unwrap_or(f64::NAN);
    eta.norm_sqr() * x.det().powf(m) * (-2.0 * xv).exp()
}

/// `|ι|²(x)` for the lowest `K`-type; see [`MatrixCoefficient`].
pub fn matrix_coeff_lowest_ktype(alg: Algebra, m: f64, v: &JordanElement, eta: Complex64, x: &JordanElement) -> Result<f64> {
    MatrixCoefficient::new(alg, m, *v, eta)?.squared_modulus(x)
}

/// Shell monitor for `∫_{G/N} |ι|²` toward the boundary of `Ω`, where the
/// smallest eigenvalue runs through `[2^{−k−1}, 2^{−k}]`. Integrability is
/// decided at `∂Ω`, where `e^{−2(x|v)}` is bounded above and below, so the
/// probe uses `v = e`; it accepts any `m`.
pub fn matrix_coeff_divergence_probe(alg: Algebra, m: f64, shells: usize, profile: &GridProfile) -> Result<TailVerdict> {
    let p = m - 2.0 * alg.n_over_r();
    let c = gn_measure_constant(alg);
    monitor_shells(
        |k| {
            let (lo, hi) = (0.5f64.powi(k as i32 + 1), 0.5f64.powi(k as i32));
            let r = match alg.family() {
                AlgebraFamily::RankOneReal => {
                    integrate_1d(|x: f64| x.powf(p) * (-2.0 * x).exp(), Interval::Finite(lo, hi), profile)?.value
                }
                AlgebraFamily::SymMatrices2 => {
                    let f = |l2: f64, s: f64| {
                        let l1 = l2 + s;
                        (l1 * l2).powf(p) * (-2.0 * (l1 + l2)).exp() * s
                    };
                    integrate_2d(f, Interval::Finite(lo, hi), Interval::From(0.0), profile)?.value * PI * OMEGA_MEASURE_FACTOR
                }
            };
            Ok(r * c)
        },
        shells,
    )
}

/// Random `(u, f)` pairs for the `N`-equivariance check: translates of
/// `e^{−a tr x}` with a polynomial factor.
pub fn equivariance_samples(alg: Algebra, count: usize, seed: u64) -> Result<Vec<(JordanElement, ModelFunction)>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let u = match alg.family() {
            AlgebraFamily::RankOneReal => JordanElement::scalar(rng.random_range(-3.0..3.0)),
            AlgebraFamily::SymMatrices2 => {
                JordanElement::sym2(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))
            }
        };
        let a: f64 = rng.random_range(0.5..2.0);
        let b: f64 = rng.random_range(-1.0..1.0);
        let f = ModelFunction::new(Model::ConeL2, alg, 3.0, format!("(1+{b} tr x)e^(-{a} tr x)"), move |x| {
            Ok(Complex64::new((1.0 + b * x.tr()) * (-a * x.tr()).exp(), 0.0))
        })?;
        out.push((u, f));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::gamma_tilde_scalar;
    use crate::jordan::ExponentVector;
    use crate::models::{act_cone_l2, cayley_inv, cayley_on_functions, lowest_ktype_cone, ExpPoly, GroupGenerator};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn cone_n_side_point_evaluation_and_equivariance() {
        let cfg = BesselSeriesConfig::default();
        let p = GridProfile::fast();
        for alg in [Algebra::RANK_ONE, Algebra::SYM2] {
            let v = alg.unit();
            let w = WhittakerVector::new(Model::ConeL2, Side::N, v, c(1.0, 0.0)).unwrap();
            let f = lowest_ktype_cone(alg, 3.0).unwrap();
            let r = alg.rank() as f64;
            assert!((eval_whittaker_cone_n(&w, &f).unwrap() - (-r).exp()).norm() < 1e-15);
            let v = match alg.family() {
                AlgebraFamily::RankOneReal => JordanElement::scalar(1.7),
                AlgebraFamily::SymMatrices2 => JordanElement::sym2(1.5, 0.8, 0.4),
            };
            let w = WhittakerVector::new(Model::ConeL2, Side::N, v, c(0.3, -1.1)).unwrap();
            for (u, f) in equivariance_samples(alg, 100, 7).unwrap() {
                let moved = act_cone_l2(&GroupGenerator::TranslationN(u), &f, &cfg, &p).unwrap();
                let lhs = eval_whittaker_cone_n(&w, &moved).unwrap();
                let rhs = (-I * trace_form(&u, &v).unwrap()).exp() * eval_whittaker_cone_n(&w, &f).unwrap();
                assert!((lhs - rhs).norm() <= 4.0 * f64::EPSILON * rhs.norm().max(1e-300));
                // Support: (e^{−i(u|·)} − e^{−i(u|v)}) f is annihilated.
                let phase = (-I * trace_form(&u, &v).unwrap()).exp();
                let diff = lhs - phase * eval_whittaker_cone_n(&w, &f).unwrap();
                assert!(diff.norm() <= 4.0 * f64::EPSILON);
            }
        }
        assert!(WhittakerVector::new(Model::ConeL2, Side::N, JordanElement::scalar(-1.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn cone_nbar_side() {
        let cfg = BesselSeriesConfig::default();
        let p = GridProfile::default();
        let m = 3.0;
        let f = ExpPoly { k: 1, a: 1.2 }.cone(m).unwrap();
        let v = JordanElement::scalar(1.3);
        let w = WhittakerVector::new(Model::ConeL2, Side::Nbar, v, c(1.0, 0.0)).unwrap();
        let got = eval_whittaker_cone_nbar(&w, &f, &cfg, &p).unwrap();
        let jf = act_cone_l2(&GroupGenerator::Inversion, &f, &cfg, &p).unwrap();
        assert!(rel(got, jf.eval(&v).unwrap()) < 1e-4);
        let w2 = WhittakerVector::new(Model::ConeL2, Side::Nbar, v, c(2.0, 0.0)).unwrap();
        assert!(rel(eval_whittaker_cone_nbar(&w2, &f, &cfg, &p).unwrap(), got * 2.0) < 1e-14);
        let zero = ModelFunction::new(Model::ConeL2, Algebra::RANK_ONE, m, "0", |_| Ok(c(0.0, 0.0))).unwrap();
        assert_eq!(eval_whittaker_cone_nbar(&w, &zero, &cfg, &p).unwrap(), c(0.0, 0.0));
        let ws = WhittakerVector::new(Model::ConeL2, Side::Nbar, Algebra::SYM2.unit(), c(1.0, 0.0)).unwrap();
        let fs = lowest_ktype_cone(Algebra::SYM2, 4.0).unwrap();
        assert!(matches!(eval_whittaker_cone_nbar(&ws, &fs, &cfg, &p), Err(ConeError::Unsupported(_))));
    }

    #[test]
    fn tube_profiles() {
        let m = 2.0;
        let v = JordanElement::scalar(1.0);
        let w = WhittakerVector::new(Model::Tube, Side::N, v, c(1.0, 0.0)).unwrap();
        let z = JordanElement::scalar_c(c(0.0, 0.7));
        assert!((eval_whittaker_tube(&w, &z, m).unwrap() - (-0.7f64).exp()).norm() < 1e-15);
        // N̄ side at z = ie, v = e: z̄^{−1} = i, so e^{i·i} π(ie)‾ = e^{−1} (i^{−2})‾ = −e^{−1}.
        let wb = WhittakerVector::new(Model::Tube, Side::Nbar, v, c(1.0, 0.0)).unwrap();
        let got = eval_whittaker_tube(&wb, &JordanElement::scalar_c(c(0.0, 1.0)), m).unwrap();
        assert!((got - c(-(-1.0f64).exp(), 0.0)).norm() < 1e-15);
        assert!(eval_whittaker_tube(&w, &JordanElement::scalar_c(c(0.0, -1.0)), m).is_err());
    }

    #[test]
    fn disk_profiles_and_cayley_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (alg, m, v) in [
            (Algebra::RANK_ONE, 3.0, JordanElement::scalar(1.4)),
            (Algebra::SYM2, 3.5, JordanElement::sym2(1.2, 0.7, 0.3)),
        ] {
            let eta = c(0.6, 0.8);
            let wd = WhittakerVector::new(Model::Disk, Side::N, v, eta).unwrap();
            let wt = WhittakerVector::new(Model::Tube, Side::N, v, eta).unwrap();
            let wdb = WhittakerVector::new(Model::Disk, Side::Nbar, v, eta).unwrap();
            let wtb = WhittakerVector::new(Model::Tube, Side::Nbar, v, eta).unwrap();
            let zero = alg.zero().complexify();
            assert!((eval_whittaker_disk(&wd, &zero, m).unwrap() - eta * (-v.tr()).exp()).norm() < 1e-14);
            let mut nbar_ratios = Vec::new();
            for _ in 0..20 {
                let p = random_disk_point(alg, &mut rng);
                let e = alg.unit();
                let c_w = cayley_inv(&p).unwrap();
                let lhs = eval_whittaker_disk(&wd, &p, m).unwrap();
                let rhs = eval_whittaker_tube(&wt, &c_w, m).unwrap() * pi_right(&(e - p.conj()), m).unwrap();
                assert!(rel(lhs, rhs) < 1e-10);
                let alt = eval_whittaker_disk_alternative(&wd, &p, m).unwrap();
                assert!(rel(lhs, alt * v.tr().exp()) < 1e-10);
                let lb = eval_whittaker_disk(&wdb, &p, m).unwrap();
                let rb = eval_whittaker_tube(&wtb, &c_w, m).unwrap() * pi_right(&(e - p.conj()), m).unwrap();
                nbar_ratios.push(lb / rb);
            }
            // The N̄ profiles agree up to a unimodular constant.
            for r in &nbar_ratios {
                assert!((r.norm() - 1.0).abs() < 1e-10);
                assert!((r - nbar_ratios[0]).norm() < 1e-10);
            }
        }
    }

    fn random_disk_point(alg: Algebra, rng: &mut ChaCha8Rng) -> JordanElement {
        loop {
            let p = match alg.family() {
                AlgebraFamily::RankOneReal => JordanElement::scalar_c(Complex64::from_polar(rng.random_range(0.0..0.97), rng.random_range(0.0..6.3))),
                AlgebraFamily::SymMatrices2 => {
                    let mut g = || c(rng.random_range(-0.6..0.6), rng.random_range(-0.6..0.6));
                    JordanElement::sym2_c(g(), g(), g())
                }
            };
            if disk_contains(&p) {
                return p;
            }
        }
    }

    #[test]
    fn cross_model_agreement() {
        // cone: η f(e); tube: (2π)^{1/2} Γ̃ η f(e); disk: a quarter of the tube value.
        let p = GridProfile::default();
        let m = 3.0;
        let alg = Algebra::RANK_ONE;
        let v = alg.unit();
        let eta = c(1.0, 0.0);
        let f = ExpPoly { k: 1, a: 0.9 }.cone(m).unwrap();
        let big = ExpPoly { k: 1, a: 0.9 }.tube_image(m).unwrap();
        let cone = eval_whittaker_cone_n(&WhittakerVector::new(Model::ConeL2, Side::N, v, eta).unwrap(), &f).unwrap();
        let gt = gamma_tilde_scalar(&ExponentVector::uniform(alg, m), alg).unwrap();
        let tube = tube_whittaker_pairing(&WhittakerVector::new(Model::Tube, Side::N, v, eta).unwrap(), &big, &p).unwrap().value;
        assert!(rel(tube, cone * (2.0 * PI).sqrt() * gt) < 1e-3, "{tube} {cone}");
        let disk_f = cayley_on_functions(&big).unwrap();
        let disk = disk_whittaker_pairing(&WhittakerVector::new(Model::Disk, Side::N, v, eta).unwrap(), &disk_f, &p).unwrap().value;
        assert!(rel(disk * 4.0, cone * (2.0 * PI).sqrt() * gt) < 1e-3, "{disk}");
    }

    #[test]
    fn matrix_coefficient_values_and_norm() {
        let p = GridProfile::default();
        for alg in [Algebra::RANK_ONE, Algebra::SYM2] {
            let e = alg.unit();
            let r = alg.rank() as f64;
            let m = if alg.rank() == 1 { 3.0 } else { 3.5 };
            let val = matrix_coeff_lowest_ktype(alg, m, &e, c(1.0, 0.0), &e).unwrap();
            assert!((val - (-2.0 * r).exp()).abs() < 1e-15);
            let mc = MatrixCoefficient::new(alg, m, e, c(1.0, 0.0)).unwrap();
            let raw = mc.gn_norm(&p).unwrap().value / gn_measure_constant(alg);
            let gt = gamma_tilde_scalar(&ExponentVector::uniform(alg, m), alg).unwrap();
            assert!((raw - gt).abs() / gt < 1e-5, "{raw} vs {gt}");
        }
        assert!(matches!(MatrixCoefficient::new(Algebra::RANK_ONE, 1.0, Algebra::RANK_ONE.unit(), c(1.0, 0.0)), Err(ConeError::Divergence(_))));
    }

    #[test]
    fn general_v_jacobian() {
        let p = GridProfile::default();
        let m = 3.5;
        let alg = Algebra::SYM2;
        let at_e = MatrixCoefficient::new(alg, m, alg.unit(), c(1.0, 0.0)).unwrap().gn_norm(&p).unwrap().value;
        let mc = MatrixCoefficient::new(alg, m, JordanElement::sym2(1.5, 0.8, 0.2), c(1.0, 0.0)).unwrap();
        let at_v = mc.gn_norm(&p).unwrap().value * mc.v_jacobian();
        assert!((at_v - at_e).abs() / at_e < 1e-5);
    }

    #[test]
    fn threshold_dichotomy() {
        let p = GridProfile::default();
        for alg in [Algebra::RANK_ONE, Algebra::SYM2] {
            let t = 2.0 * alg.n_over_r() - 1.0;
            assert!(!matrix_coeff_divergence_probe(alg, t + 0.1, 40, &p).unwrap().is_divergent());
            assert!(matrix_coeff_divergence_probe(alg, t - 0.1, 40, &p).unwrap().is_divergent());
        }
    }
}
