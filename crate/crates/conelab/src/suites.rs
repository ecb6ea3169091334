//! Verification suites. Each suite turns a [`SuiteConfig`] into a list of
//! [`VerificationReport`]s; numeric errors become failing records.

use std::f64::consts::PI;

use conelab_core::cone::{
    bessel_identity_rhs, bessel_transform, gamma_cone, gamma_tilde_scalar, BesselSeriesConfig,
};
use conelab_core::jordan::{jmul, jtrace, power_function, quad_rep, trace_form};
use conelab_core::models::{
    act_cone_l2, cayley_on_functions, lowest_ktype_cone, ExpPoly, GroupGenerator, Model,
};
use conelab_core::plancherel::{
    formal_dimension_numeric, formal_dimension_su11, gamma_tilde_quadrature, lkt_norm_closed, lkt_norm_quadrature,
    orthogonality_constant, orthogonality_factorization_check, shape_fit_report, FormalDimensionRecord,
    ORTHOGONALITY_PAIRS,
};
use conelab_core::quadrature::{gn_measure_constant, integrate_omega};
use conelab_core::report::Metric;
use conelab_core::su11::{
    gn_norm_closed, gn_norm_fn, hardy_boundary_check, in_contraction_semigroup, pkn_decompose,
    psi_kernel_covariance_check, random_su11, GnNorm, SL2Element,
};
use conelab_core::whittaker::{
    disk_whittaker_pairing, equivariance_samples, eval_whittaker_cone_n, matrix_coeff_divergence_probe,
    tube_whittaker_pairing, MatrixCoefficient, Side, WhittakerVector,
};
use conelab_core::{Algebra, AlgebraFamily, Complex64, ExponentVector, GridProfile, JordanElement, VerificationReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{SuiteConfig, SuiteName};

type CoreResult<T> = conelab_core::Result<T>;

/// Records produced by one suite run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutput {
    pub records: Vec<VerificationReport>,
    pub formal_dimension: Vec<FormalDimensionRecord>,
}

impl SuiteOutput {
    fn from_records(records: Vec<VerificationReport>) -> Self {
        SuiteOutput { records, formal_dimension: Vec::new() }
    }

    fn extend(&mut self, other: SuiteOutput) {
        self.records.extend(other.records);
        self.formal_dimension.extend(other.formal_dimension);
    }
}

/// Parts of the SU(1,1) machinery reachable as `su11 <cmd>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Su11Cmd {
    /// `P⁺K_ℂN_ℂ` reconstruction, the `a_t` factors and the semigroup.
    Factor,
    /// `‖F_n‖²` on `G/N`, with divergence probes outside `n > 1, v > 0`.
    Norm,
    /// Hardy boundary values along the contraction ray.
    Hardy,
    /// Covariance laws of the kernel `Ψ`.
    Psi,
}

fn guard(check: &str, r: CoreResult<Vec<VerificationReport>>) -> Vec<VerificationReport> {
    r.unwrap_or_else(|e| vec![VerificationReport::errored(check, &e.to_string())])
}

fn rel_c(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// Runs one suite; `all` fans the concrete suites out over threads and keeps
/// their order in the output.
pub fn run(cfg: &SuiteConfig) -> SuiteOutput {
    match cfg.suite {
        SuiteName::All => {
            let parts: Vec<SuiteOutput> = std::thread::scope(|s| {
                let handles: Vec<_> = SuiteName::CONCRETE
                    .iter()
                    .map(|&name| {
                        let mut sub = cfg.clone();
                        sub.suite = name;
                        // Suite-specific grids do not carry over.
                        sub.samples = None;
                        sub.m = None;
                        sub.n = None;
                        sub.v = None;
                        s.spawn(move || run(&sub))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
            });
            let mut out = SuiteOutput::default();
            for p in parts {
                out.extend(p);
            }
            out
        }
        SuiteName::Jordan => SuiteOutput::from_records(jordan(cfg)),
        SuiteName::Gamma => SuiteOutput::from_records(gamma(cfg)),
        SuiteName::Su11 => {
            let mut out = su11(Su11Cmd::Factor, cfg);
            out.extend(su11(Su11Cmd::Norm, cfg));
            out
        }
        SuiteName::Whittaker => SuiteOutput::from_records(whittaker(cfg)),
        SuiteName::LktNorm => SuiteOutput::from_records(lkt_norm(cfg)),
        SuiteName::FormalDim => formal_dim(cfg),
        SuiteName::Orthogonality => SuiteOutput::from_records(orthogonality(cfg)),
        SuiteName::Bessel => SuiteOutput::from_records(bessel(cfg)),
        SuiteName::Kernel => {
            let mut out = su11(Su11Cmd::Psi, cfg);
            out.extend(su11(Su11Cmd::Hardy, cfg));
            out
        }
        SuiteName::Calibration => SuiteOutput::from_records(guard(
            "calibration",
            conelab_core::calibration::calibration_reports(&cfg.profile),
        )),
    }
}

fn random_element(alg: Algebra, rng: &mut ChaCha8Rng) -> JordanElement {
    let mut g = || rng.random_range(-2.0..2.0);
    match alg.family() {
        AlgebraFamily::RankOneReal => JordanElement::scalar(g()),
        AlgebraFamily::SymMatrices2 => JordanElement::sym2(g(), g(), g()),
    }
}

/// Algebraic identities on random samples. Errors are normwise: they are
/// divided by the matching power of `max|x|` and `max|y|`.
pub fn jordan(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let samples = cfg.samples.unwrap_or(1000);
    let mut out = Vec::new();
    for alg in cfg.algebras() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let (mut fund, mut det, mut comm, mut trace) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for _ in 0..samples {
            let x = random_element(alg, &mut rng);
            let y = random_element(alg, &mut rng);
            let (sx, sy) = (x.max_abs().max(1e-3), y.max_abs().max(1e-3));
            let px = quad_rep(&x);
            let lhs = quad_rep(&px.apply(&y));
            let rhs = px * quad_rep(&y) * px;
            fund = fund.max(lhs.distance(&rhs) / (sx.powi(4) * sy.powi(2)));
            let d = px.apply(&y).det() - x.det().powi(2) * y.det();
            let r = alg.rank() as i32;
            det = det.max(d.abs() / (sx.powi(2 * r) * sy.powi(r)));
            match (jmul(&x, &y), jmul(&y, &x), trace_form(&x, &y)) {
                (Ok(a), Ok(b), Ok(t)) => {
                    comm = comm.max((a - b).max_abs() / (sx * sy));
                    trace = trace.max((jtrace(&a) - t).norm() / (sx * sy));
                }
                _ => comm = f64::INFINITY,
            }
        }
        let tag = |r: VerificationReport| {
            r.with_algebra(alg.name())
                .with_param("samples", samples as f64)
                .with_param("seed", cfg.seed as f64)
                .with_note("normwise relative error")
        };
        out.push(tag(VerificationReport::max_deviation("jordan_fundamental_identity", Metric::Relative, fund, 1e-10)));
        out.push(tag(VerificationReport::max_deviation("jordan_det_quadratic", Metric::Relative, det, 1e-10)));
        out.push(tag(VerificationReport::max_deviation("jordan_commutativity", Metric::Relative, comm, 1e-14)));
        out.push(tag(VerificationReport::max_deviation("jordan_trace_form", Metric::Relative, trace, 1e-13)));
    }
    out
}

/// Exponent vectors certified by the `gamma` suite.
pub fn gamma_vectors(alg: Algebra, m: Option<&[f64]>) -> Vec<ExponentVector> {
    if let Some(ms) = m {
        return ms.iter().map(|&s| ExponentVector::uniform(alg, s)).collect();
    }
    let raw: &[&[f64]] = match alg.family() {
        AlgebraFamily::RankOneReal => &[&[1.5], &[2.0], &[2.5], &[3.7], &[5.0]],
        // Δ^{s2−3/2} stays smooth or mildly singular at the boundary, which
        // keeps the strict profile fast.
        AlgebraFamily::SymMatrices2 => &[&[2.5, 2.5], &[3.5, 1.5], &[4.0, 2.5], &[5.0, 3.0], &[5.5, 3.5]],
    };
    raw.iter().map(|s| ExponentVector::new(s).expect("valid exponent vector")).collect()
}

/// `Γ_Ω(s)` against quadrature of `∫_Ω e^{−tr x} Δ_s(x) Δ(x)^{−n/r} dx`.
pub fn gamma_cone_quadrature(s: &ExponentVector, alg: Algebra, profile: &GridProfile) -> CoreResult<(f64, f64, f64)> {
    let closed = gamma_cone(s, alg)?;
    let nr = alg.n_over_r();
    let q = integrate_omega(
        |x| (-x.tr()).exp() * power_function(x, s).unwrap_or(f64::NAN) * x.det().powf(-nr),
        alg,
        profile,
    )?;
    Ok((closed, q.value, q.error_estimate))
}

pub fn gamma(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for alg in cfg.algebras() {
        let tol = if alg.rank() == 1 { 1e-5 } else { 1e-4 };
        for s in gamma_vectors(alg, cfg.m.as_deref()) {
            let mut rep = match gamma_cone_quadrature(&s, alg, &cfg.profile) {
                Ok((closed, q, err)) => VerificationReport::relative("gamma_cone_quadrature", q, closed, tol).with_param("error_estimate", err),
                Err(e) => VerificationReport::errored("gamma_cone_quadrature", &e.to_string()),
            };
            for (k, x) in s.entries().iter().enumerate() {
                rep = rep.with_param(&format!("s{}", k + 1), *x);
            }
            out.push(rep.with_algebra(alg.name()).with_profile(&cfg.profile));
        }
    }
    out
}

/// Default `(n, v)` pairs of `su11 norm`, two of them outside the square-integrable range.
pub const GN_PAIRS: [(i32, f64); 6] = [(2, 1.0), (2, 2.0), (3, 1.0), (4, 0.5), (1, 1.0), (2, -1.0)];

fn nv_pairs(cfg: &SuiteConfig, default: &[(i32, f64)]) -> Vec<(i32, f64)> {
    let vs = cfg.v_scalars().ok().flatten();
    match (&cfg.n, vs) {
        (None, None) => default.to_vec(),
        (ns, vs) => {
            let ns = ns.clone().unwrap_or_else(|| vec![default[0].0]);
            let vs = vs.unwrap_or_else(|| vec![default[0].1]);
            ns.iter().flat_map(|&n| vs.iter().map(move |&v| (n, v))).collect()
        }
    }
}

pub fn su11(cmd: Su11Cmd, cfg: &SuiteConfig) -> SuiteOutput {
    let records = match cmd {
        Su11Cmd::Factor => su11_factor(cfg),
        Su11Cmd::Norm => nv_pairs(cfg, &GN_PAIRS).into_iter().map(|(n, v)| gn_record(n, v, &cfg.profile)).collect(),
        Su11Cmd::Psi => nv_pairs(cfg, &[(3, 1.5)])
            .into_iter()
            .flat_map(|(n, v)| guard("psi_kernel_covariance", psi_kernel_covariance_check(n, v, cfg.samples.unwrap_or(100), cfg.seed)))
            .collect(),
        Su11Cmd::Hardy => nv_pairs(cfg, &[(2, 2.0)])
            .into_iter()
            .flat_map(|(n, v)| guard("hardy_boundary", hardy_boundary_check(n, v, &HARDY_RHOS, &cfg.profile).map(|h| h.reports)))
            .collect(),
    };
    SuiteOutput::from_records(records)
}

/// Contraction ray `s_ρ = diag(ρ, 1/ρ)` approaching the boundary.
pub const HARDY_RHOS: [f64; 4] = [1.5, 1.2, 1.05, 1.01];

/// Closed form against quadrature inside `n > 1, v > 0`; an expected
/// divergence probe outside.
pub fn gn_record(n: i32, v: f64, profile: &GridProfile) -> VerificationReport {
    let rep = if n > 1 && v > 0.0 {
        match (gn_norm_fn(n, v, profile), gn_norm_closed(n as f64, v)) {
            (Ok(GnNorm::Finite(r)), Ok(c)) => VerificationReport::relative("gn_norm", r.value, c, 1e-8).with_grid(profile, &r),
            (Ok(GnNorm::Divergent { ratio }), _) => VerificationReport::diverged("gn_norm", ratio, 1e-8),
            (Err(e), _) | (_, Err(e)) => VerificationReport::errored("gn_norm", &e.to_string()),
        }
    } else {
        match gn_norm_fn(n, v, profile) {
            Ok(GnNorm::Divergent { ratio }) => VerificationReport::divergence_probe("gn_norm_divergence", true, ratio),
            Ok(GnNorm::Finite(r)) => VerificationReport::divergence_probe("gn_norm_divergence", false, r.value),
            Err(e) => VerificationReport::errored("gn_norm_divergence", &e.to_string()),
        }
        .with_profile(profile)
    };
    rep.with_param("n", n as f64).with_param("v", v)
}

fn su11_factor(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let samples = cfg.samples.unwrap_or(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let g = random_su11(&mut rng, 2.0);
        worst = worst.max(match pkn_decompose(&g) {
            Ok(f) => f.reassemble().distance(&g),
            Err(_) => f64::INFINITY,
        });
    }
    let mut out = vec![VerificationReport::max_deviation("pkn_reconstruction", Metric::Absolute, worst, 1e-12)
        .with_param("samples", samples as f64)
        .with_param("seed", cfg.seed as f64)];
    // k_ℂ(a_t) = k_γ with γ = e^{−t}, n_ℂ(a_t) = n_s with s = i(e^{−2t} − 1)/2.
    // Both go through c + d = sinh t + cosh t, whose rounding is amplified by
    // κ = (|c| + |d|)/|c + d|; deviations are measured in units of κ.
    let mut dev = 0.0f64;
    let mut residual = 0.0f64;
    for t in [-2.0, -1.3, -0.2, 0.0, 0.5, 1.0, 2.0] {
        let g = SL2Element::a_t(t);
        match pkn_decompose(&g) {
            Ok(f) => {
                let kappa = (g.c().norm() + g.d().norm()) / (g.c() + g.d()).norm();
                let k = Complex64::new((-t).exp(), 0.0);
                let s = Complex64::new(0.0, ((-2.0 * t).exp() - 1.0) / 2.0);
                let e = rel_c(f.k, k).max((f.n - s).norm() / s.norm().max(1.0));
                dev = dev.max(e / kappa);
                residual = residual.max(f.reassemble().distance(&g));
            }
            Err(_) => dev = f64::INFINITY,
        }
    }
    out.push(
        VerificationReport::max_deviation("a_t_factors", Metric::Relative, dev, 4.0 * f64::EPSILON)
            .with_note("k and n factors of a_t against their closed forms, relative error over the condition number of c + d"),
    );
    out.push(VerificationReport::max_deviation("a_t_reconstruction", Metric::Absolute, residual, 1e-13));
    // diag(ρ, 1/ρ) maps the circle to radius ρ².
    let rho: f64 = 0.8;
    let m = in_contraction_semigroup(&SL2Element::diag(rho), 720);
    let want = 1.0 - rho * rho;
    let rep = if m.member {
        VerificationReport::relative("semigroup_margin", m.margin, want, 1e-12)
    } else {
        VerificationReport::errored("semigroup_margin", "diag(0.8) not recognised as a contraction")
    };
    out.push(rep.with_param("rho", rho));
    out
}

/// Whittaker vectors: `N`-equivariance, cross-model agreement, the
/// matrix-coefficient norm and the square-integrability threshold.
pub fn whittaker(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let p = &cfg.profile;
    for alg in cfg.algebras() {
        out.extend(guard("whittaker_n_equivariance", whittaker_equivariance(alg, cfg)));
        out.extend(guard("matrix_coeff_norm", matrix_coeff_norm(alg, p)));
        let t = alg.discrete_series_threshold();
        for m in [t - 0.1, t + 0.1] {
            let rep = match matrix_coeff_divergence_probe(alg, m, 40, p) {
                Ok(v) if m < t => VerificationReport::divergence_probe("matrix_coeff_divergence", v.is_divergent(), v.ratio()),
                Ok(v) => VerificationReport::from_deviation("matrix_coeff_convergence", Metric::ShellRatio, v.ratio(), 0.0, v.ratio(), 1.0 - 1e-9)
                    .with_note("deviation is the shell ratio; below 1 means convergent"),
                Err(e) => VerificationReport::errored("matrix_coeff_threshold", &e.to_string()),
            };
            out.push(rep.with_algebra(alg.name()).with_param("m", m).with_param("threshold", t).with_profile(p));
        }
    }
    if cfg.algebras().contains(&Algebra::RANK_ONE) {
        out.extend(guard("whittaker_cross_model", whittaker_cross_model(p)));
    }
    out
}

fn default_v(alg: Algebra) -> JordanElement {
    match alg.family() {
        AlgebraFamily::RankOneReal => JordanElement::scalar(1.7),
        AlgebraFamily::SymMatrices2 => JordanElement::sym2(1.5, 0.8, 0.4),
    }
}

fn whittaker_equivariance(alg: Algebra, cfg: &SuiteConfig) -> CoreResult<Vec<VerificationReport>> {
    let bcfg = BesselSeriesConfig::default();
    let v = match cfg.v {
        Some(_) => cfg.v_element(alg).map_err(|e| conelab_core::ConeError::InvalidArgument(e.to_string()))?,
        None => default_v(alg),
    };
    let samples = cfg.samples.unwrap_or(100);
    let w = WhittakerVector::new(Model::ConeL2, Side::N, v, Complex64::new(0.3, -1.1))?;
    let mut worst = 0.0f64;
    for (u, f) in equivariance_samples(alg, samples, cfg.seed)? {
        let moved = act_cone_l2(&GroupGenerator::TranslationN(u), &f, &bcfg, &cfg.profile)?;
        let lhs = eval_whittaker_cone_n(&w, &moved)?;
        let rhs = (-Complex64::i() * trace_form(&u, &v)?).exp() * eval_whittaker_cone_n(&w, &f)?;
        worst = worst.max(rel_c(lhs, rhs));
    }
    Ok(vec![VerificationReport::max_deviation("whittaker_n_equivariance", Metric::Relative, worst, 4.0 * f64::EPSILON)
        .with_algebra(alg.name())
        .with_param("samples", samples as f64)
        .with_param("seed", cfg.seed as f64)
        .with_note("tolerance is four machine epsilons")])
}

fn matrix_coeff_norm(alg: Algebra, p: &GridProfile) -> CoreResult<Vec<VerificationReport>> {
    let m = if alg.rank() == 1 { 3.0 } else { 3.5 };
    let mc = MatrixCoefficient::new(alg, m, alg.unit(), Complex64::new(1.0, 0.0))?;
    let r = mc.gn_norm(p)?;
    let raw = r.value / gn_measure_constant(alg);
    let gt = gamma_tilde_scalar(&ExponentVector::uniform(alg, m), alg)?;
    Ok(vec![VerificationReport::relative("matrix_coeff_norm", raw, gt, 1e-5)
        .with_algebra(alg.name())
        .with_param("m", m)
        .with_grid(p, &r)
        .with_note("∫_{G/N}|ι|² over the G/N constant, against Γ̃")])
}

/// Cone `η f(e)`, tube `√(2π) Γ̃ η f(e)` and a quarter of that in the disk.
fn whittaker_cross_model(p: &GridProfile) -> CoreResult<Vec<VerificationReport>> {
    let (m, alg) = (3.0, Algebra::RANK_ONE);
    let v = alg.unit();
    let eta = Complex64::new(1.0, 0.0);
    let e = ExpPoly { k: 1, a: 0.9 };
    let (f, big) = (e.cone(m)?, e.tube_image(m)?);
    let cone = eval_whittaker_cone_n(&WhittakerVector::new(Model::ConeL2, Side::N, v, eta)?, &f)?;
    let gt = gamma_tilde_scalar(&ExponentVector::uniform(alg, m), alg)?;
    let want = cone * (2.0 * PI).sqrt() * gt;
    let tube = tube_whittaker_pairing(&WhittakerVector::new(Model::Tube, Side::N, v, eta)?, &big, p)?;
    let disk = disk_whittaker_pairing(&WhittakerVector::new(Model::Disk, Side::N, v, eta)?, &cayley_on_functions(&big)?, p)?;
    let rep = |name: &str, got: Complex64| {
        VerificationReport::from_deviation(name, Metric::Relative, got.norm(), want.norm(), rel_c(got, want), 1e-3)
            .with_algebra(alg.name())
            .with_param("m", m)
            .with_profile(p)
    };
    Ok(vec![
        rep("whittaker_tube_vs_cone", tube.value).with_grid(p, &tube),
        rep("whittaker_disk_vs_cone", disk.value * 4.0).with_grid(p, &disk),
    ])
}

fn default_m(alg: Algebra, suite: SuiteName) -> Vec<f64> {
    match (alg.family(), suite) {
        (AlgebraFamily::RankOneReal, _) => vec![3.0, 4.0, 5.0],
        (AlgebraFamily::SymMatrices2, SuiteName::FormalDim) => vec![3.5, 4.0, 4.5],
        (AlgebraFamily::SymMatrices2, _) => vec![3.5, 4.0],
    }
}

/// Closed-form `‖f_ξ‖²` and `Γ̃` against quadrature, and growth of the norm for `m ≥ 4`.
pub fn lkt_norm(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let p = &cfg.profile;
    for alg in cfg.algebras() {
        let tol = if alg.rank() == 1 { 1e-5 } else { 1e-4 };
        for m in cfg.m.clone().unwrap_or_else(|| default_m(alg, SuiteName::LktNorm)) {
            let rep = match (lkt_norm_quadrature(m, alg, p), lkt_norm_closed(m, alg)) {
                (Ok(q), Ok(c)) => VerificationReport::relative("lkt_norm", q.value, c, tol).with_grid(p, &q),
                (Err(e), _) | (_, Err(e)) => VerificationReport::errored("lkt_norm", &e.to_string()),
            };
            out.push(rep.with_algebra(alg.name()).with_param("m", m));
            let rep = match (gamma_tilde_quadrature(m, alg, p), gamma_tilde_scalar(&ExponentVector::uniform(alg, m), alg)) {
                (Ok(q), Ok(c)) => VerificationReport::relative("gamma_tilde", q.value, c, tol).with_grid(p, &q),
                (Err(e), _) | (_, Err(e)) => VerificationReport::errored("gamma_tilde", &e.to_string()),
            };
            out.push(rep.with_algebra(alg.name()).with_param("m", m));
        }
        let ms: Vec<f64> = (0..12).map(|k| 4.0 + 0.5 * k as f64).collect();
        let vals: CoreResult<Vec<f64>> = ms.iter().map(|&m| lkt_norm_closed(m, alg)).collect();
        let rep = match vals {
            Ok(v) => {
                let worst = v.windows(2).map(|w| ((w[0] - w[1]) / w[0]).max(0.0)).fold(0.0, f64::max);
                VerificationReport::from_deviation("lkt_norm_growth", Metric::Monotonicity, worst, 0.0, worst, 0.0)
                    .with_param("m_min", ms[0])
                    .with_param("m_max", ms[ms.len() - 1])
                    .with_note("closed form increases on the grid m = 4, 4.5, …")
            }
            Err(e) => VerificationReport::errored("lkt_norm_growth", &e.to_string()),
        };
        out.push(rep.with_algebra(alg.name()));
    }
    out
}

/// `d(π)` per weight, the shape fit across weights and, at rank 1, the
/// cross-check against the `SU(1,1)` pipeline.
pub fn formal_dim(cfg: &SuiteConfig) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    let p = &cfg.profile;
    for alg in cfg.formal_dim_algebras() {
        let v = match cfg.v_element(alg) {
            Ok(v) => v,
            Err(e) => {
                out.records.push(VerificationReport::errored("formal_dim", &e.to_string()));
                continue;
            }
        };
        let mut recs = Vec::new();
        for m in cfg.m.clone().unwrap_or_else(|| default_m(alg, SuiteName::FormalDim)) {
            if m <= alg.discrete_series_threshold() {
                let rep = match matrix_coeff_divergence_probe(alg, m, 40, p) {
                    Ok(t) => VerificationReport::divergence_probe("formal_dim_divergence", t.is_divergent(), t.ratio()),
                    Err(e) => VerificationReport::errored("formal_dim_divergence", &e.to_string()),
                };
                out.records.push(rep.with_algebra(alg.name()).with_param("m", m).with_profile(p));
                continue;
            }
            match formal_dimension_numeric(m, &v, alg, p) {
                Ok(r) => recs.push(r),
                Err(e) => out.records.push(VerificationReport::errored("formal_dim", &e.to_string()).with_param("m", m)),
            }
        }
        if recs.len() >= 2 {
            match shape_fit_report(&recs, 1e-3) {
                Ok(r) => out.records.push(r.with_profile(p)),
                Err(e) => out.records.push(VerificationReport::errored("formal_dim_shape_fit", &e.to_string())),
            }
        }
        if alg.rank() == 1 {
            let vs = v.coord(0).re;
            for r in recs.iter().filter(|r| r.m.fract() == 0.0) {
                let rep = match formal_dimension_su11(r.m, vs, p) {
                    Ok(d) => VerificationReport::relative("formal_dim_su11_cross_check", r.numeric_d, d, 1e-4),
                    Err(e) => VerificationReport::errored("formal_dim_su11_cross_check", &e.to_string()),
                };
                out.records.push(rep.with_algebra(alg.name()).with_param("m", r.m).with_param("v", vs).with_profile(p));
            }
        }
        out.formal_dimension.extend(recs);
    }
    out
}

/// The `∫ι conj(ι′)/⟨f, f′⟩` ratio over translate pairs, and its value.
pub fn orthogonality(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let alg = Algebra::RANK_ONE;
    let p = &cfg.profile;
    let v = cfg.v_element(alg).unwrap_or_else(|_| alg.unit());
    let mut out = Vec::new();
    for m in cfg.m.clone().unwrap_or_else(|| vec![3.0]) {
        match orthogonality_factorization_check(m, &v, alg, &ORTHOGONALITY_PAIRS, p) {
            Ok(rep) => {
                let computed = rep.computed;
                out.push(rep);
                let rep = match (computed, orthogonality_constant(m, v.coord(0).re)) {
                    (Some(c), Ok(want)) => VerificationReport::relative("orthogonality_constant", c, want, 1e-4),
                    (None, _) => VerificationReport::errored("orthogonality_constant", "no ratio"),
                    (_, Err(e)) => VerificationReport::errored("orthogonality_constant", &e.to_string()),
                };
                out.push(rep.with_algebra(alg.name()).with_param("m", m).with_param("v", v.coord(0).re).with_profile(p));
            }
            Err(e) => out.push(VerificationReport::errored("orthogonality_factorization", &e.to_string()).with_param("m", m)),
        }
    }
    out
}

/// Evaluation points of the Bessel defining identity.
pub const BESSEL_POINTS: [(f64, f64); 3] = [(0.0, 1.0), (0.0, 2.0), (1.0, 1.0)];

/// The rank-1 Bessel identity and the double application of `R(j)`.
pub fn bessel(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let bcfg = BesselSeriesConfig::default();
    let p = &cfg.profile;
    let mut out = Vec::new();
    let ms = cfg.m.clone().unwrap_or_else(|| vec![2.0, 2.5, 3.0]);
    for &m in &ms {
        for (re, im) in BESSEL_POINTS {
            let z = Complex64::new(re, im);
            let rep = match bessel_transform(m, z, &bcfg, p) {
                Ok(lhs) => {
                    let rhs = bessel_identity_rhs(m, z);
                    VerificationReport::from_deviation("bessel_identity", Metric::Relative, lhs.norm(), rhs.norm(), rel_c(lhs, rhs), 1e-5)
                }
                Err(e) => VerificationReport::errored("bessel_identity", &e.to_string()),
            };
            out.push(rep.with_param("m", m).with_param("z_re", re).with_param("z_im", im).with_profile(p));
        }
    }
    // Tighter inner targets run into the absolute floor of the Bessel integrals.
    let inner = p.with_rel_tol(p.rel_tol.max(INVERSION_REL_TOL));
    let notes = format!("inner Bessel integrals at relative tolerance {:e}", inner.rel_tol);
    out.extend(guard("inversion_twice", double_inversion(3.0, &inner)).into_iter().map(|r| r.with_note(&notes)));
    out
}

/// Loosest relative target of the two nested `R(j)` applications.
pub const INVERSION_REL_TOL: f64 = 1e-6;

/// Points where `R(j)²f_ξ / f_ξ` is sampled.
pub const INVERSION_POINTS: [f64; 3] = [0.5, 1.0, 2.0];

/// `R(j)² f_ξ = c f_ξ` with `|c| = 1`: the ratio is checked for constancy and modulus.
pub fn double_inversion(m: f64, p: &GridProfile) -> CoreResult<Vec<VerificationReport>> {
    let bcfg = BesselSeriesConfig::default();
    let alg = Algebra::RANK_ONE;
    let f = lowest_ktype_cone(alg, m)?;
    let j = GroupGenerator::Inversion;
    let twice = act_cone_l2(&j, &act_cone_l2(&j, &f, &bcfg, p)?, &bcfg, p)?;
    let mut ratios = Vec::new();
    for x in INVERSION_POINTS {
        let pt = JordanElement::scalar(x);
        ratios.push(twice.eval(&pt)? / f.eval(&pt)?);
    }
    let spread = ratios.iter().map(|r| rel_c(*r, ratios[0])).fold(0.0, f64::max);
    let modulus = ratios.iter().map(|r| (r.norm() - 1.0).abs()).fold(0.0, f64::max);
    let tag = |r: VerificationReport| r.with_algebra(alg.name()).with_param("m", m).with_param("phase", ratios[0].arg()).with_profile(p);
    Ok(vec![
        tag(VerificationReport::max_deviation("inversion_twice_constant_ratio", Metric::RelativeSpread, spread, 1e-4)),
        tag(VerificationReport::from_deviation("inversion_twice_unimodular", Metric::Absolute, ratios[0].norm(), 1.0, modulus, 1e-4)),
    ])
}
