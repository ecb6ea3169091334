//! Deterministic adaptive quadrature: Gauss–Kronrod panels, interval maps
//! for infinite ranges, nested 2-D/3-D integration, cone parameterizations,
//! oscillatory line integrals and a divergence monitor.

mod gk;
mod omega;
mod oscillatory;
mod tail;

use alloc::string::{String, ToString};
use core::cell::{Cell, RefCell};
use core::ops::{Add, Div, Mul, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ConeError, Result};

pub use omega::{gn_measure_constant, integrate_gn_lowest_ktype, integrate_omega, integrate_omega_invariant, OMEGA_MEASURE_FACTOR};
pub use oscillatory::{integrate_oscillatory_line, wynn_epsilon};
pub use tail::{monitor_shells, TailVerdict};

/// Values that can be integrated: `f64` and `Complex64`.
pub trait QuadValue:
    Copy + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Div<Output = Self> + core::fmt::Debug
{
    fn magnitude(&self) -> f64;
    fn is_finite_value(&self) -> bool {
        self.magnitude().is_finite()
    }
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Named quadrature settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridProfile {
    pub name: String,
    /// Initial panel counts for the outer, middle and inner dimension.
    pub panels: [usize; 3],
    /// Maximum number of panels per adaptive 1-D integration.
    pub depth: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl GridProfile {
    pub const NAMES: [&'static str; 3] = ["fast", "default", "strict"];

    pub fn fast() -> Self {
        Self { name: "fast".to_string(), panels: [2, 2, 2], depth: 200, abs_tol: 1e-14, rel_tol: 1e-6 }
    }

    pub fn default_profile() -> Self {
        Self { name: "default".to_string(), panels: [4, 4, 4], depth: 500, abs_tol: 1e-16, rel_tol: 1e-9 }
    }

    pub fn strict() -> Self {
        Self { name: "strict".to_string(), panels: [8, 8, 8], depth: 2000, abs_tol: 1e-18, rel_tol: 1e-11 }
    }

    /// One of the registered profiles.
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "fast" => Ok(Self::fast()),
            "default" => Ok(Self::default_profile()),
            "strict" => Ok(Self::strict()),
            other => Err(ConeError::InvalidArgument(alloc::format!("unknown grid profile `{other}`"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.panels.iter().any(|&p| p == 0) || self.depth == 0 {
            return Err(ConeError::invalid("panel counts and depth must be positive"));
        }
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) {
            return Err(ConeError::invalid("tolerances must be positive"));
        }
        Ok(())
    }

    /// Same profile with a different relative target.
    pub fn with_rel_tol(&self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self.clone() }
    }
}

impl Default for GridProfile {
    fn default() -> Self {
        Self::default_profile()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralResult<T = f64> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl<T: QuadValue> IntegralResult<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> IntegralResult<U> {
        IntegralResult { value: f(self.value), error_estimate: self.error_estimate, evaluations: self.evaluations }
    }

    pub fn scaled(self, c: f64) -> Self {
        IntegralResult { value: self.value * c, error_estimate: self.error_estimate * c.abs(), evaluations: self.evaluations }
    }
}

/// Integration range on the real line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Interval {
    Finite(f64, f64),
    /// `[a, ∞)`.
    From(f64),
    /// `(−∞, b]`.
    UpTo(f64),
    Whole,
}

impl Interval {
    /// Parameter range and substitution `t ↦ (x, dx/dt)`.
    fn chart(self) -> (f64, f64, impl Fn(f64) -> (f64, f64)) {
        let (lo, hi) = match self {
            Interval::Finite(a, b) => (a, b),
            Interval::From(_) | Interval::UpTo(_) => (0.0, 1.0),
            Interval::Whole => (-1.0, 1.0),
        };
        let map = move |t: f64| match self {
            Interval::Finite(..) => (t, 1.0),
            Interval::From(a) => {
                let q = 1.0 - t;
                (a + t / q, 1.0 / (q * q))
            }
            Interval::UpTo(b) => {
                let q = 1.0 - t;
                (b - t / q, 1.0 / (q * q))
            }
            Interval::Whole => {
                let q = 1.0 - t * t;
                (t / q, (1.0 + t * t) / (q * q))
            }
        };
        (lo, hi, map)
    }
}

/// Integrand values that are not finite far out on an infinite range are
/// treated as underflowed decay.
fn mapped<T: QuadValue>(x: f64, jac: f64, v: T) -> T {
    let out = v * jac;
    if !out.is_finite_value() && (x.abs() > 1e8 || !x.is_finite()) {
        T::zero()
    } else {
        out
    }
}

struct Tolerances {
    panels: usize,
    depth: usize,
    abs_tol: f64,
    rel_tol: f64,
}

fn raw_1d<T: QuadValue>(f: &mut dyn FnMut(f64) -> T, iv: Interval, tol: &Tolerances) -> gk::Adaptive<T> {
    let (lo, hi, chart) = iv.chart();
    let mut g = |t: f64| {
        let (x, jac) = chart(t);
        mapped(x, jac, f(x))
    };
    gk::adaptive(&mut g, lo, hi, tol.panels, tol.depth, tol.abs_tol, tol.rel_tol)
}

fn finish<T: QuadValue>(value: T, error: f64, evaluations: usize, profile: &GridProfile) -> Result<IntegralResult<T>> {
    let target = profile.abs_tol.max(profile.rel_tol * value.magnitude());
    if !value.is_finite_value() {
        return Err(ConeError::Divergence("integral evaluated to a non-finite value".to_string()));
    }
    if error > target {
        return Err(ConeError::Precision { estimate: error, target });
    }
    Ok(IntegralResult { value, error_estimate: error, evaluations })
}

/// Adaptive 1-D integral of `f` over `iv`.
pub fn integrate_1d<T: QuadValue>(f: impl Fn(f64) -> T, iv: Interval, profile: &GridProfile) -> Result<IntegralResult<T>> {
    profile.validate()?;
    let tol = Tolerances { panels: profile.panels[0], depth: profile.depth, abs_tol: profile.abs_tol, rel_tol: profile.rel_tol };
    let mut g = |x: f64| f(x);
    let r = raw_1d(&mut g, iv, &tol);
    finish(r.value, r.error, r.evaluations, profile)
}

/// Value of an inner integral together with its error estimate; the outer
/// rule integrates both, so inner errors are weighted like the values.
#[derive(Clone, Copy, Debug)]
struct Paired<T> {
    value: T,
    error: f64,
}

impl<T: QuadValue> Zero for Paired<T> {
    fn zero() -> Self {
        Paired { value: T::zero(), error: 0.0 }
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.error == 0.0
    }
}

impl<T: QuadValue> One for Paired<T> {
    fn one() -> Self {
        Paired { value: T::one(), error: 0.0 }
    }
}

impl<T: QuadValue> Add for Paired<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Paired { value: self.value + rhs.value, error: self.error + rhs.error }
    }
}

impl<T: QuadValue> Sub for Paired<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Paired { value: self.value - rhs.value, error: self.error + rhs.error }
    }
}

impl<T: QuadValue> Mul<f64> for Paired<T> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Paired { value: self.value * rhs, error: self.error * rhs.abs() }
    }
}

impl<T: QuadValue> Mul for Paired<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Paired { value: self.value * rhs.value, error: 0.0 }
    }
}

impl<T: QuadValue> Div for Paired<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Paired { value: self.value / rhs.value, error: 0.0 }
    }
}

impl<T: QuadValue> QuadValue for Paired<T> {
    fn magnitude(&self) -> f64 {
        self.value.magnitude()
    }
    fn is_finite_value(&self) -> bool {
        self.value.is_finite_value() && self.error.is_finite()
    }
}

fn tolerances(profile: &GridProfile, dim: usize, scale: f64) -> Tolerances {
    Tolerances { panels: profile.panels[dim], depth: profile.depth, abs_tol: scale * profile.abs_tol, rel_tol: scale * profile.rel_tol }
}

/// `∫∫ f(x, y) dy dx` with `y` integrated innermost.
///
/// The outer rule gets most of the error budget; inner rules run ten times
/// tighter per level.
pub fn integrate_2d<T: QuadValue>(
    f: impl Fn(f64, f64) -> T,
    outer: Interval,
    inner: Interval,
    profile: &GridProfile,
) -> Result<IntegralResult<T>> {
    profile.validate()?;
    let evaluations = Cell::new(0usize);
    let inner_tol = tolerances(profile, 1, 0.1);
    let mut outer_f = |x: f64| {
        let mut g = |y: f64| f(x, y);
        let r = raw_1d(&mut g, inner, &inner_tol);
        evaluations.set(evaluations.get() + r.evaluations);
        Paired { value: r.value, error: r.error }
    };
    let r = raw_1d(&mut outer_f, outer, &tolerances(profile, 0, 0.85));
    finish(r.value.value, r.error + r.value.error, evaluations.get(), profile)
}

/// `∫∫∫ f(x, y, z) dz dy dx` with `z` innermost.
pub fn integrate_3d<T: QuadValue>(
    f: impl Fn(f64, f64, f64) -> T,
    outer: Interval,
    middle: Interval,
    inner: Interval,
    profile: &GridProfile,
) -> Result<IntegralResult<T>> {
    profile.validate()?;
    let evaluations = Cell::new(0usize);
    let mid_tol = tolerances(profile, 1, 0.1);
    let inner_tol = tolerances(profile, 2, 0.01);
    let mut outer_f = |x: f64| {
        let mut mid_f = |y: f64| {
            let mut g = |z: f64| f(x, y, z);
            let r = raw_1d(&mut g, inner, &inner_tol);
            evaluations.set(evaluations.get() + r.evaluations);
            Paired { value: r.value, error: r.error }
        };
        let r = raw_1d(&mut mid_f, middle, &mid_tol);
        Paired { value: r.value.value, error: r.error + r.value.error }
    };
    let r = raw_1d(&mut outer_f, outer, &tolerances(profile, 0, 0.85));
    finish(r.value.value, r.error + r.value.error, evaluations.get(), profile)
}

/// Collects the first error raised inside an infallible integrand.
pub(crate) struct Trap {
    first: RefCell<Option<ConeError>>,
}

impl Trap {
    pub fn new() -> Self {
        Self { first: RefCell::new(None) }
    }

    pub fn guard<T: Zero>(&self, r: Result<T>) -> T {
        match r {
            Ok(v) => v,
            Err(e) => {
                let mut slot = self.first.borrow_mut();
                if slot.is_none() {
                    *slot = Some(e);
                }
                T::zero()
            }
        }
    }

    pub fn finish<T>(self, r: Result<T>) -> Result<T> {
        match self.first.into_inner() {
            Some(e) => Err(e),
            None => r,
        }
    }
}
