//! Divergence detection from geometric shell contributions.

use alloc::vec::Vec;

#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TailVerdict {
    /// Shell contributions shrink geometrically; `tail` extrapolates the remainder.
    Convergent { partial: f64, tail: f64, ratio: f64 },
    Divergent { partial: f64, ratio: f64 },
}

impl TailVerdict {
    pub fn is_divergent(&self) -> bool {
        matches!(self, TailVerdict::Divergent { .. })
    }

    pub fn ratio(&self) -> f64 {
        match *self {
            TailVerdict::Convergent { ratio, .. } | TailVerdict::Divergent { ratio, .. } => ratio,
        }
    }
}

/// Evaluates `shells` nonnegative contributions `c_0, c_1, …` (for instance
/// integrals over `[2^k, 2^{k+1}]`) and classifies the series by the ratio
/// of the last shells.
pub fn monitor_shells(shell: impl Fn(usize) -> Result<f64>, shells: usize) -> Result<TailVerdict> {
    let shells = shells.max(3);
    let mut c = Vec::with_capacity(shells);
    for k in 0..shells {
        c.push(shell(k)?.abs());
    }
    let partial: f64 = c.iter().sum();
    let (a, b) = (c[shells - 3], c[shells - 1]);
    let ratio = if a > 0.0 {
        (b / a).sqrt()
    } else if b > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    if ratio >= 1.0 || !partial.is_finite() {
        return Ok(TailVerdict::Divergent { partial, ratio });
    }
    let tail = c[shells - 1] * ratio / (1.0 - ratio);
    Ok(TailVerdict::Convergent { partial, tail, ratio })
}
