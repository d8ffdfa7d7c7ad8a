//! Majorization predicates on real vectors and spectra.
//!
//! `u ≺ v` holds when every descending prefix sum of u is at most that of v,
//! with equal totals. The spectral form λ(ρ ⊞_a σ) ≺ a λ(ρ) + (1-a) λ(σ) is
//! the workhorse relation verified by the fuzz campaigns: it must always
//! hold, so any failure beyond tolerance indicates an implementation bug
//! rather than mathematics.

use crate::channels::{boxplus_closed_form, SwapParams};
use crate::error::{Error, Result};
use crate::states::DensityMatrix;

/// Default slack tolerance for majorization checks. Prefix sums accumulate
/// eigensolver error linearly in d; this is generous for d <= 64.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Outcome of a majorization check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajorizationReport {
    /// Whether u ≺ v at the requested tolerance.
    pub holds: bool,
    /// Most negative prefix-sum margin min_k (sum_k v - sum_k u); negative
    /// values mean a violated prefix.
    pub worst_slack: f64,
    /// 1-based prefix length attaining the worst slack.
    pub worst_k: usize,
    /// |total(u) - total(v)|, which must vanish for majorization.
    pub total_mismatch: f64,
}

/// Check u ≺ v for arbitrary real vectors of equal length.
pub fn majorizes(u: &[f64], v: &[f64], tol: f64) -> Result<MajorizationReport> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let sort_desc = |xs: &[f64]| {
        let mut s = xs.to_vec();
        s.sort_by(|a, b| b.partial_cmp(a).expect("no NaN entries"));
        s
    };
    let us = sort_desc(u);
    let vs = sort_desc(v);
    let mut pu = 0.0;
    let mut pv = 0.0;
    let mut worst_slack = f64::INFINITY;
    let mut worst_k = 0;
    for (k, (a, b)) in us.iter().zip(vs.iter()).enumerate() {
        pu += a;
        pv += b;
        let slack = pv - pu;
        if slack < worst_slack {
            worst_slack = slack;
            worst_k = k + 1;
        }
    }
    let total_mismatch = (pv - pu).abs();
    Ok(MajorizationReport {
        holds: worst_slack >= -tol && total_mismatch <= tol,
        worst_slack,
        worst_k,
        total_mismatch,
    })
}

/// Verify λ(ρ ⊞_a σ) ≺ a λ(ρ) + (1-a) λ(σ).
pub fn check_spectral_majorization(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    p: SwapParams,
    tol: f64,
) -> Result<MajorizationReport> {
    let out = boxplus_closed_form(rho, sigma, p)?;
    let lo = out.spectrum()?;
    let lr = rho.spectrum()?;
    let ls = sigma.spectrum()?;
    let a = p.a();
    let mix: Vec<f64> = lr
        .values()
        .iter()
        .zip(ls.values())
        .map(|(x, y)| a * x + (1.0 - a) * y)
        .collect();
    majorizes(lo.values(), &mix, tol)
}

/// Scalar inequality xy + sqrt(x(1-x)y(1-y)) >= min(x, y) on [0,1]^2,
/// checked within the stated tolerance.
pub fn min_inequality_check(x: f64, y: f64) -> bool {
    min_inequality_margin(x, y) >= -1e-14
}

/// Margin of the scalar inequality; nonnegative wherever it holds exactly.
pub fn min_inequality_margin(x: f64, y: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
    x * y + (x * (1.0 - x) * y * (1.0 - y)).sqrt() - x.min(y)
}
