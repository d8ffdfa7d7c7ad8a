//! Concavity thresholds for entropy power and the entropy-photon-number
//! condition.
//!
//! The two-valued distribution family q_{k,x} = (x,...,x, y,...,y) carries
//! the extremal surprisal variance at fixed entropy; w_{d-1} on [0, 1/d]
//! determines the largest exponent c for which exp(cH) stays concave.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::channels::{mixing_channel, SwapParams};
use crate::entropies::{g, g_inv, k, EntropyFunctional};
use crate::error::{Error, Result};
use crate::states::{random_state_with, Spectrum};

/// A distribution with k entries x and d-k entries y = (1-kx)/(d-k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoValuedDist {
    d: usize,
    k: usize,
    x: f64,
}

impl TwoValuedDist {
    pub fn new(d: usize, k: usize, x: f64) -> Result<Self> {
        if !(1..d).contains(&k) {
            return Err(Error::DomainError {
                what: "k",
                value: k as f64,
                range: "[1, d)",
            });
        }
        if !(0.0..=1.0 / d as f64).contains(&x) {
            return Err(Error::DomainError {
                what: "x",
                value: x,
                range: "[0, 1/d]",
            });
        }
        Ok(Self { d, k, x })
    }

    pub fn small_value(&self) -> f64 {
        self.x
    }

    /// y = (1 - kx)/(d - k); normalization kx + (d-k)y = 1 by construction.
    pub fn large_value(&self) -> f64 {
        (1.0 - self.k as f64 * self.x) / (self.d - self.k) as f64
    }

    pub fn to_spectrum(&self) -> Result<Spectrum> {
        let mut v = vec![self.x; self.k];
        v.extend(std::iter::repeat(self.large_value()).take(self.d - self.k));
        Spectrum::from_probabilities(&v)
    }
}

/// s_r(x) = -rx log x - (1-rx) log(1-rx): the entropy of q_{r,x} with r = d-1.
pub fn s_r(x: f64, r: usize) -> Result<f64> {
    let d = r + 1;
    check_x_domain(x, d)?;
    let rx = r as f64 * x;
    let t1 = if x > 0.0 { -rx * x.ln() } else { 0.0 };
    let rest = 1.0 - rx;
    let t2 = if rest > 0.0 { -rest * rest.ln() } else { 0.0 };
    Ok(t1 + t2)
}

/// w_r(x) = rx(1-rx)(log x - log(1-rx))^2: the surprisal variance of q_{r,x}.
pub fn w_r(x: f64, r: usize) -> Result<f64> {
    let d = r + 1;
    check_x_domain(x, d)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let rx = r as f64 * x;
    let rest = 1.0 - rx;
    if rest <= 0.0 {
        return Ok(0.0);
    }
    let lg = x.ln() - rest.ln();
    Ok(rx * rest * lg * lg)
}

fn check_x_domain(x: f64, d: usize) -> Result<()> {
    // allow one ulp of overshoot at x = 1/d from upstream arithmetic
    if x < 0.0 || x > 1.0 / d as f64 + 1e-15 {
        return Err(Error::DomainError {
            what: "x",
            value: x,
            range: "[0, 1/d]",
        });
    }
    Ok(())
}

/// Entropy of q_{k,x} over d outcomes, H(k,x) = -kx log x - (1-kx) log y.
/// Strictly increasing in x on [0, 1/d], from log(d-k) to log d.
pub fn h_two_valued(d: usize, k: usize, x: f64) -> f64 {
    debug_assert!(k >= 1 && k < d);
    if x == 0.0 {
        return ((d - k) as f64).ln();
    }
    let kx = k as f64 * x;
    let y = (1.0 - kx) / (d - k) as f64;
    if (x - y).abs() < f64::EPSILON {
        return (d as f64).ln();
    }
    -kx * x.ln() - (1.0 - kx) * y.ln()
}

/// Surprisal second moment of q_{k,x}, L(k,x) = kx (log x)^2 + (1-kx)(log y)^2.
pub fn l_two_valued(d: usize, k: usize, x: f64) -> f64 {
    debug_assert!(k >= 1 && k < d);
    if x == 0.0 {
        let ly = ((d - k) as f64).ln();
        return ly * ly;
    }
    let kx = k as f64 * x;
    let y = (1.0 - kx) / (d - k) as f64;
    if (x - y).abs() < f64::EPSILON {
        let ld = (d as f64).ln();
        return ld * ld;
    }
    kx * x.ln() * x.ln() + (1.0 - kx) * y.ln() * y.ln()
}

/// Result of the brute-force surprisal-moment maximization at fixed entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmaxResult {
    pub l_max: f64,
    /// Maximizing multiplicity of the small value; always d-1.
    pub k_star: usize,
    /// The small probability solving H(q_{k_star, x}) = H0.
    pub x_star: f64,
}

/// Maximize L(q_{k,x}) over k in {1,...,d-1} and x on the constraint curve
/// H(q_{k,x}) = H0. The per-k constraint is solved by bisection on [0, 1/d],
/// where H(k, .) is strictly increasing; k values whose entropy range does
/// not reach H0 are skipped.
pub fn l_max_bruteforce(d: usize, h0: f64, grid: usize) -> Result<LmaxResult> {
    assert!(grid >= 1_000, "grid must be at least 1e3");
    let ld = (d as f64).ln();
    if !(0.0..=ld + 1e-12).contains(&h0) {
        return Err(Error::InfeasibleEntropy { h0, dim: d });
    }
    let h0 = h0.min(ld);
    let mut best: Option<LmaxResult> = None;
    for k in 1..d {
        let h_lo = ((d - k) as f64).ln();
        if h0 < h_lo - 1e-12 {
            continue;
        }
        let x = solve_x_for_entropy(d, k, h0, grid);
        let l = l_two_valued(d, k, x);
        if best.map_or(true, |b| l > b.l_max) {
            best = Some(LmaxResult {
                l_max: l,
                k_star: k,
                x_star: x,
            });
        }
    }
    Ok(best.expect("k = d-1 is feasible for every H0 in [0, log d]"))
}

/// Solve H(q_{k,x}) = h0 for x in [0, 1/d] by bisection, seeded by a coarse
/// grid scan to bracket the crossing.
fn solve_x_for_entropy(d: usize, k: usize, h0: f64, grid: usize) -> f64 {
    let cap = 1.0 / d as f64;
    let mut lo = 0.0;
    let mut hi = cap;
    for i in 0..grid {
        let x = cap * (i + 1) as f64 / grid as f64;
        if h_two_valued(d, k, x) >= h0 {
            hi = x;
            break;
        }
        lo = x;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-15 {
            break;
        }
        if h_two_valued(d, k, mid) < h0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The entropy-power concavity threshold for dimension d.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub d: usize,
    /// c_max = (max_x w_{d-1}(x))^{-1}.
    pub c_max: f64,
    /// Maximizer of w_{d-1} on [0, 1/d].
    pub argmax_x: f64,
    /// Closed-form lower bound 1/[(1 + log(d-1))/2 + (log(d-1))^2/4].
    pub lower_bound: f64,
}

/// Compute c_max(d) by a 1e4-point grid scan over [0, 1/d] followed by
/// golden-section refinement to 1e-12 in x. The grid seed removes any
/// unimodality assumption on w_{d-1}.
pub fn c_max_entropy_power(d: usize) -> ThresholdResult {
    assert!(d >= 2);
    let r = d - 1;
    let cap = 1.0 / d as f64;
    let grid = 10_000;
    let w = |x: f64| w_r(x, r).expect("x inside [0, 1/d]");

    let mut best_i: usize = 0;
    let mut best_w = -1.0;
    for i in 0..=grid {
        let x = cap * i as f64 / grid as f64;
        let v = w(x);
        if v > best_w {
            best_w = v;
            best_i = i;
        }
    }
    let lo = cap * best_i.saturating_sub(1) as f64 / grid as f64;
    let hi = cap * (best_i + 1).min(grid) as f64 / grid as f64;
    let (argmax_x, w_max) = golden_section_max(w, lo, hi, 1e-12);

    let lr = (r as f64).ln();
    let lower_bound = 1.0 / ((1.0 + lr) / 2.0 + lr * lr / 4.0);
    ThresholdResult {
        d,
        c_max: 1.0 / w_max,
        argmax_x,
        lower_bound,
    }
}

/// Golden-section search for the maximum of f on [lo, hi].
fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let xm = 0.5 * (lo + hi);
    (xm, f(xm))
}

/// Check the entropy-photon-number condition for dimension d and scale c:
/// with y solving g(y) = c s_r(x), require k(y) >= c w_r(x) on an x-grid
/// over (0, 1/d]. Returns overall success and the worst margin.
pub fn epni_condition_check(d: usize, c: f64, grid: usize) -> (bool, f64) {
    assert!(c > 0.0, "scale must be positive");
    assert!(grid >= 1_000, "grid must be at least 1e3");
    let r = d - 1;
    let cap = 1.0 / d as f64;
    let mut worst = f64::INFINITY;
    for i in 1..=grid {
        let x = cap * i as f64 / grid as f64;
        let s = s_r(x, r).expect("x in domain");
        let w = w_r(x, r).expect("x in domain");
        let y = g_inv(c * s).expect("c s >= 0");
        let margin = k(y).expect("y >= 0") - c * w;
        if margin < worst {
            worst = margin;
        }
    }
    (worst >= -1e-10, worst)
}

/// Midpoint-concavity fuzz along random mixing segments:
/// phi(p) = f(p rho + (1-p) sigma) must satisfy
/// phi((p1+p2)/2) >= (phi(p1) + phi(p2))/2. Returns the most negative
/// observed margin. Midpoint form avoids the eigensolver noise that second
/// differences amplify.
pub fn concavity_fuzz(
    f: EntropyFunctional,
    d: usize,
    trials: u64,
    seed: u64,
    force_range: bool,
) -> Result<f64> {
    if !f.certified_for(d) && !force_range {
        return Err(Error::OutOfCertifiedRange {
            label: f.label(),
            dim: d,
        });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..trials {
        let rank1 = rng.gen_range(1..=d);
        let rank2 = rng.gen_range(1..=d);
        let rho = random_state_with(&mut rng, d, rank1);
        let sigma = random_state_with(&mut rng, d, rank2);
        let p1: f64 = rng.gen_range(0.0..=1.0);
        let p2: f64 = rng.gen_range(0.0..=1.0);
        let phi = |p: f64| -> Result<f64> {
            let mixed = mixing_channel(&rho, &sigma, SwapParams::new(p)?)?;
            f.evaluate(&mixed.spectrum()?)
        };
        let margin = phi(0.5 * (p1 + p2))? - 0.5 * (phi(p1)? + phi(p2)?);
        if margin < worst {
            worst = margin;
        }
    }
    Ok(worst)
}

/// Sample the parametric curve (g(y), k(y)) with y log-spaced over
/// (1e-6, 1e6). Its slope k'/g' is positive and decreasing, so the sampled
/// polyline must be increasing and concave.
pub fn parametric_gk_curve(samples: usize) -> Vec<(f64, f64)> {
    assert!(samples >= 2);
    let (lo, hi) = (1e-6f64, 1e6f64);
    let lg_lo = lo.ln();
    let lg_hi = hi.ln();
    (0..samples)
        .map(|i| {
            let t = i as f64 / (samples - 1) as f64;
            let y = (lg_lo + t * (lg_hi - lg_lo)).exp();
            (g(y).expect("y > 0"), k(y).expect("y > 0"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropies::{ep_certified_max, pn_certified_max, surprisal_moments};

    #[test]
    fn two_valued_dist_normalizes_exactly() {
        let q = TwoValuedDist::new(5, 3, 0.1).unwrap();
        let kx = 3.0 * q.small_value();
        let rest = 2.0 * q.large_value();
        assert!((kx + rest - 1.0).abs() < 1e-15);
        assert!(q.small_value() <= 0.2 && q.large_value() > 0.2);
        assert!(TwoValuedDist::new(5, 5, 0.1).is_err());
        assert!(TwoValuedDist::new(5, 2, 0.3).is_err());
    }

    #[test]
    fn s_and_w_at_uniform_point() {
        let d = 5;
        let x = 1.0 / d as f64;
        assert!((s_r(x, d - 1).unwrap() - (d as f64).ln()).abs() < 1e-12);
        assert!(w_r(x, d - 1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn s_and_w_at_deterministic_point() {
        assert_eq!(s_r(0.0, 4).unwrap(), 0.0);
        assert_eq!(w_r(0.0, 4).unwrap(), 0.0);
    }

    #[test]
    fn s_and_w_match_surprisal_moments() {
        for d in [3usize, 4, 7] {
            let r = d - 1;
            for i in 1..10 {
                let x = i as f64 / (10 * d) as f64;
                let q = TwoValuedDist::new(d, r, x).unwrap();
                let m = surprisal_moments(&q.to_spectrum().unwrap());
                assert!((s_r(x, r).unwrap() - m.entropy).abs() < 1e-12);
                assert!((w_r(x, r).unwrap() - m.variance).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lmax_at_full_entropy_is_uniform() {
        for d in [3usize, 6] {
            let ld = (d as f64).ln();
            let res = l_max_bruteforce(d, ld, 1_000).unwrap();
            assert!((res.l_max - ld * ld).abs() < 1e-9);
            assert!((res.x_star - 1.0 / d as f64).abs() < 1e-6);
        }
    }

    #[test]
    fn lmax_maximizer_is_k_equals_d_minus_one() {
        for d in [3usize, 4, 6] {
            let ld = (d as f64).ln();
            for i in 1..=20 {
                let h0 = ld * i as f64 / 21.0;
                let res = l_max_bruteforce(d, h0, 1_000).unwrap();
                assert_eq!(res.k_star, d - 1, "d={d} h0={h0}");
                // identity L_max - H0^2 = w_{d-1}(x*)
                let w = w_r(res.x_star, d - 1).unwrap();
                assert!(
                    (res.l_max - h0 * h0 - w).abs() < 1e-8,
                    "d={d} h0={h0}: {} vs {w}",
                    res.l_max - h0 * h0
                );
            }
        }
    }

    #[test]
    fn lmax_rejects_infeasible_entropy() {
        assert!(matches!(
            l_max_bruteforce(4, 2.0, 1_000),
            Err(Error::InfeasibleEntropy { .. })
        ));
        assert!(matches!(
            l_max_bruteforce(4, -0.1, 1_000),
            Err(Error::InfeasibleEntropy { .. })
        ));
    }

    #[test]
    fn cmax_qubit_value() {
        let t = c_max_entropy_power(2);
        assert!((t.c_max - 2.2767175312280727).abs() < 1e-9, "{}", t.c_max);
        // the maximum is locally quadratic, so the abscissa is only sqrt(eps)-determined
        assert!((t.argmax_x - 0.08322171678219475).abs() < 1e-6);
        // comparison value 1/(log 2)^2
        assert!((ep_certified_max(2) - 2.0813689810056077).abs() < 1e-12);
        assert!(t.c_max > ep_certified_max(2));
        // closed-form bound degenerates to 2 at d = 2
        assert!((t.lower_bound - 2.0).abs() < 1e-15);
    }

    #[test]
    fn cmax_invariants_across_dims() {
        for d in [3usize, 4, 8, 16, 64] {
            let t = c_max_entropy_power(d);
            assert!(t.c_max >= t.lower_bound, "d={d}");
            assert!(t.lower_bound > ep_certified_max(d), "d={d}");
            // c_max * max w = 1 by construction; re-check via w at argmax
            let w = w_r(t.argmax_x, d - 1).unwrap();
            assert!((t.c_max * w - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn cmax_ratio_trend_at_large_d() {
        let mut prev = f64::INFINITY;
        for d in [64usize, 256, 1024, 4096] {
            let t = c_max_entropy_power(d);
            let ratio = t.c_max / t.lower_bound;
            assert!(ratio >= 1.0);
            assert!(ratio < prev, "d={d}: {ratio} !< {prev}");
            prev = ratio;
        }
    }

    #[test]
    fn cmax_bounds_surprisal_variance_of_random_distributions() {
        // for h = exp the concavity condition reduces to c <= 1/V(q)
        let mut rng = ChaCha20Rng::seed_from_u64(41);
        for d in [2usize, 4, 8] {
            let t = c_max_entropy_power(d);
            for _ in 0..200 {
                let mut v: Vec<f64> = (0..d).map(|_| rng.gen_range(1e-6..1.0)).collect();
                let sum: f64 = v.iter().sum();
                v.iter_mut().for_each(|x| *x /= sum);
                let m = surprisal_moments(&Spectrum::from_probabilities(&v).unwrap());
                assert!(t.c_max * m.variance <= 1.0 + 1e-9, "d={d}");
            }
        }
    }

    #[test]
    fn w_r_quadratic_log_bound() {
        for d in [3usize, 8, 32] {
            let r = d - 1;
            let lr = (r as f64).ln();
            let cap = (1.0 + lr) / 2.0 + lr * lr / 4.0;
            for i in 0..=1000 {
                let x = i as f64 / (1000 * d) as f64;
                assert!(w_r(x, r).unwrap() <= cap + 1e-12);
            }
        }
    }

    #[test]
    fn epni_condition_at_certified_scale() {
        for d in [2usize, 3, 5, 8, 16] {
            let (holds, worst) = epni_condition_check(d, pn_certified_max(d), 1_000);
            assert!(holds, "d={d} worst={worst}");
        }
    }

    #[test]
    fn epni_condition_below_certified_scale() {
        let d = 6;
        let (holds, _) = epni_condition_check(d, 1.0 / d as f64, 1_000);
        assert!(holds);
    }

    #[test]
    fn epni_condition_fails_for_large_scale() {
        let d = 4;
        let (holds, worst) = epni_condition_check(d, 10.0 * d as f64, 1_000);
        assert!(!holds);
        assert!(worst < -1e-3);
    }

    #[test]
    fn concavity_fuzz_certified_functionals() {
        let d = 4;
        for f in [
            EntropyFunctional::VonNeumann,
            EntropyFunctional::EntropyPower {
                c: ep_certified_max(d),
            },
            EntropyFunctional::PhotonNumber {
                c: pn_certified_max(d),
            },
        ] {
            let worst = concavity_fuzz(f, d, 300, 7, false).unwrap();
            assert!(worst >= -1e-9, "{}: {worst}", f.label());
        }
    }

    #[test]
    fn concavity_fuzz_refuses_uncertified() {
        let f = EntropyFunctional::EntropyPower { c: 100.0 };
        assert!(matches!(
            concavity_fuzz(f, 4, 10, 7, false),
            Err(Error::OutOfCertifiedRange { .. })
        ));
        // forcing runs it anyway
        assert!(concavity_fuzz(f, 4, 10, 7, true).is_ok());
    }

    #[test]
    fn gk_curve_is_increasing_and_concave() {
        let pts = parametric_gk_curve(400);
        assert_eq!(pts.len(), 400);
        let mut prev_slope = f64::INFINITY;
        for w in pts.windows(2) {
            let dg = w[1].0 - w[0].0;
            let dk = w[1].1 - w[0].1;
            assert!(dg > 0.0);
            let slope = dk / dg;
            assert!(slope > 0.0);
            assert!(slope <= prev_slope + 1e-12);
            prev_slope = slope;
        }
        for (gv, kv) in &pts {
            assert!(*kv >= 0.0 && *kv < 1.0);
            assert!(gv.is_finite());
        }
        // g grows without bound
        assert!(pts.last().unwrap().0 > pts.first().unwrap().0 + 10.0);
    }
}
