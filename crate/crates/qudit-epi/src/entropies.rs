//! Spectral entropy functionals and the scalar helpers g, k, ell with their
//! inverses.
//!
//! All entropies are in nats. The convention 0 log 0 = 0 applies throughout.
//! Inverses of the monotone helpers are computed by bracketed bisection
//! followed by two Newton polish steps, which restores full double precision
//! on these well-conditioned branches.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::Spectrum;

/// Eigenvalues closer than this are treated as a degenerate group when
/// evaluating the subentropy limit.
pub const SUBENTROPY_DEGENERACY_TOL: f64 = 1e-7;

#[inline]
fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Binary entropy h(p) = -p log p - (1-p) log(1-p), in nats.
pub fn binary_entropy(p: f64) -> f64 {
    assert!((0.0..=1.0).contains(&p), "binary_entropy domain is [0,1]");
    -xlnx(p) - xlnx(1.0 - p)
}

/// Von Neumann entropy H = -sum lambda_i log lambda_i.
pub fn von_neumann(s: &Spectrum) -> f64 {
    -s.values().iter().copied().map(xlnx).sum::<f64>()
}

/// Renyi entropy of order alpha in [0, 1), in the concave convention
/// H_alpha = log(sum lambda_i^alpha) / (1 - alpha).
///
/// At alpha = 0 this is log(rank); the limit alpha -> 1 recovers the
/// von Neumann entropy.
pub fn renyi(s: &Spectrum, alpha: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::DomainError {
            what: "alpha",
            value: alpha,
            range: "[0, 1)",
        });
    }
    if alpha == 0.0 {
        return Ok((s.rank() as f64).ln());
    }
    let sum: f64 = s
        .values()
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v.powf(alpha))
        .sum();
    Ok(sum.ln() / (1.0 - alpha))
}

/// Subentropy Q = -sum_i lambda_i^d log(lambda_i) / prod_{j != i}(lambda_i - lambda_j),
/// extended to coinciding or vanishing eigenvalues by its limit.
///
/// Zero eigenvalues cancel exactly against their factors in every
/// denominator, so they are dropped and the exponent reduced accordingly.
/// The remainder is the divided difference -f[lambda_1, ..., lambda_n] of
/// f(x) = x^n log x, which we evaluate with a confluent Newton table:
/// eigenvalues within [`SUBENTROPY_DEGENERACY_TOL`] of each other are snapped
/// to their group mean and the repeated-node entries use the analytic
/// derivatives f^(j)/j!. This realizes the limit exactly instead of
/// amplifying the (w/(m-1))^-(m-1) cancellation a perturbative evaluation
/// suffers for groups of m near-equal eigenvalues.
pub fn subentropy(s: &Spectrum) -> f64 {
    let mut kept: Vec<f64> = s.values().iter().copied().filter(|&v| v > 0.0).collect();
    kept.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = kept.len();
    if n == 0 {
        return 0.0;
    }
    if n == 1 {
        return -xlnx(kept[0]) + 0.0;
    }

    // Snap degenerate groups to their mean so repeated nodes compare equal.
    let mut nodes = Vec::with_capacity(n);
    let mut start = 0;
    for i in 1..=n {
        if i == n || kept[i] - kept[i - 1] >= SUBENTROPY_DEGENERACY_TOL {
            let mean = kept[start..i].iter().sum::<f64>() / (i - start) as f64;
            nodes.extend(std::iter::repeat(mean).take(i - start));
            start = i;
        }
    }

    // f^(j)(x)/j! = alpha_j x^(n-j) log x + beta_j x^(n-j) for f(x) = x^n log x.
    let mut alpha = vec![0.0f64; n];
    let mut beta = vec![0.0f64; n];
    alpha[0] = 1.0;
    for j in 0..n - 1 {
        let nf = n as f64;
        let jf = j as f64;
        alpha[j + 1] = alpha[j] * (nf - jf) / (jf + 1.0);
        beta[j + 1] = (alpha[j] + beta[j] * (nf - jf)) / (jf + 1.0);
    }
    let f_scaled = |x: f64, j: usize| x.powi((n - j) as i32) * (alpha[j] * x.ln() + beta[j]);

    // Confluent Newton divided-difference table over node windows.
    let mut dd: Vec<f64> = nodes.iter().map(|&x| f_scaled(x, 0)).collect();
    for len in 1..n {
        for i in 0..n - len {
            let j = i + len;
            dd[i] = if nodes[i] == nodes[j] {
                f_scaled(nodes[i], len)
            } else {
                (dd[i + 1] - dd[i]) / (nodes[j] - nodes[i])
            };
        }
    }
    let q = -dd[0];
    if q == 0.0 {
        0.0
    } else {
        q
    }
}

/// Entropy power EP_c = exp(c H), in [1, d^c].
pub fn entropy_power(s: &Spectrum, c: f64) -> f64 {
    assert!(c >= 0.0, "entropy power exponent must be nonnegative");
    (c * von_neumann(s)).exp()
}

/// Entropy photon number N_c = g^{-1}(c H); zero for pure states.
pub fn photon_number(s: &Spectrum, c: f64) -> f64 {
    assert!(c >= 0.0, "photon number scale must be nonnegative");
    g_inv(c * von_neumann(s)).expect("c H >= 0")
}

/// Shannon entropy, surprisal second moment, and surprisal variance of a
/// spectrum: H, L = sum q (log q)^2, V = L - H^2 >= 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurprisalMoments {
    pub entropy: f64,
    pub second_moment: f64,
    pub variance: f64,
}

pub fn surprisal_moments(s: &Spectrum) -> SurprisalMoments {
    let mut h = 0.0;
    let mut l = 0.0;
    for &q in s.values() {
        if q > 0.0 {
            let lg = q.ln();
            h -= q * lg;
            l += q * lg * lg;
        }
    }
    SurprisalMoments {
        entropy: h,
        second_moment: l,
        variance: (l - h * h).max(0.0),
    }
}

/// g(x) = (x+1) log(x+1) - x log x, monotone increasing with g(0) = 0.
///
/// Evaluated as log1p(x) + x log1p(1/x), which stays accurate for large x
/// where the textbook form cancels catastrophically.
pub fn g(x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::DomainError {
            what: "x",
            value: x,
            range: "[0, inf)",
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(x.ln_1p() + x * (1.0 / x).ln_1p())
}

/// Inverse of [`g`] on [0, inf).
///
/// Bracketed by the sandwich exp(y-1) - 1/2 <= g^{-1}(y) <= exp(y-1) - 1/e
/// for y >= 1 and by [0, max(1, exp(y-1))] below it.
pub fn g_inv(y: f64) -> Result<f64> {
    if y < 0.0 {
        return Err(Error::DomainError {
            what: "y",
            value: y,
            range: "[0, inf)",
        });
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let e = (y - 1.0).exp();
    let (lo, hi) = if y >= 1.0 {
        ((e - 0.5).max(0.0), e - (-1.0f64).exp())
    } else {
        (0.0, e.max(1.0))
    };
    let geval = |x: f64| g(x).expect("bracket stays nonnegative");
    let x = bisect_increasing(geval, y, lo, hi);
    // g'(x) = log(1 + 1/x); two Newton steps restore full precision.
    Ok(newton_polish(x, lo, hi, |x| {
        if x <= 0.0 {
            None
        } else {
            Some((geval(x) - y, (1.0 / x).ln_1p()))
        }
    }))
}

/// k(x) = x(1+x)(log x - log(1+x))^2, monotone increasing from 0 to 1.
pub fn k(x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::DomainError {
            what: "x",
            value: x,
            range: "[0, inf)",
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    // log x - log(1+x) = -log1p(1/x), accurate at both ends
    let l = -(1.0 / x).ln_1p();
    Ok(x * (1.0 + x) * l * l)
}

/// Inverse of [`k`] on [0, 1).
pub fn k_inv(y: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&y) {
        return Err(Error::DomainError {
            what: "y",
            value: y,
            range: "[0, 1)",
        });
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let keval = |x: f64| k(x).expect("x >= 0 on bracket");
    let mut hi = 1.0;
    while keval(hi) < y {
        hi *= 2.0;
    }
    let x = bisect_increasing(keval, y, 0.0, hi);
    // k'(x) = L((1+2x)L + 2) with L = log x - log(1+x).
    Ok(newton_polish(x, 0.0, hi, |x| {
        if x <= 0.0 {
            None
        } else {
            let l = -(1.0 / x).ln_1p();
            Some((keval(x) - y, l * ((1.0 + 2.0 * x) * l + 2.0)))
        }
    }))
}

/// ell(x) = h((1+x)/2): the entropy of a qubit state with Bloch radius |x|.
pub fn ell(x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::DomainError {
            what: "x",
            value: x,
            range: "[-1, 1]",
        });
    }
    Ok(binary_entropy(0.5 * (1.0 + x)))
}

/// Inverse of [`ell`] restricted to [0, 1], where it decreases from log 2
/// to 0; returns the nonnegative branch (the Bloch radius).
pub fn ell_inv(y: f64) -> Result<f64> {
    let ln2 = std::f64::consts::LN_2;
    // tolerate one-ulp overshoot of log 2 from upstream entropy evaluations
    if !(0.0..=ln2 + 1e-12).contains(&y) {
        return Err(Error::DomainError {
            what: "y",
            value: y,
            range: "[0, log 2]",
        });
    }
    let y = y.min(ln2);
    if y == 0.0 {
        return Ok(1.0);
    }
    let eleval = |x: f64| ell(x).expect("x in [0,1] on bracket");
    // ell is decreasing on [0,1]: bisect on log2 - ell, which increases.
    let x = bisect_increasing(|x| ln2 - eleval(x), ln2 - y, 0.0, 1.0);
    // ell'(x) = -atanh(x); skip the polish near the flat apex.
    Ok(newton_polish(x, 0.0, 1.0, |x| {
        if x <= 0.0 || x >= 1.0 {
            return None;
        }
        let d = -x.atanh();
        if d.abs() < 1e-8 {
            None
        } else {
            Some((eleval(x) - y, d))
        }
    })
    .clamp(0.0, 1.0))
}

/// Bisection for f(x) = target with f increasing on [lo, hi].
fn bisect_increasing(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    debug_assert!(lo <= hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-13 * (1.0 + mid.abs()) {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Two Newton steps from a bisection seed, constrained to the bracket the
/// bisection established. The closure returns (residual, derivative) or
/// None to leave the iterate untouched; steps leaving [lo, hi] are rejected.
fn newton_polish(mut x: f64, lo: f64, hi: f64, step: impl Fn(f64) -> Option<(f64, f64)>) -> f64 {
    for _ in 0..2 {
        match step(x) {
            Some((r, d)) if d != 0.0 && d.is_finite() => {
                let next = x - r / d;
                if next.is_finite() && next >= lo && next <= hi {
                    x = next;
                } else {
                    break;
                }
            }
            _ => break,
        }
    }
    x
}

/// A named member of the concave spectral functional class: the functionals
/// the addition-rule inequalities are verified against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EntropyFunctional {
    VonNeumann,
    /// Renyi entropy of order alpha in [0, 1).
    Renyi { alpha: f64 },
    Subentropy,
    /// EP_c = exp(cH); concavity certified for c <= 1/(log d)^2.
    EntropyPower { c: f64 },
    /// N_c = g^{-1}(cH); concavity certified for c <= 1/(d-1).
    PhotonNumber { c: f64 },
}

impl EntropyFunctional {
    pub fn evaluate(&self, s: &Spectrum) -> Result<f64> {
        match *self {
            Self::VonNeumann => Ok(von_neumann(s)),
            Self::Renyi { alpha } => renyi(s, alpha),
            Self::Subentropy => Ok(subentropy(s)),
            Self::EntropyPower { c } => Ok(entropy_power(s, c)),
            Self::PhotonNumber { c } => Ok(photon_number(s, c)),
        }
    }

    /// Whether concavity (and hence the addition-rule inequality) is
    /// certified for this functional in dimension d.
    pub fn certified_for(&self, d: usize) -> bool {
        match *self {
            Self::VonNeumann | Self::Subentropy => true,
            Self::Renyi { alpha } => (0.0..1.0).contains(&alpha),
            Self::EntropyPower { c } => c >= 0.0 && c <= ep_certified_max(d),
            Self::PhotonNumber { c } => c >= 0.0 && c <= pn_certified_max(d),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Self::VonNeumann => "von_neumann".to_string(),
            Self::Renyi { alpha } => format!("renyi({alpha})"),
            Self::Subentropy => "subentropy".to_string(),
            Self::EntropyPower { c } => format!("entropy_power(c={c})"),
            Self::PhotonNumber { c } => format!("photon_number(c={c})"),
        }
    }

    /// The default certified registry for dimension d: von Neumann, Renyi at
    /// the given orders, subentropy, and EP/N at their certified maxima.
    pub fn certified_registry(d: usize, alphas: &[f64]) -> Vec<Self> {
        let mut fs = vec![Self::VonNeumann];
        fs.extend(alphas.iter().map(|&alpha| Self::Renyi { alpha }));
        fs.push(Self::Subentropy);
        fs.push(Self::EntropyPower {
            c: ep_certified_max(d),
        });
        fs.push(Self::PhotonNumber {
            c: pn_certified_max(d),
        });
        fs
    }
}

/// Largest certified entropy-power exponent: 1/(log d)^2.
pub fn ep_certified_max(d: usize) -> f64 {
    let ld = (d as f64).ln();
    1.0 / (ld * ld)
}

/// Largest certified photon-number scale: 1/(d-1).
pub fn pn_certified_max(d: usize) -> f64 {
    1.0 / (d as f64 - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{random_state, random_state_with, random_unitary, DensityMatrix};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    const LN2: f64 = std::f64::consts::LN_2;

    fn spec(vals: &[f64]) -> Spectrum {
        Spectrum::from_probabilities(vals).unwrap()
    }

    #[test]
    fn von_neumann_basics() {
        assert_eq!(von_neumann(&spec(&[1.0, 0.0])), 0.0);
        assert!((von_neumann(&spec(&[0.25; 4])) - 4.0f64.ln()).abs() < 1e-15);
        let h = von_neumann(&spec(&[0.8, 0.2]));
        assert!((h - ell(0.6).unwrap()).abs() < 1e-15);
        assert!((h - binary_entropy(0.8)).abs() < 1e-15);
    }

    #[test]
    fn renyi_of_uniform_is_log_d() {
        assert!((renyi(&spec(&[0.5, 0.5]), 0.5).unwrap() - LN2).abs() < 1e-15);
    }

    #[test]
    fn renyi_of_pure_state_is_zero() {
        for alpha in [0.0, 0.3, 0.9] {
            assert_eq!(renyi(&spec(&[1.0, 0.0, 0.0]), alpha).unwrap(), 0.0);
        }
    }

    #[test]
    fn renyi_at_zero_is_log_rank() {
        assert!((renyi(&spec(&[0.6, 0.4, 0.0]), 0.0).unwrap() - 2.0f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn renyi_limit_approaches_von_neumann() {
        let s = random_state(5, 5, 99).spectrum().unwrap();
        let hv = von_neumann(&s);
        let ha = renyi(&s, 0.999).unwrap();
        assert!((hv - ha).abs() < 1e-2);
    }

    #[test]
    fn renyi_rejects_bad_alpha() {
        let s = spec(&[0.5, 0.5]);
        assert!(renyi(&s, 1.0).is_err());
        assert!(renyi(&s, -0.1).is_err());
        assert!(renyi(&s, 1.5).is_err());
    }

    #[test]
    fn subentropy_of_pure_state_vanishes() {
        assert_eq!(subentropy(&spec(&[1.0, 0.0])), 0.0);
        // epsilon-perturbation oracle: Q along (1-e, e) tends to 0
        let mut prev = f64::INFINITY;
        for e in [1e-2, 1e-3, 1e-4, 1e-5] {
            let q = subentropy(&spec(&[1.0 - e, e]));
            assert!(q < prev);
            prev = q;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn subentropy_two_level_closed_form() {
        // Q(x, y) = -(x^2 log x - y^2 log y)/(x - y)
        let (x, y) = (0.7f64, 0.3f64);
        let expect = -(x * x * x.ln() - y * y * y.ln()) / (x - y);
        assert!((subentropy(&spec(&[x, y])) - expect).abs() < 1e-14);
        assert!((expect - 0.16603292535161163).abs() < 1e-15);
    }

    #[test]
    fn subentropy_near_degenerate_matches_limit() {
        // limit at (1/2, 1/2) is -d/dx[x^2 log x] = log 2 - 1/2
        let q = subentropy(&spec(&[0.5 + 1e-9, 0.5 - 1e-9]));
        assert!((q - (LN2 - 0.5)).abs() < 1e-6);
    }

    #[test]
    fn subentropy_degenerate_limit_via_richardson_oracle() {
        // Spread each degenerate group symmetrically by width w and
        // extrapolate from w and w/2; the error is O(w^2) so the
        // extrapolation is (4 Q(w/2) - Q(w))/3. Stable for small groups.
        fn q_lagrange(vals: &[f64]) -> f64 {
            let n = vals.len();
            let mut tot = 0.0;
            for i in 0..n {
                let mut den = 1.0;
                for j in 0..n {
                    if j != i {
                        den *= vals[i] - vals[j];
                    }
                }
                tot += vals[i].powi(n as i32) * vals[i].ln() / den;
            }
            -tot
        }
        fn spread(mu: f64, m: usize, w: f64) -> Vec<f64> {
            (0..m)
                .map(|t| mu + w * (t as f64 / (m - 1) as f64 - 0.5))
                .collect()
        }
        for d in [2usize, 3, 4] {
            let mu = 1.0 / d as f64;
            let qh = q_lagrange(&spread(mu, d, 1e-3));
            let qh2 = q_lagrange(&spread(mu, d, 5e-4));
            let oracle = (4.0 * qh2 - qh) / 3.0;
            let q = subentropy(&spec(&vec![mu; d]));
            assert!(
                (q - oracle).abs() < 1e-6,
                "d={d}: {q} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn subentropy_matches_lagrange_form_away_from_degeneracy() {
        fn q_lagrange(vals: &[f64]) -> f64 {
            let n = vals.len();
            let mut tot = 0.0;
            for i in 0..n {
                let mut den = 1.0;
                for j in 0..n {
                    if j != i {
                        den *= vals[i] - vals[j];
                    }
                }
                tot += vals[i].powi(n as i32) * vals[i].ln() / den;
            }
            -tot
        }
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..100 {
            let d = rng.gen_range(2..=6);
            let mut v: Vec<f64> = (0..d).map(|_| rng.gen_range(0.05..1.0)).collect();
            let sum: f64 = v.iter().sum();
            v.iter_mut().for_each(|x| *x /= sum);
            let s = spec(&v);
            // skip draws that happen to cluster
            let vals = s.values();
            if vals.windows(2).any(|w| w[0] - w[1] < 1e-4) {
                continue;
            }
            assert!((subentropy(&s) - q_lagrange(vals)).abs() < 1e-10);
        }
    }

    #[test]
    fn subentropy_bounded_by_entropy() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..300 {
            let d = rng.gen_range(2..=8);
            let rank = rng.gen_range(1..=d);
            let s = random_state_with(&mut rng, d, rank).spectrum().unwrap();
            let q = subentropy(&s);
            let h = von_neumann(&s);
            assert!(q >= -1e-8, "Q = {q}");
            assert!(q <= h + 1e-8, "Q = {q} > H = {h}");
        }
    }

    #[test]
    fn g_fixed_points() {
        assert_eq!(g(0.0).unwrap(), 0.0);
        assert!((g(1.0).unwrap() - 2.0 * LN2).abs() < 1e-15);
        assert!((g_inv(2.0 * LN2).unwrap() - 1.0).abs() < 1e-12);
        assert!(g(-1e-9).is_err());
        assert!(g_inv(-1e-9).is_err());
    }

    #[test]
    fn g_round_trip() {
        for &x in &[1e-6, 0.01, 0.5, 1.0, 3.0, 20.0, 500.0, 4e3] {
            let y = g(x).unwrap();
            assert!((g_inv(y).unwrap() - x).abs() <= 1e-12 * (1.0 + x));
        }
    }

    #[test]
    fn g_sandwich_bounds() {
        // 1 + log(x + 1/e) <= g(x) <= 1 + log(x + 1/2) on (0, 1e3]
        for i in 1..=1000 {
            let x = i as f64;
            let gv = g(x).unwrap();
            assert!(gv >= 1.0 + (x + (-1.0f64).exp()).ln() - 1e-12);
            assert!(gv <= 1.0 + (x + 0.5).ln() + 1e-12);
        }
    }

    #[test]
    fn g_inv_against_independent_bisection() {
        // plain bisection oracle without the Newton polish
        let target = LN2;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid).unwrap() < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((g_inv(target).unwrap() - 0.5 * (lo + hi)).abs() < 1e-12);
    }

    #[test]
    fn k_monotone_and_bounded() {
        assert_eq!(k(0.0).unwrap(), 0.0);
        assert!(k(1e-12).unwrap() < 1e-9);
        let mut prev = -1.0;
        for i in 0..200 {
            let x = 10f64.powf(-4.0 + i as f64 * 0.05);
            let v = k(x).unwrap();
            assert!(v > prev);
            assert!(v < 1.0);
            prev = v;
        }
    }

    #[test]
    fn k_round_trip_on_grid() {
        for &x in &[1e-4, 0.01, 0.3, 1.0, 5.0, 20.0] {
            let y = k(x).unwrap();
            assert!((k_inv(y).unwrap() - x).abs() <= 1e-10 * (1.0 + x));
        }
        // near the upper limit the inverse is 6x^3-conditioned in y, so
        // check consistency in the forward direction instead
        for &y in &[0.99, 0.9999, 0.999999] {
            let x = k_inv(y).unwrap();
            assert!((k(x).unwrap() - y).abs() < 1e-12);
        }
        assert!(k_inv(1.0).is_err());
        assert!(k_inv(-0.1).is_err());
    }

    #[test]
    fn ell_endpoints_and_round_trip() {
        assert!((ell(0.0).unwrap() - LN2).abs() < 1e-15);
        assert_eq!(ell(1.0).unwrap(), 0.0);
        assert_eq!(ell(-1.0).unwrap(), 0.0);
        assert!(ell(1.2).is_err());
        for i in 0..=100 {
            let r = i as f64 / 100.0;
            let back = ell_inv(ell(r).unwrap()).unwrap();
            assert!((back - r).abs() < 1e-10, "r={r} back={back}");
        }
        assert!(ell_inv(LN2 + 1e-3).is_err());
    }

    #[test]
    fn surprisal_moments_basics() {
        let d = 6;
        let m = surprisal_moments(&spec(&vec![1.0 / d as f64; d]));
        let ld = (d as f64).ln();
        assert!((m.entropy - ld).abs() < 1e-12);
        assert!((m.second_moment - ld * ld).abs() < 1e-12);
        assert!(m.variance < 1e-12);

        let m0 = surprisal_moments(&spec(&[1.0, 0.0]));
        assert_eq!((m0.entropy, m0.second_moment, m0.variance), (0.0, 0.0, 0.0));

        // two-term independent evaluation
        let (p, q) = (0.7, 0.3);
        let m2 = surprisal_moments(&spec(&[p, q]));
        let l = p * p.ln() * p.ln() + q * q.ln() * q.ln();
        let h = -(p * p.ln() + q * q.ln());
        assert!((m2.second_moment - l).abs() < 1e-15);
        assert!((m2.variance - (l - h * h)).abs() < 1e-15);
    }

    #[test]
    fn entropy_power_range() {
        let d = 4;
        let c = ep_certified_max(d);
        assert_eq!(entropy_power(&spec(&[1.0, 0.0, 0.0, 0.0]), c), 1.0);
        let top = entropy_power(&spec(&[0.25; 4]), c);
        assert!((top - (d as f64).powf(c)).abs() < 1e-12);
        assert_eq!(entropy_power(&spec(&[0.7, 0.1, 0.1, 0.1]), 0.0), 1.0);
    }

    #[test]
    fn photon_number_basics() {
        assert_eq!(photon_number(&spec(&[1.0, 0.0]), 1.0), 0.0);
        let n = photon_number(&spec(&[0.5, 0.5]), 1.0);
        assert!((g(n).unwrap() - LN2).abs() < 1e-12);
        // monotone in c for a fixed mixed state
        let s = spec(&[0.6, 0.4]);
        let mut prev = -1.0;
        for c in [0.1, 0.5, 1.0, 2.0] {
            let v = photon_number(&s, c);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn functional_registry_is_certified() {
        for d in [2usize, 4, 16] {
            let fs = EntropyFunctional::certified_registry(d, &[0.0, 0.25, 0.5, 0.75, 0.9]);
            assert_eq!(fs.len(), 9);
            for f in &fs {
                assert!(f.certified_for(d), "{}", f.label());
            }
        }
        assert!(!EntropyFunctional::EntropyPower { c: 10.0 }.certified_for(2));
        assert!(!EntropyFunctional::PhotonNumber { c: 1.0 }.certified_for(3));
        assert!(EntropyFunctional::PhotonNumber { c: 0.5 }.certified_for(3));
    }

    #[test]
    fn unitary_invariance_of_functionals() {
        let mut rng = ChaCha20Rng::seed_from_u64(21);
        let d = 4;
        let fs = EntropyFunctional::certified_registry(d, &[0.5]);
        for _ in 0..20 {
            let rho = random_state_with(&mut rng, d, d);
            let u = random_unitary(&mut rng, d);
            let rotated = DensityMatrix::new(&u * rho.matrix() * u.adjoint()).unwrap();
            let s0 = rho.spectrum().unwrap();
            let s1 = rotated.spectrum().unwrap();
            for f in &fs {
                let a = f.evaluate(&s0).unwrap();
                let b = f.evaluate(&s1).unwrap();
                assert!((a - b).abs() < 1e-10, "{}: {a} vs {b}", f.label());
            }
        }
    }

    #[test]
    fn schur_concavity_spot_check() {
        // u = T-transform mix of v is majorized by v, so phi_f(u) >= phi_f(v).
        let v = spec(&[0.5, 0.3, 0.15, 0.05]);
        let u = spec(&[0.4, 0.4, 0.1, 0.1]);
        let report = crate::majorization::majorizes(u.values(), v.values(), 1e-12).unwrap();
        assert!(report.holds);
        for f in EntropyFunctional::certified_registry(4, &[0.0, 0.5, 0.9]) {
            let fu = f.evaluate(&u).unwrap();
            let fv = f.evaluate(&v).unwrap();
            assert!(fu >= fv - 1e-10, "{}: {fu} < {fv}", f.label());
        }
    }

    proptest! {
        #[test]
        fn functional_values_are_permutation_invariant(perm in prop::collection::vec(0.01f64..1.0, 2..8)) {
            let sum: f64 = perm.iter().sum();
            let normed: Vec<f64> = perm.iter().map(|x| x / sum).collect();
            let mut shuffled = normed.clone();
            shuffled.reverse();
            shuffled.rotate_left(1);
            let s0 = Spectrum::from_probabilities(&normed).unwrap();
            let s1 = Spectrum::from_probabilities(&shuffled).unwrap();
            let d = normed.len();
            for f in EntropyFunctional::certified_registry(d, &[0.5]) {
                let a = f.evaluate(&s0).unwrap();
                let b = f.evaluate(&s1).unwrap();
                prop_assert!((a - b).abs() < 1e-12);
            }
        }

        #[test]
        fn spectral_concavity_on_the_simplex(
            raw_p in prop::collection::vec(0.01f64..1.0, 4),
            raw_q in prop::collection::vec(0.01f64..1.0, 4),
            t in 0.0f64..=1.0,
        ) {
            // mixing distributions is the commuting case of the addition rule
            let norm = |v: &[f64]| {
                let s: f64 = v.iter().sum();
                v.iter().map(|x| x / s).collect::<Vec<_>>()
            };
            let p = norm(&raw_p);
            let q = norm(&raw_q);
            let mix: Vec<f64> = p.iter().zip(&q).map(|(a, b)| t * a + (1.0 - t) * b).collect();
            let (sp, sq, sm) = (
                Spectrum::from_probabilities(&p).unwrap(),
                Spectrum::from_probabilities(&q).unwrap(),
                Spectrum::from_probabilities(&mix).unwrap(),
            );
            for f in EntropyFunctional::certified_registry(4, &[0.25, 0.75]) {
                let fm = f.evaluate(&sm).unwrap();
                let fp = f.evaluate(&sp).unwrap();
                let fq = f.evaluate(&sq).unwrap();
                // mixing sorted-descending vectors entrywise majorizes the true
                // spectral mix, so this is implied by Schur concavity + concavity
                prop_assert!(fm >= t * fp + (1.0 - t) * fq - 1e-10, "{}", f.label());
            }
        }

        #[test]
        fn g_ginv_round_trip(x in 0.0f64..100.0) {
            let y = g(x).unwrap();
            prop_assert!((g_inv(y).unwrap() - x).abs() <= 1e-12 * (1.0 + x));
        }
    }
}
