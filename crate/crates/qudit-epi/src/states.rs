//! Density matrices, spectra, and Bloch vectors.
//!
//! Everything here is immutable after construction. A [`DensityMatrix`] can
//! only be obtained through a path that establishes the three state
//! invariants (Hermitian, PSD, unit trace), so downstream code never
//! re-validates.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Hermiticity tolerance for state validation.
pub const TOL_HERM: f64 = 1e-10;
/// Unit-trace tolerance for state validation.
pub const TOL_TRACE: f64 = 1e-10;
/// PSD tolerance: eigenvalues may undershoot zero by this much.
pub const TOL_PSD: f64 = 1e-10;

/// Eigenvalues below this are treated as exact zeros in a [`Spectrum`].
/// This is well above eigensolver noise (~1e-15 for unit-norm matrices at
/// desk scale) and well below any eigenvalue that matters at the stated
/// tolerances.
pub const SPECTRUM_ZERO_TOL: f64 = 1e-12;

/// A d-dimensional quantum state: Hermitian, PSD, unit-trace complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validate an arbitrary square complex matrix as a density matrix.
    ///
    /// The Hermitian part `(m + m\u{2020})/2` is taken before the PSD and trace
    /// checks, so inputs with asymmetry below [`TOL_HERM`] are accepted and
    /// symmetrized.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let herm_dev = hermiticity_deviation(&m);
        if herm_dev > TOL_HERM {
            return Err(Error::NotHermitian {
                deviation: herm_dev,
            });
        }
        let sym = hermitian_part(&m);
        let tr = sym.trace();
        let tr_dev = (tr.re - 1.0).hypot(tr.im);
        if tr_dev > TOL_TRACE {
            return Err(Error::TraceNotOne { deviation: tr_dev });
        }
        let eigs = hermitian_eigenvalues(&sym)?;
        let min_eig = eigs.iter().copied().fold(f64::INFINITY, f64::min);
        if min_eig < -TOL_PSD {
            return Err(Error::NotPsd {
                min_eigenvalue: min_eig,
            });
        }
        Ok(Self { mat: sym })
    }

    /// Wrap a matrix whose validity is guaranteed by construction.
    /// The Hermitian part is still taken to scrub floating-point asymmetry.
    pub(crate) fn from_valid(m: DMatrix<Complex64>) -> Self {
        Self {
            mat: hermitian_part(&m),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// The maximally mixed state I/d.
    pub fn maximally_mixed(d: usize) -> Self {
        assert!(d >= 1, "dimension must be positive");
        let scale = Complex64::new(1.0 / d as f64, 0.0);
        Self {
            mat: DMatrix::from_diagonal_element(d, d, scale),
        }
    }

    /// Diagonal state from a probability vector.
    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        let m = DMatrix::from_fn(probs.len(), probs.len(), |i, j| {
            if i == j {
                Complex64::new(probs[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self::new(m)
    }

    /// Pure state |psi><psi| from a (not necessarily normalized) ket.
    pub fn pure(ket: &[Complex64]) -> Self {
        let norm_sq: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        assert!(norm_sq > 0.0, "ket must be nonzero");
        let d = ket.len();
        let mat = DMatrix::from_fn(d, d, |i, j| ket[i] * ket[j].conj() / norm_sq);
        Self { mat }
    }

    /// Basis state |k><k|.
    pub fn basis(d: usize, k: usize) -> Self {
        assert!(k < d);
        let mut ket = vec![Complex64::new(0.0, 0.0); d];
        ket[k] = Complex64::new(1.0, 0.0);
        Self::pure(&ket)
    }

    /// Eigenvalues sorted non-increasing, clamped at zero.
    pub fn spectrum(&self) -> Result<Spectrum> {
        let eigs = hermitian_eigenvalues(&self.mat)?;
        Spectrum::from_eigenvalues(eigs)
    }
}

fn hermiticity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let dev = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = worst.max(dev);
        }
    }
    worst
}

fn hermitian_part(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let adj = m.adjoint();
    (m + adj).scale(0.5)
}

/// Eigenvalues of a Hermitian matrix via nalgebra's symmetric eigensolver.
pub(crate) fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let se = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 4096)
        .ok_or(Error::EigenFailure)?;
    Ok(se.eigenvalues.iter().copied().collect())
}

/// Eigenvalue vector of a state: sorted non-increasing, entries in [0, 1],
/// summing to 1.
///
/// Construction clamps negatives within [`TOL_PSD`] to zero, zeros out
/// sub-noise values below [`SPECTRUM_ZERO_TOL`], and renormalizes the sum;
/// drift beyond [`TOL_TRACE`] is an error rather than silently rescaled.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Build from raw (possibly unsorted, slightly noisy) eigenvalues.
    pub fn from_eigenvalues(mut eigs: Vec<f64>) -> Result<Self> {
        if eigs.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        let min_eig = eigs.iter().copied().fold(f64::INFINITY, f64::min);
        if min_eig < -TOL_PSD {
            return Err(Error::NotPsd {
                min_eigenvalue: min_eig,
            });
        }
        for v in eigs.iter_mut() {
            if *v < SPECTRUM_ZERO_TOL {
                *v = 0.0;
            }
        }
        // sort before summing so permuted inputs renormalize identically
        eigs.sort_by(|a, b| b.partial_cmp(a).expect("no NaN eigenvalues"));
        let sum: f64 = eigs.iter().sum();
        if (sum - 1.0).abs() > TOL_TRACE {
            return Err(Error::TraceNotOne {
                deviation: (sum - 1.0).abs(),
            });
        }
        for v in eigs.iter_mut() {
            *v /= sum;
        }
        Ok(Self { values: eigs })
    }

    /// Build from an already-normalized probability vector (sorted here).
    pub fn from_probabilities(probs: &[f64]) -> Result<Self> {
        Self::from_eigenvalues(probs.to_vec())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Number of nonzero eigenvalues.
    pub fn rank(&self) -> usize {
        self.values.iter().filter(|&&v| v > 0.0).count()
    }
}

/// Bloch-vector representation of a qubit state, |r| <= 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        let norm = v.norm();
        if norm * norm > 1.0 + TOL_PSD {
            return Err(Error::DomainError {
                what: "|r|",
                value: norm,
                range: "[0, 1]",
            });
        }
        Ok(v)
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn cross(&self, other: &Self) -> (f64, f64, f64) {
        (
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }
}

/// rho = (I + x sx + y sy + z sz) / 2. Eigenvalues are (1 +- |r|)/2.
pub fn bloch_to_state(r: &BlochVector) -> DensityMatrix {
    let c = Complex64::new;
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            c(0.5 * (1.0 + r.z), 0.0),
            c(0.5 * r.x, -0.5 * r.y),
            c(0.5 * r.x, 0.5 * r.y),
            c(0.5 * (1.0 - r.z), 0.0),
        ],
    );
    DensityMatrix::from_valid(m)
}

/// Inverse Pauli expansion; errors on d != 2.
pub fn state_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: rho.dim(),
        });
    }
    let m = rho.matrix();
    // r_i = Tr(rho sigma_i); real by Hermiticity.
    let x = (m[(0, 1)] + m[(1, 0)]).re;
    let y = (m[(1, 0)] - m[(0, 1)]).im;
    let z = (m[(0, 0)] - m[(1, 1)]).re;
    Ok(BlochVector { x, y, z })
}

/// Ginibre-induced random state of the given rank: G G\u{2020} / Tr(G G\u{2020})
/// with G a d x rank matrix of i.i.d. standard complex Gaussians.
/// Deterministic for fixed (d, rank, seed).
pub fn random_state(d: usize, rank: usize, seed: u64) -> DensityMatrix {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    random_state_with(&mut rng, d, rank)
}

/// Same as [`random_state`] but drawing from a caller-supplied generator.
pub fn random_state_with<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> DensityMatrix {
    assert!(d >= 1, "dimension must be positive");
    assert!(1 <= rank && rank <= d, "rank must satisfy 1 <= rank <= d");
    let g = ginibre(rng, d, rank);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::from_valid(m.map(|z| z / tr))
}

/// Haar-random unitary: QR of a Ginibre matrix with the R-diagonal phases
/// folded into Q.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DMatrix<Complex64> {
    let g = ginibre(rng, d, d);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    })
}

/// Trace out the second factor of a d*d x d*d matrix on C^d (x) C^d:
/// (Tr_2 m)_{ij} = sum_k m[(i,k),(j,k)] with composite index i*d + k.
pub fn partial_trace_second(m: &DMatrix<Complex64>, d: usize) -> Result<DensityMatrix> {
    let dd = d * d;
    if m.nrows() != dd || m.ncols() != dd {
        return Err(Error::DimensionMismatch {
            expected: dd,
            got: m.nrows(),
        });
    }
    let mut out = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += m[(i * d + k, j * d + k)];
            }
            out[(i, j)] = acc;
        }
    }
    DensityMatrix::new(out)
}
