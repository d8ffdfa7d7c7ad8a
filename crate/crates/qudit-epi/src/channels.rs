//! The swap operator, the partial swap unitary, and the partial swap channel
//! in three independent realizations, plus the trivial mixing channel and the
//! fixed-sigma channel family.
//!
//! The closed form
//! `rho (+)_a sigma = a rho + (1-a) sigma - sqrt(a(1-a)) i [rho, sigma]`
//! is the production path (O(d^3)); the unitary-conjugation and Kraus
//! realizations materialize d^2 x d^2 operators and serve as ground-truth
//! oracles. The +i branch is implemented; the -i branch traces the other half
//! of the same elliptic path and yields identical spectra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::{partial_trace_second, BlochVector, DensityMatrix};

/// The transmissivity-like partial swap parameter, a in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapParams {
    a: f64,
}

impl SwapParams {
    pub fn new(a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::DomainError {
                what: "a",
                value: a,
                range: "[0, 1]",
            });
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// sqrt(a (1-a)), the commutator coefficient.
    pub fn cross(&self) -> f64 {
        (self.a * (1.0 - self.a)).sqrt()
    }
}

fn check_same_dim(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<usize> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: sigma.dim(),
        });
    }
    Ok(rho.dim())
}

/// Qudit swap operator S |i,j> = |j,i>, as a d^2 x d^2 permutation matrix.
/// S is Hermitian and S^2 = I.
pub fn swap_operator(d: usize) -> DMatrix<Complex64> {
    assert!(d >= 2, "swap needs d >= 2");
    let dd = d * d;
    let mut s = DMatrix::from_element(dd, dd, Complex64::new(0.0, 0.0));
    for i in 0..d {
        for j in 0..d {
            s[(i * d + j, j * d + i)] = Complex64::new(1.0, 0.0);
        }
    }
    s
}

/// Partial swap unitary U_a = sqrt(a) I + i sqrt(1-a) S.
/// U_1 = I and U_0 = iS.
pub fn partial_swap_unitary(d: usize, p: SwapParams) -> DMatrix<Complex64> {
    let s = swap_operator(d);
    let dd = d * d;
    let sqrt_a = Complex64::new(p.a().sqrt(), 0.0);
    let i_sqrt_rest = Complex64::new(0.0, (1.0 - p.a()).sqrt());
    DMatrix::from_fn(dd, dd, |r, c| {
        let diag = if r == c {
            sqrt_a
        } else {
            Complex64::new(0.0, 0.0)
        };
        diag + i_sqrt_rest * s[(r, c)]
    })
}

/// The d Kraus operators A_k = sqrt(a) I (x) <k| + i sqrt(1-a) <k| (x) I,
/// each mapping C^d (x) C^d to C^d.
#[derive(Debug, Clone)]
pub struct KrausSet {
    ops: Vec<DMatrix<Complex64>>,
}

impl KrausSet {
    pub fn new(d: usize, p: SwapParams) -> Self {
        assert!(d >= 2);
        let sqrt_a = Complex64::new(p.a().sqrt(), 0.0);
        let i_sqrt_rest = Complex64::new(0.0, (1.0 - p.a()).sqrt());
        let mut ops = Vec::with_capacity(d);
        for k in 0..d {
            // row (i), column (j1*d + j2):
            //   sqrt(a) [j2 == k][i == j1] + i sqrt(1-a) [j1 == k][i == j2]
            let op = DMatrix::from_fn(d, d * d, |i, col| {
                let (j1, j2) = (col / d, col % d);
                let mut v = Complex64::new(0.0, 0.0);
                if j2 == k && i == j1 {
                    v += sqrt_a;
                }
                if j1 == k && i == j2 {
                    v += i_sqrt_rest;
                }
                v
            });
            ops.push(op);
        }
        Self { ops }
    }

    pub fn operators(&self) -> &[DMatrix<Complex64>] {
        &self.ops
    }

    /// Max-entry deviation of sum_k A_k^dagger A_k from the identity on C^{d^2}.
    pub fn completeness_defect(&self) -> f64 {
        let dd = self.ops[0].ncols();
        let mut acc = DMatrix::from_element(dd, dd, Complex64::new(0.0, 0.0));
        for a in &self.ops {
            acc += a.adjoint() * a;
        }
        let mut worst = 0.0f64;
        for i in 0..dd {
            for j in 0..dd {
                let expect = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst.max((acc[(i, j)] - expect).norm());
            }
        }
        worst
    }
}

pub(crate) fn boxplus_with_commutator_sign(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    p: SwapParams,
    sign: f64,
) -> Result<DensityMatrix> {
    check_same_dim(rho, sigma)?;
    let a = p.a();
    let r = rho.matrix();
    let s = sigma.matrix();
    let comm = r * s - s * r;
    let coeff = Complex64::new(0.0, -sign * p.cross());
    let out = r.scale(a) + s.scale(1.0 - a) + comm.map(|z| z * coeff);
    Ok(DensityMatrix::from_valid(out))
}

/// Closed-form partial swap addition:
/// `a rho + (1-a) sigma - sqrt(a(1-a)) i [rho, sigma]`.
pub fn boxplus_closed_form(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    p: SwapParams,
) -> Result<DensityMatrix> {
    boxplus_with_commutator_sign(rho, sigma, p, 1.0)
}

/// Partial swap via unitary conjugation: Tr_2(U_a (rho (x) sigma) U_a^dagger).
pub fn boxplus_via_unitary(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    p: SwapParams,
) -> Result<DensityMatrix> {
    let d = check_same_dim(rho, sigma)?;
    let u = partial_swap_unitary(d, p);
    let joint = rho.matrix().kronecker(sigma.matrix());
    let conj = &u * joint * u.adjoint();
    partial_trace_second(&conj, d)
}

/// Partial swap via the Kraus decomposition: sum_k A_k (rho (x) sigma) A_k^dagger.
pub fn boxplus_via_kraus(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    p: SwapParams,
) -> Result<DensityMatrix> {
    let d = check_same_dim(rho, sigma)?;
    let kraus = KrausSet::new(d, p);
    let joint = rho.matrix().kronecker(sigma.matrix());
    let mut out = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
    for a in kraus.operators() {
        out += a * &joint * a.adjoint();
    }
    DensityMatrix::new(out)
}

/// Bloch-level qubit addition rule:
/// r = a r1 + (1-a) r2 + sqrt(a(1-a)) r1 x r2.
pub fn boxplus_bloch(r1: &BlochVector, r2: &BlochVector, p: SwapParams) -> BlochVector {
    let a = p.a();
    let cross = r1.cross(r2);
    let c = p.cross();
    BlochVector {
        x: a * r1.x + (1.0 - a) * r2.x + c * cross.0,
        y: a * r1.y + (1.0 - a) * r2.y + c * cross.1,
        z: a * r1.z + (1.0 - a) * r2.z + c * cross.2,
    }
}

/// Baseline mixing channel a rho + (1-a) sigma, for which every inequality
/// here restates plain concavity.
pub fn mixing_channel(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    p: SwapParams,
) -> Result<DensityMatrix> {
    check_same_dim(rho, sigma)?;
    let a = p.a();
    let out = rho.matrix().scale(a) + sigma.matrix().scale(1.0 - a);
    Ok(DensityMatrix::from_valid(out))
}

/// The single-input channel family E_{a,sigma}(rho) = rho (+)_a sigma.
/// For sigma = I/d this is the depolarizing channel with parameter a.
#[derive(Debug, Clone)]
pub struct FixedSigmaChannel {
    sigma: DensityMatrix,
    params: SwapParams,
}

impl FixedSigmaChannel {
    pub fn new(sigma: DensityMatrix, params: SwapParams) -> Self {
        Self { sigma, params }
    }

    pub fn sigma(&self) -> &DensityMatrix {
        &self.sigma
    }

    pub fn params(&self) -> SwapParams {
        self.params
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        boxplus_closed_form(rho, &self.sigma, self.params)
    }
}
