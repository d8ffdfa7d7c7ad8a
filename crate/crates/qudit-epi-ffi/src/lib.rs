//! C ABI for the qudit-epi toolkit.
//!
//! States are opaque handles created and released through this interface;
//! every fallible call returns a [`QepStatus`] and writes results through
//! out-pointers. Matrix entries cross the boundary as interleaved
//! re,im pairs in row-major order (buffer length 2*d*d).

use std::os::raw::c_char;

use qudit_epi::bounds::BoundKind;
use qudit_epi::channels::{boxplus_closed_form, mixing_channel, SwapParams};
use qudit_epi::concavity::c_max_entropy_power;
use qudit_epi::entropies::{
    entropy_power, photon_number, renyi, subentropy, von_neumann,
};
use qudit_epi::error::Error;
use qudit_epi::majorization::check_spectral_majorization;
use qudit_epi::states::{random_state, DensityMatrix};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QepStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotHermitian = 3,
    NotPositiveSemidefinite = 4,
    TraceNotOne = 5,
    DimensionMismatch = 6,
    EigenFailure = 7,
    BufferTooSmall = 8,
}

/// Bound families for `qep_output_entropy_bound`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QepBoundKind {
    Linear = 0,
    EntropyPower = 1,
    PhotonNumber = 2,
    QubitOptimal = 3,
}

/// Opaque density-matrix handle.
pub struct QepState {
    inner: DensityMatrix,
}

fn status_of(err: &Error) -> QepStatus {
    match err {
        Error::NotHermitian { .. } => QepStatus::NotHermitian,
        Error::NotPsd { .. } => QepStatus::NotPositiveSemidefinite,
        Error::TraceNotOne { .. } => QepStatus::TraceNotOne,
        Error::DimensionMismatch { .. } | Error::NotSquare { .. } => QepStatus::DimensionMismatch,
        Error::EigenFailure => QepStatus::EigenFailure,
        _ => QepStatus::InvalidArgument,
    }
}

/// Largest dimension accepted across the ABI; the toolkit targets desk
/// scale and this guards against garbage sizes.
pub const QEP_MAX_DIM: usize = 4096;

fn boxed(state: DensityMatrix, out: *mut *mut QepState) -> QepStatus {
    // SAFETY: caller guarantees `out` is a valid location for a pointer.
    unsafe {
        *out = Box::into_raw(Box::new(QepState { inner: state }));
    }
    QepStatus::Ok
}

/// Build a state from interleaved row-major re,im entries (length 2*dim*dim).
/// Validates Hermiticity, positivity, and unit trace.
///
/// # Safety
/// `entries` must point to `2*dim*dim` readable doubles and `out` to a
/// writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn qep_state_new(
    dim: usize,
    entries: *const f64,
    out: *mut *mut QepState,
) -> QepStatus {
    if entries.is_null() || out.is_null() {
        return QepStatus::NullPointer;
    }
    if dim == 0 || dim > QEP_MAX_DIM {
        return QepStatus::InvalidArgument;
    }
    let raw = std::slice::from_raw_parts(entries, 2 * dim * dim);
    let m = nalgebra_matrix(dim, raw);
    match DensityMatrix::new(m) {
        Ok(state) => boxed(state, out),
        Err(e) => status_of(&e),
    }
}

fn nalgebra_matrix(
    dim: usize,
    raw: &[f64],
) -> qudit_epi::nalgebra::DMatrix<qudit_epi::num_complex::Complex64> {
    qudit_epi::nalgebra::DMatrix::from_fn(dim, dim, |i, j| {
        let base = 2 * (i * dim + j);
        qudit_epi::num_complex::Complex64::new(raw[base], raw[base + 1])
    })
}

/// Ginibre-induced random state; deterministic in (dim, rank, seed).
///
/// # Safety
/// `out` must point to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn qep_state_random(
    dim: usize,
    rank: usize,
    seed: u64,
    out: *mut *mut QepState,
) -> QepStatus {
    if out.is_null() {
        return QepStatus::NullPointer;
    }
    if dim == 0 || dim > QEP_MAX_DIM || rank == 0 || rank > dim {
        return QepStatus::InvalidArgument;
    }
    boxed(random_state(dim, rank, seed), out)
}

/// The maximally mixed state I/dim.
///
/// # Safety
/// `out` must point to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn qep_state_maximally_mixed(
    dim: usize,
    out: *mut *mut QepState,
) -> QepStatus {
    if out.is_null() {
        return QepStatus::NullPointer;
    }
    if dim == 0 || dim > QEP_MAX_DIM {
        return QepStatus::InvalidArgument;
    }
    boxed(DensityMatrix::maximally_mixed(dim), out)
}

/// Release a state handle. Null is a no-op.
///
/// # Safety
/// `state` must be null or a pointer previously returned by this library,
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qep_state_free(state: *mut QepState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Dimension of a state; 0 for null.
///
/// # Safety
/// `state` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qep_state_dim(state: *const QepState) -> usize {
    state.as_ref().map_or(0, |s| s.inner.dim())
}

/// Copy interleaved row-major re,im entries into `buffer`.
///
/// # Safety
/// `buffer` must hold at least `buffer_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qep_state_entries(
    state: *const QepState,
    buffer: *mut f64,
    buffer_len: usize,
) -> QepStatus {
    let Some(s) = state.as_ref() else {
        return QepStatus::NullPointer;
    };
    if buffer.is_null() {
        return QepStatus::NullPointer;
    }
    let d = s.inner.dim();
    if buffer_len < 2 * d * d {
        return QepStatus::BufferTooSmall;
    }
    let out = std::slice::from_raw_parts_mut(buffer, 2 * d * d);
    let m = s.inner.matrix();
    for i in 0..d {
        for j in 0..d {
            let base = 2 * (i * d + j);
            out[base] = m[(i, j)].re;
            out[base + 1] = m[(i, j)].im;
        }
    }
    QepStatus::Ok
}

/// Copy the non-increasing eigenvalue vector into `buffer` (length >= dim).
///
/// # Safety
/// `buffer` must hold at least `buffer_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qep_state_spectrum(
    state: *const QepState,
    buffer: *mut f64,
    buffer_len: usize,
) -> QepStatus {
    let Some(s) = state.as_ref() else {
        return QepStatus::NullPointer;
    };
    if buffer.is_null() {
        return QepStatus::NullPointer;
    }
    let d = s.inner.dim();
    if buffer_len < d {
        return QepStatus::BufferTooSmall;
    }
    match s.inner.spectrum() {
        Ok(spec) => {
            let out = std::slice::from_raw_parts_mut(buffer, d);
            out.copy_from_slice(spec.values());
            QepStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The partial swap addition rule rho (+)_a sigma.
///
/// # Safety
/// `rho` and `sigma` must be live handles; `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn qep_boxplus(
    rho: *const QepState,
    sigma: *const QepState,
    a: f64,
    out: *mut *mut QepState,
) -> QepStatus {
    let (Some(r), Some(s)) = (rho.as_ref(), sigma.as_ref()) else {
        return QepStatus::NullPointer;
    };
    if out.is_null() {
        return QepStatus::NullPointer;
    }
    let p = match SwapParams::new(a) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match boxplus_closed_form(&r.inner, &s.inner, p) {
        Ok(state) => boxed(state, out),
        Err(e) => status_of(&e),
    }
}

/// The trivial mixing rule a rho + (1-a) sigma.
///
/// # Safety
/// As for [`qep_boxplus`].
#[no_mangle]
pub unsafe extern "C" fn qep_mixing(
    rho: *const QepState,
    sigma: *const QepState,
    a: f64,
    out: *mut *mut QepState,
) -> QepStatus {
    let (Some(r), Some(s)) = (rho.as_ref(), sigma.as_ref()) else {
        return QepStatus::NullPointer;
    };
    if out.is_null() {
        return QepStatus::NullPointer;
    }
    let p = match SwapParams::new(a) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match mixing_channel(&r.inner, &s.inner, p) {
        Ok(state) => boxed(state, out),
        Err(e) => status_of(&e),
    }
}

unsafe fn spectral_scalar(
    state: *const QepState,
    out: *mut f64,
    f: impl Fn(&qudit_epi::states::Spectrum) -> Result<f64, Error>,
) -> QepStatus {
    let Some(s) = state.as_ref() else {
        return QepStatus::NullPointer;
    };
    if out.is_null() {
        return QepStatus::NullPointer;
    }
    match s.inner.spectrum().and_then(|spec| f(&spec)) {
        Ok(v) => {
            *out = v;
            QepStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Von Neumann entropy in nats.
///
/// # Safety
/// `state` must be a live handle; `out` a writable double.
#[no_mangle]
pub unsafe extern "C" fn qep_von_neumann(state: *const QepState, out: *mut f64) -> QepStatus {
    spectral_scalar(state, out, |s| Ok(von_neumann(s)))
}

/// Renyi entropy of order alpha in [0, 1).
///
/// # Safety
/// As for [`qep_von_neumann`].
#[no_mangle]
pub unsafe extern "C" fn qep_renyi(
    state: *const QepState,
    alpha: f64,
    out: *mut f64,
) -> QepStatus {
    spectral_scalar(state, out, |s| renyi(s, alpha))
}

/// Subentropy.
///
/// # Safety
/// As for [`qep_von_neumann`].
#[no_mangle]
pub unsafe extern "C" fn qep_subentropy(state: *const QepState, out: *mut f64) -> QepStatus {
    spectral_scalar(state, out, |s| Ok(subentropy(s)))
}

/// Entropy power exp(c H); c must be nonnegative.
///
/// # Safety
/// As for [`qep_von_neumann`].
#[no_mangle]
pub unsafe extern "C" fn qep_entropy_power(
    state: *const QepState,
    c: f64,
    out: *mut f64,
) -> QepStatus {
    if !(c >= 0.0) {
        return QepStatus::InvalidArgument;
    }
    spectral_scalar(state, out, |s| Ok(entropy_power(s, c)))
}

/// Entropy photon number g^{-1}(c H); c must be nonnegative.
///
/// # Safety
/// As for [`qep_von_neumann`].
#[no_mangle]
pub unsafe extern "C" fn qep_photon_number(
    state: *const QepState,
    c: f64,
    out: *mut f64,
) -> QepStatus {
    if !(c >= 0.0) {
        return QepStatus::InvalidArgument;
    }
    spectral_scalar(state, out, |s| Ok(photon_number(s, c)))
}

/// Check lambda(rho (+)_a sigma) ≺ a lambda(rho) + (1-a) lambda(sigma).
/// Writes 1/0 into `out_holds` and the most negative prefix margin into
/// `out_worst_slack`.
///
/// # Safety
/// Handles must be live; both out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn qep_spectral_majorization(
    rho: *const QepState,
    sigma: *const QepState,
    a: f64,
    tolerance: f64,
    out_holds: *mut i32,
    out_worst_slack: *mut f64,
) -> QepStatus {
    let (Some(r), Some(s)) = (rho.as_ref(), sigma.as_ref()) else {
        return QepStatus::NullPointer;
    };
    if out_holds.is_null() || out_worst_slack.is_null() {
        return QepStatus::NullPointer;
    }
    if !(tolerance >= 0.0) {
        return QepStatus::InvalidArgument;
    }
    let p = match SwapParams::new(a) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match check_spectral_majorization(&r.inner, &s.inner, p, tolerance) {
        Ok(report) => {
            *out_holds = report.holds as i32;
            *out_worst_slack = report.worst_slack;
            QepStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Entropy-power concavity threshold c_max(dim) with its maximizer and the
/// closed-form lower bound.
///
/// # Safety
/// All out-pointers must be writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qep_cmax(
    dim: usize,
    out_c_max: *mut f64,
    out_x_star: *mut f64,
    out_lower_bound: *mut f64,
) -> QepStatus {
    if out_c_max.is_null() || out_x_star.is_null() || out_lower_bound.is_null() {
        return QepStatus::NullPointer;
    }
    if dim < 2 || dim > QEP_MAX_DIM {
        return QepStatus::InvalidArgument;
    }
    let t = c_max_entropy_power(dim);
    *out_c_max = t.c_max;
    *out_x_star = t.argmax_x;
    *out_lower_bound = t.lower_bound;
    QepStatus::Ok
}

/// Output-entropy lower bound G(H(rho)) for the fixed-sigma channel family,
/// from input entropies in nats.
///
/// # Safety
/// `out` must be a writable double.
#[no_mangle]
pub unsafe extern "C" fn qep_output_entropy_bound(
    kind: QepBoundKind,
    h_rho: f64,
    h_sigma: f64,
    a: f64,
    dim: usize,
    out: *mut f64,
) -> QepStatus {
    if out.is_null() {
        return QepStatus::NullPointer;
    }
    if dim < 2 || dim > QEP_MAX_DIM || !(0.0..=1.0).contains(&a) {
        return QepStatus::InvalidArgument;
    }
    let kind = match kind {
        QepBoundKind::Linear => BoundKind::Linear,
        QepBoundKind::EntropyPower => BoundKind::EntropyPower,
        QepBoundKind::PhotonNumber => BoundKind::PhotonNumber,
        QepBoundKind::QubitOptimal => BoundKind::QubitOptimal,
    };
    match kind.evaluate(h_rho, h_sigma, a, dim) {
        Ok(v) => {
            *out = v;
            QepStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Holevo-capacity upper bound log d - (1-a) H(sigma).
///
/// # Safety
/// `sigma` must be a live handle; `out` a writable double.
#[no_mangle]
pub unsafe extern "C" fn qep_holevo_upper_bound(
    sigma: *const QepState,
    a: f64,
    out: *mut f64,
) -> QepStatus {
    let Some(s) = sigma.as_ref() else {
        return QepStatus::NullPointer;
    };
    if out.is_null() {
        return QepStatus::NullPointer;
    }
    let p = match SwapParams::new(a) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match qudit_epi::bounds::holevo_upper_bound(p, &s.inner) {
        Ok(v) => {
            *out = v;
            QepStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn qep_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn qep_status_message(status: QepStatus) -> *const c_char {
    let msg: &'static str = match status {
        QepStatus::Ok => "ok\0",
        QepStatus::NullPointer => "null pointer\0",
        QepStatus::InvalidArgument => "invalid argument\0",
        QepStatus::NotHermitian => "matrix is not Hermitian\0",
        QepStatus::NotPositiveSemidefinite => "matrix is not positive semidefinite\0",
        QepStatus::TraceNotOne => "trace is not 1\0",
        QepStatus::DimensionMismatch => "dimension mismatch\0",
        QepStatus::EigenFailure => "eigensolver did not converge\0",
        QepStatus::BufferTooSmall => "buffer too small\0",
    };
    msg.as_ptr() as *const c_char
}
