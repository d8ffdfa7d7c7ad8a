//! # qudit-epi
//!
//! A numerical toolkit for the partial swap addition rule on qudit states
//! and the entropy inequalities it satisfies.
//!
//! The addition rule combines two d-dimensional density matrices as
//!
//! ```text
//! rho (+)_a sigma = a rho + (1-a) sigma - sqrt(a(1-a)) i [rho, sigma]
//! ```
//!
//! realized equivalently by conjugating rho (x) sigma with the partial swap
//! unitary U_a = sqrt(a) I + i sqrt(1-a) S and tracing out the second
//! system, or by the d Kraus operators of that channel. The toolkit
//! provides:
//!
//! - [`states`]: density-matrix construction/validation, spectra, Bloch
//!   vectors, Ginibre-seeded random states, partial trace;
//! - [`channels`]: the swap operator, partial swap unitary, the three
//!   realizations of the addition rule, and the fixed-sigma channel family;
//! - [`entropies`]: von Neumann, Renyi (alpha < 1), subentropy, entropy
//!   power, entropy photon number, surprisal moments, and the scalar
//!   helpers g, k, ell with inverses;
//! - [`majorization`]: prefix-sum majorization predicates and the spectral
//!   relation lambda(rho (+)_a sigma) ≺ a lambda(rho) + (1-a) lambda(sigma);
//! - [`concavity`]: the c_max(d) concavity threshold for exp(cH), the
//!   brute-force surprisal-variance maximization, and the photon-number
//!   concavity condition;
//! - [`bounds`]: minimum-output-entropy lower bounds and Holevo-capacity
//!   upper bounds for the fixed-sigma channels;
//! - [`verify`]: seeded, deterministic verification campaigns;
//! - [`emit`]: CSV/JSON emission of reports, tables, curves, and states.
//!
//! Entropies are in nats throughout; 0 log 0 = 0.

pub use nalgebra;
pub use num_complex;

pub mod bounds;
pub mod channels;
pub mod concavity;
pub mod emit;
pub mod entropies;
pub mod error;
pub mod majorization;
pub mod states;
pub mod verify;

pub use bounds::{
    bound_entropy_power, bound_linear, bound_photon_number, bound_qubit_optimal,
    holevo_upper_bound, min_output_entropy_lb, BoundCurve, BoundKind, MinOutputEntropyBound,
};
pub use channels::{
    boxplus_bloch, boxplus_closed_form, boxplus_via_kraus, boxplus_via_unitary, mixing_channel,
    partial_swap_unitary, swap_operator, FixedSigmaChannel, KrausSet, SwapParams,
};
pub use concavity::{
    c_max_entropy_power, concavity_fuzz, epni_condition_check, l_max_bruteforce,
    parametric_gk_curve, s_r, w_r, LmaxResult, ThresholdResult, TwoValuedDist,
};
pub use entropies::{
    binary_entropy, ell, ell_inv, entropy_power, ep_certified_max, g, g_inv, k, k_inv,
    photon_number, pn_certified_max, renyi, subentropy, surprisal_moments, von_neumann,
    EntropyFunctional, SurprisalMoments,
};
pub use error::{Error, Result};
pub use majorization::{
    check_spectral_majorization, majorizes, min_inequality_check, MajorizationReport,
};
pub use states::{
    bloch_to_state, partial_trace_second, random_state, random_state_with, random_unitary,
    state_to_bloch, BlochVector, DensityMatrix, Spectrum,
};
pub use verify::{run_verify, CheckOutcome, RunConfig, VerifyReport};
