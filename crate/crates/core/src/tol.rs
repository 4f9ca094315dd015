//! Central tolerance table.
//!
//! Every numeric threshold used by the library (and re-used by its tests)
//! lives here so that validation, invariant checks and test assertions
//! cannot drift apart.

/// Entrywise Hermiticity residual `max |M - M†|` accepted on inputs and
/// required of operator-algebra identities.
pub const HERMITICITY: f64 = 1e-12;

/// Allowed deviation of `Tr ρ` from one.
pub const TRACE_ONE: f64 = 1e-12;

/// Unitarity, orthogonality and round-trip residual: `V†V = I`,
/// `Tr(τ τ'†) = n δδ`, moment/PMF and tensor-parameter round trips.
pub const RESIDUAL: f64 = 1e-10;

/// Eigensystem residual `max |M V - V diag(λ)|` guaranteed for dims ≤ 13.
pub const EIG_RESIDUAL: f64 = 1e-9;

/// Strict-mode positivity: smallest eigenvalue of a density matrix must be
/// ≥ `-POSITIVITY_STRICT`.
pub const POSITIVITY_STRICT: f64 = 1e-10;

/// Permissive-mode positivity floor; eigenvalues in
/// `[-POSITIVITY_PERMISSIVE, -POSITIVITY_STRICT)` downgrade to a warning.
pub const POSITIVITY_PERMISSIVE: f64 = 1e-6;

/// Largest imaginary residual tolerated on a symmetrized mixed moment.
pub const MOMENT_IMAG: f64 = 1e-10;

/// Polarization magnitude below which the mean-spin direction (and with it
/// the squeezing criterion) is declared undefined.
pub const POLARIZATION_MIN: f64 = 1e-8;

/// Strictness margin of the squeezing comparison `var < bound - SQUEEZE_MARGIN`.
pub const SQUEEZE_MARGIN: f64 = 1e-12;

/// Slack allowed when checking the uncertainty inequalities.
pub const UNCERTAINTY_SLACK: f64 = 1e-9;

/// Residual accepted on the canonical-frame conditions
/// (`⟨J_x⟩`, `⟨J_y⟩`, covariance all ≈ 0).
pub const FRAME_RESIDUAL: f64 = 1e-10;

/// Sweep cap for the cyclic Jacobi eigensolver.
pub const MAX_JACOBI_SWEEPS: usize = 100;
