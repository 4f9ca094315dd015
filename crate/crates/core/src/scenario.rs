//! Physical state generator: a spin-1 nucleus with an electric quadrupole
//! moment in a combined quadrupole + dipole magnetic field.
//!
//! In the principal axes frame of the field gradient the Hamiltonian is
//!
//! ```text
//! H = −ω_L J_z + (ω_Q/6)(3J_z² − j(j+1)·I + η (J_x² − J_y²))
//! ```
//!
//! with Larmor strength ω_L, quadrupole coupling ω_Q and asymmetry
//! η ∈ [0, 1] (ħ = 1). Thermal (Gibbs) states of this Hamiltonian populate
//! exactly the {t¹₀, t²₀, t²₂ real} tensor-parameter pattern and feed the
//! squeezing scan.

use serde::Deserialize;

use crate::angmom::{spin_operators, Spin};
use crate::error::{Error, Result};
use crate::kernel::{hermitian_eigensystem, CMatrix};
use crate::squeezing::{squeezing_report, SqueezeReport};
use crate::states::{
    density_from_matrix, density_from_tensor_params, tensor_params, DensityMatrix, ValidationMode,
};
use crate::tol;

/// Field and bath parameters (ħ = 1 energy units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldParams {
    /// Larmor/Zeeman strength.
    pub omega_l: f64,
    /// Quadrupole coupling.
    pub omega_q: f64,
    /// Field-gradient asymmetry, in [0, 1].
    pub eta: f64,
    /// Inverse temperature, > 0.
    pub beta: f64,
}

impl FieldParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(Error::InvalidArguments(format!(
                "eta = {} outside [0, 1]",
                self.eta
            )));
        }
        if self.beta <= 0.0 || !self.beta.is_finite() {
            return Err(Error::InvalidArguments(format!(
                "beta = {} must be positive and finite",
                self.beta
            )));
        }
        Ok(())
    }
}

/// `H = −ω_L J_z + (ω_Q/6)(3J_z² − j(j+1) I + η(J_x² − J_y²))`.
pub fn hamiltonian(spin: Spin, fp: &FieldParams) -> CMatrix {
    let ops = spin_operators(spin);
    let n = spin.dim();
    let jz2 = &ops.jz * &ops.jz;
    let quad = &(&jz2.scale_re(3.0) - &CMatrix::identity(n).scale_re(spin.casimir()))
        + &(&(&ops.jx * &ops.jx) - &(&ops.jy * &ops.jy)).scale_re(fp.eta);
    &ops.jz.scale_re(-fp.omega_l) + &quad.scale_re(fp.omega_q / 6.0)
}

/// Gibbs state `e^{−βH}/Tr e^{−βH}` via the spectral decomposition. The spin
/// label is recovered from the matrix dimension.
pub fn thermal_state(h: &CMatrix, beta: f64) -> Result<DensityMatrix> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::InvalidArguments(format!(
            "beta = {beta} must be positive and finite"
        )));
    }
    let (eigs, v) = hermitian_eigensystem(h)?;
    let ground = eigs[0];
    let weights: Vec<f64> = eigs.iter().map(|e| (-beta * (e - ground)).exp()).collect();
    let z: f64 = weights.iter().sum();
    let n = h.dim();
    let diag = CMatrix::from_fn(n, |r, c| {
        if r == c {
            num_complex::Complex64::new(weights[r] / z, 0.0)
        } else {
            num_complex::Complex64::ZERO
        }
    });
    let rho = (&(&v * &diag) * &v.adjoint()).hermitian_part();
    let spin = Spin::from_two_j(n as u32 - 1);
    density_from_matrix(rho, spin, ValidationMode::Strict)
}

/// Inclusive linear range: `steps` points from `start` to `stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl RangeSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.start];
        }
        let width = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| self.start + width * i as f64)
            .collect()
    }
}

impl<'de> Deserialize<'de> for RangeSpec {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw: [f64; 3] = Deserialize::deserialize(deserializer)?;
        let steps = raw[2];
        if steps < 1.0 || steps.fract() != 0.0 {
            return Err(serde::de::Error::custom(format!(
                "range step count must be a positive integer, got {steps}"
            )));
        }
        Ok(RangeSpec {
            start: raw[0],
            stop: raw[1],
            steps: steps as usize,
        })
    }
}

/// Scan configuration: `{"j": …, "omega_l": [start, stop, steps], …}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub j: f64,
    pub omega_l: RangeSpec,
    pub omega_q: RangeSpec,
    pub eta: RangeSpec,
    pub beta: RangeSpec,
}

impl ScanConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("scan config: {e}")))
    }

    pub fn grid(&self) -> Vec<FieldParams> {
        let mut points = Vec::new();
        for &omega_l in &self.omega_l.values() {
            for &omega_q in &self.omega_q.values() {
                for &eta in &self.eta.values() {
                    for &beta in &self.beta.values() {
                        points.push(FieldParams {
                            omega_l,
                            omega_q,
                            eta,
                            beta,
                        });
                    }
                }
            }
        }
        points
    }
}

/// Outcome at one grid point.
#[derive(Debug, Clone)]
pub enum PointOutcome {
    Report(SqueezeReport),
    /// polarization too small for the squeezing criterion to apply
    UndefinedMeanSpin,
}

/// Per-grid-point squeezing reports plus index bookkeeping. Every squeezed
/// point is re-verified through the tensor-parameter round trip; indices
/// where that re-verification disagreed land in `verification_failures`
/// (normally empty).
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub points: Vec<(FieldParams, PointOutcome)>,
    pub squeezed_indices: Vec<usize>,
    pub skipped_indices: Vec<usize>,
    pub verification_failures: Vec<usize>,
}

fn reverify(rho: &DensityMatrix, report: &SqueezeReport) -> bool {
    // rebuild the state from its tensor parameters and recompute
    let tp = tensor_params(rho);
    let rebuilt = match density_from_tensor_params(&tp, ValidationMode::Permissive) {
        Ok(state) => state,
        Err(_) => return false,
    };
    match squeezing_report(&rebuilt) {
        Ok(second) => {
            (second.var_x - report.var_x).abs() <= tol::RESIDUAL
                && (second.var_y - report.var_y).abs() <= tol::RESIDUAL
                && (second.bound - report.bound).abs() <= tol::RESIDUAL
                && second.squeezed_x == report.squeezed_x
                && second.squeezed_y == report.squeezed_y
        }
        Err(_) => false,
    }
}

/// Runs the thermal-state squeezing scan over the grid. Deterministic for a
/// fixed grid; per-point failures are recorded, never thrown.
pub fn scan(spin: Spin, grid: &[FieldParams]) -> Result<ScanResult> {
    let mut points = Vec::with_capacity(grid.len());
    let mut squeezed_indices = Vec::new();
    let mut skipped_indices = Vec::new();
    let mut verification_failures = Vec::new();

    for (idx, fp) in grid.iter().enumerate() {
        fp.validate()?;
        let h = hamiltonian(spin, fp);
        let rho = thermal_state(&h, fp.beta)?;
        match squeezing_report(&rho) {
            Ok(report) => {
                if report.squeezed() {
                    squeezed_indices.push(idx);
                    if !reverify(&rho, &report) {
                        verification_failures.push(idx);
                    }
                }
                points.push((*fp, PointOutcome::Report(report)));
            }
            Err(Error::UndefinedMeanSpinDirection { .. }) => {
                skipped_indices.push(idx);
                points.push((*fp, PointOutcome::UndefinedMeanSpin));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ScanResult {
        points,
        squeezed_indices,
        skipped_indices,
        verification_failures,
    })
}
