//! Canonical-frame construction and spin-squeezing detection.
//!
//! Squeezing of a transverse component is only well defined once the frame
//! is fixed: the z-axis is rotated onto the mean spin direction (the vector
//! polarization), then a rotation about z zeroes the J_x–J_y covariance.
//! In that frame a component is squeezed when its variance falls below
//! `|⟨J_z⟩|/2`. The same decision is expressed through the spherical tensor
//! parameters of the rotated state; for spin 1 the two forms are equal up to
//! the factor `3/(j(j+1))` and the report carries both.

use serde::Serialize;

use crate::angmom::{spin_operators, tensor_operator_weyl};
use crate::error::{Error, Result};
use crate::kernel::{hermitian_eigensystem, unitary_from_hermitian_generator, CMatrix};
use crate::states::{
    cartesian_stats, density_from_matrix, polarization, DensityMatrix, ValidationMode,
};
use crate::tol;

/// Conjugates the state by `e^{−i·angle·n̂·J}`, which rotates its
/// polarization vector by `angle` about `axis` (right-hand rule).
pub fn rotate_state(rho: &DensityMatrix, axis: [f64; 3], angle: f64) -> Result<DensityMatrix> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if norm < 1e-14 {
        return Err(Error::InvalidArguments("rotation axis must be nonzero".into()));
    }
    let unit = [axis[0] / norm, axis[1] / norm, axis[2] / norm];
    let ops = spin_operators(rho.spin());
    let u = unitary_from_hermitian_generator(&ops.dot(unit), -angle)?;
    let rotated = (&(&u * rho.matrix()) * &u.adjoint()).hermitian_part();
    density_from_matrix(rotated, rho.spin(), ValidationMode::Permissive)
}

/// The state expressed in the canonical frame, with the rotations
/// (axis, angle) that were applied in order.
#[derive(Debug, Clone)]
pub struct CanonicalFrame {
    pub state: DensityMatrix,
    pub rotations: Vec<([f64; 3], f64)>,
}

/// Rotates the mean spin direction onto +z, then zeroes the transverse
/// covariance by a rotation about z, picking the branch with
/// `(ΔJ_x)² ≤ (ΔJ_y)²`.
///
/// Fails with `UndefinedMeanSpinDirection` when the polarization magnitude
/// is below [`tol::POLARIZATION_MIN`]: without a mean spin direction the
/// squeezing criterion does not apply.
pub fn canonical_frame(rho: &DensityMatrix) -> Result<CanonicalFrame> {
    let p = polarization(rho);
    let magnitude = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    if magnitude < tol::POLARIZATION_MIN {
        return Err(Error::UndefinedMeanSpinDirection {
            magnitude,
            min: tol::POLARIZATION_MIN,
        });
    }

    let mut rotations: Vec<([f64; 3], f64)> = Vec::new();
    // step 1: align the polarization with +z
    let cross = [p[1], -p[0], 0.0]; // P × ẑ
    let cross_norm = (cross[0] * cross[0] + cross[1] * cross[1]).sqrt();
    let aligned = if cross_norm < 1e-14 * magnitude {
        if p[2] > 0.0 {
            rho.clone()
        } else {
            // anti-aligned: π about x̂ by convention
            let axis = [1.0, 0.0, 0.0];
            let state = rotate_state(rho, axis, std::f64::consts::PI)?;
            rotations.push((axis, std::f64::consts::PI));
            state
        }
    } else {
        let axis = [cross[0] / cross_norm, cross[1] / cross_norm, 0.0];
        let angle = (p[2] / magnitude).clamp(-1.0, 1.0).acos();
        let state = rotate_state(rho, axis, angle)?;
        rotations.push((axis, angle));
        state
    };

    // step 2: zero the J_x–J_y covariance about z; of the two zeros 90°
    // apart take the one with var_x ≤ var_y, smallest angle on ties
    let stats = cartesian_stats(&aligned);
    let cxy = stats.covariance[0][1];
    let diff = stats.covariance[0][0] - stats.covariance[1][1];
    let base = 0.5 * (-2.0 * cxy).atan2(diff);
    let mut candidates = vec![0.0];
    for k in 0..4 {
        candidates.push(
            (base + f64::from(k) * std::f64::consts::FRAC_PI_2).rem_euclid(std::f64::consts::PI),
        );
    }
    let mut best: Option<(f64, DensityMatrix)> = None;
    for angle in candidates {
        let candidate = if angle.abs() < 1e-15 {
            aligned.clone()
        } else {
            rotate_state(&aligned, [0.0, 0.0, 1.0], angle)?
        };
        let s = cartesian_stats(&candidate);
        if s.covariance[0][1].abs() > tol::FRAME_RESIDUAL {
            continue;
        }
        if s.covariance[0][0] > s.covariance[1][1] + tol::FRAME_RESIDUAL {
            continue;
        }
        match &best {
            Some((prev_angle, _)) if *prev_angle <= angle + 1e-15 => {}
            _ => best = Some((angle, candidate)),
        }
    }
    let (angle, state) = best
        .ok_or_else(|| Error::InvalidArguments("covariance-zeroing rotation not found".into()))?;
    if angle.abs() >= 1e-15 {
        rotations.push(([0.0, 0.0, 1.0], angle));
    }

    debug_assert!({
        let s = cartesian_stats(&state);
        let p = polarization(&state);
        p[0].abs() <= tol::FRAME_RESIDUAL
            && p[1].abs() <= tol::FRAME_RESIDUAL
            && p[2] >= 0.0
            && s.covariance[0][1].abs() <= tol::FRAME_RESIDUAL
    });

    Ok(CanonicalFrame { state, rotations })
}

/// Squeezing diagnostics in the canonical frame.
#[derive(Debug, Clone, Serialize)]
pub struct SqueezeReport {
    pub var_x: f64,
    pub var_y: f64,
    pub covariance_residual: f64,
    pub bound: f64,
    pub squeezed_x: bool,
    pub squeezed_y: bool,
    pub tensor_lhs: f64,
    pub tensor_rhs: f64,
    pub schrodinger_ok: bool,
    pub robertson_ok: bool,
}

impl SqueezeReport {
    pub fn squeezed(&self) -> bool {
        self.squeezed_x || self.squeezed_y
    }
}

/// Computes variances, the bound `|⟨J_z⟩|/2` and both squeezing criteria in
/// the canonical frame of the state.
///
/// The tensor-form sides are
/// `lhs = 1 + √(3(2j+3)(2j−1)/(40 j(j+1)))·(2t²₂ − √(2/3) t²₀)` and
/// `rhs = (1/2)√(3/(j(j+1)))·|t¹₀|`, taken from the rotated state; squeezing
/// in x is `lhs < rhs`. For spin 1, `lhs` equals `(3/(j(j+1)))·var_x`.
pub fn squeezing_report(rho: &DensityMatrix) -> Result<SqueezeReport> {
    let frame = canonical_frame(rho)?;
    let state = &frame.state;
    let stats = cartesian_stats(state);
    let var_x = stats.covariance[0][0];
    let var_y = stats.covariance[1][1];
    let covariance_residual = stats.covariance[0][1];
    let bound = stats.means[2].abs() / 2.0;

    let spin = state.spin();
    let j = spin.j();
    let t10 = state.expect_re(&tensor_operator_weyl(spin, 1, 0)?.matrix);
    let (t20, t22) = if spin.two_j() >= 2 {
        (
            state.expect_re(&tensor_operator_weyl(spin, 2, 0)?.matrix),
            state.expect_re(&tensor_operator_weyl(spin, 2, 2)?.matrix),
        )
    } else {
        (0.0, 0.0)
    };
    let coeff = (3.0 * (2.0 * j + 3.0) * (2.0 * j - 1.0) / (40.0 * j * (j + 1.0))).sqrt();
    let tensor_lhs = 1.0 + coeff * (2.0 * t22 - (2.0 / 3.0f64).sqrt() * t20);
    let tensor_rhs = 0.5 * (3.0 / (j * (j + 1.0))).sqrt() * t10.abs();

    let bound_sq = bound * bound;
    let schrodinger_ok = var_x * var_y - covariance_residual * covariance_residual
        >= bound_sq - tol::UNCERTAINTY_SLACK;
    let robertson_ok = var_x * var_y >= bound_sq - tol::UNCERTAINTY_SLACK;

    let report = SqueezeReport {
        var_x,
        var_y,
        covariance_residual,
        bound,
        squeezed_x: var_x < bound - tol::SQUEEZE_MARGIN,
        squeezed_y: var_y < bound - tol::SQUEEZE_MARGIN,
        tensor_lhs,
        tensor_rhs,
        schrodinger_ok,
        robertson_ok,
    };
    if spin.two_j() == 2 {
        debug_assert!(
            (report.tensor_lhs - 3.0 / (j * (j + 1.0)) * var_x).abs() <= 1e-8,
            "tensor and variance forms disagree for spin 1"
        );
    }
    Ok(report)
}

/// True when the state is diagonal in some rotated J_z eigenbasis, decided
/// by whether any direction n̂ has `[ρ, n̂·J] = 0`. The commutators are
/// linear in n̂, so the 3×3 Gram matrix `G_ik = Re Tr([ρ,J_i]† [ρ,J_k])`
/// settles it: the state is oriented iff `min over unit n̂ of ‖[ρ, n̂·J]‖_F
/// = √λ_min(G)` is below the tolerance.
pub fn is_oriented(rho: &DensityMatrix, tolerance: f64) -> bool {
    let ops = spin_operators(rho.spin());
    let comms = [
        rho.matrix().commutator(&ops.jx),
        rho.matrix().commutator(&ops.jy),
        rho.matrix().commutator(&ops.jz),
    ];
    let gram = CMatrix::from_fn(3, |r, c| {
        num_complex::Complex64::new(comms[r].adjoint().trace_product(&comms[c]).re, 0.0)
    })
    .hermitian_part();
    let (eigs, _) = hermitian_eigensystem(&gram).expect("gram matrix is Hermitian");
    eigs[0].max(0.0).sqrt() <= tolerance
}
