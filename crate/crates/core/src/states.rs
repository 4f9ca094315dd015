//! Density-matrix data model.
//!
//! A state is validated on construction (Hermitian, unit trace, positive
//! semidefinite) and carries its spin label. The tensor parameters
//! `t^k_q = Tr(ρ τ^k_q)` characterize the state completely; the inverse map
//! `ρ = (1/(2j+1)) Σ t^k_q τ^{k†}_q` rebuilds it.

use num_complex::Complex64;
use rand::Rng;
use serde::Deserialize;
use std::collections::BTreeMap;

use crate::angmom::{spin_operators, tensor_basis, Spin};
use crate::error::{Error, Result};
use crate::kernel::{hermitian_eigensystem, CMatrix};
use crate::tol;

/// Positivity handling on construction. `Permissive` lets eigenvalues down
/// to −1e−6 through with a warning flag, so near-boundary moment-inversion
/// experiments are not blocked by eigenvalue noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidationMode {
    #[default]
    Strict,
    Permissive,
}

/// Validated spin-j density matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    spin: Spin,
    rho: CMatrix,
    positivity_warning: bool,
}

impl DensityMatrix {
    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    /// Set when permissive validation admitted a slightly negative eigenvalue.
    pub fn positivity_warning(&self) -> bool {
        self.positivity_warning
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigensystem(&self.rho)
            .expect("validated state is Hermitian")
            .0
    }

    /// `Tr(ρ A)`.
    pub fn expectation(&self, op: &CMatrix) -> Complex64 {
        self.rho.trace_product(op)
    }

    /// Real part of `Tr(ρ A)` for Hermitian observables.
    pub fn expect_re(&self, op: &CMatrix) -> f64 {
        self.expectation(op).re
    }
}

/// Validates a raw matrix into a density matrix.
pub fn density_from_matrix(raw: CMatrix, spin: Spin, mode: ValidationMode) -> Result<DensityMatrix> {
    if raw.dim() != spin.dim() {
        return Err(Error::InvalidArguments(format!(
            "matrix dimension {} does not match 2j+1 = {}",
            raw.dim(),
            spin.dim()
        )));
    }
    let residual = raw.hermiticity_residual();
    if residual > tol::HERMITICITY {
        return Err(Error::NotHermitian {
            residual,
            tol: tol::HERMITICITY,
        });
    }
    let trace = raw.trace();
    if (trace - Complex64::ONE).norm() > tol::TRACE_ONE {
        return Err(Error::TraceNotOne { trace: trace.re });
    }
    let (eigs, _) = hermitian_eigensystem(&raw)?;
    let min_eig = eigs[0];
    let positivity_warning = match mode {
        ValidationMode::Strict => {
            if min_eig < -tol::POSITIVITY_STRICT {
                return Err(Error::NotPositive { min_eig });
            }
            false
        }
        ValidationMode::Permissive => {
            if min_eig < -tol::POSITIVITY_PERMISSIVE {
                return Err(Error::NotPositive { min_eig });
            }
            min_eig < -tol::POSITIVITY_STRICT
        }
    };
    Ok(DensityMatrix {
        spin,
        rho: raw,
        positivity_warning,
    })
}

/// `I/(2j+1)`.
pub fn maximally_mixed(spin: Spin) -> DensityMatrix {
    DensityMatrix {
        spin,
        rho: CMatrix::identity(spin.dim()).scale_re(1.0 / spin.dim() as f64),
        positivity_warning: false,
    }
}

/// Pure `|m⟩⟨m|` eigenstate of J_z.
pub fn pure_jz_state(spin: Spin, m: f64) -> Result<DensityMatrix> {
    let idx = (spin.j() - m).round();
    if (spin.j() - m - idx).abs() > 1e-9 || idx < 0.0 || idx as usize >= spin.dim() {
        return Err(Error::InvalidArguments(format!(
            "m = {m} is not a projection value for 2j = {}",
            spin.two_j()
        )));
    }
    let idx = idx as usize;
    let mut rho = CMatrix::zeros(spin.dim());
    rho[(idx, idx)] = Complex64::ONE;
    Ok(DensityMatrix {
        spin,
        rho,
        positivity_warning: false,
    })
}

fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller; u1 in (0, 1]
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Random full-rank state `ρ = A A†/Tr(A A†)` with complex Gaussian `A`.
/// Always passes strict validation.
pub fn random_density<R: Rng + ?Sized>(spin: Spin, rng: &mut R) -> DensityMatrix {
    let n = spin.dim();
    let a = CMatrix::from_fn(n, |_, _| {
        Complex64::new(standard_normal(rng), standard_normal(rng))
    });
    let aa = &a * &a.adjoint();
    let rho = aa.scale(Complex64::ONE / aa.trace());
    DensityMatrix {
        spin,
        rho,
        positivity_warning: false,
    }
}

/// Spherical tensor parameters of a state: map `(k, q) → t^k_q`, with
/// `t⁰₀ = 1` and the conjugation constraint `t^{k*}_q = (−1)^q t^k_{−q}`.
#[derive(Debug, Clone)]
pub struct TensorParams {
    spin: Spin,
    entries: BTreeMap<(u32, i32), Complex64>,
}

impl TensorParams {
    /// Builds from explicit entries; unspecified components default to zero
    /// and `t⁰₀` is fixed to one.
    pub fn from_entries(spin: Spin, entries: &[(u32, i32, Complex64)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        map.insert((0, 0), Complex64::ONE);
        for &(k, q, v) in entries {
            if k > spin.two_j() || q.unsigned_abs() > k {
                return Err(Error::OutOfRange {
                    k,
                    q,
                    two_j: spin.two_j(),
                });
            }
            if k == 0 && (v - Complex64::ONE).norm() > tol::HERMITICITY {
                return Err(Error::InvalidArguments(
                    "t⁰₀ is fixed to one by normalization".into(),
                ));
            }
            map.insert((k, q), v);
        }
        let tp = TensorParams { spin, entries: map };
        tp.check_conjugation()?;
        Ok(tp)
    }

    fn check_conjugation(&self) -> Result<()> {
        for (&(k, q), &v) in &self.entries {
            let partner = self.get(k, -q);
            let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
            if (v.conj() - partner * sign).norm() > tol::HERMITICITY {
                return Err(Error::InvalidArguments(format!(
                    "conjugation constraint violated at (k, q) = ({k}, {q})"
                )));
            }
        }
        Ok(())
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    /// `t^k_q`, zero when absent.
    pub fn get(&self, k: u32, q: i32) -> Complex64 {
        self.entries.get(&(k, q)).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i32, Complex64)> + '_ {
        self.entries.iter().map(|(&(k, q), &v)| (k, q, v))
    }

    /// Number of independent real parameters among k ≥ 1 components
    /// (q = 0 entries are real, q > 0 entries are free complex numbers,
    /// q < 0 follows by conjugation): totals (2j+1)² − 1.
    pub fn independent_real_parameters(&self) -> usize {
        let mut count = 0;
        for k in 1..=self.spin.two_j() {
            count += 1; // q = 0, real
            count += 2 * k as usize; // q = 1..k, complex
        }
        count
    }
}

/// `t^k_q = Tr(ρ τ^k_q)` over the full tensor basis.
pub fn tensor_params(rho: &DensityMatrix) -> TensorParams {
    let basis = tensor_basis(rho.spin()).expect("basis ranges are valid by construction");
    let mut entries = BTreeMap::new();
    for op in &basis {
        entries.insert((op.k, op.q), rho.expectation(&op.matrix));
    }
    TensorParams {
        spin: rho.spin(),
        entries,
    }
}

/// `ρ = (1/(2j+1)) Σ_{k,q} t^k_q τ^{k†}_q`, validated per `mode`.
pub fn density_from_tensor_params(tp: &TensorParams, mode: ValidationMode) -> Result<DensityMatrix> {
    tp.check_conjugation()?;
    let spin = tp.spin();
    let n = spin.dim();
    let mut acc = CMatrix::zeros(n);
    for op in tensor_basis(spin)? {
        let coeff = tp.get(op.k, op.q);
        if coeff != Complex64::ZERO {
            acc = &acc + &op.matrix.adjoint().scale(coeff);
        }
    }
    let raw = acc.scale_re(1.0 / n as f64).hermitian_part();
    density_from_matrix(raw, spin, mode)
}

/// Vector polarization `P_i = Tr(ρ J_i)/Tr(ρ)`.
pub fn polarization(rho: &DensityMatrix) -> [f64; 3] {
    let ops = spin_operators(rho.spin());
    [
        rho.expect_re(&ops.jx),
        rho.expect_re(&ops.jy),
        rho.expect_re(&ops.jz),
    ]
}

/// First and symmetrized second Cartesian moments of the spin components.
#[derive(Debug, Clone)]
pub struct CartesianStats {
    /// `⟨J_i⟩`
    pub means: [f64; 3],
    /// `(1/2)⟨J_iJ_k + J_kJ_i⟩`
    pub second_moments: [[f64; 3]; 3],
    /// `Cov(J_i, J_k) = (1/2)⟨{J_i, J_k}⟩ − ⟨J_i⟩⟨J_k⟩`
    pub covariance: [[f64; 3]; 3],
}

impl CartesianStats {
    pub fn variances(&self) -> [f64; 3] {
        [
            self.covariance[0][0],
            self.covariance[1][1],
            self.covariance[2][2],
        ]
    }
}

pub fn cartesian_stats(rho: &DensityMatrix) -> CartesianStats {
    let ops = spin_operators(rho.spin());
    let js = [&ops.jx, &ops.jy, &ops.jz];
    let mut means = [0.0; 3];
    for i in 0..3 {
        means[i] = rho.expect_re(js[i]);
    }
    let mut second = [[0.0; 3]; 3];
    let mut cov = [[0.0; 3]; 3];
    for i in 0..3 {
        for k in i..3 {
            let sym = js[i].anticommutator(js[k]).scale_re(0.5);
            let sm = rho.expect_re(&sym);
            second[i][k] = sm;
            second[k][i] = sm;
            let c = sm - means[i] * means[k];
            cov[i][k] = c;
            cov[k][i] = c;
        }
    }
    CartesianStats {
        means,
        second_moments: second,
        covariance: cov,
    }
}

// ---------------------------------------------------------------------------
// JSON state schema (shared with the CLI)
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct TensorParamEntry {
    k: u32,
    q: i32,
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    j: f64,
    #[serde(default)]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default)]
    tensor_params: Option<Vec<TensorParamEntry>>,
}

/// Parses the JSON state schema
/// `{"j": …, "matrix": [[[re,im],…],…]}` or
/// `{"j": …, "tensor_params": [{"k":…,"q":…,"re":…,"im":…},…]}`.
/// Exactly one of `matrix`/`tensor_params` must be present.
pub fn state_from_json(text: &str, mode: ValidationMode) -> Result<DensityMatrix> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("state file: {e}")))?;
    let spin = Spin::from_j(file.j).map_err(|e| Error::Malformed(e.to_string()))?;
    match (file.matrix, file.tensor_params) {
        (Some(rows), None) => {
            let complex_rows: Vec<Vec<Complex64>> = rows
                .iter()
                .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                .collect();
            let raw = CMatrix::from_rows(&complex_rows)?;
            density_from_matrix(raw, spin, mode)
        }
        (None, Some(entries)) => {
            let list: Vec<(u32, i32, Complex64)> = entries
                .iter()
                .map(|e| (e.k, e.q, Complex64::new(e.re, e.im)))
                .collect();
            let tp = TensorParams::from_entries(spin, &list)?;
            density_from_tensor_params(&tp, mode)
        }
        (Some(_), Some(_)) => Err(Error::Malformed(
            "state file must contain exactly one of \"matrix\" or \"tensor_params\", found both"
                .into(),
        )),
        (None, None) => Err(Error::Malformed(
            "state file must contain one of \"matrix\" or \"tensor_params\"".into(),
        )),
    }
}
