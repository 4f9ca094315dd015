//! Small dense complex-matrix arithmetic and a Hermitian eigensolver.
//!
//! Everything in the library runs through these routines: spin operators,
//! tensor operators, density matrices, rotations and thermal states are all
//! square complex matrices of dimension 2j+1. At those sizes a cyclic Jacobi
//! sweep is robust and has no dependencies.

use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::tol;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        CMatrix {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds a matrix from nested rows, rejecting non-square or non-finite input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Malformed("matrix has no rows".into()));
        }
        let mut m = CMatrix::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Malformed(format!(
                    "row {r} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::Malformed(format!("non-finite entry at ({r},{c})")));
                }
                m[(r, c)] = v;
            }
        }
        Ok(m)
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = CMatrix::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        CMatrix::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// `max_{rc} |self - other|` entrywise.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Entrywise residual `max |M - M†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// `(M + M†)/2`; kills sub-tolerance asymmetry before eigensolving.
    pub fn hermitian_part(&self) -> Self {
        CMatrix::from_fn(self.dim, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &CMatrix) -> CMatrix {
        &(self * other) + &(other * self)
    }

    /// `Tr(self · other)`.
    pub fn trace_product(&self, other: &CMatrix) -> Complex64 {
        assert_eq!(self.dim, other.dim);
        let mut acc = Complex64::ZERO;
        for r in 0..self.dim {
            for c in 0..self.dim {
                acc += self[(r, c)] * other[(c, r)];
            }
        }
        acc
    }

    /// Integer matrix power by repeated multiplication.
    pub fn powi(&self, n: u32) -> CMatrix {
        let mut acc = CMatrix::identity(self.dim);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

/// Eigenvalues (ascending) and a unitary of eigenvectors (columns) of a
/// Hermitian matrix, by cyclic Jacobi with complex plane rotations.
///
/// The input must be Hermitian within [`tol::HERMITICITY`]; the sub-tolerance
/// asymmetry is projected out before sweeping.
pub fn hermitian_eigensystem(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let residual = m.hermiticity_residual();
    if residual > tol::HERMITICITY {
        return Err(Error::NotHermitian {
            residual,
            tol: tol::HERMITICITY,
        });
    }
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = CMatrix::identity(n);

    if n == 1 {
        return Ok((vec![a[(0, 0)].re], v));
    }

    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let stop = f64::EPSILON * scale;

    let mut converged = false;
    for _ in 0..tol::MAX_JACOBI_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n - 1 {
            for q in p + 1..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= stop {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let beta = a[(p, q)];
                let r = beta.norm();
                if r <= stop {
                    continue;
                }
                let phase = beta / r;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if theta >= 0.0 {
                    -1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = phase.conj() * (t * c);

                // A <- A R with R[p][p]=c, R[q][p]=s, R[p][q]=-s̄, R[q][q]=c
                for row in 0..n {
                    let aip = a[(row, p)];
                    let aiq = a[(row, q)];
                    a[(row, p)] = aip * c + aiq * s;
                    a[(row, q)] = aiq * c - aip * s.conj();
                }
                // A <- R† A
                for col in 0..n {
                    let apj = a[(p, col)];
                    let aqj = a[(q, col)];
                    a[(p, col)] = apj * c + aqj * s.conj();
                    a[(q, col)] = aqj * c - apj * s;
                }
                a[(p, q)] = Complex64::ZERO;
                a[(q, p)] = Complex64::ZERO;
                for row in 0..n {
                    let vip = v[(row, p)];
                    let viq = v[(row, q)];
                    v[(row, p)] = vip * c + viq * s;
                    v[(row, q)] = viq * c - vip * s.conj();
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(tol::MAX_JACOBI_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| eigs[i].partial_cmp(&eigs[j]).unwrap());
    let sorted: Vec<f64> = order.iter().map(|&i| eigs[i]).collect();
    let vecs = CMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok((sorted, vecs))
}

/// `e^{i s H}` for Hermitian `H`, through the spectral decomposition.
pub fn unitary_from_hermitian_generator(h: &CMatrix, s: f64) -> Result<CMatrix> {
    let (eigs, v) = hermitian_eigensystem(h)?;
    let n = h.dim();
    let phases = CMatrix::from_fn(n, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, s * eigs[r])
        } else {
            Complex64::ZERO
        }
    });
    Ok(&(&v * &phases) * &v.adjoint())
}

/// Singular values of a real rectangular matrix (rows of equal length),
/// descending, by one-sided Jacobi orthogonalization of the columns.
///
/// One-sided Jacobi keeps small singular values accurate to roughly
/// `ε · σ_max`, which the numerical-rank checks rely on.
pub fn singular_values(rows: &[Vec<f64>]) -> Vec<f64> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
    // column-major copy
    let mut cols: Vec<Vec<f64>> = (0..ncols).map(|c| rows.iter().map(|r| r[c]).collect()).collect();

    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };

    for _ in 0..60 {
        let mut rotated = false;
        for i in 0..ncols.saturating_sub(1) {
            for j in i + 1..ncols {
                let alpha = dot(&cols[i], &cols[i]);
                let beta = dot(&cols[j], &cols[j]);
                let gamma = dot(&cols[i], &cols[j]);
                if alpha * beta == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (zeta * zeta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = c * t;
                for r in 0..cols[i].len() {
                    let vi = cols[i][r];
                    let vj = cols[j][r];
                    cols[i][r] = c * vi - s * vj;
                    cols[j][r] = s * vi + c * vj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}
