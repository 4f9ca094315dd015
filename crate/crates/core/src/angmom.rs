//! Angular-momentum operator factory.
//!
//! Spin matrices come from the ladder construction
//! `⟨m±1|J_±|m⟩ = √(j(j+1) − m(m±1))`. Orthonormal spherical tensor
//! operators `τ^k_q` are built two independent ways: by applying
//! `(J·∇)^k` to the solid harmonic `r^k Y^k_q` written as a polynomial in
//! `x, y, z` (each monomial turns into the fully symmetrized operator
//! product), and from Clebsch-Gordan coefficients
//! `(τ^k_q)_{m'm} = √(2k+1)·C(j k j; m q m')`. Both satisfy
//! `Tr(τ^k_q τ^{k'†}_{q'}) = (2j+1) δ_{kk'} δ_{qq'}` and cross-check each
//! other entrywise.

use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernel::CMatrix;

/// Factorials 0!..=34! as f64; large enough for every coupling sum with
/// j ≤ 6 and k ≤ 12.
const FACTORIALS: [f64; 35] = {
    let mut t = [1.0f64; 35];
    let mut i = 1;
    while i < 35 {
        t[i] = t[i - 1] * i as f64;
        i += 1;
    }
    t
};

fn fact(n: i64) -> f64 {
    debug_assert!((0..35).contains(&n), "factorial argument {n} out of table");
    FACTORIALS[n as usize]
}

/// Spin quantum number stored as 2j, so half-integer spins are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Spin {
    two_j: u32,
}

impl Spin {
    pub fn from_two_j(two_j: u32) -> Self {
        Spin { two_j }
    }

    /// Accepts j as a decimal (1, 0.5, 1.5, ...).
    pub fn from_j(j: f64) -> Result<Self> {
        let two_j = (2.0 * j).round();
        if j < 0.0 || (2.0 * j - two_j).abs() > 1e-9 {
            return Err(Error::InvalidArguments(format!(
                "j = {j} is not a non-negative integer or half-integer"
            )));
        }
        Ok(Spin { two_j: two_j as u32 })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn j(&self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    /// Hilbert-space dimension n = 2j + 1.
    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    /// Projection value at basis index i, ordered m = j, j−1, …, −j.
    pub fn node(&self, i: usize) -> f64 {
        self.j() - i as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.node(i)).collect()
    }

    pub fn casimir(&self) -> f64 {
        self.j() * (self.j() + 1.0)
    }
}

/// The three Cartesian spin matrices for one j.
#[derive(Debug, Clone)]
pub struct SpinOps {
    pub spin: Spin,
    pub jx: CMatrix,
    pub jy: CMatrix,
    pub jz: CMatrix,
}

impl SpinOps {
    pub fn axis(&self, i: usize) -> &CMatrix {
        match i {
            0 => &self.jx,
            1 => &self.jy,
            2 => &self.jz,
            _ => panic!("axis index {i} out of range"),
        }
    }

    /// `n̂·J` for a (not necessarily unit) direction vector.
    pub fn dot(&self, n: [f64; 3]) -> CMatrix {
        &(&self.jx.scale_re(n[0]) + &self.jy.scale_re(n[1])) + &self.jz.scale_re(n[2])
    }
}

/// Ladder construction of J_x, J_y, J_z.
pub fn spin_operators(spin: Spin) -> SpinOps {
    let n = spin.dim();
    let j = spin.j();
    let mut jplus = CMatrix::zeros(n);
    // basis index i holds m = j - i; J_+ maps |m⟩ to |m+1⟩ (index i-1)
    for i in 1..n {
        let m = spin.node(i);
        jplus[(i - 1, i)] = Complex64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let jminus = jplus.adjoint();
    let jx = (&jplus + &jminus).scale_re(0.5);
    let jy = (&jplus - &jminus).scale(Complex64::new(0.0, -0.5));
    let jz = CMatrix::diagonal(&spin.nodes());
    SpinOps { spin, jx, jy, jz }
}

fn doubled(value: f64, name: &str) -> Result<i64> {
    let d = (2.0 * value).round();
    if (2.0 * value - d).abs() > 1e-9 {
        return Err(Error::InvalidArguments(format!(
            "{name} = {value} is not an integer or half-integer"
        )));
    }
    Ok(d as i64)
}

/// Clebsch-Gordan coefficient `C(j1 j2 J; m1 m2 M)` with the
/// Condon-Shortley phase, evaluated by the closed-form alternating sum.
///
/// Returns 0 when `M ≠ m1 + m2` or the triangle rule fails.
pub fn clebsch_gordan(j1: f64, m1: f64, j2: f64, m2: f64, jt: f64, mt: f64) -> Result<f64> {
    let tj1 = doubled(j1, "j1")?;
    let tm1 = doubled(m1, "m1")?;
    let tj2 = doubled(j2, "j2")?;
    let tm2 = doubled(m2, "m2")?;
    let tjt = doubled(jt, "J")?;
    let tmt = doubled(mt, "M")?;

    for (tj, tm, nj, nm) in [
        (tj1, tm1, "j1", "m1"),
        (tj2, tm2, "j2", "m2"),
        (tjt, tmt, "J", "M"),
    ] {
        if tj < 0 {
            return Err(Error::InvalidArguments(format!("{nj} must be non-negative")));
        }
        if (tj - tm) % 2 != 0 {
            return Err(Error::InvalidArguments(format!(
                "{nj} and {nm} differ in integer/half-integer character"
            )));
        }
        if tm.abs() > tj {
            return Err(Error::InvalidArguments(format!("|{nm}| exceeds {nj}")));
        }
    }

    if tmt != tm1 + tm2 {
        return Ok(0.0);
    }
    // triangle rule, and j1 + j2 + J must be an integer
    if (tj1 + tj2 + tjt) % 2 != 0
        || tj1 + tj2 - tjt < 0
        || tj1 - tj2 + tjt < 0
        || -tj1 + tj2 + tjt < 0
    {
        return Ok(0.0);
    }

    // all factorial arguments below are genuine integers
    let i = |x: i64| -> i64 {
        debug_assert!(x % 2 == 0);
        x / 2
    };
    let prefactor = ((f64::from(tjt as i32) + 1.0)
        * fact(i(tj1 + tj2 - tjt))
        * fact(i(tj1 - tj2 + tjt))
        * fact(i(-tj1 + tj2 + tjt))
        / fact(i(tj1 + tj2 + tjt) + 1))
    .sqrt()
        * (fact(i(tjt + tmt))
            * fact(i(tjt - tmt))
            * fact(i(tj1 - tm1))
            * fact(i(tj1 + tm1))
            * fact(i(tj2 - tm2))
            * fact(i(tj2 + tm2)))
        .sqrt();

    let kmin = 0.max(i(tj2 - tjt - tm1)).max(i(tj1 + tm2 - tjt));
    let kmax = i(tj1 + tj2 - tjt).min(i(tj1 - tm1)).min(i(tj2 + tm2));
    let mut sum = 0.0;
    for k in kmin..=kmax {
        let denom = fact(k)
            * fact(i(tj1 + tj2 - tjt) - k)
            * fact(i(tj1 - tm1) - k)
            * fact(i(tj2 + tm2) - k)
            * fact(i(tjt - tj2 + tm1) + k)
            * fact(i(tjt - tj1 - tm2) + k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / denom;
    }
    Ok(prefactor * sum)
}

/// One orthonormal spherical tensor operator.
#[derive(Debug, Clone)]
pub struct TensorOp {
    pub spin: Spin,
    pub k: u32,
    pub q: i32,
    pub matrix: CMatrix,
}

fn check_range(spin: Spin, k: u32, q: i32) -> Result<()> {
    if k > spin.two_j() || q.unsigned_abs() > k {
        return Err(Error::OutOfRange {
            k,
            q,
            two_j: spin.two_j(),
        });
    }
    Ok(())
}

/// Normalization factor `N⁻¹_{kj} = (2^k/k!) √(4π (2j−k)! (2j+1) / (2j+k+1)!)`.
fn weyl_normalization(spin: Spin, k: u32) -> f64 {
    let two_j = i64::from(spin.two_j());
    let k = i64::from(k);
    (2.0f64.powi(k as i32) / fact(k))
        * (4.0 * PI * fact(two_j - k) * (two_j as f64 + 1.0) / fact(two_j + k + 1)).sqrt()
}

/// Solid harmonic `r^k Y^k_q` as a polynomial in (x, y, z):
/// map (a, b, c) → complex coefficient of `x^a y^b z^c`.
fn solid_harmonic(k: u32, q: i32) -> HashMap<(u32, u32, u32), Complex64> {
    let kk = i64::from(k);
    let qq = i64::from(q);
    let pref = ((2.0 * kk as f64 + 1.0) / (4.0 * PI)).sqrt() * (fact(kk + qq) * fact(kk - qq)).sqrt();

    let mut terms: HashMap<(u32, u32, u32), Complex64> = HashMap::new();
    let i_unit = Complex64::new(0.0, 1.0);
    let p_min = 0.max(-qq);
    let mut p = p_min;
    while kk - qq - 2 * p >= 0 {
        let u = (p + qq) as u32; // power of (x + iy), with factor (−1/2)^u
        let v = p as u32; //        power of (x − iy), with factor (1/2)^v
        let w = (kk - qq - 2 * p) as u32; // power of z
        let base = pref * (-0.5f64).powi(u as i32) * 0.5f64.powi(v as i32)
            / (fact(i64::from(u)) * fact(i64::from(v)) * fact(i64::from(w)));
        // expand (x + iy)^u (x − iy)^v
        for s in 0..=u {
            for t in 0..=v {
                let coeff = Complex64::new(
                    base * binomial(u, s) * binomial(v, t),
                    0.0,
                ) * i_unit.powu(u - s)
                    * (-i_unit).powu(v - t);
                let key = (s + t, (u - s) + (v - t), w);
                *terms.entry(key).or_insert(Complex64::ZERO) += coeff;
            }
        }
        p += 1;
    }
    terms.retain(|_, c| c.norm() > 0.0);
    terms
}

fn binomial(n: u32, k: u32) -> f64 {
    fact(i64::from(n)) / (fact(i64::from(k)) * fact(i64::from(n - k)))
}

/// `τ^k_q` by k-fold formal differentiation of the solid harmonic: the
/// operator `(J_x ∂_x + J_y ∂_y + J_z ∂_z)` is applied k times to the
/// polynomial, with matrix-valued coefficients accumulating the ordered
/// products of spin matrices, then the result is scaled by `N⁻¹_{kj}`.
pub fn tensor_operator_weyl(spin: Spin, k: u32, q: i32) -> Result<TensorOp> {
    check_range(spin, k, q)?;
    let ops = spin_operators(spin);
    let n = spin.dim();

    let mut poly: HashMap<(u32, u32, u32), CMatrix> = solid_harmonic(k, q)
        .into_iter()
        .map(|(key, coeff)| (key, CMatrix::identity(n).scale(coeff)))
        .collect();

    for _ in 0..k {
        let mut next: HashMap<(u32, u32, u32), CMatrix> = HashMap::new();
        for ((a, b, c), m) in &poly {
            let mut push = |key: (u32, u32, u32), term: CMatrix| match next.get_mut(&key) {
                Some(acc) => *acc = &*acc + &term,
                None => {
                    next.insert(key, term);
                }
            };
            if *a > 0 {
                push((a - 1, *b, *c), (&ops.jx * m).scale_re(f64::from(*a)));
            }
            if *b > 0 {
                push((*a, b - 1, *c), (&ops.jy * m).scale_re(f64::from(*b)));
            }
            if *c > 0 {
                push((*a, *b, c - 1), (&ops.jz * m).scale_re(f64::from(*c)));
            }
        }
        poly = next;
    }

    let matrix = poly
        .remove(&(0, 0, 0))
        .unwrap_or_else(|| CMatrix::zeros(n))
        .scale_re(weyl_normalization(spin, k));
    Ok(TensorOp { spin, k, q, matrix })
}

/// `τ^k_q` from Clebsch-Gordan coefficients:
/// `(τ^k_q)_{m'm} = √(2k+1) · C(j k j; m q m')`.
pub fn tensor_operator_cg(spin: Spin, k: u32, q: i32) -> Result<TensorOp> {
    check_range(spin, k, q)?;
    let n = spin.dim();
    let j = spin.j();
    let scale = (2.0 * f64::from(k) + 1.0).sqrt();
    let mut matrix = CMatrix::zeros(n);
    for row in 0..n {
        let m_out = spin.node(row);
        for col in 0..n {
            let m_in = spin.node(col);
            let cg = clebsch_gordan(j, m_in, f64::from(k), f64::from(q), j, m_out)?;
            matrix[(row, col)] = Complex64::new(scale * cg, 0.0);
        }
    }
    Ok(TensorOp { spin, k, q, matrix })
}

/// The full set of tensor operators `{τ^k_q : 0 ≤ k ≤ 2j, |q| ≤ k}`.
pub fn tensor_basis(spin: Spin) -> Result<Vec<TensorOp>> {
    let mut out = Vec::new();
    for k in 0..=spin.two_j() {
        for q in -(k as i32)..=(k as i32) {
            out.push(tensor_operator_weyl(spin, k, q)?);
        }
    }
    Ok(out)
}

/// Weaver's spin-1 operator triple `Σ₁ = J_x² − J_y²`, `Σ₂ = J_xJ_y + J_yJ_x`,
/// `Σ₃ = J_z`, which closes the Pauli-like algebra
/// `Σ_iΣ_j = δ_ij J_z² + iε_ijk Σ_k`.
pub fn sigma_operators() -> (CMatrix, CMatrix, CMatrix) {
    let ops = spin_operators(Spin::from_two_j(2));
    let sigma1 = &(&ops.jx * &ops.jx) - &(&ops.jy * &ops.jy);
    let sigma2 = ops.jx.anticommutator(&ops.jy);
    (sigma1, sigma2, ops.jz)
}
