//! Operator-ordering engines.
//!
//! A classical monomial `X^a Y^b Z^c` maps to an operator two ways here:
//!
//! * Wigner-Weyl: the mean over all `(a+b+c)!/(a!b!c!)` distinct
//!   interleavings of the multiset {J_x × a, J_y × b, J_z × c};
//! * Margenau-Hill: the mean over the six block orderings of
//!   `J_x^a`, `J_y^b`, `J_z^c`.
//!
//! Mixed moments are traces against these averaged symmetrizers, so a single
//! contract `μ^{abc} = Tr(ρ · S)` serves both rules. The matching
//! characteristic functions are `Tr(ρ e^{iI·J})` and the six-ordering average
//! of `e^{iI_xJ_x} e^{iI_yJ_y} e^{iI_zJ_z}`; derivatives at the origin
//! reproduce the moments, which the tests exploit as an independent oracle.

use num_complex::Complex64;
use std::collections::HashMap;

use crate::angmom::{spin_operators, Spin, SpinOps};
use crate::error::{Error, Result};
use crate::kernel::{singular_values, unitary_from_hermitian_generator, CMatrix};
use crate::states::{maximally_mixed, DensityMatrix};
use crate::tol;

/// Operator-ordering rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    WignerWeyl,
    MargenauHill,
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::WignerWeyl => "ww",
            Rule::MargenauHill => "mh",
        }
    }

    pub fn parse(s: &str) -> Result<Rule> {
        match s.to_ascii_lowercase().as_str() {
            "ww" => Ok(Rule::WignerWeyl),
            "mh" => Ok(Rule::MargenauHill),
            other => Err(Error::Malformed(format!(
                "unknown rule \"{other}\", expected \"ww\" or \"mh\""
            ))),
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

fn multinomial(a: u32, b: u32, c: u32) -> u128 {
    // (a+b+c)! / (a! b! c!) via incremental binomials to stay in integers
    let choose = |n: u128, k: u128| -> u128 {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    };
    let ab = u128::from(a) + u128::from(b);
    let abc = ab + u128::from(c);
    choose(ab, u128::from(a)) * choose(abc, u128::from(c))
}

/// Sums of all distinct interleavings of {J_x × a, J_y × b, J_z × c} for
/// every (a, b, c) up to the given degrees, by recursion on the leading
/// factor: sum(a,b,c) = J_x·sum(a−1,b,c) + J_y·sum(a,b−1,c) + J_z·sum(a,b,c−1).
/// Every multiset permutation is generated exactly once; the builder asserts
/// that the term count equals the multinomial coefficient.
struct WeylTable {
    amax: u32,
    bmax: u32,
    cmax: u32,
    sums: Vec<CMatrix>,
}

impl WeylTable {
    fn build(ops: &SpinOps, amax: u32, bmax: u32, cmax: u32) -> WeylTable {
        let dims = ((amax + 1) * (bmax + 1) * (cmax + 1)) as usize;
        let n = ops.spin.dim();
        let mut sums: Vec<CMatrix> = Vec::with_capacity(dims);
        let mut counts: Vec<u128> = Vec::with_capacity(dims);
        let idx =
            |a: u32, b: u32, c: u32| -> usize { ((a * (bmax + 1) + b) * (cmax + 1) + c) as usize };
        for a in 0..=amax {
            for b in 0..=bmax {
                for c in 0..=cmax {
                    if a == 0 && b == 0 && c == 0 {
                        sums.push(CMatrix::identity(n));
                        counts.push(1);
                        continue;
                    }
                    let mut acc = CMatrix::zeros(n);
                    let mut count: u128 = 0;
                    if a > 0 {
                        acc = &acc + &(&ops.jx * &sums[idx(a - 1, b, c)]);
                        count += counts[idx(a - 1, b, c)];
                    }
                    if b > 0 {
                        acc = &acc + &(&ops.jy * &sums[idx(a, b - 1, c)]);
                        count += counts[idx(a, b - 1, c)];
                    }
                    if c > 0 {
                        acc = &acc + &(&ops.jz * &sums[idx(a, b, c - 1)]);
                        count += counts[idx(a, b, c - 1)];
                    }
                    assert_eq!(
                        count,
                        multinomial(a, b, c),
                        "interleaving count mismatch at ({a},{b},{c})"
                    );
                    sums.push(acc);
                    counts.push(count);
                }
            }
        }
        WeylTable {
            amax,
            bmax,
            cmax,
            sums,
        }
    }

    fn mean(&self, a: u32, b: u32, c: u32) -> CMatrix {
        assert!(a <= self.amax && b <= self.bmax && c <= self.cmax);
        let idx = ((a * (self.bmax + 1) + b) * (self.cmax + 1) + c) as usize;
        self.sums[idx].scale_re(1.0 / multinomial(a, b, c) as f64)
    }
}

fn mh_mean(ops: &SpinOps, a: u32, b: u32, c: u32) -> CMatrix {
    let xa = ops.jx.powi(a);
    let yb = ops.jy.powi(b);
    let zc = ops.jz.powi(c);
    let blocks = [&xa, &yb, &zc];
    let orders: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut acc = CMatrix::zeros(ops.spin.dim());
    for ord in orders {
        acc = &acc + &(&(blocks[ord[0]] * blocks[ord[1]]) * blocks[ord[2]]);
    }
    acc.scale_re(1.0 / 6.0)
}

/// The averaged ordered product of a J_x's, b J_y's and c J_z's, so that
/// `μ^{abc} = Tr(ρ · result)`. Hermitian by reversal pairing.
pub fn symmetrized_product(rule: Rule, a: u32, b: u32, c: u32, spin: Spin) -> CMatrix {
    let ops = spin_operators(spin);
    match rule {
        Rule::WignerWeyl => WeylTable::build(&ops, a, b, c).mean(a, b, c),
        Rule::MargenauHill => mh_mean(&ops, a, b, c),
    }
}

/// `μ^{abc} = Tr(ρ · S_rule(a,b,c))`. The trace of a state against a
/// Hermitian average must be real; an imaginary residual above tolerance
/// signals a symmetrizer bug.
pub fn mixed_moment(rho: &DensityMatrix, rule: Rule, a: u32, b: u32, c: u32) -> Result<f64> {
    let op = symmetrized_product(rule, a, b, c, rho.spin());
    let value = rho.expectation(&op);
    if value.im.abs() > tol::MOMENT_IMAG {
        return Err(Error::NonRealMoment { imag: value.im });
    }
    Ok(value.re)
}

/// All `(2j+1)³` mixed moments `μ^{αβγ}`, α, β, γ ∈ 0..2j.
#[derive(Debug, Clone)]
pub struct MomentTable {
    spin: Spin,
    rule: Rule,
    mu: Vec<f64>,
}

impl MomentTable {
    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    /// Orders per axis, = 2j + 1.
    pub fn axis_len(&self) -> usize {
        self.spin.dim()
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        let n = self.axis_len();
        self.mu[(a * n + b) * n + c]
    }

    /// Builds a table from raw entries in `[α][β][γ]` row-major order.
    pub fn from_raw(spin: Spin, rule: Rule, mu: Vec<f64>) -> Result<Self> {
        let n = spin.dim();
        if mu.len() != n * n * n {
            return Err(Error::Malformed(format!(
                "moment table has {} entries, expected {}",
                mu.len(),
                n * n * n
            )));
        }
        if (mu[0] - 1.0).abs() > tol::HERMITICITY {
            return Err(Error::Malformed(format!("μ^000 must be 1, got {}", mu[0])));
        }
        Ok(MomentTable { spin, rule, mu })
    }

    pub fn raw(&self) -> &[f64] {
        &self.mu
    }
}

/// Computes the full moment table of a state under a rule.
pub fn moment_table(rho: &DensityMatrix, rule: Rule) -> Result<MomentTable> {
    let spin = rho.spin();
    let ops = spin_operators(spin);
    let top = spin.two_j();
    let n = spin.dim();
    let mut mu = Vec::with_capacity(n * n * n);

    let weyl = match rule {
        Rule::WignerWeyl => Some(WeylTable::build(&ops, top, top, top)),
        Rule::MargenauHill => None,
    };
    for a in 0..=top {
        for b in 0..=top {
            for c in 0..=top {
                let op = match &weyl {
                    Some(table) => table.mean(a, b, c),
                    None => mh_mean(&ops, a, b, c),
                };
                let value = rho.expectation(&op);
                if value.im.abs() > tol::MOMENT_IMAG {
                    return Err(Error::NonRealMoment { imag: value.im });
                }
                mu.push(value.re);
            }
        }
    }
    Ok(MomentTable { spin, rule, mu })
}

/// Rule-ordered characteristic function Φ(I).
///
/// Wigner-Weyl: `Tr(ρ e^{iI·J})`. Margenau-Hill: the average over the six
/// axis orderings of `e^{iI_xJ_x} e^{iI_yJ_y} e^{iI_zJ_z}`.
pub fn characteristic_function(
    rho: &DensityMatrix,
    rule: Rule,
    i_vec: [f64; 3],
) -> Result<Complex64> {
    if i_vec.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArguments(
            "characteristic argument must be finite".into(),
        ));
    }
    let ops = spin_operators(rho.spin());
    match rule {
        Rule::WignerWeyl => {
            let u = unitary_from_hermitian_generator(&ops.dot(i_vec), 1.0)?;
            Ok(rho.expectation(&u))
        }
        Rule::MargenauHill => {
            let ux = unitary_from_hermitian_generator(&ops.jx, i_vec[0])?;
            let uy = unitary_from_hermitian_generator(&ops.jy, i_vec[1])?;
            let uz = unitary_from_hermitian_generator(&ops.jz, i_vec[2])?;
            let factors = [&ux, &uy, &uz];
            let orders: [[usize; 3]; 6] = [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            let mut acc = Complex64::ZERO;
            for ord in orders {
                let prod = &(factors[ord[0]] * factors[ord[1]]) * factors[ord[2]];
                acc += rho.expectation(&prod);
            }
            Ok(acc / 6.0)
        }
    }
}

/// Singular values (descending) of the matrix whose rows are the centered
/// moment vectors `μ(ρ_s) − μ(I/n)` of the given states. The numerical rank
/// of this matrix counts the independent moments.
pub fn moment_matrix_singular_values(states: &[DensityMatrix], rule: Rule) -> Result<Vec<f64>> {
    if states.is_empty() {
        return Ok(Vec::new());
    }
    let spin = states[0].spin();
    let center = moment_table(&maximally_mixed(spin), rule)?;
    let mut rows = Vec::with_capacity(states.len());
    for rho in states {
        let mt = moment_table(rho, rule)?;
        rows.push(
            mt.raw()
                .iter()
                .zip(center.raw())
                .map(|(a, b)| a - b)
                .collect::<Vec<f64>>(),
        );
    }
    Ok(singular_values(&rows))
}

/// Central-difference estimate of `μ^{abc}` from the characteristic
/// function, `(−i)^{a+b+c} ∂^a∂^b∂^c Φ|₀`, for degrees a, b, c ≤ 2.
/// Serves as an independent oracle for the symmetrizer path.
pub fn moment_from_characteristic_fd(
    rho: &DensityMatrix,
    rule: Rule,
    degrees: [u32; 3],
    step: f64,
) -> Result<f64> {
    assert!(
        degrees.iter().all(|&d| d <= 2),
        "finite differences support degree ≤ 2"
    );
    let total: u32 = degrees.iter().sum();

    // tabulate Φ on the stencil grid {-1,0,1}·step per active axis
    let mut phi = HashMap::new();
    let offsets = |d: u32| -> Vec<i32> {
        if d == 0 {
            vec![0]
        } else {
            vec![-1, 0, 1]
        }
    };
    for &ox in &offsets(degrees[0]) {
        for &oy in &offsets(degrees[1]) {
            for &oz in &offsets(degrees[2]) {
                let point = [
                    f64::from(ox) * step,
                    f64::from(oy) * step,
                    f64::from(oz) * step,
                ];
                phi.insert((ox, oy, oz), characteristic_function(rho, rule, point)?);
            }
        }
    }

    // apply the 1D central-difference stencil axis by axis
    let stencil = |d: u32| -> Vec<(i32, f64)> {
        match d {
            0 => vec![(0, 1.0)],
            1 => vec![(-1, -0.5), (1, 0.5)],
            2 => vec![(-1, 1.0), (0, -2.0), (1, 1.0)],
            _ => unreachable!(),
        }
    };
    let mut acc = Complex64::ZERO;
    for &(ox, wx) in &stencil(degrees[0]) {
        for &(oy, wy) in &stencil(degrees[1]) {
            for &(oz, wz) in &stencil(degrees[2]) {
                acc += phi[&(ox, oy, oz)] * (wx * wy * wz);
            }
        }
    }
    let scale = step.powi(total as i32);
    let deriv = acc / scale;
    let value = deriv * Complex64::new(0.0, -1.0).powu(total);
    Ok(value.re)
}
