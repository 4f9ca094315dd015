//! Discrete quasi-probability machinery.
//!
//! The moments `μ^{αβγ} = Σ m_x^α m_y^β m_z^γ P(m_x,m_y,m_z)` relate the mass
//! function on the (2j+1)³ projection grid to the moment table by one
//! Vandermonde system per axis. Inverting axis by axis with Lagrange cardinal
//! functionals at the nodes (j, j−1, …, −j) recovers P; for spin 1 the
//! functionals reduce to f₁ = (μ¹+μ²)/2, f₀ = μ⁰−μ², f₋₁ = (μ²−μ¹)/2.
//! Entries may be negative; the mass function is a quasi-probability.
//!
//! Spin-1 closed forms per grid-point class are kept alongside for
//! comparison. The pipeline PMF is authoritative; `compare_closed_form`
//! localizes where the closed forms disagree with it.

use crate::angmom::Spin;
use crate::correspondence::{moment_table, MomentTable, Rule};
use crate::error::{Error, Result};
use crate::states::{cartesian_stats, DensityMatrix};
use crate::tol;

/// Trivariate quasi-probability mass function on the projection grid.
/// Index i along an axis holds the node m = j − i.
#[derive(Debug, Clone)]
pub struct Pmf {
    spin: Spin,
    rule: Rule,
    p: Vec<f64>,
}

impl Pmf {
    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn axis_len(&self) -> usize {
        self.spin.dim()
    }

    pub fn get(&self, ix: usize, iy: usize, iz: usize) -> f64 {
        let n = self.axis_len();
        self.p[(ix * n + iy) * n + iz]
    }

    /// Value at projection values (m_x, m_y, m_z).
    pub fn at_nodes(&self, mx: f64, my: f64, mz: f64) -> Option<f64> {
        let idx = |m: f64| -> Option<usize> {
            let i = (self.spin.j() - m).round();
            if (self.spin.j() - m - i).abs() < 1e-9 && i >= 0.0 && (i as usize) < self.axis_len() {
                Some(i as usize)
            } else {
                None
            }
        };
        Some(self.get(idx(mx)?, idx(my)?, idx(mz)?))
    }

    pub fn total_mass(&self) -> f64 {
        self.p.iter().sum()
    }

    pub fn raw(&self) -> &[f64] {
        &self.p
    }
}

/// Coefficients of the Lagrange cardinal polynomials at the given nodes:
/// row i holds the coefficients c_{i,α} with ℓ_i(x) = Σ_α c_{i,α} x^α, so
/// f(node_i) = Σ_α c_{i,α} μ^α inverts the Vandermonde moment system.
fn lagrange_coefficients(nodes: &[f64]) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        // expand Π_{k≠i} (x − m_k)/(m_i − m_k)
        let mut poly = vec![1.0];
        for k in 0..n {
            if k == i {
                continue;
            }
            let denom = nodes[i] - nodes[k];
            let mut next = vec![0.0; poly.len() + 1];
            for (pow, &coef) in poly.iter().enumerate() {
                next[pow] -= coef * nodes[k] / denom;
                next[pow + 1] += coef / denom;
            }
            poly = next;
        }
        poly.resize(n, 0.0);
        rows.push(poly);
    }
    rows
}

/// Inverts a complete moment table into the PMF by three successive
/// single-axis Vandermonde inversions, then verifies the round trip:
/// every input moment must be reproduced from the PMF within tolerance.
pub fn pmf_from_moments(mt: &MomentTable) -> Result<Pmf> {
    let spin = mt.spin();
    let n = spin.dim();
    let lc = lagrange_coefficients(&spin.nodes());

    // axis x: A[i_x][β][γ] = Σ_α c_{i_x,α} μ^{αβγ}
    let mut stage_a = vec![0.0; n * n * n];
    for ix in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut acc = 0.0;
                for (a, &coef) in lc[ix].iter().enumerate() {
                    acc += coef * mt.get(a, b, c);
                }
                stage_a[(ix * n + b) * n + c] = acc;
            }
        }
    }
    // axis y
    let mut stage_b = vec![0.0; n * n * n];
    for ix in 0..n {
        for iy in 0..n {
            for c in 0..n {
                let mut acc = 0.0;
                for (b, &coef) in lc[iy].iter().enumerate() {
                    acc += coef * stage_a[(ix * n + b) * n + c];
                }
                stage_b[(ix * n + iy) * n + c] = acc;
            }
        }
    }
    // axis z
    let mut p = vec![0.0; n * n * n];
    for ix in 0..n {
        for iy in 0..n {
            for iz in 0..n {
                let mut acc = 0.0;
                for (c, &coef) in lc[iz].iter().enumerate() {
                    acc += coef * stage_b[(ix * n + iy) * n + c];
                }
                p[(ix * n + iy) * n + iz] = acc;
            }
        }
    }

    let pmf = Pmf {
        spin,
        rule: mt.rule(),
        p,
    };

    // round-trip residual doubles as the conditioning check
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                worst = worst.max((reconstruct_moment(&pmf, a, b, c) - mt.get(a, b, c)).abs());
            }
        }
    }
    if worst > tol::RESIDUAL {
        return Err(Error::IllConditioned {
            residual: worst,
            tol: tol::RESIDUAL,
        });
    }
    if (pmf.total_mass() - 1.0).abs() > tol::RESIDUAL {
        return Err(Error::IllConditioned {
            residual: (pmf.total_mass() - 1.0).abs(),
            tol: tol::RESIDUAL,
        });
    }
    Ok(pmf)
}

/// `Σ m_x^α m_y^β m_z^γ P(m)` — the round-trip oracle for the inversion.
pub fn reconstruct_moment(pmf: &Pmf, alpha: usize, beta: usize, gamma: usize) -> f64 {
    let nodes = pmf.spin().nodes();
    let mut acc = 0.0;
    for (ix, mx) in nodes.iter().enumerate() {
        let px = mx.powi(alpha as i32);
        for (iy, my) in nodes.iter().enumerate() {
            let py = my.powi(beta as i32);
            for (iz, mz) in nodes.iter().enumerate() {
                let pz = mz.powi(gamma as i32);
                acc += px * py * pz * pmf.get(ix, iy, iz);
            }
        }
    }
    acc
}

/// Convenience: moment table then inversion.
pub fn pmf_from_state(rho: &DensityMatrix, rule: Rule) -> Result<Pmf> {
    pmf_from_moments(&moment_table(rho, rule)?)
}

// ---------------------------------------------------------------------------
// Spin-1 closed forms
// ---------------------------------------------------------------------------

/// Grid-point class by the number of nonzero coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    /// all three coordinates nonzero
    Corner,
    /// exactly two nonzero
    Edge,
    /// exactly one nonzero
    Face,
    /// the origin
    Center,
}

impl PointClass {
    pub fn of(mx: f64, my: f64, mz: f64) -> PointClass {
        match [mx, my, mz].iter().filter(|m| **m != 0.0).count() {
            3 => PointClass::Corner,
            2 => PointClass::Edge,
            1 => PointClass::Face,
            _ => PointClass::Center,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            PointClass::Corner => "corner",
            PointClass::Edge => "edge",
            PointClass::Face => "face",
            PointClass::Center => "center",
        }
    }

    pub const ALL: [PointClass; 4] = [
        PointClass::Corner,
        PointClass::Edge,
        PointClass::Face,
        PointClass::Center,
    ];
}

/// Spin-1 PMF evaluated from the printed per-class closed forms, literally.
///
/// The face-class quadratic term is read as the single sum
/// `Σ_i m_i² ⟨J_i²⟩`. No normalization is asserted on the result: the closed
/// forms are retained verbatim for comparison against the inversion pipeline,
/// which remains the authoritative PMF.
pub fn pmf_closed_form_spin1(rho: &DensityMatrix, rule: Rule) -> Result<Pmf> {
    if rho.spin().two_j() != 2 {
        return Err(Error::WrongSpin {
            two_j: rho.spin().two_j(),
        });
    }
    let spin = rho.spin();
    let stats = cartesian_stats(rho);
    let means = stats.means;
    // ⟨J_iJ_k + J_kJ_i⟩ and ⟨J_i²⟩
    let anti = |i: usize, k: usize| 2.0 * stats.second_moments[i][k];
    let squares = [
        stats.second_moments[0][0],
        stats.second_moments[1][1],
        stats.second_moments[2][2],
    ];

    let nodes = spin.nodes();
    let n = spin.dim();
    let mut p = vec![0.0; n * n * n];
    for (ix, &mx) in nodes.iter().enumerate() {
        for (iy, &my) in nodes.iter().enumerate() {
            for (iz, &mz) in nodes.iter().enumerate() {
                let m = [mx, my, mz];
                let linear: f64 = (0..3).map(|i| m[i] * means[i]).sum();
                let cross: f64 = (0..3)
                    .flat_map(|i| (0..3).map(move |k| (i, k)))
                    .filter(|&(i, k)| i != k)
                    .map(|(i, k)| m[i] * m[k] * anti(i, k))
                    .sum();
                let quad: f64 = (0..3).map(|i| m[i] * m[i] * squares[i]).sum();

                let value = match (rule, PointClass::of(mx, my, mz)) {
                    (Rule::MargenauHill, PointClass::Corner) => linear / 48.0 + cross / 48.0,
                    (Rule::MargenauHill, PointClass::Edge) => {
                        linear / 12.0 + (quad - 1.0) / 4.0 + cross / 48.0
                    }
                    (Rule::MargenauHill, PointClass::Face) => linear / 12.0,
                    (Rule::MargenauHill, PointClass::Center) => 0.0,
                    (Rule::WignerWeyl, PointClass::Corner) => linear / 120.0 + cross / 96.0,
                    (Rule::WignerWeyl, PointClass::Edge) => linear / 15.0 + cross / 12.0,
                    (Rule::WignerWeyl, PointClass::Face) => {
                        linear / 5.0 + 5.0 * quad / 12.0 - 1.0 / 6.0
                    }
                    (Rule::WignerWeyl, PointClass::Center) => -1.0 / 3.0,
                };
                p[(ix * n + iy) * n + iz] = value;
            }
        }
    }
    Ok(Pmf { spin, rule, p })
}

/// Maximum absolute closed-form-vs-pipeline deviation for one point class.
#[derive(Debug, Clone, Copy)]
pub struct ClassDeviation {
    pub class: PointClass,
    pub max_abs_deviation: f64,
    pub points: usize,
}

/// For each grid-point class, the maximum absolute deviation between the
/// closed-form PMF and the inversion pipeline over the given spin-1 states.
/// Empty input produces an empty table.
pub fn compare_closed_form(samples: &[DensityMatrix], rule: Rule) -> Result<Vec<ClassDeviation>> {
    if samples.is_empty() {
        return Ok(Vec::new());
    }
    let mut worst = [0.0f64; 4];
    let mut counts = [0usize; 4];
    for rho in samples {
        let pipeline = pmf_from_state(rho, rule)?;
        let closed = pmf_closed_form_spin1(rho, rule)?;
        let nodes = rho.spin().nodes();
        for (ix, &mx) in nodes.iter().enumerate() {
            for (iy, &my) in nodes.iter().enumerate() {
                for (iz, &mz) in nodes.iter().enumerate() {
                    let class = PointClass::of(mx, my, mz);
                    let slot = PointClass::ALL.iter().position(|c| *c == class).unwrap();
                    let dev = (closed.get(ix, iy, iz) - pipeline.get(ix, iy, iz)).abs();
                    worst[slot] = worst[slot].max(dev);
                    counts[slot] += 1;
                }
            }
        }
    }
    Ok(PointClass::ALL
        .iter()
        .enumerate()
        .map(|(slot, &class)| ClassDeviation {
            class,
            max_abs_deviation: worst[slot],
            points: counts[slot],
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Marginals and negativity
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn label(&self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Result<Vec<Axis>> {
        let mut axes = Vec::new();
        for ch in s.chars() {
            let axis = match ch.to_ascii_lowercase() {
                'x' => Axis::X,
                'y' => Axis::Y,
                'z' => Axis::Z,
                other => {
                    return Err(Error::Malformed(format!(
                        "unknown axis '{other}' in \"{s}\""
                    )))
                }
            };
            if axes.contains(&axis) {
                return Err(Error::Malformed(format!("axis '{ch}' repeated in \"{s}\"")));
            }
            axes.push(axis);
        }
        axes.sort();
        Ok(axes)
    }
}

/// Marginal mass function over a subset of axes, kept in axis order
/// x before y before z; flat storage with the last kept axis fastest.
#[derive(Debug, Clone)]
pub struct Marginal {
    pub spin: Spin,
    pub rule: Rule,
    pub axes: Vec<Axis>,
    p: Vec<f64>,
}

impl Marginal {
    pub fn axis_len(&self) -> usize {
        self.spin.dim()
    }

    pub fn get(&self, indices: &[usize]) -> f64 {
        assert_eq!(indices.len(), self.axes.len());
        let n = self.axis_len();
        let mut flat = 0;
        for &i in indices {
            flat = flat * n + i;
        }
        self.p[flat]
    }

    pub fn raw(&self) -> &[f64] {
        &self.p
    }

    pub fn total_mass(&self) -> f64 {
        self.p.iter().sum()
    }
}

/// Sums the PMF over the dropped axes. `keep` must be a nonempty proper
/// subset of {x, y, z}.
pub fn marginal(pmf: &Pmf, keep: &[Axis]) -> Result<Marginal> {
    let mut axes = keep.to_vec();
    axes.sort();
    axes.dedup();
    if axes.is_empty() || axes.len() >= 3 {
        return Err(Error::InvalidArguments(
            "marginal requires a nonempty proper subset of {x, y, z}".into(),
        ));
    }
    let n = pmf.axis_len();
    let len = n.pow(axes.len() as u32);
    let mut p = vec![0.0; len];
    for ix in 0..n {
        for iy in 0..n {
            for iz in 0..n {
                let full = [ix, iy, iz];
                let mut flat = 0;
                for &axis in &axes {
                    flat = flat * n + full[axis as usize];
                }
                p[flat] += pmf.get(ix, iy, iz);
            }
        }
    }
    Ok(Marginal {
        spin: pmf.spin(),
        rule: pmf.rule(),
        axes,
        p,
    })
}

/// Negativity diagnostics of a quasi-probability vector.
#[derive(Debug, Clone, Copy)]
pub struct NegativityReport {
    pub min_value: f64,
    pub negative_mass: f64,
    pub num_negative: usize,
}

fn negativity_of(values: &[f64]) -> NegativityReport {
    let min_value = values.iter().copied().fold(f64::INFINITY, f64::min);
    let negative_mass = values.iter().filter(|v| **v < 0.0).sum();
    let num_negative = values.iter().filter(|v| **v < 0.0).count();
    NegativityReport {
        min_value,
        negative_mass,
        num_negative,
    }
}

pub fn negativity(pmf: &Pmf) -> NegativityReport {
    negativity_of(pmf.raw())
}

pub fn negativity_marginal(m: &Marginal) -> NegativityReport {
    negativity_of(m.raw())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        density_from_matrix, maximally_mixed, pure_jz_state, random_density,
        test_support::reference_row1_state, ValidationMode,
    };
    use crate::CMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spin1() -> Spin {
        Spin::from_two_j(2)
    }

    #[test]
    fn lagrange_functionals_spin_one() {
        // nodes (1, 0, −1): f₁ = (μ¹+μ²)/2, f₀ = μ⁰−μ², f₋₁ = (μ²−μ¹)/2
        let lc = lagrange_coefficients(&[1.0, 0.0, -1.0]);
        assert_eq!(lc.len(), 3);
        let expect = [
            [0.0, 0.5, 0.5],
            [1.0, 0.0, -1.0],
            [0.0, -0.5, 0.5],
        ];
        for (row, want) in lc.iter().zip(expect.iter()) {
            for (a, b) in row.iter().zip(want.iter()) {
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn flat_state_fixed_points() {
        let mixed = maximally_mixed(spin1());

        let ww = pmf_from_state(&mixed, Rule::WignerWeyl).unwrap();
        // face, edge, center and corner values forced by the moment table
        // (μ² = 2/3, μ²² = 2/9, μ²²² = 2/45) under the node functionals
        assert!((ww.at_nodes(1.0, 0.0, 0.0).unwrap() - 2.0 / 15.0).abs() < 1e-13);
        assert!((ww.at_nodes(1.0, 1.0, 0.0).unwrap() - 2.0 / 45.0).abs() < 1e-13);
        assert!((ww.at_nodes(0.0, 0.0, 0.0).unwrap() + 17.0 / 45.0).abs() < 1e-13);
        assert!((ww.at_nodes(1.0, 1.0, 1.0).unwrap() - 1.0 / 180.0).abs() < 1e-13);
        assert!((ww.total_mass() - 1.0).abs() < 1e-12);

        let mh = pmf_from_state(&mixed, Rule::MargenauHill).unwrap();
        assert!((mh.at_nodes(1.0, 1.0, 0.0).unwrap() - 1.0 / 12.0).abs() < 1e-13);
        assert!(mh.at_nodes(0.0, 0.0, 0.0).unwrap().abs() < 1e-13);
        assert!(mh.at_nodes(1.0, 0.0, 0.0).unwrap().abs() < 1e-13);
        assert!((mh.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spin_half_pure_state_slices() {
        let spin = Spin::from_two_j(1);
        let up = pure_jz_state(spin, 0.5).unwrap();
        let pmf = pmf_from_state(&up, Rule::WignerWeyl).unwrap();
        for mx in [0.5, -0.5] {
            for my in [0.5, -0.5] {
                assert!((pmf.at_nodes(mx, my, 0.5).unwrap() - 0.25).abs() < 1e-13);
                assert!(pmf.at_nodes(mx, my, -0.5).unwrap().abs() < 1e-13);
            }
        }
    }

    #[test]
    fn round_trip_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for two_j in [1u32, 2, 3, 4] {
            let spin = Spin::from_two_j(two_j);
            for rule in [Rule::WignerWeyl, Rule::MargenauHill] {
                for _ in 0..5 {
                    let rho = random_density(spin, &mut rng);
                    let mt = moment_table(&rho, rule).unwrap();
                    let pmf = pmf_from_moments(&mt).unwrap();
                    let n = spin.dim();
                    for a in 0..n {
                        for b in 0..n {
                            for c in 0..n {
                                let rec = reconstruct_moment(&pmf, a, b, c);
                                assert!(
                                    (rec - mt.get(a, b, c)).abs() <= tol::RESIDUAL,
                                    "2j={two_j} {rule} ({a},{b},{c})"
                                );
                            }
                        }
                    }
                    assert!((pmf.total_mass() - 1.0).abs() <= tol::RESIDUAL);
                }
            }
        }
    }

    #[test]
    fn closed_form_center_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..5 {
            let rho = random_density(spin1(), &mut rng);
            let mh = pmf_closed_form_spin1(&rho, Rule::MargenauHill).unwrap();
            assert_eq!(mh.at_nodes(0.0, 0.0, 0.0).unwrap(), 0.0);
            let ww = pmf_closed_form_spin1(&rho, Rule::WignerWeyl).unwrap();
            assert_eq!(ww.at_nodes(0.0, 0.0, 0.0).unwrap(), -1.0 / 3.0);
        }
    }

    #[test]
    fn closed_form_wrong_spin_rejected() {
        let up = pure_jz_state(Spin::from_two_j(1), 0.5).unwrap();
        assert!(matches!(
            pmf_closed_form_spin1(&up, Rule::WignerWeyl),
            Err(Error::WrongSpin { .. })
        ));
    }

    #[test]
    fn closed_form_mh_edge_matches_pipeline_on_flat_state() {
        let mixed = maximally_mixed(spin1());
        let closed = pmf_closed_form_spin1(&mixed, Rule::MargenauHill).unwrap();
        // (1/4)(2/3 + 2/3 − 1) = 1/12
        assert!((closed.at_nodes(1.0, 1.0, 0.0).unwrap() - 1.0 / 12.0).abs() < 1e-14);
        let pipeline = pmf_from_state(&mixed, Rule::MargenauHill).unwrap();
        assert!(
            (closed.at_nodes(1.0, 1.0, 0.0).unwrap() - pipeline.at_nodes(1.0, 1.0, 0.0).unwrap())
                .abs()
                < 1e-13
        );
    }

    #[test]
    fn margenau_hill_closed_forms_match_pipeline_everywhere() {
        // the printed closed forms for this rule agree with the inversion
        // pipeline to machine precision on random states
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let samples: Vec<DensityMatrix> =
            (0..20).map(|_| random_density(spin1(), &mut rng)).collect();
        let table = compare_closed_form(&samples, Rule::MargenauHill).unwrap();
        for entry in &table {
            assert!(
                entry.max_abs_deviation <= 1e-10,
                "{}: {}",
                entry.class.label(),
                entry.max_abs_deviation
            );
        }
    }

    #[test]
    fn wigner_weyl_closed_forms_deviate_on_flat_state() {
        // frozen deviations of the printed closed forms from the pipeline on
        // I/3: corner 1/180, edge 2/45, face 1/45, center 2/45
        let mixed = maximally_mixed(spin1());
        let table = compare_closed_form(&[mixed], Rule::WignerWeyl).unwrap();
        let expect = [
            (PointClass::Corner, 1.0 / 180.0),
            (PointClass::Edge, 2.0 / 45.0),
            (PointClass::Face, 1.0 / 45.0),
            (PointClass::Center, 2.0 / 45.0),
        ];
        for (entry, (class, dev)) in table.iter().zip(expect.iter()) {
            assert_eq!(entry.class, *class);
            assert!(
                (entry.max_abs_deviation - dev).abs() < 1e-12,
                "{}: {} vs {}",
                entry.class.label(),
                entry.max_abs_deviation,
                dev
            );
        }
    }

    #[test]
    fn compare_closed_form_empty_input() {
        assert!(compare_closed_form(&[], Rule::WignerWeyl).unwrap().is_empty());
    }

    #[test]
    fn marginal_examples() {
        let mixed = maximally_mixed(spin1());
        let pmf = pmf_from_state(&mixed, Rule::WignerWeyl).unwrap();
        let z = marginal(&pmf, &[Axis::Z]).unwrap();
        for i in 0..3 {
            assert!((z.get(&[i]) - 1.0 / 3.0).abs() < 1e-13);
        }
        assert!((z.total_mass() - 1.0).abs() < 1e-13);

        let up = pure_jz_state(Spin::from_two_j(1), 0.5).unwrap();
        let pmf = pmf_from_state(&up, Rule::WignerWeyl).unwrap();
        let z = marginal(&pmf, &[Axis::Z]).unwrap();
        assert!((z.get(&[0]) - 1.0).abs() < 1e-13);
        assert!(z.get(&[1]).abs() < 1e-13);
    }

    #[test]
    fn univariate_marginals_agree_between_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..10 {
            let rho = random_density(spin1(), &mut rng);
            let ww = pmf_from_state(&rho, Rule::WignerWeyl).unwrap();
            let mh = pmf_from_state(&rho, Rule::MargenauHill).unwrap();
            for axis in [Axis::X, Axis::Y, Axis::Z] {
                let a = marginal(&ww, &[axis]).unwrap();
                let b = marginal(&mh, &[axis]).unwrap();
                for i in 0..3 {
                    assert!((a.get(&[i]) - b.get(&[i])).abs() <= tol::RESIDUAL);
                }
            }
        }
    }

    #[test]
    fn bivariate_marginal_matches_direct_inversion() {
        // summing z out of the trivariate PMF equals inverting the γ = 0
        // slice of the moment table over x and y alone
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        let rho = random_density(spin1(), &mut rng);
        let mt = moment_table(&rho, Rule::WignerWeyl).unwrap();
        let pmf = pmf_from_moments(&mt).unwrap();
        let xy = marginal(&pmf, &[Axis::X, Axis::Y]).unwrap();

        let lc = lagrange_coefficients(&spin1().nodes());
        for ix in 0..3 {
            for iy in 0..3 {
                let mut direct = 0.0;
                for a in 0..3 {
                    for b in 0..3 {
                        direct += lc[ix][a] * lc[iy][b] * mt.get(a, b, 0);
                    }
                }
                assert!((xy.get(&[ix, iy]) - direct).abs() <= tol::RESIDUAL);
            }
        }
    }

    #[test]
    fn oriented_state_z_marginal_is_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for two_j in [1u32, 2, 3] {
            let spin = Spin::from_two_j(two_j);
            let n = spin.dim();
            let mut probs: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 0.05).collect();
            let total: f64 = probs.iter().sum();
            probs.iter_mut().for_each(|p| *p /= total);
            let rho =
                density_from_matrix(CMatrix::diagonal(&probs), spin, ValidationMode::Strict)
                    .unwrap();
            for rule in [Rule::WignerWeyl, Rule::MargenauHill] {
                let pmf = pmf_from_state(&rho, rule).unwrap();
                let z = marginal(&pmf, &[Axis::Z]).unwrap();
                for i in 0..n {
                    assert!((z.get(&[i]) - probs[i]).abs() <= tol::RESIDUAL);
                }
            }
        }
    }

    #[test]
    fn marginal_rejects_bad_subsets() {
        let pmf = pmf_from_state(&maximally_mixed(spin1()), Rule::WignerWeyl).unwrap();
        assert!(marginal(&pmf, &[]).is_err());
        assert!(marginal(&pmf, &[Axis::X, Axis::Y, Axis::Z]).is_err());
    }

    #[test]
    fn negativity_reports() {
        let mixed = maximally_mixed(spin1());
        let ww = pmf_from_state(&mixed, Rule::WignerWeyl).unwrap();
        let report = negativity(&ww);
        assert!(report.min_value < 0.0);
        assert!((report.min_value - ww.at_nodes(0.0, 0.0, 0.0).unwrap()).abs() < 1e-14);
        assert!(report.negative_mass < 0.0);
        assert!(report.num_negative > 0);

        let mh = pmf_from_state(&mixed, Rule::MargenauHill).unwrap();
        let z = marginal(&mh, &[Axis::Z]).unwrap();
        let report = negativity_marginal(&z);
        assert_eq!(report.num_negative, 0);
        assert_eq!(report.negative_mass, 0.0);

        let up = pure_jz_state(Spin::from_two_j(1), 0.5).unwrap();
        let pmf = pmf_from_state(&up, Rule::WignerWeyl).unwrap();
        assert_eq!(negativity(&pmf).negative_mass, 0.0);
    }

    #[test]
    fn reconstruct_moment_examples() {
        let mixed = maximally_mixed(spin1());
        let ww = pmf_from_state(&mixed, Rule::WignerWeyl).unwrap();
        assert!((reconstruct_moment(&ww, 0, 0, 0) - 1.0).abs() < 1e-13);
        assert!((reconstruct_moment(&ww, 2, 2, 0) - 2.0 / 9.0).abs() < 1e-13);

        let rho = reference_row1_state();
        let pmf = pmf_from_state(&rho, Rule::WignerWeyl).unwrap();
        assert!((reconstruct_moment(&pmf, 0, 0, 1) + 0.6129).abs() < 5e-4);
    }
}
