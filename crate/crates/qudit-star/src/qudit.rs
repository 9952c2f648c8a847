//! General-dimension machinery: the qudit probability parametrization, affine
//! symbol specifications, and the linear solvers that derive dequantizers
//! (by coefficient matching on the trace pairing) and quantizers (by Gram
//! inversion) for any dimension.
//!
//! A qudit density matrix over artificial-qubit probabilities reads
//!
//! ```text
//! ρ_jk = (p1^{jk} - 1/2) + i(p2^{jk} - 1/2)   for j > k
//! ρ_jj = 1 - p3^{jj}                          for j > 1
//! ρ_11 = Σ_{j=2}^d p3^{jj} - d + 2
//! ```
//!
//! Writing `ρ(p) = M₀ + Σ_α p_α M_α` turns "the symbol of ρ must equal a
//! given affine function of p, identically in p" into one real linear system
//! per symbol slot: `Tr(M_α U) = c_α` and `Tr(M₀ U) = const`, solved over the
//! d² Hermitian degrees of freedom of `U`.

use nalgebra::{DMatrix, DVector};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::basis::OperatorBasis;
use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};
use crate::{qubit, qutrit};

/// Relative pivot threshold for rank detection in the dense solves.
const PIVOT_THRESHOLD: f64 = 1e-12;

/// Canonical enumeration of level pairs `(j, k)` with `j > k`, 1-based:
/// (2,1), (3,1), (3,2), (4,1), ...
pub fn level_pairs(dim: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(dim * (dim - 1) / 2);
    for j in 2..=dim {
        for k in 1..j {
            pairs.push((j, k));
        }
    }
    pairs
}

fn pair_suffix(j: usize, k: usize) -> String {
    if j <= 9 && k <= 9 {
        format!("{{{j}{k}}}")
    } else {
        format!("{{{j},{k}}}")
    }
}

fn check_unit_interval(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name: name.to_string(),
            value,
        });
    }
    Ok(())
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { dim });
    }
    Ok(())
}

/// Artificial-qubit probabilities of a d-level state: `p1, p2` per level pair
/// `(j, k)` with `j > k` and `p3` per diagonal level `j ∈ {2, …, d}`, giving
/// the d² − 1 real parameters of the density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QuditProbabilityTable {
    dim: usize,
    p1: Vec<f64>,
    p2: Vec<f64>,
    p3: Vec<f64>,
}

impl QuditProbabilityTable {
    /// The table of the maximally mixed state: every `p1, p2` is 1/2 and
    /// every `p3` is `1 - 1/d`, so the density matrix is `I/d`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let pairs = dim * (dim - 1) / 2;
        Ok(Self {
            dim,
            p1: vec![0.5; pairs],
            p2: vec![0.5; pairs],
            p3: vec![1.0 - 1.0 / dim as f64; dim - 1],
        })
    }

    /// Builds a table from the pair probabilities in canonical pair order
    /// (2,1), (3,1), (3,2), … and the diagonal probabilities `p3^{22}…p3^{dd}`.
    pub fn from_parts(dim: usize, p1: Vec<f64>, p2: Vec<f64>, p3: Vec<f64>) -> Result<Self> {
        check_dim(dim)?;
        let pairs = dim * (dim - 1) / 2;
        if p1.len() != pairs || p2.len() != pairs || p3.len() != dim - 1 {
            return Err(Error::BadShape {
                what: format!(
                    "dimension {} needs {} pair entries and {} diagonal entries, got {}/{}/{}",
                    dim,
                    pairs,
                    dim - 1,
                    p1.len(),
                    p2.len(),
                    p3.len()
                ),
            });
        }
        for (name, values) in [("p1", &p1), ("p2", &p2), ("p3", &p3)] {
            for (i, &v) in values.iter().enumerate() {
                check_unit_interval(&format!("{name}[{i}]"), v)?;
            }
        }
        Ok(Self { dim, p1, p2, p3 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn pair_index(&self, j: usize, k: usize) -> Result<usize> {
        if !(k >= 1 && k < j && j <= self.dim) {
            return Err(Error::BadShape {
                what: format!("no level pair ({j},{k}) in dimension {}", self.dim),
            });
        }
        Ok((j - 2) * (j - 1) / 2 + (k - 1))
    }

    /// Sets the x/y probabilities of the artificial qubit on levels `(j, k)`,
    /// `j > k`, 1-based.
    pub fn set_pair(&mut self, j: usize, k: usize, p1: f64, p2: f64) -> Result<()> {
        let idx = self.pair_index(j, k)?;
        check_unit_interval(&format!("p1^{}", pair_suffix(j, k)), p1)?;
        check_unit_interval(&format!("p2^{}", pair_suffix(j, k)), p2)?;
        self.p1[idx] = p1;
        self.p2[idx] = p2;
        Ok(())
    }

    /// Sets the z probability `p3^{jj}` for a diagonal level `j ∈ {2, …, d}`.
    pub fn set_diagonal(&mut self, j: usize, p3: f64) -> Result<()> {
        if !(2..=self.dim).contains(&j) {
            return Err(Error::BadShape {
                what: format!("no diagonal entry p3^{{{j}{j}}} in dimension {}", self.dim),
            });
        }
        check_unit_interval(&format!("p3^{{{j}{j}}}"), p3)?;
        self.p3[j - 2] = p3;
        Ok(())
    }

    pub fn pair(&self, j: usize, k: usize) -> Result<(f64, f64)> {
        let idx = self.pair_index(j, k)?;
        Ok((self.p1[idx], self.p2[idx]))
    }

    pub fn diagonal(&self, j: usize) -> Result<f64> {
        if !(2..=self.dim).contains(&j) {
            return Err(Error::BadShape {
                what: format!("no diagonal entry p3^{{{j}{j}}} in dimension {}", self.dim),
            });
        }
        Ok(self.p3[j - 2])
    }

    /// All parameters in canonical order: `p1^{jk}, p2^{jk}` per pair, then
    /// `p3^{22} … p3^{dd}`.
    pub fn parameter_vector(&self) -> Vec<f64> {
        let mut params = Vec::with_capacity(self.dim * self.dim - 1);
        for (p1, p2) in self.p1.iter().zip(self.p2.iter()) {
            params.push(*p1);
            params.push(*p2);
        }
        params.extend_from_slice(&self.p3);
        params
    }

    /// Canonical parameter labels for dimension `dim`; for d = 2 the plain
    /// names `p1, p2, p3` are used.
    pub fn parameter_labels(dim: usize) -> Vec<String> {
        if dim == 2 {
            return ["p1", "p2", "p3"].map(String::from).to_vec();
        }
        let mut labels = Vec::with_capacity(dim * dim - 1);
        for (j, k) in level_pairs(dim) {
            labels.push(format!("p1^{}", pair_suffix(j, k)));
            labels.push(format!("p2^{}", pair_suffix(j, k)));
        }
        for j in 2..=dim {
            labels.push(format!("p3^{{{j}{j}}}"));
        }
        labels
    }

    /// The d×d density matrix of the table.
    pub fn density_matrix(&self) -> ComplexMatrix {
        let d = self.dim;
        let mut rho = vec![vec![c64(0.0, 0.0); d]; d];
        let p3_sum: f64 = self.p3.iter().sum();
        rho[0][0] = c64(p3_sum - (d as f64 - 2.0), 0.0);
        for j in 2..=d {
            rho[j - 1][j - 1] = c64(1.0 - self.p3[j - 2], 0.0);
        }
        for (idx, (j, k)) in level_pairs(d).into_iter().enumerate() {
            let lower = c64(self.p1[idx] - 0.5, self.p2[idx] - 0.5);
            rho[j - 1][k - 1] = lower;
            rho[k - 1][j - 1] = lower.conj();
        }
        ComplexMatrix::from_rows(&rho).expect("rows are square")
    }
}

/// A density-matrix family `ρ(p) = M₀ + Σ_α p_α M_α` that is Hermitian with
/// unit trace for every real parameter vector: `M₀` Hermitian with trace one,
/// every generator Hermitian and traceless.
#[derive(Clone, Debug)]
pub struct AffineParametrization {
    dim: usize,
    constant: ComplexMatrix,
    generators: Vec<ComplexMatrix>,
    param_labels: Vec<String>,
}

impl AffineParametrization {
    pub fn new(
        constant: ComplexMatrix,
        generators: Vec<ComplexMatrix>,
        param_labels: Vec<String>,
    ) -> Result<Self> {
        let dim = constant.dim();
        check_dim(dim)?;
        let herm = constant.hermiticity_error();
        if herm > crate::DEFAULT_TOL {
            return Err(Error::NotHermitian {
                what: "constant term".into(),
                deviation: herm,
            });
        }
        let tr = constant.trace();
        if (tr - c64(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::TraceConstraint {
                what: "constant term".into(),
                expected: 1.0,
                found: tr.re,
            });
        }
        if param_labels.len() != generators.len() {
            return Err(Error::BadShape {
                what: format!(
                    "{} generators but {} parameter labels",
                    generators.len(),
                    param_labels.len()
                ),
            });
        }
        for (i, g) in generators.iter().enumerate() {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            let herm = g.hermiticity_error();
            if herm > crate::DEFAULT_TOL {
                return Err(Error::NotHermitian {
                    what: format!("generator {}", i + 1),
                    deviation: herm,
                });
            }
            let tr = g.trace();
            if tr.norm() > 1e-12 {
                return Err(Error::TraceConstraint {
                    what: format!("generator {}", i + 1),
                    expected: 0.0,
                    found: tr.re,
                });
            }
        }
        Ok(Self {
            dim,
            constant,
            generators,
            param_labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self) -> &ComplexMatrix {
        &self.constant
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    pub fn param_labels(&self) -> &[String] {
        &self.param_labels
    }

    /// Evaluates `M₀ + Σ_α p_α M_α`.
    pub fn evaluate(&self, params: &[f64]) -> Result<ComplexMatrix> {
        if params.len() != self.generators.len() {
            return Err(Error::BadShape {
                what: format!(
                    "expected {} parameters, got {}",
                    self.generators.len(),
                    params.len()
                ),
            });
        }
        let mut acc = self.constant.clone();
        for (p, g) in params.iter().zip(self.generators.iter()) {
            acc = &acc + &g.scale(c64(*p, 0.0));
        }
        Ok(acc)
    }
}

/// The affine re-expression of the qudit probability density matrix:
/// constant term `ρ(0)` and one traceless Hermitian generator per parameter,
/// in canonical parameter order.
pub fn probability_parametrization(dim: usize) -> Result<AffineParametrization> {
    check_dim(dim)?;
    let constant = ComplexMatrix::from_fn(dim, |r, c| {
        if r == c {
            if r == 0 {
                c64(2.0 - dim as f64, 0.0)
            } else {
                c64(1.0, 0.0)
            }
        } else if r > c {
            c64(-0.5, -0.5)
        } else {
            c64(-0.5, 0.5)
        }
    });
    let mut generators = Vec::with_capacity(dim * dim - 1);
    for (j, k) in level_pairs(dim) {
        let (r, c) = (j - 1, k - 1);
        generators.push(ComplexMatrix::from_fn(dim, |a, b| {
            if (a, b) == (r, c) || (a, b) == (c, r) {
                c64(1.0, 0.0)
            } else {
                c64(0.0, 0.0)
            }
        }));
        generators.push(ComplexMatrix::from_fn(dim, |a, b| {
            if (a, b) == (r, c) {
                c64(0.0, 1.0)
            } else if (a, b) == (c, r) {
                c64(0.0, -1.0)
            } else {
                c64(0.0, 0.0)
            }
        }));
    }
    for j in 2..=dim {
        generators.push(ComplexMatrix::from_fn(dim, |a, b| {
            if a != b {
                c64(0.0, 0.0)
            } else if a == 0 {
                c64(1.0, 0.0)
            } else if a == j - 1 {
                c64(-1.0, 0.0)
            } else {
                c64(0.0, 0.0)
            }
        }));
    }
    AffineParametrization::new(
        constant,
        generators,
        QuditProbabilityTable::parameter_labels(dim),
    )
}

/// One affine functional of the parametrization's parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineRow {
    pub coefficients: Vec<f64>,
    pub constant: f64,
}

impl AffineRow {
    pub fn new(coefficients: Vec<f64>, constant: f64) -> Self {
        Self {
            coefficients,
            constant,
        }
    }

    /// The functional `p ↦ p[index]`.
    pub fn unit(param_count: usize, index: usize) -> Self {
        let mut coefficients = vec![0.0; param_count];
        coefficients[index] = 1.0;
        Self {
            coefficients,
            constant: 0.0,
        }
    }

    /// The constant functional `p ↦ value`.
    pub fn constant_row(param_count: usize, value: f64) -> Self {
        Self {
            coefficients: vec![0.0; param_count],
            constant: value,
        }
    }

    pub fn evaluate(&self, params: &[f64]) -> f64 {
        self.constant
            + self
                .coefficients
                .iter()
                .zip(params.iter())
                .map(|(c, p)| c * p)
                .sum::<f64>()
    }
}

/// The target symbol of a representation: `n = d²` affine functionals of the
/// density-matrix parameters, one per slot, with slot labels.
#[derive(Clone, Debug)]
pub struct SymbolSpecification {
    dim: usize,
    rows: Vec<AffineRow>,
    labels: Vec<String>,
}

impl SymbolSpecification {
    pub fn new(dim: usize, rows: Vec<AffineRow>, labels: Vec<String>) -> Result<Self> {
        check_dim(dim)?;
        let n = dim * dim;
        if rows.len() != n || labels.len() != n {
            return Err(Error::BadShape {
                what: format!(
                    "dimension {} needs {} rows and labels, got {} rows, {} labels",
                    dim,
                    n,
                    rows.len(),
                    labels.len()
                ),
            });
        }
        let width = rows[0].coefficients.len();
        if rows.iter().any(|r| r.coefficients.len() != width) {
            return Err(Error::BadShape {
                what: "symbol rows have inconsistent coefficient counts".into(),
            });
        }
        Ok(Self { dim, rows, labels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[AffineRow] {
        &self.rows
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn param_count(&self) -> usize {
        self.rows.first().map(|r| r.coefficients.len()).unwrap_or(0)
    }

    /// Evaluates every row at a parameter vector.
    pub fn evaluate(&self, params: &[f64]) -> Result<Vec<f64>> {
        if params.len() != self.param_count() {
            return Err(Error::BadShape {
                what: format!(
                    "expected {} parameters, got {}",
                    self.param_count(),
                    params.len()
                ),
            });
        }
        Ok(self.rows.iter().map(|r| r.evaluate(params)).collect())
    }
}

/// The probability-representation symbol specification.
///
/// For d = 2 the slots are `(p1, p2, p3, 1-p3)`; for d = 3 the nine slots
/// follow the reference ordering `(p1³¹, 1-p2³¹, p3³³, p1²¹, p2²¹, p3²²,
/// p1³², 1-p2³², 1)`; for d ≥ 4 the slots are the parameters in canonical
/// order followed by the constant slot.
pub fn probability_symbol_spec(dim: usize) -> Result<SymbolSpecification> {
    check_dim(dim)?;
    let m = dim * dim - 1;
    match dim {
        2 => {
            let rows = vec![
                AffineRow::unit(m, 0),
                AffineRow::unit(m, 1),
                AffineRow::unit(m, 2),
                AffineRow::new(vec![0.0, 0.0, -1.0], 1.0),
            ];
            let labels = ["p1", "p2", "p3", "p4=1-p3"].map(String::from).to_vec();
            SymbolSpecification::new(dim, rows, labels)
        }
        3 => {
            // Canonical parameter order: p1²¹ p2²¹ p1³¹ p2³¹ p1³² p2³² p3²² p3³³.
            let complement = |index: usize| {
                let mut coefficients = vec![0.0; m];
                coefficients[index] = -1.0;
                AffineRow::new(coefficients, 1.0)
            };
            let rows = vec![
                AffineRow::unit(m, 2),
                complement(3),
                AffineRow::unit(m, 7),
                AffineRow::unit(m, 0),
                AffineRow::unit(m, 1),
                AffineRow::unit(m, 6),
                AffineRow::unit(m, 4),
                complement(5),
                AffineRow::constant_row(m, 1.0),
            ];
            SymbolSpecification::new(dim, rows, qutrit_probability_labels())
        }
        _ => {
            let mut rows: Vec<AffineRow> = (0..m).map(|i| AffineRow::unit(m, i)).collect();
            rows.push(AffineRow::constant_row(m, 1.0));
            let mut labels = QuditProbabilityTable::parameter_labels(dim);
            labels.push("const".into());
            SymbolSpecification::new(dim, rows, labels)
        }
    }
}

fn qutrit_probability_labels() -> Vec<String> {
    qutrit::probability_basis().labels().to_vec()
}

/// Hermitian degree-of-freedom layout: `dim` diagonal entries, then the
/// (real, imaginary) parts of each strictly-lower entry in row-major order.
fn dof_count(dim: usize) -> usize {
    dim * dim
}

/// Real trace pairings `Tr(M B_h)` of a Hermitian matrix against the
/// degree-of-freedom basis, written into one system row.
fn pairing_row(m: &ComplexMatrix, dim: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(dof_count(dim));
    for j in 0..dim {
        row.push(m.get(j, j).re);
    }
    for r in 1..dim {
        for c in 0..r {
            let entry = m.get(r, c);
            row.push(2.0 * entry.re);
            row.push(2.0 * entry.im);
        }
    }
    row
}

/// Assembles the Hermitian matrix encoded by a degree-of-freedom vector.
fn matrix_from_dof(dim: usize, x: &DVector<f64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |r, c| {
        if r == c {
            c64(x[r], 0.0)
        } else {
            let (lo, hi, sign) = if r > c { (r, c, 1.0) } else { (c, r, -1.0) };
            let base = dim + (lo * (lo - 1) / 2 + hi) * 2;
            c64(x[base], sign * x[base + 1])
        }
    })
}

struct RankCheckedLu {
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    rank: usize,
    size: usize,
}

impl RankCheckedLu {
    fn new(a: DMatrix<f64>) -> Self {
        let size = a.nrows();
        let lu = a.lu();
        let pivots = lu.u().diagonal();
        let max_pivot = pivots.iter().fold(0.0f64, |acc, p| acc.max(p.abs()));
        let rank = pivots
            .iter()
            .filter(|p| p.abs() > PIVOT_THRESHOLD * max_pivot && max_pivot > 0.0)
            .count();
        Self { lu, rank, size }
    }

    fn is_full_rank(&self) -> bool {
        self.rank == self.size
    }

    fn solve(&self, b: &DVector<f64>) -> Result<DVector<f64>> {
        self.lu.solve(b).ok_or(Error::RankDeficient {
            rank: self.rank,
            size: self.size,
        })
    }
}

/// Solves for the Hermitian dequantizers of an affine symbol specification:
/// one `U⁽ⁱ⁾` per slot with `Tr(ρ(p) U⁽ⁱ⁾)` equal to the slot's functional
/// identically in `p`.
///
/// Each slot is an exactly determined real `d² × d²` system obtained by
/// matching the coefficient of every parameter and the constant term. The
/// factorization is shared across slots. Fails when the parametrization does
/// not determine the system (rank deficiency) or a residual exceeds `tol`.
pub fn solve_dequantizers(
    par: &AffineParametrization,
    spec: &SymbolSpecification,
    tol: f64,
) -> Result<Vec<ComplexMatrix>> {
    let dim = par.dim();
    if spec.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: spec.dim(),
        });
    }
    if spec.param_count() != par.generators().len() {
        return Err(Error::BadShape {
            what: format!(
                "specification has {} coefficients per row but parametrization has {} parameters",
                spec.param_count(),
                par.generators().len()
            ),
        });
    }
    let n = dof_count(dim);
    let rows = 1 + par.generators().len();
    if rows != n {
        return Err(Error::BadShape {
            what: format!(
                "coefficient matching needs {} equations for dimension {}, got {}",
                n, dim, rows
            ),
        });
    }

    let mut a = DMatrix::zeros(n, n);
    for (h, v) in pairing_row(par.constant(), dim).into_iter().enumerate() {
        a[(0, h)] = v;
    }
    for (alpha, g) in par.generators().iter().enumerate() {
        for (h, v) in pairing_row(g, dim).into_iter().enumerate() {
            a[(1 + alpha, h)] = v;
        }
    }

    let checked = RankCheckedLu::new(a.clone());
    if !checked.is_full_rank() {
        return Err(Error::RankDeficient {
            rank: checked.rank,
            size: checked.size,
        });
    }

    let mut dequantizers = Vec::with_capacity(n);
    for row in spec.rows() {
        let mut b = DVector::zeros(n);
        b[0] = row.constant;
        for (alpha, c) in row.coefficients.iter().enumerate() {
            b[1 + alpha] = *c;
        }
        let x = checked.solve(&b)?;
        let residual = (&a * &x - &b).amax();
        if residual > tol {
            return Err(Error::ResidualTooLarge { residual, tol });
        }
        dequantizers.push(matrix_from_dof(dim, &x));
    }
    Ok(dequantizers)
}

/// Solves the duality condition for the quantizers of a dequantizer family:
/// inverts the Gram matrix `G_ij = Tr(U⁽ⁱ⁾U⁽ʲ⁾)` and returns
/// `D⁽ⁱ⁾ = Σ_j (G⁻¹)_ij U⁽ʲ⁾`.
pub fn solve_quantizers(dequantizers: &[ComplexMatrix], tol: f64) -> Result<Vec<ComplexMatrix>> {
    let n = dequantizers.len();
    let dim = dequantizers
        .first()
        .map(|m| m.dim())
        .ok_or(Error::BadShape {
            what: "empty dequantizer list".into(),
        })?;
    if n != dim * dim {
        return Err(Error::BadShape {
            what: format!(
                "expected {} dequantizers for dimension {}, got {}",
                dim * dim,
                dim,
                n
            ),
        });
    }
    for (i, u) in dequantizers.iter().enumerate() {
        if u.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: u.dim(),
            });
        }
        let deviation = u.hermiticity_error();
        if deviation > crate::DEFAULT_TOL {
            return Err(Error::NotHermitian {
                what: format!("dequantizer {}", i + 1),
                deviation,
            });
        }
    }

    let gram = DMatrix::from_fn(n, n, |i, j| {
        dequantizers[i].trace_product(&dequantizers[j]).re
    });
    let checked = RankCheckedLu::new(gram.clone());
    if !checked.is_full_rank() {
        let sv = gram.svd(false, false).singular_values;
        let max = sv.iter().fold(0.0f64, |a, s| a.max(*s));
        let min = sv.iter().fold(f64::INFINITY, |a, s| a.min(*s));
        return Err(Error::SingularGram {
            condition: max / min,
        });
    }

    let mut quantizers = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = DVector::zeros(n);
        e[i] = 1.0;
        let x = checked.solve(&e)?;
        let residual = (&gram * &x - &e).amax();
        if residual > tol {
            return Err(Error::ResidualTooLarge { residual, tol });
        }
        let mut acc = ComplexMatrix::zeros(dim);
        for (coeff, u) in x.iter().zip(dequantizers.iter()) {
            acc = &acc + &u.scale(c64(*coeff, 0.0));
        }
        quantizers.push(acc);
    }
    Ok(quantizers)
}

/// Solves the probability-representation basis for any dimension: derives the
/// dequantizers from the symbol specification, then the quantizers from the
/// Gram system.
pub fn solved_probability_basis(dim: usize, tol: f64) -> Result<OperatorBasis> {
    let par = probability_parametrization(dim)?;
    let spec = probability_symbol_spec(dim)?;
    let dequantizers = solve_dequantizers(&par, &spec, tol)?;
    let quantizers = solve_quantizers(&dequantizers, tol)?;
    OperatorBasis::with_quantizers(
        "probability",
        dequantizers,
        quantizers,
        spec.labels().to_vec(),
    )
}

/// The self-dual mean-value basis for any dimension.
///
/// Pair operators `(E_jk + E_kj)/√2` and `(iE_jk − iE_kj)/√2` for each level
/// pair in canonical order, completed on the diagonal by `σ_z/√2, I/√2` for
/// d = 2 and by the projectors `E_jj` for d ≥ 3. The d = 2 and d = 3 sets are
/// the explicit reference tables from the qubit and qutrit modules.
pub fn meanvalue_basis(dim: usize) -> Result<OperatorBasis> {
    check_dim(dim)?;
    match dim {
        2 => Ok(qubit::meanvalue_basis()),
        3 => Ok(qutrit::meanvalue_basis()),
        _ => {
            let s = FRAC_1_SQRT_2;
            let mut dequantizers = Vec::with_capacity(dim * dim);
            let mut labels = Vec::with_capacity(dim * dim);
            for (j, k) in level_pairs(dim) {
                let (r, c) = (j - 1, k - 1);
                dequantizers.push(ComplexMatrix::from_fn(dim, |a, b| {
                    if (a, b) == (r, c) || (a, b) == (c, r) {
                        c64(s, 0.0)
                    } else {
                        c64(0.0, 0.0)
                    }
                }));
                dequantizers.push(ComplexMatrix::from_fn(dim, |a, b| {
                    if (a, b) == (r, c) {
                        c64(0.0, s)
                    } else if (a, b) == (c, r) {
                        c64(0.0, -s)
                    } else {
                        c64(0.0, 0.0)
                    }
                }));
                labels.push(format!("s1^{}", pair_suffix(j, k)));
                labels.push(format!("s2^{}", pair_suffix(j, k)));
            }
            for j in 1..=dim {
                dequantizers.push(ComplexMatrix::from_fn(dim, |a, b| {
                    if a == b && a == j - 1 {
                        c64(1.0, 0.0)
                    } else {
                        c64(0.0, 0.0)
                    }
                }));
                labels.push(format!("e{j}{j}"));
            }
            OperatorBasis::new_self_dual("meanvalue", dequantizers, labels)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::QubitProbabilities;
    use crate::qutrit::QutritProbabilities;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_table(dim: usize, rng: &mut ChaCha8Rng) -> QuditProbabilityTable {
        let pairs = dim * (dim - 1) / 2;
        QuditProbabilityTable::from_parts(
            dim,
            (0..pairs).map(|_| rng.random_range(0.0..1.0)).collect(),
            (0..pairs).map(|_| rng.random_range(0.0..1.0)).collect(),
            (0..dim - 1).map(|_| rng.random_range(0.0..1.0)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn maximally_mixed_tables() {
        for dim in 2..=6 {
            let rho = QuditProbabilityTable::maximally_mixed(dim)
                .unwrap()
                .density_matrix();
            let target = ComplexMatrix::identity(dim).scale(c64(1.0 / dim as f64, 0.0));
            assert!(rho.max_abs_diff(&target) <= 1e-15, "dim {dim}");
        }
    }

    #[test]
    fn dimension_two_reduces_to_qubit_form() {
        let (p1, p2, p3) = (0.3, 0.85, 0.6);
        let table = QuditProbabilityTable::from_parts(2, vec![p1], vec![p2], vec![p3]).unwrap();
        let qubit_rho = QubitProbabilities::new(p1, p2, p3)
            .unwrap()
            .density_matrix();
        assert!(table.density_matrix().max_abs_diff(&qubit_rho) == 0.0);
    }

    #[test]
    fn dimension_three_reduces_to_qutrit_form() {
        let q = QutritProbabilities::new(0.6, 0.3, 0.55, 0.7, 0.4, 0.52, 0.8, 0.75).unwrap();
        assert!(
            q.to_table()
                .density_matrix()
                .max_abs_diff(&q.density_matrix())
                == 0.0
        );
    }

    #[test]
    fn table_accessors_and_validation() {
        let mut t = QuditProbabilityTable::maximally_mixed(4).unwrap();
        t.set_pair(3, 2, 0.9, 0.1).unwrap();
        t.set_diagonal(4, 0.25).unwrap();
        assert_eq!(t.pair(3, 2).unwrap(), (0.9, 0.1));
        assert_eq!(t.diagonal(4).unwrap(), 0.25);
        assert!(t.set_pair(2, 3, 0.5, 0.5).is_err());
        assert!(t.set_diagonal(1, 0.5).is_err());
        assert!(t.set_pair(3, 1, 1.5, 0.5).is_err());
        assert!(matches!(
            QuditProbabilityTable::from_parts(3, vec![0.5], vec![0.5], vec![0.5]),
            Err(Error::BadShape { .. })
        ));
    }

    #[test]
    fn qubit_parametrization_terms() {
        let par = probability_parametrization(2).unwrap();
        // Constant term: the density matrix at p = 0.
        let expected_m0 = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(-0.5, 0.5)],
            vec![c64(-0.5, -0.5), c64(1.0, 0.0)],
        ])
        .unwrap();
        assert!(par.constant().max_abs_diff(&expected_m0) == 0.0);
        // Generator of p1 is the symmetric pair flip.
        let expected_g1 = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        assert!(par.generators()[0].max_abs_diff(&expected_g1) == 0.0);
        // Generator of p3 is diag(1, -1).
        let expected_g3 = ComplexMatrix::from_rows(&[
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(-1.0, 0.0)],
        ])
        .unwrap();
        assert!(par.generators()[2].max_abs_diff(&expected_g3) == 0.0);
    }

    #[test]
    fn parametrization_invariants() {
        for dim in 2..=6 {
            let par = probability_parametrization(dim).unwrap();
            assert!((par.constant().trace() - c64(1.0, 0.0)).norm() == 0.0);
            assert_eq!(par.generators().len(), dim * dim - 1);
            for g in par.generators() {
                assert!(g.trace().norm() == 0.0);
                assert!(g.hermiticity_error() == 0.0);
            }
        }
    }

    #[test]
    fn parametrization_matches_table_builder() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in 2..=5 {
            let par = probability_parametrization(dim).unwrap();
            for _ in 0..20 {
                let table = random_table(dim, &mut rng);
                let via_affine = par.evaluate(&table.parameter_vector()).unwrap();
                assert!(via_affine.max_abs_diff(&table.density_matrix()) <= 1e-15);
            }
        }
    }

    #[test]
    fn parametrization_rejects_bad_terms() {
        // Non-unit trace constant.
        let err = AffineParametrization::new(ComplexMatrix::zeros(2), vec![], vec![]).unwrap_err();
        assert!(matches!(err, Error::TraceConstraint { .. }));
        // Traceful generator.
        let err = AffineParametrization::new(
            ComplexMatrix::identity(2).scale(c64(0.5, 0.0)),
            vec![ComplexMatrix::identity(2)],
            vec!["g".into()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::TraceConstraint { .. }));
    }

    #[test]
    fn qubit_symbol_spec_rows() {
        let spec = probability_symbol_spec(2).unwrap();
        let values = spec.evaluate(&[0.3, 0.8, 0.65]).unwrap();
        let expected = [0.3, 0.8, 0.65, 0.35];
        for (got, want) in values.iter().zip(expected) {
            assert!((got - want).abs() <= 1e-15);
        }
        assert_eq!(spec.labels()[3], "p4=1-p3");
    }

    #[test]
    fn qudit_symbol_spec_shape() {
        let spec = probability_symbol_spec(4).unwrap();
        assert_eq!(spec.rows().len(), 16);
        assert_eq!(spec.param_count(), 15);
        // Last row is the constant slot.
        assert_eq!(spec.rows()[15], AffineRow::constant_row(15, 1.0));
        assert_eq!(spec.labels()[15], "const");
        // The first fifteen slots are the parameters themselves.
        let params: Vec<f64> = (0..15).map(|i| 0.05 * i as f64).collect();
        let values = spec.evaluate(&params).unwrap();
        for (i, p) in params.iter().enumerate() {
            assert!((values[i] - p).abs() == 0.0);
        }
    }

    #[test]
    fn solved_qubit_basis_matches_tables() {
        let basis = solved_probability_basis(2, 1e-10).unwrap();
        let reference = qubit::probability_basis();
        for (got, want) in basis.dequantizers().iter().zip(reference.dequantizers()) {
            assert!(got.max_abs_diff(want) <= 1e-10);
        }
        for (got, want) in basis
            .quantizers()
            .unwrap()
            .iter()
            .zip(reference.quantizers().unwrap())
        {
            assert!(got.max_abs_diff(want) <= 1e-10);
        }
    }

    #[test]
    fn solved_qutrit_basis_matches_tables() {
        let basis = solved_probability_basis(3, 1e-10).unwrap();
        let reference = qutrit::probability_basis();
        for (got, want) in basis.dequantizers().iter().zip(reference.dequantizers()) {
            assert!(got.max_abs_diff(want) <= 1e-10);
        }
        for (got, want) in basis
            .quantizers()
            .unwrap()
            .iter()
            .zip(reference.quantizers().unwrap())
        {
            assert!(got.max_abs_diff(want) <= 1e-10);
        }
    }

    #[test]
    fn solved_bases_pass_duality_and_match_spec() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for dim in 2..=8 {
            let basis = solved_probability_basis(dim, 1e-10).unwrap();
            assert!(basis.duality_check(1e-10).unwrap().pass, "dim {dim}");
            let spec = probability_symbol_spec(dim).unwrap();
            for _ in 0..10 {
                let table = random_table(dim, &mut rng);
                let symbol = basis.symbol_of(&table.density_matrix()).unwrap();
                let expected = spec.evaluate(&table.parameter_vector()).unwrap();
                for (got, want) in symbol.values().iter().zip(expected) {
                    assert!((got - c64(want, 0.0)).norm() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn quantizers_from_qubit_probability_dequantizers() {
        let reference = qubit::probability_basis();
        let quantizers = solve_quantizers(reference.dequantizers(), 1e-10).unwrap();
        for (got, want) in quantizers.iter().zip(reference.quantizers().unwrap()) {
            assert!(got.max_abs_diff(want) <= 1e-13);
        }
    }

    #[test]
    fn quantizers_of_orthonormal_set_are_the_set() {
        for basis in [meanvalue_basis(2).unwrap(), meanvalue_basis(3).unwrap()] {
            let quantizers = solve_quantizers(basis.dequantizers(), 1e-10).unwrap();
            for (got, want) in quantizers.iter().zip(basis.dequantizers()) {
                assert!(got.max_abs_diff(want) <= 1e-14);
            }
        }
    }

    #[test]
    fn bloch_specification_solves_to_normalized_pauli_set() {
        // Mean-value family: rho = (I + x sx + y sy + z sz)/2 with symbol
        // rows (x, y, z, 1).
        let half = c64(0.5, 0.0);
        let m0 = ComplexMatrix::identity(2).scale(half);
        let sx = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        let sy = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(0.0, -1.0)],
            vec![c64(0.0, 1.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        let sz = ComplexMatrix::from_rows(&[
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(-1.0, 0.0)],
        ])
        .unwrap();
        let par = AffineParametrization::new(
            m0,
            vec![sx.scale(half), sy.scale(half), sz.scale(half)],
            ["x", "y", "z"].map(String::from).to_vec(),
        )
        .unwrap();
        let rows = vec![
            AffineRow::unit(3, 0),
            AffineRow::unit(3, 1),
            AffineRow::unit(3, 2),
            AffineRow::constant_row(3, 1.0),
        ];
        let spec =
            SymbolSpecification::new(2, rows, ["x", "y", "z", "const"].map(String::from).to_vec())
                .unwrap();
        let solved = solve_dequantizers(&par, &spec, 1e-10).unwrap();
        let expected = [sx, sy, sz, ComplexMatrix::identity(2)];
        for (got, want) in solved.iter().zip(expected.iter()) {
            assert!(got.max_abs_diff(want) <= 1e-14);
        }
        // Frobenius normalization turns the solution into the self-dual set.
        let reference = qubit::meanvalue_basis();
        for (got, want) in solved.iter().zip(reference.dequantizers()) {
            let norm = got.trace_product(got).re.sqrt();
            assert!(got.scale(c64(1.0 / norm, 0.0)).max_abs_diff(want) <= 1e-15);
        }
    }

    #[test]
    fn degenerate_parametrization_is_rank_deficient() {
        let sx = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        let sz = ComplexMatrix::from_rows(&[
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(-1.0, 0.0)],
        ])
        .unwrap();
        let par = AffineParametrization::new(
            ComplexMatrix::identity(2).scale(c64(0.5, 0.0)),
            vec![sx.clone(), sx, sz],
            ["a", "b", "c"].map(String::from).to_vec(),
        )
        .unwrap();
        let spec = probability_symbol_spec(2).unwrap();
        let err = solve_dequantizers(&par, &spec, 1e-10).unwrap_err();
        match err {
            Error::RankDeficient { rank, size } => {
                assert_eq!(size, 4);
                assert_eq!(rank, 3);
            }
            other => panic!("expected rank deficiency, got {other:?}"),
        }
    }

    #[test]
    fn duplicated_dequantizers_have_singular_gram() {
        let mut deqs = qubit::probability_basis().dequantizers().to_vec();
        deqs[3] = deqs[2].clone();
        let err = solve_quantizers(&deqs, 1e-10).unwrap_err();
        assert!(matches!(err, Error::SingularGram { .. }));
    }

    #[test]
    fn meanvalue_bases_match_reference_tables() {
        let via_general = meanvalue_basis(2).unwrap();
        let reference = qubit::meanvalue_basis();
        for (got, want) in via_general
            .dequantizers()
            .iter()
            .zip(reference.dequantizers())
        {
            assert!(got.max_abs_diff(want) == 0.0);
        }
        let via_general = meanvalue_basis(3).unwrap();
        let reference = qutrit::meanvalue_basis();
        for (got, want) in via_general
            .dequantizers()
            .iter()
            .zip(reference.dequantizers())
        {
            assert!(got.max_abs_diff(want) == 0.0);
        }
    }

    #[test]
    fn higher_dimensional_meanvalue_bases_are_orthonormal() {
        for dim in 4..=6 {
            let basis = meanvalue_basis(dim).unwrap();
            assert_eq!(basis.n(), dim * dim);
            assert!(basis.is_self_dual());
            assert!(basis.self_duality_deviation() <= 1e-15, "dim {dim}");
        }
    }

    #[test]
    fn dimension_guards() {
        assert!(matches!(
            probability_parametrization(1),
            Err(Error::DimensionTooSmall { dim: 1 })
        ));
        assert!(probability_symbol_spec(0).is_err());
        assert!(meanvalue_basis(1).is_err());
        assert!(QuditProbabilityTable::maximally_mixed(1).is_err());
    }
}
