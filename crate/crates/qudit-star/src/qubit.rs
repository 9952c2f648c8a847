//! Qubit (d = 2) probability and mean-value representations.
//!
//! A qubit density matrix is parametrized by the probabilities `p1, p2, p3`
//! of measuring spin projection +1/2 along x, y, z:
//!
//! ```text
//! ρ = [ p3                      (p1-1/2) - i(p2-1/2) ]
//!     [ (p1-1/2) + i(p2-1/2)    1 - p3               ]
//! ```
//!
//! or alternatively by the Bloch mean values `(x, y, z)`. This module holds
//! both builders, the two explicit operator bases (the probability pair and
//! the self-dual Pauli set), and the Malevich-square geometry of the
//! probability triple.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::basis::OperatorBasis;
use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};

fn check_unit_interval(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name: name.to_string(),
            value,
        });
    }
    Ok(())
}

/// Probabilities of spin projection +1/2 along the x, y and z axes.
///
/// Values are validated to lie in `[0, 1]` at construction. The quantum
/// positivity constraint `(p1-1/2)² + (p2-1/2)² + (p3-1/2)² ≤ 1/4` is *not*
/// enforced here — the density-matrix formula is defined on the whole cube —
/// but can be queried through [`QubitProbabilities::positivity_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitProbabilities {
    p1: f64,
    p2: f64,
    p3: f64,
}

impl QubitProbabilities {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        check_unit_interval("p1", p1)?;
        check_unit_interval("p2", p2)?;
        check_unit_interval("p3", p3)?;
        Ok(Self { p1, p2, p3 })
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn p3(&self) -> f64 {
        self.p3
    }

    /// The 2×2 density matrix in the probability parametrization.
    pub fn density_matrix(&self) -> ComplexMatrix {
        let off = c64(self.p1 - 0.5, -(self.p2 - 0.5));
        ComplexMatrix::from_rows(&[
            vec![c64(self.p3, 0.0), off],
            vec![off.conj(), c64(1.0 - self.p3, 0.0)],
        ])
        .expect("2x2 rows are square")
    }

    /// Mean values of the spin projections: `(2p1-1, 2p2-1, 2p3-1)`.
    pub fn bloch_vector(&self) -> BlochVector {
        BlochVector::new(
            2.0 * self.p1 - 1.0,
            2.0 * self.p2 - 1.0,
            2.0 * self.p3 - 1.0,
        )
    }

    /// True when `(p1-1/2)² + (p2-1/2)² + (p3-1/2)² ≤ 1/4 + tol`, the
    /// condition for the density matrix to be nonnegative.
    pub fn positivity_check(&self, tol: f64) -> bool {
        let r2 = (self.p1 - 0.5).powi(2) + (self.p2 - 0.5).powi(2) + (self.p3 - 0.5).powi(2);
        r2 <= 0.25 + tol
    }

    /// Total area of the three Malevich squares:
    /// `S = 2[3(1-p1-p2-p3) + 2p1² + 2p2² + 2p3² + p1p2 + p2p3 + p3p1]`.
    ///
    /// Physical states satisfy `S ≤ 3`.
    pub fn malevich_square_sum(&self) -> f64 {
        let (p1, p2, p3) = (self.p1, self.p2, self.p3);
        2.0 * (3.0 * (1.0 - p1 - p2 - p3)
            + 2.0 * (p1 * p1 + p2 * p2 + p3 * p3)
            + p1 * p2
            + p2 * p3
            + p3 * p1)
    }

    /// Side lengths of the probability triangle inscribed in the equilateral
    /// triangle of side √2: vertex k on side k is placed at fraction `p_k`,
    /// so `y_k² = 2(1-p_k)² + 2p_{k+1}² - 2(1-p_k)p_{k+1}` cyclically. The
    /// squares built on these sides have total area equal to
    /// [`Self::malevich_square_sum`].
    pub fn malevich_side_lengths(&self) -> [f64; 3] {
        let side = |a: f64, b: f64| {
            (2.0 * (1.0 - a) * (1.0 - a) + 2.0 * b * b - 2.0 * (1.0 - a) * b).sqrt()
        };
        [
            side(self.p1, self.p2),
            side(self.p2, self.p3),
            side(self.p3, self.p1),
        ]
    }
}

/// Bloch-sphere parameters: mean values of the spin projections.
///
/// Construction does not validate; `x² + y² + z² ≤ 1` is a checkable
/// predicate, not an invariant of the type.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// `ρ = (1/2)[[1+z, x-iy], [x+iy, 1-z]]`.
    pub fn density_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![
                c64(0.5 * (1.0 + self.z), 0.0),
                c64(0.5 * self.x, -0.5 * self.y),
            ],
            vec![
                c64(0.5 * self.x, 0.5 * self.y),
                c64(0.5 * (1.0 - self.z), 0.0),
            ],
        ])
        .expect("2x2 rows are square")
    }

    /// True when the vector lies inside the unit ball within `tol`.
    pub fn is_valid(&self, tol: f64) -> bool {
        self.x * self.x + self.y * self.y + self.z * self.z <= 1.0 + tol
    }
}

fn m2(rows: [[Complex64; 2]; 2]) -> ComplexMatrix {
    ComplexMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).expect("2x2 rows are square")
}

/// The probability-representation basis: symbols of a density matrix are
/// `(p1, p2, p3, 1-p3)`.
///
/// Dequantizers:
///
/// ```text
/// U1 = 1/2 [[1,1],[1,1]]    U2 = 1/2 [[1,-i],[i,1]]
/// U3 = [[1,0],[0,0]]        U4 = [[0,0],[0,1]]
/// ```
///
/// with the dual quantizers obtained from the orthogonality condition.
pub fn probability_basis() -> OperatorBasis {
    let zero = c64(0.0, 0.0);
    let one = c64(1.0, 0.0);
    let half = c64(0.5, 0.0);

    let dequantizers = vec![
        m2([[half, half], [half, half]]),
        m2([[half, c64(0.0, -0.5)], [c64(0.0, 0.5), half]]),
        m2([[one, zero], [zero, zero]]),
        m2([[zero, zero], [zero, one]]),
    ];
    let quantizers = vec![
        m2([[zero, one], [one, zero]]),
        m2([[zero, c64(0.0, -1.0)], [c64(0.0, 1.0), zero]]),
        m2([[one, c64(-0.5, 0.5)], [c64(-0.5, -0.5), zero]]),
        m2([[zero, c64(-0.5, 0.5)], [c64(-0.5, -0.5), one]]),
    ];
    let labels = ["p1", "p2", "p3", "p4=1-p3"].map(String::from).to_vec();
    OperatorBasis::with_quantizers("probability", dequantizers, quantizers, labels)
        .expect("hard-coded qubit probability basis is valid")
}

/// The self-dual mean-value basis: the Pauli matrices and the identity, each
/// scaled by 1/√2. Symbols of a density matrix are `(x, y, z, 1)/√2`.
pub fn meanvalue_basis() -> OperatorBasis {
    let s = FRAC_1_SQRT_2;
    let zero = c64(0.0, 0.0);

    let dequantizers = vec![
        m2([[zero, c64(s, 0.0)], [c64(s, 0.0), zero]]),
        m2([[zero, c64(0.0, -s)], [c64(0.0, s), zero]]),
        m2([[c64(s, 0.0), zero], [zero, c64(-s, 0.0)]]),
        m2([[c64(s, 0.0), zero], [zero, c64(s, 0.0)]]),
    ];
    let labels = ["s1", "s2", "s3", "s4"].map(String::from).to_vec();
    OperatorBasis::new_self_dual("meanvalue", dequantizers, labels)
        .expect("hard-coded qubit mean-value basis is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_matrix_eq(got: &ComplexMatrix, want: &[[Complex64; 2]; 2], tol: f64) {
        for (r, row) in want.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                assert!(
                    (got.get(r, c) - entry).norm() <= tol,
                    "entry ({r},{c}): got {}, want {}",
                    got.get(r, c),
                    entry
                );
            }
        }
    }

    #[test]
    fn maximally_mixed_point() {
        let p = QubitProbabilities::new(0.5, 0.5, 0.5).unwrap();
        let rho = p.density_matrix();
        assert!(rho.max_abs_diff(&ComplexMatrix::identity(2).scale(c64(0.5, 0.0))) == 0.0);
    }

    #[test]
    fn pure_spin_up() {
        let p = QubitProbabilities::new(0.5, 0.5, 1.0).unwrap();
        assert_matrix_eq(
            &p.density_matrix(),
            &[
                [c64(1.0, 0.0), c64(0.0, 0.0)],
                [c64(0.0, 0.0), c64(0.0, 0.0)],
            ],
            0.0,
        );
    }

    #[test]
    fn plus_x_projector() {
        let p = QubitProbabilities::new(1.0, 0.5, 0.5).unwrap();
        assert_matrix_eq(
            &p.density_matrix(),
            &[
                [c64(0.5, 0.0), c64(0.5, 0.0)],
                [c64(0.5, 0.0), c64(0.5, 0.0)],
            ],
            0.0,
        );
    }

    #[test]
    fn out_of_range_probability_rejected() {
        assert!(matches!(
            QubitProbabilities::new(1.2, 0.5, 0.5),
            Err(Error::OutOfRange { .. })
        ));
        assert!(QubitProbabilities::new(-0.01, 0.5, 0.5).is_err());
    }

    #[test]
    fn bloch_builders() {
        let mixed = BlochVector::new(0.0, 0.0, 0.0).density_matrix();
        assert!(mixed.max_abs_diff(&ComplexMatrix::identity(2).scale(c64(0.5, 0.0))) == 0.0);
        let up = BlochVector::new(0.0, 0.0, 1.0).density_matrix();
        assert!((up.get(0, 0) - c64(1.0, 0.0)).norm() == 0.0);
        assert!(up.get(1, 1).norm() == 0.0);
    }

    #[test]
    fn bloch_and_probability_forms_agree() {
        for (p1, p2, p3) in [(0.3, 0.8, 0.5), (0.0, 1.0, 0.25), (0.61, 0.42, 0.93)] {
            let p = QubitProbabilities::new(p1, p2, p3).unwrap();
            let b = p.bloch_vector();
            assert!(b.density_matrix().max_abs_diff(&p.density_matrix()) <= 1e-15);
        }
    }

    #[test]
    fn probability_basis_matches_tables() {
        let basis = probability_basis();
        assert_matrix_eq(
            &basis.dequantizers()[0],
            &[
                [c64(0.5, 0.0), c64(0.5, 0.0)],
                [c64(0.5, 0.0), c64(0.5, 0.0)],
            ],
            0.0,
        );
        assert_matrix_eq(
            &basis.quantizers().unwrap()[2],
            &[
                [c64(1.0, 0.0), c64(-0.5, 0.5)],
                [c64(-0.5, -0.5), c64(0.0, 0.0)],
            ],
            0.0,
        );
        // Tr(D2 U2) = 1, Tr(D2 U3) = 0.
        let d2 = &basis.quantizers().unwrap()[1];
        assert!((d2.trace_product(&basis.dequantizers()[1]) - c64(1.0, 0.0)).norm() == 0.0);
        assert!(d2.trace_product(&basis.dequantizers()[2]).norm() == 0.0);
    }

    #[test]
    fn meanvalue_basis_is_scaled_pauli_set() {
        let basis = meanvalue_basis();
        let s = FRAC_1_SQRT_2;
        assert_matrix_eq(
            &basis.dequantizers()[0],
            &[[c64(0.0, 0.0), c64(s, 0.0)], [c64(s, 0.0), c64(0.0, 0.0)]],
            0.0,
        );
        assert!(basis.is_self_dual());
    }

    #[test]
    fn meanvalue_symbol_of_bloch_state() {
        let basis = meanvalue_basis();
        let b = BlochVector::new(0.4, -0.3, 0.6);
        let f = basis.symbol_of(&b.density_matrix()).unwrap();
        let s = FRAC_1_SQRT_2;
        let expected = [0.4 * s, -0.3 * s, 0.6 * s, s];
        for (got, want) in f.values().iter().zip(expected) {
            assert!((got - c64(want, 0.0)).norm() <= 1e-15);
        }
    }

    #[test]
    fn meanvalue_symbol_of_probability_state() {
        let basis = meanvalue_basis();
        let p = QubitProbabilities::new(0.7, 0.1, 0.45).unwrap();
        let f = basis.symbol_of(&p.density_matrix()).unwrap();
        let r2 = std::f64::consts::SQRT_2;
        let expected = [
            r2 * (0.7 - 0.5),
            r2 * (0.1 - 0.5),
            r2 * (0.45 - 0.5),
            FRAC_1_SQRT_2,
        ];
        for (got, want) in f.values().iter().zip(expected) {
            assert!((got - c64(want, 0.0)).norm() <= 1e-15);
        }
    }

    #[test]
    fn malevich_square_sum_values() {
        let mixed = QubitProbabilities::new(0.5, 0.5, 0.5).unwrap();
        assert!((mixed.malevich_square_sum() - 1.5).abs() <= 1e-15);
        let up = QubitProbabilities::new(0.5, 0.5, 1.0).unwrap();
        assert!((up.malevich_square_sum() - 2.5).abs() <= 1e-15);
    }

    #[test]
    fn malevich_sides_square_to_the_sum() {
        for (p1, p2, p3) in [(0.5, 0.5, 0.5), (0.9, 0.2, 0.4), (0.0, 1.0, 0.5)] {
            let p = QubitProbabilities::new(p1, p2, p3).unwrap();
            let sides = p.malevich_side_lengths();
            let total: f64 = sides.iter().map(|y| y * y).sum();
            assert!((total - p.malevich_square_sum()).abs() <= 1e-12);
        }
    }

    #[test]
    fn positivity_checks() {
        assert!(QubitProbabilities::new(0.5, 0.5, 0.5)
            .unwrap()
            .positivity_check(0.0));
        assert!(!QubitProbabilities::new(1.0, 1.0, 1.0)
            .unwrap()
            .positivity_check(1e-10));
        // Boundary: left side exactly 1/4.
        assert!(QubitProbabilities::new(0.5, 0.5, 1.0)
            .unwrap()
            .positivity_check(0.0));
    }

    #[test]
    fn physical_states_have_nonnegative_spectrum() {
        // Deterministic grid inside the positivity ball.
        for i in 0..10 {
            for j in 0..10 {
                for k in 0..10 {
                    let p1 = 0.05 + 0.09 * i as f64;
                    let p2 = 0.05 + 0.09 * j as f64;
                    let p3 = 0.05 + 0.09 * k as f64;
                    let p = QubitProbabilities::new(p1, p2, p3).unwrap();
                    if !p.positivity_check(0.0) {
                        continue;
                    }
                    let rho = p.density_matrix();
                    let det = (rho.get(0, 0) * rho.get(1, 1)).re - rho.get(0, 1).norm_sqr();
                    assert!(det >= -1e-12);
                    let eig = rho.hermitian_eigenvalues();
                    assert!(eig[0] >= -1e-10);
                }
            }
        }
    }
}
