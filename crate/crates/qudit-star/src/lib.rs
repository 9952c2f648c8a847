//! Quantizer–dequantizer machinery for finite-dimensional quantum systems.
//!
//! An operator `A` on a d-level system is mapped to its *symbol*, the vector
//! of `n = d²` trace pairings `f_A⁽ⁱ⁾ = Tr(A U⁽ⁱ⁾)` against a family of
//! Hermitian *dequantizers* `U⁽ⁱ⁾`, and recovered from the symbol through the
//! dual family of *quantizers* `D⁽ⁱ⁾` as `A = Σᵢ f_A⁽ⁱ⁾ D⁽ⁱ⁾`. The crate
//! provides:
//!
//! - the explicit probability and mean-value representations of qubits and
//!   qutrits, in which the symbol of a density matrix consists of measurable
//!   spin-projection probabilities or mean values ([`qubit`], [`qutrit`]);
//! - a general-dimension framework that derives both representations for any
//!   `d ≥ 2` by solving the coefficient-matching linear systems of the trace
//!   pairing and the Gram system of the duality condition ([`qudit`]);
//! - star-product kernels `K_mn^k = Tr(D⁽ᵐ⁾D⁽ⁿ⁾U⁽ᵏ⁾)`, symbol
//!   multiplication, and the structure constants of the quantizer algebra
//!   with their consistency checks ([`star`]);
//! - the Malevich-square geometry of the qubit probability triple
//!   ([`qubit::QubitProbabilities::malevich_square_sum`]).
//!
//! All values are immutable after construction and every operation is a pure
//! function of its inputs, so everything is safe to share across threads.
//!
//! ```
//! use qudit_star::{qubit, StarKernel};
//!
//! let basis = qubit::probability_basis();
//! let p = qubit::QubitProbabilities::new(0.6, 0.4, 0.7).unwrap();
//! let symbol = basis.symbol_of(&p.density_matrix()).unwrap();
//! assert!((symbol.value(0).re - 0.6).abs() < 1e-14);
//!
//! let kernel = StarKernel::compute(&basis).unwrap();
//! let squared = kernel.star(&symbol, &symbol).unwrap();
//! let direct = basis
//!     .symbol_of(&(&p.density_matrix() * &p.density_matrix()))
//!     .unwrap();
//! assert!(squared.max_abs_diff(&direct) < 1e-12);
//! ```

pub mod basis;
pub mod error;
pub mod matrix;
pub mod qubit;
pub mod qudit;
pub mod qutrit;
pub mod star;

pub use basis::{DualityReport, OperatorBasis, Symbol};
pub use error::{Error, Result};
pub use matrix::{c64, ComplexMatrix};
pub use num_complex::Complex64;
pub use star::{StarKernel, StructureConstants, StructureReport, SymmetryReport};

/// Default tolerance for structural checks (Hermiticity, duality,
/// orthonormality). Overridable per call wherever a check takes `tol`.
pub const DEFAULT_TOL: f64 = 1e-10;

/// The probability-representation basis for dimension `dim`.
///
/// Dimensions 2 and 3 return the explicit reference tables; higher dimensions
/// are derived by the [`qudit`] solvers at [`DEFAULT_TOL`].
pub fn probability_basis(dim: usize) -> Result<OperatorBasis> {
    match dim {
        0 | 1 => Err(Error::DimensionTooSmall { dim }),
        2 => Ok(qubit::probability_basis()),
        3 => Ok(qutrit::probability_basis()),
        d => qudit::solved_probability_basis(d, DEFAULT_TOL),
    }
}

/// The self-dual mean-value basis for dimension `dim`.
///
/// Dimensions 2 and 3 return the explicit reference tables; higher dimensions
/// use the pair-operator/projector construction.
pub fn meanvalue_basis(dim: usize) -> Result<OperatorBasis> {
    qudit::meanvalue_basis(dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_covers_all_dimensions() {
        for dim in 2..=5 {
            let prob = probability_basis(dim).unwrap();
            assert_eq!(prob.n(), dim * dim);
            assert!(prob.duality_check(DEFAULT_TOL).unwrap().pass);
            let mean = meanvalue_basis(dim).unwrap();
            assert!(mean.is_self_dual());
        }
        assert!(probability_basis(1).is_err());
        assert!(meanvalue_basis(0).is_err());
    }

    #[test]
    fn hardcoded_dimensions_use_reference_tables() {
        let prob2 = probability_basis(2).unwrap();
        assert!(
            prob2.dequantizers()[0].max_abs_diff(&qubit::probability_basis().dequantizers()[0])
                == 0.0
        );
        let mean3 = meanvalue_basis(3).unwrap();
        assert!(
            mean3.dequantizers()[3].max_abs_diff(&qutrit::meanvalue_basis().dequantizers()[3])
                == 0.0
        );
    }
}
