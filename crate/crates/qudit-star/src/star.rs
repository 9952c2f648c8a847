//! Star-product kernels, symbol multiplication, and the Lie-algebra
//! structure constants of the quantizer family.
//!
//! The kernel of a dual pair is `K_mn^k = Tr(D⁽ᵐ⁾ D⁽ⁿ⁾ U⁽ᵏ⁾)`; it turns
//! operator multiplication into the associative star product
//! `(f_A ⋆ f_B)⁽ᵏ⁾ = Σ_mn f_A⁽ᵐ⁾ f_B⁽ⁿ⁾ K_mn^k` of symbols. Antisymmetrizing
//! the kernel in its lower indices yields the structure constants
//! `C_mn^k = K_mn^k − K_nm^k` of the algebra generated by the quantizers.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::basis::{OperatorBasis, Symbol};
use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};

/// The rank-3 star-product kernel tensor of an operator basis, indexed
/// `(output k, left m, right n)`.
#[derive(Clone, Debug)]
pub struct StarKernel {
    dim: usize,
    n: usize,
    basis_label: String,
    slot_labels: Vec<String>,
    entries: Vec<Complex64>,
}

impl StarKernel {
    /// Computes `K_mn^k = Tr(D⁽ᵐ⁾ D⁽ⁿ⁾ U⁽ᵏ⁾)` for all index triples.
    ///
    /// All pairwise quantizer products are formed once and traced against
    /// each dequantizer, which keeps the flop count at `n²` products plus
    /// `n³` short traces.
    pub fn compute(basis: &OperatorBasis) -> Result<Self> {
        let quantizers = basis.quantizers().ok_or(Error::MissingQuantizers)?;
        let dequantizers = basis.dequantizers();
        let n = basis.n();

        let mut products = Vec::with_capacity(n * n);
        for dm in quantizers {
            for dn in quantizers {
                products.push(dm * dn);
            }
        }

        let mut entries = vec![c64(0.0, 0.0); n * n * n];
        for (k, u) in dequantizers.iter().enumerate() {
            for m in 0..n {
                for nn in 0..n {
                    entries[(k * n + m) * n + nn] = products[m * n + nn].trace_product(u);
                }
            }
        }
        Ok(Self {
            dim: basis.dim(),
            n,
            basis_label: basis.name().to_string(),
            slot_labels: basis.labels().to_vec(),
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of symbol slots, `d²`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis_label(&self) -> &str {
        &self.basis_label
    }

    pub fn slot_labels(&self) -> &[String] {
        &self.slot_labels
    }

    #[inline]
    pub fn get(&self, k: usize, m: usize, n: usize) -> Complex64 {
        self.entries[(k * self.n + m) * self.n + n]
    }

    /// The kernel slice `K^k` as an `n × n` matrix over `(m, n)`.
    pub fn output_matrix(&self, k: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |m, n| self.get(k, m, n))
    }

    /// Star product of two symbols:
    /// `result⁽ᵏ⁾ = Σ_mn f_A⁽ᵐ⁾ f_B⁽ⁿ⁾ K_mn^k`.
    pub fn star(&self, fa: &Symbol, fb: &Symbol) -> Result<Symbol> {
        if fa.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: fa.len(),
            });
        }
        if fb.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: fb.len(),
            });
        }
        let mut values = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let mut acc = c64(0.0, 0.0);
            for m in 0..self.n {
                let left = fa.value(m);
                if left == c64(0.0, 0.0) {
                    continue;
                }
                let mut inner = c64(0.0, 0.0);
                for n in 0..self.n {
                    inner += fb.value(n) * self.get(k, m, n);
                }
                acc += left * inner;
            }
            values.push(acc);
        }
        Symbol::new(values, self.slot_labels.clone())
    }

    /// Checks the trace-cyclicity relations that hold for self-dual bases:
    /// `K_mn^k = K_nk^m = K_km^n` together with the mirrored chain
    /// `K_nm^k = K_kn^m = K_mk^n`.
    pub fn cyclic_symmetry(&self, tol: f64) -> SymmetryReport {
        let mut max_deviation = 0.0f64;
        for k in 0..self.n {
            for m in 0..self.n {
                for n in 0..self.n {
                    let forward = self.get(k, m, n);
                    max_deviation = max_deviation
                        .max((forward - self.get(m, n, k)).norm())
                        .max((forward - self.get(n, k, m)).norm());
                    let mirrored = self.get(k, n, m);
                    max_deviation = max_deviation
                        .max((mirrored - self.get(m, k, n)).norm())
                        .max((mirrored - self.get(n, m, k)).norm());
                }
            }
        }
        SymmetryReport {
            pass: max_deviation <= tol,
            max_deviation,
        }
    }
}

/// Outcome of a kernel symmetry check.
#[derive(Clone, Copy, Debug)]
pub struct SymmetryReport {
    pub pass: bool,
    pub max_deviation: f64,
}

/// Structure constants `C_mn^k = K_mn^k − K_nm^k` of the quantizer algebra,
/// antisymmetric in `(m, n)` by construction.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    dim: usize,
    n: usize,
    entries: Vec<Complex64>,
}

impl StructureConstants {
    pub fn from_kernel(kernel: &StarKernel) -> Self {
        let n = kernel.n();
        let mut entries = vec![c64(0.0, 0.0); n * n * n];
        for k in 0..n {
            for m in 0..n {
                for nn in 0..n {
                    entries[(k * n + m) * n + nn] = kernel.get(k, m, nn) - kernel.get(k, nn, m);
                }
            }
        }
        Self {
            dim: kernel.dim(),
            n,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, `d²`.
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, k: usize, m: usize, n: usize) -> Complex64 {
        self.entries[(k * self.n + m) * self.n + n]
    }

    /// The slice `C^k` as an `n × n` matrix over `(m, n)`.
    pub fn output_matrix(&self, k: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |m, n| self.get(k, m, n))
    }

    /// Largest deviation from antisymmetry; zero by construction.
    pub fn antisymmetry_deviation(&self) -> f64 {
        let mut max = 0.0f64;
        for k in 0..self.n {
            for m in 0..self.n {
                for n in 0..self.n {
                    max = max.max((self.get(k, m, n) + self.get(k, n, m)).norm());
                }
            }
        }
        max
    }

    /// Verifies the Lie-algebra relations against the originating basis:
    ///
    /// 1. commutator reconstruction `Σ_k C_mn^k D⁽ᵏ⁾ = [D⁽ᵐ⁾, D⁽ⁿ⁾]`,
    /// 2. the Jacobi identity of the constants,
    /// 3. for self-dual bases, cyclicity `C_mn^k = C_nk^m = C_km^n`.
    pub fn verify(&self, basis: &OperatorBasis, tol: f64) -> Result<StructureReport> {
        let quantizers = basis.quantizers().ok_or(Error::MissingQuantizers)?;
        if quantizers.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: quantizers.len(),
            });
        }

        let mut commutator_deviation = 0.0f64;
        for m in 0..self.n {
            for nn in 0..self.n {
                let direct = quantizers[m].commutator(&quantizers[nn]);
                let mut expanded = ComplexMatrix::zeros(basis.dim());
                for (k, d) in quantizers.iter().enumerate() {
                    let coeff = self.get(k, m, nn);
                    if coeff != c64(0.0, 0.0) {
                        expanded = &expanded + &d.scale(coeff);
                    }
                }
                commutator_deviation = commutator_deviation.max(expanded.max_abs_diff(&direct));
            }
        }

        let jacobi_deviation = self.jacobi_deviation();

        let cyclic_deviation = if basis.is_self_dual() {
            let mut max = 0.0f64;
            for k in 0..self.n {
                for m in 0..self.n {
                    for nn in 0..self.n {
                        let forward = self.get(k, m, nn);
                        max = max
                            .max((forward - self.get(m, nn, k)).norm())
                            .max((forward - self.get(nn, k, m)).norm());
                    }
                }
            }
            Some(max)
        } else {
            None
        };

        let pass = commutator_deviation <= tol
            && jacobi_deviation <= tol
            && cyclic_deviation.is_none_or(|d| d <= tol);
        Ok(StructureReport {
            commutator_deviation,
            jacobi_deviation,
            cyclic_deviation,
            pass,
        })
    }

    /// Largest residual of the Jacobi identity
    /// `Σ_l (C_mn^l C_lk^r + C_nk^l C_lm^r + C_km^l C_ln^r) = 0`.
    ///
    /// Evaluated as one `n² × n` by `n × n` matrix product per output index
    /// `r`; the three cyclic terms are gathers from the same product.
    pub fn jacobi_deviation(&self) -> f64 {
        let n = self.n;
        let cmat = DMatrix::from_fn(n * n, n, |row, l| self.get(l, row / n, row % n));
        let mut max = 0.0f64;
        for r in 0..n {
            let q = DMatrix::from_fn(n, n, |l, k| self.get(r, l, k));
            let p = &cmat * &q;
            for m in 0..n {
                for nn in 0..n {
                    for k in 0..n {
                        let residual = p[(m * n + nn, k)] + p[(nn * n + k, m)] + p[(k * n + m, nn)];
                        max = max.max(residual.norm());
                    }
                }
            }
        }
        max
    }
}

/// Outcome of [`StructureConstants::verify`]. `cyclic_deviation` is reported
/// only for self-dual bases.
#[derive(Clone, Copy, Debug)]
pub struct StructureReport {
    pub commutator_deviation: f64,
    pub jacobi_deviation: f64,
    pub cyclic_deviation: Option<f64>,
    pub pass: bool,
}
