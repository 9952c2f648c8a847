//! Operator bases and symbols: the trace-pairing map `A ↦ f_A` with
//! `f_A⁽ⁱ⁾ = Tr(A U⁽ⁱ⁾)` and its inverse `A = Σᵢ f_A⁽ⁱ⁾ D⁽ⁱ⁾`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::DEFAULT_TOL;

/// The c-number image of an operator: `n = d²` complex values, one per
/// dequantizer, with the slot labels of the originating basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbol {
    values: Vec<Complex64>,
    labels: Vec<String>,
}

impl Symbol {
    pub fn new(values: Vec<Complex64>, labels: Vec<String>) -> Result<Self> {
        if values.len() != labels.len() {
            return Err(Error::BadShape {
                what: format!(
                    "symbol has {} values but {} labels",
                    values.len(),
                    labels.len()
                ),
            });
        }
        Ok(Self { values, labels })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn value(&self, i: usize) -> Complex64 {
        self.values[i]
    }

    /// Entrywise complex conjugate, labels preserved.
    pub fn conjugate(&self) -> Self {
        Self {
            values: self.values.iter().map(|z| z.conj()).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Largest entrywise distance to another symbol of the same length.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.len(), rhs.len(), "symbol length mismatch");
        self.values
            .iter()
            .zip(rhs.values.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest imaginary part in absolute value; zero for real symbols.
    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// Outcome of a duality check `Tr(D⁽ⁱ⁾U⁽ʲ⁾) = δᵢⱼ`.
#[derive(Clone, Copy, Debug)]
pub struct DualityReport {
    pub max_deviation: f64,
    pub pass: bool,
}

/// An ordered, labeled set of `n = d²` Hermitian dequantizers with, once
/// supplied or solved, the matching quantizers.
///
/// Dequantizers produce symbols through the trace pairing; quantizers
/// reconstruct operators from symbols. For a self-dual set the two families
/// coincide and are Frobenius-orthonormal.
#[derive(Clone, Debug)]
pub struct OperatorBasis {
    name: String,
    dim: usize,
    dequantizers: Vec<ComplexMatrix>,
    quantizers: Option<Vec<ComplexMatrix>>,
    labels: Vec<String>,
    self_dual: bool,
}

fn check_family(dim: usize, what: &str, mats: &[ComplexMatrix]) -> Result<()> {
    let n = dim * dim;
    if mats.len() != n {
        return Err(Error::BadShape {
            what: format!(
                "expected {} {}s for dimension {}, got {}",
                n,
                what,
                dim,
                mats.len()
            ),
        });
    }
    for (i, m) in mats.iter().enumerate() {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.dim(),
            });
        }
        let deviation = m.hermiticity_error();
        if deviation > DEFAULT_TOL {
            return Err(Error::NotHermitian {
                what: format!("{} {}", what, i + 1),
                deviation,
            });
        }
    }
    Ok(())
}

impl OperatorBasis {
    /// A basis with dequantizers only; quantizers must be attached before
    /// reconstruction or kernel computation.
    pub fn new(
        name: impl Into<String>,
        dequantizers: Vec<ComplexMatrix>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let dim = dequantizers.first().map(|m| m.dim()).unwrap_or(0);
        if dim < 2 {
            return Err(Error::DimensionTooSmall { dim });
        }
        check_family(dim, "dequantizer", &dequantizers)?;
        if labels.len() != dequantizers.len() {
            return Err(Error::BadShape {
                what: format!(
                    "expected {} labels, got {}",
                    dequantizers.len(),
                    labels.len()
                ),
            });
        }
        Ok(Self {
            name: name.into(),
            dim,
            dequantizers,
            quantizers: None,
            labels,
            self_dual: false,
        })
    }

    /// A dual pair of dequantizers and quantizers.
    pub fn with_quantizers(
        name: impl Into<String>,
        dequantizers: Vec<ComplexMatrix>,
        quantizers: Vec<ComplexMatrix>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let mut basis = Self::new(name, dequantizers, labels)?;
        check_family(basis.dim, "quantizer", &quantizers)?;
        basis.quantizers = Some(quantizers);
        Ok(basis)
    }

    /// A self-dual basis: quantizers equal dequantizers, which must be
    /// orthonormal under the trace pairing.
    pub fn new_self_dual(
        name: impl Into<String>,
        dequantizers: Vec<ComplexMatrix>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let mut basis = Self::new(name, dequantizers, labels)?;
        let deviation = basis.self_duality_deviation();
        if deviation > DEFAULT_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        basis.quantizers = Some(basis.dequantizers.clone());
        basis.self_dual = true;
        Ok(basis)
    }

    /// Attaches externally solved quantizers to a dequantizer-only basis.
    pub fn attach_quantizers(mut self, quantizers: Vec<ComplexMatrix>) -> Result<Self> {
        check_family(self.dim, "quantizer", &quantizers)?;
        self.quantizers = Some(quantizers);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of basis elements, `d²`.
    pub fn n(&self) -> usize {
        self.dequantizers.len()
    }

    pub fn dequantizers(&self) -> &[ComplexMatrix] {
        &self.dequantizers
    }

    pub fn quantizers(&self) -> Option<&[ComplexMatrix]> {
        self.quantizers.as_deref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_self_dual(&self) -> bool {
        self.self_dual
    }

    /// Symbol of an operator: `f_A⁽ⁱ⁾ = Tr(A U⁽ⁱ⁾)` in basis order.
    pub fn symbol_of(&self, a: &ComplexMatrix) -> Result<Symbol> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        let values = self
            .dequantizers
            .iter()
            .map(|u| a.trace_product(u))
            .collect();
        Symbol::new(values, self.labels.clone())
    }

    /// Reconstructs the operator `Σᵢ f⁽ⁱ⁾ D⁽ⁱ⁾` from a symbol.
    pub fn reconstruct(&self, f: &Symbol) -> Result<ComplexMatrix> {
        let quantizers = self.quantizers.as_ref().ok_or(Error::MissingQuantizers)?;
        if f.len() != quantizers.len() {
            return Err(Error::DimensionMismatch {
                expected: quantizers.len(),
                found: f.len(),
            });
        }
        let mut acc = ComplexMatrix::zeros(self.dim);
        for (value, d) in f.values().iter().zip(quantizers.iter()) {
            acc = &acc + &d.scale(*value);
        }
        Ok(acc)
    }

    /// Checks the duality condition `Tr(D⁽ⁱ⁾U⁽ʲ⁾) = δᵢⱼ` over all pairs.
    pub fn duality_check(&self, tol: f64) -> Result<DualityReport> {
        let quantizers = self.quantizers.as_ref().ok_or(Error::MissingQuantizers)?;
        let max_deviation = pairing_deviation(quantizers, &self.dequantizers);
        Ok(DualityReport {
            max_deviation,
            pass: max_deviation <= tol,
        })
    }

    /// True when `Tr(U⁽ⁱ⁾U⁽ʲ⁾) = δᵢⱼ` for all pairs within `tol`.
    pub fn self_duality_check(&self, tol: f64) -> bool {
        self.self_duality_deviation() <= tol
    }

    /// Largest deviation of `Tr(U⁽ⁱ⁾U⁽ʲ⁾)` from `δᵢⱼ`.
    pub fn self_duality_deviation(&self) -> f64 {
        pairing_deviation(&self.dequantizers, &self.dequantizers)
    }
}

fn pairing_deviation(left: &[ComplexMatrix], right: &[ComplexMatrix]) -> f64 {
    let mut max = 0.0f64;
    for (i, l) in left.iter().enumerate() {
        for (j, r) in right.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            let dev = (l.trace_product(r) - Complex64::new(target, 0.0)).norm();
            max = max.max(dev);
        }
    }
    max
}
