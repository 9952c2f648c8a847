//! JSON documents and the deterministic writer.
//!
//! Every float is written with 17 significant digits (`{:.16e}`), which
//! round-trips `f64` losslessly, and keys follow struct declaration order,
//! so identical inputs produce byte-identical payloads. Complex values are
//! `[re, im]` pairs.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use qudit_star::{c64, ComplexMatrix, OperatorBasis, StarKernel, Symbol};

use crate::CliError;

/// Serializes a document with deterministic float formatting.
pub fn to_json(value: &impl Serialize) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    String::from_utf8(out).expect("serializer emits UTF-8")
}

#[derive(Clone, Copy)]
struct SignificantDigits;

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

/// On-disk operator matrix: row-major `[re, im]` entries.
#[derive(Serialize, Deserialize)]
pub struct MatrixDoc {
    pub dim: usize,
    pub label: String,
    pub data: Vec<Vec<[f64; 2]>>,
}

/// On-disk symbol: slot labels plus `[re, im]` values.
#[derive(Serialize, Deserialize)]
pub struct SymbolDoc {
    pub dim: usize,
    pub labels: Vec<String>,
    pub values: Vec<[f64; 2]>,
}

/// Payload of `dequantizers` / `quantizers`.
#[derive(Serialize)]
pub struct BasisDoc {
    pub representation: String,
    pub dim: usize,
    pub n: usize,
    pub kind: String,
    pub self_dual: bool,
    pub labels: Vec<String>,
    pub matrices: Vec<MatrixDoc>,
}

/// Payload of `kernels`: the `n` kernel matrices `K^k` over `(m, n)`.
#[derive(Serialize, Deserialize)]
pub struct KernelDoc {
    pub representation: String,
    pub dim: usize,
    pub n: usize,
    pub basis: String,
    pub labels: Vec<String>,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

#[derive(Serialize)]
pub struct VerificationDoc {
    pub commutator_max_deviation: f64,
    pub jacobi_max_deviation: f64,
    pub cyclic_max_deviation: Option<f64>,
    pub pass: bool,
}

/// Payload of `structure-constants`.
#[derive(Serialize)]
pub struct StructureConstantsDoc {
    pub representation: String,
    pub dim: usize,
    pub n: usize,
    pub basis: String,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
    pub verification: VerificationDoc,
}

/// Payload of `malevich`.
#[derive(Serialize)]
pub struct MalevichDoc {
    pub p: [f64; 3],
    #[serde(rename = "S")]
    pub square_sum: f64,
    pub side_lengths: [f64; 3],
    pub constraint_satisfied: bool,
}

#[derive(Serialize)]
pub struct CheckItemDoc {
    pub name: String,
    pub status: String,
    pub max_deviation: Option<f64>,
}

/// Payload of `check`.
#[derive(Serialize)]
pub struct CheckDoc {
    pub representation: String,
    pub dim: usize,
    pub seed: u64,
    pub checks: Vec<CheckItemDoc>,
    pub pass: bool,
}

fn complex_rows(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.dim())
        .map(|r| {
            (0..m.dim())
                .map(|c| {
                    let z = m.get(r, c);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect()
}

pub fn matrix_doc(label: &str, m: &ComplexMatrix) -> MatrixDoc {
    MatrixDoc {
        dim: m.dim(),
        label: label.to_string(),
        data: complex_rows(m),
    }
}

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<ComplexMatrix, CliError> {
    if doc.dim == 0 || doc.data.len() != doc.dim || doc.data.iter().any(|r| r.len() != doc.dim) {
        return Err(CliError::validation(format!(
            "matrix '{}' data does not form a {}x{} array",
            doc.label, doc.dim, doc.dim
        )));
    }
    for row in &doc.data {
        for [re, im] in row {
            if !re.is_finite() || !im.is_finite() {
                return Err(CliError::validation(format!(
                    "matrix '{}' contains a non-finite entry",
                    doc.label
                )));
            }
        }
    }
    Ok(ComplexMatrix::from_fn(doc.dim, |r, c| {
        c64(doc.data[r][c][0], doc.data[r][c][1])
    }))
}

pub fn symbol_doc(dim: usize, symbol: &Symbol) -> SymbolDoc {
    SymbolDoc {
        dim,
        labels: symbol.labels().to_vec(),
        values: symbol.values().iter().map(|z| [z.re, z.im]).collect(),
    }
}

pub fn symbol_from_doc(doc: &SymbolDoc) -> Result<Symbol, CliError> {
    if doc.values.len() != doc.labels.len() {
        return Err(CliError::validation(format!(
            "symbol has {} values but {} labels",
            doc.values.len(),
            doc.labels.len()
        )));
    }
    for [re, im] in &doc.values {
        if !re.is_finite() || !im.is_finite() {
            return Err(CliError::validation(
                "symbol contains a non-finite entry".to_string(),
            ));
        }
    }
    Ok(Symbol::new(
        doc.values.iter().map(|[re, im]| c64(*re, *im)).collect(),
        doc.labels.clone(),
    )?)
}

pub fn basis_doc(rep: &str, kind: &str, basis: &OperatorBasis) -> Result<BasisDoc, CliError> {
    let matrices = match kind {
        "dequantizers" => basis.dequantizers(),
        "quantizers" => basis
            .quantizers()
            .ok_or_else(|| CliError::validation("basis has no quantizers".to_string()))?,
        other => panic!("unknown basis kind {other}"),
    };
    Ok(BasisDoc {
        representation: rep.to_string(),
        dim: basis.dim(),
        n: basis.n(),
        kind: kind.to_string(),
        self_dual: basis.is_self_dual(),
        labels: basis.labels().to_vec(),
        matrices: matrices
            .iter()
            .zip(basis.labels())
            .map(|(m, label)| matrix_doc(label, m))
            .collect(),
    })
}

pub fn kernel_doc(rep: &str, kernel: &StarKernel) -> KernelDoc {
    KernelDoc {
        representation: rep.to_string(),
        dim: kernel.dim(),
        n: kernel.n(),
        basis: kernel.basis_label().to_string(),
        labels: kernel.slot_labels().to_vec(),
        matrices: (0..kernel.n())
            .map(|k| complex_rows(&kernel.output_matrix(k)))
            .collect(),
    }
}

pub fn load_matrix(path: &std::path::Path) -> Result<ComplexMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
    let doc: MatrixDoc = serde_json::from_str(&text).map_err(|e| {
        CliError::validation(format!("malformed matrix file {}: {e}", path.display()))
    })?;
    matrix_from_doc(&doc)
}

pub fn load_symbol(path: &std::path::Path) -> Result<Symbol, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
    let doc: SymbolDoc = serde_json::from_str(&text).map_err(|e| {
        CliError::validation(format!("malformed symbol file {}: {e}", path.display()))
    })?;
    symbol_from_doc(&doc)
}
