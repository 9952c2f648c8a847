//! `qudit-star` — deterministic JSON front end for the quantizer–dequantizer
//! machinery: emit bases, symbols, kernels and structure constants, apply the
//! star product, and run the consistency check suites.
//!
//! Exit codes: 0 on success, 1 for validation errors (bad flags, malformed
//! files, dimension mismatches), 2 for numerical failures (rank-deficient
//! systems, singular Gram matrices, residual breaches, failed checks).

mod checks;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use qudit_star::qubit::QubitProbabilities;
use qudit_star::{
    meanvalue_basis, probability_basis, OperatorBasis, StarKernel, StructureConstants,
};

use json::{
    basis_doc, kernel_doc, load_matrix, load_symbol, matrix_doc, symbol_doc, to_json, MalevichDoc,
    StructureConstantsDoc, VerificationDoc,
};

/// A command failure with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    message: String,
    exit_code: u8,
}

impl CliError {
    fn validation(message: String) -> Self {
        Self {
            message,
            exit_code: 1,
        }
    }

    fn numerical(message: String) -> Self {
        Self {
            message,
            exit_code: 2,
        }
    }
}

impl From<qudit_star::Error> for CliError {
    fn from(err: qudit_star::Error) -> Self {
        if err.is_numerical() {
            Self::numerical(err.to_string())
        } else {
            Self::validation(err.to_string())
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qudit-star",
    version,
    about = "Quantizer-dequantizer representations, star-product kernels and consistency checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rep {
    /// Symbols are spin-projection probabilities.
    Probability,
    /// Symbols are spin-projection mean values (self-dual basis).
    Meanvalue,
}

impl Rep {
    fn name(self) -> &'static str {
        match self {
            Rep::Probability => "probability",
            Rep::Meanvalue => "meanvalue",
        }
    }

    fn basis(self, dim: usize) -> Result<OperatorBasis, CliError> {
        let basis = match self {
            Rep::Probability => probability_basis(dim)?,
            Rep::Meanvalue => meanvalue_basis(dim)?,
        };
        Ok(basis)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the dequantizer matrices of a representation.
    Dequantizers {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        dim: usize,
    },
    /// Emit the quantizer matrices of a representation (solving if needed).
    Quantizers {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        dim: usize,
    },
    /// Emit the symbol of an operator loaded from a matrix file.
    Symbol {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        operator: PathBuf,
    },
    /// Reconstruct the operator of a symbol loaded from a symbol file.
    Reconstruct {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        symbol: PathBuf,
    },
    /// Emit the n star-product kernel matrices K^k.
    Kernels {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        dim: usize,
    },
    /// Star product of two symbols loaded from symbol files.
    Star {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Emit the structure-constant matrices C^k plus a verification report.
    StructureConstants {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        dim: usize,
    },
    /// Malevich square data of a qubit probability triple.
    Malevich {
        /// The three probabilities p1 p2 p3.
        #[arg(long = "p", num_args = 3, value_names = ["P1", "P2", "P3"])]
        p: Vec<f64>,
    },
    /// Run the duality, self-duality, cyclic-symmetry, homomorphism and
    /// structure-relation suites; nonzero exit on failure.
    Check {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not failures.
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(Output { payload, exit_code }) => {
            println!("{payload}");
            ExitCode::from(exit_code)
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.exit_code)
        }
    }
}

struct Output {
    payload: String,
    exit_code: u8,
}

impl Output {
    fn ok(payload: String) -> Self {
        Self {
            payload,
            exit_code: 0,
        }
    }
}

fn run(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Dequantizers { rep, dim } => {
            let basis = rep.basis(dim)?;
            Ok(Output::ok(to_json(&basis_doc(
                rep.name(),
                "dequantizers",
                &basis,
            )?)))
        }
        Command::Quantizers { rep, dim } => {
            let basis = rep.basis(dim)?;
            Ok(Output::ok(to_json(&basis_doc(
                rep.name(),
                "quantizers",
                &basis,
            )?)))
        }
        Command::Symbol { rep, dim, operator } => {
            let basis = rep.basis(dim)?;
            let a = load_matrix(&operator)?;
            let symbol = basis.symbol_of(&a)?;
            Ok(Output::ok(to_json(&symbol_doc(basis.dim(), &symbol))))
        }
        Command::Reconstruct { rep, dim, symbol } => {
            let basis = rep.basis(dim)?;
            let f = load_symbol(&symbol)?;
            let matrix = basis.reconstruct(&f)?;
            Ok(Output::ok(to_json(&matrix_doc("reconstructed", &matrix))))
        }
        Command::Kernels { rep, dim } => {
            let basis = rep.basis(dim)?;
            let kernel = StarKernel::compute(&basis)?;
            Ok(Output::ok(to_json(&kernel_doc(rep.name(), &kernel))))
        }
        Command::Star {
            rep,
            dim,
            left,
            right,
        } => {
            let basis = rep.basis(dim)?;
            let kernel = StarKernel::compute(&basis)?;
            let fa = load_symbol(&left)?;
            let fb = load_symbol(&right)?;
            let product = kernel.star(&fa, &fb)?;
            Ok(Output::ok(to_json(&symbol_doc(basis.dim(), &product))))
        }
        Command::StructureConstants { rep, dim } => {
            let basis = rep.basis(dim)?;
            let kernel = StarKernel::compute(&basis)?;
            let constants = StructureConstants::from_kernel(&kernel);
            let report = constants.verify(&basis, 1e-10)?;
            let doc = StructureConstantsDoc {
                representation: rep.name().to_string(),
                dim: basis.dim(),
                n: basis.n(),
                basis: kernel.basis_label().to_string(),
                matrices: (0..basis.n())
                    .map(|k| {
                        let m = constants.output_matrix(k);
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
                    })
                    .collect(),
                verification: VerificationDoc {
                    commutator_max_deviation: report.commutator_deviation,
                    jacobi_max_deviation: report.jacobi_deviation,
                    cyclic_max_deviation: report.cyclic_deviation,
                    pass: report.pass,
                },
            };
            Ok(Output::ok(to_json(&doc)))
        }
        Command::Malevich { p } => {
            if p.len() != 3 {
                return Err(CliError::validation(
                    "--p expects exactly three probabilities".to_string(),
                ));
            }
            let probs = QubitProbabilities::new(p[0], p[1], p[2])?;
            let doc = MalevichDoc {
                p: [p[0], p[1], p[2]],
                square_sum: probs.malevich_square_sum(),
                side_lengths: probs.malevich_side_lengths(),
                constraint_satisfied: probs.positivity_check(qudit_star::DEFAULT_TOL),
            };
            Ok(Output::ok(to_json(&doc)))
        }
        Command::Check { rep, dim } => {
            let basis = rep.basis(dim)?;
            let doc = checks::run_checks(rep.name(), &basis)?;
            let exit_code = if doc.pass { 0 } else { 2 };
            Ok(Output {
                payload: to_json(&doc),
                exit_code,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerical_errors_map_to_exit_code_two() {
        let err: CliError = qudit_star::Error::RankDeficient { rank: 3, size: 4 }.into();
        assert_eq!(err.exit_code, 2);
        let err: CliError = qudit_star::Error::SingularGram { condition: 1e18 }.into();
        assert_eq!(err.exit_code, 2);
        let err: CliError = qudit_star::Error::ResidualTooLarge {
            residual: 1e-3,
            tol: 1e-10,
        }
        .into();
        assert_eq!(err.exit_code, 2);
    }

    #[test]
    fn validation_errors_map_to_exit_code_one() {
        let err: CliError = qudit_star::Error::DimensionMismatch {
            expected: 2,
            found: 3,
        }
        .into();
        assert_eq!(err.exit_code, 1);
        let err: CliError = qudit_star::Error::MissingQuantizers.into();
        assert_eq!(err.exit_code, 1);
        let err: CliError = qudit_star::Error::OutOfRange {
            name: "p1".into(),
            value: 1.5,
        }
        .into();
        assert_eq!(err.exit_code, 1);
    }
}
