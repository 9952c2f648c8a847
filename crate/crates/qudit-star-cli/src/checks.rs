//! The `check` subcommand: structural and algebraic consistency suites for a
//! representation, with a fixed seed for the sampled homomorphism test so
//! output is reproducible run to run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qudit_star::{c64, ComplexMatrix, OperatorBasis, StarKernel, StructureConstants};

use crate::json::{CheckDoc, CheckItemDoc};
use crate::CliError;

/// Seed of the sampled homomorphism check.
pub const CHECK_SEED: u64 = 42;

/// Number of random operator pairs in the sampled homomorphism check.
pub const HOMOMORPHISM_SAMPLES: usize = 32;

const STRUCTURAL_TOL: f64 = 1e-10;
const HOMOMORPHISM_TOL: f64 = 1e-9;

fn item(name: &str, pass: bool, deviation: f64) -> CheckItemDoc {
    CheckItemDoc {
        name: name.to_string(),
        status: if pass { "pass" } else { "fail" }.to_string(),
        max_deviation: Some(deviation),
    }
}

fn skipped(name: &str) -> CheckItemDoc {
    CheckItemDoc {
        name: name.to_string(),
        status: "skipped".to_string(),
        max_deviation: None,
    }
}

fn random_complex(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| {
        c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// Runs the duality, self-duality, cyclic-symmetry, homomorphism and
/// structure-relation suites. Self-duality and cyclic symmetry only apply to
/// self-dual representations and are reported as skipped otherwise.
pub fn run_checks(rep: &str, basis: &OperatorBasis) -> Result<CheckDoc, CliError> {
    let mut checks = Vec::new();

    let duality = basis.duality_check(STRUCTURAL_TOL)?;
    checks.push(item("duality", duality.pass, duality.max_deviation));

    if basis.is_self_dual() {
        let deviation = basis.self_duality_deviation();
        checks.push(item("self_duality", deviation <= STRUCTURAL_TOL, deviation));
    } else {
        checks.push(skipped("self_duality"));
    }

    let kernel = StarKernel::compute(basis)?;
    if basis.is_self_dual() {
        let report = kernel.cyclic_symmetry(STRUCTURAL_TOL);
        checks.push(item("cyclic_symmetry", report.pass, report.max_deviation));
    } else {
        checks.push(skipped("cyclic_symmetry"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
    let mut homomorphism = 0.0f64;
    for _ in 0..HOMOMORPHISM_SAMPLES {
        let a = random_complex(basis.dim(), &mut rng);
        let b = random_complex(basis.dim(), &mut rng);
        let via_star = kernel.star(&basis.symbol_of(&a)?, &basis.symbol_of(&b)?)?;
        let direct = basis.symbol_of(&(&a * &b))?;
        homomorphism = homomorphism.max(via_star.max_abs_diff(&direct));
    }
    checks.push(item(
        "homomorphism",
        homomorphism <= HOMOMORPHISM_TOL,
        homomorphism,
    ));

    let constants = StructureConstants::from_kernel(&kernel);
    let report = constants.verify(basis, STRUCTURAL_TOL)?;
    checks.push(item(
        "commutator_reconstruction",
        report.commutator_deviation <= STRUCTURAL_TOL,
        report.commutator_deviation,
    ));
    checks.push(item(
        "jacobi_identity",
        report.jacobi_deviation <= STRUCTURAL_TOL,
        report.jacobi_deviation,
    ));
    match report.cyclic_deviation {
        Some(deviation) => checks.push(item(
            "structure_cyclicity",
            deviation <= STRUCTURAL_TOL,
            deviation,
        )),
        None => checks.push(skipped("structure_cyclicity")),
    }

    let pass = checks.iter().all(|c| c.status != "fail");
    Ok(CheckDoc {
        representation: rep.to_string(),
        dim: basis.dim(),
        seed: CHECK_SEED,
        checks,
        pass,
    })
}
