//! Qutrit (d = 3) probability and mean-value representations.
//!
//! The density matrix is parametrized by eight probabilities measured on the
//! three artificial qubits spanned by level pairs (2,1), (3,1) and (3,2):
//! `p1/p2` per pair (x and y projections) and `p3^{22}`, `p3^{33}` for the
//! diagonal:
//!
//! ```text
//! ρ = [ p3³³+p3²²-1         (p1²¹-1/2)-i(p2²¹-1/2)   (p1³¹-1/2)-i(p2³¹-1/2) ]
//!     [ conj                1-p3²²                   (p1³²-1/2)-i(p2³²-1/2) ]
//!     [ conj                conj                     1-p3³³                 ]
//! ```
//!
//! The explicit nine-element bases returned here reproduce the reference
//! operator tables for this representation verbatim. Note a convention quirk
//! of those tables: the imaginary-part (y) operators for level pairs (3,1)
//! and (3,2) carry the opposite sign from the (2,1) pair, so the
//! corresponding probability symbol slots read `1 - p2` rather than `p2`,
//! and the mean-value slots read `-s2` rather than `s2`. The slot labels
//! record exactly which slots are affected.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;

use crate::basis::{OperatorBasis, Symbol};
use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};
use crate::qudit::QuditProbabilityTable;

fn check_unit_interval(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name: name.to_string(),
            value,
        });
    }
    Ok(())
}

/// The eight artificial-qubit probabilities of a qutrit state, each in [0, 1].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QutritProbabilities {
    p1_21: f64,
    p2_21: f64,
    p1_31: f64,
    p2_31: f64,
    p1_32: f64,
    p2_32: f64,
    p3_22: f64,
    p3_33: f64,
}

impl QutritProbabilities {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        p1_21: f64,
        p2_21: f64,
        p1_31: f64,
        p2_31: f64,
        p1_32: f64,
        p2_32: f64,
        p3_22: f64,
        p3_33: f64,
    ) -> Result<Self> {
        for (name, value) in [
            ("p1^{21}", p1_21),
            ("p2^{21}", p2_21),
            ("p1^{31}", p1_31),
            ("p2^{31}", p2_31),
            ("p1^{32}", p1_32),
            ("p2^{32}", p2_32),
            ("p3^{22}", p3_22),
            ("p3^{33}", p3_33),
        ] {
            check_unit_interval(name, value)?;
        }
        Ok(Self {
            p1_21,
            p2_21,
            p1_31,
            p2_31,
            p1_32,
            p2_32,
            p3_22,
            p3_33,
        })
    }

    pub fn p1_21(&self) -> f64 {
        self.p1_21
    }

    pub fn p2_21(&self) -> f64 {
        self.p2_21
    }

    pub fn p1_31(&self) -> f64 {
        self.p1_31
    }

    pub fn p2_31(&self) -> f64 {
        self.p2_31
    }

    pub fn p1_32(&self) -> f64 {
        self.p1_32
    }

    pub fn p2_32(&self) -> f64 {
        self.p2_32
    }

    pub fn p3_22(&self) -> f64 {
        self.p3_22
    }

    pub fn p3_33(&self) -> f64 {
        self.p3_33
    }

    /// The same probabilities as a general qudit table (d = 3).
    pub fn to_table(&self) -> QuditProbabilityTable {
        QuditProbabilityTable::from_parts(
            3,
            vec![self.p1_21, self.p1_31, self.p1_32],
            vec![self.p2_21, self.p2_31, self.p2_32],
            vec![self.p3_22, self.p3_33],
        )
        .expect("validated probabilities form a valid table")
    }

    /// The 3×3 density matrix; Hermitian with unit trace by construction.
    pub fn density_matrix(&self) -> ComplexMatrix {
        let off = |p1: f64, p2: f64| c64(p1 - 0.5, -(p2 - 0.5));
        let r12 = off(self.p1_21, self.p2_21);
        let r13 = off(self.p1_31, self.p2_31);
        let r23 = off(self.p1_32, self.p2_32);
        ComplexMatrix::from_rows(&[
            vec![c64(self.p3_33 + self.p3_22 - 1.0, 0.0), r12, r13],
            vec![r12.conj(), c64(1.0 - self.p3_22, 0.0), r23],
            vec![r13.conj(), r23.conj(), c64(1.0 - self.p3_33, 0.0)],
        ])
        .expect("3x3 rows are square")
    }

    /// Probability symbol of the state: equals `symbol_of(density_matrix())`
    /// against [`probability_basis`]. Slots 2 and 8 are the complements
    /// `1 - p2^{31}` and `1 - p2^{32}` (see the module notes).
    pub fn probability_symbol(&self) -> Symbol {
        let values = vec![
            c64(self.p1_31, 0.0),
            c64(1.0 - self.p2_31, 0.0),
            c64(self.p3_33, 0.0),
            c64(self.p1_21, 0.0),
            c64(self.p2_21, 0.0),
            c64(self.p3_22, 0.0),
            c64(self.p1_32, 0.0),
            c64(1.0 - self.p2_32, 0.0),
            c64(1.0, 0.0),
        ];
        Symbol::new(values, probability_labels()).expect("label count matches")
    }

    /// Mean-value symbol: equals `symbol_of(density_matrix())` against
    /// [`meanvalue_basis`]. Pair slots are `±√2(p - 1/2)`, diagonal slots are
    /// the level populations.
    pub fn meanvalue_symbol(&self) -> Symbol {
        let values = vec![
            c64(SQRT_2 * (self.p1_21 - 0.5), 0.0),
            c64(SQRT_2 * (self.p2_21 - 0.5), 0.0),
            c64(SQRT_2 * (self.p1_31 - 0.5), 0.0),
            c64(SQRT_2 * (0.5 - self.p2_31), 0.0),
            c64(SQRT_2 * (self.p1_32 - 0.5), 0.0),
            c64(SQRT_2 * (0.5 - self.p2_32), 0.0),
            c64(self.p3_22 + self.p3_33 - 1.0, 0.0),
            c64(1.0 - self.p3_22, 0.0),
            c64(1.0 - self.p3_33, 0.0),
        ];
        Symbol::new(values, meanvalue_labels()).expect("label count matches")
    }
}

fn m3(rows: [[Complex64; 3]; 3]) -> ComplexMatrix {
    ComplexMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec(), rows[2].to_vec()])
        .expect("3x3 rows are square")
}

fn probability_labels() -> Vec<String> {
    [
        "p1^{31}",
        "1-p2^{31}",
        "p3^{33}",
        "p1^{21}",
        "p2^{21}",
        "p3^{22}",
        "p1^{32}",
        "1-p2^{32}",
        "const",
    ]
    .map(String::from)
    .to_vec()
}

fn meanvalue_labels() -> Vec<String> {
    [
        "s1^{21}", "s2^{21}", "s1^{31}", "-s2^{31}", "s1^{32}", "-s2^{32}", "e11", "e22", "e33",
    ]
    .map(String::from)
    .to_vec()
}

/// The nine-element probability basis: dequantizers and quantizers whose
/// symbol slots are, in order, `(p1³¹, 1-p2³¹, p3³³, p1²¹, p2²¹, p3²², p1³²,
/// 1-p2³², 1)`.
pub fn probability_basis() -> OperatorBasis {
    let o = c64(0.0, 0.0);
    let l = c64(1.0, 0.0);
    let h = c64(0.5, 0.0);
    let ih = c64(0.0, 0.5);
    let i = c64(0.0, 1.0);

    let dequantizers = vec![
        m3([[h, o, h], [o, h, o], [h, o, h]]),
        m3([[h, o, ih], [o, h, o], [-ih, o, h]]),
        m3([[l, o, o], [o, l, o], [o, o, o]]),
        m3([[h, h, o], [h, h, o], [o, o, h]]),
        m3([[h, -ih, o], [ih, h, o], [o, o, h]]),
        m3([[l, o, o], [o, o, o], [o, o, l]]),
        m3([[h, o, o], [o, h, h], [o, h, h]]),
        m3([[h, o, o], [o, h, ih], [o, -ih, h]]),
        ComplexMatrix::identity(3),
    ];
    let quantizers = vec![
        m3([[o, o, l], [o, o, o], [l, o, o]]),
        m3([[o, o, i], [o, o, o], [-i, o, o]]),
        m3([[l, o, o], [o, o, o], [o, o, -l]]),
        m3([[o, l, o], [l, o, o], [o, o, o]]),
        m3([[o, -i, o], [i, o, o], [o, o, o]]),
        m3([[l, o, o], [o, -l, o], [o, o, o]]),
        m3([[o, o, o], [o, o, l], [o, l, o]]),
        m3([[o, o, o], [o, o, i], [o, -i, o]]),
        m3([
            [-l, c64(-0.5, 0.5), c64(-0.5, -0.5)],
            [c64(-0.5, -0.5), l, c64(-0.5, -0.5)],
            [c64(-0.5, 0.5), c64(-0.5, 0.5), l],
        ]),
    ];
    OperatorBasis::with_quantizers(
        "probability",
        dequantizers,
        quantizers,
        probability_labels(),
    )
    .expect("hard-coded qutrit probability basis is valid")
}

/// The self-dual mean-value basis: pair operators scaled by 1/√2 for level
/// pairs (2,1), (3,1), (3,2), followed by the three diagonal projectors.
pub fn meanvalue_basis() -> OperatorBasis {
    let o = c64(0.0, 0.0);
    let l = c64(1.0, 0.0);
    let s = c64(FRAC_1_SQRT_2, 0.0);
    let is = c64(0.0, FRAC_1_SQRT_2);

    let dequantizers = vec![
        m3([[o, s, o], [s, o, o], [o, o, o]]),
        m3([[o, -is, o], [is, o, o], [o, o, o]]),
        m3([[o, o, s], [o, o, o], [s, o, o]]),
        m3([[o, o, is], [o, o, o], [-is, o, o]]),
        m3([[o, o, o], [o, o, s], [o, s, o]]),
        m3([[o, o, o], [o, o, is], [o, -is, o]]),
        m3([[l, o, o], [o, o, o], [o, o, o]]),
        m3([[o, o, o], [o, l, o], [o, o, o]]),
        m3([[o, o, o], [o, o, o], [o, o, l]]),
    ];
    OperatorBasis::new_self_dual("meanvalue", dequantizers, meanvalue_labels())
        .expect("hard-coded qutrit mean-value basis is valid")
}
