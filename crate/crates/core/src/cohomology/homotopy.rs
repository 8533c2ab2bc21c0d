//! Contracting homotopies around a middle degree of a cochain complex.
//!
//! For `C^(d-1) --d0--> C^d --d1--> C^(d+1)` with vanishing cohomology at
//! `d`, a pair `h1: C^d → C^(d-1)`, `h2: C^(d+1) → C^d` with
//! `d0∘h1 + h2∘d1 = Id` is built from pivots: `im d0` is spanned by the
//! pivot columns of `d0`, a complement `K` by the standard vectors that
//! extend them, `h1` inverts `d0` on its pivot columns after projecting to
//! `im d0`, and `h2` inverts `d1` on `K`. The identity is verified with
//! exact matrix products before a pair is returned.

use std::fmt;

use crate::exactpoly::{Scalar, SuperPoly};
use crate::linalg::Matrix;

use super::{CochainComplex, LinearMapMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyPair {
    pub level: u32,
    pub degree: usize,
    pub h1: Matrix,
    pub h2: Matrix,
    /// `d0∘h1 + h2∘d1 = Id` was verified exactly.
    pub certified: bool,
}

impl HomotopyPair {
    /// `h1(v)`, a preimage of `v` under `d0` whenever `v` is a cocycle.
    pub fn primitive(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.h1.mul_vec(v)
    }
}

/// Nonzero cohomology in the middle degree, with cocycles representing a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub level: u32,
    pub degree: usize,
    pub dimension: usize,
    /// The specific closed, non-exact cochain that stopped a solve, if any.
    pub cocycle: Option<SuperPoly>,
    pub representatives: Vec<SuperPoly>,
}

impl ObstructionReport {
    /// Normal degree of the coefficients, `level + 1`.
    pub fn power(&self) -> u32 {
        self.level + 1
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{} has dimension {} at level {}", self.degree, self.dimension, self.level)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyOutcome {
    Pair(HomotopyPair),
    Obstructed(ObstructionReport),
}

/// Columns `cols` of the identity of size `n`.
fn unit_columns(n: usize, cols: &[usize]) -> Matrix {
    Matrix::identity(n).select_columns(cols)
}

/// Splits `n`-space as `span(a) ⊕ span(unit vectors)`, where `a` has
/// independent columns. Returns the chosen unit indices and the inverse of
/// `[a | E]`.
fn complement(a: &Matrix) -> (Vec<usize>, Matrix) {
    let n = a.rows();
    let r = a.cols();
    let pivots = a.hcat(&Matrix::identity(n)).pivot_columns();
    debug_assert_eq!(&pivots[..r], &(0..r).collect::<Vec<_>>()[..]);
    let units: Vec<usize> = pivots[r..].iter().map(|&j| j - r).collect();
    let basis = a.hcat(&unit_columns(n, &units));
    let inv = basis.inverse().expect("complement basis is invertible");
    (units, inv)
}

/// Rows `from..to` of `m`.
fn row_block(m: &Matrix, from: usize, to: usize) -> Matrix {
    let rows: Vec<Vec<Scalar>> = (from..to).map(|i| m.row(i).to_vec()).collect();
    if rows.is_empty() {
        return Matrix::zeros(0, m.cols());
    }
    Matrix::from_rows(&rows)
}

/// Builds the homotopy pair around `degree`, or reports the cohomology there.
///
/// `degree` must satisfy `1 <= degree <= top`; beyond the top degree `d1` is
/// the zero map to the zero space.
pub fn homotopy_pair(complex: &CochainComplex, degree: usize) -> HomotopyOutcome {
    assert!(degree >= 1 && degree <= complex.top_degree(), "middle degree out of range");
    let d0: &LinearMapMatrix = complex.differential(degree - 1);
    let n = d0.matrix.rows();
    let d1 = if degree < complex.top_degree() {
        complex.differential(degree).matrix.clone()
    } else {
        Matrix::zeros(0, n)
    };

    let image_cols = d0.matrix.pivot_columns();
    let r = image_cols.len();
    let image = d0.matrix.select_columns(&image_cols);
    let (k_units, split) = complement(&image);
    let k = unit_columns(n, &k_units);

    let restricted = d1.mul(&k);
    let kernel = restricted.kernel_basis();
    if !kernel.is_empty() {
        let basis = &complex.bases()[degree];
        let representatives = kernel.iter().map(|v| basis.poly_from_coordinates(&k.mul_vec(v))).collect();
        return HomotopyOutcome::Obstructed(ObstructionReport {
            level: complex.power() - 1,
            degree,
            dimension: kernel.len(),
            cocycle: None,
            representatives,
        });
    }

    // h1 = section ∘ projection onto im d0
    let mut section = Matrix::zeros(d0.matrix.cols(), r);
    for (t, &c) in image_cols.iter().enumerate() {
        section.set(c, t, Scalar::from_integer(1.into()));
    }
    let h1 = section.mul(&row_block(&split, 0, r));

    // h2 inverts d1 on K and vanishes on a complement of d1(K)
    let (_, split1) = complement(&restricted);
    let h2 = k.mul(&row_block(&split1, 0, k_units.len()));

    let identity = d0.matrix.mul(&h1).add(&h2.mul(&d1));
    let certified = identity == Matrix::identity(n);
    assert!(certified, "homotopy identity must hold exactly");
    HomotopyOutcome::Pair(HomotopyPair { level: complex.power() - 1, degree, h1, h2, certified })
}
