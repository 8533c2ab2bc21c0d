//! Graded-quotient complexes and their exact linear algebra.
//!
//! For an MC element `γ` the differential `d_γ = [γ, ·]` preserves every
//! filtration step, so each quotient `F_q / F_(q+1)` is a complex of
//! multivectors whose coefficients are homogeneous of normal degree
//! `k = q + 1`. This module assembles those complexes as matrices on a
//! monomial basis ([`quotient_complex`]), builds the same complexes from the
//! restricted algebroid through the Koszul formula ([`koszul_complex`]), and
//! extracts cohomology dimensions and homotopy operators.
//!
//! Degrees here are multivector (equivalently cochain) degrees: degree `d`
//! holds `d`-vectors. The solver's `L^0 → L^1 → L^2` is degree `1 → 2 → 3`,
//! so the solver's `H^1` at level `q` is the algebroid group
//! `H^2(A_P; S^(q+1)(TP°))`.
//!
//! When `p > 0` the quotient spaces are infinite dimensional; an [`XCap`]
//! bounds the tangent degree of the basis. A cap is only sound when the
//! differential does not leave it, which is checked on every column.

mod algebroid;
mod homotopy;
mod koszul;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::exactpoly::{Exponents, Monomial, OddSet, PolyError, Scalar, SpaceModel, SuperPoly};
use crate::linalg::Matrix;
use crate::multivec::{schouten_poly, MultiVec, MultiVecError};

pub use algebroid::{algebroid_axioms, algebroid_from_jet, AxiomFailure, AxiomReport, RestrictedAlgebroid};
pub use homotopy::{homotopy_pair, HomotopyOutcome, HomotopyPair, ObstructionReport};
pub use koszul::{koszul_complex, koszul_differential, tau_map, Cochain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    MultiVec(#[from] MultiVecError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the differential is not tangent to the submanifold")]
    NotTangent,
    #[error("d∘d ≠ 0 from degree {degree}")]
    NotAComplex { degree: usize },
    #[error("differential leaves the x-degree cap: degree {degree} maps to x-degree {x_degree} > cap {cap}")]
    XDegreeOverflow { degree: usize, x_degree: u32, cap: u32 },
    #[error("an x-degree cap is required when the submanifold has tangent directions")]
    CapRequired,
    #[error("element has a term of normal degree {found} below the required {required}")]
    LevelTooLow { required: u32, found: u32 },
    #[error("expected a bivector with jet order at least 1")]
    BadDifferential,
}

/// Bound on the tangent (`x`) degree of a basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XCap {
    /// No bound; only valid for `p = 0`.
    Unbounded,
    /// The same bound in every degree; leaving it is an error.
    Uniform(u32),
    /// Bound `base + d·step` in degree `d`, following an `x`-degree growth of
    /// at most `step` per application of the differential.
    Staggered { base: u32, step: u32 },
}

impl XCap {
    pub fn for_degree(&self, degree: usize) -> Option<u32> {
        match *self {
            XCap::Unbounded => None,
            XCap::Uniform(c) => Some(c),
            XCap::Staggered { base, step } => Some(base + step * degree as u32),
        }
    }

    /// The natural cap for the complex of `gamma`: staggered by the largest
    /// tangent degree among its coefficients.
    pub fn staggered_for(gamma: &MultiVec, base: u32) -> XCap {
        if gamma.space().tangent() == 0 {
            return XCap::Unbounded;
        }
        let step = gamma.body().truncate_y(1).max_x_degree().unwrap_or(0);
        XCap::Staggered { base, step }
    }
}

/// Monomial basis of a graded piece: tangent degree within the cap, normal
/// degree exactly `power`, `degree` odd factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainBasis {
    space: SpaceModel,
    power: u32,
    degree: usize,
    x_cap: Option<u32>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl CochainBasis {
    pub fn new(space: SpaceModel, power: u32, degree: usize, x_cap: Option<u32>) -> Result<Self, CohomologyError> {
        if space.tangent() > 0 && x_cap.is_none() {
            return Err(CohomologyError::CapRequired);
        }
        let x_parts = compositions_up_to(space.tangent(), x_cap.unwrap_or(0));
        let y_parts = compositions_exact(space.normal(), power);
        let odd_sets = OddSet::subsets(space.dim(), degree);
        let mut monomials = Vec::with_capacity(x_parts.len() * y_parts.len() * odd_sets.len());
        for xe in &x_parts {
            for ye in &y_parts {
                let exps: Exponents = xe.iter().chain(ye.iter()).copied().collect();
                for &odd in &odd_sets {
                    monomials.push(Monomial { exps: exps.clone(), odd });
                }
            }
        }
        monomials.sort();
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(CochainBasis { space, power, degree, x_cap, monomials, index })
    }

    pub fn space(&self) -> SpaceModel {
        self.space
    }

    /// Normal degree `k` of the coefficients (symmetric power index).
    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn x_cap(&self) -> Option<u32> {
        self.x_cap
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Basis element `i` as a polynomial.
    pub fn element(&self, i: usize) -> SuperPoly {
        SuperPoly::from_terms(self.space, [(self.monomials[i].clone(), Scalar::from_integer(1.into()))])
    }

    /// Coordinates of `poly`; `Err(m)` names the first monomial outside the basis.
    pub fn coordinates(&self, poly: &SuperPoly) -> Result<Vec<Scalar>, Monomial> {
        let mut v = vec![Scalar::zero(); self.len()];
        for (m, c) in poly.terms() {
            match self.position(m) {
                Some(i) => v[i] = c.clone(),
                None => return Err(m.clone()),
            }
        }
        Ok(v)
    }

    pub fn poly_from_coordinates(&self, coords: &[Scalar]) -> SuperPoly {
        SuperPoly::from_terms(
            self.space,
            self.monomials.iter().zip(coords).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

/// A linear map between two cochain bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMapMatrix {
    pub domain: Arc<CochainBasis>,
    pub codomain: Arc<CochainBasis>,
    pub matrix: Matrix,
}

impl LinearMapMatrix {
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// A finite cochain complex `C^0 → C^1 → ⋯ → C^n` with explicit matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    bases: Vec<Arc<CochainBasis>>,
    differentials: Vec<LinearMapMatrix>,
}

impl CochainComplex {
    pub fn bases(&self) -> &[Arc<CochainBasis>] {
        &self.bases
    }

    pub fn basis(&self, degree: usize) -> &Arc<CochainBasis> {
        &self.bases[degree]
    }

    /// The differential `C^degree → C^(degree+1)`.
    pub fn differential(&self, degree: usize) -> &LinearMapMatrix {
        &self.differentials[degree]
    }

    pub fn top_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn power(&self) -> u32 {
        self.bases[0].power()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    pub fn check_d_squared(&self) -> Result<(), CohomologyError> {
        for d in 0..self.differentials.len().saturating_sub(1) {
            let dd = self.differentials[d + 1].matrix.mul(&self.differentials[d].matrix);
            if !dd.is_zero() {
                return Err(CohomologyError::NotAComplex { degree: d });
            }
        }
        Ok(())
    }

    /// `dim H^d` for every degree, after checking `d∘d = 0`.
    pub fn cohomology_dims(&self) -> Result<Vec<usize>, CohomologyError> {
        self.check_d_squared()?;
        let ranks: Vec<usize> = self.differentials.iter().map(LinearMapMatrix::rank).collect();
        Ok((0..self.bases.len())
            .map(|d| {
                let outgoing = ranks.get(d).copied().unwrap_or(0);
                let incoming = if d == 0 { 0 } else { ranks[d - 1] };
                self.bases[d].len() - outgoing - incoming
            })
            .collect())
    }

    /// Alternating sum of the cochain dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims())
    }
}

/// `dim H^d` for every degree of `complex`; see [`CochainComplex::cohomology_dims`].
pub fn cohomology_dims(complex: &CochainComplex) -> Result<Vec<usize>, CohomologyError> {
    complex.cohomology_dims()
}

pub fn alternating_sum(dims: &[usize]) -> i64 {
    dims.iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
}

fn assemble<F>(space: SpaceModel, power: u32, cap: XCap, mut apply: F) -> Result<CochainComplex, CohomologyError>
where
    F: FnMut(&SuperPoly, usize) -> Result<SuperPoly, CohomologyError>,
{
    if space.tangent() > 0 && cap == XCap::Unbounded {
        return Err(CohomologyError::CapRequired);
    }
    let top = space.dim();
    let bases: Vec<Arc<CochainBasis>> = (0..=top)
        .map(|d| CochainBasis::new(space, power, d, cap.for_degree(d)).map(Arc::new))
        .collect::<Result<_, _>>()?;
    let mut differentials = Vec::with_capacity(top);
    for d in 0..top {
        let (domain, codomain) = (&bases[d], &bases[d + 1]);
        let mut columns = Vec::with_capacity(domain.len());
        for j in 0..domain.len() {
            let image = apply(&domain.element(j), d)?;
            let col = codomain.coordinates(&image).map_err(|m| CohomologyError::XDegreeOverflow {
                degree: d,
                x_degree: m.x_degree(&space),
                cap: codomain.x_cap().unwrap_or(0),
            })?;
            columns.push(col);
        }
        differentials.push(LinearMapMatrix {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: Matrix::from_columns(codomain.len(), &columns),
        });
    }
    Ok(CochainComplex { bases, differentials })
}

/// Matrices of `d_γ = [γ, ·]` on `F_level / F_(level+1)` in every degree.
///
/// Only the 1-jet of `gamma` can contribute: its higher terms raise the
/// normal degree past `level + 1` and fall into `F_(level+1)`. The bracket
/// is nevertheless taken with all of `gamma`, so this is checked rather than
/// assumed.
pub fn quotient_complex(gamma: &MultiVec, level: u32, cap: XCap) -> Result<CochainComplex, CohomologyError> {
    if gamma.degree() != 2 || gamma.jet_order() < 1 {
        return Err(CohomologyError::BadDifferential);
    }
    if !gamma.is_tangent() {
        return Err(CohomologyError::NotTangent);
    }
    let power = level + 1;
    assemble(gamma.space(), power, cap, |w, _| Ok(quotient_differential(gamma, w, power)))
}

/// `[γ, w]` projected to the graded piece of `w` (normal degree of `w`'s terms).
pub fn quotient_differential(gamma: &MultiVec, w: &SuperPoly, power: u32) -> SuperPoly {
    schouten_poly(gamma.body(), 2, w).y_homogeneous_part(power)
}

impl fmt::Display for CochainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims().iter().map(ToString::to_string).collect();
        write!(f, "complex(power {}; dims {})", self.power(), dims.join(" → "))
    }
}

/// All exponent vectors of length `n` with sum at most `max`.
fn compositions_up_to(n: usize, max: u32) -> Vec<Vec<u32>> {
    (0..=max).flat_map(|t| compositions_exact(n, t)).collect()
}

/// All exponent vectors of length `n` with sum exactly `total`.
fn compositions_exact(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions_exact(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multivec::{lie_poisson, LieAlgebraData};

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn basis_sizes() {
        let s = SpaceModel::new(0, 3).unwrap();
        for k in 0..4 {
            for d in 0..4 {
                let b = CochainBasis::new(s, k, d, None).unwrap();
                assert_eq!(b.len(), binom(3, d) * binom(k as usize + 2, 2));
            }
        }
        let s = SpaceModel::new(2, 1).unwrap();
        assert_eq!(CochainBasis::new(s, 1, 1, Some(2)).unwrap().len(), 6 * 3);
        assert_eq!(CochainBasis::new(s, 1, 1, None), Err(CohomologyError::CapRequired));
    }

    #[test]
    fn so3_level_one_dims() {
        let gamma = lie_poisson(&LieAlgebraData::so3(), 3);
        let c = quotient_complex(&gamma, 1, XCap::Unbounded).unwrap();
        assert_eq!(c.dims(), vec![6, 18, 18, 6]);
        c.check_d_squared().unwrap();
    }

    #[test]
    fn zero_differential_has_full_cohomology() {
        let s = SpaceModel::new(0, 2).unwrap();
        let gamma = MultiVec::zero(s, 2, 3);
        let c = quotient_complex(&gamma, 1, XCap::Unbounded).unwrap();
        assert!(c.differentials.iter().all(|d| d.matrix.is_zero()));
        assert_eq!(c.cohomology_dims().unwrap(), c.dims());
    }

    #[test]
    fn uniform_cap_overflows_on_r3() {
        let s = SpaceModel::new(2, 1).unwrap();
        let body = &SuperPoly::term(s, crate::exactpoly::scalar(1), &[0, 0, 1], &[0, 1]).unwrap()
            + &SuperPoly::term(s, crate::exactpoly::scalar(1), &[1, 0, 1], &[0, 2]).unwrap();
        let gamma = MultiVec::new(body, 2, 2).unwrap();
        assert!(matches!(
            quotient_complex(&gamma, 0, XCap::Uniform(2)),
            Err(CohomologyError::XDegreeOverflow { .. })
        ));
        let cap = XCap::staggered_for(&gamma, 2);
        assert_eq!(cap, XCap::Staggered { base: 2, step: 1 });
        quotient_complex(&gamma, 0, cap).unwrap().check_d_squared().unwrap();
    }
}
