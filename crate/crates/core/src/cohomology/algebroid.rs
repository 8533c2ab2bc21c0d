//! The cotangent Lie algebroid `A_P = T*_P M` of a Poisson submanifold.
//!
//! The frame is `e_a = du_a`, `a < p + q`. Anchor coefficients and structure
//! functions are polynomials in the tangent coordinates only:
//!
//! * `ρ(e_a) = Σ_b ρ^{ab} ∂_{x_b}` with `ρ^{ab} = π^{ab}|_P`,
//! * `[e_a, e_b] = Σ_c Γ_ab^c e_c` with `Γ_ab^c = ∂_c π^{ab}|_P`.

use std::fmt;

use num_traits::Zero;

use crate::exactpoly::{Scalar, SpaceModel, SuperPoly};
use crate::multivec::{LieAlgebraData, MultiVec};

use super::CohomologyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedAlgebroid {
    space: SpaceModel,
    anchor: Vec<SuperPoly>,
    brackets: Vec<SuperPoly>,
}

/// The first axiom found to fail, with the frame indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub indices: Vec<usize>,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.indices)
    }
}

/// Outcome of [`RestrictedAlgebroid::check_axioms`].
pub type AxiomReport = Result<(), AxiomFailure>;

/// The restricted algebroid of the 1-jet of `pi`.
pub fn algebroid_from_jet(pi: &MultiVec) -> Result<RestrictedAlgebroid, CohomologyError> {
    RestrictedAlgebroid::from_gamma(pi)
}

pub fn algebroid_axioms(alg: &RestrictedAlgebroid) -> AxiomReport {
    alg.check_axioms()
}

impl RestrictedAlgebroid {
    /// Restricts the 1-jet of a tangent bivector.
    pub fn from_gamma(gamma: &MultiVec) -> Result<Self, CohomologyError> {
        if gamma.degree() != 2 || gamma.jet_order() < 1 {
            return Err(CohomologyError::BadDifferential);
        }
        if !gamma.is_tangent() {
            return Err(CohomologyError::NotTangent);
        }
        let space = gamma.space();
        let (n, p) = (space.dim(), space.tangent());
        let mut anchor = Vec::with_capacity(n * p);
        let mut brackets = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..p {
                anchor.push(gamma.component(&[a, b]).restrict_to_submanifold());
            }
        }
        for a in 0..n {
            for b in 0..n {
                let pi_ab = gamma.component(&[a, b]);
                for c in 0..n {
                    brackets.push(pi_ab.deriv_even(c)?.restrict_to_submanifold());
                }
            }
        }
        Ok(RestrictedAlgebroid { space, anchor, brackets })
    }

    /// Assembles an algebroid from raw data without checking any axiom.
    /// `anchor[a * p + b] = ρ^{ab}`, `brackets[(a * n + b) * n + c] = Γ_ab^c`.
    pub fn from_parts(space: SpaceModel, anchor: Vec<SuperPoly>, brackets: Vec<SuperPoly>) -> Self {
        let n = space.dim();
        assert_eq!(anchor.len(), n * space.tangent(), "anchor table size");
        assert_eq!(brackets.len(), n * n * n, "bracket table size");
        RestrictedAlgebroid { space, anchor, brackets }
    }

    /// A Lie algebra as an algebroid over a point.
    pub fn from_lie_algebra(g: &LieAlgebraData) -> Self {
        let space = SpaceModel::new(0, g.dim()).expect("dim >= 1");
        let n = g.dim();
        let mut brackets = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    brackets.push(SuperPoly::constant(space, g.c(a, b, c).clone()));
                }
            }
        }
        RestrictedAlgebroid { space, anchor: Vec::new(), brackets }
    }

    /// The isotropy Lie algebra when the base is a point.
    pub fn to_lie_algebra(&self) -> Option<LieAlgebraData> {
        if self.space.tangent() != 0 {
            return None;
        }
        let constants: Vec<Scalar> = self
            .brackets
            .iter()
            .map(|g| g.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero))
            .collect();
        LieAlgebraData::from_tensor(self.space.dim(), constants).ok()
    }

    pub fn space(&self) -> SpaceModel {
        self.space
    }

    pub fn rank(&self) -> usize {
        self.space.dim()
    }

    /// `ρ^{ab}` for `b` tangent.
    pub fn anchor(&self, a: usize, b: usize) -> &SuperPoly {
        &self.anchor[a * self.space.tangent() + b]
    }

    /// `Γ_ab^c`.
    pub fn bracket(&self, a: usize, b: usize, c: usize) -> &SuperPoly {
        let n = self.rank();
        &self.brackets[(a * n + b) * n + c]
    }

    /// `ρ(e_a)(f) = Σ_b ρ^{ab} ∂_{x_b} f`.
    pub fn apply_anchor(&self, a: usize, f: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(self.space);
        for b in 0..self.space.tangent() {
            let r = self.anchor(a, b);
            if r.is_zero() {
                continue;
            }
            let df = f.deriv_even(b).expect("index in range");
            out = &out + &(r * &df);
        }
        out
    }

    /// Checks antisymmetry, vanishing of the anchor on the conormal
    /// directions, the ideal property of the conormal bundle, the anchor
    /// homomorphism and the Jacobi identity, in that order.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.rank();
        let p = self.space.tangent();
        let fail = |axiom, indices: &[usize]| Err(AxiomFailure { axiom, indices: indices.to_vec() });
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !(self.bracket(a, b, c) + self.bracket(b, a, c)).is_zero() {
                        return fail("antisymmetry", &[a, b, c]);
                    }
                }
            }
        }
        for a in p..n {
            for b in 0..p {
                if !self.anchor(a, b).is_zero() {
                    return fail("normal anchor", &[a, b]);
                }
            }
        }
        for a in 0..n {
            for b in p..n {
                for c in 0..p {
                    if !self.bracket(a, b, c).is_zero() {
                        return fail("normal ideal", &[a, b, c]);
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for t in 0..p {
                    // ρ([e_a, e_b]) x_t against [ρ e_a, ρ e_b] x_t
                    let mut lhs = SuperPoly::zero(self.space);
                    for c in 0..n {
                        lhs = &lhs + &(self.bracket(a, b, c) * self.anchor(c, t));
                    }
                    let rhs = &self.apply_anchor(a, self.anchor(b, t)) - &self.apply_anchor(b, self.anchor(a, t));
                    if lhs != rhs {
                        return fail("anchor homomorphism", &[a, b, t]);
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for e in 0..n {
                        let mut total = SuperPoly::zero(self.space);
                        for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
                            total = &total + &self.double_bracket(i, j, k, e);
                        }
                        if !total.is_zero() {
                            return fail("jacobi", &[a, b, c, e]);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Coefficient of `e_e` in `[[e_a, e_b], e_c]`.
    fn double_bracket(&self, a: usize, b: usize, c: usize, e: usize) -> SuperPoly {
        let mut out = SuperPoly::zero(self.space);
        for d in 0..self.rank() {
            let g = self.bracket(a, b, d);
            if g.is_zero() {
                continue;
            }
            out = &out + &(g * self.bracket(d, c, e));
        }
        &out - &self.apply_anchor(c, self.bracket(a, b, e))
    }
}
