//! Gauge equivalence of MC elements with a common first jet.
//!
//! Starting from `γ'` with `γ' − γ ∈ F_p`, each step removes the lowest
//! graded piece `δ` of the difference: `X_k = h1(δ)` solves `[γ, X_k] = δ`
//! modulo the next filtration level, and `γ_k = Ad(e^(X_k)) γ_(k-1)` agrees
//! with `γ` one level further. The gauges are accumulated with the
//! Campbell–Hausdorff product, and the result is checked by applying it to
//! `γ'` from scratch.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::cohomology::{
    homotopy_pair, quotient_complex, CochainComplex, CohomologyError, HomotopyOutcome, ObstructionReport,
    RestrictedAlgebroid, XCap,
};
use crate::exactpoly::{PolyError, SuperPoly};
use crate::glagroup::{bch, exp_ad, GaugeElement, GroupError};
use crate::multivec::{lie_poisson, FiltrationInfo, MultiVec, MultiVecError, Norm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("{role} is not a Maurer–Cartan element")]
    NotMaurerCartan { role: &'static str },
    #[error("{role} is not tangent to the submanifold")]
    NotTangent { role: &'static str },
    #[error("{role} must be a bivector")]
    NotBivector { role: &'static str },
    #[error("operands live on different spaces or jet orders")]
    Incompatible,
    #[error("first jets differ: the difference has a term of normal degree {found}")]
    JetMismatch { found: u32 },
    #[error("linearization needs a point submanifold (p = 0)")]
    NotAPoint,
    #[error("estimate violated at level {level}: {quantity} has norm {found}, bound {bound}")]
    EstimateViolated { level: u32, quantity: &'static str, found: Norm, bound: Norm },
    #[error("the accumulated gauge does not map γ' to γ")]
    SoundnessFailed,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    MultiVec(#[from] MultiVecError),
}

impl From<PolyError> for SolverError {
    fn from(e: PolyError) -> Self {
        SolverError::MultiVec(e.into())
    }
}

impl SolverError {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            SolverError::EstimateViolated { .. }
                | SolverError::SoundnessFailed
                | SolverError::Cohomology(CohomologyError::NotAComplex { .. })
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Equivalent,
    Obstructed,
}

/// One step of the recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationRecord {
    pub level: u32,
    /// `‖γ_(k-1) − γ‖` before the step.
    pub delta_norm: Norm,
    /// `‖X_k‖`.
    pub step_norm: Norm,
    /// `‖γ_k − γ‖` after the step.
    pub distance: Norm,
    /// Whether `X_k` came from a certified homotopy pair rather than a
    /// direct solve for the single cocycle.
    pub from_homotopy: bool,
    pub step: GaugeElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverReport {
    pub status: SolveStatus,
    pub gauge: GaugeElement,
    pub iterations: Vec<IterationRecord>,
    /// `exp_ad(gauge, γ') − γ`; zero when equivalent.
    pub final_residual: MultiVec,
    pub obstruction: Option<ObstructionReport>,
}

impl SolverReport {
    pub fn is_equivalent(&self) -> bool {
        self.status == SolveStatus::Equivalent
    }
}

type CacheKey = (SuperPoly, u32, XCap);

/// Quotient complexes and homotopy pairs, keyed by 1-jet, level and cap.
#[derive(Debug, Default)]
pub struct HomotopyCache {
    entries: HashMap<CacheKey, Arc<(CochainComplex, HomotopyOutcome)>>,
}

impl HomotopyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn get(&mut self, gamma: &MultiVec, level: u32, cap: XCap) -> Result<Arc<(CochainComplex, HomotopyOutcome)>, SolverError> {
        let key = (gamma.body().truncate_y(1), level, cap);
        if let Some(entry) = self.entries.get(&key) {
            return Ok(entry.clone());
        }
        let complex = quotient_complex(gamma, level, cap)?;
        complex.check_d_squared()?;
        let outcome = homotopy_pair(&complex, 2);
        let entry = Arc::new((complex, outcome));
        self.entries.insert(key, entry.clone());
        Ok(entry)
    }
}

fn validate(gamma: &MultiVec, role: &'static str) -> Result<(), SolverError> {
    if gamma.degree() != 2 {
        return Err(SolverError::NotBivector { role });
    }
    if !gamma.is_tangent() {
        return Err(SolverError::NotTangent { role });
    }
    if !gamma.mc_defect()?.is_zero() {
        return Err(SolverError::NotMaurerCartan { role });
    }
    Ok(())
}

fn check_bound(level: u32, quantity: &'static str, found: Norm, bound: Norm) -> Result<(), SolverError> {
    if found > bound {
        return Err(SolverError::EstimateViolated { level, quantity, found, bound });
    }
    Ok(())
}

/// Finds `X` with `exp_ad(X, γ') = γ`, or the cohomology class that blocks it.
///
/// `x_cap` is the tangent-degree allowance of the degree-0 cochains; `None`
/// picks the smallest allowance that holds each `δ` at its level.
pub fn solve_equivalence(gamma: &MultiVec, gamma_prime: &MultiVec, x_cap: Option<u32>) -> Result<SolverReport, SolverError> {
    solve_with_cache(gamma, gamma_prime, x_cap, &mut HomotopyCache::new())
}

pub fn solve_with_cache(
    gamma: &MultiVec,
    gamma_prime: &MultiVec,
    x_cap: Option<u32>,
    cache: &mut HomotopyCache,
) -> Result<SolverReport, SolverError> {
    if gamma.space() != gamma_prime.space() || gamma.jet_order() != gamma_prime.jet_order() {
        return Err(SolverError::Incompatible);
    }
    validate(gamma, "γ")?;
    validate(gamma_prime, "γ'")?;
    let space = gamma.space();
    let jet = gamma.jet_order();

    let diff = gamma_prime.checked_sub(gamma)?;
    let start = match FiltrationInfo::of(diff.body()).level_index() {
        Some(level) if level >= 1 => level,
        _ => return Err(SolverError::JetMismatch { found: diff.body().min_y_degree().unwrap_or(0) }),
    };

    let mut current = gamma_prime.clone();
    let mut total = GaugeElement::identity(space, jet);
    let mut iterations = Vec::new();
    let mut obstruction = None;

    for level in start..jet {
        let power = level + 1;
        let distance = current.checked_sub(gamma)?;
        if distance.is_zero() {
            break;
        }
        check_bound(level, "γ_(k-1) − γ", distance.norm(), Norm::dyadic(level))?;
        let delta = distance.y_homogeneous_part(power);
        if delta.is_zero() {
            continue;
        }

        let cap = if space.tangent() == 0 {
            XCap::Unbounded
        } else {
            let XCap::Staggered { step, .. } = XCap::staggered_for(gamma, 0) else { unreachable!() };
            let needed = delta.body().max_x_degree().unwrap_or(0).saturating_sub(2 * step);
            XCap::Staggered { base: x_cap.unwrap_or(needed), step }
        };
        let entry = cache.get(gamma, level, cap)?;
        let (complex, outcome) = (&entry.0, &entry.1);
        let basis = complex.basis(2);
        let coords = basis.coordinates(delta.body()).map_err(|m| CohomologyError::XDegreeOverflow {
            degree: 2,
            x_degree: m.x_degree(&space),
            cap: basis.x_cap().unwrap_or(0),
        })?;

        let (x_coords, from_homotopy) = match outcome {
            HomotopyOutcome::Pair(pair) => (Some(pair.primitive(&coords)), true),
            HomotopyOutcome::Obstructed(_) => (complex.differential(1).matrix.solve(&coords), false),
        };
        let x_coords = x_coords.filter(|x| complex.differential(1).apply(x) == coords);
        let Some(x_coords) = x_coords else {
            let HomotopyOutcome::Obstructed(report) = outcome else {
                // a certified pair inverts d on every cocycle
                return Err(SolverError::EstimateViolated {
                    level,
                    quantity: "d(h1 δ) − δ",
                    found: Norm::ONE,
                    bound: Norm::ZERO,
                });
            };
            let mut report = report.clone();
            report.cocycle = Some(delta.body().clone());
            obstruction = Some(report);
            break;
        };

        let step_field = MultiVec::new(complex.basis(1).poly_from_coordinates(&x_coords), 1, jet)?;
        let step = GaugeElement::new(step_field)?;
        current = exp_ad(&step, &current)?;
        let after = current.checked_sub(gamma)?.norm();
        check_bound(level, "X_k", step.norm(), Norm::dyadic(level))?;
        check_bound(level, "γ_k − γ", after, Norm::dyadic(level + 1))?;
        total = bch(&step, &total)?;
        iterations.push(IterationRecord {
            level,
            delta_norm: distance.norm(),
            step_norm: step.norm(),
            distance: after,
            from_homotopy,
            step,
        });
    }

    let final_residual = exp_ad(&total, gamma_prime)?.checked_sub(gamma)?;
    let status = if obstruction.is_some() {
        SolveStatus::Obstructed
    } else if final_residual.is_zero() {
        SolveStatus::Equivalent
    } else {
        return Err(SolverError::SoundnessFailed);
    };
    Ok(SolverReport { status, gauge: total, iterations, final_residual, obstruction })
}

/// The linear Lie–Poisson model of `pi` at a point: `lie_poisson` of the
/// isotropy algebra read off from the linear part.
pub fn linear_model(pi: &MultiVec) -> Result<MultiVec, SolverError> {
    if pi.space().tangent() != 0 {
        return Err(SolverError::NotAPoint);
    }
    validate(pi, "π")?;
    let alg = RestrictedAlgebroid::from_gamma(pi)?;
    let g = alg.to_lie_algebra().ok_or(SolverError::NotMaurerCartan { role: "linear part" })?;
    Ok(lie_poisson(&g, pi.jet_order()))
}

/// Gauge from `pi` to its linear model (`γ = lie_poisson(g)`, `γ' = π`).
pub fn linearize(pi: &MultiVec) -> Result<SolverReport, SolverError> {
    solve_equivalence(&linear_model(pi)?, pi, None)
}

/// Gauge from a chosen first-order representative to a target jet.
pub fn realize_jet(target: &MultiVec, first_order: &MultiVec, x_cap: Option<u32>) -> Result<SolverReport, SolverError> {
    solve_equivalence(target, first_order, x_cap)
}

/// Result of trying to extend a first-order structure to a higher jet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionReport {
    /// An MC element at the target order whose 1-jet is the given one.
    Extended { pi: MultiVec },
    /// No correction of normal degree `order` within the cap cancels the
    /// defect. `certificate` is a linear functional on trivectors (pairing
    /// coefficientwise) that kills the image of `d` but not the defect.
    Obstructed { order: u32, defect: SuperPoly, certificate: SuperPoly, cap: XCap },
}

impl ExtensionReport {
    pub fn is_extended(&self) -> bool {
        matches!(self, ExtensionReport::Extended { .. })
    }
}

/// Coefficientwise pairing of two polynomials.
pub fn pairing(a: &SuperPoly, b: &SuperPoly) -> crate::exactpoly::Scalar {
    let mut total = crate::exactpoly::Scalar::default();
    for (m, c) in a.terms() {
        total += c * b.coefficient(m);
    }
    total
}

/// Extends the 1-jet of `first_order` order by order up to `target_order`.
///
/// At order `n` the correction `c_n` (normal degree `n`) must solve
/// `d_γ c_n = -½ [π, π]_n`, where `π` is the structure built so far; this is
/// the degree-2 → 3 map of the level-`(n-1)` quotient. Free variables are
/// set to zero, so a later obstruction is relative to those choices; an
/// obstruction at the first order attempted is absolute within the cap.
/// `x_cap` is the base of a staggered cap.
pub fn extend_jet(first_order: &MultiVec, target_order: u32, x_cap: u32) -> Result<ExtensionReport, SolverError> {
    if first_order.degree() != 2 {
        return Err(SolverError::NotBivector { role: "first order" });
    }
    if !first_order.is_tangent() {
        return Err(SolverError::NotTangent { role: "first order" });
    }
    let space = first_order.space();
    let gamma1 = first_order.jet(1).with_jet_order(target_order.max(1));
    let cap = XCap::staggered_for(&gamma1, x_cap);
    let mut pi = gamma1.clone();
    for order in 2..=target_order {
        let defect = pi.schouten(&pi)?.body().y_homogeneous_part(order);
        if defect.is_zero() {
            continue;
        }
        let complex = quotient_complex(&gamma1, order - 1, cap)?;
        complex.check_d_squared()?;
        let d = &complex.differential(2).matrix;
        let codomain = complex.basis(3);
        let rhs_poly = defect.scale(&crate::exactpoly::ratio(-1, 2));
        let rhs = codomain.coordinates(&rhs_poly).map_err(|m| CohomologyError::XDegreeOverflow {
            degree: 3,
            x_degree: m.x_degree(&space),
            cap: codomain.x_cap().unwrap_or(0),
        })?;
        match d.solve(&rhs) {
            Some(c) => {
                let correction = MultiVec::new(complex.basis(2).poly_from_coordinates(&c), 2, pi.jet_order())?;
                pi = pi.checked_add(&correction)?;
            }
            None => {
                let certificate = d
                    .transpose()
                    .kernel_basis()
                    .into_iter()
                    .map(|v| codomain.poly_from_coordinates(&v))
                    .find(|f| !pairing(f, &rhs_poly).is_zero())
                    .expect("an inconsistent system has a separating functional");
                return Ok(ExtensionReport::Obstructed { order, defect, certificate, cap });
            }
        }
    }
    Ok(ExtensionReport::Extended { pi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{scalar, SpaceModel};
    use crate::multivec::LieAlgebraData;

    fn field(s: SpaceModel, terms: &[(i64, &[u32], &[usize])], n: u32) -> MultiVec {
        let mut body = SuperPoly::zero(s);
        for (c, e, o) in terms {
            body = &body + &SuperPoly::term(s, scalar(*c), e, o).unwrap();
        }
        let d = body.odd_degree().unwrap();
        MultiVec::new(body, d, n).unwrap()
    }

    #[test]
    fn r3_first_order_does_not_extend() {
        let s = SpaceModel::new(2, 1).unwrap();
        let first = field(s, &[(1, &[0, 0, 1], &[0, 1]), (1, &[1, 0, 1], &[0, 2])], 2);
        for cap in 0..3 {
            match extend_jet(&first, 2, cap).unwrap() {
                ExtensionReport::Obstructed { order, .. } => assert_eq!(order, 2),
                ExtensionReport::Extended { .. } => panic!("extended at cap {cap}"),
            }
        }
        let so3 = lie_poisson(&LieAlgebraData::so3(), 3);
        assert_eq!(extend_jet(&so3, 3, 0).unwrap(), ExtensionReport::Extended { pi: so3 });
    }

    #[test]
    fn identical_inputs_need_no_steps() {
        let gamma = lie_poisson(&LieAlgebraData::so3(), 4);
        let r = solve_equivalence(&gamma, &gamma, None).unwrap();
        assert!(r.is_equivalent());
        assert!(r.gauge.is_identity());
        assert!(r.iterations.is_empty());
    }

    #[test]
    fn so3_round_trip() {
        let n = 6;
        let gamma = lie_poisson(&LieAlgebraData::so3(), n);
        let s = gamma.space();
        let v = GaugeElement::new(field(s, &[(1, &[2, 0, 0], &[1]), (-2, &[0, 1, 1], &[0])], n)).unwrap();
        let gamma_prime = exp_ad(&v, &gamma).unwrap();
        let r = solve_equivalence(&gamma, &gamma_prime, None).unwrap();
        assert!(r.is_equivalent());
        assert!(r.final_residual.is_zero());
        assert!(r.iterations.len() <= n as usize);
        assert_eq!(exp_ad(&r.gauge, &gamma_prime).unwrap(), gamma);
        assert_eq!(linearize(&gamma_prime).map(|l| l.gauge), Ok(r.gauge));
    }

    #[test]
    fn abelian_plane_is_obstructed() {
        let s = SpaceModel::new(0, 2).unwrap();
        let gamma = MultiVec::zero(s, 2, 3);
        let gamma_prime = field(s, &[(1, &[2, 0], &[0, 1])], 3);
        let r = solve_equivalence(&gamma, &gamma_prime, None).unwrap();
        assert_eq!(r.status, SolveStatus::Obstructed);
        let ob = r.obstruction.unwrap();
        assert_eq!(ob.level, 1);
        assert_eq!(ob.cocycle.as_ref(), Some(gamma_prime.body()));
    }

    #[test]
    fn different_first_jets_rejected() {
        let gamma = lie_poisson(&LieAlgebraData::so3(), 3);
        let zero = MultiVec::zero(gamma.space(), 2, 3);
        assert!(matches!(solve_equivalence(&gamma, &zero, None), Err(SolverError::JetMismatch { found: 1 })));
    }
}
