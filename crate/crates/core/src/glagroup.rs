//! The gauge group `{e^X : X ∈ F_1 L^0}` acting on the truncated algebra.
//!
//! Every `ad_X` with `X ∈ F_1` raises the filtration level by at least one,
//! so at jet order `N` the exponential series and the Campbell–Hausdorff
//! series both terminate after at most `N + 1` steps.

use thiserror::Error;

use crate::exactpoly::{scalar, Scalar, SpaceModel};
use crate::multivec::{MultiVec, MultiVecError, Norm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a gauge element: {0}")]
    NotGaugeElement(&'static str),
    #[error("operand is not tangent to the submanifold")]
    NotTangent,
    #[error(transparent)]
    MultiVec(#[from] MultiVecError),
}

/// Logarithm `X` of a gauge transformation `e^X`: a vector field whose terms
/// all have normal degree at least 2, i.e. `‖X‖ <= 1/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaugeElement(MultiVec);

impl GaugeElement {
    pub fn new(log: MultiVec) -> Result<Self, GroupError> {
        if log.degree() != 1 {
            return Err(GroupError::NotGaugeElement("logarithm must be a vector field"));
        }
        if log.norm() > Norm::dyadic(1) {
            return Err(GroupError::NotGaugeElement("logarithm must lie in filtration level 1"));
        }
        Ok(GaugeElement(log))
    }

    pub fn identity(space: SpaceModel, jet_order: u32) -> Self {
        GaugeElement(MultiVec::zero(space, 1, jet_order))
    }

    pub fn log(&self) -> &MultiVec {
        &self.0
    }

    pub fn into_log(self) -> MultiVec {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    pub fn norm(&self) -> Norm {
        self.0.norm()
    }

    /// `e^-X`.
    pub fn inverse(&self) -> GaugeElement {
        GaugeElement(-&self.0)
    }
}

/// `ad_X(W) = [X, W]`.
pub fn ad(x: &GaugeElement, w: &MultiVec) -> Result<MultiVec, GroupError> {
    Ok(x.log().schouten(w)?)
}

/// `Ad(e^X) W = Σ_n ad_X^n(W) / n!`, summed until the terms vanish.
pub fn exp_ad(x: &GaugeElement, w: &MultiVec) -> Result<MultiVec, GroupError> {
    if !w.is_tangent() {
        return Err(GroupError::NotTangent);
    }
    let mut acc = w.clone();
    let mut term = w.clone();
    for n in 1..=i64::from(w.jet_order()) + 1 {
        term = ad(x, &term)?.scale(&Scalar::new(1.into(), n.into()));
        if term.is_zero() {
            break;
        }
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

/// Campbell–Hausdorff product `X * Y`, so that `e^X e^Y = e^(X*Y)`.
///
/// Uses the integral form `X * Y = X + ∫_0^1 g(e^(ad_X) e^(t·ad_Y))(Y) dt`
/// with `g(z) = z log z / (z - 1) = 1 + Σ_(m≥1) (-1)^(m+1) (z-1)^m / (m(m+1))`.
/// The operator `e^(ad_X) e^(t·ad_Y) - Id` is applied to polynomials in `t`
/// whose coefficients are vector fields, and each power `t^j` integrates to
/// `1/(j+1)`. Every application raises the filtration level, so the sum is
/// finite at any jet order.
pub fn bch(x: &GaugeElement, y: &GaugeElement) -> Result<GaugeElement, GroupError> {
    let space = x.log().space();
    let jet = x.log().jet_order();
    let zero = MultiVec::zero(space, 1, jet);
    let mut integrand: Vec<MultiVec> = vec![y.log().clone()];
    let mut power: Vec<MultiVec> = vec![y.log().clone()];
    let mut m: i64 = 1;
    while power.iter().any(|c| !c.is_zero()) {
        power = step_operator(x, y, &power)?;
        let coeff = if m % 2 == 1 { scalar(1) } else { scalar(-1) } / scalar(m * (m + 1));
        for (j, c) in power.iter().enumerate() {
            if integrand.len() <= j {
                integrand.push(zero.clone());
            }
            integrand[j] = integrand[j].checked_add(&c.scale(&coeff))?;
        }
        m += 1;
    }
    let mut acc = x.log().clone();
    for (j, c) in integrand.iter().enumerate() {
        acc = acc.checked_add(&c.scale(&Scalar::new(1.into(), (j as i64 + 1).into())))?;
    }
    GaugeElement::new(acc)
}

/// `(e^(ad_X) e^(t·ad_Y) - Id)` on a polynomial `Σ_j c_j t^j`.
fn step_operator(x: &GaugeElement, y: &GaugeElement, poly: &[MultiVec]) -> Result<Vec<MultiVec>, GroupError> {
    let space = x.log().space();
    let jet = x.log().jet_order();
    let mut out: Vec<MultiVec> = Vec::new();
    for (j, c) in poly.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // e^(t·ad_Y) c = Σ_n t^n ad_Y^n(c) / n!
        let mut term = c.clone();
        let mut n: i64 = 0;
        while !term.is_zero() {
            let idx = j + n as usize;
            while out.len() <= idx {
                out.push(MultiVec::zero(space, 1, jet));
            }
            let image = exp_ad(x, &term)?;
            let image = if n == 0 { image.checked_sub(&term)? } else { image };
            out[idx] = out[idx].checked_add(&image)?;
            n += 1;
            term = ad(y, &term)?.scale(&Scalar::new(1.into(), n.into()));
        }
    }
    Ok(out)
}

/// `X_k * X_(k-1) * ⋯ * X_1` for factors listed as `[X_1, …, X_k]`.
pub fn bch_product<'a>(
    factors: impl IntoIterator<Item = &'a GaugeElement>,
    space: SpaceModel,
    jet_order: u32,
) -> Result<GaugeElement, GroupError> {
    let mut acc = GaugeElement::identity(space, jet_order);
    for f in factors {
        acc = bch(f, &acc)?;
    }
    Ok(acc)
}
